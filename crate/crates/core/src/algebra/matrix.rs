use std::collections::{BTreeMap, HashMap};

use super::{AlgebraError, MultiPoly};

/// Sparse matrix over [`MultiPoly`] with row and column labels.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix {
    nvars: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, MultiPoly>>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|k| k.to_string()).collect()
}

impl PolyMatrix {
    /// Zero matrix with labels `1..n`.
    pub fn zeros(nvars: usize, nrows: usize, ncols: usize) -> Self {
        PolyMatrix {
            nvars,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
            row_labels: numbered(nrows),
            col_labels: numbered(ncols),
        }
    }

    pub fn with_labels(nvars: usize, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        PolyMatrix {
            nvars,
            ncols: col_labels.len(),
            rows: vec![BTreeMap::new(); row_labels.len()],
            row_labels,
            col_labels,
        }
    }

    /// Dense construction; every row must have the same length.
    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self, AlgebraError> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = PolyMatrix::zeros(nvars, rows.len(), ncols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(AlgebraError::Shape(format!("row {} has {} entries, expected {}", r + 1, row.len(), ncols)));
            }
            for (c, p) in row.into_iter().enumerate() {
                if p.nvars() != nvars {
                    return Err(AlgebraError::ContextMismatch { left: nvars, right: p.nvars() });
                }
                m.set(r, c, p);
            }
        }
        Ok(m)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }

    pub fn col_index(&self, label: &str) -> Option<usize> {
        self.col_labels.iter().position(|l| l == label)
    }

    pub fn set(&mut self, r: usize, c: usize, p: MultiPoly) {
        assert!(c < self.ncols, "column {c} out of range");
        if p.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, p);
        }
    }

    /// Adds `p` to the entry at (r, c).
    pub fn add_to(&mut self, r: usize, c: usize, p: &MultiPoly) {
        let cur = self.get(r, c);
        self.set(r, c, &cur + p);
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&MultiPoly> {
        self.rows[r].get(&c)
    }

    pub fn get(&self, r: usize, c: usize) -> MultiPoly {
        self.entry(r, c).cloned().unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &MultiPoly)> {
        self.rows[r].iter().map(|(&c, p)| (c, p))
    }

    pub fn to_dense(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.nrows()).map(|r| (0..self.ncols).map(|c| self.get(r, c)).collect()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::with_labels(
            self.nvars,
            rows.iter().map(|&r| self.row_labels[r].clone()).collect(),
            cols.iter().map(|&c| self.col_labels[c].clone()).collect(),
        );
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if let Some(p) = self.entry(r, c) {
                    m.set(i, j, p.clone());
                }
            }
        }
        m
    }

    /// Deletes row `r` and column `c`.
    pub fn delete(&self, r: usize, c: usize) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.nrows()).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.ncols).filter(|&j| j != c).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
        self.row_labels.swap(a, b);
    }

    pub fn scale_row(&mut self, r: usize, c: &MultiPoly) {
        let row = std::mem::take(&mut self.rows[r]);
        for (j, p) in row {
            self.set(r, j, &p * c);
        }
    }

    fn check_square(&self) -> Result<usize, AlgebraError> {
        if self.nrows() != self.ncols {
            return Err(AlgebraError::NotSquare { rows: self.nrows(), cols: self.ncols });
        }
        Ok(self.ncols)
    }

    /// Laplace expansion with memoisation on the set of remaining columns.
    ///
    /// Rows are expanded sparsest first; since the row order is fixed, the
    /// remaining column set determines the subproblem.
    pub fn det(&self) -> Result<MultiPoly, AlgebraError> {
        let n = self.check_square()?;
        if n == 0 {
            return Ok(MultiPoly::one(self.nvars));
        }
        if n > 64 {
            return Err(AlgebraError::TooLarge(n));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&r| self.rows[r].len());
        let sign = permutation_sign(&order);
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut memo = HashMap::new();
        let d = self.expand(&order, 0, full, &mut memo);
        Ok(if sign < 0 { -d } else { d })
    }

    fn expand(&self, order: &[usize], depth: usize, cols: u64, memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
        if depth == order.len() {
            return MultiPoly::one(self.nvars);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero(self.nvars);
        for (&c, p) in &self.rows[order[depth]] {
            let bit = 1u64 << c;
            if cols & bit == 0 {
                continue;
            }
            let rest = self.expand(order, depth + 1, cols & !bit, memo);
            if rest.is_zero() {
                continue;
            }
            let term = p * &rest;
            // sign from the position of c among the remaining columns
            if (cols & (bit - 1)).count_ones().is_multiple_of(2) {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// Fraction-free (Bareiss) elimination. Each division is exact.
    pub fn det_bareiss(&self) -> Result<MultiPoly, AlgebraError> {
        let n = self.check_square()?;
        let mut a = self.to_dense();
        let mut sign = false;
        let mut prev = MultiPoly::one(self.nvars);
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return Ok(MultiPoly::zero(self.nvars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev)?;
                }
                a[i][k] = MultiPoly::zero(self.nvars);
            }
            prev = a[k][k].clone();
        }
        let d = if n == 0 { MultiPoly::one(self.nvars) } else { a[n - 1][n - 1].clone() };
        Ok(if sign { -d } else { d })
    }

    /// Determinants of all k-column subsets of the first k rows, in
    /// lexicographic order of the subsets.
    pub fn all_minors(&self, k: usize) -> Result<Vec<MultiPoly>, AlgebraError> {
        if k > self.nrows() || k > self.ncols {
            return Err(AlgebraError::MinorOrder { k, rows: self.nrows(), cols: self.ncols });
        }
        let rows: Vec<usize> = (0..k).collect();
        lex_subsets(self.ncols, k).iter().map(|cols| self.submatrix(&rows, cols).det()).collect()
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn permutation_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

impl std::fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.to_dense()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, VarNames};

    fn m(rows: &[&[&str]], names: &VarNames) -> PolyMatrix {
        PolyMatrix::from_rows(
            names.len(),
            rows.iter().map(|r| r.iter().map(|s| parse_poly(s, names).unwrap()).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_determinants() {
        let n = VarNames::default_for(2);
        assert!(m(&[&["1"]], &n).det().unwrap().is_one());
        let a = m(&[&["t1", "1"], &["1", "t2"]], &n);
        let want = parse_poly("t1*t2 - 1", &n).unwrap();
        assert_eq!(a.det().unwrap(), want);
        assert_eq!(a.det_bareiss().unwrap(), want);
        assert!(PolyMatrix::zeros(2, 0, 0).det().unwrap().is_one());
    }

    #[test]
    fn pivoting_and_sign() {
        let n = VarNames::default_for(2);
        let a = m(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "t1^-1"]], &n);
        let want = parse_poly("-t1^-1", &n).unwrap();
        assert_eq!(a.det().unwrap(), want);
        assert_eq!(a.det_bareiss().unwrap(), want);
    }

    #[test]
    fn not_square() {
        assert!(matches!(PolyMatrix::zeros(1, 2, 3).det(), Err(AlgebraError::NotSquare { .. })));
    }

    #[test]
    fn minors_in_lex_order() {
        let n = VarNames::default_for(1);
        let a = m(&[&["1", "0", "0"], &["0", "1", "0"]], &n);
        let mins = a.all_minors(2).unwrap();
        assert_eq!(mins, vec![MultiPoly::one(1), MultiPoly::zero(1), MultiPoly::zero(1)]);
        assert!(a.all_minors(3).is_err());
        assert_eq!(lex_subsets(9, 5).len(), 126);
        assert_eq!(lex_subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(lex_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(lex_subsets(2, 3).is_empty());
    }

    #[test]
    fn delete_keeps_labels() {
        let a = PolyMatrix::with_labels(1, vec!["a1".into(), "a2".into()], vec!["a1".into(), "a2".into()]);
        let d = a.delete(0, 1);
        assert_eq!(d.row_labels(), &["a2".to_string()]);
        assert_eq!(d.col_labels(), &["a1".to_string()]);
    }
}
