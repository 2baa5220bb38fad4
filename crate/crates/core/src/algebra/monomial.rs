use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

/// A Laurent monomial in the half-step variables `s_k = t_k^(1/2)`.
///
/// Stored sparsely as `(variable index, s-exponent)` pairs sorted by index,
/// with zero exponents never present. Variable indices are 0-based here;
/// `t1` in rendered output is index 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(usize, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// `s_var^exp`, i.e. `t_var^(exp/2)`.
    pub fn half_power(var: usize, exp: i32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Monomial(vec![(var, exp)])
        }
    }

    /// `t_var^exp`.
    pub fn t_power(var: usize, exp: i32) -> Self {
        Self::half_power(var, 2 * exp)
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, i32)>>(pairs: I) -> Self {
        let mut v: Vec<(usize, i32)> = Vec::new();
        let mut raw: Vec<(usize, i32)> = pairs.into_iter().collect();
        raw.sort_by_key(|p| p.0);
        for (k, e) in raw {
            match v.last_mut() {
                Some(last) if last.0 == k => last.1 += e,
                _ => v.push((k, e)),
            }
        }
        v.retain(|p| p.1 != 0);
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, i32)] {
        &self.0
    }

    /// Exponent of `s_var`.
    pub fn half_exp(&self, var: usize) -> i32 {
        self.0
            .binary_search_by_key(&var, |p| p.0)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// Sum of s-exponents; the t-degree is half of this.
    pub fn half_degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    pub fn degree(&self) -> Ratio<i64> {
        Ratio::new(self.half_degree(), 2)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|p| p.0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(k, e)| (k, -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, n: i32) -> Monomial {
        if n == 0 {
            return Self::one();
        }
        Monomial(self.0.iter().map(|&(k, e)| (k, e * n)).collect())
    }

    /// Componentwise minimum of exponents (over all variables appearing in
    /// either side; missing exponents count as zero).
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut pairs = Vec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ka = a.get(i).map(|p| p.0).unwrap_or(usize::MAX);
            let kb = b.get(j).map(|p| p.0).unwrap_or(usize::MAX);
            if ka < kb {
                pairs.push((ka, a[i].1.min(0)));
                i += 1;
            } else if kb < ka {
                pairs.push((kb, b[j].1.min(0)));
                j += 1;
            } else {
                pairs.push((ka, a[i].1.min(b[j].1)));
                i += 1;
                j += 1;
            }
        }
        pairs.retain(|p| p.1 != 0);
        Monomial(pairs)
    }

    /// True when every exponent of `self` is at least the matching exponent of `other`.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.div(other).is_polynomial()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|p| p.1 >= 0)
    }

    /// True when every s-exponent is even, i.e. the monomial is an integral power product of the t's.
    pub fn is_integral_in_t(&self) -> bool {
        self.0.iter().all(|p| p.1 % 2 == 0)
    }
}

// Graded by s-degree; within a degree, the monomial with the larger exponent
// on the lowest-index variable sorts first (t1^2 < t1*t2 < t2^2).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.half_degree().cmp(&other.half_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            let pa = a.get(i);
            let pb = b.get(j);
            match (pa, pb) {
                (None, None) => return Ordering::Equal,
                (Some(&(ka, ea)), Some(&(kb, eb))) if ka == kb => {
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(ka, ea)), Some(&(kb, _))) if ka < kb => return 0.cmp(&ea),
                (Some(_), Some(&(_, eb))) => return eb.cmp(&0),
                (Some(&(_, ea)), None) => return 0.cmp(&ea),
                (None, Some(&(_, eb))) => return eb.cmp(&0),
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, e)| format!("s{}^{}", k + 1, e)).collect();
        write!(f, "{}", parts.join("*"))
    }
}
