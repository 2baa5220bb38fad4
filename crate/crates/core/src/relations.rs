//! Relations among weights, checked on minors of the block in which the
//! diagrams differ, or directly on a list of diagrams.
//!
//! Relation file:
//! ```json
//! {"variables": ["x", "y"], "k": 4, "fixed": [1, 2],
//!  "blocks": [{"coeff": "1", "matrix": [["1/2", "-t2", ...], ...]}, ...]}
//! ```
//! `fixed` (1-based, optional) lists columns where the rest of the full matrix
//! is zero; only minors using all of them can contribute.

use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::algebra::render::render_text;
use crate::algebra::{lex_subsets, parse_poly, permutation_sign, AlgebraError, MultiPoly, PolyMatrix, VarNames};
use crate::chordio::{ChordDiagram, Component, Site};
use crate::weight::{weight, WeightError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelationError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("a relation needs at least one block")]
    Empty,
    #[error("block {block}: row {row} has {len} entries, expected {expected}")]
    Ragged { block: usize, row: usize, len: usize, expected: usize },
    #[error("block {block}, row {row}, column {col}: {msg}")]
    Entry { block: usize, row: usize, col: usize, msg: String },
    #[error("block {block}: coefficient: {msg}")]
    Coeff { block: usize, msg: String },
    #[error("block {0}: coefficient is zero")]
    ZeroCoeff(usize),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub coeff: MultiPoly,
    pub matrix: PolyMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationSpec {
    pub variables: VarNames,
    pub k: usize,
    /// 0-based columns every minor must contain.
    pub fixed: Vec<usize>,
    pub blocks: Vec<Block>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileBlock {
    coeff: String,
    matrix: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRelation {
    variables: Vec<String>,
    k: usize,
    #[serde(default)]
    fixed: Vec<usize>,
    blocks: Vec<FileBlock>,
}

pub fn parse_relation(text: &str) -> Result<RelationSpec, RelationError> {
    let f: FileRelation = serde_json::from_str(text).map_err(|e| RelationError::Json(e.to_string()))?;
    let variables = VarNames::new(f.variables);
    if f.blocks.is_empty() {
        return Err(RelationError::Empty);
    }
    let mut blocks = Vec::new();
    for (b, fb) in f.blocks.iter().enumerate() {
        let coeff = parse_poly(&fb.coeff, &variables).map_err(|e| RelationError::Coeff { block: b, msg: e.to_string() })?;
        if coeff.is_zero() {
            return Err(RelationError::ZeroCoeff(b));
        }
        let ncols = fb.matrix.first().map_or(0, Vec::len);
        let mut rows = Vec::new();
        for (r, row) in fb.matrix.iter().enumerate() {
            if row.len() != ncols {
                return Err(RelationError::Ragged { block: b, row: r, len: row.len(), expected: ncols });
            }
            let mut out = Vec::new();
            for (c, s) in row.iter().enumerate() {
                out.push(parse_poly(s, &variables).map_err(|e| RelationError::Entry { block: b, row: r, col: c, msg: e.to_string() })?);
            }
            rows.push(out);
        }
        blocks.push(Block { coeff, matrix: PolyMatrix::from_rows(variables.len(), rows)? });
    }
    let fixed = f.fixed.iter().map(|&c| c.wrapping_sub(1)).collect();
    let spec = RelationSpec { variables, k: f.k, fixed, blocks };
    spec.validate()?;
    Ok(spec)
}

impl RelationSpec {
    pub fn validate(&self) -> Result<(), RelationError> {
        let first = self.blocks.first().ok_or(RelationError::Empty)?;
        let (r, c) = (first.matrix.nrows(), first.matrix.ncols());
        for (b, blk) in self.blocks.iter().enumerate() {
            if (blk.matrix.nrows(), blk.matrix.ncols()) != (r, c) {
                return Err(RelationError::Shape(format!(
                    "block {b} is {}x{}, block 0 is {r}x{c}",
                    blk.matrix.nrows(),
                    blk.matrix.ncols()
                )));
            }
        }
        if self.k != r || self.k == 0 || self.k > c {
            return Err(RelationError::Shape(format!("minor order {} must equal the row count {r} and not exceed {c} columns", self.k)));
        }
        if let Some(&f) = self.fixed.iter().find(|&&f| f >= c) {
            return Err(RelationError::Shape(format!("fixed column {} out of range", f.wrapping_add(1))));
        }
        if self.fixed.len() > self.k {
            return Err(RelationError::Shape("more fixed columns than the minor order".into()));
        }
        Ok(())
    }

    /// Column subsets of order k in lexicographic order, containing the fixed columns.
    pub fn subsets(&self) -> Vec<Vec<usize>> {
        lex_subsets(self.blocks[0].matrix.ncols(), self.k)
            .into_iter()
            .filter(|s| self.fixed.iter().all(|f| s.contains(f)))
            .collect()
    }

    /// The same relation with no fixed columns, so every minor counts.
    pub fn without_fixed(&self) -> RelationSpec {
        RelationSpec { fixed: Vec::new(), ..self.clone() }
    }

    pub fn block_minors(&self, b: usize) -> Result<Vec<MultiPoly>, RelationError> {
        let m = &self.blocks[b].matrix;
        let rows: Vec<usize> = (0..self.k).collect();
        self.subsets().iter().map(|s| Ok(m.submatrix(&rows, s).det()?)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationVerdict {
    pub holds: bool,
    /// 0-based column subsets, parallel to `minor_vector`.
    pub subsets: Vec<Vec<usize>>,
    pub minor_vector: Vec<MultiPoly>,
    pub first_nonzero: Option<(Vec<usize>, MultiPoly)>,
}

impl RelationVerdict {
    fn from_vector(subsets: Vec<Vec<usize>>, minor_vector: Vec<MultiPoly>) -> Self {
        let first_nonzero = minor_vector.iter().position(|v| !v.is_zero()).map(|i| (subsets[i].clone(), minor_vector[i].clone()));
        RelationVerdict { holds: first_nonzero.is_none(), subsets, minor_vector, first_nonzero }
    }

    pub fn nonzero_count(&self) -> usize {
        self.minor_vector.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn to_json(&self, names: &VarNames, witness: bool) -> serde_json::Value {
        let mut v = json!({
            "holds": self.holds,
            "minors": self.minor_vector.len(),
            "nonzero": self.nonzero_count(),
        });
        if witness {
            v["first_nonzero"] = match &self.first_nonzero {
                Some((s, p)) => json!({"columns": s.iter().map(|c| c + 1).collect::<Vec<_>>(), "value": render_text(p, names)}),
                None => serde_json::Value::Null,
            };
        }
        v
    }
}

/// Σ c_i·minors(A_i), entrywise over the spec's subsets.
pub fn check_minor_relation(spec: &RelationSpec) -> Result<RelationVerdict, RelationError> {
    spec.validate()?;
    let subsets = spec.subsets();
    let mut total = vec![MultiPoly::zero(spec.variables.len()); subsets.len()];
    for (b, blk) in spec.blocks.iter().enumerate() {
        for (acc, m) in total.iter_mut().zip(spec.block_minors(b)?) {
            *acc = &*acc + &(&blk.coeff * &m);
        }
    }
    Ok(RelationVerdict::from_vector(subsets, total))
}

/// Σ c_i·weight(D_i) compared with zero. The witness subset is empty.
pub fn check_diagram_relation(terms: &[(MultiPoly, ChordDiagram)]) -> Result<RelationVerdict, RelationError> {
    let n = terms.first().map_or(0, |(_, d)| d.variables().len());
    let mut sum = MultiPoly::zero(n);
    for (c, d) in terms {
        sum = &sum + &(c * &weight(d)?.weight);
    }
    Ok(RelationVerdict::from_vector(vec![Vec::new()], vec![sum]))
}

/// The full matrix [A 0; bottom], A padded with zero columns to bottom's width.
pub fn assemble_block(a: &PolyMatrix, bottom: &PolyMatrix) -> PolyMatrix {
    let n = bottom.ncols();
    let mut b = PolyMatrix::zeros(a.nvars(), a.nrows() + bottom.nrows(), n);
    for r in 0..a.nrows() {
        for (c, v) in a.row(r) {
            b.set(r, c, v.clone());
        }
    }
    for r in 0..bottom.nrows() {
        for (c, v) in bottom.row(r) {
            b.set(a.nrows() + r, c, v.clone());
        }
    }
    b
}

/// Sign of the term for column subset `s` (0-based) when expanding along the
/// first `r` rows: (-1)^(Σ(s+1) - r(r+1)/2).
pub fn block_sign(s: &[usize], r: usize) -> i64 {
    let total: usize = s.iter().map(|c| c + 1).sum();
    if (total + r * (r + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// det [A 0; bottom] as Σ_S sign(S)·det(A^S)·det(bottom without S), over
/// subsets S of A's columns containing `fixed`.
pub fn block_expand(a: &PolyMatrix, bottom: &PolyMatrix, fixed: &[usize]) -> Result<MultiPoly, RelationError> {
    let (r, l, n) = (a.nrows(), a.ncols(), bottom.ncols());
    if r + bottom.nrows() != n || l > n {
        return Err(RelationError::Shape(format!("blocks {r}x{l} and {}x{n} do not form a square matrix", bottom.nrows())));
    }
    let rows_a: Vec<usize> = (0..r).collect();
    let rows_b: Vec<usize> = (0..bottom.nrows()).collect();
    let mut sum = MultiPoly::zero(a.nvars());
    for s in lex_subsets(l, r) {
        if !fixed.iter().all(|f| s.contains(f)) {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|c| !s.contains(c)).collect();
        let da = a.submatrix(&rows_a, &s).det()?;
        if da.is_zero() {
            continue;
        }
        let term = &da * &bottom.submatrix(&rows_b, &rest).det()?;
        sum = if block_sign(&s, r) > 0 { &sum + &term } else { &sum - &term };
    }
    Ok(sum)
}

/// Block-expansion sign as the sign of the column permutation S ++ rest.
pub fn block_sign_by_permutation(s: &[usize], n: usize) -> i64 {
    let mut perm = s.to_vec();
    perm.extend((0..n).filter(|c| !s.contains(c)));
    permutation_sign(&perm) as i64
}

/// One 4T relation: D(e after p) - D(e before p) + D(e after q) - D(e before q) = 0,
/// where chord c has endpoints p, q and e is an endpoint of another chord.
#[derive(Debug, Clone, PartialEq)]
pub struct FourTerm {
    pub chord: String,
    pub moving: String,
    pub diagrams: [ChordDiagram; 4],
}

impl FourTerm {
    pub fn terms(&self) -> Vec<(MultiPoly, ChordDiagram)> {
        let n = self.diagrams[0].variables().len();
        let one = MultiPoly::one(n);
        let signs = [one.clone(), -&one, one.clone(), -&one];
        signs.into_iter().zip(self.diagrams.iter().cloned()).collect()
    }
}

/// All 4T quadruples obtained from `d` by moving one endpoint of one chord next
/// to the endpoints of another. Moves that empty a circle are skipped.
pub fn four_term_relations(d: &ChordDiagram) -> Vec<FourTerm> {
    let mut out = Vec::new();
    let chords = d.chords();
    for c in &chords {
        for dd in chords.iter().filter(|x| x.id != c.id) {
            for e in [dd.a, dd.b] {
                let site = d.components()[e.0].sites[e.1].clone();
                let mut base: Vec<Component> = d.components().to_vec();
                base[e.0].sites.remove(e.1);
                if !base[e.0].sites.iter().any(|s| matches!(s, Site::ChordEnd { .. })) {
                    continue;
                }
                let find = |comps: &[Component], side_a: bool| -> (usize, usize) {
                    for (ci, comp) in comps.iter().enumerate() {
                        for (si, s) in comp.sites.iter().enumerate() {
                            if let Site::ChordEnd { chord, side } = s {
                                if *chord == c.id && (*side == crate::chordio::Side::A) == side_a {
                                    return (ci, si);
                                }
                            }
                        }
                    }
                    unreachable!("chord endpoints are present")
                };
                let mut ds = Vec::new();
                for side_a in [true, false] {
                    let (ci, si) = find(&base, side_a);
                    for offset in [1, 0] {
                        let mut comps = base.clone();
                        comps[ci].sites.insert(si + offset, site.clone());
                        match ChordDiagram::new(d.variables().clone(), comps) {
                            Ok(x) => ds.push(x),
                            Err(_) => break,
                        }
                    }
                }
                if let Ok(diagrams) = <[ChordDiagram; 4]>::try_from(ds) {
                    let moving = format!("{}:{:?}", dd.id, if e == dd.a { "A" } else { "B" });
                    out.push(FourTerm { chord: c.id.clone(), moving, diagrams });
                }
            }
        }
    }
    out
}

/// The six minors of each block in the bundled two-chord example and the
/// proportionality verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockReport {
    pub spec: RelationSpec,
    pub block_minors: Vec<Vec<MultiPoly>>,
    pub verdict: RelationVerdict,
}

pub fn block_report(spec: &RelationSpec) -> Result<BlockReport, RelationError> {
    let block_minors = (0..spec.blocks.len()).map(|b| spec.block_minors(b)).collect::<Result<_, _>>()?;
    Ok(BlockReport { spec: spec.clone(), block_minors, verdict: check_minor_relation(spec)? })
}

pub const TWO_CHORD_BLOCKS: &str = include_str!("../fixtures/two_chord_blocks.json");
pub const FOUR_Y: &str = include_str!("../fixtures/four_y.json");

pub fn builtin_suite_s7() -> Result<BlockReport, RelationError> {
    block_report(&parse_relation(TWO_CHORD_BLOCKS)?)
}

pub fn builtin_suite_s8() -> Result<BlockReport, RelationError> {
    block_report(&parse_relation(FOUR_Y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordio::parse_chord_diagram;

    #[test]
    fn parse_errors() {
        assert_eq!(parse_relation(r#"{"variables":["x"],"k":1,"blocks":[]}"#), Err(RelationError::Empty));
        let ragged = r#"{"variables":["x"],"k":1,"blocks":[{"coeff":"1","matrix":[["1","x"],["1"]]}]}"#;
        assert!(matches!(parse_relation(ragged), Err(RelationError::Ragged { row: 1, .. })));
        let bad = r#"{"variables":["x"],"k":1,"blocks":[{"coeff":"1","matrix":[["1","q"]]}]}"#;
        assert!(matches!(parse_relation(bad), Err(RelationError::Entry { col: 1, .. })));
    }

    #[test]
    fn identical_blocks_cancel() {
        let s = r#"{"variables":["x"],"k":2,"blocks":[
            {"coeff":"1","matrix":[["1","x","0"],["x","1","2"]]},
            {"coeff":"-1","matrix":[["1","x","0"],["x","1","2"]]}]}"#;
        let v = check_minor_relation(&parse_relation(s).unwrap()).unwrap();
        assert!(v.holds);
        assert_eq!(v.minor_vector.len(), 3);
    }

    #[test]
    fn s7_minors() {
        let r = builtin_suite_s7().unwrap();
        let names = &r.spec.variables;
        let q = parse_poly("((t1 + t2)/2)^2", names).unwrap();
        let unit: Vec<i64> = vec![1, 0, -1, 1, 0, 1];
        let second: Vec<MultiPoly> = unit.iter().map(|&v| MultiPoly::from_int(2, v)).collect();
        let first: Vec<MultiPoly> = second.iter().map(|v| v * &q).collect();
        assert_eq!(r.block_minors[0], first);
        assert_eq!(r.block_minors[1], second);
        assert!(r.verdict.holds);
    }

    #[test]
    fn sign_rules_agree() {
        for s in lex_subsets(6, 3) {
            assert_eq!(block_sign(&s, 3), block_sign_by_permutation(&s, 6));
        }
    }

    #[test]
    fn four_term_on_two_chords() {
        let d = parse_chord_diagram(
            r#"{"variables":["x","y"],"components":[
                {"colour":1,"sites":[{"marked":true},{"chord":"c1","side":"A"},{"chord":"c2","side":"A"}]},
                {"colour":2,"sites":[{"chord":"c1","side":"B"},{"chord":"c2","side":"B"}]}]}"#,
        )
        .unwrap();
        let rels = four_term_relations(&d);
        assert!(!rels.is_empty());
        for r in rels {
            assert!(check_diagram_relation(&r.terms()).unwrap().holds, "{} {}", r.chord, r.moving);
        }
    }

    #[test]
    fn minus_t1_entry_breaks_proportionality() {
        // with -t1 in row 2, column 6 instead of +t1
        let text = TWO_CHORD_BLOCKS.replacen(r#""-t2", "t1", "0", "0", "-t2", "t1""#, r#""-t2", "t1", "0", "0", "-t2", "-t1""#, 1);
        assert_ne!(text, TWO_CHORD_BLOCKS);
        let spec = parse_relation(&text).unwrap();
        let minors = spec.block_minors(0).unwrap();
        let p = |s: &str| parse_poly(s, &spec.variables).unwrap();
        assert_eq!(minors[2], p("(t1^2 - t2^2)/4"));
        assert_eq!(minors[4], p("t1*(t1 + t2)/2"));
        assert!(!check_minor_relation(&spec).unwrap().holds);
    }
}
