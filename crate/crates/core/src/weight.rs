//! The determinant weight of a coloured chord diagram.

use serde_json::json;
use thiserror::Error;

use crate::algebra::{rational, AlgebraError, Monomial, MultiPoly, PolyMatrix};
use crate::chordio::{ChordDiagram, Site};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("internal: determinant not divisible by the marked colour: {0}")]
    NotDivisible(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightResult {
    pub weight: MultiPoly,
    /// Determinant of the matrix with the marked row and column removed.
    pub det: MultiPoly,
    /// Full matrix before deletion.
    pub matrix: PolyMatrix,
    pub marked_colour: usize,
    pub chords: usize,
}

/// Builds M(D). Rows and columns are the arcs `a1..an`.
///
/// For a chord with ends A and B (out-arcs oA, oB, in-arcs iA, iB, colours cA, cB):
///   row oA: +1/2 at oA, oB and -1/2 at iA, iB
///   row oB: -t_cA at oB, iB and +t_cB at oA, iA
/// Each subdivision contributes +1 at its out-arc and -1 at its in-arc in the
/// row of its out-arc. Coinciding arcs accumulate.
///
/// Exchanging A and B swaps the two rows and negates one, so the determinant
/// does not depend on the orientation of chords. The t-row sign is the one for
/// which the resolution sums of singular links match the weight with a single
/// global sign of +1.
pub fn build_matrix(d: &ChordDiagram) -> PolyMatrix {
    let n = d.variables().len();
    let labels = d.arc_labels();
    let mut m = PolyMatrix::with_labels(n, labels.clone(), labels);
    let half = MultiPoly::constant(n, rational(1, 2));
    let neg_half = -&half;
    for ch in d.chords() {
        let (oa, ia) = (d.out_arc(ch.a), d.in_arc(ch.a));
        let (ob, ib) = (d.out_arc(ch.b), d.in_arc(ch.b));
        let ta = MultiPoly::var(n, d.components()[ch.a.0].colour);
        let tb = MultiPoly::var(n, d.components()[ch.b.0].colour);
        m.add_to(oa, oa, &half);
        m.add_to(oa, ob, &half);
        m.add_to(oa, ia, &neg_half);
        m.add_to(oa, ib, &neg_half);
        m.add_to(ob, ob, &-&ta);
        m.add_to(ob, ib, &-&ta);
        m.add_to(ob, oa, &tb);
        m.add_to(ob, ia, &tb);
    }
    let one = MultiPoly::one(n);
    for (ci, c) in d.components().iter().enumerate() {
        for (si, s) in c.sites.iter().enumerate() {
            if *s == Site::Subdivision {
                let (o, i) = (d.out_arc((ci, si)), d.in_arc((ci, si)));
                m.add_to(o, o, &one);
                m.add_to(o, i, &-&one);
            }
        }
    }
    m
}

/// Δ(D) = det(M_i^i(D)) / t_i where i is the marked arc's colour.
pub fn weight(d: &ChordDiagram) -> Result<WeightResult, WeightError> {
    let matrix = build_matrix(d);
    let k = d.marked_arc();
    let det = matrix.delete(k, k).det()?;
    let colour = d.marked_colour();
    let t = Monomial::t_power(colour, 1);
    let w = det.mul_monomial(&t.inv());
    if !w.is_polynomial_in_t() {
        return Err(WeightError::NotDivisible(format!("{det:?}")));
    }
    Ok(WeightResult { weight: w, det, matrix, marked_colour: colour, chords: d.chord_count() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variant {
    pub description: String,
    pub weight: MultiPoly,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub base: MultiPoly,
    pub side_swaps: Vec<Variant>,
    pub subdivisions: Vec<Variant>,
    pub marked_moves: Vec<Variant>,
}

impl InvarianceReport {
    pub fn swaps_and_subdivisions_hold(&self) -> bool {
        self.side_swaps.iter().chain(&self.subdivisions).all(|v| v.equal)
    }

    pub fn to_json(&self, names: &crate::algebra::VarNames) -> serde_json::Value {
        let list = |vs: &[Variant]| {
            vs.iter()
                .map(|v| json!({"variant": v.description, "weight": crate::algebra::render::render_text(&v.weight, names), "equal": v.equal}))
                .collect::<Vec<_>>()
        };
        json!({
            "weight": crate::algebra::render::render_text(&self.base, names),
            "side_swaps": list(&self.side_swaps),
            "subdivisions": list(&self.subdivisions),
            "marked_moves": list(&self.marked_moves),
        })
    }
}

/// Recomputes the weight under each chord side swap, each single subdivision
/// and each position of the marked point on every circle.
pub fn weight_invariance_report(d: &ChordDiagram) -> Result<InvarianceReport, WeightError> {
    let base = weight(d)?.weight;
    let variant = |description: String, e: &ChordDiagram| -> Result<Variant, WeightError> {
        let w = weight(e)?.weight;
        Ok(Variant { description, equal: w == base, weight: w })
    };
    let mut side_swaps = Vec::new();
    for ch in d.chords() {
        side_swaps.push(variant(format!("swap {}", ch.id), &d.swap_sides(&ch.id))?);
    }
    let mut subdivisions = Vec::new();
    for a in d.arc_labels() {
        let e = d.subdivide(&a).expect("arc exists");
        subdivisions.push(variant(format!("subdivide {a}"), &e)?);
    }
    let mut marked_moves = Vec::new();
    let (mc, ms) = d.marked_site();
    for (ci, c) in d.components().iter().enumerate() {
        let len = if ci == mc { c.sites.len() - 1 } else { c.sites.len() };
        for pos in 0..len {
            if ci == mc && pos == ms {
                continue;
            }
            if let Ok(e) = d.move_marked(ci, pos) {
                marked_moves.push(variant(format!("mark component {} position {}", ci + 1, pos), &e)?);
            }
        }
    }
    Ok(InvarianceReport { base, side_swaps, subdivisions, marked_moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, VarNames};
    use crate::chordio::parse_chord_diagram;

    #[test]
    fn sample_chord_rows() {
        // chord with A on a1 (in a3) and B on a2 (in a4), colours t1 and t2
        let d = parse_chord_diagram(
            r#"{"variables":["t1","t2"],"components":[
                {"colour":1,"sites":[{"chord":"c1","side":"A"},{"marked":true}]},
                {"colour":2,"sites":[{"chord":"c1","side":"B"},{"sub":true}]}]}"#,
        )
        .unwrap();
        let m = build_matrix(&d);
        let names = VarNames::default_for(2);
        let p = |s: &str| parse_poly(s, &names).unwrap();
        // arcs: a1 = out of A, a2 = out of mark, a3 = out of B, a4 = out of sub
        assert_eq!(m.get(0, 0), p("1/2"));
        assert_eq!(m.get(0, 2), p("1/2"));
        assert_eq!(m.get(0, 1), p("-1/2"));
        assert_eq!(m.get(0, 3), p("-1/2"));
        assert_eq!(m.get(2, 2), p("-t1"));
        assert_eq!(m.get(2, 3), p("-t1"));
        assert_eq!(m.get(2, 0), p("t2"));
        assert_eq!(m.get(2, 1), p("t2"));
        assert_eq!(m.get(3, 3), p("1"));
        assert_eq!(m.get(3, 2), p("-1"));
    }

    #[test]
    fn one_chord_two_circles() {
        let d = parse_chord_diagram(
            r#"{"variables":["x","y"],"components":[
                {"colour":1,"sites":[{"marked":true},{"chord":"c1","side":"A"}]},
                {"colour":2,"sites":[{"chord":"c1","side":"B"}]}]}"#,
        )
        .unwrap();
        // arcs a1 (mark), a2 (A), a3 (B, also its own in-arc). Deleting a1
        // leaves [[1/2, 0], [y, -2x]] on (a2, a3), det -x
        let r = weight(&d).unwrap();
        assert_eq!(r.weight, MultiPoly::from_int(2, -1));
    }

    #[test]
    fn isolated_chord_vanishes() {
        let d = parse_chord_diagram(
            r#"{"variables":["t1"],"components":[{"colour":1,"sites":[
                {"marked":true},{"chord":"c1","side":"A"},{"chord":"c1","side":"B"}]}]}"#,
        )
        .unwrap();
        assert!(weight(&d).unwrap().weight.is_zero());
    }
}
