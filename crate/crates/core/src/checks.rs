//! Bundled fixtures and the checks run by `selftest`.

use crate::algebra::render::render_text;
use crate::algebra::{parse_poly, MultiPoly, VarNames};
use crate::chordio::{enumerate_diagrams, parse_chord_diagram, ChordDiagram};
use crate::finitetype::verify_theorem;
use crate::link::parse_link;
use crate::relations::{builtin_suite_s7, builtin_suite_s8, check_diagram_relation, four_term_relations};
use crate::weight::{weight, weight_invariance_report};

pub const LINK_EXAMPLE: &str = include_str!("../fixtures/link5.json");
pub const CHORD_EXAMPLE: &str = include_str!("../fixtures/three_chords.json");
pub const HOPF: &str = include_str!("../fixtures/hopf.json");
pub const TREFOIL: &str = include_str!("../fixtures/trefoil.json");
pub const UNKNOT_KINK: &str = include_str!("../fixtures/unknot_kink.json");
pub const SINGULAR: [&str; 3] = [
    include_str!("../fixtures/singular_m1.json"),
    include_str!("../fixtures/singular_m2.json"),
    include_str!("../fixtures/singular_m3.json"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    fn error(name: impl Into<String>, e: impl std::fmt::Display) -> Self {
        Check::new(name, false, format!("error: {e}"))
    }
}

macro_rules! attempt {
    ($name:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Check::error($name, err),
        }
    };
}

/// The 5-crossing two-component link: same value for every deleted row.
pub fn link_example() -> Check {
    let name = "link example, MVA";
    let d = attempt!(name, parse_link(LINK_EXAMPLE));
    let want = attempt!(name, parse_poly("x*y*(1 - y + y^2)", d.variables()));
    let mut values = Vec::new();
    for i in 0..d.crossings().len() {
        values.push(attempt!(name, d.mva(i, i)).value);
    }
    let pass = values.iter().all(|v| *v == want);
    Check::new(name, pass, format!("{} for all {} rows", render_text(&values[0], d.variables()), values.len()))
}

/// The three-chord diagram on two circles.
pub fn chord_example() -> Check {
    let name = "chord diagram example, weight";
    let d = attempt!(name, parse_chord_diagram(CHORD_EXAMPLE));
    let r = attempt!(name, weight(&d));
    let names = d.variables();
    let want = attempt!(name, parse_poly("-t2^2", names));
    let det = attempt!(name, parse_poly("-t1*t2^2", names));
    Check::new(
        name,
        r.weight == want && r.det == det,
        format!("weight {}, det {}", render_text(&r.weight, names), render_text(&r.det, names)),
    )
}

pub fn two_chord_minors() -> Check {
    let name = "two-chord block minors";
    let r = attempt!(name, builtin_suite_s7());
    let names = &r.spec.variables;
    let q = attempt!(name, parse_poly("((t1 + t2)/2)^2", names));
    let unit: Vec<MultiPoly> = [1, 0, -1, 1, 0, 1].iter().map(|&v| MultiPoly::from_int(names.len(), v)).collect();
    let scaled: Vec<MultiPoly> = unit.iter().map(|u| u * &q).collect();
    let pass = r.block_minors[0] == scaled && r.block_minors[1] == unit && r.verdict.holds;
    let shown: Vec<String> = r.block_minors[0].iter().map(|m| render_text(m, names)).collect();
    Check::new(name, pass, format!("first block [{}], relation holds: {}", shown.join(", "), r.verdict.holds))
}

pub fn four_y_minors() -> Check {
    let name = "4Y relation minors";
    let r = attempt!(name, builtin_suite_s8());
    Check::new(
        name,
        r.verdict.holds,
        format!("{} minors through column 1, {} nonzero", r.verdict.minor_vector.len(), r.verdict.nonzero_count()),
    )
}

/// Singular link with m double points (1-based).
pub fn singular(m: usize) -> Check {
    let name = format!("singular link, {m} double point{}", if m == 1 { "" } else { "s" });
    let d = attempt!(name, parse_link(SINGULAR[m - 1]));
    let c = attempt!(name, verify_theorem(&d, m as u32));
    let u = crate::finitetype::series_names(d.variables().len());
    Check::new(
        name,
        c.holds() && c.m == m,
        format!("degree {} part {}, weight {}, {}", m - 1, render_text(c.coefficient(), &u), render_text(&c.weight, &u), c.verdict.as_str()),
    )
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropertyTally {
    pub diagrams: usize,
    pub divisibility: usize,
    pub homogeneity: usize,
    pub invariance: usize,
    pub isolated: usize,
    pub isolated_checked: usize,
    pub four_term: usize,
    pub four_term_checked: usize,
    pub failures: Vec<String>,
}

/// Enumerated diagrams with up to `max_m` chords on one or two circles; on two
/// circles both the two-colour and the one-colour cases are included.
pub fn property_diagrams(max_m: usize) -> Vec<ChordDiagram> {
    let names = VarNames::default_for(2);
    let mut out = Vec::new();
    for m in 1..=max_m {
        for colours in [&[0][..], &[0, 1][..], &[0, 0][..]] {
            out.extend(enumerate_diagrams(m, &names, colours));
        }
    }
    out
}

pub fn run_properties(max_m: usize) -> PropertyTally {
    let mut t = PropertyTally::default();
    for d in property_diagrams(max_m) {
        t.diagrams += 1;
        let label = format!("{:?}", d.words());
        let m = d.chord_count();
        let r = match weight(&d) {
            Ok(r) => r,
            Err(e) => {
                t.failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        if r.det.div_exact(&MultiPoly::var(r.det.nvars(), r.marked_colour)).is_ok() {
            t.divisibility += 1;
        } else {
            t.failures.push(format!("{label}: det not divisible"));
        }
        let hd = r.weight.half_degrees();
        if r.weight.is_zero() || hd == vec![2 * (m as i64 - 1)] {
            t.homogeneity += 1;
        } else {
            t.failures.push(format!("{label}: weight not homogeneous of degree {}", m - 1));
        }
        match weight_invariance_report(&d) {
            Ok(rep) if rep.swaps_and_subdivisions_hold() => t.invariance += 1,
            Ok(_) => t.failures.push(format!("{label}: side swap or subdivision changes the weight")),
            Err(e) => t.failures.push(format!("{label}: {e}")),
        }
        if d.has_isolated_chord() {
            t.isolated_checked += 1;
            if r.weight.is_zero() {
                t.isolated += 1;
            } else {
                t.failures.push(format!("{label}: isolated chord with nonzero weight"));
            }
        }
        for rel in four_term_relations(&d) {
            t.four_term_checked += 1;
            match check_diagram_relation(&rel.terms()) {
                Ok(v) if v.holds => t.four_term += 1,
                Ok(_) => t.failures.push(format!("{label}: 4T fails for chord {} moving {}", rel.chord, rel.moving)),
                Err(e) => t.failures.push(format!("{label}: {e}")),
            }
        }
    }
    t
}

pub fn properties(max_m: usize) -> Check {
    let t = run_properties(max_m);
    let detail = format!(
        "{} diagrams, {} isolated-chord, {} 4T quadruples{}",
        t.diagrams,
        t.isolated_checked,
        t.four_term_checked,
        t.failures.first().map(|f| format!("; first failure {f}")).unwrap_or_default()
    );
    Check::new("weight property suites", t.failures.is_empty(), detail)
}

/// Everything `selftest` runs, in order.
pub fn selftest() -> Vec<Check> {
    vec![
        link_example(),
        chord_example(),
        two_chord_minors(),
        four_y_minors(),
        singular(1),
        singular(2),
        singular(3),
        properties(3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_pass() {
        for c in [link_example(), chord_example(), two_chord_minors(), four_y_minors()] {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn small_properties() {
        let t = run_properties(2);
        assert!(t.failures.is_empty(), "{:?}", t.failures);
        assert!(t.four_term_checked > 0);
    }
}
