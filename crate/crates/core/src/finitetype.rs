//! Singular links: resolution sums, the exponential substitution, and the
//! comparison of the leading coefficient with the chord-diagram weight.

use serde_json::json;
use thiserror::Error;

use crate::algebra::render::render_text;
use crate::algebra::{exp_substitute, AlgebraError, MultiPoly};
use crate::chordio::{ChordDiagram, ChordError};
use crate::link::{LinkDiagram, LinkError};
use crate::weight::{weight, WeightError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FiniteTypeError {
    #[error("the diagram has no double points")]
    NoDoublePoints,
    #[error("series cap {cap} is below the number of double points {m}")]
    CapTooSmall { cap: u32, m: usize },
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Chord(#[from] ChordError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Resolution {
    /// Product of the chosen signs.
    pub sign: i8,
    /// Sign chosen at each double point, in crossing order.
    pub choices: Vec<i8>,
    pub diagram: LinkDiagram,
}

/// All 2^m resolutions, positive choices first at each double point.
pub fn resolve(d: &LinkDiagram) -> Vec<Resolution> {
    let points = d.double_points();
    let m = points.len();
    let mut out = Vec::with_capacity(1 << m);
    for bits in 0..(1u32 << m) {
        let choices: Vec<i8> = (0..m).map(|k| if bits >> (m - 1 - k) & 1 == 1 { -1 } else { 1 }).collect();
        let mut e = d.clone();
        for (&x, &s) in points.iter().zip(&choices) {
            e = e.resolve_double_point(x, s);
        }
        let sign = choices.iter().product();
        out.push(Resolution { sign, choices, diagram: e });
    }
    out
}

/// One circle per component and one chord per double point, endpoints in the
/// order met when walking each component from its start edge. The marked
/// point sits just before the first site of component 0.
pub fn underlying_chord_diagram(d: &LinkDiagram) -> Result<ChordDiagram, ChordError> {
    let mut words = vec![Vec::new(); d.components().len()];
    for (k, w) in words.iter_mut().enumerate() {
        let s = d.start_edge(k);
        let mut e = s;
        loop {
            let (x, _) = d.head(e);
            if d.crossings()[x].sign == 0 {
                w.push(x);
            }
            e = d.next_edge(e);
            if e == s {
                break;
            }
        }
    }
    let colours: Vec<usize> = d.components().iter().map(|c| c.colour).collect();
    ChordDiagram::from_words(d.variables().clone(), &colours, &words)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    EqualUpToSign,
    Mismatch,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::EqualUpToSign => "equal-up-to-sign",
            Verdict::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    pub diagram: ChordDiagram,
    pub m: usize,
    pub cap: u32,
    /// Σ sign·Δ over the resolutions, before substitution.
    pub sum: MultiPoly,
    /// Homogeneous parts of the substituted sum in degrees 0..=cap.
    pub coefficients: Vec<MultiPoly>,
    pub weight: MultiPoly,
    pub verdict: Verdict,
}

impl TheoremCheck {
    /// The part of degree m - 1.
    pub fn coefficient(&self) -> &MultiPoly {
        &self.coefficients[self.m - 1]
    }

    pub fn lower_vanish(&self) -> bool {
        self.coefficients[..self.m - 1].iter().all(MultiPoly::is_zero)
    }

    pub fn first_nonzero_degree(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }

    /// The alternating sum vanishes at t = 1.
    pub fn parity_holds(&self) -> bool {
        self.sum.eval_at_one() == num_traits::Zero::zero()
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Equal && self.lower_vanish()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let names = self.diagram.variables();
        let u = series_names(names.len());
        json!({
            "double_points": self.m,
            "cap": self.cap,
            "chord_diagram": self.diagram.words(),
            "resolution_sum": render_text(&self.sum, names),
            "coefficients": self.coefficients.iter().map(|c| render_text(c, &u)).collect::<Vec<_>>(),
            "degree": self.m - 1,
            "first_nonzero_degree": self.first_nonzero_degree(),
            "lower_degrees_vanish": self.lower_vanish(),
            "weight": render_text(&self.weight, &u),
            "verdict": self.verdict.as_str(),
        })
    }
}

/// Names u1..un for series variables.
pub fn series_names(n: usize) -> crate::algebra::VarNames {
    crate::algebra::VarNames::new((1..=n).map(|k| format!("u{k}")))
}

/// Expands Σ sign·Δ(L_ε) under t_k = exp(u_k) up to degree `cap` and compares
/// its degree m - 1 part with the weight of the underlying chord diagram,
/// reading t_k of the weight as u_k.
pub fn verify_theorem(d: &LinkDiagram, cap: u32) -> Result<TheoremCheck, FiniteTypeError> {
    let m = d.double_points().len();
    if m == 0 {
        return Err(FiniteTypeError::NoDoublePoints);
    }
    if (cap as usize) < m {
        return Err(FiniteTypeError::CapTooSmall { cap, m });
    }
    let n = d.variables().len();
    let mut sum = MultiPoly::zero(n);
    // for knots the per-term value is undivided; divide the total instead
    for r in resolve(d) {
        let v = r.diagram.mva(0, 0)?.value;
        sum = if r.sign > 0 { &sum + &v } else { &sum - &v };
    }
    if d.is_knot() {
        let t = MultiPoly::var(n, d.components()[0].colour);
        sum = sum.div_exact(&(&t - &MultiPoly::one(n)))?;
    }
    let series = exp_substitute(&sum, cap);
    let coefficients: Vec<MultiPoly> = (0..=cap).map(|k| series.coefficient(k)).collect();
    let diagram = underlying_chord_diagram(d)?;
    let w = weight(&diagram)?.weight;
    let c = &coefficients[m - 1];
    let verdict = if *c == w {
        Verdict::Equal
    } else if *c == -&w {
        Verdict::EqualUpToSign
    } else {
        Verdict::Mismatch
    };
    Ok(TheoremCheck { diagram, m, cap, sum, coefficients, weight: w, verdict })
}
