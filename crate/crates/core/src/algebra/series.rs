use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{integer, AlgebraError, Monomial, MultiPoly, Rational};

/// Power series in `u_1..u_n`, truncated above total degree `cap`.
///
/// Stored as a [`MultiPoly`] whose s-exponents are twice the u-exponents,
/// so the polynomial's t-degree is the series degree.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries {
    poly: MultiPoly,
    cap: u32,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, cap: u32) -> Self {
        TruncatedSeries { poly: MultiPoly::zero(nvars), cap }
    }

    pub fn one(nvars: usize, cap: u32) -> Self {
        TruncatedSeries { poly: MultiPoly::one(nvars), cap }
    }

    /// Truncates a polynomial in the u-variables (t-exponents read as u-exponents).
    /// Errors on negative or half-integral exponents.
    pub fn from_poly(p: &MultiPoly, cap: u32) -> Result<Self, AlgebraError> {
        if !p.is_polynomial_in_t() {
            return Err(AlgebraError::Shape("series terms need non-negative integer exponents".into()));
        }
        Ok(TruncatedSeries { poly: truncate(p, cap), cap })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn as_poly(&self) -> &MultiPoly {
        &self.poly
    }

    /// The homogeneous part of degree d.
    pub fn coefficient(&self, d: u32) -> MultiPoly {
        self.poly.homogeneous_part_half(2 * d as i64)
    }

    /// Lowest degree carrying a non-zero term.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.poly.half_degrees().first().map(|&h| (h / 2) as u32)
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let cap = self.cap.min(other.cap);
        Ok(TruncatedSeries { poly: truncate(&self.poly.checked_add(&other.poly)?, cap), cap })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        let cap = self.cap.min(other.cap);
        Ok(TruncatedSeries { poly: truncate(&self.poly.checked_sub(&other.poly)?, cap), cap })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let cap = self.cap.min(other.cap);
        if self.nvars() != other.nvars() {
            return Err(AlgebraError::ContextMismatch { left: self.nvars(), right: other.nvars() });
        }
        let mut out = MultiPoly::zero(self.nvars());
        let limit = 2 * cap as i64;
        for (ma, ca) in self.poly.terms() {
            for (mb, cb) in other.poly.terms() {
                if ma.half_degree() + mb.half_degree() <= limit {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
        }
        Ok(TruncatedSeries { poly: out, cap })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { poly: self.poly.scale(c), cap: self.cap }
    }
}

fn truncate(p: &MultiPoly, cap: u32) -> MultiPoly {
    MultiPoly::from_terms(
        p.nvars(),
        p.terms().filter(|(m, _)| m.half_degree() <= 2 * cap as i64).map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Substitutes `t_k := exp(u_k)` (so `s_k := exp(u_k/2)`) and truncates at `cap`.
pub fn exp_substitute(a: &MultiPoly, cap: u32) -> TruncatedSeries {
    let n = a.nvars();
    let mut out = MultiPoly::zero(n);
    for (m, c) in a.terms() {
        out = &out + &exp_linear(n, m, cap).scale(c);
    }
    TruncatedSeries { poly: out, cap }
}

// exp(sum_k (e_k/2) u_k) up to degree cap
fn exp_linear(n: usize, m: &Monomial, cap: u32) -> MultiPoly {
    let mut lin = MultiPoly::zero(n);
    for &(k, e) in m.pairs() {
        lin.add_term(Monomial::t_power(k, 1), Rational::new(BigInt::from(e), BigInt::from(2)));
    }
    let mut acc = MultiPoly::one(n);
    let mut power = MultiPoly::one(n);
    let mut fact = Rational::one();
    for j in 1..=cap {
        power = &power * &lin;
        fact *= integer(j as i64);
        if power.is_zero() {
            break;
        }
        acc = &acc + &power.scale(&fact.recip());
    }
    debug_assert!(!fact.is_zero());
    acc
}

impl std::fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} + O(deg {})", self.poly, self.cap + 1)
    }
}
