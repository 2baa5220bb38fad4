use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::{AlgebraError, DivisionError, Rational};

/// Exact multivariate Laurent polynomial over the rationals in the
/// half-step variables `s_k = t_k^(1/2)`, `k < nvars`.
///
/// The term map never holds a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, Monomial::one(), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn from_ratio(nvars: usize, num: i64, den: i64) -> Self {
        Self::constant(nvars, Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn term(nvars: usize, m: Monomial, c: Rational) -> Self {
        debug_assert!(m.max_var().is_none_or(|k| k < nvars));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn monomial(nvars: usize, m: Monomial) -> Self {
        Self::term(nvars, m, Rational::one())
    }

    /// The variable `t_var` (0-based).
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(nvars, Monomial::t_power(var, 1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under the graded monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Returns the constant if the polynomial has no non-trivial monomials.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Returns `(c, m)` when the polynomial is a single term.
    pub fn as_term(&self) -> Option<(Rational, Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c.clone(), m.clone()))
        } else {
            None
        }
    }

    /// Re-embed in a context with `nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self, AlgebraError> {
        if let Some(k) = self.terms.keys().filter_map(|m| m.max_var()).max() {
            if k >= nvars {
                return Err(AlgebraError::ContextMismatch { left: self.nvars, right: nvars });
            }
        }
        Ok(MultiPoly { nvars, terms: self.terms.clone() })
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        assert!(m.max_var().is_none_or(|k| k < self.nvars), "monomial outside variable context");
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += c;
                if v.is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            Err(AlgebraError::ContextMismatch { left: self.nvars, right: other.nvars })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Componentwise minimum exponent over all terms: the largest monomial
    /// dividing the polynomial in the Laurent sense.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.meet(m)),
        }
    }

    /// Exact quotient `self / divisor` in the Laurent polynomial ring.
    ///
    /// Both sides are shifted by their monomial content into the ordinary
    /// polynomial ring, where the divisor has no monomial factor; there the
    /// Laurent divisibility question is the polynomial one.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let shift_a = self.monomial_content();
        let shift_b = divisor.monomial_content();
        let a = self.mul_monomial(&shift_a.inv());
        let b = divisor.mul_monomial(&shift_b.inv());
        let (lm, lc) = b.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();

        let mut rem = a;
        let mut quot = Self::zero(self.nvars);
        let mut stuck = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if m.divisible_by(&lm) {
                let qm = m.div(&lm);
                let qc = &c / &lc;
                let step = b.mul_monomial(&qm).scale(&qc);
                rem = &rem - &step;
                quot.add_term(qm, qc);
            } else {
                rem.terms.remove(&m);
                stuck.add_term(m, c);
            }
        }
        if !stuck.is_zero() {
            return Err(AlgebraError::Division(Box::new(DivisionError {
                dividend: self.clone(),
                divisor: divisor.clone(),
                remainder: stuck.mul_monomial(&shift_a),
            })));
        }
        Ok(quot.mul_monomial(&shift_a.div(&shift_b)))
    }

    /// Sum of the terms of total t-degree exactly `degree` (given as `half_degree = 2·degree`).
    pub fn homogeneous_part_half(&self, half_degree: i64) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.half_degree() == half_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of total t-degree `degree`; a degree that is not a multiple of
    /// one half selects nothing.
    pub fn homogeneous_part(&self, degree: &Rational) -> Self {
        let twice = degree * Rational::from_integer(BigInt::from(2));
        if !twice.is_integer() {
            return Self::zero(self.nvars);
        }
        match i64::try_from(twice.to_integer()) {
            Ok(h) => self.homogeneous_part_half(h),
            Err(_) => Self::zero(self.nvars),
        }
    }

    /// Distinct total t-degrees present, as half-degrees, ascending.
    pub fn half_degrees(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.terms.keys().map(|m| m.half_degree()).collect();
        v.dedup();
        v
    }

    pub fn is_homogeneous(&self) -> bool {
        self.half_degrees().len() <= 1
    }

    /// Value at `t_k = 1` for every k.
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// True when all exponents are non-negative and even.
    pub fn is_polynomial_in_t(&self) -> bool {
        self.terms.keys().all(|m| m.is_polynomial() && m.is_integral_in_t())
    }

    /// Largest absolute s-exponent appearing in any term.
    pub fn max_abs_exp(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|p| (p.1 as i64).abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", super::render::render_expanded(self, &super::VarNames::default_for(self.nvars)))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("variable context mismatch")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("variable context mismatch")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("variable context mismatch")
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
