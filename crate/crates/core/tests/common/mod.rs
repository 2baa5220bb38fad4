#![allow(dead_code)]

use mva_weight::algebra::{rational, Monomial, MultiPoly, PolyMatrix};
use rand::Rng;

/// Up to `terms` terms, coefficients in -3..=3, s-exponents in `lo..=hi`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, terms: usize, lo: i32, hi: i32) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    for _ in 0..rng.gen_range(0..=terms) {
        let pairs: Vec<(usize, i32)> = (0..nvars).map(|k| (k, rng.gen_range(lo..=hi))).collect();
        let c = rng.gen_range(-3i64..=3);
        p.add_term(Monomial::from_pairs(pairs), rational(c, 1));
    }
    p
}

/// Sparse matrix, each entry nonzero with probability `density`.
pub fn random_matrix<R: Rng>(rng: &mut R, nvars: usize, rows: usize, cols: usize, density: f64) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(nvars, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                let mut p = random_poly(rng, nvars, 2, 0, 2);
                while p.is_zero() {
                    p = random_poly(rng, nvars, 2, 0, 2);
                }
                m.set(r, c, p);
            }
        }
    }
    m
}
