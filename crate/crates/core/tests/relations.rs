mod common;

use mva_weight::algebra::{MultiPoly, PolyMatrix};
use mva_weight::relations::{assemble_block, builtin_suite_s7, builtin_suite_s8, RelationSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Σ c_i det [A_i; M] for one shared completion M.
fn combined_det(spec: &RelationSpec, bottom: &PolyMatrix) -> MultiPoly {
    spec.blocks.iter().fold(MultiPoly::zero(spec.variables.len()), |acc, b| {
        &acc + &(&b.coeff * &assemble_block(&b.matrix, bottom).det().unwrap())
    })
}

fn completion(rng: &mut ChaCha8Rng, spec: &RelationSpec, zero_fixed: bool) -> PolyMatrix {
    let a = &spec.blocks[0].matrix;
    let n = a.ncols();
    let mut m = common::random_matrix(rng, spec.variables.len(), n - a.nrows(), n, 0.4);
    if zero_fixed {
        for &c in &spec.fixed {
            for r in 0..m.nrows() {
                m.set(r, c, MultiPoly::zero(spec.variables.len()));
            }
        }
    }
    m
}

#[test]
fn certified_relations_hold_for_completions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for r in [builtin_suite_s7().unwrap(), builtin_suite_s8().unwrap()] {
        assert!(r.verdict.holds);
        for _ in 0..3 {
            let m = completion(&mut rng, &r.spec, true);
            assert!(combined_det(&r.spec, &m).is_zero());
        }
    }
}

#[test]
fn four_y_needs_the_zero_column() {
    // with column 1 filled in below the blocks the combination is no longer zero
    let r = builtin_suite_s8().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let nonzero = (0..3).filter(|_| !combined_det(&r.spec, &completion(&mut rng, &r.spec, false)).is_zero()).count();
    assert!(nonzero > 0);
}
