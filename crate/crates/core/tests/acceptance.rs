//! One line per acceptance criterion. Criteria 1 and 4 cannot be met as
//! stated: the reference matrix has one entry no plane curve produces and a
//! rotation number of the wrong parity, and only the minors through column 1
//! vanish. Both print FAIL with the exact discrepancy. The run exits nonzero
//! only when a result departs from what is recorded here.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mva_weight::algebra::render::render_text;
use mva_weight::algebra::{exp_substitute, parse_poly, permutation_sign, Monomial, MultiPoly, PolyMatrix, VarNames};
use mva_weight::checks::{self, CHORD_EXAMPLE, LINK_EXAMPLE};
use mva_weight::chordio::parse_chord_diagram;
use mva_weight::finitetype::verify_theorem;
use mva_weight::link::parse_link;
use mva_weight::relations::{
    assemble_block, builtin_suite_s8, check_minor_relation, block_expand, block_sign, block_sign_by_permutation,
};
use mva_weight::weight::weight;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Result<Outcome, String>>);

enum Outcome {
    Pass(String),
    /// Fails exactly as documented.
    Known(String),
    Fail(String),
}

fn poly_rows(rows: &[&[&str]], names: &VarNames) -> Vec<Vec<MultiPoly>> {
    rows.iter().map(|r| r.iter().map(|e| parse_poly(e, names).expect("table entry")).collect()).collect()
}

fn criterion_1() -> Result<Outcome, String> {
    let d = parse_link(LINK_EXAMPLE).map_err(|e| e.to_string())?;
    let names = d.variables().clone();
    let want = parse_poly("x*y*(1 - y + y^2)", &names).unwrap();
    let r = d.mva(4, 4).map_err(|e| e.to_string())?;
    let reference = poly_rows(
        &[
            &["y-1", "0", "0", "0", "1-x"],
            &["1-y", "x", "0", "0", "-1"],
            &["-y", "0", "1", "y-1", "0"],
            &["0", "0", "-y", "1", "y-1"],
            &["0", "0", "y-1", "-y", "1"],
        ],
        &names,
    );
    let ours = r.matrix.to_dense();
    let mut diffs = Vec::new();
    for (i, (p, o)) in reference.iter().zip(&ours).enumerate() {
        for (j, (a, b)) in p.iter().zip(o).enumerate() {
            if a != b {
                diffs.push((i, j));
            }
        }
    }
    let w5 = Monomial::from_pairs([(1, -4)]);
    let det55 = parse_poly("x*(y - 1)*(1 - y + y^2)", &names).unwrap();
    let reference_det = PolyMatrix::from_rows(2, reference.clone()).unwrap().delete(4, 4).det().unwrap();
    let core = r.value == want && r.word == w5 && r.mu == vec![1, 4] && r.det == det55 && reference_det == det55;
    let detail = format!(
        "value {}, w5 {}, mu {:?}, det {}, rot {:?}, matrix differs at {:?}",
        render_text(&r.value, &names),
        render_text(&MultiPoly::monomial(2, r.word.clone()), &names),
        r.mu,
        render_text(&r.det, &names),
        r.rot,
        diffs
    );
    // the reference row a3 has -y under a1; the curve's a3 enters from a2
    let known = core && diffs == vec![(2, 0), (2, 1)] && r.rot == vec![1, 2];
    Ok(if core && diffs.is_empty() && r.rot == vec![1, 3] {
        Outcome::Pass(detail)
    } else if known {
        Outcome::Known(format!("{detail}; reference table and rot (1,3) not reproduced"))
    } else {
        Outcome::Fail(detail)
    })
}

fn criterion_2() -> Result<Outcome, String> {
    let d = parse_chord_diagram(CHORD_EXAMPLE).map_err(|e| e.to_string())?;
    let names = d.variables().clone();
    let r = weight(&d).map_err(|e| e.to_string())?;
    let reference = poly_rows(
        &[
            &["0", "0", "0", "0", "0", "0", "0"],
            &["-1/2", "1/2", "1/2", "0", "0", "0", "-1/2"],
            &["-t2", "-t2", "t1", "0", "0", "0", "t1"],
            &["0", "0", "t2", "t2", "-t2", "-t2", "0"],
            &["0", "0", "0", "-t2", "-t2", "t2", "t2"],
            &["0", "0", "-1/2", "1/2", "-1/2", "1/2", "0"],
            &["0", "0", "0", "-1/2", "1/2", "-1/2", "1/2"],
        ],
        &names,
    );
    let ours = r.matrix.to_dense();
    let mut total = 1i64;
    let mut covered = vec![false; ours.len()];
    covered[d.marked_arc()] = ours[d.marked_arc()] == reference[d.marked_arc()];
    for ch in d.chords() {
        let rows = [d.out_arc(ch.a), d.out_arc(ch.b)];
        let mut found = None;
        'search: for (perm, psign) in [([0, 1], 1i64), ([1, 0], -1)] {
            for e0 in [1i64, -1] {
                for e1 in [1i64, -1] {
                    let ok = [e0, e1].iter().enumerate().all(|(k, &e)| {
                        let src = &ours[rows[perm[k]]];
                        let dst = &reference[rows[k]];
                        src.iter().zip(dst).all(|(a, b)| if e > 0 { a == b } else { -a == *b })
                    });
                    if ok {
                        found = Some(psign * e0 * e1);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(s) => {
                total *= s;
                for r in rows {
                    covered[r] = true;
                }
            }
            None => return Ok(Outcome::Fail(format!("chord {} rows not related to the reference rows", ch.id))),
        }
    }
    let want_w = parse_poly("-t2^2", &names).unwrap();
    let want_det = parse_poly("-t1*t2^2", &names).unwrap();
    let pass = r.weight == want_w && r.det == want_det && total == 1 && covered.iter().all(|&c| c);
    let detail = format!(
        "weight {}, det {}, per-chord row transforms with net determinant sign {total}",
        render_text(&r.weight, &names),
        render_text(&r.det, &names)
    );
    Ok(if pass { Outcome::Pass(detail) } else { Outcome::Fail(detail) })
}

fn from_check(c: checks::Check) -> Result<Outcome, String> {
    Ok(if c.pass { Outcome::Pass(c.detail) } else { Outcome::Fail(c.detail) })
}

fn criterion_4() -> Result<Outcome, String> {
    let r = builtin_suite_s8().map_err(|e| e.to_string())?;
    let fixed = &r.verdict;
    let full = check_minor_relation(&r.spec.without_fixed()).map_err(|e| e.to_string())?;
    let mut flipped = r.spec.clone();
    let m = &mut flipped.blocks[2].matrix;
    let (row, col) = (0..m.nrows())
        .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
        .find(|&(i, j)| !m.get(i, j).is_zero())
        .ok_or("third matrix is zero")?;
    let v = -&m.get(row, col);
    m.set(row, col, v);
    let broken = check_minor_relation(&flipped).map_err(|e| e.to_string())?;
    let witness = broken.first_nonzero.as_ref().map(|(s, _)| s.iter().map(|c| c + 1).collect::<Vec<_>>());
    let full_witness = full.first_nonzero.as_ref().map(|(s, _)| s.iter().map(|c| c + 1).collect::<Vec<_>>());
    let detail = format!(
        "{} minors: {} nonzero (first at columns {:?}); {} through column 1: {} nonzero; sign flip in third matrix: nonzero at {:?}",
        full.minor_vector.len(),
        full.nonzero_count(),
        full_witness.clone().unwrap_or_default(),
        fixed.minor_vector.len(),
        fixed.nonzero_count(),
        witness.clone().unwrap_or_default()
    );
    let engine_ok = fixed.holds && fixed.minor_vector.len() == 70 && !broken.holds && witness.is_some();
    Ok(if engine_ok && full.holds && full.minor_vector.len() == 126 {
        Outcome::Pass(detail)
    } else if engine_ok && full.minor_vector.len() == 126 && full.nonzero_count() == 40 && full_witness == Some(vec![2, 3, 4, 5, 6]) {
        Outcome::Known(format!("{detail}; only the 70 minors through column 1 vanish"))
    } else {
        Outcome::Fail(detail)
    })
}

fn criterion_5() -> Result<Outcome, String> {
    let mut parts = Vec::new();
    for (m, text) in checks::SINGULAR.iter().enumerate().map(|(k, t)| (k + 1, t)) {
        let d = parse_link(text).map_err(|e| e.to_string())?;
        for cap in [m as u32, m as u32 + 2] {
            let c = verify_theorem(&d, cap).map_err(|e| e.to_string())?;
            if !c.holds() || c.m != m {
                return Ok(Outcome::Fail(format!("m = {m}, cap {cap}: {}", c.to_json())));
            }
        }
        parts.push(format!("m={m} equal"));
    }
    Ok(Outcome::Pass(format!("{} (sign +1, lower degrees vanish)", parts.join(", "))))
}

fn criterion_7() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nonzero = 0;
    for case in 0..100 {
        let n = rng.gen_range(2..=5);
        let r = rng.gen_range(1..n);
        let l = rng.gen_range(r..=n);
        let a = common::random_matrix(&mut rng, 2, r, l, 0.7);
        let bottom = common::random_matrix(&mut rng, 2, n - r, n, 0.7);
        let direct = assemble_block(&a, &bottom).det().map_err(|e| e.to_string())?;
        let expanded = block_expand(&a, &bottom, &[]).map_err(|e| e.to_string())?;
        if direct != expanded {
            return Ok(Outcome::Fail(format!("case {case}: {r}x{l} over {n} columns")));
        }
        for s in mva_weight::algebra::lex_subsets(l, r) {
            if block_sign(&s, r) != block_sign_by_permutation(&s, n) {
                return Ok(Outcome::Fail(format!("sign rule disagrees on {s:?}")));
            }
        }
        nonzero += usize::from(!direct.is_zero());
    }
    Ok(Outcome::Pass(format!("100 pairs agree ({nonzero} with nonzero determinant)")))
}

fn criterion_8() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..100 {
        let n = rng.gen_range(1..=6);
        let m = common::random_matrix(&mut rng, 2, n, n, 0.4);
        if m.det().map_err(|e| e.to_string())? != m.det_bareiss().map_err(|e| e.to_string())? {
            return Ok(Outcome::Fail(format!("determinants disagree on case {case}")));
        }
    }
    let perm_ok = (0..100).all(|_| {
        let mut p: Vec<usize> = (0..5).collect();
        let (i, j) = (rng.gen_range(0..5), rng.gen_range(0..5));
        p.swap(i, j);
        permutation_sign(&p) == if i == j { 1 } else { -1 }
    });
    let cap = 4;
    for case in 0..100 {
        let p = common::random_poly(&mut rng, 2, 3, -3, 3);
        let q = common::random_poly(&mut rng, 2, 3, -3, 3);
        let (sp, sq) = (exp_substitute(&p, cap), exp_substitute(&q, cap));
        let prod = sp.mul(&sq).map_err(|e| e.to_string())?;
        let sum = sp.add(&sq).map_err(|e| e.to_string())?;
        if exp_substitute(&(&p * &q), cap) != prod || exp_substitute(&(&p + &q), cap) != sum {
            return Ok(Outcome::Fail(format!("substitution not a homomorphism on case {case}")));
        }
    }
    Ok(if perm_ok {
        Outcome::Pass("100 determinant pairs agree; substitution respects sums and products on 100 pairs".into())
    } else {
        Outcome::Fail("transposition sign".into())
    })
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("link example", Duration::from_secs(1), Box::new(criterion_1)),
        ("chord diagram example", Duration::from_secs(1), Box::new(criterion_2)),
        ("two-chord minors", Duration::from_secs(1), Box::new(|| from_check(checks::two_chord_minors()))),
        ("4Y minors", Duration::from_secs(10), Box::new(criterion_4)),
        ("resolution sums against weights", Duration::from_secs(30), Box::new(criterion_5)),
        ("property suites", Duration::from_secs(60), Box::new(|| from_check(checks::properties(3)))),
        ("block determinant expansion", Duration::from_secs(10), Box::new(criterion_7)),
        ("algebra cross-checks", Duration::from_secs(10), Box::new(criterion_8)),
    ];
    let mut unexpected = 0;
    for (k, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let in_time = took <= *limit;
        let timing = format!("{:.2}s, limit {}s", took.as_secs_f64(), limit.as_secs());
        let line = match outcome {
            Ok(Outcome::Pass(d)) if in_time => format!("PASS  {d}"),
            Ok(Outcome::Known(d)) if in_time => format!("FAIL  {d}"),
            Ok(Outcome::Pass(d)) | Ok(Outcome::Known(d)) | Ok(Outcome::Fail(d)) => {
                unexpected += 1;
                format!("FAIL  {d} (unexpected)")
            }
            Err(e) => {
                unexpected += 1;
                format!("FAIL  error: {e}")
            }
        };
        println!("criterion {} [{name}] {line} [{timing}]", k + 1);
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
