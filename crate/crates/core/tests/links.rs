use mva_weight::algebra::{parse_poly, MultiPoly};
use mva_weight::checks::{HOPF, LINK_EXAMPLE, SINGULAR, TREFOIL, UNKNOT_KINK};
use mva_weight::finitetype::resolve;
use mva_weight::link::{parse_link, LinkDiagram};
use num_traits::Zero;

fn all_values(d: &LinkDiagram) -> Vec<MultiPoly> {
    let n = d.crossings().len();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| d.mva(i, j).unwrap().value).collect()
}

#[test]
fn wirtinger_rows_vanish_at_one() {
    for text in [HOPF, LINK_EXAMPLE, TREFOIL, UNKNOT_KINK] {
        let m = parse_link(text).unwrap().wirtinger_matrix().unwrap();
        for r in 0..m.nrows() {
            let s = m.row(r).fold(MultiPoly::zero(m.nvars()), |acc, (_, v)| &acc + v);
            assert!(s.eval_at_one().is_zero(), "row {r}");
        }
    }
}

#[test]
fn links_do_not_depend_on_deleted_row_or_column() {
    for text in [HOPF, LINK_EXAMPLE] {
        let d = parse_link(text).unwrap();
        let v = all_values(&d);
        assert!(v.iter().all(|x| *x == v[0]));
    }
}

#[test]
fn resolutions_of_singular_links_are_well_defined() {
    for text in SINGULAR {
        for r in resolve(&parse_link(text).unwrap()) {
            let v = all_values(&r.diagram);
            assert!(v.iter().all(|x| *x == v[0]), "choices {:?}", r.choices);
        }
    }
}

#[test]
fn knots_keep_the_undivided_value() {
    let d = parse_link(UNKNOT_KINK).unwrap();
    let r = d.mva(0, 0).unwrap();
    assert_eq!(r.value, parse_poly("t^(5/2)", d.variables()).unwrap());
    let k = r.knot.unwrap();
    assert_eq!(k.times_t_minus_one, parse_poly("t^(5/2)*(t - 1)", d.variables()).unwrap());
    assert_eq!(k.over_t_minus_one, None);

    let d = parse_link(TREFOIL).unwrap();
    let want = parse_poly("t^(3/2)*(t^2 - t + 1)", d.variables()).unwrap();
    assert!(all_values(&d).iter().all(|v| *v == want));
}

#[test]
fn hopf_pieces() {
    let d = parse_link(HOPF).unwrap();
    let r = d.mva(0, 0).unwrap();
    assert_eq!(r.value, parse_poly("-x*y", d.variables()).unwrap());
    assert_eq!(r.mu, vec![1, 1]);
    // the value at t = 1 is the linking number up to sign
    assert_eq!(r.value.eval_at_one(), -num_rational::BigRational::from_integer(1.into()));
}
