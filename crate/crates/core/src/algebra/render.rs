//! Text, LaTeX and JSON renderings of [`MultiPoly`].

use num_traits::{One, Signed};
use serde_json::{json, Map, Value};

use super::{Monomial, MultiPoly, Rational, VarNames};

fn exponent_text(e: i32) -> Option<String> {
    // e is an s-exponent
    if e == 2 {
        None
    } else if e % 2 == 0 {
        Some(format!("{}", e / 2))
    } else {
        Some(format!("({}/2)", e))
    }
}

fn monomial_text(m: &Monomial, names: &VarNames) -> String {
    m.pairs()
        .iter()
        .map(|&(k, e)| match exponent_text(e) {
            None => names.name(k).to_string(),
            Some(x) => format!("{}^{}", names.name(k), x),
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn term_text(m: &Monomial, c: &Rational, names: &VarNames) -> String {
    if m.is_one() {
        return c.to_string();
    }
    let mono = monomial_text(m, names);
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

fn join_terms<'a, I>(terms: I, names: &VarNames, term: fn(&Monomial, &Rational, &VarNames) -> String) -> String
where
    I: Iterator<Item = (&'a Monomial, &'a Rational)>,
{
    let mut out = String::new();
    for (i, (m, c)) in terms.enumerate() {
        if i == 0 {
            out.push_str(&term(m, c, names));
        } else if c.is_negative() {
            out.push_str(" - ");
            out.push_str(&term(m, &-c.clone(), names));
        } else {
            out.push_str(" + ");
            out.push_str(&term(m, c, names));
        }
    }
    out
}

/// All terms in ascending canonical order, e.g. `x*y - x*y^2 + x*y^3`.
pub fn render_expanded(p: &MultiPoly, names: &VarNames) -> String {
    if p.is_zero() {
        return "0".into();
    }
    join_terms(p.terms(), names, term_text)
}

/// Canonical text with the monomial content pulled out, e.g. `x*y*(1 - y + y^2)`.
pub fn render_text(p: &MultiPoly, names: &VarNames) -> String {
    let content = p.monomial_content();
    if p.len() < 2 || content.is_one() {
        return render_expanded(p, names);
    }
    let inner = p.mul_monomial(&content.inv());
    format!("{}*({})", monomial_text(&content, names), render_expanded(&inner, names))
}

fn latex_name(name: &str) -> String {
    match name.strip_prefix('t') {
        Some(rest) if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) => format!("t_{{{rest}}}"),
        _ => name.to_string(),
    }
}

fn latex_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        let sign = if c.is_negative() { "-" } else { "" };
        format!("{}\\frac{{{}}}{{{}}}", sign, c.numer().abs(), c.denom())
    }
}

fn latex_monomial(m: &Monomial, names: &VarNames) -> String {
    m.pairs()
        .iter()
        .map(|&(k, e)| {
            let n = latex_name(names.name(k));
            if e == 2 {
                n
            } else if e % 2 == 0 {
                format!("{}^{{{}}}", n, e / 2)
            } else if e < 0 {
                format!("{}^{{-\\frac{{{}}}{{2}}}}", n, -e)
            } else {
                format!("{}^{{\\frac{{{}}}{{2}}}}", n, e)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn latex_term(m: &Monomial, c: &Rational, names: &VarNames) -> String {
    if m.is_one() {
        return latex_rational(c);
    }
    let mono = latex_monomial(m, names);
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{} {}", latex_rational(c), mono)
    }
}

pub fn render_latex(p: &MultiPoly, names: &VarNames) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let content = p.monomial_content();
    if p.len() < 2 || content.is_one() {
        return join_terms(p.terms(), names, latex_term);
    }
    let inner = p.mul_monomial(&content.inv());
    format!(
        "{} \\left({}\\right)",
        latex_monomial(&content, names),
        join_terms(inner.terms(), names, latex_term)
    )
}

/// `[{"coeff": "p/q", "exps": {"x": half-steps, ...}}, ...]` in canonical order.
pub fn to_json(p: &MultiPoly, names: &VarNames) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let mut exps = Map::new();
                for &(k, e) in m.pairs() {
                    exps.insert(names.name(k).to_string(), json!(e));
                }
                json!({ "coeff": c.to_string(), "exps": exps })
            })
            .collect(),
    )
}

/// Inverse of [`to_json`].
pub fn from_json(v: &Value, names: &VarNames) -> Result<MultiPoly, String> {
    let arr = v.as_array().ok_or("polynomial JSON must be an array")?;
    let mut p = MultiPoly::zero(names.len());
    for (i, t) in arr.iter().enumerate() {
        let coeff = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| format!("term {i}: missing string field 'coeff'"))?;
        let c: Rational = coeff.parse().map_err(|_| format!("term {i}: bad coefficient '{coeff}'"))?;
        let exps = t
            .get("exps")
            .and_then(Value::as_object)
            .ok_or_else(|| format!("term {i}: missing object field 'exps'"))?;
        let mut pairs = Vec::new();
        for (name, e) in exps {
            let k = names.index_of(name).ok_or_else(|| format!("term {i}: unknown variable '{name}'"))?;
            let e = e
                .as_i64()
                .and_then(|e| i32::try_from(e).ok())
                .ok_or_else(|| format!("term {i}: exponent of '{name}' is not a small integer"))?;
            pairs.push((k, e));
        }
        p.add_term(Monomial::from_pairs(pairs), c);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rational};

    fn xy() -> VarNames {
        VarNames::new(["x", "y"])
    }

    #[test]
    fn factored_text() {
        let p = parse_poly("x*y*(1 - y + y^2)", &xy()).unwrap();
        assert_eq!(render_text(&p, &xy()), "x*y*(1 - y + y^2)");
        assert_eq!(render_expanded(&p, &xy()), "x*y - x*y^2 + x*y^3");
    }

    #[test]
    fn single_terms() {
        let names = VarNames::default_for(2);
        let p = parse_poly("-t2^2", &names).unwrap();
        assert_eq!(render_text(&p, &names), "-t2^2");
        let q = MultiPoly::term(2, Monomial::from_pairs([(0, 2), (1, 4)]), rational(-1, 2));
        assert_eq!(render_text(&q, &names), "-1/2*t1*t2^2");
        assert_eq!(render_text(&MultiPoly::zero(2), &names), "0");
    }

    #[test]
    fn half_and_negative_exponents() {
        let p = MultiPoly::monomial(2, Monomial::from_pairs([(0, -1), (1, -4)]));
        assert_eq!(render_text(&p, &xy()), "x^(-1/2)*y^-2");
        assert_eq!(parse_poly(&render_text(&p, &xy()), &xy()).unwrap(), p);
    }

    #[test]
    fn latex_uses_declared_names() {
        let p = parse_poly("x*y*(1 - y + y^2)", &xy()).unwrap();
        assert_eq!(render_latex(&p, &xy()), "x y \\left(1 - y + y^{2}\\right)");
        let q = parse_poly("1/2*t1 - t2^(1/2)", &VarNames::default_for(2)).unwrap();
        assert_eq!(render_latex(&q, &VarNames::default_for(2)), "-t_{2}^{\\frac{1}{2}} + \\frac{1}{2} t_{1}");
    }

    #[test]
    fn json_round_trip() {
        let p = parse_poly("-1/2*x*y^2 + 3 - y^(-1/2)", &xy()).unwrap();
        let v = to_json(&p, &xy());
        assert_eq!(from_json(&v, &xy()).unwrap(), p);
    }
}
