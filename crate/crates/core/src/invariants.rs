//! Conway coefficients, Jones moments, and the Casson and Ohtsuki invariants
//! of (−1)-surgery on a knot.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::PDDiagram;
use crate::laurent::{format_rational, rat, ratio, LaurentPoly};
use crate::skein::{SkeinEngine, SkeinError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("expected a knot, got a diagram with {0} components")]
    NotAKnot(usize),
    #[error("{what} is not an integer: {value}")]
    NonInteger { what: String, value: String },
    #[error("Jones polynomial of a knot has a half-integer exponent")]
    NonIntegralJones,
    #[error("v2 = {v2} but a2 = {a2}; expected v2 = -6 a2")]
    Compatibility { v2: i64, a2: i64 },
    #[error(transparent)]
    Skein(#[from] SkeinError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryInvariants {
    pub conway: String,
    pub jones: String,
    pub a2: i64,
    pub c4: i64,
    pub v2: i64,
    pub v3: i64,
    #[serde(serialize_with = "ser_rational")]
    pub lambda1: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub lambda2: BigRational,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

fn integer(q: &BigRational, what: &str) -> Result<i64, InvariantsError> {
    if !q.is_integer() {
        return Err(InvariantsError::NonInteger {
            what: what.into(),
            value: format_rational(q),
        });
    }
    q.to_integer().to_i64().ok_or_else(|| InvariantsError::NonInteger {
        what: what.into(),
        value: format_rational(q),
    })
}

/// Coefficient of `z^2` in a Conway polynomial.
pub fn a2(conway: &LaurentPoly) -> Result<i64, InvariantsError> {
    integer(&conway.coeff(2), "z^2 coefficient")
}

/// Coefficient of `z^4` in a Conway polynomial.
pub fn c4(conway: &LaurentPoly) -> Result<i64, InvariantsError> {
    integer(&conway.coeff(4), "z^4 coefficient")
}

/// `i`-th derivative of `V(e^h)` at `h = 0`.
pub fn v_i(jones: &LaurentPoly, i: u32) -> BigRational {
    jones.moment(i)
}

/// Casson invariant of (−1)-surgery: `−a2`.
pub fn casson_minus_one_surgery(a2: i64) -> BigRational {
    rat(-a2)
}

/// `v2/2 + v3/3 + (5/3) v2^2 − 60 c4`.
pub fn ohtsuki_lambda2(v2: &BigRational, v3: &BigRational, c4: &BigRational) -> BigRational {
    v2 * ratio(1, 2) + v3 * ratio(1, 3) + ratio(5, 3) * v2 * v2 - rat(60) * c4
}

/// Full invariant record of a knot diagram.
pub fn surgery_invariants(engine: &SkeinEngine, d: &PDDiagram) -> Result<SurgeryInvariants, InvariantsError> {
    if d.component_count() != 1 {
        return Err(InvariantsError::NotAKnot(d.component_count()));
    }
    let conway = engine.conway(d)?;
    let jones = engine.jones(d)?;
    from_polynomials(&conway, &jones)
}

/// Invariant record from already computed polynomials of a knot.
pub fn from_polynomials(conway: &LaurentPoly, jones: &LaurentPoly) -> Result<SurgeryInvariants, InvariantsError> {
    if !jones.is_integral() {
        return Err(InvariantsError::NonIntegralJones);
    }
    let a2 = a2(conway)?;
    let c4 = c4(conway)?;
    let v2 = integer(&v_i(jones, 2), "v2")?;
    let v3 = integer(&v_i(jones, 3), "v3")?;
    if v2 != -6 * a2 {
        return Err(InvariantsError::Compatibility { v2, a2 });
    }
    Ok(SurgeryInvariants {
        conway: conway.render("z"),
        jones: jones.render("t"),
        a2,
        c4,
        v2,
        v3,
        lambda1: casson_minus_one_surgery(a2),
        lambda2: ohtsuki_lambda2(&rat(v2), &rat(v3), &rat(c4)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Distinguished,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distinction {
    pub first: SurgeryInvariants,
    pub second: SurgeryInvariants,
    pub verdict: Verdict,
    /// Which invariant separated the two, if any.
    pub by: Option<&'static str>,
}

/// Compare the (−1)-surgeries on two knots. Equal invariants prove nothing,
/// so the only verdicts are "distinguished" and "inconclusive".
pub fn distinguish(engine: &SkeinEngine, d1: &PDDiagram, d2: &PDDiagram) -> Result<Distinction, InvariantsError> {
    let first = surgery_invariants(engine, d1)?;
    let second = surgery_invariants(engine, d2)?;
    Ok(compare(first, second))
}

pub fn compare(first: SurgeryInvariants, second: SurgeryInvariants) -> Distinction {
    let by = if !(&first.lambda2 - &second.lambda2).is_zero() {
        Some("lambda2")
    } else if first.lambda1 != second.lambda1 {
        Some("lambda1")
    } else {
        None
    };
    Distinction {
        verdict: if by.is_some() {
            Verdict::Distinguished
        } else {
            Verdict::Inconclusive
        },
        first,
        second,
        by,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
    const FIVE_TWO: &str = "X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,6,10,7)";

    #[test]
    fn c4_examples() {
        let n = 5;
        assert_eq!(c4(&LaurentPoly::from_int_terms(&[(1, 0), (2, 2), (-n, 4)])).unwrap(), -5);
        assert_eq!(c4(&LaurentPoly::one()).unwrap(), 0);
        assert_eq!(c4(&LaurentPoly::from_int_terms(&[(1, 0), (2, 2)])).unwrap(), 0);
        assert!(c4(&LaurentPoly::monomial(ratio(1, 2), 8)).is_err());
    }

    #[test]
    fn lambda2_examples() {
        for n in 0..5 {
            let got = ohtsuki_lambda2(&rat(-12), &rat(36 * n + 108), &rat(-n));
            assert_eq!(got, rat(72 * n + 270));
        }
        assert_eq!(ohtsuki_lambda2(&rat(0), &rat(0), &rat(0)), rat(0));
        // 5/3 * 36 = 60: −3 + 12 + 60
        assert_eq!(ohtsuki_lambda2(&rat(-6), &rat(36), &rat(0)), rat(69));
    }

    #[test]
    fn casson_examples() {
        assert_eq!(casson_minus_one_surgery(2), rat(-2));
        assert_eq!(casson_minus_one_surgery(0), rat(0));
        assert_eq!(casson_minus_one_surgery(1), rat(-1));
    }

    #[test]
    fn records() {
        let e = SkeinEngine::default();
        let k = surgery_invariants(&e, &parse_pd(FIVE_TWO).unwrap()).unwrap();
        assert_eq!((k.a2, k.c4, k.v2, k.v3), (2, 0, -12, 108));
        assert_eq!((k.lambda1.clone(), k.lambda2.clone()), (rat(-2), rat(270)));

        let t = surgery_invariants(&e, &parse_pd(TREFOIL).unwrap()).unwrap();
        assert_eq!((t.a2, t.c4, t.v2, t.v3), (1, 0, -6, 36));
        assert_eq!(t.lambda2, rat(69));

        let u = surgery_invariants(&e, &PDDiagram::unknot()).unwrap();
        assert_eq!((u.a2, u.c4, u.v2, u.v3), (0, 0, 0, 0));
        assert_eq!(u.lambda2, rat(0));

        let hopf = parse_pd("X(1,4,2,3) X(3,2,4,1)").unwrap();
        assert_eq!(surgery_invariants(&e, &hopf), Err(InvariantsError::NotAKnot(2)));
    }

    #[test]
    fn verdicts() {
        let e = SkeinEngine::default();
        let k = parse_pd(FIVE_TWO).unwrap();
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(distinguish(&e, &k, &k).unwrap().verdict, Verdict::Inconclusive);
        let d = distinguish(&e, &k, &t).unwrap();
        assert_eq!(d.verdict, Verdict::Distinguished);
        assert_eq!(d.by, Some("lambda2"));
    }
}
