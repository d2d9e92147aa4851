//! Exact Laurent polynomials in a single variable with half-integer exponents,
//! and truncated power series in `h` for the substitution `t = e^h`.
//!
//! Exponents are stored doubled: the key `1` is `t^(1/2)`, the key `-4` is
//! `t^-2`. Coefficients are arbitrary-precision rationals and zero
//! coefficients are never stored, so structural equality is polynomial
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Build a rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Build the rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^(doubled/2)`.
    pub fn monomial(c: BigRational, doubled: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(doubled, c);
        }
        LaurentPoly { terms }
    }

    /// The variable to an integer power with coefficient 1.
    pub fn var_pow(exp: i64) -> Self {
        Self::monomial(BigRational::one(), 2 * exp)
    }

    /// `t^(1/2)` raised to `k`, i.e. `t^(k/2)`.
    pub fn half_pow(k: i64) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    /// Integer coefficients at integer exponents, e.g. `[(1, 0), (2, 2)]` is `1 + 2t^2`.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(c, e)| acc + Self::monomial(rat(c), 2 * e))
    }

    /// Integer coefficients at doubled exponents.
    pub fn from_doubled_terms(terms: &[(i64, i64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(c, k)| acc + Self::monomial(rat(c), k))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(doubled exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^(doubled/2)`, zero when absent.
    pub fn coeff_doubled(&self, doubled: i64) -> BigRational {
        self.terms.get(&doubled).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of an integer power.
    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeff_doubled(2 * exp)
    }

    /// Coefficient at a half-integer exponent given as a rational.
    /// Exponents that are not half-integers have coefficient zero.
    pub fn coeff_at(&self, exp: &BigRational) -> BigRational {
        let doubled = exp * rat(2);
        if !doubled.is_integer() {
            return BigRational::zero();
        }
        match i64::try_from(doubled.to_integer()) {
            Ok(k) => self.coeff_doubled(k),
            Err(_) => BigRational::zero(),
        }
    }

    /// True when every exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Lowest and highest doubled exponent.
    pub fn span(&self) -> Option<(i64, i64)> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiply by `t^(doubled/2)`.
    pub fn shift(&self, doubled: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (k + doubled, v.clone())).collect(),
        }
    }

    /// Substitute `t -> t^-1`.
    pub fn mirror(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (-k, v.clone())).collect(),
        }
    }

    /// Substitute `t^(1/2) -> -t^(1/2)`; flips the sign of half-integer powers.
    pub fn negate_half_powers(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, if k % 2 != 0 { -v.clone() } else { v.clone() }))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
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

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// `sum_k a_k * k^i` over terms `a_k t^k`: the `i`-th derivative of
    /// `p(e^h)` at `h = 0`.
    pub fn moment(&self, i: u32) -> BigRational {
        let mut total = BigRational::zero();
        for (k, c) in &self.terms {
            let exp = ratio(*k, 2);
            total += c * num_traits::pow(exp, i as usize);
        }
        total
    }

    /// Taylor expansion of `p(e^h)` about `h = 0` up to `h^order`.
    ///
    /// Goes through series arithmetic (`e^(h/2)` raised to each doubled
    /// exponent) rather than the closed-form moments, so the two can be
    /// cross-checked.
    pub fn substitute_exp(&self, order: usize) -> TruncatedSeries {
        let half = TruncatedSeries::exp_half(order);
        let mut out = TruncatedSeries::zero(order);
        for (k, c) in &self.terms {
            let power = half.powi(*k);
            out = &out + &power.scale(c);
        }
        out
    }

    /// Render as `a*t^(p/2) + ...` with descending exponents, using `var` as
    /// the variable name.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let body = render_term(&c.abs(), *k, var);
            match (i, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

fn render_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_exponent(doubled: i64) -> String {
    if doubled % 2 == 0 {
        let e = doubled / 2;
        if e < 0 {
            format!("({e})")
        } else {
            e.to_string()
        }
    } else {
        format!("({doubled}/2)")
    }
}

fn render_term(abs_coeff: &BigRational, doubled: i64, var: &str) -> String {
    let mono = match doubled {
        0 => String::new(),
        2 => var.to_string(),
        k => format!("{var}^{}", render_exponent(k)),
    };
    if mono.is_empty() {
        render_rational(abs_coeff)
    } else if abs_coeff.is_one() {
        mono
    } else {
        format!("{}*{}", render_rational(abs_coeff), mono)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.terms {
            let entry = self.terms.entry(*k).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(k);
            }
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += &(-rhs);
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                *terms.entry(ka + kb).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Power series in `h` truncated after `h^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least h^0");
        TruncatedSeries { coeffs }
    }

    /// `e^(h/2)` truncated: coefficients `1 / (2^j j!)`.
    pub fn exp_half(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = BigRational::one();
        for j in 0..=order {
            if j > 0 {
                c /= rat(2 * j as i64);
            }
            coeffs.push(c.clone());
        }
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `h^i` (zero beyond the order).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `i! * [h^i]`, the `i`-th derivative at zero.
    pub fn derivative_at_zero(&self, i: usize) -> BigRational {
        let fact = (1..=i as i64).fold(BigInt::one(), |acc, j| acc * j);
        self.coeff(i) * BigRational::from_integer(fact)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let mut inv = vec![BigRational::zero(); n];
        inv[0] = a0.recip();
        for i in 1..n {
            let mut s = BigRational::zero();
            for j in 1..=i {
                s += &self.coeffs[j] * &inv[i - j];
            }
            inv[i] = -s / a0;
        }
        Some(TruncatedSeries { coeffs: inv })
    }

    /// Integer power; negative powers go through the inverse.
    pub fn powi(&self, k: i64) -> Self {
        let base = if k < 0 {
            self.inverse().expect("series with zero constant term has no inverse")
        } else {
            self.clone()
        };
        let mut acc = Self::one(self.order());
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }
}

/// Exact integer from a rational, if it is one.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

/// Rational as `p/q`, or `p` when integral.
pub fn format_rational(q: &BigRational) -> String {
    render_rational(q)
}
