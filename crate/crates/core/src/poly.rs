//! Exact sparse multivariate Laurent polynomials over the rationals.
//!
//! Exponents are rationals too, so monomials such as `z^(3/2)` are
//! representable. Terms are stored in a `BTreeMap`, which gives a
//! canonical structure; the graded-lex order is applied on output.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, PolyError> {
    let bad = || PolyError::Parse(format!("bad rational '{s}'"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("negative power of a non-monomial polynomial")]
    NegativePowerNonMonomial,
    #[error("polynomial is not multilinear in {var}: offending monomial {monomial}")]
    NotMultilinear { var: String, monomial: String },
    #[error("zero raised to a negative exponent for variable {0}")]
    ZeroToNegative(String),
    #[error("variable {0} has no assigned value")]
    Unassigned(String),
    #[error("non-integer exponent {exp} of {var} cannot be evaluated or substituted")]
    NonIntegerExponent { var: String, exp: String },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Sorted list of `(variable, exponent)` pairs with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(String, Rat)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Self::var_pow(name, rat(1))
    }

    pub fn var_pow(name: &str, exp: Rat) -> Self {
        assert!(!name.is_empty(), "variable names must be non-empty");
        if exp.is_zero() {
            Monomial::one()
        } else {
            Monomial(vec![(name.to_string(), exp)])
        }
    }

    /// Build from integer exponents; zero entries are dropped.
    pub fn from_ints(pairs: &[(&str, i64)]) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::var_pow(v, rat(*e)));
        }
        m
    }

    pub fn from_map(map: BTreeMap<String, Rat>) -> Self {
        Monomial(map.into_iter().filter(|(_, e)| !e.is_zero()).collect())
    }

    pub fn entries(&self) -> &[(String, Rat)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, var: &str) -> Rat {
        match self.0.binary_search_by(|(v, _)| v.as_str().cmp(var)) {
            Ok(i) => self.0[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = &self.0[i].1 + &other.0[j].1;
                    if !e.is_zero() {
                        out.push((self.0[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: &Rat) -> Monomial {
        if k.is_zero() {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e * k)).collect())
    }

    pub fn without(&self, var: &str) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| v != var).cloned().collect())
    }

    pub fn total_degree(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |acc, (_, e)| acc + e)
    }

    /// Graded-lex comparison: total degree first, then the sorted entry lists.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if e.is_one() {
                    v.clone()
                } else if e.is_integer() {
                    format!("{v}^{e}")
                } else {
                    format!("{v}^({})", rat_to_string(e))
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn var(name: &str) -> Self {
        Self::term(rat(1), Monomial::var(name))
    }

    pub fn mono(m: Monomial) -> Self {
        Self::term(rat(1), m)
    }

    /// Monomial with integer exponents and unit coefficient.
    pub fn monomial(pairs: &[(&str, i64)]) -> Self {
        Self::mono(Monomial::from_ints(pairs))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Terms in graded-lex order, the canonical output order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.grlex_cmp(b.0));
        v
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, k)| (m.clone(), k * c)))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Result<MultiPoly, PolyError> {
        if k < 0 {
            let (m, c) = self.as_monomial().ok_or(PolyError::NegativePowerNonMonomial)?;
            let inv = c.recip();
            let mut acc = rat(1);
            for _ in 0..(-k) {
                acc *= &inv;
            }
            return Ok(MultiPoly::term(acc, m.pow(&rat(k))));
        }
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Apply a function to every monomial, keeping coefficients.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Replace variables by polynomials. Negative integer powers are allowed
    /// only when the image is a monomial.
    pub fn substitute(&self, map: &BTreeMap<String, MultiPoly>) -> Result<MultiPoly, PolyError> {
        let mut cache: BTreeMap<(String, Rat), MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = MultiPoly::constant(c.clone());
            let mut kept = Monomial::one();
            for (v, e) in &m.0 {
                match map.get(v) {
                    None => kept = kept.mul(&Monomial::var_pow(v, e.clone())),
                    Some(img) => {
                        let key = (v.clone(), e.clone());
                        if !cache.contains_key(&key) {
                            if !e.is_integer() {
                                return Err(PolyError::NonIntegerExponent {
                                    var: v.clone(),
                                    exp: rat_to_string(e),
                                });
                            }
                            let k = e.to_integer().to_i64().expect("exponent fits in i64");
                            cache.insert(key.clone(), img.pow(k)?);
                        }
                        acc = &acc * &cache[&key];
                    }
                }
            }
            out += &acc.mul_monomial(&kept);
        }
        Ok(out)
    }

    /// Denominator-free substitution `v -> num_v / den_v` for multilinear
    /// variables, scaled by the product of all denominators.
    pub fn substitute_multilinear(
        &self,
        num_den: &BTreeMap<String, (MultiPoly, MultiPoly)>,
    ) -> Result<MultiPoly, PolyError> {
        let vars: Vec<&String> = num_den.keys().collect();
        let mut grouped: BTreeMap<Vec<bool>, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut pattern = Vec::with_capacity(vars.len());
            for v in &vars {
                let e = m.exponent(v);
                if e.is_zero() {
                    pattern.push(false);
                } else if e.is_one() {
                    pattern.push(true);
                } else {
                    return Err(PolyError::NotMultilinear {
                        var: (*v).clone(),
                        monomial: m.to_string(),
                    });
                }
            }
            let rest = vars.iter().fold(m.clone(), |acc, v| acc.without(v));
            grouped.entry(pattern).or_default().add_term(rest, c.clone());
        }
        let mut out = MultiPoly::zero();
        for (pattern, rest) in grouped {
            let mut acc = rest;
            for (v, present) in vars.iter().zip(pattern) {
                let (num, den) = &num_den[*v];
                acc = &acc * if present { num } else { den };
            }
            out += &acc;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &BTreeMap<String, Rat>) -> Result<Rat, PolyError> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, e) in &m.0 {
                let x = point.get(v).ok_or_else(|| PolyError::Unassigned(v.clone()))?;
                if !e.is_integer() {
                    return Err(PolyError::NonIntegerExponent {
                        var: v.clone(),
                        exp: rat_to_string(e),
                    });
                }
                let k = e.to_integer().to_i64().expect("exponent fits in i64");
                if k < 0 && x.is_zero() {
                    return Err(PolyError::ZeroToNegative(v.clone()));
                }
                let base = if k < 0 { x.recip() } else { x.clone() };
                for _ in 0..k.unsigned_abs() {
                    val *= &base;
                }
            }
            total += val;
        }
        Ok(total)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(m, c)| {
                    let exps: serde_json::Map<String, Value> = m
                        .0
                        .iter()
                        .map(|(v, e)| (v.clone(), Value::String(rat_to_string(e))))
                        .collect();
                    json!({"coeff": rat_to_string(c), "exps": exps})
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<MultiPoly, PolyError> {
        let arr = v
            .as_array()
            .ok_or_else(|| PolyError::Parse("expected a JSON array".into()))?;
        let mut p = MultiPoly::zero();
        for item in arr {
            let coeff = item
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| PolyError::Parse("missing coeff".into()))?;
            let exps = item
                .get("exps")
                .and_then(Value::as_object)
                .ok_or_else(|| PolyError::Parse("missing exps".into()))?;
            let mut map = BTreeMap::new();
            for (k, e) in exps {
                let e = e
                    .as_str()
                    .ok_or_else(|| PolyError::Parse("exponent must be a string".into()))?;
                if k.is_empty() {
                    return Err(PolyError::Parse("empty variable name".into()));
                }
                map.insert(k.clone(), parse_rat(e)?);
            }
            p.add_term(Monomial::from_map(map), parse_rat(coeff)?);
        }
        Ok(p)
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms().into_iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let body = if m.is_one() {
                rat_to_string(&abs)
            } else if abs.is_one() {
                m.to_string()
            } else {
                format!("{}*{}", rat_to_string(&abs), m)
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&rat(-1))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
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

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

/// Accumulates integer-exponent monomials over a fixed variable list before
/// converting to a [`MultiPoly`]. Used by the state-sum hot loops.
#[derive(Clone, Debug)]
pub struct IntTermAccumulator {
    vars: Vec<String>,
    counts: BTreeMap<Vec<i64>, i64>,
}

impl IntTermAccumulator {
    pub fn new(vars: &[&str]) -> Self {
        IntTermAccumulator {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            counts: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, exps: Vec<i64>) {
        debug_assert_eq!(exps.len(), self.vars.len());
        *self.counts.entry(exps).or_insert(0) += 1;
    }

    pub fn push_count(&mut self, exps: Vec<i64>, count: i64) {
        debug_assert_eq!(exps.len(), self.vars.len());
        *self.counts.entry(exps).or_insert(0) += count;
    }

    pub fn merge(&mut self, other: IntTermAccumulator) {
        for (k, c) in other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
    }

    pub fn into_poly(self) -> MultiPoly {
        let vars = self.vars;
        MultiPoly::from_terms(self.counts.into_iter().map(|(exps, c)| {
            let map = vars
                .iter()
                .zip(exps)
                .map(|(v, e)| (v.clone(), rat(e)))
                .collect();
            (Monomial::from_map(map), rat(c))
        }))
    }
}

/// Parses a compact product-of-powers string such as `"a^2*b*c^-1"` or `"3*x"`.
/// Intended for tests and small fixtures.
pub fn parse_monomial_term(s: &str) -> Result<MultiPoly, PolyError> {
    let mut coeff = rat(1);
    let mut mono = Monomial::one();
    for factor in s.split('*').map(str::trim).filter(|f| !f.is_empty()) {
        if factor.chars().next().is_some_and(|c| c.is_ascii_digit() || c == '-') {
            coeff *= parse_rat(factor)?;
            continue;
        }
        let (v, e) = match factor.split_once('^') {
            Some((v, e)) => (v, parse_rat(e.trim_matches(|c| c == '(' || c == ')'))?),
            None => (factor, rat(1)),
        };
        mono = mono.mul(&Monomial::var_pow(v, e));
    }
    Ok(MultiPoly::term(coeff, mono))
}

/// Parses a sum of terms separated by `+` (terms may carry a leading `-`).
pub fn parse_poly(s: &str) -> Result<MultiPoly, PolyError> {
    let mut out = MultiPoly::zero();
    let normalized = s.replace(" - ", " + -").replace("^-", "^~");
    for t in normalized.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let t = t.replace("^~", "^-");
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b.trim().to_string()),
            None => (false, t),
        };
        let mut p = parse_monomial_term(&body)?;
        if neg {
            p = -&p;
        }
        out += &p;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let x = MultiPoly::var("x");
        let one = MultiPoly::one();
        assert_eq!(&(&x + &one) * &(&x - &one), p("x^2 - 1"));
    }

    #[test]
    fn laurent_inverse() {
        let a = MultiPoly::var("a");
        assert_eq!(&a * &a.pow(-1).unwrap(), MultiPoly::one());
    }

    #[test]
    fn monomial_square() {
        assert_eq!(p("a*d*l^2").pow(2).unwrap(), p("a^2*d^2*l^4"));
    }

    #[test]
    fn negative_power_of_binomial_rejected() {
        assert_eq!(p("x + 1").pow(-1), Err(PolyError::NegativePowerNonMonomial));
    }

    #[test]
    fn multilinear_single_var() {
        let mut nd = BTreeMap::new();
        nd.insert("b_e".to_string(), (p("f"), p("g")));
        assert_eq!(p("b_e").substitute_multilinear(&nd).unwrap(), p("f"));
        assert_eq!(MultiPoly::one().substitute_multilinear(&nd).unwrap(), p("g"));
    }

    #[test]
    fn multilinear_two_vars() {
        let mut nd = BTreeMap::new();
        nd.insert("b1".to_string(), (p("f1"), p("g1")));
        nd.insert("b2".to_string(), (p("f2"), p("g2")));
        let z = p("a*b1*b2 + b1");
        assert_eq!(z.substitute_multilinear(&nd).unwrap(), p("a*f1*f2 + f1*g2"));
    }

    #[test]
    fn multilinear_rejects_square() {
        let mut nd = BTreeMap::new();
        nd.insert("b".to_string(), (p("f"), p("g")));
        assert!(matches!(
            p("b^2").substitute_multilinear(&nd),
            Err(PolyError::NotMultilinear { .. })
        ));
    }

    #[test]
    fn multilinear_identity_substitution() {
        let z = p("a*b + 3*c*b + c^2");
        let mut nd = BTreeMap::new();
        nd.insert("b".to_string(), (p("b"), MultiPoly::one()));
        assert_eq!(z.substitute_multilinear(&nd).unwrap(), z);
    }

    #[test]
    fn evaluation_examples() {
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), rat(3));
        assert_eq!(p("x^2 - 1").evaluate(&pt).unwrap(), rat(8));
        pt.insert("y".to_string(), rat(2));
        pt.insert("z".to_string(), rat_frac(1, 2));
        assert_eq!(p("y*z").evaluate(&pt).unwrap(), rat(1));
        pt.insert("a".to_string(), rat(4));
        assert_eq!(p("a^-1").evaluate(&pt).unwrap(), rat_frac(1, 4));
        pt.insert("a".to_string(), rat(0));
        assert!(matches!(p("a^-1").evaluate(&pt), Err(PolyError::ZeroToNegative(_))));
    }

    #[test]
    fn json_roundtrip_and_order() {
        let q = p("3*x^2*y + x - 1/2*z^(3/2) + 7");
        let js = q.to_json();
        assert_eq!(MultiPoly::from_json(&js).unwrap(), q);
        let first = &js.as_array().unwrap()[0];
        assert_eq!(first["exps"], json!({}));
        assert_eq!(first["coeff"], json!("7"));
    }

    #[test]
    fn rational_exponents_combine() {
        let q = &p("z^(1/2)") * &p("z^(1/2)");
        assert_eq!(q, p("z"));
    }

    #[test]
    fn substitute_laurent_monomial() {
        let mut map = BTreeMap::new();
        map.insert("c".to_string(), p("z^-1"));
        map.insert("a".to_string(), p("x*y - y"));
        assert_eq!(p("a*c^2").substitute(&map).unwrap(), p("x*y*z^-2 - y*z^-2"));
    }
}
