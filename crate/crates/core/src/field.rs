//! Exact arithmetic in the multi-quadratic field `K = Q(√m)` where `m`
//! ranges over signed squarefree integers.
//!
//! An element is a finite sum `Σ c_m · √m` with rational coefficients,
//! stored as a map from the radicand `m` to `c_m`. The radicand `1`
//! holds the rational part and the radicand `-1` is the imaginary unit.
//! Products of radicals reduce by gcd extraction, so every element has a
//! unique canonical form and equality is structural.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Arbitrary-precision rational number, always reduced with positive
/// denominator.
pub type Rational = BigRational;

/// Errors raised by field arithmetic.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero in K")]
    DivisionByZero,
}

/// An element of `K`: a map from signed squarefree radicands to rational
/// coefficients. No key maps to zero; zero is the empty map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FieldElement {
    terms: BTreeMap<i64, Rational>,
}

/// Largest square factor extraction: `m = s² · d` with `d` squarefree
/// carrying the sign of `m`. Returns `(s, d)`; `(0, 0)` for `m = 0`.
fn extract_square(m: i64) -> (i64, i64) {
    if m == 0 {
        return (0, 0);
    }
    let mut d = m.abs();
    let mut s = 1i64;
    let mut p = 2i64;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, d * m.signum())
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `√m · √m′` for squarefree signed radicands: the coefficient, and the
/// resulting squarefree radicand.
fn radical_product(m: i64, m2: i64) -> (i64, i64) {
    let g = gcd(m, m2);
    let d = (m / g) * (m2 / g);
    // Both radicands negative: i² = -1 on the common imaginary factor.
    let sign = if m < 0 && m2 < 0 { -1 } else { 1 };
    (sign * g, d)
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::default()
    }

    pub fn one() -> Self {
        FieldElement::from_integer(1)
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(1, r);
        }
        FieldElement { terms }
    }

    /// `p/q` as an element of `K`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Canonical square root of an integer: `sqrt_int(m) = s·√d` where
    /// `m = s²·d` with `d` squarefree. `sqrt_int(0) = 0`; negative `m`
    /// picks up the radicand `-d` (imaginary values).
    pub fn sqrt_int(m: i64) -> Self {
        let (s, d) = extract_square(m);
        if s == 0 {
            return Self::zero();
        }
        let mut terms = BTreeMap::new();
        terms.insert(d, Rational::from_integer(BigInt::from(s)));
        FieldElement { terms }
    }

    /// Canonical square root of a nonnegative rational `p/q`, computed as
    /// `sqrt_int(p·q)/q`.
    pub fn sqrt_rational(r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let pq = r.numer() * r.denom();
        let pq_i64: i64 = i64::try_from(&pq).expect("radicand out of supported range");
        Self::sqrt_int(pq_i64).scaled(&Rational::new(BigInt::one(), r.denom().clone()))
    }

    /// The imaginary unit `√-1`.
    pub fn imaginary_unit() -> Self {
        Self::sqrt_int(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&1).map_or(false, |c| c.is_one())
    }

    /// True when the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&m| m == 1)
    }

    /// The rational part (coefficient of radicand `1`).
    pub fn rational_part(&self) -> Rational {
        self.terms.get(&1).cloned().unwrap_or_else(Rational::zero)
    }

    /// The coefficient of `√m` (for squarefree `m`).
    pub fn coefficient(&self, m: i64) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, m: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scaled(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        FieldElement {
            terms: self.terms.iter().map(|(&m, c)| (m, c * r)).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = FieldElement::zero();
        for (&m, a) in &self.terms {
            for (&m2, b) in &other.terms {
                let (s, d) = radical_product(m, m2);
                out.insert_term(d, a * b * Rational::from_integer(BigInt::from(s)));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = FieldElement::one();
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    /// The atoms of the radical support: `-1` if any radicand is negative,
    /// plus every prime dividing some radicand.
    fn atoms(&self) -> Vec<i64> {
        let mut atoms = Vec::new();
        if self.terms.keys().any(|&m| m < 0) {
            atoms.push(-1);
        }
        let mut primes: Vec<i64> = Vec::new();
        for &m in self.terms.keys() {
            let mut v = m.abs();
            let mut p = 2;
            while p * p <= v {
                if v % p == 0 {
                    primes.push(p);
                    while v % p == 0 {
                        v /= p;
                    }
                }
                p += 1;
            }
            if v > 1 {
                primes.push(v);
            }
        }
        primes.sort_unstable();
        primes.dedup();
        atoms.extend(primes);
        atoms
    }

    /// The automorphism flipping the sign of `√atom` (atom `-1` flips all
    /// imaginary radicands, a prime `p` flips all radicands divisible by `p`).
    fn conjugate_atom(&self, atom: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&m, c)| {
                let flips = if atom == -1 { m < 0 } else { m.abs() % atom == 0 };
                (m, if flips { -c } else { c.clone() })
            })
            .collect();
        FieldElement { terms }
    }

    /// Exact inverse by iterated rationalization: conjugate away one atom of
    /// the radical support at a time until the denominator is rational.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let mut denom = self.clone();
        let mut numer = FieldElement::one();
        loop {
            let atoms = denom.atoms();
            match atoms.first() {
                None => break,
                Some(&atom) => {
                    let conj = denom.conjugate_atom(atom);
                    numer = numer.mul_ref(&conj);
                    denom = denom.mul_ref(&conj);
                }
            }
        }
        debug_assert!(denom.is_rational() && !denom.is_zero());
        let r = denom.rational_part();
        Ok(numer.scaled(&r.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul_ref(&other.inv()?))
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.insert_term(m, c.clone());
        }
        out
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        for (&m, c) in &rhs.terms {
            self.insert_term(m, c.clone());
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.insert_term(m, -c);
        }
        out
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.mul_ref(rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.mul_ref(&rhs)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m == 1 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "√{m}")?;
            } else {
                write!(f, "{mag}·√{m}")?;
            }
        }
        Ok(())
    }
}

fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_from_string(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.trim().parse().ok()?;
            Some(Rational::from_integer(p))
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(m, c)| (m.to_string(), rational_to_string(c)))
            .collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let map: BTreeMap<String, String> = BTreeMap::deserialize(deserializer)?;
        let mut out = FieldElement::zero();
        for (k, v) in map {
            let m: i64 = k.parse().map_err(|_| D::Error::custom("bad radicand"))?;
            let (s, d) = extract_square(m);
            if s != 1 || d != m {
                return Err(D::Error::custom("radicand is not squarefree"));
            }
            let c = rational_from_string(&v).ok_or_else(|| D::Error::custom("bad rational"))?;
            out.insert_term(m, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(m: i64) -> FieldElement {
        FieldElement::sqrt_int(m)
    }

    fn int(k: i64) -> FieldElement {
        FieldElement::from_integer(k)
    }

    #[test]
    fn add_collects_and_cancels() {
        assert_eq!(&sq(2) + &sq(2), sq(2).scaled(&Rational::from_integer(2.into())));
        assert!((&sq(2) + &(-&sq(2))).is_zero());
        let e = &FieldElement::from_ratio(1, 2) + &sq(3);
        assert_eq!(e.coefficient(1), Rational::new(1.into(), 2.into()));
        assert_eq!(e.coefficient(3), Rational::one());
    }

    #[test]
    fn radical_products_reduce() {
        assert_eq!(&sq(2) * &sq(3), sq(6));
        assert_eq!(&sq(2) * &sq(2), int(2));
        assert_eq!(&sq(-1) * &sq(-1), int(-1));
        assert_eq!(&sq(-2) * &sq(-2), int(-2));
        assert_eq!(&sq(-2) * &sq(6), &int(2) * &sq(-3));
        assert_eq!(&sq(-1) * &sq(2), sq(-2));
    }

    #[test]
    fn sqrt_int_extracts_square_factors() {
        assert_eq!(sq(8), &int(2) * &sq(2));
        assert_eq!(sq(12), &int(2) * &sq(3));
        assert!(sq(0).is_zero());
        assert_eq!(sq(9), int(3));
        assert_eq!(sq(-4), &int(2) * &sq(-1));
    }

    #[test]
    fn sqrt_int_squares_back() {
        for m in -100..=100 {
            let r = sq(m);
            assert_eq!(&r * &r, int(m), "sqrt_int({m})² ≠ {m}");
        }
    }

    #[test]
    fn inversion_is_exact() {
        let cases = [
            sq(2),
            sq(6),
            &int(1) + &sq(2),
            &(&sq(2) + &sq(3)) + &sq(-1),
            &FieldElement::from_ratio(3, 7) - &sq(30),
            &(&sq(-6) + &int(4)) + &sq(10),
        ];
        for a in cases {
            let b = a.inv().unwrap();
            assert!((&a * &b).is_one(), "a·a⁻¹ ≠ 1 for a = {a}");
        }
        assert_eq!(sq(2).inv().unwrap(), sq(2).scaled(&Rational::new(1.into(), 2.into())));
        assert_eq!((&int(1) + &sq(2)).inv().unwrap(), &sq(2) - &int(1));
        assert_eq!(sq(6).inv().unwrap(), sq(6).scaled(&Rational::new(1.into(), 6.into())));
        assert_eq!(FieldElement::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn canonical_equality() {
        let a = &(&sq(2) + &sq(3)) + &int(1);
        let b = &(&int(1) + &sq(3)) + &sq(2);
        assert_eq!(a, b);
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let cases = [
            FieldElement::zero(),
            &(&FieldElement::from_ratio(1, 2) + &sq(3)) + &sq(-2),
            sq(30).scaled(&Rational::new((-5).into(), 3.into())),
        ];
        for a in cases {
            let s = serde_json::to_string(&a).unwrap();
            let back: FieldElement = serde_json::from_str(&s).unwrap();
            assert_eq!(a, back);
            assert_eq!(s, serde_json::to_string(&back).unwrap());
        }
    }

    #[test]
    fn json_rejects_non_squarefree() {
        assert!(serde_json::from_str::<FieldElement>(r#"{"4":"1"}"#).is_err());
    }
}
