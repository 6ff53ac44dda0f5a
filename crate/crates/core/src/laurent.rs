//! Truncated Laurent series in one formal parameter `δ` over a generic
//! coefficient ring.
//!
//! A series knows its valuation and an absolute truncation order: the
//! coefficient of `δ^k` is known exactly for `valuation ≤ k < truncation`
//! and unknown beyond. Multiplication propagates truncation by the usual
//! rule `trunc(ab) = min(val_a + trunc_b, val_b + trunc_a)`, so the
//! engine can take exact limits of products with pole-carrying factors.

use crate::field::{FieldElement, Rational};
use num::BigInt;
use std::fmt;

/// Minimal ring interface required of series coefficients.
pub trait Ring: Clone {
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref2(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero_ref(&self) -> bool;
}

impl Ring for FieldElement {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref2(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_ref(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("cannot invert a series that vanishes up to its truncation")]
    ZeroSeries,
    #[error("leading coefficient is not invertible")]
    NonInvertibleLeading,
    #[error("square root requires even valuation")]
    OddValuation,
    #[error("leading coefficient has no representable square root")]
    NonSquareLeading,
}

/// Truncated Laurent series: `coeffs[k]` is the coefficient of
/// `δ^(valuation + k)`; exponents from `valuation + coeffs.len()` up to
/// `truncation` are known to be zero. A series that vanishes identically
/// up to its truncation has empty `coeffs` and `valuation == truncation`.
#[derive(Clone, PartialEq)]
pub struct LaurentSeries<R: Ring> {
    valuation: i64,
    coeffs: Vec<R>,
    truncation: i64,
}

impl<R: Ring> LaurentSeries<R> {
    /// Build from raw parts; trims leading/trailing zeros into canonical form.
    pub fn new(valuation: i64, coeffs: Vec<R>, truncation: i64) -> Self {
        let mut s = LaurentSeries {
            valuation,
            coeffs,
            truncation,
        };
        s.normalize();
        s
    }

    pub fn zero(truncation: i64) -> Self {
        LaurentSeries {
            valuation: truncation,
            coeffs: Vec::new(),
            truncation,
        }
    }

    pub fn constant(c: R, truncation: i64) -> Self {
        Self::new(0, vec![c], truncation)
    }

    /// `c · δ^k`.
    pub fn monomial(c: R, k: i64, truncation: i64) -> Self {
        Self::new(k, vec![c], truncation)
    }

    fn normalize(&mut self) {
        while self.coeffs.first().map_or(false, R::is_zero_ref) {
            self.coeffs.remove(0);
            self.valuation += 1;
        }
        while self.coeffs.last().map_or(false, R::is_zero_ref) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.valuation = self.truncation;
        } else if self.valuation + self.coeffs.len() as i64 > self.truncation {
            self.coeffs
                .truncate((self.truncation - self.valuation).max(0) as usize);
            self.normalize();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    /// Coefficient of `δ^k`, `None` meaning a known zero. Panics if `k` is
    /// beyond the truncation.
    pub fn coeff(&self, k: i64) -> Option<&R> {
        assert!(k < self.truncation, "coefficient beyond truncation");
        if k < self.valuation || k >= self.valuation + self.coeffs.len() as i64 {
            None
        } else {
            Some(&self.coeffs[(k - self.valuation) as usize])
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let truncation = self.truncation.min(other.truncation);
        if self.is_zero() {
            let mut out = other.clone();
            out.truncation = truncation;
            out.normalize();
            return out;
        }
        if other.is_zero() {
            let mut out = self.clone();
            out.truncation = truncation;
            out.normalize();
            return out;
        }
        let valuation = self.valuation.min(other.valuation);
        let len = ((self.valuation + self.coeffs.len() as i64)
            .max(other.valuation + other.coeffs.len() as i64)
            - valuation) as usize;
        let mut coeffs: Vec<Option<R>> = vec![None; len];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.valuation - valuation) as usize + k] = Some(c.clone());
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.valuation - valuation) as usize + k];
            *slot = Some(match slot.take() {
                Some(prev) => prev.add_ref(c),
                None => c.clone(),
            });
        }
        let zero_template = self.coeffs[0].add_ref(&self.coeffs[0].neg_ref());
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.unwrap_or_else(|| zero_template.clone()))
            .collect();
        Self::new(valuation, coeffs, truncation)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(R::neg_ref).collect(),
            truncation: self.truncation,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product with truncation propagation.
    pub fn mul(&self, other: &Self) -> Self {
        let truncation =
            (self.valuation + other.truncation).min(other.valuation + self.truncation);
        if self.is_zero() || other.is_zero() {
            return Self::zero(truncation);
        }
        let valuation = self.valuation + other.valuation;
        let len = ((truncation - valuation).max(0) as usize)
            .min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs: Vec<Option<R>> = vec![None; len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                let p = a.mul_ref2(b);
                let slot = &mut coeffs[i + j];
                *slot = Some(match slot.take() {
                    Some(prev) => prev.add_ref(&p),
                    None => p,
                });
            }
        }
        let zero_template = self.coeffs[0].add_ref(&self.coeffs[0].neg_ref());
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.unwrap_or_else(|| zero_template.clone()))
            .collect();
        Self::new(valuation, coeffs, truncation)
    }

    /// Coefficient-wise image under `f`; used to promote scalar series into
    /// series over a larger ring.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentSeries<S> {
        LaurentSeries::new(
            self.valuation,
            self.coeffs.iter().map(f).collect(),
            self.truncation,
        )
    }
}

impl LaurentSeries<FieldElement> {
    /// Multiplicative inverse; the relative precision of the input is kept.
    pub fn invert(&self) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroSeries);
        }
        let lead = &self.coeffs[0];
        let lead_inv = lead.inv().map_err(|_| LaurentError::NonInvertibleLeading)?;
        let rel = (self.truncation - self.valuation) as usize;
        let mut out: Vec<FieldElement> = Vec::with_capacity(rel);
        out.push(lead_inv.clone());
        for k in 1..rel {
            // b_k = -lead⁻¹ · Σ_{j=1..k} a_j b_{k-j}
            let mut acc = FieldElement::zero();
            for j in 1..=k {
                if j < self.coeffs.len() {
                    acc += &self.coeffs[j].mul_ref(&out[k - j]);
                }
            }
            out.push(-&acc.mul_ref(&lead_inv));
        }
        Ok(Self::new(
            -self.valuation,
            out,
            self.truncation - 2 * self.valuation,
        ))
    }

    /// Square root with the canonical (nonnegative-rooted) leading
    /// coefficient, by the recursive square-root recurrence.
    pub fn sqrt(&self) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Ok(Self::zero(self.truncation - self.truncation / 2));
        }
        if self.valuation % 2 != 0 {
            return Err(LaurentError::OddValuation);
        }
        let lead = &self.coeffs[0];
        if !lead.is_rational() {
            return Err(LaurentError::NonSquareLeading);
        }
        let s0 = FieldElement::sqrt_rational(&lead.rational_part());
        if s0.mul_ref(&s0) != *lead {
            return Err(LaurentError::NonSquareLeading);
        }
        let scale = s0
            .scaled(&Rational::from_integer(BigInt::from(2)))
            .inv()
            .map_err(|_| LaurentError::NonSquareLeading)?;
        let rel = (self.truncation - self.valuation) as usize;
        let mut out: Vec<FieldElement> = Vec::with_capacity(rel);
        out.push(s0);
        for k in 1..rel {
            // s_k = (a_k - Σ_{j=1..k-1} s_j s_{k-j}) / (2 s_0)
            let mut acc = if k < self.coeffs.len() {
                self.coeffs[k].clone()
            } else {
                FieldElement::zero()
            };
            for j in 1..k {
                acc = &acc - &out[j].mul_ref(&out[k - j]);
            }
            out.push(acc.mul_ref(&scale));
        }
        Ok(Self::new(
            self.valuation / 2,
            out,
            self.truncation - self.valuation / 2,
        ))
    }
}

/// The series `√((c + r²δ²)(c + r²δ² + 1))` expanded in `δ`: a box content
/// shifted along the path `t = r²δ²`. For `c = 0` the result has valuation
/// 1; otherwise its constant term is `sqrt_int(c(c+1))`.
pub fn u_series(c: i64, r: i64, truncation: i64) -> LaurentSeries<FieldElement> {
    content_sqrt_series(c, r * r, 2, truncation)
}

/// The series `√((c + s·δ^step)(c + s·δ^step + 1))`.
pub fn content_sqrt_series(
    c: i64,
    s: i64,
    step: i64,
    truncation: i64,
) -> LaurentSeries<FieldElement> {
    let budget = truncation + step.max(2);
    let shift = LaurentSeries::new(0, vec![FieldElement::from_integer(c)], budget).add(
        &LaurentSeries::monomial(FieldElement::from_integer(s), step, budget),
    );
    let one = LaurentSeries::constant(FieldElement::one(), budget);
    let sq = shift.mul(&shift.add(&one));
    let mut root = sq
        .sqrt()
        .expect("content polynomial always has a representable root");
    if root.truncation > truncation {
        root.truncation = truncation;
        root.normalize();
    }
    root
}

impl<R: Ring + fmt::Display> fmt::Display for LaurentSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O(δ^{})", self.truncation);
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_ref() {
                continue;
            }
            let e = self.valuation + k as i64;
            if k > 0 {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})·δ^{e}")?;
            }
        }
        write!(f, " + O(δ^{})", self.truncation)
    }
}

impl<R: Ring + fmt::Display> fmt::Debug for LaurentSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
