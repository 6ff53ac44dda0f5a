//! The Sergeev algebra `H_n = S_n ⋉ A_n` over the exact field `K`: the
//! semidirect product of the symmetric group with the Clifford algebra on
//! `n` generators subject to `a_i² = -1`, `a_i a_j = -a_j a_i`.
//!
//! Elements are sparse `K`-linear combinations of the basis
//! `g · a_1^{l_1} … a_n^{l_n}`. Clifford monomials are kept in ascending
//! index order; the group acts by `g a_i g⁻¹ = a_{g(i)}`.

use crate::field::FieldElement;
use crate::laurent::{LaurentSeries, Ring};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SergeevError {
    #[error("elements live in different H_n (sizes {0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("pole: the factor is evaluated at u = ±v")]
    Pole,
    #[error("index out of range")]
    IndexRange,
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (1..=n as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Self {
        let mut seen = vec![false; images.len() + 1];
        for &i in &images {
            assert!(i >= 1 && (i as usize) <= images.len() && !seen[i as usize], "not a bijection");
            seen[i as usize] = true;
        }
        Perm { images }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i != j && 1 <= i && i <= n && 1 <= j && j <= n);
        let mut images: Vec<u8> = (1..=n as u8).collect();
        images.swap(i - 1, j - 1);
        Perm { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Function composition: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm {
            images: (1..=self.n()).map(|i| self.images[other.apply(i) - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.n()];
        for i in 1..=self.n() {
            images[self.apply(i) - 1] = i as u8;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    /// Transpositions whose left-to-right product equals this permutation.
    pub fn transposition_factors(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.n() + 1];
        for start in 1..=self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            for w in cycle.windows(2) {
                out.push((w[0], w[1]));
            }
        }
        out
    }

    /// Cycle type as a decreasing list of cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.n() + 1];
        for start in 1..=self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut len = 1;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                len += 1;
                next = self.apply(next);
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Enumerate all permutations of `{1..n}`.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut images: Vec<u8> = (1..=n as u8).collect();
        fn rec(images: &mut Vec<u8>, k: usize, out: &mut Vec<Perm>) {
            if k == images.len() {
                out.push(Perm {
                    images: images.clone(),
                });
                return;
            }
            for i in k..images.len() {
                images.swap(k, i);
                rec(images, k + 1, out);
                images.swap(k, i);
            }
        }
        rec(&mut images, 0, &mut out);
        out.sort();
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Clifford monomial as a bit mask: bit `i-1` set means `a_i` appears.
/// The written order of the generators is ascending.
pub type CliffordMask = u32;

/// Multiply two normal-ordered Clifford monomials: returns the sign and
/// the resulting mask. Sign counts the anticommutations needed to merge
/// plus one `-1` for every repeated generator (`a_i² = -1`).
pub fn clifford_mul(a: CliffordMask, b: CliffordMask) -> (i32, CliffordMask) {
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let i = bb.trailing_zeros();
        // generators of `a` strictly greater than i must be crossed
        inversions += (a >> (i + 1)).count_ones();
        bb &= bb - 1;
    }
    let common = (a & b).count_ones();
    let sign = if (inversions + common) % 2 == 0 { 1 } else { -1 };
    (sign, a ^ b)
}

/// Relabel a Clifford monomial by `i ↦ map(i)` and re-sort, tracking the
/// anticommutation sign. The images must be distinct.
fn clifford_relabel(mask: CliffordMask, map: impl Fn(u32) -> u32) -> (i32, CliffordMask) {
    let mut images: Vec<u32> = Vec::new();
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros();
        images.push(map(i + 1) - 1);
        m &= m - 1;
    }
    let mut inversions = 0;
    for x in 0..images.len() {
        for y in x + 1..images.len() {
            if images[x] > images[y] {
                inversions += 1;
            }
        }
    }
    let mut out = 0u32;
    for &i in &images {
        debug_assert!(out & (1 << i) == 0);
        out |= 1 << i;
    }
    (if inversions % 2 == 0 { 1 } else { -1 }, out)
}

/// An element of `H_n`: a sparse map from basis pairs (permutation,
/// Clifford mask) to field coefficients. Zero coefficients are pruned.
#[derive(Clone, PartialEq)]
pub struct SergeevElement {
    n: usize,
    terms: BTreeMap<(Perm, CliffordMask), FieldElement>,
}

impl SergeevElement {
    pub fn zero(n: usize) -> Self {
        SergeevElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(Perm::identity(n), 0)
    }

    pub fn scalar(n: usize, c: FieldElement) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Perm::identity(n), 0, c);
        e
    }

    /// The basis element `g · a_S` with coefficient 1.
    pub fn basis(g: Perm, mask: CliffordMask) -> Self {
        let n = g.n();
        let mut e = Self::zero(n);
        e.add_term(g, mask, FieldElement::one());
        e
    }

    /// The generator `a_k`.
    pub fn clifford_gen(n: usize, k: usize) -> Self {
        assert!(1 <= k && k <= n);
        Self::basis(Perm::identity(n), 1 << (k - 1))
    }

    /// The transposition `(i j)` as an algebra element.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        Self::basis(Perm::transposition(n, i, j), 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Perm, CliffordMask), &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &Perm, mask: CliffordMask) -> FieldElement {
        self.terms
            .get(&(g.clone(), mask))
            .cloned()
            .unwrap_or_else(FieldElement::zero)
    }

    pub fn add_term(&mut self, g: Perm, mask: CliffordMask, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((g, mask)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "size mismatch");
        let mut out = self.clone();
        for ((g, m), c) in &other.terms {
            out.add_term(g.clone(), *m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SergeevElement {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scaled(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(self.n);
        for ((g, m), a) in &self.terms {
            out.add_term(g.clone(), *m, a.mul_ref(c));
        }
        out
    }

    /// Product of basis elements:
    /// `(g₁ A₁)(g₂ A₂) = (g₁ g₂) · (g₂⁻¹ A₁ g₂) · A₂`.
    fn basis_product(
        g1: &Perm,
        m1: CliffordMask,
        g2: &Perm,
        m2: CliffordMask,
    ) -> (i32, Perm, CliffordMask) {
        let g = g1.compose(g2);
        let g2inv = g2.inverse();
        let (s1, m1c) = clifford_relabel(m1, |i| g2inv.apply(i as usize) as u32);
        let (s2, m) = clifford_mul(m1c, m2);
        (s1 * s2, g, m)
    }

    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "size mismatch");
        let mut out = Self::zero(self.n);
        for ((g1, m1), c1) in &self.terms {
            for ((g2, m2), c2) in &other.terms {
                let (sign, g, m) = Self::basis_product(g1, *m1, g2, *m2);
                let mut c = c1.mul_ref(c2);
                if sign < 0 {
                    c = -c;
                }
                out.add_term(g, m, c);
            }
        }
        out
    }

    /// The involutive antiautomorphism fixing `S_n` pointwise on
    /// transpositions: `g ↦ g⁻¹`, `a_i ↦ -a_i`, `(xy)* = y* x*`.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ((g, m), c) in &self.terms {
            // (g·a_S)* = (-1)^{|S|} a_{i_k}…a_{i_1} · g⁻¹
            //          = (-1)^{|S| + |S|(|S|-1)/2} · g⁻¹ · a_{g(S)} (sorted)
            let k = m.count_ones();
            let mut sign = if (k + k * (k.saturating_sub(1)) / 2) % 2 == 0 {
                1
            } else {
                -1
            };
            let (s, mg) = clifford_relabel(*m, |i| g.apply(i as usize) as u32);
            sign *= s;
            let mut c = c.clone();
            if sign < 0 {
                c = -c;
            }
            out.add_term(g.inverse(), mg, c);
        }
        out
    }

    /// Projection onto the Clifford part: kills every term whose
    /// permutation is not the identity.
    pub fn alpha(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ((g, m), c) in &self.terms {
            if g.is_identity() {
                out.add_term(g.clone(), *m, c.clone());
            }
        }
        out
    }

    /// The inverse of a basis element (unit coefficient).
    pub fn basis_inverse(g: &Perm, mask: CliffordMask) -> (i32, Perm, CliffordMask) {
        // (g·a_S)⁻¹ = a_S⁻¹ g⁻¹; a_S⁻¹ = (-1)^{k(k+1)/2} a_S
        let k = mask.count_ones();
        let mut sign = if (k * (k + 1) / 2) % 2 == 0 { 1 } else { -1 };
        let (s, mg) = clifford_relabel(mask, |i| g.apply(i as usize) as u32);
        sign *= s;
        (sign, g.inverse(), mg)
    }

    /// Push the element into a larger algebra, shifting all letters by
    /// `offset`.
    pub fn embed(&self, n_total: usize, offset: usize) -> Self {
        assert!(offset + self.n <= n_total, "embedding out of bounds");
        let mut out = Self::zero(n_total);
        for ((g, m), c) in &self.terms {
            let mut images: Vec<u8> = (1..=n_total as u8).collect();
            for i in 1..=self.n {
                images[offset + i - 1] = (g.apply(i) + offset) as u8;
            }
            let (s, mm) = clifford_relabel(*m, |i| i + offset as u32);
            debug_assert_eq!(s, 1);
            out.add_term(Perm { images }, mm, c.clone());
        }
        out
    }

    /// Overall parity when homogeneous; `None` for mixed elements.
    pub fn parity(&self) -> Option<u32> {
        let mut p = None;
        for ((_, m), _) in &self.terms {
            let q = m.count_ones() % 2;
            match p {
                None => p = Some(q),
                Some(prev) if prev != q => return None,
                _ => {}
            }
        }
        p.or(Some(0))
    }
}

impl Ring for SergeevElement {
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul_ref2(&self, other: &Self) -> Self {
        self.product(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn is_zero_ref(&self) -> bool {
        self.is_zero()
    }
}

/// The rational factor
/// `φ_ij(u,v) = 1 - (i j)/(u-v) + (i j)·a_i a_j/(u+v)` in `H_n`.
pub fn phi(
    i: usize,
    j: usize,
    u: &FieldElement,
    v: &FieldElement,
    n: usize,
) -> Result<SergeevElement, SergeevError> {
    if i == j || i > n || j > n || i == 0 || j == 0 {
        return Err(SergeevError::IndexRange);
    }
    let diff = u - v;
    let sum = u + v;
    if diff.is_zero() || sum.is_zero() {
        return Err(SergeevError::Pole);
    }
    let mut out = SergeevElement::one(n);
    let t = Perm::transposition(n, i, j);
    out.add_term(t.clone(), 0, -&diff.inv().unwrap());
    // a_i a_j with i > j flips to -a_j a_i in the canonical mask order
    let mask: CliffordMask = (1 << (i - 1)) | (1 << (j - 1));
    let mut c = sum.inv().unwrap();
    if i > j {
        c = -c;
    }
    out.add_term(t, mask, c);
    Ok(out)
}

/// Series-valued `φ_ij`: `1 - (i j)·(u-v)⁻¹ + (i j)a_i a_j·(u+v)⁻¹` where
/// `u`, `v` are scalar Laurent series.
pub fn phi_series(
    i: usize,
    j: usize,
    u: &LaurentSeries<FieldElement>,
    v: &LaurentSeries<FieldElement>,
    n: usize,
) -> Result<LaurentSeries<SergeevElement>, SergeevError> {
    if i == j || i > n || j > n || i == 0 || j == 0 {
        return Err(SergeevError::IndexRange);
    }
    let diff_inv = u.sub(v).invert().map_err(|_| SergeevError::Pole)?;
    let sum_inv = u.add(v).invert().map_err(|_| SergeevError::Pole)?;
    let trunc = diff_inv.truncation().min(sum_inv.truncation());
    let one = LaurentSeries::constant(SergeevElement::one(n), trunc);
    let t = SergeevElement::transposition(n, i, j);
    let mask: CliffordMask = (1 << (i - 1)) | (1 << (j - 1));
    let mut taa = SergeevElement::basis(Perm::transposition(n, i, j), mask);
    if i > j {
        taa = taa.neg();
    }
    let term1 = diff_inv.map(|c| t.scaled(&(-c)));
    let term2 = sum_inv.map(|c| taa.scaled(c));
    Ok(one.add(&term1).add(&term2))
}

/// Inverse of `φ_ij(u,v)` away from the idempotent locus:
/// `φ_ij(u,v)⁻¹ = φ_ji(v,u) / (1 - 1/(u-v)² - 1/(u+v)²)`.
pub fn phi_inverse(
    i: usize,
    j: usize,
    u: &FieldElement,
    v: &FieldElement,
    n: usize,
) -> Result<SergeevElement, SergeevError> {
    let d = (u - v).pow(2).inv().map_err(|_| SergeevError::Pole)?;
    let s = (u + v).pow(2).inv().map_err(|_| SergeevError::Pole)?;
    let norm = &(&FieldElement::one() - &d) - &s;
    let norm_inv = norm.inv().map_err(|_| SergeevError::Pole)?;
    Ok(phi(j, i, v, u, n)?.scaled(&norm_inv))
}

/// The Jucys-Murphy element `x_k = Σ_{i<k} (i k) + (i k) a_i a_k` of `H_n`.
pub fn jm_element(k: usize, n: usize) -> SergeevElement {
    assert!(1 <= k && k <= n);
    let mut out = SergeevElement::zero(n);
    for i in 1..k {
        let t = Perm::transposition(n, i, k);
        out.add_term(t.clone(), 0, FieldElement::one());
        let mask: CliffordMask = (1 << (i - 1)) | (1 << (k - 1));
        out.add_term(t, mask, FieldElement::one());
    }
    out
}

/// The element `y_k = Σ_{1≤j≤m} (k ĵ) - (k ĵ) a_k a_ĵ` of `H_{n+m}`,
/// where `ĵ = j + n`.
pub fn y_element(k: usize, n: usize, m: usize) -> SergeevElement {
    assert!(1 <= k && k <= n);
    let total = n + m;
    let mut out = SergeevElement::zero(total);
    for j in 1..=m {
        let jt = j + n;
        let t = Perm::transposition(total, k, jt);
        out.add_term(t.clone(), 0, FieldElement::one());
        let mask: CliffordMask = (1 << (k - 1)) | (1 << (jt - 1));
        out.add_term(t, mask, -FieldElement::one());
    }
    out
}

impl fmt::Display for SergeevElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((g, m), c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "({c})·")?;
            if g.is_identity() && *m == 0 {
                write!(f, "e")?;
            } else {
                if !g.is_identity() {
                    let mut seen = vec![false; self.n + 1];
                    for start in 1..=self.n {
                        if seen[start] || g.apply(start) == start {
                            continue;
                        }
                        write!(f, "(")?;
                        let mut cur = start;
                        loop {
                            seen[cur] = true;
                            write!(f, "{cur}")?;
                            cur = g.apply(cur);
                            if cur == start {
                                break;
                            }
                            write!(f, " ")?;
                        }
                        write!(f, ")")?;
                    }
                }
                let mut mm = *m;
                while mm != 0 {
                    let i = mm.trailing_zeros();
                    write!(f, "a{}", i + 1)?;
                    mm &= mm - 1;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SergeevElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    perm: Vec<u8>,
    clifford: Vec<u32>,
    coeff: FieldElement,
}

impl Serialize for SergeevElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((g, m), c) in &self.terms {
            let mut clifford = Vec::new();
            let mut mm = *m;
            while mm != 0 {
                let i = mm.trailing_zeros();
                clifford.push(i + 1);
                mm &= mm - 1;
            }
            seq.serialize_element(&TermRepr {
                perm: g.images.clone(),
                clifford,
                coeff: c.clone(),
            })?;
        }
        seq.end()
    }
}

impl SergeevElement {
    /// Deserialize from the list-of-terms JSON schema; `n` is inferred from
    /// the permutation length.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        let reprs: Vec<TermRepr> =
            serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
        let n = reprs
            .first()
            .map(|t| t.perm.len())
            .ok_or_else(|| "empty term list has no size".to_string())?;
        let mut out = SergeevElement::zero(n);
        for t in reprs {
            if t.perm.len() != n {
                return Err("inconsistent permutation sizes".to_string());
            }
            let mut mask = 0u32;
            for i in t.clifford {
                if i == 0 || i as usize > n {
                    return Err("clifford index out of range".to_string());
                }
                mask |= 1 << (i - 1);
            }
            out.add_term(Perm::from_images(t.perm), mask, t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn fe(k: i64) -> FieldElement {
        FieldElement::from_integer(k)
    }

    fn a(n: usize, k: usize) -> SergeevElement {
        SergeevElement::clifford_gen(n, k)
    }

    fn t(n: usize, i: usize, j: usize) -> SergeevElement {
        SergeevElement::transposition(n, i, j)
    }

    #[test]
    fn clifford_relations() {
        // a₁² = -1
        assert_eq!(a(2, 1).product(&a(2, 1)), SergeevElement::scalar(2, fe(-1)));
        // a₁a₂ = -a₂a₁
        assert_eq!(
            a(2, 1).product(&a(2, 2)),
            a(2, 2).product(&a(2, 1)).neg()
        );
    }

    #[test]
    fn semidirect_products() {
        // ((12)a₁)·((12)a₂) = -1
        let x = t(2, 1, 2).product(&a(2, 1));
        let y = t(2, 1, 2).product(&a(2, 2));
        assert_eq!(x.product(&y), SergeevElement::scalar(2, fe(-1)));
        // (12)·(12)a₁a₂ = a₁a₂
        let aa = a(2, 1).product(&a(2, 2));
        let taa = t(2, 1, 2).product(&aa);
        assert_eq!(t(2, 1, 2).product(&taa), aa);
        // g a_i g⁻¹ = a_{g(i)}; (12)⁻¹ = (12)
        let g = t(3, 1, 2);
        assert_eq!(g.product(&a(3, 1)).product(&g), a(3, 2));
    }

    #[test]
    fn star_examples() {
        assert_eq!(t(2, 1, 2).star(), t(2, 1, 2));
        assert_eq!(a(2, 1).star(), a(2, 1).neg());
        let x = t(2, 1, 2).product(&a(2, 1)).product(&a(2, 2));
        assert_eq!(x.star(), x);
    }

    #[test]
    fn star_is_involutive_antiautomorphism() {
        // pseudo-random pairs over a small basis pool
        let pool = [
            t(3, 1, 2),
            t(3, 2, 3),
            a(3, 1),
            a(3, 3).scaled(&FieldElement::sqrt_int(2)),
            t(3, 1, 3).product(&a(3, 2)),
        ];
        for (i, x) in pool.iter().enumerate() {
            assert_eq!(x.star().star(), *x);
            for y in pool.iter().skip(i) {
                assert_eq!(x.product(y).star(), y.star().product(&x.star()));
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let mut x = SergeevElement::one(2);
        x = x.add(&t(2, 1, 2).scaled(&FieldElement::sqrt_int(2).inv().unwrap()));
        assert_eq!(x.alpha(), SergeevElement::one(2));
        let aa = a(2, 1).product(&a(2, 2));
        assert_eq!(aa.alpha(), aa);
        assert!(t(2, 1, 2).product(&a(2, 1)).alpha().is_zero());
        // alpha ∘ star = star ∘ alpha
        let mixed = aa.add(&t(2, 1, 2).product(&a(2, 1)));
        assert_eq!(mixed.alpha().star(), mixed.star().alpha());
    }

    #[test]
    fn phi_examples() {
        // φ₁₂(3,1) = 1 - (12)/2 + (12)a₁a₂/4
        let p = phi(1, 2, &fe(3), &fe(1), 2).unwrap();
        let mut expect = SergeevElement::one(2);
        expect.add_term(Perm::transposition(2, 1, 2), 0, FieldElement::from_ratio(-1, 2));
        expect.add_term(Perm::transposition(2, 1, 2), 0b11, FieldElement::from_ratio(1, 4));
        assert_eq!(p, expect);
        // φ₁₂(u,v)·φ₂₁(v,u) = (1 - 1/(u-v)² - 1/(u+v)²)·1
        let q = phi(2, 1, &fe(1), &fe(3), 2).unwrap();
        assert_eq!(
            p.product(&q),
            SergeevElement::scalar(2, FieldElement::from_ratio(11, 16))
        );
        // φ₂₁(5,0) = 1 - (12)/5 - (12)a₁a₂/5
        let r = phi(2, 1, &fe(5), &fe(0), 2).unwrap();
        let mut expect = SergeevElement::one(2);
        expect.add_term(Perm::transposition(2, 1, 2), 0, FieldElement::from_ratio(-1, 5));
        expect.add_term(Perm::transposition(2, 1, 2), 0b11, FieldElement::from_ratio(-1, 5));
        assert_eq!(r, expect);
        assert_eq!(phi(1, 2, &fe(1), &fe(1), 2), Err(SergeevError::Pole));
        assert_eq!(phi(1, 2, &fe(1), &fe(-1), 2), Err(SergeevError::Pole));
    }

    #[test]
    fn phi_products_scalar_identity() {
        // φ_ij(u,v)φ_ji(v,u) is the scalar 1 - 1/(u-v)² - 1/(u+v)²
        let us = [fe(2), fe(3), FieldElement::from_ratio(7, 2)];
        let vs = [fe(5), FieldElement::from_ratio(1, 3)];
        for u in &us {
            for v in &vs {
                let p = phi(1, 2, u, v, 3).unwrap();
                let q = phi(2, 1, v, u, 3).unwrap();
                let d = (u - v).pow(2).inv().unwrap();
                let s = (u + v).pow(2).inv().unwrap();
                let scalar = &(&FieldElement::one() - &d) - &s;
                assert_eq!(p.product(&q), SergeevElement::scalar(3, scalar));
            }
        }
    }

    #[test]
    fn yang_baxter_relation() {
        let vals = [fe(1), fe(2), fe(3), FieldElement::from_ratio(5, 2), FieldElement::from_ratio(7, 3)];
        for u in &vals {
            for v in &vals {
                for w in &vals {
                    if u == v || v == w || u == w {
                        continue;
                    }
                    let f12 = phi(1, 2, u, v, 3).unwrap();
                    let f13 = phi(1, 3, u, w, 3).unwrap();
                    let f23 = phi(2, 3, v, w, 3).unwrap();
                    let lhs = f12.product(&f13).product(&f23);
                    let rhs = f23.product(&f13).product(&f12);
                    assert_eq!(lhs, rhs, "u={u} v={v} w={w}");
                }
            }
        }
    }

    #[test]
    fn disjoint_factors_commute() {
        let f12 = phi(1, 2, &fe(2), &fe(5), 4).unwrap();
        let f34 = phi(3, 4, &fe(1), &fe(7), 4).unwrap();
        assert_eq!(f12.product(&f34), f34.product(&f12));
    }

    #[test]
    fn clifford_conjugation_flips_arguments() {
        let u = fe(3);
        let v = fe(7);
        let p = phi(1, 2, &u, &v, 2).unwrap();
        let ai = a(2, 1);
        let aj = a(2, 2);
        // a_i φ a_i⁻¹ = φ(-u, v); a⁻¹ = -a
        let conj_i = ai.product(&p).product(&ai.neg());
        assert_eq!(conj_i, phi(1, 2, &-&u, &v, 2).unwrap());
        let conj_j = aj.product(&p).product(&aj.neg());
        assert_eq!(conj_j, phi(1, 2, &u, &-&v, 2).unwrap());
    }

    #[test]
    fn jm_elements() {
        assert!(jm_element(1, 3).is_zero());
        let x2 = jm_element(2, 2);
        let mut expect = SergeevElement::zero(2);
        expect.add_term(Perm::transposition(2, 1, 2), 0, FieldElement::one());
        expect.add_term(Perm::transposition(2, 1, 2), 0b11, FieldElement::one());
        assert_eq!(x2, expect);
        // x₂² = 2
        assert_eq!(x2.product(&x2), SergeevElement::scalar(2, fe(2)));
    }

    #[test]
    fn jm_commute_exhaustively() {
        for n in 2..=5 {
            for k in 1..=n {
                for l in k + 1..=n {
                    let xk = jm_element(k, n);
                    let xl = jm_element(l, n);
                    assert_eq!(xk.product(&xl), xl.product(&xk), "n={n} k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn jm_defining_relations() {
        for n in 2..=5 {
            for k in 1..=n {
                let xk = jm_element(k, n);
                let ak = a(n, k);
                // a_k x_k = -x_k a_k
                assert_eq!(ak.product(&xk), xk.product(&ak).neg());
                for l in 1..=n {
                    if l != k {
                        let al = a(n, l);
                        assert_eq!(al.product(&xk), xk.product(&al));
                    }
                }
                if k < n {
                    let s = t(n, k, k + 1);
                    let xk1 = jm_element(k + 1, n);
                    let aa = a(n, k).product(&a(n, k + 1));
                    // (k,k+1)x_{k+1} - x_k(k,k+1) = 1 + a_k a_{k+1}
                    assert_eq!(
                        s.product(&xk1).sub(&xk.product(&s)),
                        SergeevElement::one(n).add(&aa)
                    );
                    // x_{k+1}(k,k+1) - (k,k+1)x_k = 1 - a_k a_{k+1}
                    assert_eq!(
                        xk1.product(&s).sub(&s.product(&xk)),
                        SergeevElement::one(n).sub(&aa)
                    );
                    // [(k,k+1), x_k x_{k+1}] = 0 and [(k,k+1), x_k²+x_{k+1}²] = 0
                    let prod = xk.product(&xk1);
                    assert_eq!(s.product(&prod), prod.product(&s));
                    let sq = xk.product(&xk).add(&xk1.product(&xk1));
                    assert_eq!(s.product(&sq), sq.product(&s));
                }
            }
        }
    }

    #[test]
    fn power_sums_are_central() {
        for n in 2..=4 {
            for r in 1..=2u32 {
                let mut c = SergeevElement::zero(n);
                for k in 1..=n {
                    let xk = jm_element(k, n);
                    let mut p = SergeevElement::one(n);
                    for _ in 0..2 * r {
                        p = p.product(&xk);
                    }
                    c = c.add(&p);
                }
                for g in Perm::all(n) {
                    for mask in 0..(1u32 << n) {
                        let h = SergeevElement::basis(g.clone(), mask);
                        assert_eq!(c.product(&h), h.product(&c), "n={n} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn y_elements() {
        // y₁ in H₂ (n=m=1): (12) - (12)a₁a₂
        let y = y_element(1, 1, 1);
        let mut expect = SergeevElement::zero(2);
        expect.add_term(Perm::transposition(2, 1, 2), 0, FieldElement::one());
        expect.add_term(Perm::transposition(2, 1, 2), 0b11, -FieldElement::one());
        assert_eq!(y, expect);
        assert!(y_element(1, 1, 0).is_zero());
        let y = y_element(2, 2, 2);
        assert_eq!(y.num_terms(), 4);
        assert_eq!(y.coefficient(&Perm::transposition(4, 2, 3), 0), FieldElement::one());
        assert_eq!(
            y.coefficient(&Perm::transposition(4, 2, 4), (1 << 1) | (1 << 3)),
            -FieldElement::one()
        );
    }

    #[test]
    fn embedding_is_homomorphism() {
        let x = jm_element(2, 2);
        assert_eq!(
            x.embed(4, 2),
            {
                let mut e = SergeevElement::zero(4);
                e.add_term(Perm::transposition(4, 3, 4), 0, FieldElement::one());
                e.add_term(Perm::transposition(4, 3, 4), 0b1100, FieldElement::one());
                e
            }
        );
        assert_eq!(a(1, 1).embed(3, 1), a(3, 2));
        let pool = [
            t(2, 1, 2).product(&a(2, 1)),
            jm_element(2, 2),
            a(2, 2).scaled(&FieldElement::sqrt_int(2)),
        ];
        for x in &pool {
            for y in &pool {
                assert_eq!(
                    x.embed(4, 1).product(&y.embed(4, 1)),
                    x.product(y).embed(4, 1)
                );
            }
        }
    }

    #[test]
    fn basis_inverse_is_inverse() {
        for g in Perm::all(3) {
            for mask in 0..8u32 {
                let (s, gi, mi) = SergeevElement::basis_inverse(&g, mask);
                let mut inv = SergeevElement::basis(gi, mi);
                if s < 0 {
                    inv = inv.neg();
                }
                let h = SergeevElement::basis(g.clone(), mask);
                assert_eq!(h.product(&inv), SergeevElement::one(3));
                assert_eq!(inv.product(&h), SergeevElement::one(3));
            }
        }
    }

    #[test]
    fn scalar_scaling() {
        let x = jm_element(2, 2);
        let half = FieldElement::from_rational(Rational::new(1.into(), 2.into()));
        assert_eq!(x.scaled(&half).add(&x.scaled(&half)), x);
    }

    #[test]
    fn json_round_trip() {
        let x = jm_element(2, 3)
            .add(&SergeevElement::scalar(3, FieldElement::sqrt_int(8)))
            .product(&a(3, 3));
        let js = serde_json::to_value(&x).unwrap();
        let back = SergeevElement::from_json(&js).unwrap();
        assert_eq!(x, back);
        assert_eq!(js, serde_json::to_value(&back).unwrap());
    }
}
