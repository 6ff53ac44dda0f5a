//! The supercommutative polynomial algebra `𝒫` with free generators
//! `x_{ia}` (`i ∈ ±1..±N`, `a ∈ 1..M`, parity that of `i`) and the
//! operator algebra `𝒫𝒟` of polynomial coefficients times left
//! derivations, kept in normal-ordered form.
//!
//! Generators with a negative second index never appear: they are
//! rewritten through `x_{i,-a} = √-1·x_{-i,a}` and
//! `∂_{i,-a} = -√-1·∂_{-i,a}` so that `∂_{i,-a} x_{i,-a}` still
//! contracts to 1.

use crate::field::FieldElement;
use crate::matrixrep::CharModule;
use crate::sergeev::Perm;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// A free generator `x_{ia}` (or the matching derivation `∂_{ia}`):
/// `i` is a signed letter, `a > 0`. Odd exactly when `i < 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Gen {
    pub i: i32,
    pub a: u32,
}

impl Gen {
    pub fn new(i: i32, a: u32) -> Self {
        assert!(i != 0 && a >= 1, "free generators have a ≥ 1");
        Gen { i, a }
    }

    pub fn parity(&self) -> u32 {
        (self.i < 0) as u32
    }
}

/// Rewrite an `x` index pair to a free generator with its coefficient.
pub fn free_x(i: i32, a: i32) -> (FieldElement, Gen) {
    if a > 0 {
        (FieldElement::one(), Gen::new(i, a as u32))
    } else {
        (FieldElement::imaginary_unit(), Gen::new(-i, (-a) as u32))
    }
}

/// Rewrite a `∂` index pair to a free generator with its coefficient.
pub fn free_d(i: i32, a: i32) -> (FieldElement, Gen) {
    if a > 0 {
        (FieldElement::one(), Gen::new(i, a as u32))
    } else {
        (-FieldElement::imaginary_unit(), Gen::new(-i, (-a) as u32))
    }
}

/// A supercommutative monomial: even generators with multiplicities and
/// distinct odd generators in ascending order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct SuperMonomial {
    even: BTreeMap<Gen, u32>,
    odd: Vec<Gen>,
}

impl SuperMonomial {
    pub fn one() -> Self {
        SuperMonomial::default()
    }

    pub fn from_gen(g: Gen) -> Self {
        let mut m = Self::one();
        if g.parity() == 1 {
            m.odd.push(g);
        } else {
            m.even.insert(g, 1);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.even.values().sum::<u32>() + self.odd.len() as u32
    }

    pub fn parity(&self) -> u32 {
        (self.odd.len() % 2) as u32
    }

    /// Generators in the written order: evens (with multiplicity) then
    /// odds ascending.
    pub fn written(&self) -> Vec<Gen> {
        let mut out = Vec::new();
        for (&g, &e) in &self.even {
            for _ in 0..e {
                out.push(g);
            }
        }
        out.extend(self.odd.iter().copied());
        out
    }

    /// Supercommutative product; `None` when an odd generator repeats.
    pub fn mul(&self, other: &Self) -> Option<(i32, Self)> {
        let mut even = self.even.clone();
        for (&g, &e) in &other.even {
            *even.entry(g).or_insert(0) += e;
        }
        let mut inversions = 0usize;
        for y in &other.odd {
            if self.odd.binary_search(y).is_ok() {
                return None;
            }
            inversions += self.odd.iter().filter(|x| *x > y).count();
        }
        let mut odd = self.odd.clone();
        odd.extend(other.odd.iter().copied());
        odd.sort_unstable();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, SuperMonomial { even, odd }))
    }

    fn remove_even(&self, g: Gen) -> Option<(u32, Self)> {
        let e = *self.even.get(&g)?;
        let mut out = self.clone();
        if e == 1 {
            out.even.remove(&g);
        } else {
            out.even.insert(g, e - 1);
        }
        Some((e, out))
    }

    fn odd_index(&self, g: Gen) -> Option<usize> {
        self.odd.binary_search(&g).ok()
    }

    fn remove_odd(&self, idx: usize) -> Self {
        let mut out = self.clone();
        out.odd.remove(idx);
        out
    }
}

/// An element of `𝒫`: a sparse sum of monomials.
#[derive(Clone, PartialEq, Default)]
pub struct SuperPolynomial {
    terms: BTreeMap<SuperMonomial, FieldElement>,
}

impl SuperPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(SuperMonomial::one(), FieldElement::one())
    }

    pub fn from_monomial(m: SuperMonomial, c: FieldElement) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Left derivation by `∂_g`.
    pub fn derive(&self, g: Gen) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if g.parity() == 0 {
                if let Some((e, rest)) = m.remove_even(g) {
                    out.add_term(rest, c.scaled(&num::rational::BigRational::from_integer(e.into())));
                }
            } else if let Some(idx) = m.odd_index(g) {
                // pass over the evens freely and `idx` odd letters
                let mut cc = c.clone();
                if idx % 2 == 1 {
                    cc = -cc;
                }
                out.add_term(m.remove_odd(idx), cc);
            }
        }
        out
    }

    /// Left multiplication by the monomial `x`.
    pub fn mul_monomial(&self, x: &SuperMonomial, coeff: &FieldElement) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((sign, prod)) = x.mul(m) {
                let mut cc = c.mul_ref(coeff);
                if sign < 0 {
                    cc = -cc;
                }
                out.add_term(prod, cc);
            }
        }
        out
    }

    /// All monomials of total degree `d` on the free generators of the
    /// `(N, M)` alphabet.
    pub fn monomials_of_degree(cap_n: usize, cap_m: usize, d: u32) -> Vec<SuperMonomial> {
        let mut gens = Vec::new();
        for a in 1..=cap_m as u32 {
            for i in 1..=cap_n as i32 {
                gens.push(Gen::new(i, a));
                gens.push(Gen::new(-i, a));
            }
        }
        let mut out = Vec::new();
        fn rec(
            gens: &[Gen],
            from: usize,
            left: u32,
            acc: &SuperMonomial,
            out: &mut Vec<SuperMonomial>,
        ) {
            if left == 0 {
                out.push(acc.clone());
                return;
            }
            for idx in from..gens.len() {
                let g = gens[idx];
                if let Some((_, next)) = acc.mul(&SuperMonomial::from_gen(g)) {
                    // stay within non-decreasing generator order to avoid duplicates
                    rec(gens, if g.parity() == 1 { idx + 1 } else { idx }, left - 1, &next, out);
                }
            }
        }
        rec(&gens, 0, d, &SuperMonomial::one(), &mut out);
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// An element of `𝒫𝒟` in normal-ordered form: a sparse sum of
/// `x-monomial · ∂-monomial` pairs.
#[derive(Clone, PartialEq, Default)]
pub struct NormalOrderedOperator {
    terms: BTreeMap<(SuperMonomial, SuperMonomial), FieldElement>,
}

impl NormalOrderedOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_term(SuperMonomial::one(), SuperMonomial::one(), FieldElement::one())
    }

    pub fn scalar(c: FieldElement) -> Self {
        Self::from_term(SuperMonomial::one(), SuperMonomial::one(), c)
    }

    pub fn from_term(x: SuperMonomial, d: SuperMonomial, c: FieldElement) -> Self {
        let mut out = Self::zero();
        out.add_term(x, d, c);
        out
    }

    pub fn add_term(&mut self, x: SuperMonomial, d: SuperMonomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((x, d)) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(SuperMonomial, SuperMonomial), &FieldElement)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((x, d), c) in &other.terms {
            out.add_term(x.clone(), d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NormalOrderedOperator {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scaled(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NormalOrderedOperator {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.mul_ref(c)))
                .collect(),
        }
    }

    /// Parity of the whole operator when homogeneous, `None` if mixed.
    pub fn parity(&self) -> Option<u32> {
        let mut p = None;
        for ((x, d), _) in &self.terms {
            let q = (x.parity() + d.parity()) % 2;
            match p {
                None => p = Some(q),
                Some(prev) if prev != q => return None,
                _ => {}
            }
        }
        p.or(Some(0))
    }

    /// Split into the even and odd homogeneous components.
    pub fn parity_split(&self) -> (Self, Self) {
        let mut even = Self::zero();
        let mut odd = Self::zero();
        for ((x, d), c) in &self.terms {
            if (x.parity() + d.parity()) % 2 == 0 {
                even.add_term(x.clone(), d.clone(), c.clone());
            } else {
                odd.add_term(x.clone(), d.clone(), c.clone());
            }
        }
        (even, odd)
    }

    /// Normal-ordered associative product: every `∂` of the left factor is
    /// pushed through the `x`-part of the right factor with super-Leibniz
    /// contractions.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((xa, da), ca) in &self.terms {
            for ((xb, db), cb) in &other.terms {
                let c = ca.mul_ref(cb);
                for (k, x, d) in reorder_terms(xa, da, xb, db) {
                    if k == 0 {
                        continue;
                    }
                    out.add_term(x, d, c.scaled(&num::rational::BigRational::from_integer(k.into())));
                }
            }
        }
        out
    }

    /// Action on a polynomial: derivations first (rightmost innermost),
    /// then multiplication by the `x`-part.
    pub fn apply(&self, p: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for ((x, d), c) in &self.terms {
            let mut cur = p.clone();
            for g in d.written().into_iter().rev() {
                cur = cur.derive(g);
                if cur.is_zero() {
                    break;
                }
            }
            if cur.is_zero() {
                continue;
            }
            out = out.add(&cur.mul_monomial(x, c));
        }
        out
    }

    /// The super-commutator `[A, B] = AB - (-1)^{p(A)p(B)} BA` for
    /// homogeneous `A`, `B`.
    pub fn super_commutator(&self, other: &Self) -> Self {
        let pa = self.parity().expect("left factor must be homogeneous");
        let pb = other.parity().expect("right factor must be homogeneous");
        let ba = other.mul(self);
        if pa * pb == 1 {
            self.mul(other).add(&ba)
        } else {
            self.mul(other).sub(&ba)
        }
    }
}

/// Normal ordering of `(x_a ∂_a)(x_b ∂_b)`: a list of
/// `(integer coefficient, x-monomial, ∂-monomial)` terms.
fn reorder_terms(
    xa: &SuperMonomial,
    da: &SuperMonomial,
    xb: &SuperMonomial,
    db: &SuperMonomial,
) -> Vec<(i64, SuperMonomial, SuperMonomial)> {
    let mut parts: Vec<(i64, SuperMonomial, SuperMonomial)> = vec![(1, xa.clone(), da.clone())];
    for h in xb.written() {
        let mut next: Vec<(i64, SuperMonomial, SuperMonomial)> = Vec::new();
        for (k, x, d) in parts {
            // move x_h through the whole ∂-monomial
            let move_sign = if h.parity() == 1 && d.parity() == 1 { -1 } else { 1 };
            if let Some((s, xh)) = x.mul(&SuperMonomial::from_gen(h)) {
                next.push((k * move_sign * s as i64, xh, d.clone()));
            }
            // contractions with matching ∂'s
            if h.parity() == 0 {
                if let Some((e, rest)) = d.remove_even(h) {
                    next.push((k * e as i64, x.clone(), rest));
                }
            } else if let Some(idx) = d.odd_index(h) {
                // x_h crosses the odd ∂'s standing to the right of position idx
                let after = d.odd.len() - 1 - idx;
                let s = if after % 2 == 0 { 1 } else { -1 };
                next.push((k * s, x.clone(), d.remove_odd(idx)));
            }
        }
        parts = next;
    }
    // append the ∂-part of the right factor
    let mut out = Vec::new();
    for (k, x, d) in parts {
        if let Some((s, dd)) = d.mul(db) {
            out.push((k * s as i64, x, dd));
        }
    }
    out
}

/// Canonical generator label of the queer Lie algebra: `F_{ij}` stored
/// with positive first index via `F_{-i,-j} = F_{ij}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct QnGenerator {
    pub i: i32,
    pub j: i32,
}

impl QnGenerator {
    pub fn new(i: i32, j: i32) -> Self {
        assert!(i != 0 && j != 0);
        if i > 0 {
            QnGenerator { i, j }
        } else {
            QnGenerator { i: -i, j: -j }
        }
    }

    pub fn all(cap: usize) -> Vec<QnGenerator> {
        let mut out = Vec::new();
        for i in 1..=cap as i32 {
            for j in 1..=cap as i32 {
                out.push(QnGenerator { i, j });
                out.push(QnGenerator { i, j: -j });
            }
        }
        out
    }

    pub fn parity(&self) -> u32 {
        (((self.i < 0) as u32) + ((self.j < 0) as u32)) % 2
    }
}

/// `γ(F_ij) = Σ_b x_{ib} ∂_{jb}` with `b` over `±1..±M`, rewritten to free
/// generators.
pub fn gamma(i: i32, j: i32, cap_m: usize) -> NormalOrderedOperator {
    let mut out = NormalOrderedOperator::zero();
    for b in 1..=cap_m as i32 {
        for bb in [b, -b] {
            let (cx, gx) = free_x(i, bb);
            let (cd, gd) = free_d(j, bb);
            out.add_term(
                SuperMonomial::from_gen(gx),
                SuperMonomial::from_gen(gd),
                cx.mul_ref(&cd),
            );
        }
    }
    out
}

/// `γ'(F_ab) = Σ_j x_{ja} ∂_{jb} · (-1)^{j̄(ā+b̄)}` with `j` over
/// `±1..±N`, rewritten to free generators.
pub fn gamma_prime(a: i32, b: i32, cap_n: usize) -> NormalOrderedOperator {
    let mut out = NormalOrderedOperator::zero();
    for j in 1..=cap_n as i32 {
        for jj in [j, -j] {
            let (cx, gx) = free_x(jj, a);
            let (cd, gd) = free_d(jj, b);
            let jbar = (jj < 0) as u32;
            let abar = (a < 0) as u32;
            let bbar = (b < 0) as u32;
            let mut c = cx.mul_ref(&cd);
            if (jbar * (abar + bbar)) % 2 == 1 {
                c = -c;
            }
            out.add_term(SuperMonomial::from_gen(gx), SuperMonomial::from_gen(gd), c);
        }
    }
    out
}

/// The distinguished invariant operator `I_λ`: the quadruple sum over the
/// basis elements `h = g·a^l` of `H_n`, letters `i`, `b`, with coefficient
/// `χ_λ(h)` and the displayed sign exponent, written verbatim and then
/// rewritten to free generators.
pub fn i_lambda(module: &CharModule, cap_n: usize, cap_m: usize) -> NormalOrderedOperator {
    let n = module.shape.n();
    let letters_n: Vec<i32> = (1..=cap_n as i32).flat_map(|i| [i, -i]).collect();
    let letters_m: Vec<i32> = (1..=cap_m as i32).flat_map(|a| [a, -a]).collect();
    let mut out = NormalOrderedOperator::zero();
    for g in Perm::all(n) {
        let g_inv = g.inverse();
        for l_mask in 0..(1u32 << n) {
            if l_mask.count_ones() % 2 == 1 {
                continue; // odd basis elements have zero character
            }
            let chi = module.chi_basis(&g, l_mask);
            if chi.is_zero() {
                continue;
            }
            let l: Vec<u32> = (0..n).map(|s| (l_mask >> s) & 1).collect();
            let mut i_tuple = vec![0i32; n];
            sum_over_tuples(&letters_n, &mut i_tuple, 0, &mut |i_tuple| {
                let jbar: Vec<u32> = (0..n)
                    .map(|s| {
                        let base = i_tuple[g.apply(s + 1) - 1];
                        let j = if l[s] == 1 { -base } else { base };
                        (j < 0) as u32
                    })
                    .collect();
                let ibar: Vec<u32> = i_tuple.iter().map(|&x| (x < 0) as u32).collect();
                let mut b_tuple = vec![0i32; n];
                sum_over_tuples(&letters_m, &mut b_tuple, 0, &mut |b_tuple| {
                    let bbar: Vec<u32> = b_tuple.iter().map(|&x| (x < 0) as u32).collect();
                    let mut e = 0u32;
                    for r in 0..n {
                        for s in r + 1..n {
                            e += ibar[r] * bbar[s]
                                + jbar[r] * bbar[s]
                                + jbar[r] * jbar[s]
                                + jbar[r] * l[s];
                            if g_inv.apply(r + 1) < g_inv.apply(s + 1) {
                                e += ibar[r] * ibar[s];
                            }
                        }
                    }
                    for s in 0..n {
                        e += (jbar[s] + 1) * l[s];
                    }
                    let mut coeff = chi.clone();
                    if e % 2 == 1 {
                        coeff = -coeff;
                    }
                    // x_{j_n b_n} … x_{j_1 b_1}
                    let mut x = SuperMonomial::one();
                    for s in (0..n).rev() {
                        let base = i_tuple[g.apply(s + 1) - 1];
                        let j = if l[s] == 1 { -base } else { base };
                        let (c, gx) = free_x(j, b_tuple[s]);
                        coeff = coeff.mul_ref(&c);
                        match x.mul(&SuperMonomial::from_gen(gx)) {
                            Some((sg, xx)) => {
                                if sg < 0 {
                                    coeff = -coeff;
                                }
                                x = xx;
                            }
                            None => return,
                        }
                    }
                    // ∂_{i_1 b_1} … ∂_{i_n b_n}
                    let mut d = SuperMonomial::one();
                    for s in 0..n {
                        let (c, gd) = free_d(i_tuple[s], b_tuple[s]);
                        coeff = coeff.mul_ref(&c);
                        match d.mul(&SuperMonomial::from_gen(gd)) {
                            Some((sg, dd)) => {
                                if sg < 0 {
                                    coeff = -coeff;
                                }
                                d = dd;
                            }
                            None => return,
                        }
                    }
                    out.add_term(x, d, coeff);
                });
            });
        }
    }
    out
}

/// `Σ_{i,b} x_{i_n b_n} … x_{i_1 b_1} ∂_{i_1 b_1} … ∂_{i_n b_n}` over all
/// letter tuples, rewritten to free generators.
pub fn invariant_capelli_sum(n: usize, cap_n: usize, cap_m: usize) -> NormalOrderedOperator {
    let letters_n: Vec<i32> = (1..=cap_n as i32).flat_map(|i| [i, -i]).collect();
    let letters_m: Vec<i32> = (1..=cap_m as i32).flat_map(|a| [a, -a]).collect();
    let mut out = NormalOrderedOperator::zero();
    let mut i_tuple = vec![0i32; n];
    sum_over_tuples(&letters_n, &mut i_tuple, 0, &mut |i_tuple| {
        let mut b_tuple = vec![0i32; n];
        sum_over_tuples(&letters_m, &mut b_tuple, 0, &mut |b_tuple| {
            let mut coeff = FieldElement::one();
            let mut x = SuperMonomial::one();
            for s in (0..n).rev() {
                let (c, gx) = free_x(i_tuple[s], b_tuple[s]);
                coeff = coeff.mul_ref(&c);
                match x.mul(&SuperMonomial::from_gen(gx)) {
                    Some((sg, xx)) => {
                        if sg < 0 {
                            coeff = -coeff;
                        }
                        x = xx;
                    }
                    None => return,
                }
            }
            let mut d = SuperMonomial::one();
            for s in 0..n {
                let (c, gd) = free_d(i_tuple[s], b_tuple[s]);
                coeff = coeff.mul_ref(&c);
                match d.mul(&SuperMonomial::from_gen(gd)) {
                    Some((sg, dd)) => {
                        if sg < 0 {
                            coeff = -coeff;
                        }
                        d = dd;
                    }
                    None => return,
                }
            }
            out.add_term(x, d, coeff);
        });
    });
    out
}

fn sum_over_tuples(letters: &[i32], tuple: &mut Vec<i32>, pos: usize, f: &mut impl FnMut(&[i32])) {
    if pos == tuple.len() {
        f(tuple);
        return;
    }
    for &l in letters {
        tuple[pos] = l;
        sum_over_tuples(letters, tuple, pos + 1, f);
    }
}

/// Check that `γ` and `γ'` are representations: super-brackets of images
/// match images of brackets (computed in the `gl` matrix model through
/// `F_ij = E_ij + E_{-i,-j}`), and the two images supercommute.
pub fn verify_gamma_rep(cap_n: usize, cap_m: usize) -> bool {
    use crate::matrixrep::{site_matrix_unit, SuperMatrix, TensorSpace};
    let space = TensorSpace::new(1, cap_n);
    let f_matrix = |i: i32, j: i32| -> SuperMatrix {
        site_matrix_unit(space, 1, i, j).add(&site_matrix_unit(space, 1, -i, -j))
    };
    let gens = QnGenerator::all(cap_n);
    for x in &gens {
        for y in &gens {
            let gx = gamma(x.i, x.j, cap_m);
            let gy = gamma(y.i, y.j, cap_m);
            let lhs = gx.super_commutator(&gy);
            // bracket in the matrix model, re-expressed over the F basis
            let mx = f_matrix(x.i, x.j);
            let my = f_matrix(y.i, y.j);
            let sign = x.parity() * y.parity();
            let mut bracket = mx.mul(&my);
            bracket = if sign == 1 {
                bracket.add(&my.mul(&mx))
            } else {
                bracket.sub(&my.mul(&mx))
            };
            let mut rhs = NormalOrderedOperator::zero();
            for p in 1..=cap_n as i32 {
                for q in [1i32, -1].iter().flat_map(|&s| (1..=cap_n as i32).map(move |v| s * v)) {
                    let c = bracket.entry(
                        (p - 1) as u32,
                        if q > 0 { q as u32 - 1 } else { cap_n as u32 + (-q) as u32 - 1 },
                    );
                    if !c.is_zero() {
                        rhs = rhs.add(&gamma(p, q, cap_m).scaled(&c));
                    }
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    // γ(F_{-i,-j}) = γ(F_{ij}) under the rewriting
    for x in &gens {
        if gamma(x.i, x.j, cap_m) != gamma(-x.i, -x.j, cap_m) {
            return false;
        }
    }
    // the two families supercommute
    let gens_m = QnGenerator::all(cap_m);
    for x in &gens {
        for y in &gens_m {
            let gx = gamma(x.i, x.j, cap_m);
            let gy = gamma_prime(y.i, y.j, cap_n);
            if !gx.super_commutator(&gy).is_zero() {
                return false;
            }
        }
    }
    true
}

impl fmt::Display for NormalOrderedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((x, d), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for g in x.written() {
                write!(f, "·x[{},{}]", g.i, g.a)?;
            }
            for g in d.written() {
                write!(f, "·∂[{},{}]", g.i, g.a)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NormalOrderedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for g in m.written() {
                write!(f, "·x[{},{}]", g.i, g.a)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize)]
struct OperatorTermRepr {
    xs: Vec<(i32, u32)>,
    ds: Vec<(i32, u32)>,
    coeff: FieldElement,
}

impl Serialize for NormalOrderedOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((x, d), c) in &self.terms {
            seq.serialize_element(&OperatorTermRepr {
                xs: x.written().iter().map(|g| (g.i, g.a)).collect(),
                ds: d.written().iter().map(|g| (g.i, g.a)).collect(),
                coeff: c.clone(),
            })?;
        }
        seq.end()
    }
}
