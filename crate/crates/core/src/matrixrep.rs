//! The representation of `H_n` on `(C^{N|N})^{⊗n}`: the odd involution
//! `J`, the graded flip `P`, supertrace, normalized irreducible characters
//! through the invariant subspace generated by the image of `Ψ_λ`, and the
//! central elements `X_λ` built from them.
//!
//! Basis states are words of `n` letters from `{±1..±N}`; a letter is odd
//! exactly when negative. Operators act with Koszul signs: a factor of
//! parity `p` acting at site `s` picks up `(-1)^{p·(parity of the letters
//! before s)}`.

use crate::field::{FieldElement, Rational};
use crate::fusion::{psi, FusionError};
use crate::sergeev::{jm_element, CliffordMask, Perm, SergeevElement};
use crate::shifted::{z_values, StrictPartition};
use num::BigInt;
use std::collections::BTreeMap;

/// The ambient tensor space `(C^{N|N})^{⊗n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub n: usize,
    pub cap: usize,
}

impl TensorSpace {
    pub fn new(n: usize, cap: usize) -> Self {
        assert!(cap >= 1 && n >= 1);
        let dim = (2 * cap as u64).pow(n as u32);
        assert!(dim <= 1 << 20, "tensor space too large for desk scale");
        TensorSpace { n, cap }
    }

    pub fn dim(&self) -> usize {
        (2 * self.cap).pow(self.n as u32)
    }

    fn radix(&self) -> u32 {
        2 * self.cap as u32
    }

    /// Letter at `site` (1-based) of the encoded state.
    pub fn letter(&self, state: u32, site: usize) -> i64 {
        let d = (state / self.radix().pow(site as u32 - 1)) % self.radix();
        if (d as usize) < self.cap {
            d as i64 + 1
        } else {
            -((d as usize - self.cap) as i64 + 1)
        }
    }

    pub fn with_letter(&self, state: u32, site: usize, letter: i64) -> u32 {
        let d = self.digit(letter);
        let base = self.radix().pow(site as u32 - 1);
        let old = (state / base) % self.radix();
        state - old * base + d * base
    }

    fn digit(&self, letter: i64) -> u32 {
        assert!(letter != 0 && letter.unsigned_abs() as usize <= self.cap);
        if letter > 0 {
            letter as u32 - 1
        } else {
            self.cap as u32 + (-letter) as u32 - 1
        }
    }

    /// Parity of the whole state: the number of negative letters mod 2.
    pub fn parity(&self, state: u32) -> u32 {
        (1..=self.n).map(|s| (self.letter(state, s) < 0) as u32).sum::<u32>() % 2
    }

    /// Parity of the letters strictly before `site`.
    pub fn prefix_parity(&self, state: u32, site: usize) -> u32 {
        (1..site).map(|s| (self.letter(state, s) < 0) as u32).sum::<u32>() % 2
    }

    pub fn states(&self) -> impl Iterator<Item = u32> {
        0..self.dim() as u32
    }
}

/// Sparse matrix over `K` on a tensor space, keyed by `(row, column)`.
#[derive(Clone, PartialEq)]
pub struct SuperMatrix {
    pub space: TensorSpace,
    entries: BTreeMap<(u32, u32), FieldElement>,
}

impl SuperMatrix {
    pub fn zero(space: TensorSpace) -> Self {
        SuperMatrix {
            space,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(space: TensorSpace) -> Self {
        let mut m = Self::zero(space);
        for s in space.states() {
            m.add_entry(s, s, FieldElement::one());
        }
        m
    }

    pub fn add_entry(&mut self, row: u32, col: u32, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry((row, col)) {
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

    pub fn entry(&self, row: u32, col: u32) -> FieldElement {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(FieldElement::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &FieldElement)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space);
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_entry(r, c, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-FieldElement::one()))
    }

    pub fn scaled(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.space);
        }
        SuperMatrix {
            space: self.space,
            entries: self
                .entries
                .iter()
                .map(|(&k, v)| (k, v.mul_ref(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space);
        let mut out = Self::zero(self.space);
        for (&(r, k), a) in &self.entries {
            for (&(_, c), b) in other.entries.range((k, 0)..=(k, u32::MAX)) {
                out.add_entry(r, c, a.mul_ref(b));
            }
        }
        out
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::zero(); self.space.dim()];
        for (&(r, c), a) in &self.entries {
            if !v[c as usize].is_zero() {
                out[r as usize] += &a.mul_ref(&v[c as usize]);
            }
        }
        out
    }

    /// Supertrace: `Σ_s M[s,s]·(-1)^{parity(s)}`.
    pub fn supertrace(&self) -> FieldElement {
        let mut out = FieldElement::zero();
        for (&(r, c), a) in &self.entries {
            if r == c {
                if self.space.parity(r) == 0 {
                    out += a;
                } else {
                    out += &-a;
                }
            }
        }
        out
    }

    /// Plain trace of the diagonal.
    pub fn trace(&self) -> FieldElement {
        let mut out = FieldElement::zero();
        for (&(r, c), a) in &self.entries {
            if r == c {
                out += a;
            }
        }
        out
    }
}

impl std::fmt::Debug for SuperMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "SuperMatrix {}^{} [", 2 * self.space.cap, self.space.n)?;
        for (&(r, c), v) in &self.entries {
            writeln!(f, "  ({r},{c}) -> {v}")?;
        }
        write!(f, "]")
    }
}

/// Matrix of `ι_s(E_ij)`: the matrix unit acting at one site with the
/// Koszul sign `(-1)^{(ī+j̄)·(prefix parity)}`.
pub fn site_matrix_unit(space: TensorSpace, site: usize, i: i64, j: i64) -> SuperMatrix {
    let mut m = SuperMatrix::zero(space);
    let par = ((i < 0) as u32 + (j < 0) as u32) % 2;
    for s in space.states() {
        if space.letter(s, site) == j {
            let row = space.with_letter(s, site, i);
            let sign = par * space.prefix_parity(s, site);
            let c = if sign % 2 == 0 {
                FieldElement::one()
            } else {
                -FieldElement::one()
            };
            m.add_entry(row, s, c);
        }
    }
    m
}

/// `ι_s(J)` where `J = Σ_j E_{j,-j}·(-1)^{j̄}`: sends the letter `k` at
/// `site` to `-k` with coefficient `-1` for `k > 0`, `+1` for `k < 0`,
/// times the odd-operator Koszul sign.
pub fn j_matrix(space: TensorSpace, site: usize) -> SuperMatrix {
    let mut m = SuperMatrix::zero(space);
    for s in space.states() {
        let k = space.letter(s, site);
        let row = space.with_letter(s, site, -k);
        let mut sign = neg_if(k > 0);
        if space.prefix_parity(s, site) == 1 {
            sign = -sign;
        }
        m.add_entry(
            row,
            s,
            if sign > 0 {
                FieldElement::one()
            } else {
                -FieldElement::one()
            },
        );
    }
    m
}

fn neg_if(b: bool) -> i32 {
    if b {
        -1
    } else {
        1
    }
}

/// `P_{kl}` for sites `k < l`: the graded flip
/// `Σ_{ij} ι_k(E_ij) ι_l(E_ji)·(-1)^{j̄}`. On a state with letters `a` at
/// `k` and `b` at `l` it swaps them with the sign
/// `(-1)^{āb̄ + (ā+b̄)·q}`, `q` the parity of the letters strictly between.
pub fn p_matrix(space: TensorSpace, k: usize, l: usize) -> SuperMatrix {
    assert!(k < l);
    let mut m = SuperMatrix::zero(space);
    for s in space.states() {
        let a = space.letter(s, k);
        let b = space.letter(s, l);
        let row = space.with_letter(space.with_letter(s, k, b), l, a);
        let abar = (a < 0) as u32;
        let bbar = (b < 0) as u32;
        let q: u32 = (k + 1..l).map(|t| (space.letter(s, t) < 0) as u32).sum();
        let sign = (abar * bbar + (abar + bbar) * q) % 2;
        m.add_entry(
            row,
            s,
            if sign == 0 {
                FieldElement::one()
            } else {
                -FieldElement::one()
            },
        );
    }
    m
}

/// The algebra homomorphism `H_n → End((C^{N|N})^{⊗n})` determined by
/// `a_k ↦ J_k` and `(k l) ↦ P_{kl}`.
pub fn rep(x: &SergeevElement, cap: usize) -> SuperMatrix {
    let space = TensorSpace::new(x.n(), cap);
    let mut out = SuperMatrix::zero(space);
    for ((g, mask), c) in x.terms() {
        let m = rep_basis(space, g, *mask);
        out = out.add(&m.scaled(c));
    }
    out
}

fn rep_basis(space: TensorSpace, g: &Perm, mask: CliffordMask) -> SuperMatrix {
    let mut m = SuperMatrix::identity(space);
    for (i, j) in g.transposition_factors() {
        let (i, j) = (i.min(j), i.max(j));
        m = m.mul(&p_matrix(space, i, j));
    }
    let mut bits = mask;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize + 1;
        m = m.mul(&j_matrix(space, k));
        bits &= bits - 1;
    }
    m
}

#[derive(Debug, thiserror::Error)]
pub enum CharError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error("the module for λ = {0} is zero at N = {1}")]
    ZeroModule(String, usize),
}

/// The invariant subspace generated by the image of `R_λ = rep(Ψ_λ)` under
/// the full algebra action, with an exact reduced-echelon basis. All traces
/// on it are isotypic, so the normalized irreducible character is
/// `trace / dim`.
pub struct CharModule {
    pub shape: StrictPartition,
    pub space: TensorSpace,
    pub psi_matrix: SuperMatrix,
    basis: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl CharModule {
    /// Build with the smallest faithful choice `N = ℓ_λ`.
    pub fn new(shape: &StrictPartition) -> Result<Self, CharError> {
        Self::with_cap(shape, shape.len())
    }

    pub fn with_cap(shape: &StrictPartition, cap: usize) -> Result<Self, CharError> {
        let n = shape.n();
        let psi_el = psi(shape)?;
        let space = TensorSpace::new(n, cap);
        let r = rep(&psi_el, cap);
        if r.is_zero() {
            return Err(CharError::ZeroModule(shape.to_string(), cap));
        }
        let mut module = CharModule {
            shape: shape.clone(),
            space,
            psi_matrix: r,
            basis: Vec::new(),
            pivots: Vec::new(),
        };
        // seed with the columns of R_λ
        let mut columns: BTreeMap<u32, Vec<FieldElement>> = BTreeMap::new();
        for (&(row, col), v) in module.psi_matrix.entries.iter() {
            columns
                .entry(col)
                .or_insert_with(|| vec![FieldElement::zero(); space.dim()])[row as usize] =
                v.clone();
        }
        let mut queue: Vec<Vec<FieldElement>> = Vec::new();
        for (_, v) in columns {
            if module.insert(v.clone()) {
                queue.push(v);
            }
        }
        // close under the generator matrices
        let mut gens: Vec<SuperMatrix> = Vec::new();
        for k in 1..n {
            gens.push(p_matrix(space, k, k + 1));
        }
        for k in 1..=n {
            gens.push(j_matrix(space, k));
        }
        while let Some(v) = queue.pop() {
            for g in &gens {
                let w = g.apply(&v);
                if module.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        Ok(module)
    }

    /// Reduce against the echelon basis and insert if independent.
    fn insert(&mut self, mut v: Vec<FieldElement>) -> bool {
        for (t, &p) in self.pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let f = v[p].clone();
                let b = &self.basis[t];
                for idx in 0..v.len() {
                    if !b[idx].is_zero() {
                        v[idx] = &v[idx] - &b[idx].mul_ref(&f);
                    }
                }
            }
        }
        let pivot = match v.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = v[pivot].inv().expect("pivot is nonzero");
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = c.mul_ref(&inv);
            }
        }
        // clear the new pivot from the existing basis
        for t in 0..self.basis.len() {
            if !self.basis[t][pivot].is_zero() {
                let f = self.basis[t][pivot].clone();
                for idx in 0..v.len() {
                    if !v[idx].is_zero() {
                        self.basis[t][idx] = &self.basis[t][idx] - &v[idx].mul_ref(&f);
                    }
                }
            }
        }
        self.basis.push(v);
        self.pivots.push(pivot);
        true
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Trace of a matrix restricted to the module.
    pub fn trace_on_module(&self, m: &SuperMatrix) -> FieldElement {
        let mut out = FieldElement::zero();
        for (t, b) in self.basis.iter().enumerate() {
            let w = m.apply(b);
            out += &w[self.pivots[t]];
        }
        out
    }

    /// True when the matrix acts on the module as the given scalar.
    pub fn acts_as_scalar(&self, m: &SuperMatrix, scalar: &FieldElement) -> bool {
        self.basis.iter().all(|b| {
            let w = m.apply(b);
            b.iter()
                .zip(w.iter())
                .all(|(bv, wv)| &bv.mul_ref(scalar) == wv)
        })
    }

    /// The normalized character `χ_λ(h)`: ordinary trace on the module
    /// divided by its dimension, so that `χ_λ(1) = 1`.
    pub fn chi(&self, h: &SergeevElement) -> FieldElement {
        let m = rep(h, self.space.cap);
        let t = self.trace_on_module(&m);
        t.scaled(&Rational::new(BigInt::from(1), BigInt::from(self.dim() as i64)))
    }

    /// `χ_λ` on a single basis element `g·a_S`.
    pub fn chi_basis(&self, g: &Perm, mask: CliffordMask) -> FieldElement {
        self.chi(&SergeevElement::basis(g.clone(), mask))
    }
}

/// The central element `X_λ = Σ_h χ_λ(h)·h⁻¹` summed over all `2ⁿ·n!`
/// basis elements of `H_n`.
pub fn x_lambda(shape: &StrictPartition) -> Result<SergeevElement, CharError> {
    let module = CharModule::new(shape)?;
    Ok(x_lambda_from(&module))
}

pub fn x_lambda_from(module: &CharModule) -> SergeevElement {
    let n = module.shape.n();
    let mut out = SergeevElement::zero(n);
    for g in Perm::all(n) {
        for mask in 0..(1u32 << n) {
            // odd basis elements have zero character by the parity grading
            if mask.count_ones() % 2 == 1 {
                continue;
            }
            let chi = module.chi_basis(&g, mask);
            if chi.is_zero() {
                continue;
            }
            let (sign, gi, mi) = SergeevElement::basis_inverse(&g, mask);
            let coeff = if sign < 0 { -chi } else { chi };
            out.add_term(gi, mi, coeff);
        }
    }
    out
}

/// `X_λ·2ⁿn! = Σ_h h·Ψ_λ·h⁻¹` over the basis elements of `H_n`.
pub fn verify_cor35(shape: &StrictPartition) -> Result<bool, CharError> {
    let module = CharModule::new(shape)?;
    let n = shape.n();
    let psi_el = psi(shape)?;
    let mut sum = SergeevElement::zero(n);
    for g in Perm::all(n) {
        for mask in 0..(1u32 << n) {
            let h = SergeevElement::basis(g.clone(), mask);
            let (sign, gi, mi) = SergeevElement::basis_inverse(&g, mask);
            let mut hinv = SergeevElement::basis(gi, mi);
            if sign < 0 {
                hinv = hinv.neg();
            }
            sum = sum.add(&h.product(&psi_el).product(&hinv));
        }
    }
    let factorial: i64 = (1..=n as i64).product();
    let scale = FieldElement::from_integer((1 << n) * factorial);
    Ok(x_lambda_from(&module).scaled(&scale) == sum)
}

/// The central element `Σ_k x_k^{2r}` acts on everything generated by
/// `Ψ_λ` as the scalar `Σ_k z_k^{2r}`: checked both inside `H_n` and as a
/// matrix statement on the invariant subspace.
pub fn verify_central_eigenvalue(shape: &StrictPartition, r: u32) -> Result<bool, CharError> {
    let n = shape.n();
    let z = z_values(shape);
    let mut central = SergeevElement::zero(n);
    for k in 1..=n {
        let xk = jm_element(k, n);
        let mut p = SergeevElement::one(n);
        for _ in 0..2 * r {
            p = p.product(&xk);
        }
        central = central.add(&p);
    }
    let mut scalar = FieldElement::zero();
    for zk in &z {
        scalar += &zk.pow(2 * r);
    }
    let psi_el = psi(shape)?;
    if central.product(&psi_el) != psi_el.scaled(&scalar) {
        return Ok(false);
    }
    let module = CharModule::new(shape)?;
    let m = rep(&central, module.space.cap);
    Ok(module.acts_as_scalar(&m, &scalar))
}
