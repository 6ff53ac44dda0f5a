//! The fusion procedure: builds the elements `Ψ_λ`, `Υ_λ`, `Θ_λ` of `H_n`
//! as exact Laurent-series limits, together with the verification
//! predicates for the structural identities they satisfy.
//!
//! The limit is taken along the path `t_i = r_i²·δ²` where `r_i` is the
//! row of box `i`: boxes in one row share a parameter, rows get distinct
//! ones, and all series coefficients stay in `K`.

use crate::field::{FieldElement, Rational};
use crate::laurent::{u_series, LaurentError, LaurentSeries};
use crate::sergeev::{
    jm_element, phi, phi_inverse, phi_series, y_element, Perm, SergeevElement, SergeevError,
};
use crate::shifted::{column_tableau, z_values, ColumnTableau, StrictPartition};

#[derive(Debug, thiserror::Error)]
pub enum FusionError {
    #[error("nonzero coefficient at δ^{exponent} in the fused product for λ = {lambda}")]
    NegativePower { lambda: String, exponent: i64 },
    #[error("misuse: {0}")]
    Misuse(&'static str),
    #[error(transparent)]
    Sergeev(#[from] SergeevError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Default absolute truncation budget for a fused product on `n` letters.
pub fn default_truncation(n: usize) -> i64 {
    2 * (n as i64) * (n as i64 - 1) + 4
}

/// One factor of the ordered product: the pair `(i, j)` with `i < j`, and
/// whether `i` is read before `j` when scanning the tableau by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairInfo {
    pub i: usize,
    pub j: usize,
    /// `true` when `i` precedes `j` in the row-reading sequence.
    pub before: bool,
}

/// The evaluation plan for one shape: tableau data plus the pair list in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct FusionPlan {
    pub tableau: ColumnTableau,
    pub pairs: Vec<PairInfo>,
}

impl FusionPlan {
    pub fn new(shape: &StrictPartition) -> Self {
        let tableau = column_tableau(shape);
        let n = shape.n();
        // position of each box in the row-reading sequence
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&b| tableau.cell_of[b]);
        let mut pos = vec![0usize; n];
        for (p, &b) in order.iter().enumerate() {
            pos[b] = p;
        }
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                pairs.push(PairInfo {
                    i,
                    j,
                    before: pos[i - 1] < pos[j - 1],
                });
            }
        }
        FusionPlan { tableau, pairs }
    }

    /// Pairs `(i, j)` with `i` read before `j`, in the continuation order:
    /// ascending `j`, ties by the reading position of `i`.
    pub fn early_pairs(&self) -> Vec<PairInfo> {
        let mut out: Vec<PairInfo> = self.pairs.iter().filter(|p| p.before).cloned().collect();
        let key = |p: &PairInfo| {
            let pos = self
                .row_reading()
                .iter()
                .position(|&b| b == p.i)
                .unwrap();
            (p.j, pos)
        };
        out.sort_by_key(key);
        out
    }

    /// Pairs `(i, j)` with `i` read after `j`, ordered by descending `j`,
    /// ties by the reading position of `i`.
    pub fn late_pairs(&self) -> Vec<PairInfo> {
        let mut out: Vec<PairInfo> = self.pairs.iter().filter(|p| !p.before).cloned().collect();
        let reading = self.row_reading();
        out.sort_by_key(|p| {
            let pos = reading.iter().position(|&b| b == p.i).unwrap();
            (usize::MAX - p.j, pos)
        });
        out
    }

    /// Box numbers in row-reading order.
    pub fn row_reading(&self) -> Vec<usize> {
        let n = self.tableau.content.len();
        let mut order: Vec<usize> = (1..=n).collect();
        order.sort_by_key(|&b| self.tableau.cell_of[b - 1]);
        order
    }
}

/// Evaluate an ordered product of `φ` factors along the fusion path and
/// return the exact limit (the coefficient of `δ⁰`). Fails if any negative
/// power survives, which would indicate a truncation or sign bug.
fn fused_product(
    shape: &StrictPartition,
    tableau: &ColumnTableau,
    pairs: &[PairInfo],
    truncation: i64,
) -> Result<SergeevElement, FusionError> {
    let n = shape.n();
    let us: Vec<LaurentSeries<FieldElement>> = (0..n)
        .map(|b| u_series(tableau.content[b], tableau.row_of[b] as i64, truncation))
        .collect();
    let mut prod = LaurentSeries::constant(SergeevElement::one(n), truncation);
    for p in pairs {
        let factor = phi_series(p.i, p.j, &us[p.i - 1], &us[p.j - 1], n)?;
        prod = prod.mul(&factor);
    }
    if prod.valuation() < 0 && !prod.is_zero() {
        return Err(FusionError::NegativePower {
            lambda: shape.to_string(),
            exponent: prod.valuation(),
        });
    }
    assert!(
        prod.truncation() > 0,
        "truncation budget exhausted before δ⁰"
    );
    Ok(prod
        .coeff(0)
        .cloned()
        .unwrap_or_else(|| SergeevElement::zero(n)))
}

/// The fusion element `Ψ_λ`: the limit of the lexicographically ordered
/// product of `φ` factors along the fusion path.
pub fn psi(shape: &StrictPartition) -> Result<SergeevElement, FusionError> {
    psi_with_truncation(shape, default_truncation(shape.n()))
}

pub fn psi_with_truncation(
    shape: &StrictPartition,
    truncation: i64,
) -> Result<SergeevElement, FusionError> {
    let plan = FusionPlan::new(shape);
    fused_product(shape, &plan.tableau, &plan.pairs, truncation)
}

/// Closed-form `Ψ_(n)` for a single row: the double product with
/// `u_s = sqrt_int(s(s-1))`; no limits are needed.
pub fn psi_row_formula(n: usize) -> SergeevElement {
    let us: Vec<FieldElement> = (1..=n as i64)
        .map(|s| FieldElement::sqrt_int(s * (s - 1)))
        .collect();
    let mut out = SergeevElement::one(n);
    for r in 1..n {
        for s in r + 1..=n {
            let f = phi(r, s, &us[r - 1], &us[s - 1], n).expect("single-row factors are regular");
            out = out.product(&f);
        }
    }
    out
}

/// The factorization `Ψ_λ = Υ_λ · Θ_λ`: `Υ_λ` from the pairs whose first
/// index is read before the second (series limit), `Θ_λ` from the others
/// (regular at the limit point, evaluated directly at `t = 0`).
pub fn upsilon_theta(
    shape: &StrictPartition,
) -> Result<(SergeevElement, SergeevElement), FusionError> {
    let plan = FusionPlan::new(shape);
    let n = shape.n();
    let trunc = default_truncation(n);
    let upsilon = fused_product(shape, &plan.tableau, &plan.early_pairs(), trunc)?;
    let z = z_values(shape);
    let mut theta = SergeevElement::one(n);
    for p in plan.late_pairs() {
        theta = theta.product(&phi(p.i, p.j, &z[p.i - 1], &z[p.j - 1], n)?);
    }
    Ok((upsilon, theta))
}

/// `Ψ_λ* = Ψ_λ` and `α(Ψ_λ) = 1`.
pub fn verify_lemma23(shape: &StrictPartition) -> Result<bool, FusionError> {
    let p = psi(shape)?;
    Ok(p.star() == p && p.alpha() == SergeevElement::one(shape.n()))
}

/// Joint eigenvector property: `x_k · Ψ_λ = z_k · Ψ_λ` for all `k`.
pub fn verify_jm_eigen(shape: &StrictPartition) -> Result<bool, FusionError> {
    let p = psi(shape)?;
    Ok(jm_eigen_holds(shape, &p))
}

pub fn jm_eigen_holds(shape: &StrictPartition, psi_val: &SergeevElement) -> bool {
    let n = shape.n();
    let z = z_values(shape);
    (1..=n).all(|k| {
        let lhs = jm_element(k, n).product(psi_val);
        let rhs = psi_val.scaled(&z[k - 1]);
        lhs == rhs
    })
}

/// Annihilation instances that the divisibility statements reduce to.
///
/// Boxes `k < l` adjacent in a row: `Υ_λ · φ_lk(z_l, z_k) = 0`, i.e. right
/// divisibility of `Υ_λ` by the idempotent-type factor `φ_kl(z_k, z_l)`.
/// For pairs adjacent in the first row the stronger two-sided statement
/// about `Ψ_λ` is checked, with the invertible factors attached to the
/// intermediate box numbers divided out first. Boxes `k, k+1` adjacent in
/// a column: annihilation of `Ψ_λ` on both sides by
/// `φ_{k+1,k}(z_{k+1}, z_k)`.
pub fn verify_divisibility(shape: &StrictPartition) -> Result<bool, FusionError> {
    let p = psi(shape)?;
    divisibility_holds(shape, &p)
}

pub fn divisibility_holds(
    shape: &StrictPartition,
    psi_val: &SergeevElement,
) -> Result<bool, FusionError> {
    let n = shape.n();
    let t = column_tableau(shape);
    let z = z_values(shape);
    let (upsilon, _) = upsilon_theta(shape)?;
    for k in 1..=n {
        let (r, c) = t.cell_of[k - 1];
        // neighbour to the right in the same row
        if let Some(l) = t.cell_of.iter().position(|&rc| rc == (r, c + 1)) {
            let l = l + 1;
            let complement = phi(l, k, &z[l - 1], &z[k - 1], n)?;
            if !upsilon.product(&complement).is_zero() {
                return Ok(false);
            }
            if r == 1 {
                // Ψ is divisible on the right by
                // φ_kl(z_k,z_l)·Π→_{k<m<l} φ_ml(z_m,z_l): divide out the
                // invertible tail, then kill with the complement.
                let mut reduced = psi_val.clone();
                for m in (k + 1..l).rev() {
                    reduced = reduced.product(&phi_inverse(m, l, &z[m - 1], &z[l - 1], n)?);
                }
                if !reduced.product(&complement).is_zero() {
                    return Ok(false);
                }
                // mirrored left divisibility by
                // Π←_{k<m<l} φ_ml(z_m,z_l)·φ_kl(z_k,z_l)
                let mut reduced = psi_val.clone();
                for m in k + 1..l {
                    reduced = phi_inverse(m, l, &z[m - 1], &z[l - 1], n)?.product(&reduced);
                }
                if !complement.product(&reduced).is_zero() {
                    return Ok(false);
                }
            }
        }
        // neighbour below in the same column carries the next number
        if t.cell_of.iter().any(|&rc| rc == (r + 1, c)) {
            let f = phi(k + 1, k, &z[k], &z[k - 1], n)?;
            if !psi_val.product(&f).is_zero() {
                return Ok(false);
            }
            if !f.product(psi_val).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The rational identity in `H_{n+1}`:
/// `Π→_{1≤i≤n} φ_{n+1,i}(u, z_i) · Ψ_λ = (1 - x_{n+1}/u) · Ψ_λ`.
pub fn verify_xu_identity(shape: &StrictPartition, u: &Rational) -> Result<bool, FusionError> {
    let n = shape.n();
    let uf = FieldElement::from_rational(u.clone());
    let z = z_values(shape);
    if uf.is_zero() || z.iter().any(|zi| uf == *zi || uf == -zi) {
        return Err(FusionError::Misuse("u hits a pole of the identity"));
    }
    let psi_big = psi(shape)?.embed(n + 1, 0);
    let mut lhs = SergeevElement::one(n + 1);
    for i in 1..=n {
        lhs = lhs.product(&phi(n + 1, i, &uf, &z[i - 1], n + 1)?);
    }
    let lhs = lhs.product(&psi_big);
    let correction = jm_element(n + 1, n + 1).scaled(&uf.inv().unwrap());
    let rhs = SergeevElement::one(n + 1)
        .sub(&correction)
        .product(&psi_big);
    Ok(lhs == rhs)
}

/// The regularized triple-product value: along the curve
/// `v = √((t₀+ε)(t₀+1+ε))`, `u = √((t₀+1+ε)(t₀+2+ε))`, `w = u(0)`,
/// the product `φ_{123}(u,v,w)·φ_{32}(w,v)` is continuous at `ε = 0` with
/// value `(1 3)·φ_{32}(w,v)·(2/(v+w)³ - 2/(v-w)³)`.
pub fn verify_lemma26(t0: i64) -> Result<bool, FusionError> {
    assert!(t0 >= 1);
    let trunc = 8;
    let us = crate::laurent::content_sqrt_series(t0 + 1, 1, 1, trunc);
    let vs = crate::laurent::content_sqrt_series(t0, 1, 1, trunc);
    let w = FieldElement::sqrt_int((t0 + 1) * (t0 + 2));
    let ws = LaurentSeries::constant(w.clone(), trunc);
    let prod = phi_series(1, 2, &us, &vs, 3)?
        .mul(&phi_series(1, 3, &us, &ws, 3)?)
        .mul(&phi_series(2, 3, &vs, &ws, 3)?)
        .mul(&phi_series(3, 2, &ws, &vs, 3)?);
    if prod.valuation() < 0 && !prod.is_zero() {
        return Ok(false);
    }
    let got = prod
        .coeff(0)
        .cloned()
        .unwrap_or_else(|| SergeevElement::zero(3));
    let v = FieldElement::sqrt_int(t0 * (t0 + 1));
    let scalar = &(&v + &w).pow(3).inv().unwrap().scaled(&Rational::from_integer(2.into()))
        - &(&v - &w).pow(3).inv().unwrap().scaled(&Rational::from_integer(2.into()));
    let expect = SergeevElement::transposition(3, 1, 3)
        .product(&phi(3, 2, &w, &v, 3)?)
        .scaled(&scalar);
    Ok(got == expect)
}

/// The degenerate limit of the same product into `u = w = 0` along the
/// fusion path (contents `0, 1, 0` on rows `1, 1, 2`): the value is zero.
pub fn verify_lemma26_zero_limit() -> Result<bool, FusionError> {
    let trunc = 12;
    let u = u_series(0, 1, trunc);
    let v = u_series(1, 1, trunc);
    let w = u_series(0, 2, trunc);
    let prod = phi_series(1, 2, &u, &v, 3)?
        .mul(&phi_series(1, 3, &u, &w, 3)?)
        .mul(&phi_series(2, 3, &v, &w, 3)?)
        .mul(&phi_series(3, 2, &w, &v, 3)?);
    // vanishing at δ = 0 means strictly positive valuation
    Ok(prod.is_zero() || prod.valuation() > 0)
}

/// Expansion of `Ψ_λ·(y_1-z_1)…(y_n-z_n)` in `H_{n+m}` as
/// `Ψ_λ · Σ (1 ĵ₁)…(n ĵ_n)(1-a_1 a_ĵ₁)…(1-a_n a_ĵ_n)` over injective
/// tuples `(j_1..j_n)`.
pub fn verify_prop36(shape: &StrictPartition, m: usize) -> Result<bool, FusionError> {
    let n = shape.n();
    let total = n + m;
    let z = z_values(shape);
    let psi_big = psi(shape)?.embed(total, 0);
    let mut lhs = psi_big.clone();
    for k in 1..=n {
        let factor = y_element(k, n, m).sub(&SergeevElement::scalar(total, z[k - 1].clone()));
        lhs = lhs.product(&factor);
    }
    let rhs = psi_big.product(&injective_sum(n, m));
    Ok(lhs == rhs)
}

/// `Σ (1 ĵ₁)…(n ĵ_n)·(1-a_1 a_ĵ₁)…(1-a_n a_ĵ_n)` over pairwise-distinct
/// `j_1..j_n ∈ {1..m}`, inside `H_{n+m}`.
pub fn injective_sum(n: usize, m: usize) -> SergeevElement {
    let total = n + m;
    let mut sum = SergeevElement::zero(total);
    let mut tuple = Vec::with_capacity(n);
    fn rec(
        n: usize,
        m: usize,
        total: usize,
        tuple: &mut Vec<usize>,
        sum: &mut SergeevElement,
    ) {
        if tuple.len() == n {
            let mut term = SergeevElement::one(total);
            for (k, &j) in tuple.iter().enumerate() {
                term = term.product(&SergeevElement::transposition(total, k + 1, j + n));
            }
            for (k, &j) in tuple.iter().enumerate() {
                let jt = j + n;
                let mask = (1u32 << k) | (1u32 << (jt - 1));
                let mut factor = SergeevElement::one(total);
                factor.add_term(Perm::identity(total), mask, -FieldElement::one());
                term = term.product(&factor);
            }
            *sum = sum.add(&term);
            return;
        }
        for j in 1..=m {
            if !tuple.contains(&j) {
                tuple.push(j);
                rec(n, m, total, tuple, sum);
                tuple.pop();
            }
        }
    }
    rec(n, m, total, &mut tuple, &mut sum);
    sum
}

/// `Ψ_λ·(y_1-z_1)…(y_n-z_n)·Ψ̃_μ = 0` in `H_{n+m}` when the diagram of
/// `λ` is not contained in the diagram of `μ`.
pub fn verify_cor37(
    shape: &StrictPartition,
    mu: &StrictPartition,
) -> Result<bool, FusionError> {
    if shape.contains_in(mu) {
        return Err(FusionError::Misuse("λ is contained in μ"));
    }
    let n = shape.n();
    let m = mu.n();
    let total = n + m;
    let z = z_values(shape);
    let mut prod = psi(shape)?.embed(total, 0);
    for k in 1..=n {
        let factor = y_element(k, n, m).sub(&SergeevElement::scalar(total, z[k - 1].clone()));
        prod = prod.product(&factor);
    }
    let psi_mu = psi(mu)?.embed(total, n);
    Ok(prod.product(&psi_mu).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shifted::enumerate_strict;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn psi_trivial_and_two_box() {
        assert_eq!(psi(&sp(&[1])).unwrap(), SergeevElement::one(1));
        // Ψ_(2) = 1 + ((12) + (12)a₁a₂)/√2
        let p = psi(&sp(&[2])).unwrap();
        let inv_sqrt2 = FieldElement::sqrt_int(2).inv().unwrap();
        let mut expect = SergeevElement::one(2);
        expect.add_term(Perm::transposition(2, 1, 2), 0, inv_sqrt2.clone());
        expect.add_term(Perm::transposition(2, 1, 2), 0b11, inv_sqrt2);
        assert_eq!(p, expect);
    }

    #[test]
    fn psi_21_is_joint_eigenvector() {
        let shape = sp(&[2, 1]);
        let p = psi(&shape).unwrap();
        assert!(!p.is_zero());
        // eigenvalues follow contents (0, 1, 0)
        let x2 = jm_element(2, 3);
        assert_eq!(x2.product(&p), p.scaled(&FieldElement::sqrt_int(2)));
        let x3 = jm_element(3, 3);
        assert!(x3.product(&p).is_zero());
    }

    #[test]
    fn row_formula_matches_series_engine() {
        for n in 1..=4 {
            let direct = psi_row_formula(n);
            let fused = psi(&sp(&[n as u32])).unwrap();
            assert_eq!(direct, fused, "n={n}");
        }
    }

    #[test]
    fn plan_splits_pairs() {
        let plan = FusionPlan::new(&sp(&[2, 1]));
        // row reading of the column tableau of (2,1): boxes 1,2 then 3
        assert_eq!(plan.row_reading(), vec![1, 2, 3]);
        assert_eq!(plan.pairs.len(), 3);
        assert!(plan.pairs.iter().all(|p| p.before));
        let plan = FusionPlan::new(&sp(&[3, 1]));
        // tableau cells: 1=(1,1), 2=(1,2), 3=(2,2), 4=(1,3); reading 1,2,4,3
        let late = plan.late_pairs();
        assert_eq!(late.len(), 1);
        assert_eq!((late[0].i, late[0].j), (3, 4));
    }

    #[test]
    fn upsilon_theta_factorization() {
        for shape in [sp(&[2]), sp(&[2, 1]), sp(&[3, 1])] {
            let (upsilon, theta) = upsilon_theta(&shape).unwrap();
            let p = psi(&shape).unwrap();
            assert_eq!(upsilon.product(&theta), p, "{shape}");
        }
        // single row: no late pairs at all
        let (_, theta) = upsilon_theta(&sp(&[4])).unwrap();
        assert_eq!(theta, SergeevElement::one(4));
    }

    #[test]
    fn theta_is_invertible_in_regular_representation() {
        // left-multiplication matrix of Θ on the 48-dimensional H₃ has full
        // rank (exact row reduction)
        let (_, theta) = upsilon_theta(&sp(&[2, 1])).unwrap();
        let n = 3;
        let mut basis: Vec<(Perm, u32)> = Vec::new();
        for g in Perm::all(n) {
            for m in 0..(1u32 << n) {
                basis.push((g.clone(), m));
            }
        }
        let index = |g: &Perm, m: u32| basis.iter().position(|(h, mm)| h == g && *mm == m).unwrap();
        let dim = basis.len();
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for (g, m) in &basis {
            let col = theta.product(&SergeevElement::basis(g.clone(), *m));
            let mut v = vec![FieldElement::zero(); dim];
            for ((h, mm), c) in col.terms() {
                v[index(h, *mm)] = c.clone();
            }
            rows.push(v);
        }
        // Gaussian elimination over K
        let mut rank = 0;
        for col in 0..dim {
            if let Some(pivot) = (rank..dim).find(|&r| !rows[r][col].is_zero()) {
                rows.swap(rank, pivot);
                let inv = rows[rank][col].inv().unwrap();
                for r in 0..dim {
                    if r != rank && !rows[r][col].is_zero() {
                        let factor = rows[r][col].mul_ref(&inv);
                        for c in col..dim {
                            let delta = rows[rank][c].mul_ref(&factor);
                            rows[r][c] = &rows[r][c] - &delta;
                        }
                    }
                }
                rank += 1;
            }
        }
        assert_eq!(rank, dim);
    }

    #[test]
    fn star_and_alpha_invariants() {
        for n in 1..=4 {
            for shape in enumerate_strict(n, n) {
                assert!(verify_lemma23(&shape).unwrap(), "{shape}");
            }
        }
    }

    #[test]
    fn eigenvector_property_small() {
        for n in 1..=4 {
            for shape in enumerate_strict(n, n) {
                assert!(verify_jm_eigen(&shape).unwrap(), "{shape}");
            }
        }
    }

    #[test]
    fn divisibility_small() {
        for n in 2..=4 {
            for shape in enumerate_strict(n, n) {
                assert!(verify_divisibility(&shape).unwrap(), "{shape}");
            }
        }
    }

    #[test]
    fn xu_identity() {
        // n = 1, u = 5: φ₂₁(5,0) = 1 - x₂/5
        let u = Rational::from_integer(5.into());
        assert!(verify_xu_identity(&sp(&[1]), &u).unwrap());
        for shape in [sp(&[2]), sp(&[2, 1]), sp(&[3])] {
            for u in [
                Rational::from_integer(7.into()),
                Rational::new(7.into(), 2.into()),
            ] {
                assert!(verify_xu_identity(&shape, &u).unwrap(), "{shape} u={u}");
            }
        }
        // pole rejected
        assert!(verify_xu_identity(&sp(&[1]), &Rational::from_integer(0.into())).is_err());
    }

    #[test]
    fn triple_product_limit_value() {
        assert!(verify_lemma26(1).unwrap());
        assert!(verify_lemma26(2).unwrap());
        assert!(verify_lemma26_zero_limit().unwrap());
    }

    #[test]
    fn product_expansion_small() {
        // n = 1: Ψ·y₁ is the plain sum over single tuples
        assert!(verify_prop36(&sp(&[1]), 2).unwrap());
        assert!(verify_prop36(&sp(&[2]), 2).unwrap());
        // m < n: both sides vanish
        assert!(verify_prop36(&sp(&[2]), 1).unwrap());
        let lhs = {
            let z = z_values(&sp(&[2]));
            let psi_big = psi(&sp(&[2])).unwrap().embed(3, 0);
            let mut acc = psi_big;
            for k in 1..=2 {
                let f = y_element(k, 2, 1).sub(&SergeevElement::scalar(3, z[k - 1].clone()));
                acc = acc.product(&f);
            }
            acc
        };
        assert!(lhs.is_zero());
    }

    #[test]
    fn vanishing_products_for_noncontainment() {
        assert!(verify_cor37(&sp(&[2]), &sp(&[1])).unwrap());
        assert!(verify_cor37(&sp(&[2, 1]), &sp(&[3])).unwrap());
        assert!(verify_cor37(&sp(&[3]), &sp(&[2, 1])).unwrap());
        // misuse when λ ⊆ μ
        assert!(verify_cor37(&sp(&[2]), &sp(&[2, 1])).is_err());
    }

    #[test]
    fn singular_pair_valuations() {
        // same positive content on distinct rows: pole order 2; content 0 on
        // distinct rows: pole order 1
        let trunc = 16;
        let u1 = u_series(1, 1, trunc);
        let u2 = u_series(1, 2, trunc);
        let f = phi_series(1, 2, &u1, &u2, 2).unwrap();
        assert_eq!(f.valuation(), -2);
        let v1 = u_series(0, 1, trunc);
        let v2 = u_series(0, 2, trunc);
        let g = phi_series(1, 2, &v1, &v2, 2).unwrap();
        assert_eq!(g.valuation(), -1);
        // distinct contents: regular
        let w1 = u_series(0, 1, trunc);
        let w2 = u_series(1, 1, trunc);
        let h = phi_series(1, 2, &w1, &w2, 2).unwrap();
        assert_eq!(h.valuation(), 0);
        // series constant term matches the direct evaluation
        let direct = phi(
            1,
            2,
            &FieldElement::zero(),
            &FieldElement::sqrt_int(2),
            2,
        )
        .unwrap();
        assert_eq!(h.coeff(0), Some(&direct));
    }
}
