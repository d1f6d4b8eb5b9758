//! Irreducible-module decompositions of 2-, 3-, and 4-forms under an
//! SU(3)-structure, the projections E₁ (onto Λ²₈) and E₂ (onto Λ³₁₂), the
//! splitting of symmetric 2-tensors, and the ι/γ isomorphisms between
//! symmetric tensors and forms.
//!
//! Form decompositions are coordinate-free (they use only the structure's
//! stars, J, and pairing). Symmetric-tensor operations — the S² splitting,
//! ι, γ, and their inverses — work in the structure's **adapted coframe**,
//! where the metric is the identity and the coefficient tables are standard;
//! callers convert with [`SU3Structure::to_adapted`]/`from_adapted` and
//! conjugate tensors by the coframe matrix.

use crate::exterior::{degree_masks, mask_indices, KForm, DIM};
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::su3::{standard_j_matrix, EpsilonTables, Result, SU3Structure, Su3Error};

// ---------------------------------------------------------------------------
// 2-forms: Λ² = Λ²₁ ⊕ Λ²₆ ⊕ Λ²₈
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct TwoFormDecomposition<S: Scalar> {
    /// Component in ℝκ.
    pub part1: KForm<S>,
    /// Component in Λ²₆ = {φ | Jφ = −φ}.
    pub part6: KForm<S>,
    /// Component in Λ²₈ = {φ | Jφ = φ, φ∧κ² = 0}.
    pub part8: KForm<S>,
}

pub fn decompose_two_form<S: Scalar>(
    s: &SU3Structure<S>,
    phi: &KForm<S>,
) -> TwoFormDecomposition<S> {
    assert_eq!(phi.degree(), 2, "decompose_two_form expects a 2-form");
    let third = S::one() / s.kappa_norm_sq.clone();
    let part1 = s.kappa.scale(&(s.pair(phi, &s.kappa) * third));
    let part6 = (phi.clone() - s.j_act(phi)).scale(&S::from_ratio(1, 2));
    let part8 = phi.clone() - part1.clone() - part6.clone();
    TwoFormDecomposition {
        part1,
        part6,
        part8,
    }
}

/// Membership residual for Λ²₆ = {Jφ = −φ}: ‖Jφ + φ‖ coefficient bound.
pub fn lambda2_6_residual<S: Scalar>(s: &SU3Structure<S>, phi: &KForm<S>) -> f64 {
    (s.j_act(phi) + phi.clone()).max_abs_coeff()
}

/// Membership residual for Λ²₈ = {Jφ = φ, φ∧κ² = 0}.
pub fn lambda2_8_residual<S: Scalar>(s: &SU3Structure<S>, phi: &KForm<S>) -> f64 {
    let j_res = (s.j_act(phi) - phi.clone()).max_abs_coeff();
    let k2 = s.kappa.wedge(&s.kappa);
    j_res.max(phi.wedge(&k2).max_abs_coeff())
}

/// E₁: projection of a 2-form onto Λ²₈, computed by the closed formula
/// E₁(α) = ½(α+Jα) − (1/18)·*((*(α+Jα) + (α+Jα)∧κ)∧κ)·κ.
pub fn project_e1<S: Scalar>(s: &SU3Structure<S>, alpha: &KForm<S>) -> KForm<S> {
    assert_eq!(alpha.degree(), 2);
    let sym = (alpha.clone() + s.j_act(alpha)).scale(&S::from_ratio(1, 2));
    let doubled = sym.scale(&S::from_int(2)); // α + Jα
    let inner = s.hodge_star(&doubled) + doubled.wedge(&s.kappa);
    let scalar = s.hodge_star(&inner.wedge(&s.kappa)).coeff(&[]);
    sym - s.kappa.scale(&(scalar * S::from_ratio(1, 18)))
}

// ---------------------------------------------------------------------------
// 3-forms: Λ³ = Λ³_Re ⊕ Λ³_Im ⊕ Λ³₆ ⊕ Λ³₁₂
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ThreeFormDecomposition<S: Scalar> {
    /// Coefficient of Ω.
    pub re_coeff: S,
    /// Coefficient of JΩ.
    pub im_coeff: S,
    /// Component in Λ³₆ = {α∧κ} = {γ | ★γ = γ}.
    pub part6: KForm<S>,
    /// The 1-form α with part6 = α∧κ.
    pub part6_factor: KForm<S>,
    /// Component in Λ³₁₂ = {γ | γ∧κ = γ∧Ω = γ∧JΩ = 0}.
    pub part12: KForm<S>,
}

pub fn decompose_three_form<S: Scalar>(
    s: &SU3Structure<S>,
    gamma: &KForm<S>,
) -> Result<ThreeFormDecomposition<S>> {
    assert_eq!(gamma.degree(), 3, "decompose_three_form expects a 3-form");
    let quarter = S::one() / s.omega_norm_sq.clone();
    let re_coeff = s.pair(gamma, &s.omega) * quarter.clone();
    let im_coeff = s.pair(gamma, &s.j_omega) * quarter;
    // Λ³₆ is the +1 eigenspace of the symplectic star on 3-forms; the other
    // three summands lie in the −1 eigenspace.
    let part6 = (gamma.clone() + s.sympl_star(gamma)).scale(&S::from_ratio(1, 2));
    let part6_factor = crate::exterior::solve_wedge_factor(&part6, &s.kappa, 1, s.tol.max(1e-9))
        .ok_or_else(|| {
            Su3Error::Inconsistency("Λ³₆ component is not a multiple of ·∧κ".into())
        })?;
    let part12 = gamma.clone()
        - s.omega.scale(&re_coeff)
        - s.j_omega.scale(&im_coeff)
        - part6.clone();
    Ok(ThreeFormDecomposition {
        re_coeff,
        im_coeff,
        part6,
        part6_factor,
        part12,
    })
}

/// Membership residual for Λ³₁₂: max coefficient of γ∧κ, γ∧Ω, γ∧JΩ.
pub fn lambda3_12_residual<S: Scalar>(s: &SU3Structure<S>, gamma: &KForm<S>) -> f64 {
    gamma
        .wedge(&s.kappa)
        .max_abs_coeff()
        .max(gamma.wedge(&s.omega).max_abs_coeff())
        .max(gamma.wedge(&s.j_omega).max_abs_coeff())
}

/// E₂: projection of a 3-form onto Λ³₁₂, by the closed formula
/// E₂(β) = β − ½·*(Jβ∧κ)∧κ − ¼·*(β∧JΩ)·Ω − ¼·*(Ω∧β)·JΩ.
pub fn project_e2<S: Scalar>(s: &SU3Structure<S>, beta: &KForm<S>) -> KForm<S> {
    assert_eq!(beta.degree(), 3);
    let t6 = s
        .hodge_star(&s.j_act(beta).wedge(&s.kappa))
        .wedge(&s.kappa)
        .scale(&S::from_ratio(1, 2));
    let c_re = s.hodge_star(&beta.wedge(&s.j_omega)).coeff(&[]);
    let c_im = s.hodge_star(&s.omega.wedge(beta)).coeff(&[]);
    beta.clone()
        - t6
        - s.omega.scale(&(c_re * S::from_ratio(1, 4)))
        - s.j_omega.scale(&(c_im * S::from_ratio(1, 4)))
}

// ---------------------------------------------------------------------------
// 4-forms: Λ⁴ = ℝκ² ⊕ (Λ¹∧Ω) ⊕ (Λ²₈∧κ), via symplectic-star duality
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct FourFormDecomposition<S: Scalar> {
    /// Coefficient c of κ².
    pub coeff_kappa2: S,
    /// The Λ⁴₆ component as a 4-form (= part6_factor ∧ Ω).
    pub part6: KForm<S>,
    /// The recovered 1-form α with part6 = α∧Ω.
    pub part6_factor: KForm<S>,
    /// The 2-form ρ ∈ Λ²₈ with Λ⁴₈ component ρ∧κ.
    pub part8: KForm<S>,
}

/// Split β = c·κ² + α∧Ω + ρ∧κ. The symplectic star carries the three
/// summands to 2-forms: ★κ² = 2κ, ★(ρ∧κ) = −ρ, and ★(α∧Ω) ∈ Λ²₆, so the
/// 2-form decomposition of ★β yields all components.
pub fn decompose_four_form<S: Scalar>(
    s: &SU3Structure<S>,
    beta: &KForm<S>,
) -> Result<FourFormDecomposition<S>> {
    assert_eq!(beta.degree(), 4, "decompose_four_form expects a 4-form");
    let b = s.sympl_star(beta);
    let parts = decompose_two_form(s, &b);
    let coeff_kappa2 = s.pair(&parts.part1, &s.kappa) * (S::one() / s.kappa_norm_sq.clone())
        * S::from_ratio(1, 2);
    let part6 = s.sympl_star(&parts.part6);
    let part6_factor = if part6.is_zero() {
        KForm::zero(1)
    } else {
        crate::exterior::solve_wedge_factor(&part6, &s.omega, 1, s.tol.max(1e-9)).ok_or_else(
            || Su3Error::Inconsistency("Λ⁴₆ component is not a multiple of ·∧Ω".into()),
        )?
    };
    let part8 = -parts.part8;

    // Reassembly guard: c·κ² + α∧Ω + ρ∧κ must reproduce β.
    let k2 = s.kappa.wedge(&s.kappa);
    let rebuilt =
        k2.scale(&coeff_kappa2) + part6_factor.wedge(&s.omega) + part8.wedge(&s.kappa);
    let residual = (rebuilt - beta.clone()).max_abs_coeff();
    let bound = if S::EXACT { 0.0 } else { s.tol.max(1e-9) };
    if residual > bound {
        return Err(Su3Error::Inconsistency(format!(
            "4-form decomposition residual {residual:.3e}"
        )));
    }
    Ok(FourFormDecomposition {
        coeff_kappa2,
        part6,
        part6_factor,
        part8,
    })
}

// ---------------------------------------------------------------------------
// Symmetric 2-tensors: S² = ℝg ⊕ S²₊ ⊕ S²₋  (adapted coordinates)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SymmetricSplit<S: Scalar> {
    /// Coefficient of the metric (identity in adapted coordinates).
    pub trace_coeff: S,
    /// S²₊ part: J-invariant, traceless.
    pub plus: Mat<S>,
    /// S²₋ part: J-anti-invariant.
    pub minus: Mat<S>,
}

/// (Jh)(X,Y) = h(JX, JY) as a matrix: Jᵀ h J with the standard J.
fn j_conjugate<S: Scalar>(h: &Mat<S>) -> Mat<S> {
    let j = standard_j_matrix::<S>();
    j.transpose().matmul(h).matmul(&j)
}

/// Split a symmetric matrix (adapted coordinates) into trace, J-invariant
/// traceless, and J-anti-invariant parts.
pub fn split_symmetric<S: Scalar>(h: &Mat<S>) -> Result<SymmetricSplit<S>> {
    if !h.is_symmetric(0.0) && !h.is_symmetric(1e-12) {
        return Err(Su3Error::Validation("tensor is not symmetric".into()));
    }
    let jh = j_conjugate(h);
    let half = S::from_ratio(1, 2);
    let minus = h.sub(&jh).scale(&half);
    let invariant = h.add(&jh).scale(&half);
    let mut tr = S::zero();
    for i in 0..DIM {
        tr += invariant.at(i, i).clone();
    }
    let trace_coeff = tr * S::from_ratio(1, 6);
    let plus = invariant.sub(&Mat::identity(DIM).scale(&trace_coeff));
    Ok(SymmetricSplit {
        trace_coeff,
        plus,
        minus,
    })
}

/// Residual of S²₊ membership: symmetry, J-invariance, tracelessness.
pub fn s2_plus_residual<S: Scalar>(h: &Mat<S>) -> f64 {
    let sym = h.sub(&h.transpose()).max_abs();
    let jres = j_conjugate(h).sub(h).max_abs();
    let mut tr = S::zero();
    for i in 0..DIM {
        tr += h.at(i, i).clone();
    }
    sym.max(jres).max(tr.to_f64().abs())
}

/// Residual of S²₋ membership: symmetry and J-anti-invariance.
pub fn s2_minus_residual<S: Scalar>(h: &Mat<S>) -> f64 {
    let sym = h.sub(&h.transpose()).max_abs();
    let jres = j_conjugate(h).add(h).max_abs();
    sym.max(jres)
}

// ---------------------------------------------------------------------------
// ι: S²₊ → Λ²₈ and γ: S²₋ → Λ³₁₂  (adapted coordinates)
// ---------------------------------------------------------------------------

/// ι(h) = h_{ip} κ_{pj} e^i∧e^j, summed over all ordered pairs (i, j).
pub fn iota<S: Scalar>(t: &EpsilonTables<S>, h: &Mat<S>) -> KForm<S> {
    let hk = h.matmul(t.kap_matrix());
    let mut f = KForm::zero(2);
    for i in 0..DIM {
        for j in 0..DIM {
            if i == j {
                continue;
            }
            let c = hk.at(i, j).clone();
            if !c.is_zero() {
                f += &KForm::term(c, &[i + 1, j + 1]);
            }
        }
    }
    f
}

/// Inverse of ι on Λ²₈: with F the full antisymmetric coefficient matrix of
/// the form (F_{ij} = φ(X_i, X_j)), the tensor is h = ½ J F. Errors when the
/// input is off Λ²₈ (residual reported).
pub fn iota_inv<S: Scalar>(s: &SU3Structure<S>, phi: &KForm<S>) -> Result<Mat<S>> {
    assert_eq!(phi.degree(), 2);
    let f = Mat::from_fn(DIM, DIM, |i, j| phi.coeff(&[i + 1, j + 1]));
    let h = standard_j_matrix::<S>()
        .matmul(&f)
        .scale(&S::from_ratio(1, 2));
    let residual = s2_plus_residual(&h);
    let bound = if S::EXACT { 0.0 } else { s.tol.max(1e-9) };
    if residual > bound {
        return Err(Su3Error::Validation(format!(
            "2-form is off Λ²₈: inverse-image residual {residual:.3e}"
        )));
    }
    // Round-trip guard (the closed form inverts ι only on the module).
    let back = iota(&s.tables, &h);
    if (back - phi.clone()).max_abs_coeff() > bound {
        return Err(Su3Error::Validation(
            "2-form is off Λ²₈: ι round-trip failed".into(),
        ));
    }
    Ok(h)
}

/// γ(h) = h_{ip} ε_{pjk} e^i∧e^j∧e^k, summed over all ordered triples.
pub fn gamma<S: Scalar>(t: &EpsilonTables<S>, h: &Mat<S>) -> KForm<S> {
    let mut f = KForm::zero(3);
    for i in 0..DIM {
        for j in 0..DIM {
            if j == i {
                continue;
            }
            for k in 0..DIM {
                if k == i || k == j {
                    continue;
                }
                let mut c = S::zero();
                for p in 0..DIM {
                    c += h.at(i, p).clone() * t.eps(p, j, k).clone();
                }
                if !c.is_zero() {
                    f += &KForm::term(c, &[i + 1, j + 1, k + 1]);
                }
            }
        }
    }
    f
}

/// Deterministic basis of S²₋ (12 matrices), built by projecting the
/// elementary symmetric matrices and keeping those that enlarge the span.
fn s2_minus_basis<S: Scalar>() -> Vec<Mat<S>> {
    let mut basis: Vec<Mat<S>> = Vec::new();
    let mut stacked: Vec<Vec<S>> = Vec::new();
    for a in 0..DIM {
        for b in a..DIM {
            let mut e: Mat<S> = Mat::zeros(DIM, DIM);
            *e.at_mut(a, b) = S::one();
            *e.at_mut(b, a) = S::one();
            let jh = j_conjugate(&e);
            let cand = e.sub(&jh).scale(&S::from_ratio(1, 2));
            if cand.max_abs() == 0.0 {
                continue;
            }
            let flat: Vec<S> = (0..DIM)
                .flat_map(|i| (0..DIM).map(move |j| (i, j)))
                .map(|(i, j)| cand.at(i, j).clone())
                .collect();
            let mut trial = stacked.clone();
            trial.push(flat.clone());
            let rank = Mat::from_rows(trial.clone()).rank(1e-12);
            if rank == trial.len() {
                stacked.push(flat);
                basis.push(cand);
            }
            if basis.len() == 12 {
                return basis;
            }
        }
    }
    panic!("S²₋ basis construction fell short: got {}", basis.len());
}

/// Inverse of γ on Λ³₁₂, by a linear solve over a basis of S²₋. Errors when
/// the input is off the module.
pub fn gamma_inv<S: Scalar>(s: &SU3Structure<S>, gam: &KForm<S>) -> Result<Mat<S>> {
    assert_eq!(gam.degree(), 3);
    let basis = s2_minus_basis::<S>();
    let masks = degree_masks(3);
    let mut system: Mat<S> = Mat::zeros(masks.len(), basis.len());
    for (col, h) in basis.iter().enumerate() {
        let img = gamma(&s.tables, h);
        for (row, &m) in masks.iter().enumerate() {
            *system.at_mut(row, col) = img.coeff_mask(m);
        }
    }
    let rhs: Vec<S> = masks.iter().map(|&m| gam.coeff_mask(m)).collect();
    let bound = if S::EXACT { 0.0 } else { s.tol.max(1e-9) };
    let x = system.solve_vec(&rhs, s.tol.max(1e-12)).ok_or_else(|| {
        Su3Error::Validation("3-form is off Λ³₁₂: no γ pre-image".into())
    })?;
    let mut h: Mat<S> = Mat::zeros(DIM, DIM);
    for (coeff, b) in x.iter().zip(&basis) {
        h = h.add(&b.scale(coeff));
    }
    let back = gamma(&s.tables, &h);
    if (back - gam.clone()).max_abs_coeff() > bound {
        return Err(Su3Error::Validation(
            "3-form is off Λ³₁₂: γ round-trip failed".into(),
        ));
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// Rank audits
// ---------------------------------------------------------------------------

/// Ranks of the three 2-form projectors (expected 1, 6, 8).
pub fn two_form_projector_ranks<S: Scalar>(s: &SU3Structure<S>) -> (usize, usize, usize) {
    let masks = degree_masks(2);
    let tol = if S::EXACT { 0.0 } else { 1e-9 };
    let stack = |pick: &dyn Fn(&TwoFormDecomposition<S>) -> KForm<S>| {
        let rows: Vec<Vec<S>> = masks
            .iter()
            .map(|&m| {
                let mut b = KForm::zero(2);
                b.set_coeff(&mask_indices(m), S::one());
                let part = pick(&decompose_two_form(s, &b));
                masks.iter().map(|&mm| part.coeff_mask(mm)).collect()
            })
            .collect();
        Mat::from_rows(rows).rank(tol)
    };
    (
        stack(&|d| d.part1.clone()),
        stack(&|d| d.part6.clone()),
        stack(&|d| d.part8.clone()),
    )
}

/// Ranks of the four 3-form projectors (expected 1, 1, 6, 12).
pub fn three_form_projector_ranks<S: Scalar>(
    s: &SU3Structure<S>,
) -> Result<(usize, usize, usize, usize)> {
    let masks = degree_masks(3);
    let tol = if S::EXACT { 0.0 } else { 1e-9 };
    let mut rows_re = Vec::new();
    let mut rows_im = Vec::new();
    let mut rows_6 = Vec::new();
    let mut rows_12 = Vec::new();
    for &m in &masks {
        let mut b = KForm::zero(3);
        b.set_coeff(&mask_indices(m), S::one());
        let d = decompose_three_form(s, &b)?;
        let re = s.omega.scale(&d.re_coeff);
        let im = s.j_omega.scale(&d.im_coeff);
        rows_re.push(masks.iter().map(|&mm| re.coeff_mask(mm)).collect::<Vec<_>>());
        rows_im.push(masks.iter().map(|&mm| im.coeff_mask(mm)).collect::<Vec<_>>());
        rows_6.push(masks.iter().map(|&mm| d.part6.coeff_mask(mm)).collect::<Vec<_>>());
        rows_12.push(
            masks
                .iter()
                .map(|&mm| d.part12.coeff_mask(mm))
                .collect::<Vec<_>>(),
        );
    }
    Ok((
        Mat::from_rows(rows_re).rank(tol),
        Mat::from_rows(rows_im).rank(tol),
        Mat::from_rows(rows_6).rank(tol),
        Mat::from_rows(rows_12).rank(tol),
    ))
}

// ---------------------------------------------------------------------------
// The α∧α ∉ ℝκ² residual
// ---------------------------------------------------------------------------

/// Squared g-norm of α∧α − q·κ², where q is the best-fit coefficient
/// ⟨α∧α, κ²⟩/⟨κ², κ²⟩. Strictly positive for every nonzero α ∈ Λ²₈ (the
/// square of a nonzero module element never lies on the κ² line); the
/// squared norm is returned so exact mode stays rational.
pub fn richard_residual<S: Scalar>(s: &SU3Structure<S>, alpha: &KForm<S>) -> Result<S> {
    let bound = if S::EXACT { 0.0 } else { s.tol.max(1e-9) };
    if lambda2_8_residual(s, alpha) > bound {
        return Err(Su3Error::Validation(
            "richard_residual argument is off Λ²₈".into(),
        ));
    }
    let sq = alpha.wedge(alpha);
    let k2 = s.kappa.wedge(&s.kappa);
    let q = s.pair(&sq, &k2) * (S::one() / s.pair(&k2, &k2));
    let resid = sq - k2.scale(&q);
    Ok(s.norm_sq(&resid))
}
