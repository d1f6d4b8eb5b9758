//! Seeded random structure generation and the randomized property suites.
//!
//! This module is the randomized back end of the `verify` subcommand and of
//! the acceptance tests. It draws reproducible sample structures over three
//! bundled nilpotent Lie algebras (perturbing the standard 3-form and
//! renormalizing), then runs every identity and cross-validation suite over
//! the samples: ε-table identities, torsion-relation checks, formula-vs-oracle
//! curvature equality, module decompositions, the two star-operator identity
//! families, the indicial curvature identities, the quadratic norm expansions
//! in the connection tables, positivity of the degeneracy residual, the
//! sign law for closed structures, the sensitivity of the suite to injected
//! coefficient faults, and the pinning of the ambiguous derivative readings in
//! the Ricci expression. Everything is deterministic for a fixed seed.

use num::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decomp::{
    decompose_four_form, decompose_three_form, decompose_two_form, lambda2_6_residual,
    lambda2_8_residual, lambda3_12_residual, project_e1, project_e2, richard_residual,
    three_form_projector_ranks, two_form_projector_ranks,
};
use crate::exterior::{degree_masks, mask_indices, solve_wedge_factor, KForm, DIM};
use crate::frame::{
    bianchi_residual, bracket_identity_residual, curvature, curvature_split_residual,
    d_quantities, decompose_connection, hermitian_connection, hermitian_invariance_residual,
    koszul_connection, structure_derivative_residual, trace_identity_ricci, LieFrame,
};
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::su3::{
    check_epsilon_identities, induced_structure, standard_j_omega, standard_kappa,
    standard_omega, EpsilonTables, Result, SU3Structure, Su3Error,
};
use crate::torsion::{
    bryant_identity_check, classify, codifferential, einstein_residual, extract_torsion,
    full_ricci_from_torsion, gcy_ricci, oracle_ricci, pullback_consistency_residual,
    reconstruct_differentials, ricci_from_torsion, scalar_curvature_from_torsion,
    scalar_curvature_with_coefficients, DerivReading, RicciConfig, ScalarCoefficients,
    StructureClass,
};

type Q = BigRational;

/// Default entry-wise tolerance for formula-vs-oracle comparisons on float
/// samples.
pub const ORACLE_TOL: f64 = 1e-8;
/// Tolerance for identity suites (star identities, norm expansions,
/// torsion relations) on float samples.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Tolerance for the linear decomposition suite on float samples.
pub const DECOMP_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Sample algebras and fixtures
// ---------------------------------------------------------------------------

/// The four bundled nilpotent Lie algebras used by the randomized suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleAlgebra {
    /// The abelian algebra (flat torus; every invariant form is closed).
    Abelian,
    /// The two-step nilpotent algebra with [X₁,X₃] = −X₆, [X₁,X₅] = −X₄.
    Nilpotent,
    /// Heisenberg × ℝ³: [X₁,X₂] = X₃.
    Heisenberg,
    /// h₃ ⊕ h₃: [X₁,X₂] = X₃, [X₄,X₅] = X₆. Its torsion channels are
    /// correlated differently from the single Heisenberg factor, which pins
    /// coefficients that would otherwise be collinear across samples.
    DoubleHeisenberg,
}

impl SampleAlgebra {
    pub fn all() -> [SampleAlgebra; 4] {
        [
            SampleAlgebra::Abelian,
            SampleAlgebra::Nilpotent,
            SampleAlgebra::Heisenberg,
            SampleAlgebra::DoubleHeisenberg,
        ]
    }

    pub fn label(&self) -> &'static str {
        match self {
            SampleAlgebra::Abelian => "abelian",
            SampleAlgebra::Nilpotent => "nilpotent",
            SampleAlgebra::Heisenberg => "heisenberg-r3",
            SampleAlgebra::DoubleHeisenberg => "heisenberg-heisenberg",
        }
    }
}

/// Structure constants of a sample algebra, exact over any scalar type.
pub fn fixture_frame<S: Scalar>(alg: SampleAlgebra) -> LieFrame<S> {
    match alg {
        SampleAlgebra::Abelian => LieFrame::abelian(),
        SampleAlgebra::Nilpotent => LieFrame::new(&[
            (1, 3, 6, -S::one()),
            (1, 5, 4, -S::one()),
        ])
        .expect("nilpotent fixture satisfies Jacobi"),
        SampleAlgebra::Heisenberg => {
            LieFrame::new(&[(1, 2, 3, S::one())]).expect("Heisenberg fixture satisfies Jacobi")
        }
        SampleAlgebra::DoubleHeisenberg => {
            LieFrame::new(&[(1, 2, 3, S::one()), (4, 5, 6, S::one())])
                .expect("h3+h3 fixture satisfies Jacobi")
        }
    }
}

/// The standard structure over an arbitrary scalar type (κ₀, Ω₀ untouched).
fn standard_structure<S: Scalar>(tol: f64) -> Result<SU3Structure<S>> {
    induced_structure(&standard_kappa(), &standard_omega(), false, tol)
}

/// A phase-rotated exact structure on the nilpotent algebra: Ω is replaced by
/// c·Ω₀ + s·JΩ₀ with c² + s² = 1, which keeps the induced almost complex
/// structure and the normalization while moving torsion between the dΩ and
/// dJΩ channels. With a rational point on the unit circle this is an exact
/// family of closed-κ structures whose 2-form torsion splits as
/// π₂ = s·(e⁵⁶ − e³⁴), σ₂ = c·(e⁵⁶ − e³⁴).
pub fn rotated_nil_pair<S: Scalar>(
    c: (i64, i64),
    s: (i64, i64),
    tol: f64,
) -> Result<(LieFrame<S>, SU3Structure<S>)> {
    let co = S::from_ratio(c.0, c.1);
    let si = S::from_ratio(s.0, s.1);
    let unit = co.clone() * co.clone() + si.clone() * si.clone();
    if unit != S::one() {
        return Err(Su3Error::Validation(
            "rotation parameters must satisfy c² + s² = 1".into(),
        ));
    }
    let mut omega = standard_omega::<S>().scale(&co);
    omega += &standard_j_omega::<S>().scale(&si);
    let frame = fixture_frame::<S>(SampleAlgebra::Nilpotent);
    let structure = induced_structure(&standard_kappa(), &omega, false, tol)?;
    Ok((frame, structure))
}

// ---------------------------------------------------------------------------
// Random structure generation
// ---------------------------------------------------------------------------

/// One randomized sample: an algebra together with a normalized positive
/// structure obtained by perturbing Ω₀.
#[derive(Debug, Clone)]
pub struct Sample {
    pub algebra: SampleAlgebra,
    pub index: usize,
    pub frame: LieFrame<f64>,
    pub structure: SU3Structure<f64>,
}

fn random_three_form(rng: &mut ChaCha8Rng, scale: f64) -> KForm<f64> {
    let mut out = KForm::zero(3);
    for mask in degree_masks(3) {
        let c: f64 = rng.gen_range(-1.0..1.0) * scale;
        out += &KForm::term(c, &mask_indices(mask));
    }
    out
}

/// Project a 3-form onto the subspace compatible with κ (κ∧δ = 0, which is
/// what keeps the induced metric symmetric): solve θ∧κ² = κ∧δ for the 1-form
/// θ — the map is an isomorphism Λ¹ → Λ⁵ — and subtract θ∧κ.
fn kappa_compatible_part(kappa: &KForm<f64>, delta: &KForm<f64>) -> Option<KForm<f64>> {
    let kappa2 = kappa.wedge(kappa);
    let obstruction = kappa.wedge(delta);
    let theta = solve_wedge_factor(&obstruction, &kappa2, 1, 1e-12)?;
    Some(delta.clone() - theta.wedge(kappa))
}

/// Draw a normalized positive structure by perturbing Ω₀ with a random
/// 3-form (projected onto the κ-compatible subspace), shrinking the
/// perturbation until positivity holds.
pub fn random_structure(rng: &mut ChaCha8Rng, tol: f64) -> Result<SU3Structure<f64>> {
    let kappa: KForm<f64> = standard_kappa();
    let omega0: KForm<f64> = standard_omega();
    let mut scale = 0.15;
    for _ in 0..16 {
        let raw = random_three_form(rng, scale);
        let delta = match kappa_compatible_part(&kappa, &raw) {
            Some(d) => d,
            None => continue,
        };
        let mut omega = omega0.clone();
        omega += &delta;
        if let Ok(s) = induced_structure(&kappa, &omega, true, tol) {
            return Ok(s);
        }
        scale *= 0.5;
    }
    Err(Su3Error::Validation(
        "failed to draw a positive perturbation of Ω₀".into(),
    ))
}

/// Draw a normalized positive structure whose 3-form stays closed on the
/// given frame: the perturbation is taken from the kernel of the invariant
/// differential on 3-forms, so dΩ = 0 is preserved (on the nilpotent algebra
/// this produces closed-κ, closed-Ω samples with only σ₂ torsion).
pub fn closed_perturbation_structure(
    rng: &mut ChaCha8Rng,
    frame: &LieFrame<f64>,
    tol: f64,
) -> Result<SU3Structure<f64>> {
    let kappa: KForm<f64> = standard_kappa();
    let omega0: KForm<f64> = standard_omega();
    if frame.ce_differential(&omega0).max_abs_coeff() > 1e-12 {
        return Err(Su3Error::Validation(
            "Ω₀ is not closed on this algebra; no closed perturbation family".into(),
        ));
    }
    // Constraint matrix: the perturbation must be closed AND stay in the
    // κ-compatible subspace (κ∧δ = 0), stacked as one linear system.
    let masks3 = degree_masks(3);
    let masks4 = degree_masks(4);
    let masks5 = degree_masks(5);
    let dmat = Mat::from_fn(masks4.len() + masks5.len(), masks3.len(), |r, c| {
        let base = KForm::<f64>::term(1.0, &mask_indices(masks3[c]));
        if r < masks4.len() {
            frame.ce_differential(&base).coeff_mask(masks4[r])
        } else {
            kappa.wedge(&base).coeff_mask(masks5[r - masks4.len()])
        }
    });
    let kernel = dmat.kernel(1e-9);
    let mut scale = 0.15;
    for _ in 0..16 {
        let mut delta = KForm::zero(3);
        for vec in &kernel {
            let c: f64 = rng.gen_range(-1.0..1.0) * scale;
            for (pos, &mask) in masks3.iter().enumerate() {
                delta += &KForm::term(vec[pos] * c, &mask_indices(mask));
            }
        }
        let mut omega = omega0.clone();
        omega += &delta;
        if frame.ce_differential(&omega).max_abs_coeff() > 1e-10 {
            return Err(Su3Error::Inconsistency(
                "kernel perturbation is not closed".into(),
            ));
        }
        if let Ok(s) = induced_structure(&kappa, &omega, true, tol) {
            return Ok(s);
        }
        scale *= 0.5;
    }
    Err(Su3Error::Validation(
        "failed to draw a positive closed perturbation of Ω₀".into(),
    ))
}

/// The deterministic sample set: `per_algebra` perturbed structures on each
/// of the three algebras, drawn from a single seeded stream.
pub fn sample_set(per_algebra: usize, seed: u64, tol: f64) -> Result<Vec<Sample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for alg in SampleAlgebra::all() {
        let frame: LieFrame<f64> = fixture_frame(alg);
        for index in 0..per_algebra {
            let structure = random_structure(&mut rng, tol)?;
            out.push(Sample {
                algebra: alg,
                index,
                frame: frame.clone(),
                structure,
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Suite plumbing
// ---------------------------------------------------------------------------

/// Outcome of one property suite over the sample set.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub samples: usize,
    pub max_residual: f64,
    pub bound: f64,
    pub pass: bool,
    pub detail: String,
    /// Machine-readable description of the first failing case, for the
    /// counterexample file.
    pub counterexample: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str, samples: usize, max_residual: f64, bound: f64) -> Self {
        SuiteResult {
            name,
            samples,
            max_residual,
            bound,
            pass: max_residual <= bound,
            detail: String::new(),
            counterexample: None,
        }
    }
}

/// An injected fault for testing that the verification suite has teeth: each
/// variant flips one coefficient in the scalar-curvature expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// 15/2 → 13/2 on the π₀² coefficient.
    ScalarPi0,
    /// −1/2 → +1/2 on the |σ₂|² coefficient.
    ScalarSigma2,
    /// −1 → +1 on the |ν₁|² coefficient.
    ScalarNu1,
    /// −1/2 → +1/2 on the |π₂|² coefficient.
    ScalarPi2,
}

impl Fault {
    pub fn all() -> [Fault; 4] {
        [
            Fault::ScalarPi0,
            Fault::ScalarSigma2,
            Fault::ScalarNu1,
            Fault::ScalarPi2,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Fault::ScalarPi0 => "scalar-pi0",
            Fault::ScalarSigma2 => "scalar-sigma2",
            Fault::ScalarNu1 => "scalar-nu1",
            Fault::ScalarPi2 => "scalar-pi2",
        }
    }

    pub fn from_name(name: &str) -> Option<Fault> {
        Fault::all().into_iter().find(|f| f.name() == name)
    }

    pub fn apply(&self, c: &mut ScalarCoefficients<f64>) {
        match self {
            Fault::ScalarPi0 => c.pi0_sq = 13.0 / 2.0,
            Fault::ScalarSigma2 => c.sigma2_sq = 0.5,
            Fault::ScalarNu1 => c.nu1_sq = 1.0,
            Fault::ScalarPi2 => c.pi2_sq = 0.5,
        }
    }
}

/// Options for a verification run.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Samples per algebra (zero means a trivially passing empty run).
    pub samples: usize,
    pub seed: u64,
    /// Bound for formula-vs-oracle comparisons.
    pub tol: f64,
    /// Optional injected fault (hidden CLI flag; used to prove the suite
    /// detects a wrong coefficient).
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 20,
            seed: 1,
            tol: ORACLE_TOL,
            fault: None,
        }
    }
}

// ---------------------------------------------------------------------------
// Individual suites
// ---------------------------------------------------------------------------

fn suite_epsilon(samples: &[Sample]) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let mut counterexample = None;
    let standard = EpsilonTables::<Q>::standard();
    for chk in check_epsilon_identities(&standard, 0.0) {
        worst = worst.max(chk.max_residual);
        if !chk.pass && counterexample.is_none() {
            counterexample = Some(format!(
                "{{\"suite\":\"epsilon-identities\",\"case\":\"standard\",\"identity\":\"{}\"}}",
                chk.name
            ));
        }
    }
    for smp in samples {
        for chk in check_epsilon_identities(&smp.structure.tables, IDENTITY_TOL) {
            worst = worst.max(chk.max_residual);
            if !chk.pass && counterexample.is_none() {
                counterexample = Some(format!(
                    "{{\"suite\":\"epsilon-identities\",\"algebra\":\"{}\",\"index\":{},\"identity\":\"{}\",\"residual\":{:e}}}",
                    smp.algebra.label(),
                    smp.index,
                    chk.name,
                    chk.max_residual
                ));
            }
        }
    }
    let mut r = SuiteResult::new("epsilon-identities", samples.len() + 1, worst, IDENTITY_TOL);
    r.detail = "8 table identities on the exact standard tables and every adapted frame".into();
    r.counterexample = counterexample;
    r.pass = r.pass && r.counterexample.is_none();
    r
}

fn suite_torsion_relations(samples: &[Sample]) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let mut counterexample = None;
    for smp in samples {
        let (s, f) = (&smp.structure, &smp.frame);
        let t = match extract_torsion(s, f) {
            Ok(t) => t,
            Err(e) => {
                worst = f64::INFINITY;
                if counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"torsion-relations\",\"algebra\":\"{}\",\"index\":{},\"error\":\"{}\"}}",
                        smp.algebra.label(),
                        smp.index,
                        e
                    ));
                }
                continue;
            }
        };
        let two_thirds = 2.0 / 3.0;
        let r1 = (t.pi0 - two_thirds * t.alpha0).abs();
        let r2 = (t.sigma0 + two_thirds * t.nu0).abs();
        let r3 = (t.sigma1.clone() - s.j_act(&t.pi1)).max_abs_coeff();
        let (dk, dom, djom) = reconstruct_differentials(s, &t);
        let r4 = (dk - f.ce_differential(&s.kappa)).max_abs_coeff();
        let r5 = (dom - f.ce_differential(&s.omega)).max_abs_coeff();
        let r6 = (djom - f.ce_differential(&s.j_omega)).max_abs_coeff();
        let r = r1.max(r2).max(r3).max(r4).max(r5).max(r6);
        if r > IDENTITY_TOL && counterexample.is_none() {
            counterexample = Some(format!(
                "{{\"suite\":\"torsion-relations\",\"algebra\":\"{}\",\"index\":{},\"residual\":{:e}}}",
                smp.algebra.label(),
                smp.index,
                r
            ));
        }
        worst = worst.max(r);
    }
    let mut r = SuiteResult::new("torsion-relations", samples.len(), worst, IDENTITY_TOL);
    r.detail =
        "π₀ = ⅔α₀, σ₀ = −⅔ν₀, σ₁ = Jπ₁, and reassembly of dκ/dΩ/dJΩ from the extracted forms"
            .into();
    r.counterexample = counterexample;
    r
}

fn suite_oracle(samples: &[Sample], opts: &VerifyOptions) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let mut counterexample = None;
    let mut coeffs = ScalarCoefficients::<f64>::standard();
    if let Some(fault) = opts.fault {
        fault.apply(&mut coeffs);
    }
    for smp in samples {
        let (s, f) = (&smp.structure, &smp.frame);
        let outcome = (|| -> Result<f64> {
            let t = extract_torsion(s, f)?;
            let s_formula = scalar_curvature_with_coefficients(s, f, &t, &coeffs);
            let (ric_f, _) = full_ricci_from_torsion(s, f, &t, &RicciConfig::standard())?;
            let (ric_o, s_o) = oracle_ricci(s, f)?;
            let mut r = (s_formula - s_o).abs();
            for i in 0..DIM {
                for j in 0..DIM {
                    r = r.max((ric_f.at(i, j) - ric_o.at(i, j)).abs());
                }
            }
            Ok(r)
        })();
        let r = match outcome {
            Ok(r) => r,
            Err(e) => {
                if counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"oracle-equality\",\"algebra\":\"{}\",\"index\":{},\"error\":\"{}\"}}",
                        smp.algebra.label(),
                        smp.index,
                        e
                    ));
                }
                f64::INFINITY
            }
        };
        if r > opts.tol && counterexample.is_none() {
            counterexample = Some(format!(
                "{{\"suite\":\"oracle-equality\",\"algebra\":\"{}\",\"index\":{},\"residual\":{:e},\"omega\":\"{}\"}}",
                smp.algebra.label(),
                smp.index,
                r,
                smp.structure.omega
            ));
        }
        worst = worst.max(r);
    }
    let mut r = SuiteResult::new("oracle-equality", samples.len(), worst, opts.tol);
    r.detail = match opts.fault {
        Some(f) => format!(
            "scalar and Ricci formulas vs the Levi-Civita oracle (injected fault: {})",
            f.name()
        ),
        None => "scalar and Ricci formulas vs the Levi-Civita oracle on every sample".into(),
    };
    r.counterexample = counterexample;
    r
}

fn random_form(rng: &mut ChaCha8Rng, degree: usize) -> KForm<f64> {
    let mut out = KForm::zero(degree);
    for mask in degree_masks(degree) {
        out += &KForm::term(rng.gen_range(-1.0..1.0), &mask_indices(mask));
    }
    out
}

fn suite_decomposition(samples: &[Sample], seed: u64) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let mut counterexample = None;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xDEC0_0001);

    // Projector ranks once, on the exact standard structure.
    let su = standard_structure::<Q>(0.0).expect("standard structure");
    let (r1, r6, r8) = two_form_projector_ranks(&su);
    let ranks3 = three_form_projector_ranks(&su).expect("3-form ranks");
    if (r1, r6, r8) != (1, 6, 8) || ranks3 != (1, 1, 6, 12) {
        let mut r = SuiteResult::new("decomposition", samples.len(), f64::INFINITY, DECOMP_TOL);
        r.detail = format!(
            "projector ranks wrong: 2-forms {:?}, 3-forms {:?}",
            (r1, r6, r8),
            ranks3
        );
        r.counterexample = Some(format!(
            "{{\"suite\":\"decomposition\",\"case\":\"ranks\",\"two\":\"{:?}\",\"three\":\"{:?}\"}}",
            (r1, r6, r8),
            ranks3
        ));
        return r;
    }

    for smp in samples {
        let s = &smp.structure;
        let mut record = |r: f64, what: &str| {
            if r > DECOMP_TOL && counterexample.is_none() {
                counterexample = Some(format!(
                    "{{\"suite\":\"decomposition\",\"algebra\":\"{}\",\"index\":{},\"check\":\"{}\",\"residual\":{:e}}}",
                    smp.algebra.label(),
                    smp.index,
                    what,
                    r
                ));
            }
            worst = worst.max(r);
        };

        // 2-form splitting.
        let phi = random_form(&mut rng, 2);
        let d2 = decompose_two_form(s, &phi);
        let mut rebuilt = d2.part1.clone();
        rebuilt += &d2.part6;
        rebuilt += &d2.part8;
        record((rebuilt - phi.clone()).max_abs_coeff(), "2-form reassembly");
        record(lambda2_6_residual(s, &d2.part6), "Λ²₆ membership");
        record(lambda2_8_residual(s, &d2.part8), "Λ²₈ membership");
        record(
            (project_e1(s, &phi) - d2.part8.clone()).max_abs_coeff(),
            "E₁ agrees with part8",
        );
        let again = decompose_two_form(s, &d2.part8);
        record(again.part1.max_abs_coeff(), "idempotence part8→part1");
        record(again.part6.max_abs_coeff(), "idempotence part8→part6");
        record(
            (again.part8 - d2.part8.clone()).max_abs_coeff(),
            "idempotence part8→part8",
        );
        record(s.pair(&d2.part1, &d2.part6).abs(), "orthogonality 1⊥6");
        record(s.pair(&d2.part1, &d2.part8).abs(), "orthogonality 1⊥8");
        record(s.pair(&d2.part6, &d2.part8).abs(), "orthogonality 6⊥8");

        // 3-form splitting.
        let gam = random_form(&mut rng, 3);
        match decompose_three_form(s, &gam) {
            Ok(d3) => {
                let mut rebuilt = s.omega.scale(&d3.re_coeff);
                rebuilt += &s.j_omega.scale(&d3.im_coeff);
                rebuilt += &d3.part6;
                rebuilt += &d3.part12;
                record((rebuilt - gam.clone()).max_abs_coeff(), "3-form reassembly");
                record(lambda3_12_residual(s, &d3.part12), "Λ³₁₂ membership");
                record(
                    (d3.part6_factor.wedge(&s.kappa) - d3.part6.clone()).max_abs_coeff(),
                    "Λ³₆ factors through ∧κ",
                );
                record(
                    (s.sympl_star(&d3.part6) - d3.part6.clone()).max_abs_coeff(),
                    "Λ³₆ is ★-invariant",
                );
                record(
                    (project_e2(s, &gam) - d3.part12.clone()).max_abs_coeff(),
                    "E₂ agrees with part12",
                );
                record(
                    (project_e2(s, &d3.part12) - d3.part12.clone()).max_abs_coeff(),
                    "E₂ idempotence",
                );
            }
            Err(e) => {
                record(f64::INFINITY, &format!("3-form decomposition error: {e}"));
            }
        }

        // 4-form splitting.
        let beta = random_form(&mut rng, 4);
        match decompose_four_form(s, &beta) {
            Ok(d4) => {
                let kappa2 = s.kappa.wedge(&s.kappa);
                let mut rebuilt = kappa2.scale(&d4.coeff_kappa2);
                rebuilt += &d4.part6;
                rebuilt += &d4.part8.wedge(&s.kappa);
                record((rebuilt - beta.clone()).max_abs_coeff(), "4-form reassembly");
                record(
                    (d4.part6_factor.wedge(&s.omega) - d4.part6.clone()).max_abs_coeff(),
                    "Λ⁴₆ factors through ∧Ω",
                );
                record(lambda2_8_residual(s, &d4.part8), "Λ⁴₈ factor lies in Λ²₈");
                record(
                    (s.sympl_star(&d4.part8.wedge(&s.kappa)) + d4.part8.clone())
                        .max_abs_coeff(),
                    "★(ρ∧κ) = −ρ on the recovered factor",
                );
            }
            Err(e) => {
                record(f64::INFINITY, &format!("4-form decomposition error: {e}"));
            }
        }

        // Star-operator identities on the structure forms and on Λ²₈.
        let kappa2 = s.kappa.wedge(&s.kappa);
        record(
            (s.sympl_star(&s.kappa) - kappa2.scale(&0.5)).max_abs_coeff(),
            "★κ = ½κ²",
        );
        record(
            (s.sympl_star(&kappa2) - s.kappa.scale(&2.0)).max_abs_coeff(),
            "★κ² = 2κ",
        );
        record(
            (s.sympl_star(&s.omega) + s.omega.clone()).max_abs_coeff(),
            "★Ω = −Ω",
        );
        record(
            (s.sympl_star(&s.j_omega) + s.j_omega.clone()).max_abs_coeff(),
            "★JΩ = −JΩ",
        );
        let beta8 = project_e1(s, &random_form(&mut rng, 2));
        record(
            (s.sympl_star(&beta8.wedge(&s.kappa)) + beta8.clone()).max_abs_coeff(),
            "★(ρ∧κ) = −ρ on Λ²₈",
        );
        let alpha1 = random_form(&mut rng, 1);
        let gamma6 = alpha1.wedge(&s.kappa);
        record(
            (s.sympl_star(&gamma6) - gamma6.clone()).max_abs_coeff(),
            "Λ³₆ fixed by ★",
        );
        // *(κ²∧*(β∧β)) = −2|β|² for β ∈ Λ²₈.
        let square = beta8.wedge(&beta8);
        let lhs = s.hodge_star(&kappa2.wedge(&s.hodge_star(&square)));
        let rhs = -2.0 * s.norm_sq(&beta8);
        record((lhs.coeff(&[]) - rhs).abs(), "*(κ²∧*(β∧β)) = −2|β|²");
    }
    let mut r = SuiteResult::new("decomposition", samples.len(), worst, DECOMP_TOL);
    r.detail =
        "projector ranks (1,6,8)/(1,1,6,12), reassembly, memberships, idempotence, orthogonality, star identities".into();
    r.counterexample = counterexample;
    r
}

fn suite_bryant(samples: &[Sample]) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let mut counterexample = None;
    // Exact fixtures first: every residual must vanish literally.
    for alg in SampleAlgebra::all() {
        let f: LieFrame<Q> = fixture_frame(alg);
        let s = standard_structure::<Q>(0.0).expect("standard structure");
        match bryant_identity_check(&s, &f) {
            Ok(r) => {
                if r != 0.0 && counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"bryant-identities\",\"case\":\"exact {}\",\"residual\":{:e}}}",
                        alg.label(),
                        r
                    ));
                }
                worst = worst.max(r);
            }
            Err(e) => {
                worst = f64::INFINITY;
                if counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"bryant-identities\",\"case\":\"exact {}\",\"error\":\"{}\"}}",
                        alg.label(),
                        e
                    ));
                }
            }
        }
    }
    for smp in samples {
        match bryant_identity_check(&smp.structure, &smp.frame) {
            Ok(r) => {
                if r > IDENTITY_TOL && counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"bryant-identities\",\"algebra\":\"{}\",\"index\":{},\"residual\":{:e}}}",
                        smp.algebra.label(),
                        smp.index,
                        r
                    ));
                }
                worst = worst.max(r);
            }
            Err(e) => {
                worst = f64::INFINITY;
                if counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"bryant-identities\",\"algebra\":\"{}\",\"index\":{},\"error\":\"{}\"}}",
                        smp.algebra.label(),
                        smp.index,
                        e
                    ));
                }
            }
        }
    }
    let mut r = SuiteResult::new("bryant-identities", samples.len() + 3, worst, IDENTITY_TOL);
    r.detail =
        "5-form exchange identity chain and the degree-r star splitting identity on random pairs"
            .into();
    r.counterexample = counterexample;
    r
}

fn suite_curvature_identities(samples: &[Sample]) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let mut counterexample = None;
    for smp in samples {
        let s = &smp.structure;
        let f = &smp.frame;
        let outcome = (|| -> Result<f64> {
            let fu = f.change_basis(&s.adapted, s.tol)?;
            let ident: Mat<f64> = Mat::identity(DIM);
            let psi = koszul_connection(&fu, &ident, s.tol)?;
            let conn = decompose_connection(&s.tables, &psi, s.tol)?;
            let curv = curvature(&fu, &psi, s.tol)?;
            let d = d_quantities(&s.tables, &fu, &conn, &curv, s.tol)?;
            let mut r = bianchi_residual(&s.tables, &d);
            r = r.max(curvature_split_residual(&s.tables, &curv, &d));
            let ric_pred = trace_identity_ricci(&s.tables, &d);
            for i in 0..DIM {
                for j in 0..DIM {
                    r = r.max((ric_pred.at(i, j) - curv.ric.at(i, j)).abs());
                }
            }
            r = r.max(bracket_identity_residual(&s.tables, &conn));
            let tilde = hermitian_connection(&psi);
            r = r.max(hermitian_invariance_residual(&tilde));
            r = r.max(structure_derivative_residual(&s.tables, &fu, &conn));
            Ok(r)
        })();
        let r = match outcome {
            Ok(r) => r,
            Err(e) => {
                if counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"curvature-identities\",\"algebra\":\"{}\",\"index\":{},\"error\":\"{}\"}}",
                        smp.algebra.label(),
                        smp.index,
                        e
                    ));
                }
                f64::INFINITY
            }
        };
        if r > IDENTITY_TOL && counterexample.is_none() {
            counterexample = Some(format!(
                "{{\"suite\":\"curvature-identities\",\"algebra\":\"{}\",\"index\":{},\"residual\":{:e}}}",
                smp.algebra.label(),
                smp.index,
                r
            ));
        }
        worst = worst.max(r);
    }
    let mut r = SuiteResult::new("curvature-identities", samples.len(), worst, IDENTITY_TOL);
    r.detail = "first Bianchi identity, curvature splitting, Ricci trace identity, bracket and Hermitian-invariance checks, structure-form derivatives".into();
    r.counterexample = counterexample;
    r
}

/// Compare each quadratic norm/divergence expansion in the connection tables
/// (T, M, and the derived S/V tables) against the value computed from the
/// extracted torsion forms. Returns (name, residual) rows.
pub fn norm_expansion_rows<S: Scalar>(
    s: &SU3Structure<S>,
    f: &LieFrame<S>,
) -> Result<Vec<(&'static str, f64)>> {
    let su = standard_structure::<S>(s.tol)?;
    let fu = f.change_basis(&s.adapted, s.tol)?;
    let ident: Mat<S> = Mat::identity(DIM);
    let psi = koszul_connection(&fu, &ident, s.tol)?;
    let conn = decompose_connection(&s.tables, &psi, s.tol)?;
    let curv = curvature(&fu, &psi, s.tol)?;
    let d = d_quantities(&s.tables, &fu, &conn, &curv, s.tol)?;
    let t = extract_torsion(s, f)?;
    let tu = t.to_adapted(s);
    let tab = &s.tables;
    let tm = &conn.t_mat;

    // Scalar contractions of the tables.
    let mut trt = S::zero();
    let mut kt = S::zero();
    let mut t2 = S::zero();
    let mut ttt = S::zero();
    for i in 0..DIM {
        trt += tm.at(i, i).clone();
        for j in 0..DIM {
            kt += tab.kap(i, j).clone() * tm.at(i, j).clone();
            t2 += tm.at(i, j).clone() * tm.at(i, j).clone();
            ttt += tm.at(i, j).clone() * tm.at(j, i).clone();
        }
    }
    // u_a = ε_{ija} T_{ij}; the ε-square contraction A = Σ_a u_a².
    let mut a_sum = S::zero();
    for a in 0..DIM {
        let mut u = S::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                u += tab.eps(i, j, a).clone() * tm.at(i, j).clone();
            }
        }
        a_sum += u.clone() * u;
    }
    // κκTT contractions in the three index patterns that appear.
    let mut b1 = S::zero();
    let mut b2 = S::zero();
    let mut c_sum = S::zero();
    for i in 0..DIM {
        for j in 0..DIM {
            for r in 0..DIM {
                for w in 0..DIM {
                    let tt_rw = tm.at(r, w).clone();
                    b1 += tab.kap(j, r).clone()
                        * tab.kap(i, w).clone()
                        * tm.at(i, j).clone()
                        * tt_rw.clone();
                    b2 += tab.kap(i, r).clone()
                        * tab.kap(j, w).clone()
                        * tm.at(i, j).clone()
                        * tt_rw.clone();
                    c_sum += tab.kap(i, r).clone()
                        * tab.kap(j, w).clone()
                        * tm.at(i, j).clone()
                        * tm.at(w, r).clone();
                }
            }
        }
    }
    // Mixed T·M, ε·S, κ·V, M² contractions.
    let mut ebtm = S::zero();
    let mut es = S::zero();
    let mut kv = S::zero();
    let mut m2 = S::zero();
    for i in 0..DIM {
        m2 += conn.m_vec[i].clone() * conn.m_vec[i].clone();
        for j in 0..DIM {
            kv += tab.kap(i, j).clone() * d.v2.at(i, j).clone();
            for k in 0..DIM {
                ebtm += tab.eps_bar(i, j, k).clone()
                    * tm.at(i, j).clone()
                    * conn.m_vec[k].clone();
                es += tab.eps(i, j, k).clone() * d.s3.at(i, j, k).clone();
            }
        }
    }

    let four_ninth = S::from_ratio(4, 9);
    let four_third = S::from_ratio(4, 3);
    let four = S::from_int(4);
    let two = S::from_int(2);
    let three = S::from_int(3);

    let mut rows: Vec<(&'static str, f64)> = Vec::new();
    let mut push = |name: &'static str, lhs: S, rhs: S| {
        rows.push((name, (lhs - rhs).to_f64().abs()));
    };

    push(
        "pi0^2",
        tu.pi0.clone() * tu.pi0.clone(),
        four_ninth.clone() * trt.clone() * trt.clone(),
    );
    push(
        "sigma0^2",
        tu.sigma0.clone() * tu.sigma0.clone(),
        four_ninth * kt.clone() * kt.clone(),
    );
    push(
        "|pi2|^2",
        su.norm_sq(&tu.pi2),
        four.clone() * t2.clone() - four_third.clone() * trt.clone() * trt.clone()
            - two.clone() * a_sum.clone()
            + four.clone() * c_sum,
    );
    push(
        "|sigma2|^2",
        su.norm_sq(&tu.sigma2),
        four.clone() * t2.clone()
            - four.clone() * ttt.clone()
            - four_third * kt.clone() * kt.clone()
            - two.clone() * a_sum.clone(),
    );
    push("|nu1|^2", su.norm_sq(&tu.nu1), a_sum.clone());
    push(
        "|nu3|^2",
        su.norm_sq(&tu.nu3),
        two.clone() * t2 + two.clone() * ttt - two.clone() * b1 - two.clone() * b2,
    );
    let div_pi1 = codifferential(&su, &fu, &tu.pi1).coeff(&[]);
    push(
        "div pi1",
        div_pi1,
        -a_sum.clone() + four * ebtm.clone() - es.clone() - three.clone() * kv
            - three.clone() * m2,
    );
    let div_nu1 = codifferential(&su, &fu, &tu.nu1).coeff(&[]);
    push("div nu1", div_nu1, -a_sum.clone() + ebtm.clone() - es);
    push(
        "<pi1,nu1>",
        su.pair(&tu.pi1, &tu.nu1),
        a_sum - three * ebtm,
    );
    Ok(rows)
}

fn suite_norm_expansions(samples: &[Sample]) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let mut counterexample = None;
    for smp in samples {
        match norm_expansion_rows(&smp.structure, &smp.frame) {
            Ok(rows) => {
                for (name, r) in rows {
                    if r > IDENTITY_TOL && counterexample.is_none() {
                        counterexample = Some(format!(
                            "{{\"suite\":\"norm-expansions\",\"algebra\":\"{}\",\"index\":{},\"row\":\"{}\",\"residual\":{:e}}}",
                            smp.algebra.label(),
                            smp.index,
                            name,
                            r
                        ));
                    }
                    worst = worst.max(r);
                }
            }
            Err(e) => {
                worst = f64::INFINITY;
                if counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"norm-expansions\",\"algebra\":\"{}\",\"index\":{},\"error\":\"{}\"}}",
                        smp.algebra.label(),
                        smp.index,
                        e
                    ));
                }
            }
        }
    }
    let mut r = SuiteResult::new("norm-expansions", samples.len(), worst, IDENTITY_TOL);
    r.detail =
        "quadratic expansions of the torsion norms, divergences, and ⟨π₁,ν₁⟩ in the connection tables".into();
    r.counterexample = counterexample;
    r
}

fn suite_pullback(samples: &[Sample]) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let mut counterexample = None;
    for smp in samples {
        let r = match pullback_consistency_residual(&smp.structure, &smp.frame) {
            Ok(r) => r,
            Err(e) => {
                if counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"pullback-consistency\",\"algebra\":\"{}\",\"index\":{},\"error\":\"{}\"}}",
                        smp.algebra.label(),
                        smp.index,
                        e
                    ));
                }
                f64::INFINITY
            }
        };
        if r > IDENTITY_TOL && counterexample.is_none() {
            counterexample = Some(format!(
                "{{\"suite\":\"pullback-consistency\",\"algebra\":\"{}\",\"index\":{},\"residual\":{:e}}}",
                smp.algebra.label(),
                smp.index,
                r
            ));
        }
        worst = worst.max(r);
    }
    let mut r = SuiteResult::new("pullback-consistency", samples.len(), worst, IDENTITY_TOL);
    r.detail = "torsion forms read off the connection tables agree with the differential-form extraction".into();
    r.counterexample = counterexample;
    r
}

fn suite_richard(seed: u64) -> SuiteResult {
    let su = standard_structure::<Q>(0.0).expect("standard structure");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51CA_0002);
    let mut counterexample = None;
    let mut tested = 0usize;
    let trials = 1000usize;
    for _ in 0..trials {
        // Draw a small integer 2-form, project onto Λ²₈, redraw if zero.
        let alpha = loop {
            let mut raw = KForm::<Q>::zero(2);
            for mask in degree_masks(2) {
                let c: i64 = rng.gen_range(-3..=3);
                raw += &KForm::term(Q::from_int(c), &mask_indices(mask));
            }
            let candidate = project_e1(&su, &raw);
            if !candidate.is_zero() {
                break candidate;
            }
        };
        tested += 1;
        match richard_residual(&su, &alpha) {
            Ok(r) => {
                if !r.is_positive() && counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"richard-positivity\",\"trial\":{},\"alpha\":\"{}\",\"residual\":\"{}\"}}",
                        tested, alpha, r
                    ));
                }
            }
            Err(e) => {
                if counterexample.is_none() {
                    counterexample = Some(format!(
                        "{{\"suite\":\"richard-positivity\",\"trial\":{},\"error\":\"{}\"}}",
                        tested, e
                    ));
                }
            }
        }
    }
    // Degenerate-direction corollary, exact: on the closed-torsion fixture
    // the Einstein residual with vanishing 2-form π-torsion is nonzero
    // whenever the σ-torsion is nonzero, and vanishes on the flat torus.
    let nil: LieFrame<Q> = fixture_frame(SampleAlgebra::Nilpotent);
    let s = standard_structure::<Q>(0.0).expect("standard structure");
    let sigma2 = {
        let mut f = KForm::<Q>::term(Q::one(), &[5, 6]);
        f += &KForm::term(-Q::one(), &[3, 4]);
        f
    };
    let pi2 = KForm::<Q>::zero(2);
    match einstein_residual(&s, &nil, &pi2, &sigma2) {
        Ok((r4, r3)) => {
            if r4.is_zero() && r3.is_zero() && counterexample.is_none() {
                counterexample = Some(
                    "{\"suite\":\"richard-positivity\",\"case\":\"einstein residual vanished with nonzero σ₂\"}".into(),
                );
            }
        }
        Err(e) => {
            if counterexample.is_none() {
                counterexample = Some(format!(
                    "{{\"suite\":\"richard-positivity\",\"case\":\"nilpotent einstein residual\",\"error\":\"{}\"}}",
                    e
                ));
            }
        }
    }
    let torus: LieFrame<Q> = fixture_frame(SampleAlgebra::Abelian);
    match einstein_residual(&s, &torus, &KForm::zero(2), &KForm::zero(2)) {
        Ok((r4, r3)) => {
            if (!r4.is_zero() || !r3.is_zero()) && counterexample.is_none() {
                counterexample = Some(
                    "{\"suite\":\"richard-positivity\",\"case\":\"einstein residual nonzero on the flat torus\"}".into(),
                );
            }
        }
        Err(e) => {
            if counterexample.is_none() {
                counterexample = Some(format!(
                    "{{\"suite\":\"richard-positivity\",\"case\":\"torus einstein residual\",\"error\":\"{}\"}}",
                    e
                ));
            }
        }
    }
    let pass = counterexample.is_none();
    SuiteResult {
        name: "richard-positivity",
        samples: tested + 2,
        max_residual: if pass { 0.0 } else { f64::INFINITY },
        bound: 0.0,
        pass,
        detail: format!(
            "{} exact random nonzero elements of Λ²₈ all have positive degeneracy residual; Einstein residual vanishes only with vanishing 2-form torsion",
            tested
        ),
        counterexample,
    }
}

fn suite_gcy_sign(opts: &VerifyOptions) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let mut counterexample = None;
    let mut cases = 0usize;
    let fail = |msg: String, counterexample: &mut Option<String>| {
        if counterexample.is_none() {
            *counterexample = Some(format!(
                "{{\"suite\":\"closed-sign-law\",\"case\":\"{}\"}}",
                msg
            ));
        }
    };

    // Exact phase-rotated family: closed κ, torsion only in the two
    // effective 2-form channels, scalar curvature −1 for every rotation.
    let rotations: [((i64, i64), (i64, i64)); 4] =
        [((3, 5), (4, 5)), ((5, 13), (12, 13)), ((0, 1), (1, 1)), ((-4, 5), (3, 5))];
    for (c, si) in rotations {
        cases += 1;
        let outcome = (|| -> Result<()> {
            let (f, s) = rotated_nil_pair::<Q>(c, si, 0.0)?;
            let t = extract_torsion(&s, &f)?;
            let flags = t.vanishing(0.0);
            if !(flags.pi0 && flags.sigma0 && flags.pi1 && flags.nu1 && flags.nu3) {
                return Err(Su3Error::Inconsistency(
                    "rotated sample has unexpected torsion channels".into(),
                ));
            }
            let s_formula = scalar_curvature_from_torsion(&s, &f, &t);
            let predicted = -(s.norm_sq(&t.sigma2) + s.norm_sq(&t.pi2)) * Q::from_ratio(1, 2);
            if s_formula != predicted {
                return Err(Su3Error::Inconsistency(format!(
                    "sign law violated: s = {s_formula}, −½(|σ₂|²+|π₂|²) = {predicted}"
                )));
            }
            if s_formula != -Q::one() {
                return Err(Su3Error::Inconsistency(format!(
                    "rotation should preserve s = −1, got {s_formula}"
                )));
            }
            let (_, s_oracle) = oracle_ricci(&s, &f)?;
            if s_formula != s_oracle {
                return Err(Su3Error::Inconsistency(
                    "formula and oracle scalar curvature disagree on rotated sample".into(),
                ));
            }
            // The closed-structure Ricci path must agree with the general one.
            let ric_general = ricci_from_torsion(&s, &f, &t)?;
            let ric_closed = gcy_ricci(&s, &f, &t.pi2, &t.sigma2)?;
            for i in 0..DIM {
                for j in 0..DIM {
                    if ric_general.at(i, j) != ric_closed.at(i, j) {
                        return Err(Su3Error::Inconsistency(
                            "closed-path Ricci differs from the general path".into(),
                        ));
                    }
                }
            }
            let report = classify(&t, 0.0);
            if !report.satisfied.contains(&StructureClass::Gcy) {
                return Err(Su3Error::Inconsistency(format!(
                    "rotated sample not classified as closed type: {}",
                    report.label
                )));
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            worst = f64::INFINITY;
            fail(format!("rotation {c:?}/{si:?}: {e}"), &mut counterexample);
        }
    }

    // Float family with closed Ω perturbations: only σ₂ survives, so the
    // sign law reads s = −½|σ₂|² ≤ 0.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x0C10_5ED0);
    let frame: LieFrame<f64> = fixture_frame(SampleAlgebra::Nilpotent);
    let n = opts.samples.clamp(4, 12);
    for _ in 0..n {
        cases += 1;
        let outcome = (|| -> Result<f64> {
            let s = closed_perturbation_structure(&mut rng, &frame, opts.tol)?;
            let t = extract_torsion(&s, &frame)?;
            let s_formula = scalar_curvature_from_torsion(&s, &frame, &t);
            let predicted = -0.5 * (s.norm_sq(&t.sigma2) + s.norm_sq(&t.pi2));
            let r = (s_formula - predicted).abs();
            if s_formula > opts.tol {
                return Err(Su3Error::Inconsistency(format!(
                    "closed sample has positive scalar curvature {s_formula}"
                )));
            }
            if s.norm_sq(&t.sigma2) + s.norm_sq(&t.pi2) > 1e-6 && s_formula > -1e-12 {
                return Err(Su3Error::Inconsistency(
                    "scalar curvature vanished with nonzero effective torsion".into(),
                ));
            }
            Ok(r)
        })();
        match outcome {
            Ok(r) => {
                if r > opts.tol {
                    fail(format!("closed perturbation residual {r:e}"), &mut counterexample);
                }
                worst = worst.max(r);
            }
            Err(e) => {
                worst = f64::INFINITY;
                fail(format!("closed perturbation: {e}"), &mut counterexample);
            }
        }
    }

    // Equality case: the flat torus has zero torsion and zero curvature.
    cases += 1;
    {
        let f: LieFrame<Q> = fixture_frame(SampleAlgebra::Abelian);
        let s = standard_structure::<Q>(0.0).expect("standard structure");
        let t = extract_torsion(&s, &f).expect("torus extraction");
        let s_formula = scalar_curvature_from_torsion(&s, &f, &t);
        if !(t.max_abs() == 0.0 && s_formula.is_zero()) {
            worst = f64::INFINITY;
            fail("flat torus equality case".into(), &mut counterexample);
        }
    }

    let mut r = SuiteResult::new("closed-sign-law", cases, worst, opts.tol);
    r.detail = "scalar curvature of closed-κ, torsion-reduced samples is −½(|σ₂|²+|π₂|²) ≤ 0, zero only with vanishing torsion; closed-path Ricci agrees with the general path".into();
    r.counterexample = counterexample;
    r.pass = r.pass && r.counterexample.is_none();
    r
}

// ---------------------------------------------------------------------------
// Ambiguous-reading calibration
// ---------------------------------------------------------------------------

fn reading_label(r: DerivReading) -> &'static str {
    match r {
        DerivReading::DStar => "d*",
        DerivReading::Codifferential => "codiff",
    }
}

/// One row of the reading-calibration table: a candidate interpretation of
/// the ambiguous derivative terms in the Ricci expression, with its worst
/// formula-vs-oracle residual over the discriminating samples.
#[derive(Debug, Clone)]
pub struct CalibrationRow {
    pub label: String,
    pub is_default: bool,
    pub max_residual: f64,
    pub pass: bool,
}

/// Evaluate all sixteen candidate readings of the three ambiguous derivative
/// terms (each either d∘* or the codifferential) and the placement of J on
/// the π₁ term, against the Levi-Civita oracle over the given samples.
pub fn phi2_reading_table(samples: &[Sample], tol: f64) -> Vec<CalibrationRow> {
    let readings = [DerivReading::DStar, DerivReading::Codifferential];
    let default_cfg = RicciConfig::<f64>::standard();
    // Per-sample torsion and oracle, computed once.
    let mut prepared = Vec::new();
    for smp in samples {
        if smp.algebra == SampleAlgebra::Abelian {
            continue; // no torsion, cannot discriminate
        }
        let t = match extract_torsion(&smp.structure, &smp.frame) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let oracle = match oracle_ricci(&smp.structure, &smp.frame) {
            Ok((ric, _)) => ric,
            Err(_) => continue,
        };
        prepared.push((smp, t, oracle));
    }
    let mut rows = Vec::new();
    for &xa in &readings {
        for &xb in &readings {
            for &xc in &readings {
                for &jo in &[true, false] {
                    let cfg = RicciConfig {
                        x_a: xa,
                        x_b: xb,
                        x_c: xc,
                        j_outside: jo,
                        iota_scale: 2.0,
                    };
                    let mut worst: f64 = 0.0;
                    for (smp, t, oracle) in &prepared {
                        let r = match full_ricci_from_torsion(&smp.structure, &smp.frame, t, &cfg)
                        {
                            Ok((ric, _)) => {
                                let mut r: f64 = 0.0;
                                for i in 0..DIM {
                                    for j in 0..DIM {
                                        r = r.max((ric.at(i, j) - oracle.at(i, j)).abs());
                                    }
                                }
                                r
                            }
                            Err(_) => f64::INFINITY,
                        };
                        worst = worst.max(r);
                    }
                    let is_default = xa == default_cfg.x_a
                        && xb == default_cfg.x_b
                        && xc == default_cfg.x_c
                        && jo == default_cfg.j_outside;
                    rows.push(CalibrationRow {
                        label: format!(
                            "a={} b={} c={} j-{}",
                            reading_label(xa),
                            reading_label(xb),
                            reading_label(xc),
                            if jo { "outside" } else { "inside" }
                        ),
                        is_default,
                        max_residual: worst,
                        pass: worst <= tol,
                    });
                }
            }
        }
    }
    rows
}

fn suite_phi2_reading(samples: &[Sample], opts: &VerifyOptions) -> SuiteResult {
    let rows = phi2_reading_table(samples, opts.tol);
    let default_row = rows.iter().find(|r| r.is_default).cloned();
    let winners: Vec<&CalibrationRow> = rows.iter().filter(|r| r.pass).collect();
    let (max_residual, pass, counterexample) = match &default_row {
        Some(row) if row.pass => (row.max_residual, true, None),
        Some(row) => (
            row.max_residual,
            false,
            Some(format!(
                "{{\"suite\":\"derivative-readings\",\"default\":\"{}\",\"residual\":{:e}}}",
                row.label, row.max_residual
            )),
        ),
        None => (f64::INFINITY, false, Some(
            "{\"suite\":\"derivative-readings\",\"error\":\"default reading missing from table\"}"
                .into(),
        )),
    };
    let mut others: Vec<String> = winners
        .iter()
        .filter(|r| !r.is_default)
        .map(|r| r.label.clone())
        .collect();
    others.sort();
    let detail = match &default_row {
        Some(row) => format!(
            "pinned reading [{}] residual {:.2e}; {} of {} candidate readings pass{}",
            row.label,
            row.max_residual,
            winners.len(),
            rows.len(),
            if others.is_empty() {
                "; all alternatives refuted".to_string()
            } else {
                format!("; observationally equivalent: {}", others.join(", "))
            }
        ),
        None => "default reading missing".into(),
    };
    SuiteResult {
        name: "derivative-readings",
        samples: samples.len(),
        max_residual,
        bound: opts.tol,
        pass,
        detail,
        counterexample,
    }
}

fn suite_mutations(samples: &[Sample], opts: &VerifyOptions) -> SuiteResult {
    // Oracle scalar per sample, once.
    let mut oracle_scalars = Vec::new();
    for smp in samples {
        if let Ok((_, s_o)) = oracle_ricci(&smp.structure, &smp.frame) {
            if let Ok(t) = extract_torsion(&smp.structure, &smp.frame) {
                oracle_scalars.push((smp, t, s_o));
            }
        }
    }
    let mut detail_parts = Vec::new();
    let mut all_detected = true;
    let mut counterexample = None;
    let mut min_deviation = f64::INFINITY;
    for fault in Fault::all() {
        let mut coeffs = ScalarCoefficients::<f64>::standard();
        fault.apply(&mut coeffs);
        let mut worst: f64 = 0.0;
        for (smp, t, s_o) in &oracle_scalars {
            let s_mut =
                scalar_curvature_with_coefficients(&smp.structure, &smp.frame, t, &coeffs);
            worst = worst.max((s_mut - s_o).abs());
        }
        let detected = worst > opts.tol;
        min_deviation = min_deviation.min(worst);
        detail_parts.push(format!(
            "{}: deviation {:.2e} ({})",
            fault.name(),
            worst,
            if detected { "detected" } else { "MISSED" }
        ));
        if !detected {
            all_detected = false;
            if counterexample.is_none() {
                counterexample = Some(format!(
                    "{{\"suite\":\"mutation-sensitivity\",\"fault\":\"{}\",\"max_deviation\":{:e}}}",
                    fault.name(),
                    worst
                ));
            }
        }
    }
    SuiteResult {
        name: "mutation-sensitivity",
        samples: oracle_scalars.len(),
        max_residual: if all_detected { 0.0 } else { f64::INFINITY },
        bound: 0.0,
        pass: all_detected,
        detail: format!(
            "every injected coefficient fault breaks oracle equality: {}",
            detail_parts.join("; ")
        ),
        counterexample,
    }
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Run every suite over a freshly drawn sample set. With `samples == 0` the
/// run is trivially empty and passes.
pub fn run_suites(opts: &VerifyOptions) -> Result<Vec<SuiteResult>> {
    if opts.samples == 0 {
        return Ok(Vec::new());
    }
    let samples = sample_set(opts.samples, opts.seed, ORACLE_TOL)?;
    Ok(vec![
        suite_epsilon(&samples),
        suite_torsion_relations(&samples),
        suite_oracle(&samples, opts),
        suite_decomposition(&samples, opts.seed),
        suite_bryant(&samples),
        suite_curvature_identities(&samples),
        suite_norm_expansions(&samples),
        suite_pullback(&samples),
        suite_richard(opts.seed),
        suite_gcy_sign(opts),
        suite_phi2_reading(&samples, opts),
        suite_mutations(&samples, opts),
    ])
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotated_family_is_exact_and_closed() {
        let (f, s) = rotated_nil_pair::<Q>((3, 5), (4, 5), 0.0).expect("rotation");
        let t = extract_torsion(&s, &f).expect("extraction");
        // π₂ = (4/5)(e⁵⁶ − e³⁴), σ₂ = (3/5)(e⁵⁶ − e³⁴).
        let mut base = KForm::<Q>::term(Q::one(), &[5, 6]);
        base += &KForm::term(-Q::one(), &[3, 4]);
        assert_eq!(t.pi2, base.scale(&Q::from_ratio(4, 5)));
        assert_eq!(t.sigma2, base.scale(&Q::from_ratio(3, 5)));
        let report = classify(&t, 0.0);
        assert_eq!(report.label, StructureClass::Gcy);
        assert!(report.satisfied.contains(&StructureClass::Symplectic));
        let s_formula = scalar_curvature_from_torsion(&s, &f, &t);
        assert_eq!(s_formula, -Q::one());
        let (ric_f, s_f) = full_ricci_from_torsion(&s, &f, &t, &RicciConfig::standard())
            .expect("formula Ricci");
        let (ric_o, s_o) = oracle_ricci(&s, &f).expect("oracle");
        assert_eq!(s_f, s_o);
        assert_eq!(ric_f, ric_o);
        // The quarter rotation moves all torsion into the dΩ channel.
        let (f2, s2) = rotated_nil_pair::<Q>((0, 1), (1, 1), 0.0).expect("quarter rotation");
        let t2 = extract_torsion(&s2, &f2).expect("extraction");
        assert!(t2.sigma2.is_zero());
        assert_eq!(t2.pi2, base);
        assert_eq!(scalar_curvature_from_torsion(&s2, &f2, &t2), -Q::one());
    }

    #[test]
    fn sample_set_is_deterministic_and_normalized() {
        let a = sample_set(3, 42, ORACLE_TOL).expect("samples");
        let b = sample_set(3, 42, ORACLE_TOL).expect("samples");
        assert_eq!(a.len(), 4 * 3);
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.structure.omega, y.structure.omega);
            assert_eq!(x.algebra, y.algebra);
        }
        let c = sample_set(3, 43, ORACLE_TOL).expect("samples");
        assert!(a
            .iter()
            .zip(c.iter())
            .any(|(x, y)| x.structure.omega != y.structure.omega));
        for smp in &a {
            assert!((smp.structure.det_p - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_perturbations_have_closed_omega() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let frame: LieFrame<f64> = fixture_frame(SampleAlgebra::Nilpotent);
        let s = closed_perturbation_structure(&mut rng, &frame, ORACLE_TOL).expect("sample");
        assert!(frame.ce_differential(&s.omega).max_abs_coeff() < 1e-10);
        let t = extract_torsion(&s, &frame).expect("extraction");
        let flags = t.vanishing(1e-9);
        assert!(flags.pi0 && flags.sigma0 && flags.pi1 && flags.nu1 && flags.pi2 && flags.nu3);
        assert!(!flags.sigma2, "perturbation should keep σ₂ nonzero");
    }

    #[test]
    fn norm_expansions_hold_on_exact_fixtures() {
        for alg in SampleAlgebra::all() {
            let f: LieFrame<Q> = fixture_frame(alg);
            let s = standard_structure::<Q>(0.0).expect("standard structure");
            let rows = norm_expansion_rows(&s, &f).expect("rows");
            for (name, r) in rows {
                assert_eq!(r, 0.0, "expansion {name} fails on {}", alg.label());
            }
        }
    }

    #[test]
    fn suites_pass_on_small_sample_set() {
        let opts = VerifyOptions {
            samples: 3,
            seed: 11,
            tol: ORACLE_TOL,
            fault: None,
        };
        let results = run_suites(&opts).expect("suites");
        assert_eq!(results.len(), 12);
        for r in &results {
            assert!(
                r.pass,
                "suite {} failed: residual {:e} (bound {:e}); detail: {}; counterexample: {:?}",
                r.name, r.max_residual, r.bound, r.detail, r.counterexample
            );
        }
    }

    #[test]
    fn injected_fault_is_detected() {
        let opts = VerifyOptions {
            samples: 2,
            seed: 5,
            tol: ORACLE_TOL,
            fault: Some(Fault::ScalarSigma2),
        };
        let results = run_suites(&opts).expect("suites");
        let oracle = results
            .iter()
            .find(|r| r.name == "oracle-equality")
            .expect("oracle suite present");
        assert!(!oracle.pass, "fault should break oracle equality");
        assert!(oracle.counterexample.is_some());
    }

    #[test]
    fn empty_run_passes_trivially() {
        let opts = VerifyOptions {
            samples: 0,
            seed: 1,
            tol: ORACLE_TOL,
            fault: None,
        };
        let results = run_suites(&opts).expect("suites");
        assert!(results.is_empty());
    }

    #[test]
    fn reading_table_pins_unique_default() {
        let samples = sample_set(4, 3, ORACLE_TOL).expect("samples");
        let rows = phi2_reading_table(&samples, ORACLE_TOL);
        assert_eq!(rows.len(), 16);
        let default_row = rows.iter().find(|r| r.is_default).expect("default row");
        assert!(
            default_row.pass,
            "default reading fails: residual {:e}",
            default_row.max_residual
        );
    }
}
