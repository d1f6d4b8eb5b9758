//! Ad-hoc calibration driver: isolates the formula-vs-oracle Ricci defect,
//! splits it into the ι (J-invariant) and γ (J-anti-invariant) channels, and
//! fits the missing 2-form / 3-form against candidate torsion monomials.

use su3torsion::decomp::{gamma, iota, project_e1, project_e2, split_symmetric};
use su3torsion::exterior::{degree_masks, KForm, DIM};
use su3torsion::frame::LieFrame;
use su3torsion::linalg::Mat;
use su3torsion::su3::{induced_structure, standard_kappa, standard_omega, SU3Structure};
use su3torsion::torsion::{
    extract_torsion, full_ricci_from_torsion, oracle_ricci, RicciConfig, TorsionForms,
};
use su3torsion::verify::{sample_set, SampleAlgebra};

type Cand = (&'static str, KForm<f64>);

fn two_form_candidates(
    su: &SU3Structure<f64>,
    fu: &LieFrame<f64>,
    t: &TorsionForms<f64>,
) -> Vec<Cand> {
    let j_pi1 = su.j_act(&t.pi1);
    let j_nu1 = su.j_act(&t.nu1);
    let j_nu3 = su.j_act(&t.nu3);
    let mut out: Vec<Cand> = vec![
        ("pi0*pi2", t.pi2.scale(&t.pi0)),
        ("pi0*sigma2", t.sigma2.scale(&t.pi0)),
        ("sigma0*pi2", t.pi2.scale(&t.sigma0)),
        ("sigma0*sigma2", t.sigma2.scale(&t.sigma0)),
        ("E1(nu1^pi1)", project_e1(su, &t.nu1.wedge(&t.pi1))),
        ("E1(nu1^Jpi1)", project_e1(su, &t.nu1.wedge(&j_pi1))),
        ("E1(Jnu1^pi1)", project_e1(su, &j_nu1.wedge(&t.pi1))),
        ("E1(*(nu3^pi1))", project_e1(su, &su.hodge_star(&t.nu3.wedge(&t.pi1)))),
        ("E1(*(nu3^Jpi1))", project_e1(su, &su.hodge_star(&t.nu3.wedge(&j_pi1)))),
        ("E1(*(Jnu3^pi1))", project_e1(su, &su.hodge_star(&j_nu3.wedge(&t.pi1)))),
        ("E1(*(nu3^nu1))", project_e1(su, &su.hodge_star(&t.nu3.wedge(&t.nu1)))),
        ("E1(d(pi1))", project_e1(su, &fu.ce_differential(&t.pi1))),
        ("E1(d(nu1))", project_e1(su, &fu.ce_differential(&t.nu1))),
    ];
    out.retain(|(_, f)| f.max_abs_coeff() > 1e-14);
    out
}

fn three_form_candidates(
    su: &SU3Structure<f64>,
    fu: &LieFrame<f64>,
    t: &TorsionForms<f64>,
) -> Vec<Cand> {
    let j_pi1 = su.j_act(&t.pi1);
    let j_nu1 = su.j_act(&t.nu1);
    let j_nu3 = su.j_act(&t.nu3);
    let mut out: Vec<Cand> = vec![
        ("pi0*nu3", t.nu3.scale(&t.pi0)),
        ("sigma0*nu3", t.nu3.scale(&t.sigma0)),
        ("pi0*Jnu3", j_nu3.scale(&t.pi0)),
        ("sigma0*Jnu3", j_nu3.scale(&t.sigma0)),
        ("E2(pi2^nu1)", project_e2(su, &t.pi2.wedge(&t.nu1))),
        ("E2(sigma2^nu1)", project_e2(su, &t.sigma2.wedge(&t.nu1))),
        ("E2(pi2^Jnu1)", project_e2(su, &t.pi2.wedge(&j_nu1))),
        ("E2(sigma2^Jnu1)", project_e2(su, &t.sigma2.wedge(&j_nu1))),
        ("E2(pi2^pi1)", project_e2(su, &t.pi2.wedge(&t.pi1))),
        ("E2(sigma2^pi1)", project_e2(su, &t.sigma2.wedge(&t.pi1))),
        ("E2(pi2^Jpi1)", project_e2(su, &t.pi2.wedge(&j_pi1))),
        ("E2(sigma2^Jpi1)", project_e2(su, &t.sigma2.wedge(&j_pi1))),
        ("E2(d(pi2))", project_e2(su, &fu.ce_differential(&t.pi2))),
        ("E2(d(sigma2))", project_e2(su, &fu.ce_differential(&t.sigma2))),
        ("E2(*d(pi2))", project_e2(su, &su.hodge_star(&fu.ce_differential(&t.pi2)))),
        ("E2(*d(sigma2))", project_e2(su, &su.hodge_star(&fu.ce_differential(&t.sigma2)))),
    ];
    out.retain(|(_, f)| f.max_abs_coeff() > 1e-14);
    out
}

/// Least-squares fit target ≈ Σ c_i cand_i over stacked samples; returns
/// (coefficients, rms residual after fit).
fn fit(stacked: &[(Vec<Cand>, KForm<f64>)], degree: usize) -> (Vec<(String, f64)>, f64) {
    // Union of candidate names across samples (some vanish on some samples).
    let mut names: Vec<String> = Vec::new();
    for (cands, _) in stacked {
        for (n, _) in cands {
            if !names.iter().any(|x| x == n) {
                names.push((*n).to_string());
            }
        }
    }
    let masks = degree_masks(degree);
    let rows_per = masks.len();
    let nrows = rows_per * stacked.len();
    let ncols = names.len();
    let mut b = Mat::<f64>::zeros(nrows, ncols);
    let mut y = vec![0.0f64; nrows];
    for (si, (cands, target)) in stacked.iter().enumerate() {
        for (mi, &m) in masks.iter().enumerate() {
            let row = si * rows_per + mi;
            y[row] = target.coeff_mask(m);
            for (ci, name) in names.iter().enumerate() {
                if let Some((_, f)) = cands.iter().find(|(n, _)| n == name) {
                    *b.at_mut(row, ci) = f.coeff_mask(m);
                }
            }
        }
    }
    // Normal equations.
    let mut btb = Mat::<f64>::zeros(ncols, ncols);
    let mut bty = vec![0.0f64; ncols];
    for i in 0..ncols {
        for j in 0..ncols {
            let mut acc = 0.0;
            for r in 0..nrows {
                acc += b.at(r, i) * b.at(r, j);
            }
            *btb.at_mut(i, j) = acc;
        }
        let mut acc = 0.0;
        for r in 0..nrows {
            acc += b.at(r, i) * y[r];
        }
        bty[i] = acc;
    }
    // Ridge for near-collinear candidates.
    for i in 0..ncols {
        *btb.at_mut(i, i) += 1e-12;
    }
    let c = btb.solve_vec(&bty, 1e-13).unwrap_or_else(|| vec![0.0; ncols]);
    let mut rss = 0.0f64;
    for r in 0..nrows {
        let mut pred = 0.0;
        for i in 0..ncols {
            pred += c[i] * b.at(r, i);
        }
        rss += (y[r] - pred) * (y[r] - pred);
    }
    let rms = (rss / nrows as f64).sqrt();
    (
        names.into_iter().zip(c).collect(),
        rms,
    )
}

fn main() {
    let samples = sample_set(6, 11, 1e-8).expect("samples");
    let su = induced_structure(
        &standard_kappa::<f64>(),
        &standard_omega::<f64>(),
        false,
        1e-8,
    )
    .expect("standard structure");

    let mut stacked2: Vec<(Vec<Cand>, KForm<f64>)> = Vec::new();
    let mut stacked3: Vec<(Vec<Cand>, KForm<f64>)> = Vec::new();

    for smp in &samples {
        if smp.algebra != SampleAlgebra::Heisenberg
            && smp.algebra != SampleAlgebra::DoubleHeisenberg
        {
            continue;
        }
        let s = &smp.structure;
        let f = &smp.frame;
        let t = extract_torsion(s, f).expect("torsion");
        let tu = t.to_adapted(s);
        let fu = f.change_basis(&s.adapted, s.tol).expect("adapted frame");
        let cfg = RicciConfig::<f64>::standard();
        let (ric_f, _) = full_ricci_from_torsion(s, f, &t, &cfg).expect("formula");
        let (ric_o, _) = oracle_ricci(s, f).expect("oracle");
        let delta = ric_f.sub(&ric_o);
        // Pull the defect to adapted coordinates: Ric_orig = Aᵀ Ric_u A.
        let ai = &s.adapted_inv;
        let delta_u = ai.transpose().matmul(&delta).matmul(ai);
        let split = split_symmetric(&delta_u).expect("split");
        let corr2 = iota(&su.tables, &split.plus).scale(&-0.5);
        let corr3 = gamma(&su.tables, &split.minus).scale(&-1.0);
        println!(
            "== {} #{}: |trace| {:.2e}  |corr2| {:.3e}  |corr3| {:.3e}",
            smp.algebra.label(),
            smp.index,
            split.trace_coeff.abs(),
            corr2.max_abs_coeff(),
            corr3.max_abs_coeff()
        );
        stacked2.push((two_form_candidates(&su, &fu, &tu), corr2));
        stacked3.push((three_form_candidates(&su, &fu, &tu), corr3));
    }

    println!("\n=== fit of the E1-channel correction (2-form) ===");
    let (c2, rms2) = fit(&stacked2, 2);
    for (n, c) in &c2 {
        if c.abs() > 1e-6 {
            println!("  {:+.6}  {}", c, n);
        }
    }
    println!("  rms after fit: {:.3e}", rms2);

    println!("\n=== fit of the E2-channel correction (3-form) ===");
    let (c3, rms3) = fit(&stacked3, 3);
    for (n, c) in &c3 {
        if c.abs() > 1e-6 {
            println!("  {:+.6}  {}", c, n);
        }
    }
    println!("  rms after fit: {:.3e}", rms3);

    let _ = DIM;
}
