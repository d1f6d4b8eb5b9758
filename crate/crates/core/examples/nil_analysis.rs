//! End-to-end drive of the public library surface on the nilpotent example:
//! build the structure exactly, extract torsion, classify, and compare the
//! torsion-formula curvature against the Levi-Civita oracle. Also probes the
//! typed rejection paths (non-positive Ω, Jacobi violation).

use num::BigRational;
use su3torsion::exterior::KForm;
use su3torsion::frame::LieFrame;
use su3torsion::scalar::Scalar;
use su3torsion::su3::{induced_structure, standard_kappa, standard_omega, Su3Error};
use su3torsion::torsion::{
    classify, extract_torsion, full_ricci_from_torsion, oracle_ricci, RicciConfig,
};

type R = BigRational;

fn main() {
    // Nilpotent algebra: [X1,X3] = -X6, [X1,X5] = -X4 (so dα4 = α15, dα6 = α13).
    let frame: LieFrame<R> = LieFrame::new(&[
        (1, 3, 6, -R::one()),
        (1, 5, 4, -R::one()),
    ])
    .expect("bracket table satisfies Jacobi");

    let kappa: KForm<R> = standard_kappa();
    let omega: KForm<R> = standard_omega();
    let s = induced_structure(&kappa, &omega, false, 0.0).expect("positive structure");

    let t = extract_torsion(&s, &frame).expect("torsion extraction");
    let report = classify(&t, 0.0);
    println!("class: {}", report.label);
    println!("sigma2 = {}", t.sigma2);
    let v = t.vanishing(0.0);
    println!(
        "vanishing: pi0={} sigma0={} pi1={} nu1={} pi2={} sigma2={} nu3={}",
        v.pi0, v.sigma0, v.pi1, v.nu1, v.pi2, v.sigma2, v.nu3
    );

    let (ric_formula, scal) =
        full_ricci_from_torsion(&s, &frame, &t, &RicciConfig::standard()).expect("formula Ricci");
    let (ric_oracle, scal_oracle) = oracle_ricci(&s, &frame).expect("oracle Ricci");
    println!("scalar curvature (formula) = {scal}");
    println!("scalar curvature (oracle)  = {scal_oracle}");
    let mut max_gap = 0.0f64;
    for i in 0..6 {
        for j in 0..6 {
            let d = (ric_formula.at(i, j).clone() - ric_oracle.at(i, j).clone())
                .to_f64()
                .abs();
            max_gap = max_gap.max(d);
        }
    }
    println!("max |formula - oracle| over Ricci entries = {max_gap}");
    print!("Ricci diagonal:");
    for i in 0..6 {
        print!(" {}", ric_formula.at(i, i));
    }
    println!();

    // Probe 1: a 3-form that is not κ-positive must be rejected with a typed error.
    let bad = induced_structure(&kappa, &kappa.wedge(&KForm::basis(&[1])), false, 0.0);
    match bad {
        Err(Su3Error::Validation(_)) | Err(Su3Error::NotPositive(_)) => {
            println!("non-positive 3-form rejected: ok")
        }
        other => panic!("expected rejection, got {other:?}"),
    }

    // Probe 2: a bracket table violating Jacobi must be rejected at frame
    // construction ([X1,X2] = -X4, [X3,X4] = -X5 gives d²α5 = -α123 ≠ 0).
    let bad_frame: Result<LieFrame<R>, _> = LieFrame::new(&[
        (1, 2, 4, -R::one()),
        (3, 4, 5, -R::one()),
    ]);
    match bad_frame {
        Err(Su3Error::Validation(msg)) => println!("Jacobi violation rejected: {msg}"),
        other => panic!("expected Jacobi rejection, got {other:?}"),
    }
}
