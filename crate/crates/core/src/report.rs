//! Analysis reports: the machine-readable (JSON) and human-readable (text)
//! output of a full structure analysis.
//!
//! A report always carries the formula-path and oracle-path curvature values
//! side by side with their residual — disagreement between the two pipelines
//! is surfaced, never swallowed. JSON output is deterministic byte-for-byte
//! for identical inputs: coefficient maps iterate in fixed (BTreeMap) order,
//! section order is fixed by struct declaration, and exact values travel as
//! rational literals. The top-level `schema` field versions the layout.

use serde::{Deserialize, Serialize};

use crate::exterior::{mask_indices, KForm, DIM};
use crate::frame::{
    bracket1_form, bracket2_form, decompose_connection, koszul_connection, LieFrame,
};
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::structfile::{BuiltStructure, Mode};
use crate::su3::{check_epsilon_identities, Result, SU3Structure};
use crate::torsion::{
    bryant_identity_check, classify, extract_torsion, oracle_ricci,
    pullback_consistency_residual, reconstruct_differentials, ricci_from_torsion,
    scalar_curvature_from_torsion, TorsionForms,
};

/// Version stamped into every JSON report as the top-level `schema` field.
pub const REPORT_SCHEMA: u32 = 1;

// ---------------------------------------------------------------------------
// Report value model
// ---------------------------------------------------------------------------

/// A numeric value: an exact rational literal (exact mode) or a float.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Exact(String),
    Float(f64),
}

impl Value {
    fn of<S: Scalar>(x: &S) -> Value {
        if S::EXACT {
            Value::Exact(x.literal())
        } else {
            let v = x.to_f64();
            // Normalize -0.0 so equal reports stay byte-identical.
            Value::Float(if v == 0.0 { 0.0 } else { v })
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Exact(s) => s.clone(),
            Value::Float(x) => format!("{x}"),
        }
    }
}

/// One coefficient of a form: ascending 1-based `indices` and its value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormEntry {
    pub indices: Vec<usize>,
    pub value: Value,
}

fn form_entries<S: Scalar>(form: &KForm<S>) -> Vec<FormEntry> {
    form.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(mask, c)| FormEntry {
            indices: mask_indices(mask),
            value: Value::of(c),
        })
        .collect()
}

fn matrix_values<S: Scalar>(m: &Mat<S>) -> Vec<Vec<Value>> {
    (0..DIM)
        .map(|i| (0..DIM).map(|j| Value::of(m.at(i, j))).collect())
        .collect()
}

fn one_form_values<S: Scalar>(form: &KForm<S>) -> Vec<Value> {
    (0..DIM).map(|k| Value::of(&form.coeff(&[k + 1]))).collect()
}

// ---------------------------------------------------------------------------
// Sections
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingSection {
    pub pi0: bool,
    pub sigma0: bool,
    pub pi1: bool,
    pub nu1: bool,
    pub pi2: bool,
    pub sigma2: bool,
    pub nu3: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationSection {
    /// Most specific class label.
    pub label: String,
    /// Every special class the structure satisfies, most general first.
    pub satisfied: Vec<String>,
    pub vanishing: VanishingSection,
}

/// The seven torsion forms, plus the raw scalars ν₀, α₀ extracted from dκ and
/// the derived σ₁ = Jπ₁ (stored, not substituted, so the relations stay
/// checkable downstream).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionSection {
    pub pi0: Value,
    pub sigma0: Value,
    pub nu0: Value,
    pub alpha0: Value,
    pub pi1: Vec<FormEntry>,
    pub sigma1: Vec<FormEntry>,
    pub nu1: Vec<FormEntry>,
    pub pi2: Vec<FormEntry>,
    pub sigma2: Vec<FormEntry>,
    pub nu3: Vec<FormEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormsSection {
    pub pi2_sq: Value,
    pub sigma2_sq: Value,
    pub nu1_sq: Value,
    pub nu3_sq: Value,
}

/// Scalar curvature through both pipelines, side by side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarSection {
    pub formula: Value,
    pub oracle: Value,
    pub residual: Value,
    pub agree: bool,
}

/// Ricci tensor through both pipelines. `formula`/`oracle` are the full
/// tensors; the traceless parts subtract (s/6)·g on each side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RicciSection {
    pub formula: Vec<Vec<Value>>,
    pub oracle: Vec<Vec<Value>>,
    pub formula_traceless: Vec<Vec<Value>>,
    pub oracle_traceless: Vec<Vec<Value>>,
    pub residual: Value,
    pub agree: bool,
}

/// Levi-Civita connection of the induced metric in the adapted orthonormal
/// coframe, split as ψ = θ + [μ]₁ + [τ]₂. `theta[i][j]` and `tau[i]` list the
/// six coefficients of the respective 1-forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionSection {
    pub theta: Vec<Vec<Vec<Value>>>,
    pub mu: Vec<Value>,
    pub tau: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityLine {
    pub name: String,
    pub max_residual: f64,
    pub pass: bool,
}

/// Overall formula-vs-oracle agreement (the headline of the report).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgreementSection {
    pub pass: bool,
    pub max_residual: f64,
}

/// A full analysis of one structure file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub name: String,
    pub mode: Mode,
    pub tolerance: f64,
    pub classification: ClassificationSection,
    pub torsion: TorsionSection,
    pub norms: NormsSection,
    pub scalar_curvature: ScalarSection,
    pub ricci: RicciSection,
    pub connection: ConnectionSection,
    pub identities: Vec<IdentityLine>,
    pub agreement: AgreementSection,
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

/// Exact max |aᵢⱼ − bᵢⱼ| in the scalar domain (compared through f64, which
/// only picks which exact value is reported, never changes it).
fn max_abs_diff<S: Scalar>(a: &Mat<S>, b: &Mat<S>) -> S {
    let mut best = S::zero();
    for i in 0..DIM {
        for j in 0..DIM {
            let d = (a.at(i, j).clone() - b.at(i, j).clone()).abs();
            if d.to_f64() > best.to_f64() {
                best = d;
            }
        }
    }
    best
}

fn torsion_section<S: Scalar>(t: &TorsionForms<S>) -> TorsionSection {
    TorsionSection {
        pi0: Value::of(&t.pi0),
        sigma0: Value::of(&t.sigma0),
        nu0: Value::of(&t.nu0),
        alpha0: Value::of(&t.alpha0),
        pi1: form_entries(&t.pi1),
        sigma1: form_entries(&t.sigma1),
        nu1: form_entries(&t.nu1),
        pi2: form_entries(&t.pi2),
        sigma2: form_entries(&t.sigma2),
        nu3: form_entries(&t.nu3),
    }
}

/// Run the full analysis pipeline and assemble the report.
pub fn analyze<S: Scalar>(
    name: &str,
    s: &SU3Structure<S>,
    f: &LieFrame<S>,
    tol: f64,
) -> Result<AnalysisReport> {
    let mode = if S::EXACT { Mode::Exact } else { Mode::Float };
    let agree_bound = if S::EXACT { 0.0 } else { tol.max(1e-8) };
    let identity_bound = if S::EXACT { 0.0 } else { tol.max(1e-10) };

    // Torsion and classification.
    let t = extract_torsion(s, f)?;
    let class = classify(&t, tol);

    // Curvature, both pipelines.
    let sc_formula = scalar_curvature_from_torsion(s, f, &t);
    let ric0_formula = ricci_from_torsion(s, f, &t)?;
    let (ric_oracle, sc_oracle) = oracle_ricci(s, f)?;
    let sixth = S::from_ratio(1, 6);
    let ric_formula = ric0_formula.add(&s.g.scale(&(sc_formula.clone() * sixth.clone())));
    let ric0_oracle = ric_oracle.add(&s.g.scale(&(-(sc_oracle.clone() * sixth))));

    let sc_residual = (sc_formula.clone() - sc_oracle.clone()).abs();
    let ric_residual = max_abs_diff(&ric_formula, &ric_oracle);
    let scalar_agree = sc_residual.to_f64() <= agree_bound;
    let ricci_agree = ric_residual.to_f64() <= agree_bound;

    // Connection in the adapted orthonormal coframe.
    let fu = f.change_basis(&s.adapted, s.tol)?;
    let psi = koszul_connection(&fu, &Mat::identity(DIM), s.tol)?;
    let conn = decompose_connection(&s.tables, &psi, s.tol)?;

    // Identity suite.
    let mut identities: Vec<IdentityLine> = check_epsilon_identities(&s.tables, identity_bound)
        .into_iter()
        .map(|c| IdentityLine {
            name: c.name.to_string(),
            max_residual: c.max_residual,
            pass: c.pass,
        })
        .collect();

    let push = |name: &str, residual: f64, identities: &mut Vec<IdentityLine>| {
        identities.push(IdentityLine {
            name: name.to_string(),
            max_residual: residual,
            pass: residual <= identity_bound,
        });
    };

    let (dk, dom, djo) = reconstruct_differentials(s, &t);
    let recon = (dk - f.ce_differential(&s.kappa))
        .max_abs_coeff()
        .max((dom - f.ce_differential(&s.omega)).max_abs_coeff())
        .max((djo - f.ce_differential(&s.j_omega)).max_abs_coeff());
    push("differential-reconstruction", recon, &mut identities);

    let rebuilt = conn
        .theta
        .add(&bracket1_form(&s.tables, &conn.mu))
        .add(&bracket2_form(&s.tables, &conn.tau));
    let mut conn_res: f64 = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            let d = (rebuilt.at(i, j).clone() - conn.psi.at(i, j).clone()).max_abs_coeff();
            conn_res = conn_res.max(d);
        }
    }
    push("connection-reassembly", conn_res, &mut identities);
    push("curl-and-star-identities", bryant_identity_check(s, f)?, &mut identities);
    push(
        "connection-torsion-pullback",
        pullback_consistency_residual(s, f)?,
        &mut identities,
    );
    push(
        "scalar-formula-vs-oracle",
        sc_residual.to_f64(),
        &mut identities,
    );
    // The oracle bound is looser than the identity bound in float mode; patch
    // the pass flag for the two oracle rows to the oracle tolerance.
    if let Some(last) = identities.last_mut() {
        last.pass = scalar_agree;
    }
    push(
        "ricci-formula-vs-oracle",
        ric_residual.to_f64(),
        &mut identities,
    );
    if let Some(last) = identities.last_mut() {
        last.pass = ricci_agree;
    }

    let agreement = AgreementSection {
        pass: scalar_agree && ricci_agree && identities.iter().all(|l| l.pass),
        max_residual: identities
            .iter()
            .map(|l| l.max_residual)
            .fold(0.0, f64::max),
    };

    Ok(AnalysisReport {
        schema: REPORT_SCHEMA,
        name: name.to_string(),
        mode,
        tolerance: tol,
        classification: ClassificationSection {
            label: class.label.to_string(),
            satisfied: class.satisfied.iter().map(|c| c.to_string()).collect(),
            vanishing: VanishingSection {
                pi0: class.vanishing.pi0,
                sigma0: class.vanishing.sigma0,
                pi1: class.vanishing.pi1,
                nu1: class.vanishing.nu1,
                pi2: class.vanishing.pi2,
                sigma2: class.vanishing.sigma2,
                nu3: class.vanishing.nu3,
            },
        },
        torsion: torsion_section(&t),
        norms: NormsSection {
            pi2_sq: Value::of(&s.norm_sq(&t.pi2)),
            sigma2_sq: Value::of(&s.norm_sq(&t.sigma2)),
            nu1_sq: Value::of(&s.norm_sq(&t.nu1)),
            nu3_sq: Value::of(&s.norm_sq(&t.nu3)),
        },
        scalar_curvature: ScalarSection {
            formula: Value::of(&sc_formula),
            oracle: Value::of(&sc_oracle),
            residual: Value::of(&sc_residual),
            agree: scalar_agree,
        },
        ricci: RicciSection {
            formula: matrix_values(&ric_formula),
            oracle: matrix_values(&ric_oracle),
            formula_traceless: matrix_values(&ric0_formula),
            oracle_traceless: matrix_values(&ric0_oracle),
            residual: Value::of(&ric_residual),
            agree: ricci_agree,
        },
        connection: ConnectionSection {
            theta: (0..DIM)
                .map(|i| (0..DIM).map(|j| one_form_values(conn.theta.at(i, j))).collect())
                .collect(),
            mu: one_form_values(&conn.mu),
            tau: conn.tau.iter().map(one_form_values).collect(),
        },
        identities,
        agreement,
    })
}

/// Analyze whichever arithmetic a built structure carries.
pub fn analyze_built(name: &str, built: &BuiltStructure, tol: f64) -> Result<AnalysisReport> {
    match built {
        BuiltStructure::Exact { frame, structure } => analyze(name, structure, frame, 0.0),
        BuiltStructure::Float { frame, structure } => analyze(name, structure, frame, tol),
    }
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

/// Deterministic JSON emission (pretty-printed, trailing newline).
pub fn to_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Parse a JSON report (inverse of [`to_json`]).
pub fn from_json(text: &str) -> std::result::Result<AnalysisReport, serde_json::Error> {
    serde_json::from_str(text)
}

fn write_form_line(out: &mut String, label: &str, entries: &[FormEntry]) {
    let body = if entries.is_empty() {
        "0".to_string()
    } else {
        entries
            .iter()
            .map(|e| {
                let idx: String = e.indices.iter().map(|i| i.to_string()).collect();
                format!("{}·e{}", e.value.render(), idx)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    out.push_str(&format!("  {label:<7} = {body}\n"));
}

fn write_matrix(out: &mut String, label: &str, m: &[Vec<Value>]) {
    out.push_str(&format!("  {label}:\n"));
    for row in m {
        let cells: Vec<String> = row.iter().map(|v| v.render()).collect();
        out.push_str(&format!("    [{}]\n", cells.join(", ")));
    }
}

/// Human-readable rendering of a report.
pub fn to_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("analysis report (schema {})\n", r.schema));
    out.push_str(&format!("name: {}\n", r.name));
    out.push_str(&format!("mode: {}\n", r.mode));
    out.push_str(&format!("tolerance: {}\n\n", r.tolerance));

    out.push_str(&format!("classification: {}\n", r.classification.label));
    out.push_str(&format!(
        "satisfied classes: {}\n",
        if r.classification.satisfied.is_empty() {
            "none".to_string()
        } else {
            r.classification.satisfied.join(", ")
        }
    ));
    let v = &r.classification.vanishing;
    out.push_str(&format!(
        "vanishing: pi0={} sigma0={} pi1={} nu1={} pi2={} sigma2={} nu3={}\n\n",
        v.pi0, v.sigma0, v.pi1, v.nu1, v.pi2, v.sigma2, v.nu3
    ));

    out.push_str("torsion forms\n");
    out.push_str(&format!("  pi0     = {}\n", r.torsion.pi0.render()));
    out.push_str(&format!("  sigma0  = {}\n", r.torsion.sigma0.render()));
    write_form_line(&mut out, "pi1", &r.torsion.pi1);
    write_form_line(&mut out, "nu1", &r.torsion.nu1);
    write_form_line(&mut out, "pi2", &r.torsion.pi2);
    write_form_line(&mut out, "sigma2", &r.torsion.sigma2);
    write_form_line(&mut out, "nu3", &r.torsion.nu3);
    out.push_str(&format!(
        "  raw scalars: nu0 = {}, alpha0 = {}; derived sigma1 below\n",
        r.torsion.nu0.render(),
        r.torsion.alpha0.render()
    ));
    write_form_line(&mut out, "sigma1", &r.torsion.sigma1);
    out.push('\n');

    out.push_str("norms\n");
    out.push_str(&format!("  |pi2|^2    = {}\n", r.norms.pi2_sq.render()));
    out.push_str(&format!("  |sigma2|^2 = {}\n", r.norms.sigma2_sq.render()));
    out.push_str(&format!("  |nu1|^2    = {}\n", r.norms.nu1_sq.render()));
    out.push_str(&format!("  |nu3|^2    = {}\n\n", r.norms.nu3_sq.render()));

    out.push_str("scalar curvature\n");
    out.push_str(&format!("  formula  = {}\n", r.scalar_curvature.formula.render()));
    out.push_str(&format!("  oracle   = {}\n", r.scalar_curvature.oracle.render()));
    out.push_str(&format!(
        "  residual = {} (agree: {})\n\n",
        r.scalar_curvature.residual.render(),
        r.scalar_curvature.agree
    ));

    out.push_str("ricci tensor\n");
    write_matrix(&mut out, "formula", &r.ricci.formula);
    write_matrix(&mut out, "oracle", &r.ricci.oracle);
    write_matrix(&mut out, "formula traceless", &r.ricci.formula_traceless);
    write_matrix(&mut out, "oracle traceless", &r.ricci.oracle_traceless);
    out.push_str(&format!(
        "  residual = {} (agree: {})\n\n",
        r.ricci.residual.render(),
        r.ricci.agree
    ));

    out.push_str("connection (adapted orthonormal coframe): psi = theta + [mu]_1 + [tau]_2\n");
    let mut any_theta = false;
    for i in 0..DIM {
        for j in 0..DIM {
            if i < j {
                let coeffs = &r.connection.theta[i][j];
                if coeffs.iter().any(|c| c.render() != "0") {
                    let cells: Vec<String> = coeffs.iter().map(|v| v.render()).collect();
                    out.push_str(&format!(
                        "  theta[{}][{}] = [{}]\n",
                        i + 1,
                        j + 1,
                        cells.join(", ")
                    ));
                    any_theta = true;
                }
            }
        }
    }
    if !any_theta {
        out.push_str("  theta = 0\n");
    }
    let mu_cells: Vec<String> = r.connection.mu.iter().map(|v| v.render()).collect();
    out.push_str(&format!("  mu  = [{}]\n", mu_cells.join(", ")));
    for (i, row) in r.connection.tau.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.render()).collect();
        out.push_str(&format!("  tau[{}] = [{}]\n", i + 1, cells.join(", ")));
    }
    out.push('\n');

    out.push_str("identities\n");
    for line in &r.identities {
        out.push_str(&format!(
            "  {:<32} residual {:>10.3e}  {}\n",
            line.name,
            line.max_residual,
            if line.pass { "pass" } else { "FAIL" }
        ));
    }
    out.push('\n');

    out.push_str(&format!(
        "agreement: {} (max residual {:.3e})\n",
        if r.agreement.pass { "PASS" } else { "FAIL" },
        r.agreement.max_residual
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structfile::{
        build_structure, parse_structure_text, RawValue, StructureFile, ThreeFormEntry,
        TwoFormEntry, NILMANIFOLD_FIXTURE,
    };

    fn nil_report() -> AnalysisReport {
        let file = parse_structure_text(NILMANIFOLD_FIXTURE).expect("fixture parses");
        let built = build_structure(&file, Mode::Exact, 0.0).expect("fixture builds");
        analyze_built(&file.name, &built, 0.0).expect("analysis runs")
    }

    fn torus_file_float() -> StructureFile {
        StructureFile {
            name: "torus".into(),
            dim: 6,
            structure_constants: vec![],
            kappa: vec![
                TwoFormEntry { i: 1, j: 2, value: RawValue::Number(1.0) },
                TwoFormEntry { i: 3, j: 4, value: RawValue::Number(1.0) },
                TwoFormEntry { i: 5, j: 6, value: RawValue::Number(1.0) },
            ],
            omega: vec![
                ThreeFormEntry { i: 1, j: 3, k: 5, value: RawValue::Number(1.0) },
                ThreeFormEntry { i: 1, j: 4, k: 6, value: RawValue::Number(-1.0) },
                ThreeFormEntry { i: 2, j: 4, k: 5, value: RawValue::Number(-1.0) },
                ThreeFormEntry { i: 2, j: 3, k: 6, value: RawValue::Number(-1.0) },
            ],
            mode: Mode::Float,
            normalize: false,
        }
    }

    #[test]
    fn nil_fixture_report_is_exact_and_agreeing() {
        let r = nil_report();
        assert_eq!(r.schema, REPORT_SCHEMA);
        assert_eq!(r.mode, Mode::Exact);
        assert_eq!(r.classification.label, "SGCY");
        assert_eq!(r.scalar_curvature.formula, Value::Exact("-1".into()));
        assert_eq!(r.scalar_curvature.oracle, Value::Exact("-1".into()));
        assert_eq!(r.scalar_curvature.residual, Value::Exact("0".into()));
        assert_eq!(r.ricci.residual, Value::Exact("0".into()));
        assert!(r.scalar_curvature.agree && r.ricci.agree);
        assert!(r.agreement.pass, "identity lines: {:?}", r.identities);

        // σ₂ = −e³⁴ + e⁵⁶ and the other six components vanish.
        assert_eq!(
            r.torsion.sigma2,
            vec![
                FormEntry { indices: vec![3, 4], value: Value::Exact("-1".into()) },
                FormEntry { indices: vec![5, 6], value: Value::Exact("1".into()) },
            ]
        );
        assert!(r.torsion.pi1.is_empty() && r.torsion.nu3.is_empty());
        assert_eq!(r.norms.sigma2_sq, Value::Exact("2".into()));
    }

    #[test]
    fn json_report_round_trips_and_is_deterministic() {
        let r1 = nil_report();
        let r2 = nil_report();
        let j1 = to_json(&r1);
        let j2 = to_json(&r2);
        assert_eq!(j1, j2, "reports of identical inputs must be byte-identical");
        let parsed = from_json(&j1).expect("parse back");
        assert_eq!(parsed, r1, "parse(emit(report)) = report");
        // schema versioning is visible at the top level
        assert!(j1.contains("\"schema\": 1"));
    }

    #[test]
    fn float_torus_report_is_integrable_and_flat() {
        let built = build_structure(&torus_file_float(), Mode::Float, 1e-10).expect("builds");
        let r = analyze_built("torus", &built, 1e-10).expect("analysis");
        assert_eq!(r.mode, Mode::Float);
        assert_eq!(r.classification.label, "integrable");
        assert_eq!(r.scalar_curvature.formula, Value::Float(0.0));
        assert_eq!(r.scalar_curvature.oracle, Value::Float(0.0));
        assert!(r.agreement.pass);
        assert!(r.torsion.sigma2.is_empty());
    }

    #[test]
    fn text_report_shows_both_pipelines() {
        let r = nil_report();
        let text = to_text(&r);
        for needle in [
            "classification: SGCY",
            "formula  = -1",
            "oracle   = -1",
            "residual = 0",
            "agreement: PASS",
            "scalar-formula-vs-oracle",
            "ricci-formula-vs-oracle",
        ] {
            assert!(text.contains(needle), "text report missing {needle:?}:\n{text}");
        }
    }

    #[test]
    fn tau_section_matches_expected_pattern_on_fixture() {
        // τ = ¼(0, 0, e⁴, −e³, −e⁶, e⁵) in the adapted coframe of the
        // bundled fixture (which is already adapted).
        let r = nil_report();
        let q = |s: &str| Value::Exact(s.into());
        let zero_row = vec![q("0"); 6];
        assert_eq!(r.connection.tau[0], zero_row);
        assert_eq!(r.connection.tau[1], zero_row);
        assert_eq!(
            r.connection.tau[2],
            vec![q("0"), q("0"), q("0"), q("1/4"), q("0"), q("0")]
        );
        assert_eq!(
            r.connection.tau[3],
            vec![q("0"), q("0"), q("-1/4"), q("0"), q("0"), q("0")]
        );
        assert_eq!(
            r.connection.tau[4],
            vec![q("0"), q("0"), q("0"), q("0"), q("0"), q("-1/4")]
        );
        assert_eq!(
            r.connection.tau[5],
            vec![q("0"), q("0"), q("0"), q("0"), q("1/4"), q("0")]
        );
        // μ = 0 on this fixture.
        assert_eq!(r.connection.mu, zero_row);
    }
}
