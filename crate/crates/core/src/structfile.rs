//! JSON structure files: the on-disk description of a Lie algebra together
//! with the (κ, Ω) pair, plus validation diagnostics and construction of the
//! frame/structure pair in either arithmetic mode.
//!
//! A structure file is a single JSON object:
//!
//! ```json
//! {
//!   "name": "nilmanifold-bt",
//!   "dim": 6,
//!   "structure_constants": [ {"i": 1, "j": 3, "k": 6, "value": "-1"} ],
//!   "kappa":  [ {"i": 1, "j": 2, "value": "1"} ],
//!   "omega":  [ {"i": 1, "j": 3, "k": 5, "value": "1"} ],
//!   "mode": "exact",
//!   "normalize": false
//! }
//! ```
//!
//! Numeric values travel as strings — `"p/q"`, integers, or decimal/scientific
//! literals, expanded exactly — so exact mode never sees a float-contaminated
//! coefficient. Float mode additionally accepts raw JSON numbers. Every
//! validation failure is reported as a [`Diagnostic`] with a stable uppercase
//! code and the JSON path of the offending element; parsing returns either a
//! validated record or the complete list of diagnostics.

use std::fmt;
use std::path::Path;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::exterior::KForm;
use crate::frame::LieFrame;
use crate::scalar::Scalar;
use crate::su3::{induced_structure, SU3Structure, Su3Error};

/// The bundled nilpotent example file ([X₁,X₃] = −X₆, [X₁,X₅] = −X₄ with the
/// standard (κ₀, Ω₀)); parses to 2 bracket entries, 3 κ entries, 4 Ω entries.
pub const NILMANIFOLD_FIXTURE: &str = include_str!("../fixtures/nilmanifold_bt.struct");

/// Dimension accepted by the format (the library is specific to 6).
pub const REQUIRED_DIM: usize = 6;

// ---------------------------------------------------------------------------
// Schema
// ---------------------------------------------------------------------------

/// Arithmetic mode requested by a file or a command-line override.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(out, "exact"),
            Mode::Float => write!(out, "float"),
        }
    }
}

/// A numeric literal as it appears in the file: a string (`"p/q"`, `"-3"`,
/// `"0.25"`, `"1e-3"`) or a raw JSON number (float mode only).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawValue {
    Text(String),
    Number(f64),
}

impl fmt::Display for RawValue {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RawValue::Text(s) => write!(out, "{s:?}"),
            RawValue::Number(x) => write!(out, "{x}"),
        }
    }
}

/// One bracket entry: [Xᵢ, Xⱼ] = Σₖ value·Xₖ with 1 ≤ i < j ≤ 6.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: RawValue,
}

/// One κ coefficient: value·eⁱ∧eʲ with i < j.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoFormEntry {
    pub i: usize,
    pub j: usize,
    pub value: RawValue,
}

/// One Ω coefficient: value·eⁱ∧eʲ∧eᵏ with i < j < k.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThreeFormEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: RawValue,
}

/// A structure-file record as deserialized; see the module docs for the
/// JSON layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub name: String,
    pub dim: usize,
    /// Empty list (or omitted) means the abelian algebra.
    #[serde(default)]
    pub structure_constants: Vec<BracketEntry>,
    pub kappa: Vec<TwoFormEntry>,
    pub omega: Vec<ThreeFormEntry>,
    pub mode: Mode,
    /// Rescale Ω to det P_Ω = 1 during construction.
    #[serde(default)]
    pub normalize: bool,
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

/// Stable machine-readable failure category. Each kind of rejection gets its
/// own code so callers can branch without parsing messages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticCode {
    /// File unreadable.
    Io,
    /// Not valid JSON, or JSON that does not match the schema.
    Json,
    /// `dim` is not 6.
    Dim,
    /// An index is out of range or violates the required ordering.
    Index,
    /// Two entries address the same coefficient.
    Duplicate,
    /// A numeric literal could not be read in the active mode.
    Rational,
    /// The bracket table violates the Jacobi identity.
    Jacobi,
    /// Exact arithmetic cannot represent a required value (normalization
    /// scale with no rational root); rerun in float mode.
    Exact,
    /// The structure data is degenerate (κ not symplectic, Ω with the wrong
    /// stabilizer, incompatible pair, …).
    Structure,
    /// Ω fails the κ-positivity test.
    NotPositive,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::Io => "IO",
            DiagnosticCode::Json => "JSON",
            DiagnosticCode::Dim => "DIM",
            DiagnosticCode::Index => "INDEX",
            DiagnosticCode::Duplicate => "DUPLICATE",
            DiagnosticCode::Rational => "RATIONAL",
            DiagnosticCode::Jacobi => "JACOBI",
            DiagnosticCode::Exact => "EXACT",
            DiagnosticCode::Structure => "STRUCTURE",
            DiagnosticCode::NotPositive => "NONPOSITIVE",
        }
    }

    /// Process exit code mandated for this failure: 2 for a κ-negative Ω,
    /// 1 for every other input problem.
    pub fn exit_code(self) -> i32 {
        match self {
            DiagnosticCode::NotPositive => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.as_str())
    }
}

/// One validation failure: a code, the position of the offending element
/// (a JSON path such as `structure_constants[2].value`, or `line L, column C`
/// for syntax errors), and a human-readable message.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub at: String,
    pub message: String,
}

impl Diagnostic {
    fn new(code: DiagnosticCode, at: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            at: at.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "[{}] {}: {}", self.code, self.at, self.message)
    }
}

// ---------------------------------------------------------------------------
// Parsing and validation
// ---------------------------------------------------------------------------

/// Parse and validate structure-file text. Returns the validated record or
/// every diagnostic found (syntax errors short-circuit; semantic validation
/// reports all problems at once).
pub fn parse_structure_text(text: &str) -> Result<StructureFile, Vec<Diagnostic>> {
    let file: StructureFile = serde_json::from_str(text).map_err(|e| {
        vec![Diagnostic::new(
            DiagnosticCode::Json,
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )]
    })?;
    let diags = validate(&file);
    if diags.is_empty() {
        Ok(file)
    } else {
        Err(diags)
    }
}

/// Read a structure file from disk and validate it.
pub fn parse_structure_file(path: &Path) -> Result<StructureFile, Vec<Diagnostic>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        vec![Diagnostic::new(
            DiagnosticCode::Io,
            path.display().to_string(),
            e.to_string(),
        )]
    })?;
    parse_structure_text(&text)
}

/// Semantic validation of an already-deserialized record (dimension, index
/// ranges and ordering, duplicates, value syntax under the given mode).
pub fn validate_for_mode(file: &StructureFile, mode: Mode) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if file.dim != REQUIRED_DIM {
        diags.push(Diagnostic::new(
            DiagnosticCode::Dim,
            "dim",
            format!("dim must be {REQUIRED_DIM}, got {}", file.dim),
        ));
    }

    let mut seen_brackets = std::collections::BTreeSet::new();
    for (n, e) in file.structure_constants.iter().enumerate() {
        let at = format!("structure_constants[{n}]");
        let in_range = (1..=REQUIRED_DIM).contains(&e.i)
            && (1..=REQUIRED_DIM).contains(&e.j)
            && (1..=REQUIRED_DIM).contains(&e.k);
        if !in_range || e.i >= e.j {
            diags.push(Diagnostic::new(
                DiagnosticCode::Index,
                at.clone(),
                format!(
                    "bracket indices must satisfy 1 ≤ i < j ≤ {REQUIRED_DIM}, 1 ≤ k ≤ {REQUIRED_DIM}; got ({}, {}, {})",
                    e.i, e.j, e.k
                ),
            ));
        } else if !seen_brackets.insert((e.i, e.j, e.k)) {
            diags.push(Diagnostic::new(
                DiagnosticCode::Duplicate,
                at.clone(),
                format!("duplicate bracket entry ({}, {}, {})", e.i, e.j, e.k),
            ));
        }
        check_value(&e.value, mode, &format!("{at}.value"), &mut diags);
    }

    let mut seen_kappa = std::collections::BTreeSet::new();
    for (n, e) in file.kappa.iter().enumerate() {
        let at = format!("kappa[{n}]");
        let in_range = (1..=REQUIRED_DIM).contains(&e.i) && (1..=REQUIRED_DIM).contains(&e.j);
        if !in_range || e.i >= e.j {
            diags.push(Diagnostic::new(
                DiagnosticCode::Index,
                at.clone(),
                format!(
                    "2-form indices must satisfy 1 ≤ i < j ≤ {REQUIRED_DIM}; got ({}, {})",
                    e.i, e.j
                ),
            ));
        } else if !seen_kappa.insert((e.i, e.j)) {
            diags.push(Diagnostic::new(
                DiagnosticCode::Duplicate,
                at.clone(),
                format!("duplicate κ entry ({}, {})", e.i, e.j),
            ));
        }
        check_value(&e.value, mode, &format!("{at}.value"), &mut diags);
    }

    let mut seen_omega = std::collections::BTreeSet::new();
    for (n, e) in file.omega.iter().enumerate() {
        let at = format!("omega[{n}]");
        let in_range = (1..=REQUIRED_DIM).contains(&e.i)
            && (1..=REQUIRED_DIM).contains(&e.j)
            && (1..=REQUIRED_DIM).contains(&e.k);
        if !in_range || !(e.i < e.j && e.j < e.k) {
            diags.push(Diagnostic::new(
                DiagnosticCode::Index,
                at.clone(),
                format!(
                    "3-form indices must satisfy 1 ≤ i < j < k ≤ {REQUIRED_DIM}; got ({}, {}, {})",
                    e.i, e.j, e.k
                ),
            ));
        } else if !seen_omega.insert((e.i, e.j, e.k)) {
            diags.push(Diagnostic::new(
                DiagnosticCode::Duplicate,
                at.clone(),
                format!("duplicate Ω entry ({}, {}, {})", e.i, e.j, e.k),
            ));
        }
        check_value(&e.value, mode, &format!("{at}.value"), &mut diags);
    }
    diags
}

/// Semantic validation under the file's own mode.
pub fn validate(file: &StructureFile) -> Vec<Diagnostic> {
    validate_for_mode(file, file.mode)
}

fn check_value(v: &RawValue, mode: Mode, at: &str, diags: &mut Vec<Diagnostic>) {
    match mode {
        Mode::Exact => {
            if exact_value(v).is_none() {
                diags.push(Diagnostic::new(
                    DiagnosticCode::Rational,
                    at,
                    format!(
                        "exact mode requires a rational string (\"p/q\", integer, decimal, or scientific); got {v}"
                    ),
                ));
            }
        }
        Mode::Float => {
            if float_value(v).is_none() {
                diags.push(Diagnostic::new(
                    DiagnosticCode::Rational,
                    at,
                    format!("value is not a finite number: {v}"),
                ));
            }
        }
    }
}

/// Exact reading of a literal. Raw JSON numbers are rejected — exact mode
/// requires strings so no coefficient ever passes through a float.
pub fn exact_value(v: &RawValue) -> Option<BigRational> {
    match v {
        RawValue::Text(s) => BigRational::parse_literal(s).ok(),
        RawValue::Number(_) => None,
    }
}

/// Float reading of a literal: any finite JSON number or parseable string.
pub fn float_value(v: &RawValue) -> Option<f64> {
    let x = match v {
        RawValue::Number(x) => *x,
        RawValue::Text(s) => f64::parse_literal(s).ok()?,
    };
    x.is_finite().then_some(x)
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// A frame/structure pair in whichever arithmetic the caller selected.
pub enum BuiltStructure {
    Exact {
        frame: LieFrame<BigRational>,
        structure: SU3Structure<BigRational>,
    },
    Float {
        frame: LieFrame<f64>,
        structure: SU3Structure<f64>,
    },
}

impl BuiltStructure {
    pub fn mode(&self) -> Mode {
        match self {
            BuiltStructure::Exact { .. } => Mode::Exact,
            BuiltStructure::Float { .. } => Mode::Float,
        }
    }
}

/// Build the Lie frame and the SU(3)-structure a file describes. `mode` is
/// the effective arithmetic (the file's own unless overridden); `tol` is the
/// float-mode tolerance (ignored in exact mode).
pub fn build_structure(
    file: &StructureFile,
    mode: Mode,
    tol: f64,
) -> Result<BuiltStructure, Vec<Diagnostic>> {
    match mode {
        Mode::Exact => {
            let (frame, structure) = build_typed::<BigRational>(file, Mode::Exact, 0.0)?;
            Ok(BuiltStructure::Exact { frame, structure })
        }
        Mode::Float => {
            let (frame, structure) = build_typed::<f64>(file, Mode::Float, tol)?;
            Ok(BuiltStructure::Float { frame, structure })
        }
    }
}

fn scalar_of<S: Scalar>(v: &RawValue) -> Option<S> {
    match v {
        RawValue::Text(s) => S::parse_literal(s).ok(),
        // f64 Display is shortest-round-trip, so re-parsing loses nothing;
        // exact scalars refuse raw numbers outright.
        RawValue::Number(x) if !S::EXACT && x.is_finite() => {
            Some(S::parse_literal(&format!("{x}")).expect("f64 literal round-trips"))
        }
        RawValue::Number(_) => None,
    }
}

fn build_typed<S: Scalar>(
    file: &StructureFile,
    mode: Mode,
    tol: f64,
) -> Result<(LieFrame<S>, SU3Structure<S>), Vec<Diagnostic>> {
    // Validate under the effective mode (not the file's): a float-mode file
    // forced to exact must reject raw numbers, and this function must be safe
    // on records assembled in memory that never went through parsing.
    let diags = validate_for_mode(file, mode);
    if !diags.is_empty() {
        return Err(diags);
    }

    let entries: Vec<(usize, usize, usize, S)> = file
        .structure_constants
        .iter()
        .map(|e| (e.i, e.j, e.k, scalar_of::<S>(&e.value).expect("validated")))
        .collect();
    let frame = LieFrame::new(&entries).map_err(|err| vec![frame_diagnostic(err)])?;

    let mut kappa: KForm<S> = KForm::zero(2);
    for e in &file.kappa {
        kappa += &KForm::basis(&[e.i, e.j]).scale(&scalar_of::<S>(&e.value).expect("validated"));
    }
    let mut omega: KForm<S> = KForm::zero(3);
    for e in &file.omega {
        omega +=
            &KForm::basis(&[e.i, e.j, e.k]).scale(&scalar_of::<S>(&e.value).expect("validated"));
    }

    let structure = induced_structure(&kappa, &omega, file.normalize, tol)
        .map_err(|err| vec![structure_diagnostic(err)])?;
    Ok((frame, structure))
}

fn frame_diagnostic(err: Su3Error) -> Diagnostic {
    let code = match &err {
        Su3Error::Validation(msg) if msg.contains("Jacobi") => DiagnosticCode::Jacobi,
        Su3Error::Validation(_) => DiagnosticCode::Index,
        _ => DiagnosticCode::Structure,
    };
    Diagnostic::new(code, "structure_constants", err.to_string())
}

fn structure_diagnostic(err: Su3Error) -> Diagnostic {
    let (code, at) = match &err {
        Su3Error::NotPositive(_) => (DiagnosticCode::NotPositive, "omega"),
        Su3Error::ExactIrrational(_) => (DiagnosticCode::Exact, "omega"),
        _ => (DiagnosticCode::Structure, "kappa/omega"),
    };
    Diagnostic::new(code, at, err.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn fixture() -> StructureFile {
        parse_structure_text(NILMANIFOLD_FIXTURE).expect("bundled fixture parses")
    }

    #[test]
    fn bundled_fixture_parses_with_expected_shape() {
        let f = fixture();
        assert!(!f.name.is_empty());
        assert_eq!(f.dim, 6);
        assert_eq!(f.structure_constants.len(), 2);
        assert_eq!(f.kappa.len(), 3);
        assert_eq!(f.omega.len(), 4);
        assert_eq!(f.mode, Mode::Exact);
    }

    #[test]
    fn bundled_fixture_builds_exactly() {
        let f = fixture();
        match build_structure(&f, Mode::Exact, 0.0).expect("builds") {
            BuiltStructure::Exact { frame, structure } => {
                assert!(!frame.is_abelian());
                assert_eq!(structure.kappa.degree(), 2);
            }
            BuiltStructure::Float { .. } => panic!("expected exact build"),
        }
    }

    #[test]
    fn wrong_dimension_is_code_dim() {
        let text = NILMANIFOLD_FIXTURE.replace("\"dim\": 6", "\"dim\": 7");
        let diags = parse_structure_text(&text).unwrap_err();
        assert!(diags.iter().any(|d| d.code == DiagnosticCode::Dim), "{diags:?}");
    }

    #[test]
    fn malformed_rationals_are_code_rational() {
        for bad in ["\"1/0\"", "\"abc\"", "\"1.2.3\"", "\"\"", "0.5"] {
            let text =
                NILMANIFOLD_FIXTURE.replace("\"value\": \"-1\"", &format!("\"value\": {bad}"));
            let diags = parse_structure_text(&text).unwrap_err();
            assert!(
                diags.iter().any(|d| d.code == DiagnosticCode::Rational),
                "literal {bad} should be rejected in exact mode: {diags:?}"
            );
        }
    }

    #[test]
    fn exact_values_parse_all_supported_shapes() {
        let q = |s: &str| exact_value(&RawValue::Text(s.into())).unwrap();
        assert_eq!(q("3/4"), BigRational::new(3.into(), 4.into()));
        assert_eq!(q("-3/4"), BigRational::new(BigInt::from(-3), 4.into()));
        assert_eq!(q(" 7 "), BigRational::from(BigInt::from(7)));
        assert_eq!(q("-0.25"), BigRational::new(BigInt::from(-1), 4.into()));
        assert_eq!(q("2.50"), BigRational::new(5.into(), 2.into()));
        assert_eq!(q("1e-3"), BigRational::new(1.into(), 1000.into()));
        assert!(exact_value(&RawValue::Text("1/0".into())).is_none());
        assert!(exact_value(&RawValue::Number(0.5)).is_none());
    }

    #[test]
    fn index_violations_are_code_index() {
        let cases = [
            ("{\"i\": 3, \"j\": 1, \"k\": 6, \"value\": \"-1\"}", "i >= j"),
            ("{\"i\": 0, \"j\": 3, \"k\": 6, \"value\": \"-1\"}", "i = 0"),
            ("{\"i\": 1, \"j\": 3, \"k\": 7, \"value\": \"-1\"}", "k = 7"),
        ];
        for (entry, why) in cases {
            let text = NILMANIFOLD_FIXTURE
                .replace("{\"i\": 1, \"j\": 3, \"k\": 6, \"value\": \"-1\"}", entry);
            let diags = parse_structure_text(&text).unwrap_err();
            assert!(
                diags.iter().any(|d| d.code == DiagnosticCode::Index),
                "case {why}: {diags:?}"
            );
        }
    }

    #[test]
    fn duplicate_entries_are_code_duplicate() {
        let text = NILMANIFOLD_FIXTURE.replace(
            "{\"i\": 1, \"j\": 5, \"k\": 4, \"value\": \"-1\"}",
            "{\"i\": 1, \"j\": 3, \"k\": 6, \"value\": \"-1\"}",
        );
        let diags = parse_structure_text(&text).unwrap_err();
        assert!(diags.iter().any(|d| d.code == DiagnosticCode::Duplicate), "{diags:?}");
    }

    #[test]
    fn jacobi_violation_is_code_jacobi() {
        // [X1,X2] = -X4, [X3,X4] = -X5 fails Jacobi: d²(e5) = -e123 ≠ 0.
        let mut f = fixture();
        f.structure_constants = vec![
            BracketEntry { i: 1, j: 2, k: 4, value: RawValue::Text("-1".into()) },
            BracketEntry { i: 3, j: 4, k: 5, value: RawValue::Text("-1".into()) },
        ];
        let diags = build_structure(&f, Mode::Exact, 0.0).map(|_| ()).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::Jacobi);
        assert_eq!(diags[0].code.exit_code(), 1);
    }

    #[test]
    fn non_positive_omega_is_code_nonpositive_exit_2() {
        // Ω = e¹²³ is decomposable, hence not κ-positive.
        let mut f = fixture();
        f.omega = vec![ThreeFormEntry { i: 1, j: 2, k: 3, value: RawValue::Text("1".into()) }];
        let diags = build_structure(&f, Mode::Exact, 0.0).map(|_| ()).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::NotPositive, "{:?}", diags[0]);
        assert_eq!(diags[0].code.exit_code(), 2);
    }

    #[test]
    fn unknown_fields_and_syntax_errors_are_code_json() {
        let syntax = parse_structure_text("{ not json").unwrap_err();
        assert_eq!(syntax[0].code, DiagnosticCode::Json);
        assert!(syntax[0].at.starts_with("line "), "{:?}", syntax[0]);

        let unknown = NILMANIFOLD_FIXTURE.replace("\"normalize\"", "\"normalise\"");
        let diags = parse_structure_text(&unknown).unwrap_err();
        assert_eq!(diags[0].code, DiagnosticCode::Json);
    }

    #[test]
    fn float_mode_accepts_numbers_and_exact_mode_rejects_them() {
        let mut f = fixture();
        f.mode = Mode::Float;
        f.kappa[0].value = RawValue::Number(1.0);
        assert!(validate(&f).is_empty());
        assert!(matches!(
            build_structure(&f, Mode::Float, 1e-10).expect("float build"),
            BuiltStructure::Float { .. }
        ));
        // Same record forced to exact: the raw number is rejected.
        let diags = build_structure(&f, Mode::Exact, 0.0).map(|_| ()).unwrap_err();
        assert!(diags.iter().any(|d| d.code == DiagnosticCode::Rational), "{diags:?}");
    }

    #[test]
    fn missing_file_is_code_io() {
        let diags = parse_structure_file(Path::new("/nonexistent/x.struct")).unwrap_err();
        assert_eq!(diags[0].code, DiagnosticCode::Io);
    }

    #[test]
    fn structure_file_json_round_trips() {
        let f = fixture();
        let emitted = serde_json::to_string_pretty(&f).expect("serialize");
        let parsed = parse_structure_text(&emitted).expect("reparse");
        assert_eq!(parsed, f);
    }
}
