//! Command execution and rendering. JSON is produced from typed structs with
//! a fixed field order, so identical inputs give byte-identical output.

use std::fmt::{self, Write as _};

use kummer_core::enriques::{
    classify_free_quotient, decomposition_search, is_irreducible_feasible, FactorDecomposition,
    QuotientClassification, Verdict,
};
use kummer_core::exactnum::{IntMatrix, RingId};
use kummer_core::fixedpoint::{
    brute_force_fixed_point_up_to, group_acts_freely, FreenessReport, Outcome, UP_TO_LEVEL_CAP,
};
use kummer_core::lefschetz::{invariant_character_counts, lefschetz_kummer_detailed, CharacterCounts, KummerLefschetz};
use kummer_core::reference::{run_checks, Expectations, Report};
use kummer_core::torus::{TorusAuto, TorusEndo, TorusPoint};
use kummer_core::Error;
use serde::Serialize;

use crate::command::{AutoArgs, Command, CommandSpec, Format, MapArgs};
use crate::grammar::{parse_automorphism, parse_endo, parse_int_matrix, parse_ring, ParseError};
use crate::search::{run_search, SearchOutcome, SearchParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AppError {
    /// Malformed or out-of-range input; exit code 2.
    Usage(String),
    /// A mathematical check did not go through; exit code 1.
    Check(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Check(_) => 1,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(m) => write!(f, "usage error: {m}"),
            AppError::Check(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl std::error::Error for AppError {}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> Self {
        AppError::Usage(e.to_string())
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        match e {
            Error::Degenerate | Error::NonIntegral { .. } | Error::NonIntegralSeries(_) => AppError::Check(e.to_string()),
            _ => AppError::Usage(e.to_string()),
        }
    }
}

/// What a command prints, plus the names of failed checks (non-empty means
/// exit code 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub body: String,
    pub failures: Vec<String>,
}

impl Rendered {
    fn ok(body: String) -> Self {
        Rendered { body, failures: Vec::new() }
    }

    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            1
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

#[derive(Serialize)]
struct Automorphism {
    ring: RingId,
    h: TorusEndo,
    a: TorusPoint,
    order: u32,
}

impl Automorphism {
    fn of(psi: &TorusAuto) -> Result<Self, AppError> {
        Ok(Automorphism { ring: psi.ring(), h: psi.linear().clone(), a: psi.translation().clone(), order: psi.order()? })
    }
}

fn automorphism(args: &AutoArgs) -> Result<TorusAuto, AppError> {
    parse_automorphism(&args.ring, &args.h, &args.a)
}

/// The integer matrix on `H¹(A, Z)`, plus the torus map when given as `--h`.
fn linear_action(map: &MapArgs) -> Result<(IntMatrix, Option<TorusAuto>), AppError> {
    if let Some(text) = &map.matrix {
        let m = parse_int_matrix(text)?;
        m.multiplicative_order(kummer_core::torus::LINEAR_ORDER_BOUND)
            .ok_or(Error::NonFiniteOrder { bound: kummer_core::torus::LINEAR_ORDER_BOUND })?;
        return Ok((m, None));
    }
    let h = map.h.as_deref().ok_or_else(|| AppError::Usage("either --h or --matrix is required".into()))?;
    let a = map.a.as_deref().unwrap_or("(0,0)");
    let psi = parse_automorphism(&map.ring, h, a)?;
    Ok((psi.induced_h1_matrix(), Some(psi)))
}

#[derive(Serialize)]
struct LefschetzOutput {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    automorphism: Option<Automorphism>,
    h1_matrix: Vec<Vec<String>>,
    #[serde(flatten)]
    result: KummerLefschetz,
}

fn lefschetz(map: &MapArgs, n: u32, format: Format) -> Result<Rendered, AppError> {
    let (m, psi) = linear_action(map)?;
    let result = lefschetz_kummer_detailed(&m, n)?;
    let out = LefschetzOutput {
        command: "lefschetz",
        automorphism: psi.as_ref().map(Automorphism::of).transpose()?,
        h1_matrix: matrix_rows(&m),
        result,
    };
    Ok(Rendered::ok(match format {
        Format::Json => to_json(&out),
        Format::Text => {
            let r = &out.result;
            let mut s = String::new();
            if let Some(psi) = &psi {
                writeln!(s, "automorphism       {psi}").unwrap();
            }
            writeln!(s, "n                  {}", r.n).unwrap();
            writeln!(s, "L(torus map)       {}", r.torus_lefschetz).unwrap();
            writeln!(s, "series F(t)        {}", r.series).unwrap();
            writeln!(s, "characters         {}", counts_text(&r.characters)).unwrap();
            writeln!(s, "weighted sum       {}", r.weighted_sum).unwrap();
            writeln!(s, "L(K_n map)         {}", r.value).unwrap();
            s
        }
    }))
}

fn counts_text(c: &CharacterCounts) -> String {
    let parts: Vec<String> = c.by_order.iter().map(|(d, k)| format!("{d}:{k}")).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Serialize)]
struct CharactersOutput {
    command: &'static str,
    h1_matrix: Vec<Vec<String>>,
    #[serde(flatten)]
    counts: CharacterCounts,
    total: u64,
}

fn characters(map: &MapArgs, n: u32, format: Format) -> Result<Rendered, AppError> {
    let (m, _) = linear_action(map)?;
    let counts = invariant_character_counts(&m, n)?;
    let out = CharactersOutput { command: "characters", h1_matrix: matrix_rows(&m), total: counts.total(), counts };
    Ok(Rendered::ok(match format {
        Format::Json => to_json(&out),
        Format::Text => format!("n = {}: {} (total {})\n", n, counts_text(&out.counts), out.total),
    }))
}

#[derive(Serialize)]
struct OraclePower {
    element_power: u32,
    exact: bool,
    brute_force: bool,
}

#[derive(Serialize)]
struct OracleCheck {
    max_level: u32,
    powers: Vec<OraclePower>,
    /// No power has a brute-force fixed point that the exact decision missed.
    consistent: bool,
    /// Brute force and exact decision agree on every power.
    agrees: bool,
}

#[derive(Serialize)]
struct FreenessOutput {
    command: &'static str,
    automorphism: Automorphism,
    #[serde(flatten)]
    report: FreenessReport,
    certificates_verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleCheck>,
}

fn oracle(psi: &TorusAuto, report: &FreenessReport, max_level: u32) -> Result<OracleCheck, AppError> {
    let powers = report
        .tested
        .iter()
        .map(|d| {
            let brute_force = brute_force_fixed_point_up_to(&psi.pow(d.element_power), report.n, max_level)?;
            Ok(OraclePower { element_power: d.element_power, exact: d.has_fixed_point, brute_force })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let consistent = powers.iter().all(|p| p.exact || !p.brute_force);
    let agrees = powers.iter().all(|p| p.exact == p.brute_force);
    Ok(OracleCheck { max_level, powers, consistent, agrees })
}

fn freeness(auto: &AutoArgs, n: u32, level: Option<u32>, format: Format) -> Result<Rendered, AppError> {
    let psi = automorphism(auto)?;
    if let Some(l) = level {
        if l == 0 || l > UP_TO_LEVEL_CAP {
            return Err(AppError::Usage(format!("oracle level {l} is outside 1..={UP_TO_LEVEL_CAP}")));
        }
    }
    let report = group_acts_freely(&psi, n)?;
    let certificates_verified = report.verify(&psi);
    let oracle = level.map(|l| oracle(&psi, &report, l)).transpose()?;

    let mut failures = Vec::new();
    if !certificates_verified {
        failures.push("certificates did not re-verify".to_string());
    }
    if let Some(o) = &oracle {
        if !o.consistent {
            failures.push(format!("brute force at levels <= {} found a fixed point the exact decision missed", o.max_level));
        }
    }
    let out = FreenessOutput { command: "freeness", automorphism: Automorphism::of(&psi)?, report, certificates_verified, oracle };
    let body = match format {
        Format::Json => to_json(&out),
        Format::Text => freeness_text(&psi, &out),
    };
    Ok(Rendered { body, failures })
}

fn freeness_text(psi: &TorusAuto, out: &FreenessOutput) -> String {
    let r = &out.report;
    let mut s = String::new();
    writeln!(s, "automorphism  {psi} (order {})", r.order).unwrap();
    writeln!(s, "n             {}", r.n).unwrap();
    writeln!(s, "acts freely   {}", r.acts_freely).unwrap();
    for d in &r.tested {
        let verdict = if d.has_fixed_point { "has fixed points" } else { "fixed-point free" };
        writeln!(s, "  psi^{}: {verdict}", d.element_power).unwrap();
        for c in &d.certificates {
            match &c.outcome {
                Outcome::FixedPoint { witness } => {
                    let pts: Vec<String> = witness.iter().map(ToString::to_string).collect();
                    writeln!(s, "    {}  witness {}", c.orbit_type, pts.join(" ")).unwrap();
                }
                Outcome::Obstructed { obstruction } => {
                    writeln!(s, "    {}  obstructed (value {})", c.orbit_type, obstruction.value).unwrap();
                }
            }
        }
    }
    writeln!(s, "certificates  {}", if out.certificates_verified { "verified" } else { "FAILED" }).unwrap();
    if let Some(o) = &out.oracle {
        let found: Vec<String> = o.powers.iter().map(|p| format!("psi^{}={}", p.element_power, p.brute_force)).collect();
        writeln!(s, "oracle        levels <= {}: {} ({})", o.max_level, found.join(" "), if o.agrees { "agrees" } else if o.consistent { "inconclusive" } else { "CONFLICT" })
            .unwrap();
    }
    s
}

#[derive(Serialize)]
struct ClassifyOutput {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    automorphism: Option<Automorphism>,
    #[serde(skip_serializing_if = "Option::is_none")]
    acts_freely: Option<bool>,
    #[serde(flatten)]
    classification: QuotientClassification,
}

fn verdict_text(c: &QuotientClassification) -> String {
    match &c.verdict {
        Verdict::Enriques { index, dimension } => format!("ENRIQUES index {index}, dimension {dimension}"),
        Verdict::WeakEnriques { chi, dimension } => format!("WEAK_ENRIQUES chi {chi}, dimension {dimension}"),
        Verdict::Invalid { reason } => format!("INVALID ({reason})"),
    }
}

fn classify(
    n: u32,
    d: Option<u32>,
    ring: &str,
    h: Option<&str>,
    a: Option<&str>,
    format: Format,
) -> Result<Rendered, AppError> {
    let out = match (d, h) {
        (Some(d), _) => ClassifyOutput {
            command: "classify",
            automorphism: None,
            acts_freely: None,
            classification: classify_free_quotient(n, d),
        },
        (None, Some(h)) => {
            let psi = parse_automorphism(ring, h, a.unwrap_or("(0,0)"))?;
            let report = group_acts_freely(&psi, n)?;
            if !report.verify(&psi) {
                return Err(AppError::Check(format!("freeness certificates for {psi} failed to re-verify")));
            }
            let classification = if report.acts_freely {
                classify_free_quotient(n, report.order)
            } else {
                QuotientClassification {
                    n,
                    d: report.order,
                    verdict: Verdict::Invalid { reason: "the group does not act freely".into() },
                }
            };
            ClassifyOutput {
                command: "classify",
                automorphism: Some(Automorphism::of(&psi)?),
                acts_freely: Some(report.acts_freely),
                classification,
            }
        }
        (None, None) => return Err(AppError::Usage("classify needs --d or --h".into())),
    };
    Ok(Rendered::ok(match format {
        Format::Json => to_json(&out),
        Format::Text => format!("n = {}, d = {}: {}\n", n, out.classification.d, verdict_text(&out.classification)),
    }))
}

#[derive(Serialize)]
struct DecomposeOutput {
    command: &'static str,
    dim: u32,
    chi: u32,
    irreducible_feasible: bool,
    decompositions: Vec<DecompositionEntry>,
}

#[derive(Serialize)]
struct DecompositionEntry {
    label: String,
    #[serde(flatten)]
    decomposition: FactorDecomposition,
}

fn decompose(dim: u32, chi: u32, format: Format) -> Result<Rendered, AppError> {
    let decompositions: Vec<DecompositionEntry> = decomposition_search(dim, chi)
        .into_iter()
        .map(|d| DecompositionEntry { label: d.to_string(), decomposition: d })
        .collect();
    let out = DecomposeOutput {
        command: "decompose",
        dim,
        chi,
        irreducible_feasible: is_irreducible_feasible(dim, chi),
        decompositions,
    };
    Ok(Rendered::ok(match format {
        Format::Json => to_json(&out),
        Format::Text => {
            let mut s = format!("dim {dim}, chi {chi}: {} decomposition(s)\n", out.decompositions.len());
            for d in &out.decompositions {
                writeln!(s, "  {}", d.label).unwrap();
            }
            s
        }
    }))
}

#[derive(Serialize)]
struct SearchOutput {
    command: &'static str,
    #[serde(flatten)]
    outcome: SearchOutcome,
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: u32,
    ring: &str,
    level: u32,
    max_norm: u32,
    h: Option<&str>,
    exhaustive: bool,
    format: Format,
) -> Result<Rendered, AppError> {
    let ring = parse_ring(ring)?;
    let linear = h.map(|h| parse_endo(ring, h)).transpose()?;
    let params = SearchParams { ring, n, level, max_norm, linear, prefilter: !exhaustive };
    let outcome = run_search(&params)?;
    let out = SearchOutput { command: "search", outcome };
    Ok(Rendered::ok(match format {
        Format::Json => to_json(&out),
        Format::Text => {
            let o = &out.outcome;
            let mut s = format!(
                "{} linear parts, {} candidates, {} decided, {} free\n",
                o.linear_parts,
                o.candidates,
                o.decided,
                o.hits.len()
            );
            for hit in &o.hits {
                writeln!(s, "  h={} a={} order {}: {}", hit.h, hit.a, hit.order, verdict_text(&hit.classification)).unwrap();
            }
            s
        }
    }))
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    command: &'static str,
    #[serde(flatten)]
    report: &'a Report,
}

/// Compare recomputed values with `expectations`.
pub fn verify_paper(expectations: &Expectations, format: Format) -> Rendered {
    let report = run_checks(expectations);
    let failures = report.failures().map(|c| c.name.clone()).collect();
    let body = match format {
        Format::Json => to_json(&VerifyOutput { command: "verify-paper", report: &report }),
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(s, "{tag} {:<36} expected {} computed {}", c.name, c.expected, c.computed).unwrap();
            }
            let passed = report.checks.iter().filter(|c| c.passed).count();
            writeln!(s, "{passed}/{} checks passed", report.checks.len()).unwrap();
            s
        }
    };
    Rendered { body, failures }
}

pub fn run(spec: &CommandSpec) -> Result<Rendered, AppError> {
    let format = spec.format;
    match &spec.command {
        Command::Lefschetz { map, n } => lefschetz(map, *n, format),
        Command::Freeness { auto, n, level } => freeness(auto, *n, *level, format),
        Command::Characters { map, n } => characters(map, *n, format),
        Command::Classify { n, d, ring, h, a } => classify(*n, *d, ring, h.as_deref(), a.as_deref(), format),
        Command::Decompose { dim, chi } => decompose(*dim, *chi, format),
        Command::Search { n, ring, level, max_norm, h, exhaustive } => {
            search(*n, ring, *level, *max_norm, h.as_deref(), *exhaustive, format)
        }
        Command::VerifyPaper => Ok(verify_paper(&Expectations::published(), format)),
    }
}
