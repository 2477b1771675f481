//! The six subcommands as thin adapters over the library.

use bpfcheck::exact::parse_rational;
use bpfcheck::helmke::{
    ablated_profile, alpha_min, builtin_falsified, builtin_manifest, run_chain, run_manifest, CheckManifest,
    CheckVerdict, HelmkeError, HelmkeProfile,
};
use bpfcheck::pell::{rojas_beta, verify_surface_row, PellError, RowVerdict};
use bpfcheck::polarization::{classify, stirling_check, PolarizationError, TypeStatus};
use bpfcheck::{RadicalExpr, Rational};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::report::{plain, Output, Report, Table, Verdict};

/// Digits shown for decimal renderings; display only.
pub const DISPLAY_DIGITS: u32 = 12;

#[derive(Debug)]
pub enum CommandError {
    /// Bad arguments; exit 64.
    Usage(String),
    /// Malformed manifest or expectation file; exit 65.
    Input(String),
    /// Exact comparison could not be decided; exit 2.
    Undecided(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) => 64,
            CommandError::Input(_) => 65,
            CommandError::Undecided(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CommandError::Usage(m) | CommandError::Input(m) | CommandError::Undecided(m) => m,
        }
    }
}

impl From<HelmkeError> for CommandError {
    fn from(e: HelmkeError) -> Self {
        match e {
            HelmkeError::Manifest(m) => CommandError::Input(m),
            HelmkeError::Exact(x) => CommandError::Undecided(x.to_string()),
            other => CommandError::Usage(other.to_string()),
        }
    }
}

impl From<PolarizationError> for CommandError {
    fn from(e: PolarizationError) -> Self {
        match e {
            PolarizationError::UndecidedAtPrecision { .. } => CommandError::Undecided(e.to_string()),
            other => CommandError::Usage(other.to_string()),
        }
    }
}

impl From<PellError> for CommandError {
    fn from(e: PellError) -> Self {
        CommandError::Usage(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CommandError>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn inputs(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn decimal(e: &RadicalExpr) -> String {
    e.to_decimal(DISPLAY_DIGITS).unwrap_or_default()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn alpha_table(g_from: u32, g_to: u32) -> Result<Output> {
    if g_from < 6 || g_from > g_to {
        return Err(CommandError::Usage(format!("need 6 <= g-from <= g-to, got {g_from}..{g_to}")));
    }
    let mut report = Report::new("alpha-table", inputs(&[("g_from", json!(g_from)), ("g_to", json!(g_to))]));
    let mut table = Table::new(&["g", "d", "alpha", "radicand", "decimal", "argmin"]);
    let mut minima = Vec::new();
    let mut notes = Vec::new();
    for g in g_from..=g_to {
        let m = alpha_min(g)?;
        for a in &m.all {
            let expr = a.expr();
            let (text, dec) = (expr.to_string(), decimal(&expr));
            let argmin = a.d == m.argmin;
            table.push(vec![
                g.to_string(),
                a.d.to_string(),
                text.clone(),
                a.radicand.to_string(),
                dec.clone(),
                argmin.to_string(),
            ]);
            report.rows.push(json!({
                "g": g, "d": a.d, "alpha": text, "radicand": a.radicand.to_string(),
                "index": a.index, "decimal": dec, "argmin": argmin,
            }));
        }
        let v = m.value.expr();
        notes.push(format!("alpha_{g} = {v} ~ {} (d = {}, below sqrt 5: {})", decimal(&v), m.argmin, m.below_sqrt5));
        minima.push(json!({"g": g, "d": m.argmin, "alpha": v.to_string(), "below_sqrt5": m.below_sqrt5}));
    }
    report.summary = json!({ "minima": minima });
    Ok(Output { report, table, notes })
}

pub fn classify_cmd(g: u32) -> Result<Output> {
    let c = classify(g)?;
    let mut report = Report::new("classify", inputs(&[("g", json!(g))]));
    let mut table = Table::new(&["type", "degree", "status", "failing_k", "note"]);
    for v in &c.verdicts {
        table.push(vec![v.ty.to_string(), v.degree.to_string(), v.status.to_string(), opt(&v.failing_k), opt(&v.note)]);
        report.rows.push(to_value(v));
    }
    let counts: Map<String, Value> =
        TypeStatus::ALL.iter().map(|s| (s.label().to_string(), json!(c.count(*s)))).collect();
    let exceptional: Vec<Value> = c.exceptional().map(|v| to_value(&v.ty)).collect();
    let mut notes = vec![format!("threshold: delta >= {}", c.threshold)];
    notes.extend(TypeStatus::ALL.iter().map(|s| format!("{}: {}", s.label(), c.count(*s))));
    let ex: Vec<String> = c.exceptional().map(|v| v.ty.to_string()).collect();
    notes.push(format!("exceptional: [{}]", ex.join(", ")));
    report.summary = json!({
        "threshold": c.threshold.to_string(), "types": c.verdicts.len(),
        "counts": counts, "exceptional": exceptional,
    });
    Ok(Output { report, table, notes })
}

pub fn pell_cmd(d_max: u64) -> Result<Output> {
    if d_max == 0 {
        return Err(CommandError::Usage("d-max must be at least 1".into()));
    }
    let mut report = Report::new("pell", inputs(&[("d_max", json!(d_max))]));
    let mut table = Table::new(&["d", "branch", "candidates", "pell_x", "pell_y", "middle", "verdict"]);
    let mut failures = 0;
    for d in 1..=d_max {
        let beta = rojas_beta(d)?;
        let values: Vec<String> = beta.candidates.iter().map(|c| c.value.to_string()).collect();
        let fundamental = beta.candidates.first().and_then(|c| c.solution.as_ref());
        let branch = plain(&to_value(&beta.branch));
        let mut row = json!({
            "d": d, "branch": branch, "candidates": to_value(&beta.candidates),
            "middle": null, "verdict": null,
        });
        let (mut middle, mut verdict) = (String::new(), "n/a".to_string());
        // the bound is only claimed from d = 6 on
        if d >= 6 {
            let s = verify_surface_row(d)?;
            if s.verdict == RowVerdict::Fail {
                failures += 1;
            }
            middle = s.middle.clone();
            verdict = plain(&to_value(&s.verdict));
            row["middle"] = json!(s.middle);
            row["min_below_middle"] = json!(s.min_below_middle);
            row["max_below_middle"] = json!(s.max_below_middle);
            row["middle_below_n"] = json!(s.middle_below_n);
            row["verdict"] = json!(verdict);
        }
        table.push(vec![
            d.to_string(),
            branch,
            values.join(";"),
            fundamental.map(|s| s.x.to_string()).unwrap_or_default(),
            fundamental.map(|s| s.y.to_string()).unwrap_or_default(),
            middle,
            verdict,
        ]);
        report.rows.push(row);
    }
    if failures > 0 {
        report.verdict = Verdict::Fail;
    }
    let notes = vec![format!("rows checked against the bound: {}", d_max.saturating_sub(5))];
    Ok(Output { report, table, notes })
}

pub enum ManifestSource {
    Builtin,
    Falsified,
    File(String),
}

pub fn verify_cmd(source: ManifestSource, digit_cap: u32) -> Result<Output> {
    let (manifest, label) = match &source {
        ManifestSource::Builtin => (builtin_manifest(), "builtin".to_string()),
        ManifestSource::Falsified => (builtin_falsified(), "builtin-falsified".to_string()),
        ManifestSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CommandError::Input(format!("{path}: {e}")))?;
            (CheckManifest::from_json(&text)?, path.clone())
        }
    };
    let mut report = Report::new(
        "verify",
        inputs(&[("manifest", json!(label)), ("precision_digits", json!(digit_cap))]),
    );
    let mut table = Table::new(&["id", "verdict", "kind", "detail", "error"]);
    let outcomes = run_manifest(&manifest, digit_cap);
    let mut verdict = Verdict::Pass;
    for o in &outcomes {
        let cert = o.certificate.as_ref().map(to_value).unwrap_or(Value::Null);
        let detail = match (cert.get("route"), cert.get("sturm_verdict")) {
            (Some(route), _) => format!("{} ({})", plain(&cert["outcome"]), plain(route)),
            (_, Some(sturm)) => format!("sturm {}", plain(sturm)),
            _ => String::new(),
        };
        table.push(vec![
            o.id.clone(),
            plain(&to_value(&o.verdict)),
            plain(&cert["kind"]),
            detail,
            opt(&o.error),
        ]);
        report.rows.push(to_value(o));
        verdict = match (verdict, o.verdict) {
            (Verdict::Fail, _) | (_, CheckVerdict::Fail | CheckVerdict::Error) => Verdict::Fail,
            (Verdict::Undecided, _) | (_, CheckVerdict::Undecided) => Verdict::Undecided,
            _ => Verdict::Pass,
        };
    }
    report.verdict = verdict;
    let passed = outcomes.iter().filter(|o| o.verdict == CheckVerdict::Pass).count();
    let notes = vec![format!("{passed} of {} checks pass", outcomes.len())];
    Ok(Output { report, table, notes })
}

pub struct ChainArgs {
    pub g: u32,
    pub m: Option<String>,
    pub margin: Option<String>,
    pub ablate: bool,
}

fn rational_arg(name: &str, text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| CommandError::Usage(format!("--{name}: {e}")))
}

fn profile(args: &ChainArgs) -> Result<HelmkeProfile> {
    let margin = args.margin.as_deref().map(|t| rational_arg("margin", t)).transpose()?;
    match (args.g, &args.m) {
        (g, _) if g < 4 => Err(CommandError::Usage(format!("chain needs g >= 4, got {g}"))),
        (5, m) => {
            if args.ablate || margin.is_some() {
                return Err(CommandError::Usage("g = 5 takes --m only".into()));
            }
            let m = match m {
                Some(t) => rational_arg("m", t)?,
                None => rational_arg("m", "801/100")?,
            };
            Ok(HelmkeProfile::fivefold(m)?)
        }
        (g, Some(t)) => {
            if args.ablate || margin.is_some() {
                return Err(CommandError::Usage("--m excludes --margin and --ablate".into()));
            }
            let m: RadicalExpr = t.parse().map_err(|e| CommandError::Usage(format!("--m: {e}")))?;
            let mut p = HelmkeProfile::standard(g, m)?;
            if g >= 6 {
                p.m_threshold = Some(RadicalExpr::int(2 * g as i64) - alpha_min(g)?.value.expr());
            }
            Ok(p)
        }
        (4, None) => Err(CommandError::Usage("g = 4 needs an explicit --m".into())),
        (g, None) => {
            let margin = margin.unwrap_or(rational_arg("margin", "1/1000")?);
            Ok(if args.ablate { ablated_profile(g, margin)? } else { HelmkeProfile::alpha_margin(g, margin)? })
        }
    }
}

pub fn chain_cmd(args: &ChainArgs) -> Result<Output> {
    let p = profile(args)?;
    let r = run_chain(&p)?;
    let mut report = Report::new(
        "chain",
        inputs(&[
            ("g", json!(args.g)),
            ("m", json!(p.m.to_string())),
            ("ablate", json!(args.ablate)),
        ]),
    );
    let mut table = Table::new(&[
        "d", "floor", "available", "required", "deficit", "mult_cap", "outcome", "route", "margin", "pass",
    ]);
    for s in &r.steps {
        table.push(vec![
            s.d.to_string(),
            s.floor.to_string(),
            decimal(&s.available),
            decimal(&s.required),
            decimal(&s.deficit),
            s.mult_cap.to_string(),
            plain(&to_value(&s.outcome)),
            plain(&to_value(&s.route)["route"]),
            plain(&to_value(&s.margin)),
            s.pass.to_string(),
        ]);
        report.rows.push(to_value(s));
    }
    report.verdict = if r.undecided() {
        Verdict::Undecided
    } else if r.overall {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut notes = vec![
        format!("m = {} ~ {}", r.m, decimal(&r.m)),
        format!("m above threshold: {}", opt(&r.m_above_threshold)),
        format!("c upper = {} ~ {}", r.c_upper, decimal(&r.c_upper)),
        format!("starting deficit = {} ~ {}", r.deficit_start, decimal(&r.deficit_start)),
    ];
    notes.extend(r.assumptions.iter().map(|a| format!("assumption: {a}")));
    report.summary = json!({
        "m": r.m.to_string(), "m_above_threshold": r.m_above_threshold,
        "c_upper": r.c_upper.to_string(), "deficit_start": r.deficit_start.to_string(),
        "assumptions": r.assumptions, "overall": r.overall,
    });
    Ok(Output { report, table, notes })
}

pub fn stirling_cmd(g_max: u32, refined: bool) -> Result<Output> {
    if g_max < 2 {
        return Err(CommandError::Usage("g-max must be at least 2".into()));
    }
    let s = stirling_check(g_max, refined)?;
    let mut report =
        Report::new("stirling", inputs(&[("g_max", json!(g_max)), ("refined", json!(refined))]));
    let mut table = Table::new(&["g", "checked", "holds", "first_failure", "pi_digits"]);
    for row in &s.rows {
        table.push(vec![
            row.g.to_string(),
            row.checked.to_string(),
            row.holds.to_string(),
            opt(&row.first_failure),
            opt(&row.pi_digits),
        ]);
        report.rows.push(to_value(row));
    }
    if !s.all_hold() {
        report.verdict = Verdict::Fail;
    }
    let pairs: u32 = s.rows.iter().map(|r| r.checked).sum();
    let notes = vec![format!("pairs (g, d) checked: {pairs}")];
    Ok(Output { report, table, notes })
}
