//! Subcommand bodies. Each returns an [`Emission`]: the JSON report, its exit
//! code and a one-line human summary.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use wsr_core::applications::CellularBasis;
use wsr_core::harness::{self, Mode, TrialConfig};
use wsr_core::pair::SmoothNormalization;
use wsr_core::{
    cellular_basis, integrality_check, intersection_oracle, picard_report, wsr2_basis,
    CharacteristicPair, Error,
};

use crate::document::{terms_of, PairDocument, PolyDocument};
use crate::report::*;
use crate::{EXIT_CHECK, EXIT_INTERNAL, EXIT_INVALID, EXIT_OK};

#[derive(Clone, Debug, PartialEq)]
pub struct Emission {
    pub code: i32,
    pub body: Value,
    pub summary: String,
}

impl Emission {
    pub fn new<T: Serialize>(code: i32, report: &T, summary: impl Into<String>) -> Self {
        match serde_json::to_value(report) {
            Ok(body) => Emission {
                code,
                body,
                summary: summary.into(),
            },
            Err(e) => Emission::internal(format!("serializing report: {e}")),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        let message = message.into();
        let report = ErrorReport {
            tool: Tool::current(),
            status: "internal".into(),
            input: None,
            violations: vec![ViolationOut::new("Internal", message.clone())],
            witness: None,
        };
        Emission {
            code: EXIT_INTERNAL,
            body: serde_json::to_value(report).unwrap_or(Value::Null),
            summary: format!("internal error: {message}"),
        }
    }

    fn invalid(input: Option<PairDocument>, violations: Vec<ViolationOut>, label: &str) -> Self {
        let summary = format!("{label}: invalid ({})", describe(&violations));
        let report = ErrorReport {
            tool: Tool::current(),
            status: "invalid".into(),
            input,
            violations,
            witness: None,
        };
        Emission::new(EXIT_INVALID, &report, summary)
    }

    fn failed(input: PairDocument, violation: ViolationOut, witness: Value, label: &str) -> Self {
        let summary = format!("{label}: check failed ({})", violation.message);
        let report = ErrorReport {
            tool: Tool::current(),
            status: "failed".into(),
            input: Some(input),
            violations: vec![violation],
            witness: Some(witness),
        };
        Emission::new(EXIT_CHECK, &report, summary)
    }
}

fn describe(violations: &[ViolationOut]) -> String {
    violations
        .iter()
        .map(|v| v.message.as_str())
        .collect::<Vec<_>>()
        .join("; ")
}

fn label(path: &Path) -> String {
    path.file_name()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn read_input(path: &Path) -> Result<String, Emission> {
    fs::read_to_string(path).map_err(|e| {
        Emission::invalid(
            None,
            vec![ViolationOut::new("Unreadable", format!("{}: {e}", path.display()))],
            &label(path),
        )
    })
}

fn load_document(path: &Path) -> Result<PairDocument, Emission> {
    let text = read_input(path)?;
    PairDocument::parse(&text).map_err(|e| {
        Emission::invalid(None, vec![ViolationOut::new("Malformed", e)], &label(path))
    })
}

fn load_pair(path: &Path) -> Result<(PairDocument, CharacteristicPair), Emission> {
    let doc = load_document(path)?;
    match doc.validate() {
        Ok(pair) => Ok((doc, pair)),
        Err(vs) => {
            let vs = vs.iter().map(ViolationOut::from).collect();
            Err(Emission::invalid(Some(doc), vs, &label(path)))
        }
    }
}

macro_rules! try_emit {
    ($e:expr) => {
        match $e {
            Ok(x) => x,
            Err(emission) => return emission,
        }
    };
}

pub fn validate(path: &Path) -> Emission {
    let doc = try_emit!(load_document(path));
    let (validation, code) = match doc.validate() {
        Ok(pair) => (ValidationOut::valid(&pair), EXIT_OK),
        Err(vs) => (ValidationOut::invalid(doc.lambda.len(), &vs), EXIT_INVALID),
    };
    let summary = if validation.valid {
        format!(
            "{}: valid, m = {}, smooth: {}, standard position: {}",
            label(path),
            validation.m,
            yes_no(validation.smooth == Some(true)),
            yes_no(validation.standard_position == Some(true)),
        )
    } else {
        format!("{}: invalid ({})", label(path), describe(&validation.violations))
    };
    let report = ValidateReport {
        tool: Tool::current(),
        input: doc,
        validation,
    };
    Emission::new(code, &report, summary)
}

/// Cellular basis of `pair`, normalizing first when it is not already in
/// standard position.
fn cellular_for(
    pair: &CharacteristicPair,
) -> Result<(CellularBasis, Option<SmoothNormalization>), Error> {
    if pair.in_standard_position() {
        return Ok((cellular_basis(pair)?, None));
    }
    let n = pair.normalize_smooth()?;
    Ok((cellular_basis(&n.pair)?, Some(n)))
}

fn cellular_failure(doc: PairDocument, e: Error, label: &str) -> Emission {
    match &e {
        Error::NoSmoothVertex { dets } => Emission::failed(
            doc,
            ViolationOut::new("NoSmoothVertex", e.to_string()),
            json!({ "vertex_dets": crate::dec::Dec::vec(dets) }),
            label,
        ),
        Error::CellularIdentity { index } => Emission::failed(
            doc,
            ViolationOut::new("CellularIdentity", e.to_string()),
            json!({ "u_index": index }),
            label,
        ),
        _ => Emission::internal(e.to_string()),
    }
}

pub fn analyze(path: &Path) -> Emission {
    let (doc, pair) = try_emit!(load_pair(path));
    let basis = wsr2_basis(&pair);
    let cellular = match cellular_for(&pair) {
        Ok((cb, n)) => Some(CellularOut::new(&cb, n.as_ref())),
        Err(Error::NoSmoothVertex { .. }) => None,
        Err(e) => return cellular_failure(doc, e, &label(path)),
    };
    let report = AnalysisReport {
        tool: Tool::current(),
        input: doc,
        validation: ValidationOut::valid(&pair),
        topology: (&pair.even_cohomology_check()).into(),
        wsr2: (&basis).into(),
        picard: (&picard_report(&pair)).into(),
        cellular,
    };
    let summary = format!(
        "{}: m = {}, index {}, even cohomology: {}, cellular: {}",
        label(path),
        pair.m(),
        report.wsr2.index,
        yes_no(report.topology.even_cohomology),
        match &report.cellular {
            None => "no smooth vertex",
            Some(c) if c.normalization.is_some() => "yes (normalized)",
            Some(_) => "yes",
        },
    );
    Emission::new(EXIT_OK, &report, summary)
}

pub fn basis(path: &Path) -> Emission {
    let (doc, pair) = try_emit!(load_pair(path));
    let wsr2 = BasisOut::from(&wsr2_basis(&pair));
    let summary = format!("{}: index {}", label(path), wsr2.index);
    let report = BasisReport {
        tool: Tool::current(),
        input: doc,
        wsr2,
    };
    Emission::new(EXIT_OK, &report, summary)
}

pub fn picard(path: &Path) -> Emission {
    let (doc, pair) = try_emit!(load_pair(path));
    let picard = PicardOut::from(&picard_report(&pair));
    let summary = format!(
        "{}: [Cl : Pic] = {}, class torsion {:?}, hypothesis satisfied: {}",
        label(path),
        picard.index,
        picard.class_torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
        yes_no(picard.hypothesis_satisfied),
    );
    let report = PicardReportOut {
        tool: Tool::current(),
        input: doc,
        picard,
    };
    Emission::new(EXIT_OK, &report, summary)
}

pub fn cellular(path: &Path) -> Emission {
    let (doc, pair) = try_emit!(load_pair(path));
    match cellular_for(&pair) {
        Ok((cb, n)) => {
            let summary = match &n {
                Some(n) => format!("{}: cellular basis after rotation {}", label(path), n.rotation),
                None => format!("{}: cellular basis", label(path)),
            };
            let report = CellularReport {
                tool: Tool::current(),
                input: doc,
                cellular: CellularOut::new(&cb, n.as_ref()),
            };
            Emission::new(EXIT_OK, &report, summary)
        }
        Err(e) => cellular_failure(doc, e, &label(path)),
    }
}

pub fn check(pair_path: &Path, poly_path: &Path) -> Emission {
    let (doc, pair) = try_emit!(load_pair(pair_path));
    let text = try_emit!(read_input(poly_path));
    let poly = match PolyDocument::parse(&text) {
        Ok(p) => p,
        Err(e) => {
            return Emission::invalid(Some(doc), vec![ViolationOut::new("Malformed", e)], &label(poly_path))
        }
    };
    let f = match poly.to_polynomial(pair.m()) {
        Ok(f) => f,
        Err(e) => {
            return Emission::invalid(
                Some(doc),
                vec![ViolationOut::new("DimensionMismatch", e)],
                &label(poly_path),
            )
        }
    };
    let verdict = match integrality_check(&pair, &f) {
        Ok(v) => v,
        Err(e) => return Emission::internal(e.to_string()),
    };
    let witness = verdict.witness.as_ref().map(WitnessOut::from);
    let summary = match &witness {
        None => format!("{}: integral at every vertex", label(pair_path)),
        Some(w) => format!(
            "{}: not integral at vertex {} (coefficient {} on u^{:?})",
            label(pair_path),
            w.vertex,
            w.coefficient,
            w.exponent
        ),
    };
    let report = CheckReport {
        tool: Tool::current(),
        input: doc,
        polynomial: terms_of(&f),
        integral: witness.is_none(),
        witness,
    };
    let code = if report.integral { EXIT_OK } else { EXIT_CHECK };
    Emission::new(code, &report, summary)
}

pub fn oracle_pair(path: &Path) -> Emission {
    let (doc, pair) = try_emit!(load_pair(path));
    let closed = wsr2_basis(&pair).lattice();
    let oracle = intersection_oracle(&pair);
    let report = PairOracleReport::new(doc, closed.basis(), oracle.basis());
    let code = if report.equal { EXIT_OK } else { EXIT_CHECK };
    let summary = format!(
        "{}: closed form {} fold intersection",
        label(path),
        if report.equal { "equals" } else { "DIFFERS from" }
    );
    Emission::new(code, &report, summary)
}

pub fn trials(command: &str, config: &TrialConfig, sequential: bool) -> Emission {
    let start = Instant::now();
    let outcomes = if sequential {
        harness::run_trials_sequential(config)
    } else {
        harness::run_trials(config)
    };
    let outcomes = match outcomes {
        Ok(o) => o,
        Err(e) => return Emission::internal(e.to_string()),
    };
    let elapsed = start.elapsed();
    let report = HarnessReport::new(command, config, &outcomes);
    let mut summary = format!(
        "{command}: {} trials, m {}..={}, bound {}, seed {}, {} in {elapsed:.2?}",
        config.trials,
        config.m_min,
        config.m_max,
        config.bound,
        config.seed,
        if report.passed { "all passed" } else { "FAILURES" },
    );
    for (name, t) in &report.checks {
        summary.push_str(&format!(
            "\n  {name:<24} passed {:>6}  failed {:>4}  skipped {:>6}",
            t.passed, t.failed, t.skipped
        ));
    }
    let code = if report.passed { EXIT_OK } else { EXIT_CHECK };
    Emission::new(code, &report, summary)
}

pub fn trial_config(m: (usize, usize), bound: u64, trials: usize, seed: u64, mode: Mode) -> TrialConfig {
    TrialConfig {
        m_min: m.0,
        m_max: m.1,
        bound,
        trials,
        seed,
        mode,
        ..TrialConfig::default()
    }
}

fn write_report(dir: &Path, name: &str, body: &Value) -> Result<PathBuf, Emission> {
    let path = dir.join(name);
    let text = crate::render(body);
    fs::create_dir_all(dir)
        .and_then(|_| fs::write(&path, text))
        .map_err(|e| Emission::internal(format!("writing {}: {e}", path.display())))?;
    Ok(path)
}

fn json_inputs(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "report".into(), |s| s.to_string_lossy().into_owned())
}

/// Applies `f` to `input`, or to every `*.json` file inside it when it is a
/// directory. With `out`, reports are also written there as `<stem>.json`.
pub fn over_inputs(
    command: &str,
    input: &Path,
    out: Option<&Path>,
    f: impl Fn(&Path) -> Emission,
) -> Emission {
    if !input.is_dir() {
        let emission = f(input);
        if let Some(dir) = out {
            try_emit!(write_report(dir, &format!("{}.json", stem(input)), &emission.body));
        }
        return emission;
    }

    let files = match json_inputs(input) {
        Ok(files) => files,
        Err(e) => return Emission::internal(format!("listing {}: {e}", input.display())),
    };
    if files.is_empty() {
        let v = ViolationOut::new("NoInputs", format!("no *.json files in {}", input.display()));
        return Emission::invalid(None, vec![v], &label(input));
    }

    let mut entries = Vec::with_capacity(files.len());
    let mut summary = BatchSummary::default();
    let mut lines = Vec::with_capacity(files.len() + 1);
    let mut code = EXIT_OK;
    for path in &files {
        let e = f(path);
        summary.files += 1;
        match e.code {
            EXIT_OK => summary.ok += 1,
            EXIT_INVALID => summary.invalid += 1,
            EXIT_CHECK => summary.failed += 1,
            _ => summary.internal += 1,
        }
        code = code.max(e.code);
        lines.push(e.summary.clone());
        let mut entry = BatchEntry {
            file: label(path),
            exit_code: e.code,
            output: None,
            report: None,
        };
        match out {
            Some(dir) => {
                let name = format!("{}.json", stem(path));
                try_emit!(write_report(dir, &name, &e.body));
                entry.output = Some(name);
            }
            None => entry.report = Some(e.body),
        }
        entries.push(entry);
    }
    lines.push(format!(
        "{} files: {} ok, {} invalid, {} failed, {} internal",
        summary.files, summary.ok, summary.invalid, summary.failed, summary.internal
    ));
    let report = BatchReport {
        tool: Tool::current(),
        command: command.into(),
        entries,
        summary,
    };
    let emission = Emission::new(code, &report, lines.join("\n"));
    if let Some(dir) = out {
        try_emit!(write_report(dir, "summary.json", &emission.body));
    }
    emission
}
