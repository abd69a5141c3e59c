use std::fmt::Write as _;
use std::path::Path;

use blackswan_core::decision::{
    check_completeness, parse_problem, search_maps, Bounds, CompletenessReport, DecisionProblem,
    MapSearchReport, Property, SearchMethod,
};
use blackswan_core::kernel::{
    check_proof, corpus_entry, list_corpus, parse_script, CheckReport, ProofScript, Theory,
};
use blackswan_core::logic::{print_formula, Formula};
use blackswan_core::models::{check_entailment, EntailmentError, Mode};
use blackswan_core::report::Envelope;
use serde::{Deserialize, Serialize};

use crate::config::{Caps, CliError};

/// Ceiling on `--max-actions` and `--max-outcomes`.
pub const MAX_TABLE_SIDE: usize = 8;

/// A finished command: exit status, human text and the JSON envelope.
#[derive(Debug)]
pub struct Run {
    pub code: u8,
    pub text: String,
    pub json: String,
}

impl Run {
    fn new<T: Serialize>(kind: &str, ok: bool, text: String, report: T) -> Self {
        Run {
            code: if ok { 0 } else { 1 },
            text,
            json: Envelope::new(kind, ok, report).to_json(),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a proof file, falling back to a bundled corpus entry of that name.
fn load_script(path: &Path) -> Result<ProofScript, CliError> {
    let text = match (path.exists(), corpus_entry(&path.to_string_lossy())) {
        (false, Some(entry)) => entry.text.to_string(),
        _ => read(path)?,
    };
    parse_script(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn check_script(script: &ProofScript) -> Result<CheckReport, CliError> {
    let theory = Theory::builtin(&script.theory).map_err(CliError::input)?;
    check_proof(script, &theory).map_err(CliError::input)
}

fn describe_check(report: &CheckReport, trace: bool, out: &mut String) {
    let _ = writeln!(out, "theory {}, goal {}", report.theory, report.goal);
    for line in &report.lines {
        if trace {
            let status = if line.ok { "ok  " } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:>4}. {status} {:<8} {}",
                line.index,
                line.justification,
                print_formula(&line.formula)
            );
            if let Some(inst) = &line.instantiation {
                let _ = writeln!(out, "            with {inst}");
            }
        }
        if let Some(reason) = &line.reason {
            let _ = writeln!(out, "line {}: {reason}", line.index);
        }
    }
    let _ = writeln!(
        out,
        "{}/{} lines verified",
        report.lines_ok, report.lines_total
    );
    match &report.goal_diagnostic {
        Some(d) => {
            let _ = writeln!(out, "goal {} not reached: {d}", report.goal);
        }
        None if report.goal_reached => {
            let _ = writeln!(out, "goal {} reached", report.goal);
        }
        None => {}
    }
    let _ = writeln!(
        out,
        "{}",
        if report.accepted() {
            "ACCEPTED"
        } else {
            "REJECTED"
        }
    );
}

pub fn check(path: &Path, trace: bool) -> Result<Run, CliError> {
    let script = load_script(path)?;
    let report = check_script(&script)?;
    let mut text = String::new();
    describe_check(&report, trace, &mut text);
    Ok(Run::new("check", report.accepted(), text, report))
}

/// Finds a named axiom or goal in the built-in theories.
fn named_formula(name: &str) -> Result<Formula, CliError> {
    Theory::builtin_names()
        .iter()
        .filter_map(|t| Theory::builtin(t).ok())
        .find_map(|t| t.formula(name).cloned())
        .ok_or_else(|| {
            let mut known: Vec<String> = Theory::builtin_names()
                .iter()
                .filter_map(|t| Theory::builtin(t).ok())
                .flat_map(|t| {
                    t.axioms()
                        .chain(t.goals())
                        .map(|(n, _)| n.to_string())
                        .collect::<Vec<_>>()
                })
                .collect();
            known.sort();
            known.dedup();
            CliError::Input(format!(
                "unknown formula `{name}`; known: {}",
                known.join(", ")
            ))
        })
}

pub fn models(
    premises: &[String],
    conclusion: &str,
    max_n: Option<usize>,
    mode: Mode,
    caps: &Caps,
) -> Result<Run, CliError> {
    let premise_formulas = premises
        .iter()
        .map(|p| named_formula(p))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion_formula = named_formula(conclusion)?;
    let max_n = max_n.unwrap_or_else(|| caps.limits.cap(mode));
    let report = check_entailment(
        &premise_formulas,
        &conclusion_formula,
        max_n,
        mode,
        &caps.limits,
    )
    .map_err(|e| match e {
        EntailmentError::Model(m) => CliError::Config(m.to_string()),
        other => CliError::input(other),
    })?;

    let mut text = String::new();
    let premise_list = if premises.is_empty() {
        "(none)".to_string()
    } else {
        premises.join(", ")
    };
    let _ = writeln!(text, "premises: {premise_list}");
    let _ = writeln!(text, "conclusion: {conclusion}");
    let _ = writeln!(text, "mode: {mode}, n <= {max_n}");
    for s in &report.per_size {
        let _ = writeln!(
            text,
            "  n={}: {} models, {} satisfy the premises, {} counterexamples",
            s.size, s.scanned, s.premises_satisfied, s.counterexamples
        );
    }
    let _ = writeln!(
        text,
        "{} models scanned, {} satisfy the premises, {} counterexamples",
        report.models_scanned, report.premises_satisfied, report.counterexample_count
    );
    if report.holds() {
        let _ = writeln!(text, "ENTAILED for every model with n <= {max_n}");
    } else {
        let shown = report.counterexamples.len();
        let _ = writeln!(text, "NOT ENTAILED; first {shown} counterexample(s):");
        for c in &report.counterexamples {
            let _ = writeln!(text, "  {}", c.model);
        }
    }
    Ok(Run::new("models", report.holds(), text, report))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Complete,
    Incomplete,
}

/// Machine-readable result of `decision`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub events: Vec<String>,
    pub black_swans: Vec<String>,
    /// Completeness of the map given in the file.
    pub map: CompletenessReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<MapSearchReport>,
    /// `complete` if some map is complete, `incomplete` if none is, absent if undetermined.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Expectation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expectation>,
}

impl DecisionReport {
    pub fn ok(&self) -> bool {
        self.verdict.is_some()
            && self.verdict == Some(self.expected.unwrap_or(Expectation::Complete))
    }
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn search_verdict(search: &MapSearchReport) -> Option<Expectation> {
    if search
        .configs
        .iter()
        .any(|c| c.complete_maps.is_some_and(|n| n > 0))
    {
        Some(Expectation::Complete)
    } else if search.complete_maps == Some(0) {
        Some(Expectation::Incomplete)
    } else {
        None
    }
}

fn describe_search(search: &MapSearchReport, out: &mut String) {
    let b = &search.bounds;
    let _ = writeln!(
        out,
        "search over maps with up to {} actions and {} outcomes:",
        b.max_actions, b.max_outcomes
    );
    for c in &search.configs {
        let maps = match c.maps.exact {
            Some(n) => n.to_string(),
            None => format!("{}^{}", c.maps.base, c.maps.exponent),
        };
        let result = match (c.method, c.complete_maps) {
            (SearchMethod::Skipped, _) | (_, None) => "skipped, too many maps".to_string(),
            (SearchMethod::Collision, Some(n)) => format!("{n} complete (divergence collision)"),
            (SearchMethod::Exhaustive, Some(n)) => format!("{n} complete (enumerated)"),
        };
        let _ = writeln!(
            out,
            "  {}x{}: {} relevant vectors, {maps} maps, {result}",
            c.actions, c.outcomes, c.relevant_vectors
        );
        if let Some(lines) = &c.first_complete {
            for l in lines {
                let _ = writeln!(out, "      {l}");
            }
        }
    }
    if let Some((y, z)) = &search.collision {
        let _ = writeln!(
            out,
            "collision witness: {} / {} diverge under every map",
            braces(y),
            braces(z)
        );
    }
    match search.complete_maps {
        Some(n) => {
            let _ = writeln!(out, "complete maps: {n}");
        }
        None => {
            let _ = writeln!(out, "complete maps: not fully counted");
        }
    }
}

pub fn decision(
    path: &Path,
    property: Property,
    max_actions: usize,
    max_outcomes: usize,
    search: bool,
    expected: Option<Expectation>,
    caps: &Caps,
) -> Result<Run, CliError> {
    for (flag, value) in [
        ("--max-actions", max_actions),
        ("--max-outcomes", max_outcomes),
    ] {
        if value == 0 || value > MAX_TABLE_SIDE {
            return Err(CliError::Config(format!(
                "{flag} must be between 1 and {MAX_TABLE_SIDE}, got {value}"
            )));
        }
    }
    let DecisionProblem { universe, phi, .. } = parse_problem(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let bounds = Bounds {
        max_actions,
        max_outcomes,
        max_events: caps.max_events,
    };
    let map = check_completeness(&phi, &universe, &bounds, property).map_err(CliError::input)?;
    let search = if search {
        Some(search_maps(&universe, &bounds, property).map_err(CliError::input)?)
    } else {
        None
    };
    let verdict = match &search {
        Some(s) => search_verdict(s),
        None if map.is_complete() => Some(Expectation::Complete),
        None => Some(Expectation::Incomplete),
    };
    let report = DecisionReport {
        events: universe.names(universe.all()),
        black_swans: universe.names(universe.black_swan_set()),
        map,
        search,
        verdict,
        expected,
    };

    let mut text = String::new();
    let _ = writeln!(text, "events: {}", braces(&report.events));
    let _ = writeln!(text, "black swans: {}", braces(&report.black_swans));
    let _ = writeln!(text, "property: {property}");
    let m = &report.map;
    let _ = writeln!(
        text,
        "map from the file: {:?} ({} qualifying sets, {} pairs checked, {} outcome tables per pair)",
        m.verdict, m.qualifying_sets, m.pairs_checked, m.gammas_per_pair
    );
    if let Some(w) = &m.witness {
        let _ = write!(
            text,
            "witness: {} and {} both give {} / {}",
            braces(&w.y),
            braces(&w.z),
            w.result_y,
            w.result_z
        );
        if w.diverge_collision {
            let _ = write!(
                text,
                "; every event in both is unimaginable, so both DIVERGE under every table"
            );
        }
        text.push('\n');
    }
    if let Some(s) = &report.search {
        describe_search(s, &mut text);
    }
    let verdict = match report.verdict {
        Some(Expectation::Complete) if report.search.is_some() => "COMPLETE MAP EXISTS",
        Some(Expectation::Complete) => "COMPLETE",
        Some(Expectation::Incomplete) if report.search.is_some() => "NO COMPLETE MAP",
        Some(Expectation::Incomplete) => "INCOMPLETE",
        None => "UNDETERMINED",
    };
    let _ = writeln!(text, "{verdict}");
    if let Some(e) = expected {
        let met = if report.ok() { "met" } else { "not met" };
        let _ = writeln!(text, "expectation {e:?}: {met}");
    }
    let ok = report.ok();
    Ok(Run::new("decision", ok, text, report))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub name: String,
    pub theory: String,
    pub goal: String,
    pub lines: usize,
}

pub fn corpus_list() -> Run {
    let mut text = String::new();
    let summaries: Vec<CorpusSummary> = list_corpus()
        .iter()
        .map(|e| {
            let s = e.script();
            CorpusSummary {
                name: e.name.to_string(),
                theory: s.theory,
                goal: s.goal,
                lines: s.lines.len(),
            }
        })
        .collect();
    for s in &summaries {
        let _ = writeln!(
            text,
            "{:<22} theory {:<10} goal {:<5} {} lines",
            s.name, s.theory, s.goal, s.lines
        );
    }
    Run::new("corpus-list", true, text, summaries)
}

pub fn corpus_check() -> Result<Run, CliError> {
    let mut text = String::new();
    let mut reports = Vec::new();
    for entry in list_corpus() {
        let report = check_script(&entry.script())?;
        let status = if report.accepted() {
            "ACCEPTED"
        } else {
            "REJECTED"
        };
        let _ = writeln!(
            text,
            "{:<22} {}/{} lines verified  {status}",
            entry.name, report.lines_ok, report.lines_total
        );
        reports.push(report);
    }
    let ok = reports.iter().all(CheckReport::accepted);
    Ok(Run::new("corpus-check", ok, text, reports))
}

pub fn corpus_show(name: &str) -> Result<Run, CliError> {
    let entry = corpus_entry(name).ok_or_else(|| {
        let names: Vec<&str> = list_corpus().iter().map(|e| e.name).collect();
        CliError::Input(format!(
            "no corpus entry `{name}`; available: {}",
            names.join(", ")
        ))
    })?;
    Ok(Run::new(
        "corpus-show",
        true,
        entry.text.to_string(),
        entry.text,
    ))
}
