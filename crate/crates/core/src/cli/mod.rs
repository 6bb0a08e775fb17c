//! Command implementations behind the `oortlab` binary.
//!
//! Every command returns an [`Outcome`] holding what to print and the exit
//! code, so the binary stays a thin argument parser and the commands can be
//! driven from tests.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{center, is_simple, predicates, Predicates};
use crate::classify::{
    even_structure_report, is_o_group_by_criterion, is_o_group_by_definition, odd_structure_report,
    theorem_audit, AuditStatus, ClaimResult, OortVerdict, StructureReport, Witness,
};
use crate::construct::GroupSpec;
use crate::error::GroupError;
use crate::field::is_prime;
use crate::group::Group;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String, exit: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            exit,
        }
    }

    fn fail(err: &GroupError) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            exit: error_exit(err),
        }
    }
}

/// Exit code for an error: enumeration limits give 4, everything else 2.
pub fn error_exit(err: &GroupError) -> i32 {
    match err {
        GroupError::CapExceeded { .. } | GroupError::TooLarge(_) => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RouteChoice {
    Def,
    Crit,
    Both,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn parse_group(spec: &str) -> Result<Group, GroupError> {
    spec.parse::<GroupSpec>()?.build()
}

fn check_prime(p: u64) -> Result<(), GroupError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::Range(format!("{p} is not prime")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub spec: String,
    pub order: u64,
    pub degree: usize,
    pub generators: Vec<String>,
    pub center_order: u64,
    pub simple: bool,
    #[serde(flatten)]
    pub predicates: Predicates,
}

pub fn group_summary(spec: &str, g: &Group) -> Result<GroupSummary, GroupError> {
    Ok(GroupSummary {
        spec: spec.to_string(),
        order: g.order(),
        degree: g.degree(),
        generators: g.generators().iter().map(|x| x.to_string()).collect(),
        center_order: center(g)?.order(),
        simple: is_simple(g)?,
        predicates: predicates(g)?,
    })
}

pub fn cmd_construct(spec: &str, table: bool) -> Outcome {
    let summary = parse_group(spec).and_then(|g| group_summary(spec, &g));
    match summary {
        Ok(s) if table => Outcome::ok(
            format!(
                "{}  order {}  degree {}  |Z| {}  abelian {}  solvable {}  nilpotent {}  simple {}\n",
                s.spec,
                s.order,
                s.degree,
                s.center_order,
                s.predicates.abelian,
                s.predicates.solvable,
                s.predicates.nilpotent,
                s.simple
            ),
            EXIT_OK,
        ),
        Ok(s) => Outcome::ok(to_json(&s), EXIT_OK),
        Err(e) => Outcome::fail(&e),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub spec: String,
    pub order: u64,
    pub p: u64,
    pub route: String,
    pub is_o_group: bool,
    pub branch: String,
    pub witnesses: Vec<Witness>,
    pub timing_ms: u64,
}

impl VerdictJson {
    fn new(spec: &str, g: &Group, v: OortVerdict, started: Instant) -> Self {
        VerdictJson {
            spec: spec.to_string(),
            order: g.order(),
            p: v.p,
            route: v.route.name().to_string(),
            is_o_group: v.is_o_group,
            branch: v.branch,
            witnesses: v.witnesses,
            timing_ms: started.elapsed().as_millis() as u64,
        }
    }

    fn table_row(&self) -> String {
        let w: Vec<String> = self
            .witnesses
            .iter()
            .map(|w| {
                format!(
                    "{} <{}>",
                    w.shape,
                    w.generators
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        format!(
            "{:<24} p={:<2} {:<14} {}  {:<40} {}\n",
            self.spec,
            self.p,
            self.route,
            if self.is_o_group { "T" } else { "F" },
            self.branch,
            w.join("; ")
        )
    }
}

/// Runs the definitional route, the criterion route, or both.
pub fn run_routes(
    spec: &str,
    g: &Group,
    p: u64,
    route: RouteChoice,
) -> Result<Vec<VerdictJson>, GroupError> {
    let mut out = Vec::new();
    if route != RouteChoice::Crit {
        let t = Instant::now();
        out.push(VerdictJson::new(
            spec,
            g,
            is_o_group_by_definition(g, p)?,
            t,
        ));
    }
    if route != RouteChoice::Def {
        let t = Instant::now();
        out.push(VerdictJson::new(spec, g, is_o_group_by_criterion(g, p)?, t));
    }
    Ok(out)
}

pub fn cmd_check(spec: &str, p: u64, route: RouteChoice, table: bool) -> Outcome {
    let run = check_prime(p)
        .and_then(|_| parse_group(spec))
        .and_then(|g| run_routes(spec, &g, p, route));
    let verdicts = match run {
        Ok(v) => v,
        Err(e) => return Outcome::fail(&e),
    };
    let agree = verdicts
        .windows(2)
        .all(|w| w[0].is_o_group == w[1].is_o_group);
    let exit = if !agree {
        EXIT_DISAGREE
    } else if verdicts[0].is_o_group {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let stdout = if table {
        verdicts.iter().map(VerdictJson::table_row).collect()
    } else if verdicts.len() == 1 {
        to_json(&verdicts[0])
    } else {
        to_json(&verdicts)
    };
    let mut outcome = Outcome::ok(stdout, exit);
    if !agree {
        outcome.stderr = "routes disagree\n".into();
    }
    outcome
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditJson {
    pub spec: String,
    pub order: u64,
    pub p: u64,
    pub report: Option<StructureReport>,
    pub report_reason: Option<String>,
    pub claims: Vec<ClaimResult>,
    pub violations: Vec<String>,
}

/// The structure report for `p`, or the reason it does not apply.
pub fn structure_report(g: &Group, p: u64) -> Result<Result<StructureReport, String>, GroupError> {
    let rep = if p == 2 {
        even_structure_report(g)
    } else {
        odd_structure_report(g, p)
    };
    match rep {
        Ok(r) => Ok(Ok(r)),
        Err(GroupError::PreconditionFailed(why)) => Ok(Err(why)),
        Err(e) => Err(e),
    }
}

pub fn audit(spec: &str, g: &Group, p: u64) -> Result<AuditJson, GroupError> {
    let (report, report_reason) = match structure_report(g, p)? {
        Ok(r) => (Some(r), None),
        Err(why) => (None, Some(why)),
    };
    let claims = theorem_audit(g, p)?;
    let mut violations: Vec<String> = report
        .as_ref()
        .map(|r| r.violations.clone())
        .unwrap_or_default();
    violations.extend(
        claims
            .iter()
            .filter(|c| c.status == AuditStatus::Fail)
            .map(|c| format!("{}: {}", c.claim, c.detail)),
    );
    Ok(AuditJson {
        spec: spec.to_string(),
        order: g.order(),
        p,
        report,
        report_reason,
        claims,
        violations,
    })
}

pub fn cmd_audit(spec: &str, p: u64, table: bool) -> Outcome {
    let run = check_prime(p)
        .and_then(|_| parse_group(spec))
        .and_then(|g| audit(spec, &g, p));
    let a = match run {
        Ok(a) => a,
        Err(e) => return Outcome::fail(&e),
    };
    let exit = if a.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    let stdout = if table {
        let mut s = format!("{} p={} order {}\n", a.spec, a.p, a.order);
        match (&a.report, &a.report_reason) {
            (Some(r), _) => {
                let _ = writeln!(
                    s,
                    "  case {}  |R| = {}  |P| = {}",
                    r.case, r.r_order, r.sylow_order
                );
                if let Some(q) = &r.quotient {
                    let _ = writeln!(s, "  G/R {} {}", q.relation, q.name);
                }
                for c in &r.chief_factors {
                    let _ = writeln!(
                        s,
                        "  chief factor of order {}  dimension {}  trace {:?}",
                        c.order, c.dimension, c.order4_trace
                    );
                }
            }
            (None, Some(why)) => {
                let _ = writeln!(s, "  no structure report: {why}");
            }
            (None, None) => {}
        }
        for c in &a.claims {
            let _ = writeln!(s, "  {:<28} {:?}  {}", c.claim, c.status, c.detail);
        }
        for v in &a.violations {
            let _ = writeln!(s, "  VIOLATION {v}");
        }
        s
    } else {
        to_json(&a)
    };
    Outcome::ok(stdout, exit)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub line: usize,
    pub spec: String,
    pub primes: Vec<u64>,
    pub expect: Option<Vec<bool>>,
}

/// Parses `<spec> ; p=<list> ; expect=<T/F list>` lines; `#` starts a comment.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, GroupError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| GroupError::Parse(format!("manifest line {}: {what}", i + 1));
        let mut fields = line.split(';').map(str::trim);
        let spec = fields
            .next()
            .filter(|s| !s.is_empty())
            .ok_or_else(|| bad("missing spec"))?;
        spec.parse::<GroupSpec>().map_err(|e| bad(&e.to_string()))?;
        let mut primes = None;
        let mut expect = None;
        for field in fields {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| bad("expected key=value"))?;
            let items = value.split(',').map(str::trim).filter(|s| !s.is_empty());
            match key.trim() {
                "p" => {
                    let ps: Vec<u64> = items
                        .map(|s| s.parse::<u64>().ok().filter(|&p| is_prime(p)))
                        .collect::<Option<_>>()
                        .ok_or_else(|| bad("bad prime list"))?;
                    primes = Some(ps);
                }
                "expect" => {
                    let es: Vec<bool> = items
                        .map(|s| match s {
                            "T" => Some(true),
                            "F" => Some(false),
                            _ => None,
                        })
                        .collect::<Option<_>>()
                        .ok_or_else(|| bad("expect entries must be T or F"))?;
                    expect = Some(es);
                }
                other => return Err(bad(&format!("unknown key {other}"))),
            }
        }
        let primes = primes
            .filter(|p| !p.is_empty())
            .ok_or_else(|| bad("empty prime list"))?;
        if expect
            .as_ref()
            .is_some_and(|e: &Vec<bool>| e.len() != primes.len())
        {
            return Err(bad("expect length differs from prime list"));
        }
        out.push(ManifestEntry {
            line: i + 1,
            spec: spec.to_string(),
            primes,
            expect,
        });
    }
    Ok(out)
}

/// Result of one manifest entry at one prime.
#[derive(Debug, Clone)]
pub struct EntryResult {
    pub spec: String,
    pub p: u64,
    pub verdicts: Vec<VerdictJson>,
    pub expected: Option<bool>,
    pub violations: Vec<String>,
    pub error: Option<String>,
}

impl EntryResult {
    pub fn agree(&self) -> bool {
        self.verdicts
            .windows(2)
            .all(|w| w[0].is_o_group == w[1].is_o_group)
    }

    pub fn verdict(&self) -> Option<bool> {
        self.verdicts.first().map(|v| v.is_o_group)
    }
}

fn evaluate_entry(entry: &ManifestEntry) -> Vec<EntryResult> {
    let group = parse_group(&entry.spec);
    entry
        .primes
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let mut res = EntryResult {
                spec: entry.spec.clone(),
                p,
                verdicts: Vec::new(),
                expected: entry.expect.as_ref().map(|e| e[i]),
                violations: Vec::new(),
                error: None,
            };
            let g = match &group {
                Ok(g) => g,
                Err(e) => {
                    res.error = Some(e.to_string());
                    return res;
                }
            };
            match run_routes(&entry.spec, g, p, RouteChoice::Both) {
                Ok(v) => res.verdicts = v,
                Err(e) => {
                    res.error = Some(e.to_string());
                    return res;
                }
            }
            if res.agree() && res.verdict() == Some(true) {
                match structure_report(g, p) {
                    Ok(Ok(rep)) => res.violations = rep.violations,
                    Ok(Err(_)) => {}
                    Err(e) => res.error = Some(e.to_string()),
                }
            }
            res
        })
        .collect()
}

/// Evaluates every entry at every prime, in manifest order.
pub fn evaluate_manifest(entries: &[ManifestEntry], jobs: usize) -> Vec<EntryResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| entries.par_iter().map(evaluate_entry).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect()
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationSummary {
    pub entries: usize,
    pub checks: usize,
    pub positive: usize,
    pub negative: usize,
    pub disagreements: Vec<String>,
    pub expect_mismatches: Vec<String>,
    pub violations: Vec<String>,
    pub errors: Vec<String>,
}

impl ValidationSummary {
    pub fn from_results(entries: usize, results: &[EntryResult]) -> Self {
        let mut s = ValidationSummary {
            entries,
            ..Default::default()
        };
        for r in results {
            let tag = format!("{} p={}", r.spec, r.p);
            if let Some(e) = &r.error {
                s.errors.push(format!("{tag}: {e}"));
                continue;
            }
            s.checks += 1;
            if !r.agree() {
                s.disagreements.push(tag);
                continue;
            }
            match r.verdict() {
                Some(true) => s.positive += 1,
                _ => s.negative += 1,
            }
            if let (Some(want), Some(got)) = (r.expected, r.verdict()) {
                if want != got {
                    s.expect_mismatches.push(format!(
                        "{tag}: expected {}, got {}",
                        tf(want),
                        tf(got)
                    ));
                }
            }
            s.violations
                .extend(r.violations.iter().map(|v| format!("{tag}: {v}")));
        }
        s
    }

    /// Errors first, then disagreements, violations, and expect mismatches.
    pub fn exit_code(&self) -> i32 {
        if !self.errors.is_empty() {
            EXIT_USAGE
        } else if !self.disagreements.is_empty() {
            EXIT_DISAGREE
        } else if !self.violations.is_empty() {
            EXIT_VIOLATION
        } else if !self.expect_mismatches.is_empty() {
            EXIT_NEGATIVE
        } else {
            EXIT_OK
        }
    }
}

fn tf(b: bool) -> &'static str {
    if b {
        "T"
    } else {
        "F"
    }
}

pub fn cmd_validate(manifest: &Path, jobs: usize, out: Option<&Path>, table: bool) -> Outcome {
    let text = match std::fs::read_to_string(manifest) {
        Ok(t) => t,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: {}: {e}\n", manifest.display()),
                exit: EXIT_USAGE,
            }
        }
    };
    let entries = match parse_manifest(&text) {
        Ok(e) => e,
        Err(e) => return Outcome::fail(&e),
    };
    let results = evaluate_manifest(&entries, jobs);
    if let Some(path) = out {
        let mut lines = String::new();
        for v in results.iter().flat_map(|r| &r.verdicts) {
            lines.push_str(&serde_json::to_string(v).expect("serializable"));
            lines.push('\n');
        }
        if let Err(e) = std::fs::write(path, lines) {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: {}: {e}\n", path.display()),
                exit: EXIT_USAGE,
            };
        }
    }
    let summary = ValidationSummary::from_results(entries.len(), &results);
    let stdout = if table {
        let mut s = String::new();
        for r in &results {
            let verdict = match (r.error.as_deref(), r.agree(), r.verdict()) {
                (Some(e), _, _) => format!("error: {e}"),
                (None, false, _) => "DISAGREE".to_string(),
                (None, true, Some(v)) => tf(v).to_string(),
                (None, true, None) => "-".to_string(),
            };
            let _ = writeln!(s, "{:<28} p={:<2} {}", r.spec, r.p, verdict);
        }
        let _ = writeln!(
            s,
            "entries {}  checks {}  positive {}  negative {}  disagreements {}  mismatches {}  violations {}  errors {}",
            summary.entries,
            summary.checks,
            summary.positive,
            summary.negative,
            summary.disagreements.len(),
            summary.expect_mismatches.len(),
            summary.violations.len(),
            summary.errors.len()
        );
        for line in summary
            .disagreements
            .iter()
            .chain(&summary.expect_mismatches)
            .chain(&summary.violations)
            .chain(&summary.errors)
        {
            let _ = writeln!(s, "  {line}");
        }
        s
    } else {
        to_json(&summary)
    };
    Outcome::ok(stdout, summary.exit_code())
}

/// The manifest shipped with the crate.
pub const BUNDLED_MANIFEST: &str = include_str!("../../data/catalogue.txt");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parsing() {
        let m = parse_manifest("# comment\nC:12 ; p=2,3 ; expect=T,T\n\nD:18;p=3\n").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].primes, vec![2, 3]);
        assert_eq!(m[0].expect, Some(vec![true, true]));
        assert_eq!(m[1].expect, None);
        assert!(parse_manifest("C:12 ; p=2 ; expect=T,F").is_err());
        assert!(parse_manifest("C:12 ; p=4").is_err());
        assert!(parse_manifest("X:12 ; p=2").is_err());
        assert!(parse_manifest("C:12").is_err());
        assert!(parse_manifest("").unwrap().is_empty());
    }

    #[test]
    fn bundled_manifest_parses() {
        let m = parse_manifest(BUNDLED_MANIFEST).unwrap();
        assert!(m.len() >= 100);
    }

    #[test]
    fn check_exit_codes() {
        assert_eq!(cmd_check("D:18", 3, RouteChoice::Both, false).exit, EXIT_OK);
        let o = cmd_check("S:5", 5, RouteChoice::Both, false);
        assert_eq!(o.exit, EXIT_NEGATIVE);
        assert!(o.stdout.contains("\"order\": 20"));
        assert_eq!(
            cmd_check("Z:5", 5, RouteChoice::Def, false).exit,
            EXIT_USAGE
        );
        assert_eq!(
            cmd_check("C:5", 4, RouteChoice::Def, false).exit,
            EXIT_USAGE
        );
    }

    #[test]
    fn cap_exit_code() {
        let o = cmd_check("S:9", 3, RouteChoice::Def, false);
        assert_eq!(o.exit, EXIT_CAP, "{}", o.stderr);
    }

    #[test]
    fn audit_outputs() {
        let o = cmd_audit("C:15", 3, false);
        assert_eq!(o.exit, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["report"]["case"], "G=RP");
        let o = cmd_audit("DELPERM:5:S4:sign", 2, false);
        assert_eq!(o.exit, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["report"]["case"], "2b");
        assert_eq!(v["report"]["chief_factors"][0]["order4_trace"], 1);
        let o = cmd_audit("A:6", 3, false);
        assert_eq!(o.exit, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert!(v["report"].is_null());
    }

    #[test]
    fn construct_summary() {
        let o = cmd_construct("PSL2:7", false);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["order"], 168);
        assert_eq!(v["simple"], true);
        assert_eq!(cmd_construct("nonsense", false).exit, EXIT_USAGE);
    }
}
