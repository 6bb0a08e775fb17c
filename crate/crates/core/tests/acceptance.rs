//! Acceptance run. Prints one PASS/FAIL line per criterion, then fails if
//! any criterion failed.

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use oortlab::analysis::{
    center, centralizer, centralizer_of, derived_subgroup, is_p_group, is_pi_number, is_solvable,
    minimal_normal_subgroups, normalizer, o_pi, p_part, prime_factors, sylow,
};
use oortlab::classify::{
    even_structure_report, is_o_group_by_criterion, is_o_group_by_definition, odd_structure_report,
    shape_of, Shape,
};
use oortlab::cli::{evaluate_manifest, parse_manifest, ValidationSummary, BUNDLED_MANIFEST};
use oortlab::construct::build;
use oortlab::perm::gcd;
use oortlab::{Group, Permutation};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Distinct specs of the bundled manifest with their built groups.
fn catalogue() -> Vec<(String, Group)> {
    let mut seen = HashSet::new();
    parse_manifest(BUNDLED_MANIFEST)
        .unwrap()
        .into_iter()
        .filter(|e| seen.insert(e.spec.clone()))
        .map(|e| {
            let g = build(&e.spec).unwrap();
            (e.spec, g)
        })
        .collect()
}

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let entries = parse_manifest(BUNDLED_MANIFEST).unwrap();
    let results = evaluate_manifest(&entries, 1);
    let elapsed = started.elapsed();
    let summary = ValidationSummary::from_results(entries.len(), &results);
    let covered: HashSet<(String, u64)> = results.iter().map(|r| (r.spec.clone(), r.p)).collect();
    let distinct: HashSet<&str> = entries.iter().map(|e| e.spec.as_str()).collect();
    let full = distinct.iter().all(|s| {
        PRIMES
            .iter()
            .all(|&p| covered.contains(&(s.to_string(), p)))
    });
    let ok = summary.disagreements.is_empty()
        && summary.errors.is_empty()
        && full
        && elapsed < Duration::from_secs(300);
    outcome(
        ok,
        format!(
            "{} groups, {} checks, {} disagreements, {} errors, all primes covered {full}, {:.1}s single-threaded {:?}",
            distinct.len(),
            summary.checks,
            summary.disagreements.len(),
            summary.errors.len(),
            elapsed.as_secs_f64(),
            summary.disagreements
        ),
    )
}

fn verdict_table() -> Outcome {
    let table: [(&str, u64, bool); 18] = [
        ("D:18", 3, true),
        ("S:4", 2, true),
        ("S:4", 3, true),
        ("S:5", 5, false),
        ("A:6", 3, false),
        ("A:6", 5, true),
        ("A:5", 2, true),
        ("Q:8", 2, false),
        ("SD:16", 2, false),
        ("PSL2:7", 3, true),
        ("PSL2:7", 7, false),
        ("PGL2:5", 5, false),
        ("PSL3_4", 5, true),
        ("INV:3:8:klein", 2, false),
        ("INV:3:8:cyclic", 2, true),
        ("DELPERM:5:S4", 2, false),
        ("DELPERM:5:S4:sign", 2, true),
        ("DELPERM:5:A4", 2, true),
    ];
    let mut mismatches = Vec::new();
    for (spec, p, want) in table {
        let g = build(spec).unwrap();
        let def = is_o_group_by_definition(&g, p).unwrap();
        let crit = is_o_group_by_criterion(&g, p).unwrap();
        if def.is_o_group != want || crit.is_o_group != want {
            mismatches.push(format!("{spec} p={p}"));
        }
        if (spec, p) == ("S:5", 5) && !def.witnesses.iter().any(|w| w.order() == 20) {
            mismatches.push("S:5 p=5 has no witness of order 20".into());
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{} entries, mismatches {mismatches:?}", table.len()),
    )
}

/// Field sizes `q` with `G ≅ PSL(2,q)` or `PGL(2,q)` for the linear entries.
fn linear_fields(spec: &str) -> Vec<u64> {
    let q: u64 = spec.rsplit(':').next().unwrap().parse().unwrap();
    match spec {
        // PSL(2,4) ≅ PSL(2,5)
        "PSL2:4" | "PSL2:5" => vec![4, 5],
        _ => vec![q],
    }
}

fn simple_sweep() -> Outcome {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for (spec, g) in catalogue() {
        let linear = spec.starts_with("PSL2:") || spec.starts_with("PGL2:");
        if !linear && spec != "PSL3_4" {
            continue;
        }
        for p in prime_factors(g.order()).into_iter().filter(|&p| p != 2) {
            let sp = sylow(&g, p).unwrap();
            let n_eq_c =
                normalizer(&g, &sp).unwrap().order() == centralizer_of(&g, &sp).unwrap().order();
            let listed = if linear {
                linear_fields(&spec)
                    .iter()
                    .any(|&q| q > 3 && (q * q - 1) % p == 0)
            } else {
                p == 5
            };
            let expected = listed || n_eq_c;
            let got = is_o_group_by_definition(&g, p).unwrap().is_o_group;
            checked += 1;
            if got != expected {
                mismatches.push(format!("{spec} p={p}: expected {expected}, got {got}"));
            }
        }
    }
    outcome(
        mismatches.is_empty() && checked > 0,
        format!("{checked} (group, odd prime) pairs, mismatches {mismatches:?}"),
    )
}

fn structural_audits() -> Outcome {
    let mut violations = Vec::new();
    let (mut even, mut odd) = (0, 0);
    for (spec, g) in catalogue() {
        for p in PRIMES {
            if !is_o_group_by_criterion(&g, p).unwrap().is_o_group || g.order() % p != 0 {
                continue;
            }
            if p == 2 {
                let sp = sylow(&g, 2).unwrap();
                if !matches!(shape_of(&sp).unwrap(), Shape::Dihedral { .. }) {
                    continue;
                }
                even += 1;
                let rep = even_structure_report(&g).unwrap();
                violations.extend(rep.violations.iter().map(|v| format!("{spec} p=2: {v}")));
                if rep.case == "unclassified" {
                    violations.push(format!("{spec} p=2: unclassified"));
                }
                if spec.starts_with("DELPERM") {
                    let r: u64 = spec.split(':').nth(1).unwrap().parse().unwrap();
                    if rep.chief_factors.is_empty()
                        || rep.chief_factors.iter().any(|c| c.order != r * r * r)
                    {
                        violations.push(format!("{spec}: chief factors not of order r^3"));
                    }
                    if rep.case == "2b"
                        && rep.chief_factors.iter().any(|c| c.order4_trace != Some(1))
                    {
                        violations.push(format!("{spec}: trace differs from 1"));
                    }
                }
            } else {
                odd += 1;
                let rep = odd_structure_report(&g, p).unwrap();
                violations.extend(rep.violations.iter().map(|v| format!("{spec} p={p}: {v}")));
                let triple = rep
                    .checks
                    .iter()
                    .any(|c| c.name == "easy-odd-equivalence" && c.passed);
                if !triple {
                    violations.push(format!("{spec} p={p}: triple equivalence"));
                }
                let classified = match rep.case.as_str() {
                    "G=RP" => rep.ncq == 1,
                    "G=RD" | "almost-simple" => rep.ncq == 2,
                    _ => false,
                };
                if !classified {
                    violations.push(format!("{spec} p={p}: case {}", rep.case));
                }
            }
        }
    }
    outcome(
        violations.is_empty() && even > 0 && odd > 0,
        format!("{even} even and {odd} odd reports, violations {violations:?}"),
    )
}

fn engine_properties() -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut groups = 0;
    for (spec, g) in catalogue() {
        if g.order() > 5000 {
            continue;
        }
        groups += 1;
        let elems = g.element_list().unwrap();
        let distinct: HashSet<&Permutation> = elems.iter().collect();
        if elems.len() as u64 != g.order() || distinct.len() != elems.len() {
            failures.push(format!("{spec}: enumeration has {} elements", elems.len()));
        }
        let primes = prime_factors(g.order());
        for &p in &primes {
            let s = sylow(&g, p).unwrap();
            if s.order() != p_part(g.order(), p) || !is_p_group(&s, p) || !s.is_subgroup_of(&g) {
                failures.push(format!("{spec}: Sylow {p}"));
            }
        }
        let mut pis: Vec<Vec<u64>> = primes.iter().map(|&p| vec![p]).collect();
        pis.extend(
            primes
                .iter()
                .map(|&p| primes.iter().copied().filter(|&x| x != p).collect()),
        );
        for pi in pis {
            let o = o_pi(&g, &pi).unwrap();
            if !o.is_normal_in(&g) || !is_pi_number(o.order(), &pi) {
                failures.push(format!("{spec}: O_{pi:?} is not a normal pi-subgroup"));
                continue;
            }
            // maximality: the quotient has no nontrivial normal pi-subgroup
            let (q, _) = g.quotient_by(&o).unwrap();
            if !o_pi(&q, &pi).unwrap().is_trivial() {
                failures.push(format!("{spec}: O_{pi:?} is not maximal"));
            }
            if q.order() * o.order() != g.order() {
                failures.push(format!("{spec}: |G/O_{pi:?}| |O_{pi:?}| ≠ |G|"));
            }
            // every minimal normal pi-subgroup lies inside
            for m in minimal_normal_subgroups(&g).unwrap() {
                if is_pi_number(m.order(), &pi) && !m.is_subgroup_of(&o) {
                    failures.push(format!(
                        "{spec}: minimal normal pi-subgroup outside O_{pi:?}"
                    ));
                }
            }
        }
        for n in [derived_subgroup(&g).unwrap(), center(&g).unwrap()] {
            let (q, map) = g.quotient_by(&n).unwrap();
            if q.order() * n.order() != g.order() || map.index() as u64 != q.order() {
                failures.push(format!(
                    "{spec}: quotient order by subgroup of order {}",
                    n.order()
                ));
            }
        }
    }
    let elapsed = started.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{groups} groups of order ≤ 5000, {:.1}s, failures {failures:?}",
            elapsed.as_secs_f64()
        ),
    )
}

/// The affine group `x ↦ ax + b` over the integers mod a prime.
fn affine_line(p: usize) -> Group {
    let shift: Vec<usize> = (0..p).map(|x| (x + 1) % p).collect();
    let g = (2..p)
        .find(|&g| (1..p - 1).all(|k| (0..k).fold(1, |acc, _| acc * g % p) != 1))
        .unwrap();
    let scale: Vec<usize> = (0..p).map(|x| x * g % p).collect();
    Group::from_generators(
        p,
        &[
            Permutation::from_images(&shift).unwrap(),
            Permutation::from_images(&scale).unwrap(),
        ],
    )
    .unwrap()
}

fn coprime_action_audit() -> Outcome {
    let mut overgroups: Vec<(String, Group)> = catalogue()
        .into_iter()
        .filter(|(_, g)| g.order() <= 5000)
        .collect();
    for p in [5, 7, 11, 13] {
        overgroups.push((format!("AGL(1,{p})"), affine_line(p)));
    }
    let mut instances = 0;
    let mut excluded = 0;
    let mut failures = Vec::new();
    let mut seen = HashSet::new();
    for (name, x) in &overgroups {
        let mut normals: Vec<Group> = vec![derived_subgroup(x).unwrap()];
        normals.extend(minimal_normal_subgroups(x).unwrap());
        let primes = prime_factors(x.order());
        for &p in &primes {
            let rest: Vec<u64> = primes.iter().copied().filter(|&q| q != p).collect();
            normals.push(o_pi(x, &rest).unwrap());
        }
        let elems = x.element_list().unwrap();
        for n in normals {
            if n.is_trivial() || n.order() == x.order() {
                continue;
            }
            for class in x.conjugacy_classes().unwrap() {
                let sigma = &elems[class.representative];
                if gcd(sigma.order(), n.order()) != 1 {
                    continue;
                }
                // the automorphism must act nontrivially
                if n.generators().iter().all(|y| y.commutes_with(sigma)) {
                    continue;
                }
                let key = (name.clone(), n.order(), class.representative);
                if !seen.insert(key) {
                    continue;
                }
                let fixed = centralizer(&n, std::slice::from_ref(sigma)).unwrap();
                if !fixed.is_abelian() {
                    excluded += 1;
                    continue;
                }
                instances += 1;
                if !is_solvable(&n).unwrap() {
                    failures.push(format!("{name}: N of order {} with σ = {sigma}", n.order()));
                }
            }
        }
    }
    outcome(
        failures.is_empty() && instances >= 20,
        format!("{instances} instances with abelian fixed subgroup ({excluded} with nonabelian fixed subgroup skipped), failures {failures:?}"),
    )
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 6] = [
        ("oracle equivalence", oracle_equivalence),
        ("named verdict table", verdict_table),
        ("almost simple sweep", simple_sweep),
        ("structural audits", structural_audits),
        ("engine properties", engine_properties),
        ("coprime action solvability", coprime_action_audit),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        // written past the test harness capture so the lines always show
        let line = format!("criterion {} {tag}: {name}: {}\n", i + 1, o.detail);
        let _ = std::io::stderr().write_all(line.as_bytes());
        if !o.passed {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
