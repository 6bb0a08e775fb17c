//! Structure reports for O-groups: the `R = O_{p'}(G)` decomposition, the
//! quotient `G/R`, and audits of the chief factors of `G` inside `R`.

use serde::Serialize;

use super::criterion::{is_dihedral_2group, is_o_group_by_criterion, klein_fours};
use super::shape::{shape_of, Shape};
use crate::analysis::{
    centralizer, centralizer_of, chief_series_within, derived_subgroup, is_nilpotent, is_power_of,
    is_simple, is_solvable, minimal_normal_subgroups, normalizer, o_p_prime, prime_factors, sylow,
    FactorLayer, MAX_FACTOR_SIZE,
};
use crate::error::{GroupError, Result};
use crate::field::prime_power;
use crate::group::Group;
use crate::perm::{gcd, Permutation};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// How far the quotient `G/R` has been identified.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientId {
    /// `isomorphic-to`, `consistent-with` or `unidentified`.
    pub relation: String,
    pub name: String,
    pub order: u64,
    pub socle_order: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChiefFactorAudit {
    pub order: u64,
    pub prime: Option<u64>,
    pub rank: Option<u32>,
    /// `pass`, `fail`, `not-verified` or `not-applicable`.
    pub dimension: String,
    pub klein_fixed_point_free: Option<bool>,
    pub order4_trace: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub p: u64,
    pub order: u64,
    pub r_order: u64,
    pub sylow_order: u64,
    pub ncq: u64,
    pub case: String,
    pub quotient: Option<QuotientId>,
    pub checks: Vec<Check>,
    pub chief_factors: Vec<ChiefFactorAudit>,
    pub notes: Vec<String>,
    pub violations: Vec<String>,
}

impl StructureReport {
    fn new(g: &Group, p: u64, r: &Group, sp: &Group, ncq: u64) -> Self {
        StructureReport {
            p,
            order: g.order(),
            r_order: r.order(),
            sylow_order: sp.order(),
            ncq,
            case: String::new(),
            quotient: None,
            checks: Vec::new(),
            chief_factors: Vec::new(),
            notes: Vec::new(),
            violations: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        let detail = detail.into();
        if !passed {
            self.violations.push(format!("{name}: {detail}"));
        }
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    pub fn has_violation(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// `G/R`, or `G` itself when `R` is trivial.
fn quotient_group(g: &Group, r: &Group) -> Result<Group> {
    if r.is_trivial() {
        Ok(g.clone())
    } else {
        Ok(g.quotient_by(r)?.0)
    }
}

fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / gcd(2, q - 1)
}

/// Field sizes `q ≥ 4` with `|PSL(2,q)| = order`.
fn psl2_fields(order: u64) -> Vec<u64> {
    (4..=1024u64)
        .filter(|&q| prime_power(q).is_some() && psl2_order(q) == order)
        .collect()
}

/// Simple groups whose order alone does not determine them in this range.
const AMBIGUOUS_SIMPLE_ORDERS: [(u64, &str); 1] = [(20160, "PSL(3,4)")];

/// Names the simple group of this order, with whether the order pins it down.
fn simple_name(order: u64) -> Option<(String, bool)> {
    if let Some((_, name)) = AMBIGUOUS_SIMPLE_ORDERS.iter().find(|(o, _)| *o == order) {
        return Some((name.to_string(), false));
    }
    let qs = psl2_fields(order);
    // prefer an odd field size: PSL(2,4) ≅ PSL(2,5)
    let q = qs
        .iter()
        .copied()
        .find(|q| q % 2 == 1)
        .or(qs.first().copied())?;
    Some((format!("PSL(2,{q})"), true))
}

/// Socle analysis of an almost simple group.
fn almost_simple_id(q: &Group) -> Result<Option<(QuotientId, Group)>> {
    let mins = minimal_normal_subgroups(q)?;
    if mins.len() != 1 || !is_simple(&mins[0])? || mins[0].is_abelian() {
        return Ok(None);
    }
    let s = mins[0].clone();
    if !centralizer_of(q, &s)?.is_trivial() {
        return Ok(None);
    }
    let Some((name, pinned)) = simple_name(s.order()) else {
        return Ok(Some((
            QuotientId {
                relation: "unidentified".into(),
                name: format!("almost simple, socle of order {}", s.order()),
                order: q.order(),
                socle_order: Some(s.order()),
            },
            s,
        )));
    };
    let index = q.order() / s.order();
    let (relation, name) = if index == 1 {
        (
            if pinned {
                "isomorphic-to"
            } else {
                "consistent-with"
            },
            name,
        )
    } else if index == 2 && name.starts_with("PSL(2,") {
        ("consistent-with", name.replacen("PSL", "PGL", 1))
    } else {
        ("consistent-with", format!("{name}.{index}"))
    };
    Ok(Some((
        QuotientId {
            relation: relation.into(),
            name,
            order: q.order(),
            socle_order: Some(s.order()),
        },
        s,
    )))
}

/// Nontrivial subgroups of a cyclic `p`-group, largest first.
pub(crate) fn cyclic_chain(sp: &Group, p: u64) -> Result<Vec<Group>> {
    let mut out = Vec::new();
    let Some(gen) = sp
        .element_list()?
        .iter()
        .find(|x| x.order() == sp.order())
        .cloned()
    else {
        return Ok(out);
    };
    let mut x = gen;
    while !x.is_identity() {
        out.push(Group::from_generators(sp.degree(), &[x.clone()])?);
        x = x.pow(p as i64);
    }
    Ok(out)
}

pub fn odd_structure_report(g: &Group, p: u64) -> Result<StructureReport> {
    if p == 2 {
        return Err(GroupError::PreconditionFailed("p must be odd".into()));
    }
    if !is_o_group_by_criterion(g, p)?.is_o_group {
        return Err(GroupError::PreconditionFailed(format!(
            "not an O-group for p = {p}"
        )));
    }
    let r = o_p_prime(g, p)?;
    let sp = sylow(g, p)?;
    let n_p = normalizer(g, &sp)?;
    let c_p = centralizer_of(g, &sp)?;
    let ncq = n_p.order() / c_p.order();
    let mut rep = StructureReport::new(g, p, &r, &sp, ncq);

    let semidirect = g.order() == r.order() * sp.order();
    let n_eq_c = ncq == 1;
    let mut all_eq = true;
    for q in cyclic_chain(&sp, p)? {
        all_eq &= normalizer(g, &q)?.order() == centralizer_of(g, &q)?.order();
    }
    rep.check(
        "easy-odd-equivalence",
        semidirect == n_eq_c && n_eq_c == all_eq,
        format!("G=RP {semidirect}, N=C {n_eq_c}, N=C for all Q {all_eq}"),
    );

    if n_eq_c {
        rep.case = "G=RP".into();
        return Ok(rep);
    }
    rep.check("ncq-two", ncq == 2, format!("|N/C| = {ncq}"));
    let solvable = is_solvable(&r)?;
    rep.check("R-solvable", solvable, format!("|R| = {}", r.order()));

    let quotient = quotient_group(g, &r)?;
    let dihedral = Shape::Dihedral {
        order: 2 * sp.order(),
    };
    if shape_of(&quotient)? == dihedral {
        rep.case = "G=RD".into();
        rep.quotient = Some(QuotientId {
            relation: "isomorphic-to".into(),
            name: format!("D{}", 2 * sp.order()),
            order: quotient.order(),
            socle_order: None,
        });
        return Ok(rep);
    }
    match almost_simple_id(&quotient)? {
        Some((id, _)) => {
            let known = id.relation != "unidentified";
            rep.case = "almost-simple".into();
            rep.check("quotient-identified", known, id.name.clone());
            rep.quotient = Some(id);
        }
        None => {
            rep.case = "unidentified".into();
            rep.check(
                "quotient-identified",
                false,
                format!(
                    "G/R of order {} is neither dihedral nor almost simple",
                    quotient.order()
                ),
            );
        }
    }
    Ok(rep)
}

/// A Klein four subgroup of `P` normalized but not centralized by an
/// element of order 3, i.e. `A₄ ≤ G`. Returns the Klein pair and the element.
pub(crate) fn a4_embedding(
    g: &Group,
    sp: &Group,
) -> Result<Option<([Permutation; 2], Permutation)>> {
    for [a, b] in klein_fours(sp)? {
        let k = Group::from_generators(g.degree(), &[a.clone(), b.clone()])?;
        let n = normalizer(g, &k)?;
        if let Some(x) = n
            .element_list()?
            .iter()
            .find(|x| x.order() == 3 && !(x.commutes_with(&a) && x.commutes_with(&b)))
        {
            return Ok(Some(([a, b], x.clone())));
        }
    }
    Ok(None)
}

fn is_s4(q: &Group) -> Result<bool> {
    if q.order() != 24 {
        return Ok(false);
    }
    let orders = q.element_orders()?;
    Ok(orders.contains(&4)
        && !orders
            .iter()
            .any(|&o| o == 6 || o == 8 || o == 12 || o == 24)
        && crate::analysis::center(q)?.is_trivial())
}

/// A complement to `R` of the given order, generated from `P` or a Klein
/// four subgroup together with an order-3 element.
fn has_complement(g: &Group, sp: &Group, order: u64) -> Result<bool> {
    for [a, b] in klein_fours(sp)? {
        let k = Group::from_generators(g.degree(), &[a.clone(), b.clone()])?;
        let n = normalizer(g, &k)?;
        for x in n.element_list()?.iter().filter(|x| x.order() == 3) {
            let base: Vec<Permutation> = if order == 12 {
                vec![a.clone(), b.clone()]
            } else {
                sp.generators().to_vec()
            };
            let h = Group::from_generators(g.degree(), &base)?.extended(std::slice::from_ref(x));
            if h.order() == order {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn even_structure_report(g: &Group) -> Result<StructureReport> {
    let verdict = is_o_group_by_criterion(g, 2)?;
    if !verdict.is_o_group {
        return Err(GroupError::PreconditionFailed(
            "not an O-group for p = 2".into(),
        ));
    }
    let sp = sylow(g, 2)?;
    if !is_dihedral_2group(&sp)? {
        return Err(GroupError::PreconditionFailed(
            "Sylow 2-subgroup is not dihedral".into(),
        ));
    }
    let r = o_p_prime(g, 2)?;
    let n_p = normalizer(g, &sp)?;
    let c_p = centralizer_of(g, &sp)?;
    let mut rep = StructureReport::new(g, 2, &r, &sp, n_p.order() / c_p.order());

    let rr = derived_subgroup(&r)?;
    rep.check(
        "commutator-of-R-nilpotent",
        is_nilpotent(&rr)?,
        format!("|[R,R]| = {}", rr.order()),
    );
    let kleins = klein_fours(&sp)?;
    let mut fpf = true;
    for [a, b] in &kleins {
        fpf &= centralizer(&r, &[a.clone(), b.clone()])?.is_trivial();
    }
    rep.check(
        "klein-fixed-point-free-on-R",
        fpf,
        format!("{} Klein four subgroups of P", kleins.len()),
    );

    let a4 = a4_embedding(g, &sp)?;
    let semidirect = g.order() == r.order() * sp.order();
    let index = g.order() / r.order();
    if semidirect {
        rep.case = "1".into();
        rep.check("case-1-has-no-A4", a4.is_none(), "G = RP");
    } else if a4.is_none() {
        rep.case = "unclassified".into();
        rep.check(
            "case-classification",
            false,
            "G ≠ RP but A4 is not a subgroup",
        );
    } else if is_solvable(g)? {
        let quotient = quotient_group(g, &r)?;
        match index {
            12 => {
                rep.case = "2a".into();
                rep.check(
                    "quotient-is-A4",
                    shape_of(&quotient)? == Shape::A4,
                    "|G:R| = 12",
                );
                rep.check("A4-complement", has_complement(g, &sp, 12)?, "G = R ⋊ A4");
                rep.quotient = Some(QuotientId {
                    relation: "isomorphic-to".into(),
                    name: "A4".into(),
                    order: 12,
                    socle_order: None,
                });
            }
            24 => {
                rep.case = "2b".into();
                rep.check("quotient-is-S4", is_s4(&quotient)?, "|G:R| = 24");
                rep.check("S4-complement", has_complement(g, &sp, 24)?, "G = R ⋊ S4");
                rep.quotient = Some(QuotientId {
                    relation: "isomorphic-to".into(),
                    name: "S4".into(),
                    order: 24,
                    socle_order: None,
                });
            }
            _ => {
                rep.case = "unclassified".into();
                rep.check(
                    "case-classification",
                    false,
                    format!("solvable with A4 but |G:R| = {index}"),
                );
            }
        }
    } else {
        rep.case = "2c".into();
        rep.check(
            "R-nilpotent",
            is_nilpotent(&r)?,
            format!("|R| = {}", r.order()),
        );
        let quotient = quotient_group(g, &r)?;
        let id = almost_simple_id(&quotient)?;
        let field = id
            .as_ref()
            .and_then(|(qid, _)| qid.name.split_once("(2,"))
            .and_then(|(_, rest)| rest.trim_end_matches(')').parse::<u64>().ok());
        let ok = matches!(field, Some(q) if q % 2 == 1 && q > 4)
            && id.as_ref().is_some_and(|(qid, s)| {
                let ix = quotient.order() / s.order();
                ix == 1 || ix == 2
            } && qid.relation != "unidentified");
        rep.check(
            "quotient-is-PSL2-or-PGL2",
            ok,
            id.as_ref()
                .map_or("no simple socle".to_string(), |(qid, _)| qid.name.clone()),
        );
        if let (Some(q), Some((qid, s))) = (field, id.as_ref()) {
            let pgl = quotient.order() == 2 * s.order();
            let char_r = prime_power(q).map(|(c, _)| c).unwrap_or(q);
            let r_group = is_power_of(r.order(), char_r);
            if q > 7 || pgl {
                rep.check(
                    "R-is-r-group",
                    r_group,
                    format!("|R| = {}, r = {char_r}", r.order()),
                );
            } else {
                rep.notes.push(format!(
                    "R need not be an {char_r}-group for {}; |R| = {}",
                    qid.name,
                    r.order()
                ));
            }
        }
        rep.quotient = id.map(|(qid, _)| qid);
    }

    if !r.is_trivial() {
        audit_chief_factors(g, &r, &sp, &mut rep)?;
    }
    Ok(rep)
}

fn audit_chief_factors(g: &Group, r: &Group, sp: &Group, rep: &mut StructureReport) -> Result<()> {
    let module_case = rep.case.starts_with('2');
    let kleins = klein_fours(sp)?;
    let order4 = sp.element_list()?.iter().find(|x| x.order() == 4).cloned();
    for factor in chief_series_within(g, r)? {
        let mut audit = ChiefFactorAudit {
            order: factor.order(),
            prime: factor.prime(),
            rank: factor.rank(),
            dimension: "not-applicable".into(),
            klein_fixed_point_free: None,
            order4_trace: None,
        };
        let FactorLayer::ElementaryAbelian { prime, rank, .. } = &factor.layer else {
            if module_case {
                rep.check(
                    "chief-factor-abelian",
                    false,
                    format!("order {}", factor.order()),
                );
            }
            rep.chief_factors.push(audit);
            continue;
        };
        if module_case {
            audit.dimension = if *rank == 3 {
                "pass".into()
            } else if *rank % 3 == 0 {
                "not-verified".into()
            } else {
                "fail".into()
            };
            rep.check(
                "chief-factor-dimension",
                audit.dimension != "fail",
                format!("order {prime}^{rank}"),
            );
        }
        if factor.order() <= MAX_FACTOR_SIZE {
            let coords = factor.coordinates()?;
            let mut free = true;
            for [a, b] in &kleins {
                free &= coords.fixed_dimension(&[a.clone(), b.clone()])? == 0;
            }
            audit.klein_fixed_point_free = Some(free);
            if module_case {
                rep.check(
                    "klein-fixed-point-free-on-factor",
                    free,
                    format!("order {prime}^{rank}"),
                );
            }
            if let Some(x) = &order4 {
                let m = coords.matrix(x)?;
                audit.order4_trace = Some(m.trace_symmetric);
                if rep.case == "2b" {
                    rep.check(
                        "order-4-trace-one",
                        m.trace == 1 % *prime as u32,
                        format!("trace {} mod {prime}", m.trace),
                    );
                }
            }
        } else {
            rep.notes.push(format!(
                "chief factor of order {} too large for coordinates",
                factor.order()
            ));
        }
        rep.chief_factors.push(audit);
    }
    if rep.case == "2c" {
        let primes = prime_factors(r.order());
        rep.notes.push(format!("primes dividing |R|: {primes:?}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;

    #[test]
    fn odd_reports() {
        let rep = odd_structure_report(&build("D:18").unwrap(), 3).unwrap();
        assert_eq!(rep.case, "G=RD");
        assert_eq!(rep.r_order, 1);
        let rep = odd_structure_report(&build("S:4").unwrap(), 3).unwrap();
        assert_eq!(rep.case, "G=RD");
        assert_eq!(rep.r_order, 4);
        let rep = odd_structure_report(&build("PSL2:7").unwrap(), 3).unwrap();
        assert_eq!(rep.case, "almost-simple");
        let q = rep.quotient.unwrap();
        assert_eq!(
            (q.relation.as_str(), q.name.as_str()),
            ("isomorphic-to", "PSL(2,7)")
        );
        let rep = odd_structure_report(&build("C:15").unwrap(), 3).unwrap();
        assert_eq!(rep.case, "G=RP");
        assert!(matches!(
            odd_structure_report(&build("A:6").unwrap(), 3),
            Err(GroupError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn even_reports() {
        let rep = even_structure_report(&build("A:4").unwrap()).unwrap();
        assert_eq!(rep.case, "2a");
        assert!(rep.chief_factors.is_empty());
        assert!(!rep.has_violation(), "{:?}", rep.violations);

        let rep = even_structure_report(&build("DELPERM:5:A4").unwrap()).unwrap();
        assert_eq!(rep.case, "2a");
        assert_eq!(rep.chief_factors.len(), 1);
        assert_eq!(rep.chief_factors[0].order, 125);
        assert_eq!(rep.chief_factors[0].klein_fixed_point_free, Some(true));
        assert!(!rep.has_violation(), "{:?}", rep.violations);

        let rep = even_structure_report(&build("DELPERM:5:S4:sign").unwrap()).unwrap();
        assert_eq!(rep.case, "2b");
        assert_eq!(rep.chief_factors[0].order4_trace, Some(1));
        assert!(!rep.has_violation(), "{:?}", rep.violations);

        let rep = even_structure_report(&build("A:5").unwrap()).unwrap();
        assert_eq!(rep.case, "2c");
        assert_eq!(rep.quotient.as_ref().unwrap().name, "PSL(2,5)");
        assert!(!rep.has_violation(), "{:?}", rep.violations);

        let rep = even_structure_report(&build("S:4").unwrap()).unwrap();
        assert_eq!(rep.case, "2b");

        assert!(even_structure_report(&build("C:6").unwrap()).is_err());
    }
}
