//! Literal checks of the structural claims about O-groups on one group.
//!
//! Each claim has a hypothesis and a conclusion. The O-group hypothesis is
//! decided by the definition, never by the criterion, so a failure here
//! exposes a disagreement rather than hiding one.

use serde::Serialize;

use super::criterion::klein_fours;
use super::cyclic_by_p::is_o_group_by_definition;
use super::report::{a4_embedding, cyclic_chain};
use crate::analysis::{
    center, centralizer, centralizer_of, derived_subgroup, is_nilpotent, is_solvable, normalizer,
    o_p_prime, sylow,
};
use crate::error::Result;
use crate::group::Group;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditStatus {
    Pass,
    Fail,
    NotApplicable,
    NotVerified,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub claim: String,
    pub status: AuditStatus,
    pub detail: String,
}

fn result(claim: &str, status: AuditStatus, detail: impl Into<String>) -> ClaimResult {
    ClaimResult {
        claim: claim.to_string(),
        status,
        detail: detail.into(),
    }
}

fn verdict(claim: &str, ok: bool, detail: impl Into<String>) -> ClaimResult {
    let status = if ok {
        AuditStatus::Pass
    } else {
        AuditStatus::Fail
    };
    result(claim, status, detail)
}

fn skip(claim: &str, why: &str) -> ClaimResult {
    result(claim, AuditStatus::NotApplicable, why)
}

fn is_cyclic(h: &Group) -> Result<bool> {
    let n = h.order() as u32;
    Ok(h.element_orders()?.contains(&n))
}

/// Every element of `set` is an involution inverting each generator of `c`.
fn inverting_involutions<'a>(set: impl IntoIterator<Item = &'a Permutation>, c: &Group) -> bool {
    set.into_iter().all(|z| {
        z.order() == 2
            && c.generators()
                .iter()
                .all(|x| x.conjugate_by(z) == x.inverse())
    })
}

/// Shared facts about `G` at `p`.
struct Facts {
    p: u64,
    o_group: bool,
    sp: Group,
    sp_cyclic: bool,
    r: Group,
    n_p: Group,
    c_p: Group,
}

impl Facts {
    fn semidirect(&self, g: &Group) -> bool {
        g.order() == self.r.order() * self.sp.order()
    }
}

pub fn theorem_audit(g: &Group, p: u64) -> Result<Vec<ClaimResult>> {
    let sp = sylow(g, p)?;
    let facts = Facts {
        p,
        o_group: is_o_group_by_definition(g, p)?.is_o_group,
        sp_cyclic: is_cyclic(&sp)?,
        r: o_p_prime(g, p)?,
        n_p: normalizer(g, &sp)?,
        c_p: centralizer_of(g, &sp)?,
        sp,
    };
    Ok(vec![
        two_cases_odd(g, &facts)?,
        basic_odd(g, &facts)?,
        odd_order(g, &facts)?,
        cyclic_sylow_equivalence(g, &facts)?,
        odd_solvable(&facts)?,
        nontrivial_center(g, &facts)?,
        trivial_center(g, &facts)?,
        two_cyclic(g, &facts)?,
    ])
}

fn two_cases_odd(g: &Group, f: &Facts) -> Result<ClaimResult> {
    const NAME: &str = "two-cases-odd";
    if f.p == 2 || !f.o_group {
        return Ok(skip(NAME, "needs p odd and an O-group"));
    }
    if !f.sp_cyclic {
        return Ok(verdict(NAME, false, "Sylow subgroup is not cyclic"));
    }
    for q in cyclic_chain(&f.sp, f.p)? {
        let n = normalizer(g, &q)?;
        let c = centralizer_of(g, &q)?;
        if n.order() == c.order() {
            continue;
        }
        let outside: Vec<Permutation> = n
            .element_list()?
            .iter()
            .filter(|z| !c.has(z))
            .cloned()
            .collect();
        let ok =
            n.order() == 2 * c.order() && c.is_abelian() && inverting_involutions(&outside, &c);
        if !ok {
            return Ok(verdict(
                NAME,
                false,
                format!("|Q| = {}: |N/C| = {}", q.order(), n.order() / c.order()),
            ));
        }
    }
    Ok(verdict(
        NAME,
        true,
        "every Q ≤ P has N = C or index-2 inversion",
    ))
}

fn basic_odd(g: &Group, f: &Facts) -> Result<ClaimResult> {
    const NAME: &str = "basic-odd";
    if f.p == 2 || !f.o_group || f.n_p.order() == f.c_p.order() {
        return Ok(skip(NAME, "needs p odd, an O-group and N(P) ≠ C(P)"));
    }
    if !f.sp_cyclic {
        return Ok(verdict(NAME, false, "Sylow subgroup is not cyclic"));
    }
    for q in cyclic_chain(&f.sp, f.p)? {
        let n = normalizer(g, &q)?;
        let c = centralizer_of(g, &q)?;
        if !c.same_as(&f.c_p) || !c.is_abelian() {
            return Ok(verdict(
                NAME,
                false,
                format!(
                    "|Q| = {}: C(Q) differs from C(P) or is nonabelian",
                    q.order()
                ),
            ));
        }
        if !n.same_as(&f.n_p) {
            return Ok(verdict(
                NAME,
                false,
                format!("|Q| = {}: N(Q) ≠ N(P)", q.order()),
            ));
        }
        let outside: Vec<Permutation> = n
            .element_list()?
            .iter()
            .filter(|z| !c.has(z))
            .cloned()
            .collect();
        if !inverting_involutions(&outside, &c) {
            return Ok(verdict(
                NAME,
                false,
                format!(
                    "|Q| = {}: τC(Q) is not all inverting involutions",
                    q.order()
                ),
            ));
        }
    }
    Ok(verdict(
        NAME,
        true,
        "C(Q) = C(P) abelian, N(Q) = N(P), τC(Q) inverts",
    ))
}

fn odd_order(g: &Group, f: &Facts) -> Result<ClaimResult> {
    const NAME: &str = "odd-order";
    if f.p == 2 || g.order().is_multiple_of(2) {
        return Ok(skip(NAME, "needs p odd and |G| odd"));
    }
    let n_eq_c = f.n_p.order() == f.c_p.order();
    let a = f.o_group;
    let b = f.sp_cyclic && n_eq_c;
    let c = f.sp_cyclic && f.semidirect(g);
    Ok(verdict(
        NAME,
        a == b && b == c,
        format!("O-group {a}, P cyclic with N = C {b}, P cyclic with G = RP {c}"),
    ))
}

fn cyclic_sylow_equivalence(g: &Group, f: &Facts) -> Result<ClaimResult> {
    const NAME: &str = "cyclic-sylow-equivalence";
    if !f.sp_cyclic {
        return Ok(skip(NAME, "needs a cyclic Sylow subgroup"));
    }
    let semidirect = f.semidirect(g);
    let n_eq_c = f.n_p.order() == f.c_p.order();
    let mut all_eq = true;
    for q in cyclic_chain(&f.sp, f.p)? {
        all_eq &= normalizer(g, &q)?.order() == centralizer_of(g, &q)?.order();
    }
    let equivalent = semidirect == n_eq_c && n_eq_c == all_eq;
    let implies = !semidirect || f.o_group;
    Ok(verdict(
        NAME,
        equivalent && implies,
        format!(
            "G = RP {semidirect}, N = C {n_eq_c}, N = C for all Q {all_eq}, O-group {}",
            f.o_group
        ),
    ))
}

fn odd_solvable(f: &Facts) -> Result<ClaimResult> {
    const NAME: &str = "odd-complement-solvable";
    if f.p == 2 || !f.o_group || f.n_p.order() == f.c_p.order() {
        return Ok(skip(NAME, "needs p odd, an O-group and N(P) ≠ C(P)"));
    }
    Ok(verdict(
        NAME,
        is_solvable(&f.r)?,
        format!("|R| = {}", f.r.order()),
    ))
}

fn nontrivial_center(g: &Group, f: &Facts) -> Result<ClaimResult> {
    const NAME: &str = "nontrivial-center";
    let z = center(g)?;
    if f.p != 2 || !f.o_group || f.sp_cyclic || z.is_trivial() {
        return Ok(skip(
            NAME,
            "needs p = 2, an O-group, P noncyclic and Z(G) ≠ 1",
        ));
    }
    let zo = z.order();
    if zo != 2 && zo != 4 {
        return Ok(verdict(NAME, false, format!("|Z| = {zo}")));
    }
    if !is_solvable(g)? {
        return Ok(verdict(NAME, false, "G is not solvable"));
    }
    let klein = g.order() == 4 && !is_cyclic(g)?;
    if klein {
        return Ok(verdict(NAME, true, "G is the Klein four group"));
    }
    if zo != 2 {
        return Ok(verdict(NAME, false, "|Z| = 4 but G is not Klein four"));
    }
    if !f.r.is_abelian() || !f.semidirect(g) {
        return Ok(verdict(NAME, false, "R nonabelian or G ≠ RP"));
    }
    let cp_r = centralizer(&f.sp, f.r.generators())?;
    if !is_cyclic(&cp_r)? || 2 * cp_r.order() != f.sp.order() {
        return Ok(verdict(
            NAME,
            false,
            format!("C_P(R) of order {} is not cyclic of index 2", cp_r.order()),
        ));
    }
    let outside: Vec<Permutation> =
        f.sp.element_list()?
            .iter()
            .filter(|x| !cp_r.has(x))
            .cloned()
            .collect();
    let inverts = outside.iter().all(|x| {
        f.r.generators()
            .iter()
            .all(|y| y.conjugate_by(x) == y.inverse())
    });
    Ok(verdict(
        NAME,
        inverts,
        format!(
            "|Z| = 2, R abelian of order {}, P ∖ C_P(R) inverts R {inverts}",
            f.r.order()
        ),
    ))
}

fn trivial_center(g: &Group, f: &Facts) -> Result<ClaimResult> {
    const NAME: &str = "trivial-center";
    if f.p != 2 || !f.o_group || f.sp_cyclic || !center(g)?.is_trivial() {
        return Ok(skip(
            NAME,
            "needs p = 2, an O-group, P noncyclic and Z(G) = 1",
        ));
    }
    let rr = derived_subgroup(&f.r)?;
    if !is_nilpotent(&rr)? {
        return Ok(verdict(NAME, false, "[R,R] is not nilpotent"));
    }
    if a4_embedding(g, &f.sp)?.is_some() {
        return Ok(verdict(NAME, true, "[R,R] nilpotent; A4 ≤ G"));
    }
    if !f.semidirect(g) {
        return Ok(verdict(NAME, false, "no A4 but G ≠ RP"));
    }
    for [a, b] in klein_fours(&f.sp)? {
        if !centralizer(&f.r, &[a, b])?.is_trivial() {
            return Ok(verdict(
                NAME,
                false,
                "some Klein four centralizes part of R",
            ));
        }
    }
    Ok(verdict(
        NAME,
        true,
        "[R,R] nilpotent; G = RP and C_R(K) = 1",
    ))
}

fn two_cyclic(g: &Group, f: &Facts) -> Result<ClaimResult> {
    const NAME: &str = "two-cyclic-sylow";
    if f.p != 2 || !f.sp_cyclic {
        return Ok(skip(NAME, "needs p = 2 and a cyclic Sylow subgroup"));
    }
    let semidirect = f.semidirect(g);
    let solvable = is_solvable(&f.r)?;
    Ok(verdict(
        NAME,
        f.o_group && semidirect && solvable,
        format!(
            "O-group {}, G = RP {semidirect}, R solvable {solvable}",
            f.o_group
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;

    fn statuses(spec: &str, p: u64) -> Vec<(String, AuditStatus)> {
        theorem_audit(&build(spec).unwrap(), p)
            .unwrap()
            .into_iter()
            .map(|c| (c.claim, c.status))
            .collect()
    }

    #[test]
    fn no_failures_on_small_groups() {
        for (spec, p) in [
            ("S:4", 2),
            ("S:4", 3),
            ("D:18", 3),
            ("C:15", 3),
            ("A:5", 2),
            ("A:5", 5),
            ("D:12", 2),
            ("PSL2:7", 3),
            ("PROD:(C:3)x(C:5)", 5),
        ] {
            for (claim, st) in statuses(spec, p) {
                assert_ne!(st, AuditStatus::Fail, "{spec} p={p}: {claim}");
            }
        }
    }

    #[test]
    fn applicability() {
        let s = statuses("D:12", 2);
        let get = |name: &str| s.iter().find(|(c, _)| c == name).unwrap().1;
        assert_eq!(get("nontrivial-center"), AuditStatus::Pass);
        assert_eq!(get("two-cases-odd"), AuditStatus::NotApplicable);
        let s = statuses("D:18", 3);
        let get = |name: &str| s.iter().find(|(c, _)| c == name).unwrap().1;
        assert_eq!(get("basic-odd"), AuditStatus::Pass);
        assert_eq!(get("odd-complement-solvable"), AuditStatus::Pass);
    }
}
