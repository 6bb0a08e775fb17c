//! The O-group decision from Sylow normalizer and centralizer data.
//!
//! Odd `p`: the Sylow subgroup is cyclic and either its normalizer equals
//! its centralizer, or the centralizer of the order-`p` subgroup `Q` is
//! abelian and every element of `N_G(Q) ∖ C_G(Q)` is an involution inverting it.
//!
//! `p = 2`: the Sylow subgroup is cyclic, or dihedral with every Klein four
//! subgroup self-centralizing.

use std::collections::HashSet;

use super::shape::{shape_of, Shape};
use super::verdict::{OortVerdict, Route, Witness};
use crate::analysis::{centralizer_of, normalizer, omega1, p_part, sylow};
use crate::error::Result;
use crate::group::Group;
use crate::perm::Permutation;

pub fn is_o_group_by_criterion(g: &Group, p: u64) -> Result<OortVerdict> {
    if p == 2 {
        criterion_two(g)
    } else {
        criterion_odd(g, p)
    }
}

fn witness_of(g: &Group, gens: Vec<Permutation>) -> Result<Witness> {
    let h = Group::from_generators(g.degree(), &gens)?;
    Ok(Witness {
        generators: gens,
        shape: shape_of(&h)?,
    })
}

fn is_cyclic(h: &Group) -> Result<bool> {
    let n = h.order() as u32;
    Ok(h.element_orders()?.contains(&n))
}

fn criterion_odd(g: &Group, p: u64) -> Result<OortVerdict> {
    let route = Route::CriterionOdd;
    let sp = sylow(g, p)?;
    if !is_cyclic(&sp)? {
        let w = witness_of(g, sp.generators().to_vec())?;
        return Ok(OortVerdict::negative(p, route, "Sylow noncyclic", vec![w]));
    }
    let n_p = normalizer(g, &sp)?;
    let c_p = centralizer_of(g, &sp)?;
    if n_p.order() == c_p.order() {
        return Ok(OortVerdict::positive(p, route, "N=C"));
    }
    let q = omega1(&sp, p)?;
    let c_q = centralizer_of(g, &q)?;
    let n_q = normalizer(g, &q)?;
    let inverts_c = |z: &Permutation| {
        z.order() == 2
            && c_q
                .generators()
                .iter()
                .all(|c| c.conjugate_by(z) == c.inverse())
    };
    let holds = c_q.is_abelian()
        && n_q
            .element_list()?
            .iter()
            .filter(|z| !c_q.has(z))
            .all(inverts_c);
    if holds {
        return Ok(OortVerdict::positive(p, route, "index-2 inversion"));
    }
    let witnesses = odd_witness(g, p, &sp)?.into_iter().collect();
    Ok(OortVerdict::negative(
        p,
        route,
        "inversion condition fails",
        witnesses,
    ))
}

/// First disallowed `P_i⟨t⟩` over the subgroups `P_i` of the cyclic Sylow
/// subgroup, largest first, and `p'`-elements `t` normalizing it.
fn odd_witness(g: &Group, p: u64, sp: &Group) -> Result<Option<Witness>> {
    let gen = sp
        .element_list()?
        .iter()
        .find(|x| x.order() == sp.order())
        .expect("cyclic")
        .clone();
    let mut sub = gen;
    while !sub.is_identity() {
        let pi = Group::from_generators(g.degree(), &[sub.clone()])?;
        let n = normalizer(g, &pi)?;
        for t in n.element_list()? {
            if t.order() % p == 0 || pi.generators().iter().all(|x| x.commutes_with(t)) {
                continue;
            }
            let w = witness_of(g, vec![sub.clone(), t.clone()])?;
            if !w.shape.allowed_for(p) {
                return Ok(Some(w));
            }
        }
        sub = sub.pow(p as i64);
    }
    Ok(None)
}

/// Klein four subgroups of a 2-group, each as `[a, b]`.
pub fn klein_fours(sp: &Group) -> Result<Vec<[Permutation; 2]>> {
    let invs: Vec<&Permutation> = sp
        .element_list()?
        .iter()
        .filter(|x| x.order() == 2)
        .collect();
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut out = Vec::new();
    for i in 0..invs.len() {
        for j in i + 1..invs.len() {
            let (a, b) = (invs[i], invs[j]);
            if !a.commutes_with(b) {
                continue;
            }
            let mut key = vec![a.clone(), b.clone(), a.mul(b)];
            key.sort();
            if seen.insert(key) {
                out.push([a.clone(), b.clone()]);
            }
        }
    }
    Ok(out)
}

/// Dihedral of order ≥ 4 (Klein four included).
pub(crate) fn is_dihedral_2group(sp: &Group) -> Result<bool> {
    Ok(matches!(shape_of(sp)?, Shape::Dihedral { .. }))
}

fn criterion_two(g: &Group) -> Result<OortVerdict> {
    let route = Route::CriterionTwo;
    let sp = sylow(g, 2)?;
    if is_cyclic(&sp)? {
        return Ok(OortVerdict::positive(2, route, "Sylow cyclic"));
    }
    if !is_dihedral_2group(&sp)? {
        let w = witness_of(g, sp.generators().to_vec())?;
        return Ok(OortVerdict::negative(
            2,
            route,
            "Sylow neither cyclic nor dihedral",
            vec![w],
        ));
    }
    for [a, b] in klein_fours(&sp)? {
        let k = Group::from_generators(g.degree(), &[a.clone(), b.clone()])?;
        let c = centralizer_of(g, &k)?;
        if c.order() == 4 {
            continue;
        }
        let x = c
            .element_list()?
            .iter()
            .find(|x| !k.has(x))
            .expect("centralizer larger than K")
            .clone();
        // prefer the odd part of x; otherwise x is a 2-element
        let o = x.order();
        let two = p_part(o, 2);
        let odd = x.pow(two as i64);
        let extra = if odd.is_identity() { x } else { odd };
        let w = witness_of(g, vec![a, b, extra])?;
        return Ok(OortVerdict::negative(
            2,
            route,
            "Klein four not self-centralizing",
            vec![w],
        ));
    }
    Ok(OortVerdict::positive(
        2,
        route,
        "Sylow dihedral self-centralizing Kleins",
    ))
}
