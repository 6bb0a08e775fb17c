//! Cyclic-by-`p` subgroups and the definitional decision.
//!
//! A cyclic-by-`p` subgroup `H` has `Q = O_p(H)` as a normal Sylow subgroup
//! and `H = Q⟨t⟩` for a `p'`-element `t ∈ N_G(Q)`. Conjugating, `Q` lies in a
//! fixed Sylow subgroup `P`, so the scan runs over the subgroups of `P` up to
//! `G`-conjugacy and, for each, over the `p'`-elements of its normalizer.

use std::collections::{HashMap, HashSet, VecDeque};

use super::shape::{shape_of_set, Shape};
use super::verdict::{OortVerdict, Route, Witness};
use crate::analysis::{o_p, p_part, sylow};
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::perm::{gcd, Permutation};

/// `O_p(H)` together with `|H / O_p(H)|`.
#[derive(Debug, Clone)]
pub struct CyclicByP {
    pub normal_sylow: Group,
    pub quotient_order: u64,
}

pub fn is_cyclic_by_p(h: &Group, p: u64) -> Result<Option<CyclicByP>> {
    let op = o_p(h, p)?;
    if op.order() != p_part(h.order(), p) {
        return Ok(None);
    }
    let m = h.order() / op.order();
    // H/O_p is cyclic iff some coset has order m
    let generates = h.element_list()?.iter().any(|x| {
        let o = x.order();
        if o % m != 0 {
            return false;
        }
        let mut y = h.identity();
        for k in 1..=m {
            y = y.mul(x);
            if op.has(&y) {
                return k == m;
            }
        }
        false
    });
    Ok(generates.then_some(CyclicByP {
        normal_sylow: op,
        quotient_order: m,
    }))
}

/// Largest Sylow subgroup whose subgroup lattice is enumerated.
pub const MAX_SYLOW_FOR_SCAN: usize = 1024;

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

/// Subgroups of a small group, as bitsets over its element list.
struct Lattice {
    n: usize,
    table: Vec<u16>,
}

impl Lattice {
    fn new(elems: &[Permutation]) -> Self {
        let n = elems.len();
        let local: HashMap<&Permutation, u16> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e, i as u16))
            .collect();
        let mut table = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = local[&elems[i].mul(&elems[j])];
            }
        }
        Lattice { n, table }
    }

    fn closure(&self, gens: &[usize]) -> Bits {
        let mut bits = vec![0u64; self.n.div_ceil(64)];
        let mut list = vec![0usize];
        set_bit(&mut bits, 0);
        let mut pos = 0;
        while pos < list.len() {
            let x = list[pos];
            for &g in gens {
                let y = self.table[x * self.n + g] as usize;
                if !bit(&bits, y) {
                    set_bit(&mut bits, y);
                    list.push(y);
                }
            }
            pos += 1;
        }
        bits
    }

    /// All subgroups with a generating list each, smallest first.
    fn subgroups(&self) -> Vec<(Bits, Vec<usize>)> {
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut cyclic: Vec<usize> = Vec::new();
        let mut subs: Vec<(Bits, Vec<usize>)> = Vec::new();
        for x in 0..self.n {
            let b = self.closure(&[x]);
            if seen.insert(b.clone()) {
                cyclic.push(x);
                subs.push((b, if x == 0 { vec![] } else { vec![x] }));
            }
        }
        let mut i = 0;
        while i < subs.len() {
            for c in &cyclic {
                if bit(&subs[i].0, *c) {
                    continue;
                }
                let mut gens = subs[i].1.clone();
                gens.push(*c);
                let b = self.closure(&gens);
                if seen.insert(b.clone()) {
                    subs.push((b, gens));
                }
            }
            i += 1;
        }
        subs.sort_by_key(|(b, _)| b.iter().map(|w| w.count_ones()).sum::<u32>());
        subs
    }
}

/// One cyclic-by-`p` subgroup `Q⟨t⟩` found by the scan.
pub struct Candidate<'a> {
    pub q_generators: &'a [Permutation],
    pub t: &'a Permutation,
    /// Indices into the ambient element list.
    pub elements: &'a [u32],
    pub shape: Shape,
}

impl Candidate<'_> {
    pub fn generators(&self) -> Vec<Permutation> {
        let mut gens = self.q_generators.to_vec();
        if !self.t.is_identity() {
            gens.push(self.t.clone());
        }
        gens
    }
}

/// Visits cyclic-by-`p` subgroups with nontrivial `O_p`, covering every
/// conjugacy class of such subgroups at least once. Those with trivial
/// `O_p` are cyclic and are not visited. Stops when `visit` returns false.
pub fn scan_cyclic_by_p(
    g: &Group,
    p: u64,
    mut visit: impl FnMut(&Candidate<'_>) -> bool,
) -> Result<()> {
    let elems = g.element_list()?;
    let orders = g.element_orders()?;
    let index = |x: &Permutation| g.index_of(x).unwrap().expect("closed") as u32;
    let sylow_p = sylow(g, p)?;
    if sylow_p.is_trivial() {
        return Ok(());
    }
    let p_elems: Vec<Permutation> = sylow_p.element_list()?.to_vec();
    if p_elems.len() > MAX_SYLOW_FOR_SCAN {
        return Err(GroupError::TooLarge(format!(
            "Sylow subgroup of order {} for subgroup enumeration",
            p_elems.len()
        )));
    }
    let lattice = Lattice::new(&p_elems);
    let to_global: Vec<u32> = p_elems.iter().map(index).collect();

    // conjugation by each generator of G, on element indices
    let conj: Vec<Vec<u32>> = g
        .generators()
        .iter()
        .map(|s| elems.iter().map(|x| index(&x.conjugate_by(s))).collect())
        .collect();

    let mut known: HashSet<Vec<u32>> = HashSet::new();
    for (bits, local_gens) in lattice.subgroups() {
        let mut key: Vec<u32> = (0..lattice.n)
            .filter(|&i| bit(&bits, i))
            .map(|i| to_global[i])
            .collect();
        key.sort_unstable();
        if key.len() == 1 || known.contains(&key) {
            continue;
        }
        // mark the whole G-conjugacy class of Q
        known.insert(key.clone());
        let mut queue = VecDeque::from([key.clone()]);
        while let Some(k) = queue.pop_front() {
            for c in &conj {
                let mut image: Vec<u32> = k.iter().map(|&i| c[i as usize]).collect();
                image.sort_unstable();
                if !known.contains(&image) {
                    known.insert(image.clone());
                    queue.push_back(image);
                }
            }
        }

        let q_gens: Vec<Permutation> = local_gens.iter().map(|&i| p_elems[i].clone()).collect();
        let q_group = Group::from_generators(g.degree(), &q_gens)?;
        let q_elems: Vec<&Permutation> = key.iter().map(|&i| &elems[i as usize]).collect();

        let mut done = vec![false; elems.len()];
        let mut seen_h: HashSet<Vec<u32>> = HashSet::new();
        for (ti, t) in elems.iter().enumerate() {
            let o = orders[ti] as u64;
            if done[ti] || o.is_multiple_of(p) {
                continue;
            }
            if !q_gens.iter().all(|q| q_group.has(&q.conjugate_by(t))) {
                continue;
            }
            // t and every other generator of ⟨t⟩ give the same subgroup
            let mut y = g.identity();
            for k in 1..=o {
                y = y.mul(t);
                if gcd(k, o) == 1 {
                    done[index(&y) as usize] = true;
                }
            }
            let mut h: Vec<u32> = Vec::with_capacity(q_elems.len() * o as usize);
            let mut power = g.identity();
            for _ in 0..o {
                for q in &q_elems {
                    h.push(index(&q.mul(&power)));
                }
                power = power.mul(t);
            }
            h.sort_unstable();
            if !seen_h.insert(h.clone()) {
                continue;
            }
            let shape = shape_of_set(
                &h,
                |i| orders[i as usize] as u64,
                |i, j| index(&elems[i as usize].mul(&elems[j as usize])),
                |i, j| i == j,
            );
            let cand = Candidate {
                q_generators: &q_gens,
                t,
                elements: &h,
                shape,
            };
            if !visit(&cand) {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Representatives of the cyclic-by-`p` subgroups: every one is conjugate
/// to a member of the list. Cyclic `p'`-subgroups are listed once each.
pub fn cyclic_by_p_subgroups(g: &Group, p: u64) -> Result<Vec<Group>> {
    let mut out = Vec::new();
    let elems = g.element_list()?;
    let orders = g.element_orders()?;
    let mut done = vec![false; elems.len()];
    for (i, x) in elems.iter().enumerate() {
        let o = orders[i] as u64;
        if done[i] || o.is_multiple_of(p) {
            continue;
        }
        let mut y = g.identity();
        for k in 1..=o {
            y = y.mul(x);
            if gcd(k, o) == 1 {
                done[g.index_of(&y)?.expect("closed")] = true;
            }
        }
        out.push(Group::from_generators(g.degree(), std::slice::from_ref(x))?);
    }
    let mut err = None;
    scan_cyclic_by_p(g, p, |c| {
        match Group::from_generators(g.degree(), &c.generators()) {
            Ok(h) => {
                out.push(h);
                true
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Decides the O-group property by scanning cyclic-by-`p` subgroups.
/// Each distinct failing shape is reported once.
pub fn is_o_group_by_definition(g: &Group, p: u64) -> Result<OortVerdict> {
    let mut failing: Vec<Witness> = Vec::new();
    let mut shapes: HashSet<Shape> = HashSet::new();
    scan_cyclic_by_p(g, p, |c| {
        if !c.shape.allowed_for(p) && shapes.insert(c.shape) {
            failing.push(Witness {
                generators: c.generators(),
                shape: c.shape,
            });
        }
        true
    })?;
    if failing.is_empty() {
        return Ok(OortVerdict::positive(
            p,
            Route::Definition,
            "every cyclic-by-p subgroup allowed",
        ));
    }
    for w in &failing {
        let h = Group::from_generators(g.degree(), &w.generators)?;
        if is_cyclic_by_p(&h, p)?.is_none() {
            return Err(GroupError::ConstructionCheck(format!(
                "witness of order {} is not cyclic-by-{p}",
                h.order()
            )));
        }
    }
    Ok(OortVerdict::negative(
        p,
        Route::Definition,
        "disallowed cyclic-by-p subgroup",
        failing,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;

    fn verdict(spec: &str, p: u64) -> OortVerdict {
        is_o_group_by_definition(&build(spec).unwrap(), p).unwrap()
    }

    #[test]
    fn cyclic_by_p_examples() {
        let s3 = build("S:3").unwrap();
        let d = is_cyclic_by_p(&s3, 3).unwrap().unwrap();
        assert_eq!(d.normal_sylow.order(), 3);
        assert_eq!(d.quotient_order, 2);
        assert!(is_cyclic_by_p(&s3, 2).unwrap().is_none());
        // F₂₀ = ⟨z ↦ z + 1, z ↦ 2z⟩ on GF(5)
        let f20 = Group::from_generators(
            5,
            &[
                Permutation::from_images(&[1, 2, 3, 4, 0]).unwrap(),
                Permutation::from_images(&[0, 2, 4, 1, 3]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(f20.order(), 20);
        assert_eq!(is_cyclic_by_p(&f20, 5).unwrap().unwrap().quotient_order, 4);
    }

    #[test]
    fn dihedral_18_shapes() {
        let g = build("D:18").unwrap();
        let mut shapes: Vec<Shape> = cyclic_by_p_subgroups(&g, 3)
            .unwrap()
            .iter()
            .map(|h| super::super::shape::shape_of(h).unwrap())
            .collect();
        shapes.sort();
        shapes.dedup();
        assert_eq!(
            shapes,
            vec![
                Shape::Cyclic { order: 1 },
                Shape::Cyclic { order: 2 },
                Shape::Cyclic { order: 3 },
                Shape::Cyclic { order: 9 },
                Shape::Dihedral { order: 6 },
                Shape::Dihedral { order: 18 },
            ]
        );
    }

    #[test]
    fn cyclic_six_lists_all_subgroups() {
        let g = build("C:6").unwrap();
        let mut orders: Vec<u64> = cyclic_by_p_subgroups(&g, 3)
            .unwrap()
            .iter()
            .map(Group::order)
            .collect();
        orders.sort();
        orders.dedup();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn definitional_examples() {
        assert!(verdict("D:18", 3).is_o_group);
        let s5 = verdict("S:5", 5);
        assert!(!s5.is_o_group);
        assert!(s5.witnesses.iter().any(|w| w.order() == 20));
        let q8 = verdict("Q:8", 2);
        assert!(!q8.is_o_group);
        assert_eq!(q8.witnesses[0].shape, Shape::Other { order: 8 });
        let inv = verdict("INV:3:8:klein", 2);
        assert!(!inv.is_o_group);
        assert!(inv
            .witnesses
            .iter()
            .any(|w| w.shape == Shape::Other { order: 12 }));
        assert!(verdict("S:4", 2).is_o_group);
        assert!(verdict("C:15", 7).is_o_group);
    }
}
