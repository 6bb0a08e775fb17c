//! Subgroup structure: centralizers, normalizers, Sylow subgroups, `O_π`,
//! derived and lower central series, minimal normal subgroups and chief series.
//!
//! Everything that filters elements needs the ambient group to be
//! enumerable; closures are computed on the stabilizer chain alone.

use std::collections::HashMap;

use crate::error::{GroupError, Result};
use crate::field::rank_mod;
use crate::group::Group;
use crate::perm::Permutation;

/// Distinct prime divisors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_power_of(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

/// Every prime divisor of `n` lies in `primes`.
pub fn is_pi_number(n: u64, primes: &[u64]) -> bool {
    prime_factors(n).iter().all(|q| primes.contains(q))
}

fn filter_span(g: &Group, keep: impl Fn(&Permutation) -> bool) -> Result<Group> {
    let elems = g.element_list()?;
    Ok(Group::span(g.degree(), elems.iter().filter(|x| keep(x))))
}

/// `{x ∈ G : x s = s x for all s}`.
pub fn centralizer(g: &Group, set: &[Permutation]) -> Result<Group> {
    for s in set {
        if s.degree() != g.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: g.degree(),
                found: s.degree(),
            });
        }
    }
    filter_span(g, |x| set.iter().all(|s| x.commutes_with(s)))
}

pub fn centralizer_of(g: &Group, h: &Group) -> Result<Group> {
    centralizer(g, h.generators())
}

pub fn center(g: &Group) -> Result<Group> {
    centralizer(g, g.generators())
}

pub fn normalizer(g: &Group, h: &Group) -> Result<Group> {
    if !h.is_subgroup_of(g) {
        return Err(GroupError::NonSubgroup);
    }
    filter_span(g, |x| {
        h.generators().iter().all(|y| h.has(&y.conjugate_by(x)))
    })
}

/// A Sylow `p`-subgroup, grown inside successive normalizers.
pub fn sylow(g: &Group, p: u64) -> Result<Group> {
    let target = p_part(g.order(), p);
    let elems = g.element_list()?;
    let orders = g.element_orders()?;
    let p_elements: Vec<&Permutation> = elems
        .iter()
        .zip(orders)
        .filter(|(_, &o)| o > 1 && is_power_of(o as u64, p))
        .map(|(x, _)| x)
        .collect();
    let mut sub = Group::trivial(g.degree());
    while sub.order() < target {
        let y = p_elements
            .iter()
            .find(|y| !sub.has(y) && sub.generators().iter().all(|s| sub.has(&s.conjugate_by(y))))
            .expect("a p-subgroup below Sylow order has a p-element normalizing it");
        sub = sub.extended(&[(*y).clone()]);
    }
    Ok(sub)
}

pub fn is_p_group(h: &Group, p: u64) -> bool {
    is_power_of(h.order(), p)
}

/// Subgroup generated by the elements of order `p`.
pub fn omega1(h: &Group, p: u64) -> Result<Group> {
    if !is_p_group(h, p) {
        return Err(GroupError::NotPGroup(h.order(), p));
    }
    filter_span(h, |x| x.order() == p)
}

/// Smallest normal subgroup of `g` containing `set`.
pub fn normal_closure(g: &Group, set: &[Permutation]) -> Result<Group> {
    let mut out = Group::trivial(g.degree());
    let mut work: Vec<Permutation> = Vec::new();
    for s in set {
        if !g.contains(s)? {
            return Err(GroupError::NonMember);
        }
        work.push(s.clone());
    }
    while let Some(x) = work.pop() {
        if out.add_generator(&x) {
            for s in g.generators() {
                work.push(x.conjugate_by(s));
            }
        }
    }
    Ok(out)
}

pub fn normal_closure_of(g: &Group, h: &Group) -> Result<Group> {
    normal_closure(g, h.generators())
}

/// `[G, G]`.
pub fn derived_subgroup(g: &Group) -> Result<Group> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = Permutation::commutator(&gens[i], &gens[j]);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}

/// `G ≥ G' ≥ G'' ≥ …` until it stabilizes.
pub fn derived_series(g: &Group) -> Result<Vec<Group>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let next = derived_subgroup(last)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

/// `γ₁ = G`, `γᵢ₊₁ = [γᵢ, G]`, until it stabilizes.
pub fn lower_central_series(g: &Group) -> Result<Vec<Group>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let mut comms = Vec::new();
        for x in last.generators() {
            for s in g.generators() {
                let c = Permutation::commutator(x, s);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        let next = normal_closure(g, &comms)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

pub fn is_abelian(g: &Group) -> bool {
    g.is_abelian()
}

pub fn is_solvable(g: &Group) -> Result<bool> {
    Ok(derived_series(g)?.last().unwrap().is_trivial())
}

pub fn is_nilpotent(g: &Group) -> Result<bool> {
    Ok(lower_central_series(g)?.last().unwrap().is_trivial())
}

pub fn is_perfect(g: &Group) -> Result<bool> {
    Ok(derived_subgroup(g)?.order() == g.order())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Predicates {
    pub abelian: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub perfect: bool,
}

pub fn predicates(g: &Group) -> Result<Predicates> {
    Ok(Predicates {
        abelian: is_abelian(g),
        solvable: is_solvable(g)?,
        nilpotent: is_nilpotent(g)?,
        perfect: is_perfect(g)?,
    })
}

/// Normal closures of all nontrivial conjugacy class representatives.
fn class_closures(g: &Group) -> Result<Vec<Group>> {
    let elems = g.element_list()?;
    let mut out: Vec<Group> = Vec::new();
    for class in g.conjugacy_classes()? {
        if class.element_order == 1 {
            continue;
        }
        let n = normal_closure(g, &[elems[class.representative].clone()])?;
        if !out.iter().any(|m| m.same_as(&n)) {
            out.push(n);
        }
    }
    Ok(out)
}

pub fn minimal_normal_subgroups(g: &Group) -> Result<Vec<Group>> {
    let closures = class_closures(g)?;
    Ok(closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect())
}

pub fn is_simple(g: &Group) -> Result<bool> {
    if g.is_trivial() {
        return Ok(false);
    }
    Ok(class_closures(g)?.iter().all(|n| n.order() == g.order()))
}

/// Largest normal subgroup whose order involves only the given primes.
pub fn o_pi(g: &Group, primes: &[u64]) -> Result<Group> {
    let elems = g.element_list()?;
    let mut out = Group::trivial(g.degree());
    for class in g.conjugacy_classes()? {
        if class.element_order == 1 || !is_pi_number(class.element_order, primes) {
            continue;
        }
        let x = &elems[class.representative];
        if out.has(x) {
            continue;
        }
        let closure = normal_closure(g, std::slice::from_ref(x))?;
        if is_pi_number(closure.order(), primes) {
            out = out.extended(closure.generators());
        }
    }
    Ok(out)
}

/// `O_p(G)`.
pub fn o_p(g: &Group, p: u64) -> Result<Group> {
    o_pi(g, &[p])
}

/// `O_{p'}(G)`.
pub fn o_p_prime(g: &Group, p: u64) -> Result<Group> {
    let others: Vec<u64> = prime_factors(g.order())
        .into_iter()
        .filter(|&q| q != p)
        .collect();
    o_pi(g, &others)
}

/// Structure of a chief factor `H/N`.
#[derive(Debug, Clone)]
pub enum FactorLayer {
    /// `H/N ≅ (C_r)^d`, with coset representatives of a basis.
    ElementaryAbelian {
        prime: u64,
        rank: u32,
        basis: Vec<Permutation>,
    },
    NonAbelian,
}

#[derive(Debug, Clone)]
pub struct ChiefFactor {
    pub lower: Group,
    pub upper: Group,
    pub layer: FactorLayer,
}

impl ChiefFactor {
    pub fn order(&self) -> u64 {
        self.upper.order() / self.lower.order()
    }

    pub fn prime(&self) -> Option<u64> {
        match &self.layer {
            FactorLayer::ElementaryAbelian { prime, .. } => Some(*prime),
            FactorLayer::NonAbelian => None,
        }
    }

    pub fn rank(&self) -> Option<u32> {
        match &self.layer {
            FactorLayer::ElementaryAbelian { rank, .. } => Some(*rank),
            FactorLayer::NonAbelian => None,
        }
    }

    /// Lookup from cosets to coordinate vectors; requires `r^d ≤ 20000`.
    pub fn coordinates(&self) -> Result<FactorCoords> {
        let FactorLayer::ElementaryAbelian { prime, rank, basis } = &self.layer else {
            return Err(GroupError::PreconditionFailed(
                "chief factor is not abelian".into(),
            ));
        };
        let size = prime.checked_pow(*rank).unwrap_or(u64::MAX);
        if size > MAX_FACTOR_SIZE {
            return Err(GroupError::TooLarge(format!(
                "chief factor of order {size}"
            )));
        }
        let kernel = self.lower.element_list()?.to_vec();
        let r = *prime as usize;
        let d = *rank as usize;
        let mut lookup = HashMap::with_capacity(size as usize);
        let mut coords = vec![0u32; d];
        for _ in 0..size {
            // element b_0^{c_0} ∘ … ∘ b_{d-1}^{c_{d-1}}
            let mut x = self.lower.identity();
            for (b, &c) in basis.iter().zip(&coords) {
                x = x.mul(&b.pow(c as i64));
            }
            lookup.insert(coset_key(&kernel, &x), coords.clone());
            for c in coords.iter_mut() {
                *c += 1;
                if (*c as usize) < r {
                    break;
                }
                *c = 0;
            }
        }
        Ok(FactorCoords {
            prime: *prime,
            basis: basis.clone(),
            kernel,
            lookup,
        })
    }
}

pub const MAX_FACTOR_SIZE: u64 = 20_000;

fn coset_key(kernel: &[Permutation], x: &Permutation) -> Permutation {
    kernel
        .iter()
        .map(|n| x.mul(n))
        .min()
        .expect("kernel is nonempty")
}

/// Coordinates on an elementary abelian chief factor.
#[derive(Debug, Clone)]
pub struct FactorCoords {
    prime: u64,
    basis: Vec<Permutation>,
    kernel: Vec<Permutation>,
    lookup: HashMap<Permutation, Vec<u32>>,
}

/// Matrix of an element acting on a chief factor; column `j` is the image
/// of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FactorMatrix {
    pub prime: u64,
    pub rows: Vec<Vec<u32>>,
    pub trace: u32,
    /// Trace lifted to the range `(-r/2, r/2]`.
    pub trace_symmetric: i64,
}

impl FactorMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, other: &FactorMatrix) -> FactorMatrix {
        let d = self.dim();
        let r = self.prime;
        let rows: Vec<Vec<u32>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        ((0..d)
                            .map(|k| self.rows[i][k] as u64 * other.rows[k][j] as u64)
                            .sum::<u64>()
                            % r) as u32
                    })
                    .collect()
            })
            .collect();
        FactorMatrix::from_rows(r, rows)
    }

    fn from_rows(prime: u64, rows: Vec<Vec<u32>>) -> FactorMatrix {
        let trace = ((0..rows.len()).map(|i| rows[i][i] as u64).sum::<u64>() % prime) as u32;
        let mut trace_symmetric = trace as i64;
        if trace_symmetric > prime as i64 / 2 {
            trace_symmetric -= prime as i64;
        }
        FactorMatrix {
            prime,
            rows,
            trace,
            trace_symmetric,
        }
    }
}

impl FactorCoords {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates_of(&self, x: &Permutation) -> Option<&[u32]> {
        self.lookup
            .get(&coset_key(&self.kernel, x))
            .map(|v| v.as_slice())
    }

    /// Conjugation action `x ↦ g x g⁻¹`.
    pub fn matrix(&self, g: &Permutation) -> Result<FactorMatrix> {
        let d = self.dim();
        let mut rows = vec![vec![0u32; d]; d];
        for (j, b) in self.basis.iter().enumerate() {
            let image = self
                .coordinates_of(&b.conjugate_by(g))
                .ok_or(GroupError::NonMember)?;
            for i in 0..d {
                rows[i][j] = image[i];
            }
        }
        Ok(FactorMatrix::from_rows(self.prime, rows))
    }

    /// Dimension of the subspace fixed by every element of `set`.
    pub fn fixed_dimension(&self, set: &[Permutation]) -> Result<usize> {
        let d = self.dim();
        let r = self.prime as i64;
        let mut stacked = Vec::new();
        for g in set {
            let m = self.matrix(g)?;
            for i in 0..d {
                stacked.push(
                    (0..d)
                        .map(|j| m.rows[i][j] as i64 - i64::from(i == j))
                        .collect(),
                );
            }
        }
        if stacked.is_empty() {
            return Ok(d);
        }
        Ok(d - rank_mod(&stacked, r))
    }
}

/// Matrix and trace of conjugation by `g ∈ G` on an abelian chief factor.
pub fn factor_action(
    g_ambient: &Group,
    factor: &ChiefFactor,
    g: &Permutation,
) -> Result<FactorMatrix> {
    if !g_ambient.contains(g)? {
        return Err(GroupError::NonMember);
    }
    factor.coordinates()?.matrix(g)
}

fn classify_factor(lower: &Group, upper: &Group) -> FactorLayer {
    let index = upper.order() / lower.order();
    let primes = prime_factors(index);
    if primes.len() != 1 {
        return FactorLayer::NonAbelian;
    }
    let r = primes[0];
    let gens = upper.generators();
    let abelian = (0..gens.len()).all(|i| {
        (i + 1..gens.len()).all(|j| lower.has(&Permutation::commutator(&gens[i], &gens[j])))
    });
    if !abelian || !gens.iter().all(|x| lower.has(&x.pow(r as i64))) {
        return FactorLayer::NonAbelian;
    }
    let mut span = lower.clone();
    let mut basis = Vec::new();
    for x in gens {
        if !span.has(x) {
            span = span.extended(std::slice::from_ref(x));
            basis.push(x.clone());
        }
    }
    FactorLayer::ElementaryAbelian {
        prime: r,
        rank: basis.len() as u32,
        basis,
    }
}

/// A chief series of `G` through the normal subgroup `R`, from `1` up to `R`.
///
/// Each step adds the smallest `⟨N, x^G⟩` over class representatives
/// `x ∈ R ∖ N`, which is a minimal normal subgroup of `G/N` pulled back.
pub fn chief_series_within(g: &Group, r: &Group) -> Result<Vec<ChiefFactor>> {
    if !r.is_subgroup_of(g) {
        return Err(GroupError::NonSubgroup);
    }
    if !r.is_normalized_by(g) {
        return Err(GroupError::NotNormal);
    }
    let elems = g.element_list()?;
    let classes = g.conjugacy_classes()?;
    let mut lower = Group::trivial(g.degree());
    let mut factors = Vec::new();
    while lower.order() < r.order() {
        let mut best: Option<Group> = None;
        for class in classes {
            let x = &elems[class.representative];
            if !r.has(x) || lower.has(x) {
                continue;
            }
            let mut seed = lower.generators().to_vec();
            seed.push(x.clone());
            let m = normal_closure(g, &seed)?;
            if best.as_ref().is_none_or(|b| m.order() < b.order()) {
                best = Some(m);
            }
        }
        let upper = best.expect("R strictly contains N");
        let layer = classify_factor(&lower, &upper);
        factors.push(ChiefFactor {
            lower: lower.clone(),
            upper: upper.clone(),
            layer,
        });
        lower = upper;
    }
    Ok(factors)
}

/// The group `x G x⁻¹`, on the same points.
pub fn conjugate_group(g: &Group, x: &Permutation) -> Result<Group> {
    let gens: Vec<Permutation> = g.generators().iter().map(|s| s.conjugate_by(x)).collect();
    Group::from_generators(g.degree(), &gens)
}
