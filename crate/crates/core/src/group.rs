//! Permutation groups given by generators, backed by a stabilizer chain.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::chain::StabChain;
use crate::error::{GroupError, Result};
use crate::perm::Permutation;

pub const DEFAULT_ENUM_CAP: usize = 250_000;

static ENUM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ENUM_CAP);

/// Largest group order for which elements may be enumerated exhaustively.
pub fn enum_cap() -> usize {
    ENUM_CAP.load(Ordering::Relaxed)
}

pub fn set_enum_cap(cap: usize) {
    ENUM_CAP.store(cap, Ordering::Relaxed);
}

#[derive(Debug)]
struct ElementStore {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    orders: Vec<u32>,
}

/// One conjugacy class, by its position in the element list.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    pub element_order: u64,
}

#[derive(Debug)]
struct ClassStore {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
}

/// A permutation group. Subgroups share the ambient degree.
///
/// The chain is complete once construction returns; the element store and
/// conjugacy classes are filled lazily and then never change.
#[derive(Debug, Clone)]
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    store: OnceLock<Arc<ElementStore>>,
    classes: OnceLock<Arc<ClassStore>>,
}

impl Group {
    pub fn trivial(degree: usize) -> Self {
        Group {
            degree,
            generators: Vec::new(),
            chain: StabChain::trivial(degree),
            store: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// `⟨gens⟩` on `degree` points.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self> {
        if degree == 0 {
            return Err(GroupError::Range("degree must be positive".into()));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut group = Group::trivial(degree);
        for g in gens {
            if !g.is_identity() {
                group.generators.push(g.clone());
                group.chain.add_generator(g);
            }
        }
        Ok(group)
    }

    /// The subgroup generated by a set of elements, adding only those not
    /// already generated. Intended for sets that are already closed.
    pub fn span<'a>(degree: usize, elements: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut group = Group::trivial(degree);
        for x in elements {
            group.add_generator(x);
        }
        group
    }

    pub(crate) fn add_generator(&mut self, g: &Permutation) -> bool {
        debug_assert!(self.store.get().is_none());
        if self.chain.add_generator(g) {
            self.generators.push(g.clone());
            true
        } else {
            false
        }
    }

    /// `⟨self, g⟩`.
    pub fn extended(&self, extra: &[Permutation]) -> Group {
        let mut group = Group {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
            store: OnceLock::new(),
            classes: OnceLock::new(),
        };
        for g in extra {
            group.add_generator(g);
        }
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn order(&self) -> u64 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.chain.contains(g))
    }

    /// Membership for elements already known to have the right degree.
    #[inline]
    pub fn has(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    pub fn same_as(&self, other: &Group) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// `self` is normalized by every generator of `ambient`.
    pub fn is_normalized_by(&self, ambient: &Group) -> bool {
        ambient
            .generators
            .iter()
            .all(|s| self.generators.iter().all(|h| self.has(&h.conjugate_by(s))))
    }

    pub fn is_normal_in(&self, ambient: &Group) -> bool {
        self.is_subgroup_of(ambient) && self.is_normalized_by(ambient)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    fn check_cap(&self) -> Result<()> {
        let cap = enum_cap();
        let order = self.order();
        if order > cap as u64 {
            Err(GroupError::CapExceeded { order, cap })
        } else {
            Ok(())
        }
    }

    /// Streams every element exactly once.
    pub fn elements(&self) -> Result<ElementStream<'_>> {
        self.check_cap()?;
        Ok(ElementStream::new(&self.chain))
    }

    fn store(&self) -> Result<&ElementStore> {
        if let Some(s) = self.store.get() {
            return Ok(s);
        }
        self.check_cap()?;
        let elements: Vec<Permutation> = ElementStream::new(&self.chain).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        let store = Arc::new(ElementStore {
            elements,
            index,
            orders,
        });
        Ok(self.store.get_or_init(|| store))
    }

    /// All elements, cached. The identity is at position 0.
    pub fn element_list(&self) -> Result<&[Permutation]> {
        Ok(&self.store()?.elements)
    }

    pub fn element_orders(&self) -> Result<&[u32]> {
        Ok(&self.store()?.orders)
    }

    pub fn index_of(&self, g: &Permutation) -> Result<Option<usize>> {
        Ok(self.store()?.index.get(g).map(|&i| i as usize))
    }

    /// Conjugacy classes of the group, cached.
    pub fn conjugacy_classes(&self) -> Result<&[ConjugacyClass]> {
        Ok(&self.class_store()?.classes)
    }

    pub fn class_index(&self, element: usize) -> Result<usize> {
        Ok(self.class_store()?.class_of[element] as usize)
    }

    fn class_store(&self) -> Result<&ClassStore> {
        if let Some(c) = self.classes.get() {
            return Ok(c);
        }
        let store = self.store()?;
        let n = store.elements.len();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            let mut size = 0;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for s in &self.generators {
                    let y = store.elements[x].conjugate_by(s);
                    let yi = store.index[&y] as usize;
                    if class_of[yi] == u32::MAX {
                        class_of[yi] = id;
                        queue.push_back(yi);
                    }
                }
            }
            classes.push(ConjugacyClass {
                representative: start,
                size,
                element_order: store.orders[start] as u64,
            });
        }
        let cs = Arc::new(ClassStore { classes, class_of });
        Ok(self.classes.get_or_init(|| cs))
    }

    /// A uniformly random element (product of random transversal entries).
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for level in self.chain.transversals() {
            let u = level[rng.gen_range(0..level.len())];
            g = g.mul(u);
        }
        g
    }

    /// `⟨gens⟩ ≤ self`; every generator must be a member.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<Group> {
        for g in gens {
            if !self.contains(g)? {
                return Err(GroupError::NonMember);
            }
        }
        Group::from_generators(self.degree, gens)
    }

    pub fn orbit(&self, point: usize) -> Result<BTreeSet<usize>> {
        if point >= self.degree {
            return Err(GroupError::Range(format!(
                "point {point} outside 0..{}",
                self.degree
            )));
        }
        let mut seen = BTreeSet::from([point]);
        let mut queue = VecDeque::from([point]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.image(x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen)
    }

    /// Action of `self` on the left cosets of a normal subgroup.
    pub fn quotient_by(&self, normal: &Group) -> Result<(Group, QuotientMap)> {
        if !normal.is_subgroup_of(self) {
            return Err(GroupError::NonSubgroup);
        }
        if !normal.is_normalized_by(self) {
            return Err(GroupError::NotNormal);
        }
        let kernel = normal.element_list()?.to_vec();
        let mut map = QuotientMap {
            kernel,
            reps: vec![self.identity()],
            lookup: HashMap::new(),
        };
        let key = map.coset_key(&self.identity());
        map.lookup.insert(key, 0);
        let mut pos = 0;
        while pos < map.reps.len() {
            for s in &self.generators {
                let c = s.mul(&map.reps[pos]);
                let key = map.coset_key(&c);
                if !map.lookup.contains_key(&key) {
                    map.lookup.insert(key, map.reps.len());
                    map.reps.push(c);
                }
            }
            pos += 1;
        }
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|s| map.image(s))
            .collect::<Result<_>>()?;
        let quotient = Group::from_generators(map.reps.len(), &gens)?;
        Ok((quotient, map))
    }
}

/// The map `g ↦` permutation induced on the cosets `gN`.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    kernel: Vec<Permutation>,
    reps: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
}

impl QuotientMap {
    /// Least element of `gN`.
    pub fn coset_key(&self, g: &Permutation) -> Permutation {
        self.kernel
            .iter()
            .map(|n| g.mul(n))
            .min()
            .expect("kernel contains the identity")
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        let images: Vec<usize> = self
            .reps
            .iter()
            .map(|r| {
                self.lookup
                    .get(&self.coset_key(&g.mul(r)))
                    .copied()
                    .ok_or(GroupError::NonMember)
            })
            .collect::<Result<_>>()?;
        Permutation::from_images(&images)
    }
}

/// Lazy walk over all products `u_0 ∘ u_1 ∘ … ∘ u_k` of transversal entries.
pub struct ElementStream<'a> {
    transversals: Vec<Vec<&'a Permutation>>,
    counters: Vec<usize>,
    prefix: Vec<Permutation>,
    done: bool,
}

impl<'a> ElementStream<'a> {
    fn new(chain: &'a StabChain) -> Self {
        let transversals = chain.transversals();
        let degree = chain.degree();
        let k = transversals.len();
        let mut prefix = Vec::with_capacity(k + 1);
        prefix.push(Permutation::identity(degree));
        for l in 0..k {
            let next = prefix[l].mul(transversals[l][0]);
            prefix.push(next);
        }
        ElementStream {
            counters: vec![0; k],
            transversals,
            prefix,
            done: false,
        }
    }
}

impl Iterator for ElementStream<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let k = self.counters.len();
        let out = self.prefix[k].clone();
        // odometer step, deepest level fastest
        let mut l = k;
        loop {
            if l == 0 {
                self.done = true;
                break;
            }
            l -= 1;
            self.counters[l] += 1;
            if self.counters[l] < self.transversals[l].len() {
                for m in l..k {
                    if m > l {
                        self.counters[m] = 0;
                    }
                    let u = self.transversals[m][self.counters[m]];
                    self.prefix[m + 1] = self.prefix[m].mul(u);
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn s3() -> Group {
        Group::from_generators(3, &[p(3, "(0 1 2)"), p(3, "(0 1)")]).unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(s3().order(), 6);
        assert_eq!(Group::trivial(4).order(), 1);
        let d18 = Group::from_generators(
            9,
            &[p(9, "(0 1 2 3 4 5 6 7 8)"), p(9, "(1 8)(2 7)(3 6)(4 5)")],
        )
        .unwrap();
        assert_eq!(d18.order(), 18);
    }

    #[test]
    fn elements_are_distinct_and_complete() {
        let g = s3();
        let all: HashSet<Permutation> = g.elements().unwrap().collect();
        assert_eq!(all.len(), 6);
        assert!(g.element_list().unwrap()[0].is_identity());
    }

    #[test]
    fn membership() {
        let g = s3();
        assert!(g.contains(&p(3, "(0 1)")).unwrap());
        let a4 = Group::from_generators(4, &[p(4, "(0 1 2)"), p(4, "(1 2 3)")]).unwrap();
        assert!(!a4.contains(&p(4, "(0 1)")).unwrap());
        assert!(a4.contains(&p(4, "(0 1)(2 3)")).unwrap());
        assert!(g.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn subgroup_requires_members() {
        let a4 = Group::from_generators(4, &[p(4, "(0 1 2)"), p(4, "(1 2 3)")]).unwrap();
        assert_eq!(a4.subgroup(&[a4.identity()]).unwrap().order(), 1);
        assert!(matches!(
            a4.subgroup(&[p(4, "(0 1)")]),
            Err(GroupError::NonMember)
        ));
    }

    #[test]
    fn orbit_examples() {
        let s4 = Group::from_generators(4, &[p(4, "(0 1 2 3)"), p(4, "(0 1)")]).unwrap();
        assert_eq!(s4.orbit(2).unwrap().len(), 4);
        assert_eq!(Group::trivial(4).orbit(3).unwrap(), BTreeSet::from([3]));
        assert!(s4.orbit(4).is_err());
    }

    #[test]
    fn quotient_of_s4_by_klein() {
        let s4 = Group::from_generators(4, &[p(4, "(0 1 2 3)"), p(4, "(0 1)")]).unwrap();
        let v4 = s4
            .subgroup(&[p(4, "(0 1)(2 3)"), p(4, "(0 2)(1 3)")])
            .unwrap();
        let (q, map) = s4.quotient_by(&v4).unwrap();
        assert_eq!(map.index(), 6);
        assert_eq!(q.order(), 6);
        let (t, _) = s4.quotient_by(&s4).unwrap();
        assert_eq!(t.order(), 1);
        let c4 = s4.subgroup(&[p(4, "(0 1 2 3)")]).unwrap();
        assert!(matches!(s4.quotient_by(&c4), Err(GroupError::NotNormal)));
    }

    #[test]
    fn cap_is_enforced() {
        let s9 = Group::from_generators(9, &[p(9, "(0 1 2 3 4 5 6 7 8)"), p(9, "(0 1)")]).unwrap();
        assert_eq!(s9.order(), 362_880);
        assert!(matches!(s9.elements(), Err(GroupError::CapExceeded { .. })));
    }
}
