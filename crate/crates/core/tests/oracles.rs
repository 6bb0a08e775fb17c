//! Brute-force oracles checked against the library.
//!
//! Orders come from breadth-first closure over generators, and O-group
//! verdicts from a full subgroup lattice built on a multiplication table.
//! Neither uses the stabilizer chain or the Sylow-based scan.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use oortlab::classify::{is_o_group_by_criterion, is_o_group_by_definition};
use oortlab::cli::{parse_manifest, BUNDLED_MANIFEST};
use oortlab::construct::build;
use oortlab::{Group, Permutation};

fn bfs_closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.mul(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

#[test]
fn chain_order_matches_bfs_closure() {
    for spec in [
        "C:12",
        "D:18",
        "Q:16",
        "SD:32",
        "A:5",
        "S:5",
        "PSL2:7",
        "PGL2:5",
        "INV:9:16:klein",
        "PROD:(S:3)x(C:5)",
        "DELPERM:5:A4",
    ] {
        let g = build(spec).unwrap();
        let closure = bfs_closure(g.degree(), g.generators());
        assert_eq!(closure.len() as u64, g.order(), "{spec}");
        for x in &closure {
            assert!(g.has(x), "{spec}: closure element not recognized");
        }
    }
}

/// A finite group given by its multiplication table.
struct Table {
    n: usize,
    mul: Vec<Vec<usize>>,
    order: Vec<u64>,
}

impl Table {
    fn new(g: &Group) -> Self {
        let elems: Vec<Permutation> = bfs_closure(g.degree(), g.generators())
            .into_iter()
            .collect();
        let index: HashMap<&Permutation, usize> =
            elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let n = elems.len();
        let mul: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&a.mul(b)]).collect())
            .collect();
        let id = index[&Permutation::identity(g.degree())];
        let order = (0..n)
            .map(|i| {
                let (mut x, mut k) = (i, 1);
                while x != id {
                    x = mul[x][i];
                    k += 1;
                }
                k
            })
            .collect();
        Table { n, mul, order }
    }

    fn closure(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set = seed.clone();
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let gens: Vec<usize> = seed.iter().copied().collect();
            for g in gens {
                for y in [self.mul[x][g], self.mul[g][x]] {
                    if set.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        set
    }

    fn all_subgroups(&self) -> Vec<BTreeSet<usize>> {
        let cyclic: Vec<BTreeSet<usize>> = {
            let mut seen = HashSet::new();
            (0..self.n)
                .map(|i| self.closure(&BTreeSet::from([i])))
                .filter(|s| seen.insert(s.clone()))
                .collect()
        };
        let mut all: HashSet<BTreeSet<usize>> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<BTreeSet<usize>> = cyclic.clone();
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                if c.is_subset(&h) {
                    continue;
                }
                let joined = self.closure(&h.union(c).copied().collect());
                if all.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
        all.into_iter().collect()
    }

    fn is_cyclic_by_p(&self, h: &BTreeSet<usize>, p: u64) -> bool {
        let size = h.len() as u64;
        let mut pp = 1;
        while size.is_multiple_of(pp * p) {
            pp *= p;
        }
        let p_elems: BTreeSet<usize> = h
            .iter()
            .copied()
            .filter(|&x| is_p_power(self.order[x], p))
            .collect();
        if p_elems.len() as u64 != pp {
            return false;
        }
        // quotient cyclic: some h has image of order |H|/pp
        let m = size / pp;
        h.iter().any(|&x| {
            let mut y = x;
            let mut k = 1;
            while !p_elems.contains(&y) {
                y = self.mul[y][x];
                k += 1;
            }
            k == m
        })
    }

    fn allowed(&self, h: &BTreeSet<usize>, p: u64) -> bool {
        let n = h.len() as u64;
        if h.iter().any(|&x| self.order[x] == n) {
            return true;
        }
        if n == 12 && p == 2 && !h.iter().any(|&x| self.order[x] == 6) {
            return true;
        }
        let m = n / 2;
        if !n.is_multiple_of(2) || !is_p_power(m, p) || m < p {
            return false;
        }
        h.iter().filter(|&&c| self.order[c] == m).any(|&c| {
            let powers = self.closure(&BTreeSet::from([c]));
            let c_inv = *powers
                .iter()
                .find(|&&y| self.order[self.mul[y][c]] == 1)
                .unwrap();
            h.iter()
                .filter(|s| !powers.contains(s))
                .all(|&s| self.order[s] == 2 && self.mul[self.mul[s][c]][s] == c_inv)
        })
    }

    fn is_o_group(&self, p: u64) -> bool {
        self.all_subgroups()
            .iter()
            .filter(|h| self.is_cyclic_by_p(h, p))
            .all(|h| self.allowed(h, p))
    }
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[test]
fn definition_matches_lattice_oracle() {
    let entries = parse_manifest(BUNDLED_MANIFEST).unwrap();
    let mut compared = 0;
    let mut seen = HashSet::new();
    for e in entries {
        if !seen.insert(e.spec.clone()) {
            continue;
        }
        let g = build(&e.spec).unwrap();
        if g.order() > 64 && !matches!(e.spec.as_str(), "A:5" | "S:5" | "PSL2:7") {
            continue;
        }
        let table = Table::new(&g);
        for p in [2, 3, 5, 7] {
            let oracle = table.is_o_group(p);
            let def = is_o_group_by_definition(&g, p).unwrap();
            let crit = is_o_group_by_criterion(&g, p).unwrap();
            assert_eq!(def.is_o_group, oracle, "{} p={p}", e.spec);
            assert_eq!(crit.is_o_group, oracle, "{} p={p}", e.spec);
            compared += 1;
        }
    }
    assert!(compared >= 300, "compared {compared}");
}
