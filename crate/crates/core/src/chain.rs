//! Deterministic Schreier–Sims stabilizer chains.
//!
//! Base points are chosen as the lowest point moved by the element that
//! forces a new level, so the chain for a given generator list is always the
//! same.

use crate::perm::{Permutation, Point};

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
    /// Per orbit position, how many generators have had their Schreier
    /// generator verified.
    checked: Vec<usize>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[point] = Some(Permutation::identity(degree));
        inverse[point] = Some(Permutation::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
            inverse,
            checked: vec![0],
        }
    }

    fn extend_orbit(&mut self) {
        let mut pos = 0;
        while pos < self.orbit.len() {
            let beta = self.orbit[pos];
            for s in &self.gens {
                let gamma = s.image(beta);
                if self.transversal[gamma].is_none() {
                    let u = s.mul(self.transversal[beta].as_ref().unwrap());
                    self.inverse[gamma] = Some(u.inverse());
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                    self.checked.push(0);
                }
            }
            pos += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> u64 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u64)
            .try_fold(1u64, |acc, n| acc.checked_mul(n))
            .expect("group order overflows u64")
    }

    /// Sifts `g` from `from` downwards; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it passed every level).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.image(level.point);
            match &level.inverse[beta] {
                None => return (g, l),
                Some(u_inv) => g = u_inv.mul(&g),
            }
        }
        (g, self.levels.len())
    }

    /// Membership test without intermediate allocations per level.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut cur: Vec<Point> = g.images().to_vec();
        let mut tmp: Vec<Point> = vec![0; self.degree];
        for level in &self.levels {
            let beta = cur[level.point] as usize;
            match &level.inverse[beta] {
                None => return false,
                Some(u_inv) => {
                    let inv = u_inv.images();
                    for (t, &c) in tmp.iter_mut().zip(cur.iter()) {
                        *t = inv[c as usize];
                    }
                    std::mem::swap(&mut cur, &mut tmp);
                }
            }
        }
        cur.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Adds a generator and restores the chain invariants. Returns false if
    /// `g` was already a member.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        if self.contains(g) {
            return false;
        }
        let first_moved = self.levels.iter().position(|l| g.image(l.point) != l.point);
        let m = match first_moved {
            Some(m) => m,
            None => {
                let point = g.lowest_moved_point().expect("non-identity");
                self.levels.push(Level::new(self.degree, point));
                self.levels.len() - 1
            }
        };
        for level in &mut self.levels[..=m] {
            level.gens.push(g.clone());
            level.extend_orbit();
        }
        self.complete();
        true
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            match self.find_nontrivial_schreier(iu) {
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let point = h.lowest_moved_point().expect("non-identity");
                        self.levels.push(Level::new(self.degree, point));
                    }
                    for level in &mut self.levels[iu + 1..=j] {
                        level.gens.push(h.clone());
                        level.extend_orbit();
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn find_nontrivial_schreier(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut pos = 0;
        while pos < self.levels[i].orbit.len() {
            let level = &self.levels[i];
            let beta = level.orbit[pos];
            let start = level.checked[pos];
            let ngens = level.gens.len();
            for gi in start..ngens {
                let level = &self.levels[i];
                let s = &level.gens[gi];
                let gamma = s.image(beta);
                let u_beta = level.transversal[beta].as_ref().unwrap();
                let u_gamma_inv = level.inverse[gamma].as_ref().unwrap();
                let schreier = u_gamma_inv.mul(&s.mul(u_beta));
                if !schreier.is_identity() {
                    let (h, j) = self.strip(&schreier, i + 1);
                    if !h.is_identity() {
                        self.levels[i].checked[pos] = gi;
                        return Some((h, j));
                    }
                }
                self.levels[i].checked[pos] = gi + 1;
            }
            pos += 1;
        }
        None
    }

    /// Transversal elements per level, in orbit order.
    pub fn transversals(&self) -> Vec<Vec<&Permutation>> {
        self.levels
            .iter()
            .map(|l| {
                l.orbit
                    .iter()
                    .map(|&b| l.transversal[b].as_ref().unwrap())
                    .collect()
            })
            .collect()
    }
}
