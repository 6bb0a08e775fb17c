//! Permutations of `{0, .., n-1}` stored as image tables.
//!
//! Composition follows the functional convention `(a ∘ b)(x) = a(b(x))`,
//! i.e. `a.compose(&b)` applies `b` first.

use std::fmt;

use crate::error::{GroupError, Result};

/// Point type. Degrees up to 65536 are supported.
pub type Point = u16;

pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[Point]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(
            (1..=MAX_DEGREE).contains(&degree),
            "degree {degree} out of range"
        );
        Permutation {
            images: (0..degree).map(|i| i as Point).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(GroupError::Range(format!("degree {n}")));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return Err(GroupError::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&x| x as Point).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GroupError::Range(format!("degree {degree}")));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(GroupError::NotAPermutation(format!("{cycles:?}")));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| GroupError::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| GroupError::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| GroupError::Parse(format!("bad point {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    pub fn lowest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i != x as usize)
            .map(|(i, _)| i)
    }

    /// `self ∘ other`, checking degrees.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// `self ∘ other` without the degree check.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0 as Point; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as Point;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0 as Point; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[y as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().mul(&b.inverse()).mul(&a.mul(b))
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        (0..self.degree())
            .all(|i| self.images[other.images[i] as usize] == other.images[self.images[i] as usize])
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut acc = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image(x);
            }
            acc = lcm(acc, len);
        }
        acc
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// `a ∘ b`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

pub fn inverse(a: &Permutation) -> Permutation {
    a.inverse()
}

pub fn element_order(a: &Permutation) -> u64 {
    a.order()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn compose_examples() {
        let t = p(2, "(0 1)");
        assert!(t.compose(&t).unwrap().is_identity());
        let c = p(3, "(0 1 2)");
        assert_eq!(c.compose(&c).unwrap(), p(3, "(0 2 1)"));
        let id = Permutation::identity(3);
        assert_eq!(c.compose(&id).unwrap(), c);
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = p(3, "(0 1)");
        let b = p(3, "(1 2)");
        let ab = a.mul(&b);
        // b sends 1 -> 2, a fixes 2
        assert_eq!(ab.image(1), 2);
        assert_eq!(ab.image(2), a.image(b.image(2)));
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            a.compose(&b),
            Err(GroupError::DegreeMismatch {
                expected: 3,
                found: 4
            })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p(3, "(0 1 2)").inverse(), p(3, "(0 2 1)"));
        assert!(Permutation::identity(5).inverse().is_identity());
    }

    #[test]
    fn order_examples() {
        assert_eq!(p(5, "(0 1)(2 3 4)").order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(p(4, "(0 1 2 3)").order(), 4);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
        assert!(Permutation::from_images(&[0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn display_round_trip() {
        let a = p(6, "(0 3)(1 5 2)");
        assert_eq!(a.to_string(), "(0 3)(1 5 2)");
        assert_eq!(Permutation::parse_cycles(6, &a.to_string()).unwrap(), a);
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    #[test]
    fn conjugation_and_commutator() {
        let a = p(4, "(0 1 2 3)");
        let g = p(4, "(0 1)");
        let c = a.conjugate_by(&g);
        assert_eq!(c, g.mul(&a).mul(&g.inverse()));
        let comm = Permutation::commutator(&a, &g);
        assert_eq!(comm, a.inverse().mul(&g.inverse()).mul(&a).mul(&g));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = p(7, "(0 1 2 3 4)(5 6)");
        let mut acc = Permutation::identity(7);
        for k in 0..12 {
            assert_eq!(a.pow(k), acc);
            acc = acc.mul(&a);
        }
        assert_eq!(a.pow(-1), a.inverse());
    }
}
