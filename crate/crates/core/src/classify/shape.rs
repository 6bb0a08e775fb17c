//! Recognition of the three allowed isomorphism types.

use serde::Serialize;

use crate::analysis::is_power_of;
use crate::error::Result;
use crate::group::Group;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum Shape {
    Cyclic {
        order: u64,
    },
    /// Dihedral of the given order; order 4 is the Klein four group.
    Dihedral {
        order: u64,
    },
    A4,
    Other {
        order: u64,
    },
}

impl Shape {
    pub fn order(&self) -> u64 {
        match *self {
            Shape::Cyclic { order } | Shape::Dihedral { order } | Shape::Other { order } => order,
            Shape::A4 => 12,
        }
    }

    /// Cyclic, dihedral of order `2pⁿ` (n ≥ 1), or `A₄` when `p = 2`.
    pub fn allowed_for(&self, p: u64) -> bool {
        match *self {
            Shape::Cyclic { .. } => true,
            Shape::Dihedral { order } => order / 2 >= p && is_power_of(order / 2, p),
            Shape::A4 => p == 2,
            Shape::Other { .. } => false,
        }
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shape::Cyclic { order } => write!(f, "C{order}"),
            Shape::Dihedral { order } => write!(f, "D{order}"),
            Shape::A4 => write!(f, "A4"),
            Shape::Other { order } => write!(f, "Other({order})"),
        }
    }
}

/// Shape of the group formed by `elements`, which must be closed and
/// include the identity. `order_of`, `mul` and `eq` are supplied by
/// the caller so element sets can live in any indexing scheme.
pub(crate) fn shape_of_set<E: Copy>(
    elements: &[E],
    order_of: impl Fn(E) -> u64,
    mul: impl Fn(E, E) -> E,
    eq: impl Fn(E, E) -> bool,
) -> Shape {
    let n = elements.len() as u64;
    if elements.iter().any(|&x| order_of(x) == n) {
        return Shape::Cyclic { order: n };
    }
    if n >= 4 && n.is_multiple_of(2) {
        let m = n / 2;
        if let Some(&c) = elements.iter().find(|&&x| order_of(x) == m) {
            let mut powers = Vec::with_capacity(m as usize);
            let mut y = c;
            for _ in 0..m {
                powers.push(y);
                y = mul(y, c);
            }
            // any element outside ⟨c⟩ decides it when ⟨c⟩ has index 2
            if let Some(&s) = elements
                .iter()
                .find(|&&x| !powers.iter().any(|&z| eq(z, x)))
            {
                let c_inv = powers[m as usize - 2];
                if order_of(s) == 2 && eq(mul(mul(s, c), s), c_inv) {
                    return Shape::Dihedral { order: n };
                }
            }
        }
    }
    if n == 12 && !elements.iter().any(|&x| order_of(x) == 6) {
        return Shape::A4;
    }
    Shape::Other { order: n }
}

pub fn shape_of(h: &Group) -> Result<Shape> {
    let elems = h.element_list()?;
    let orders = h.element_orders()?;
    let index = |x: &Permutation| h.index_of(x).ok().flatten().expect("closed under products");
    Ok(shape_of_set(
        &(0..elems.len()).collect::<Vec<_>>(),
        |i| orders[i] as u64,
        |i, j| index(&elems[i].mul(&elems[j])),
        |i, j| i == j,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;

    fn shape(spec: &str) -> Shape {
        shape_of(&build(spec).unwrap()).unwrap()
    }

    #[test]
    fn basic_shapes() {
        assert_eq!(shape("C:12"), Shape::Cyclic { order: 12 });
        assert_eq!(shape("C:2"), Shape::Cyclic { order: 2 });
        assert_eq!(shape("C:1"), Shape::Cyclic { order: 1 });
        assert_eq!(shape("D:4"), Shape::Dihedral { order: 4 });
        assert_eq!(shape("D:18"), Shape::Dihedral { order: 18 });
        assert_eq!(shape("S:3"), Shape::Dihedral { order: 6 });
        assert_eq!(shape("Q:8"), Shape::Other { order: 8 });
        assert_eq!(shape("SD:16"), Shape::Other { order: 16 });
    }

    #[test]
    fn order_twelve_types() {
        assert_eq!(shape("A:4"), Shape::A4);
        assert_eq!(shape("C:12"), Shape::Cyclic { order: 12 });
        assert_eq!(shape("PROD:(C:2)x(C:6)"), Shape::Other { order: 12 });
        assert_eq!(shape("D:12"), Shape::Dihedral { order: 12 });
        // C₃ ⋊ C₄, the dicyclic group of order 12
        let dic = crate::group::Group::from_generators(
            7,
            &[
                crate::perm::Permutation::parse_cycles(7, "(0 1 2)").unwrap(),
                crate::perm::Permutation::parse_cycles(7, "(1 2)(3 4 5 6)").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(dic.order(), 12);
        assert_eq!(shape_of(&dic).unwrap(), Shape::Other { order: 12 });
    }

    #[test]
    fn allowed_lists() {
        assert!(Shape::Dihedral { order: 4 }.allowed_for(2));
        assert!(!Shape::Dihedral { order: 4 }.allowed_for(3));
        assert!(Shape::Dihedral { order: 18 }.allowed_for(3));
        assert!(!Shape::Dihedral { order: 30 }.allowed_for(3));
        assert!(!Shape::Dihedral { order: 30 }.allowed_for(5));
        assert!(Shape::A4.allowed_for(2));
        assert!(!Shape::A4.allowed_for(3));
        assert!(Shape::Cyclic { order: 10 }.allowed_for(7));
    }
}
