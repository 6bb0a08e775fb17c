use proptest::prelude::*;

use oortlab::analysis::{o_p_prime, o_pi, p_part, prime_factors, sylow};
use oortlab::classify::{is_cyclic_by_p, is_o_group_by_definition, shape_of};
use oortlab::construct::build;
use oortlab::{Group, Permutation};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn gens(degree: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(degree), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order() as i64).is_identity());
    }

    #[test]
    fn cycle_notation_round_trips(a in perm(9)) {
        let text = a.to_string();
        prop_assert_eq!(Permutation::parse_cycles(9, &text).unwrap(), a);
    }

    #[test]
    fn membership_and_sylow(gs in gens(6)) {
        let g = Group::from_generators(6, &gs).unwrap();
        prop_assert_eq!(g.element_list().unwrap().len() as u64, g.order());
        for x in &gs {
            prop_assert!(g.has(x));
        }
        for p in prime_factors(g.order()) {
            let s = sylow(&g, p).unwrap();
            prop_assert_eq!(s.order(), p_part(g.order(), p));
            prop_assert!(s.is_subgroup_of(&g));
        }
    }

    #[test]
    fn quotient_orders_multiply(gs in gens(6), p in prop::sample::select(vec![2u64, 3, 5])) {
        let g = Group::from_generators(6, &gs).unwrap();
        let r = o_p_prime(&g, p).unwrap();
        prop_assert!(r.is_normal_in(&g));
        let (q, map) = g.quotient_by(&r).unwrap();
        prop_assert_eq!(q.order() * r.order(), g.order());
        prop_assert_eq!(map.index() as u64, q.order());
        let pi: Vec<u64> = prime_factors(g.order()).into_iter().filter(|&x| x != p).collect();
        prop_assert!(o_pi(&g, &pi).unwrap().same_as(&r));
    }

    #[test]
    fn witnesses_are_cyclic_by_p_and_disallowed(gs in gens(6), p in prop::sample::select(vec![2u64, 3, 5])) {
        let g = Group::from_generators(6, &gs).unwrap();
        let v = is_o_group_by_definition(&g, p).unwrap();
        prop_assert_eq!(v.is_o_group, v.witnesses.is_empty());
        for w in &v.witnesses {
            let h = Group::from_generators(6, &w.generators).unwrap();
            prop_assert!(is_cyclic_by_p(&h, p).unwrap().is_some());
            prop_assert_eq!(shape_of(&h).unwrap(), w.shape);
            prop_assert!(!w.shape.allowed_for(p));
        }
    }
}

#[test]
fn prime_to_p_groups_are_always_positive() {
    for spec in ["C:15", "D:10", "A:4", "PROD:(C:3)x(C:5)", "INV:5:8:klein"] {
        let g = build(spec).unwrap();
        assert!(
            is_o_group_by_definition(&g, 7).unwrap().is_o_group,
            "{spec}"
        );
    }
}
