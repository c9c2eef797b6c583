use std::collections::HashSet;

use gengraph::chain::StabChain;
use gengraph::graph::degree;
use gengraph::group::{generates, GroupSpec};
use gengraph::mobius::overgroup_lattice;
use gengraph::numtheory::{decompositions, lcm};
use gengraph::{Caps, Family, Parity, Permutation};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_zero_based(&images).unwrap())
}

fn sized_pair(max: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (3..=max).prop_flat_map(|n| (perm(n), perm(n)))
}

fn sized_triple(max: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (3..=max).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

fn sign(p: &Permutation) -> i32 {
    if p.parity() == Parity::Even {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn composition_is_associative((a, b, c) in sized_triple(12)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
    }

    #[test]
    fn inverse_cancels((a, _) in sized_pair(16)) {
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert!(a.inverse().then(&a).is_identity());
    }

    #[test]
    fn parity_is_a_homomorphism((a, b) in sized_pair(16)) {
        prop_assert_eq!(sign(&a.then(&b)), sign(&a) * sign(&b));
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths((a, _) in sized_pair(16)) {
        let expected = a.cycle_shape().parts().iter().fold(1u64, |acc, &l| lcm(acc, l as u64));
        prop_assert_eq!(a.order(), expected);
        prop_assert!(a.pow(a.order() as i64).is_identity());
    }

    #[test]
    fn conjugation_preserves_shape((a, s) in sized_pair(16)) {
        prop_assert_eq!(a.conjugate_by(&s).cycle_shape(), a.cycle_shape());
    }

    #[test]
    fn text_round_trip((a, _) in sized_pair(20)) {
        prop_assert_eq!(Permutation::parse(&a.to_string(), a.degree()).unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), a);
    }

    #[test]
    fn rank_round_trip((a, _) in sized_pair(10)) {
        prop_assert_eq!(Permutation::unrank(a.degree(), a.rank()), a);
    }

    #[test]
    fn chain_order_matches_closure((a, b) in sized_pair(6)) {
        let mut seen = HashSet::from([Permutation::identity(a.degree())]);
        let mut stack = vec![Permutation::identity(a.degree())];
        while let Some(x) = stack.pop() {
            for s in [a, b] {
                let y = x.then(&s);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let chain = StabChain::new(a.degree(), &[a, b]);
        prop_assert_eq!(chain.order(), seen.len() as u128);
        prop_assert!(seen.iter().all(|x| chain.contains(x)));
    }

    #[test]
    fn generation_is_symmetric_and_conjugation_invariant((g, x, s) in sized_triple(8)) {
        let spec = GroupSpec::sym(g.degree()).unwrap();
        let forward = generates(spec, &g, &x).unwrap();
        prop_assert_eq!(forward, generates(spec, &x, &g).unwrap());
        prop_assert_eq!(forward, generates(spec, &g.conjugate_by(&s), &x.conjugate_by(&s)).unwrap());
    }

    #[test]
    fn degree_is_conjugation_invariant((g, s) in (3usize..=6).prop_flat_map(|n| (perm(n), perm(n)))) {
        prop_assume!(!g.is_identity());
        let caps = Caps::default();
        let family = if g.is_even() { Family::Alt } else { Family::Sym };
        let spec = GroupSpec::new(family, g.degree()).unwrap();
        prop_assert_eq!(degree(spec, &g, &caps).unwrap(), degree(spec, &g.conjugate_by(&s), &caps).unwrap());
    }

    #[test]
    fn mobius_defining_sums_vanish(g in (3usize..=5).prop_flat_map(perm)) {
        prop_assume!(!g.is_identity());
        let spec = GroupSpec::sym(g.degree()).unwrap();
        let lattice = overgroup_lattice(spec, &g, &Caps::default()).unwrap();
        prop_assert_eq!(lattice.nodes.last().unwrap().mobius, 1);
        prop_assert!(lattice.defining_sum_residuals().iter().all(|&r| r == 0));
        prop_assert!(lattice.nodes.iter().all(|node| spec.order().is_multiple_of(node.order)));
    }

    #[test]
    fn decomposition_certificates_are_valid(n in 3usize..200) {
        for family in [Family::Alt, Family::Sym] {
            for cert in decompositions(n, family).unwrap() {
                let parts = cert.shape.parts();
                prop_assert_eq!(parts.iter().sum::<usize>(), n);
                let distinct: HashSet<&usize> = parts.iter().collect();
                prop_assert_eq!(distinct.len(), parts.len());
                prop_assert_eq!(*cert.coefficients.last().unwrap(), 1);
                let total: u64 = cert
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| a as u64 * cert.p.pow(i as u32))
                    .sum();
                prop_assert_eq!(total, n as u64);
                prop_assert!(family == Family::Sym || cert.alt_condition);
            }
        }
    }
}
