//! Randomized invariants: permutation algebra, stabilizer chains against
//! brute-force closures, coset representatives, unique decomposition, the
//! skew-morphism identity, and graph product counting.

use hallmap::factor::certify_factorization;
use hallmap::group::PermGroup;
use hallmap::maps;
use hallmap::perm::Permutation;
use hallmap::skew;
use hallmap::zoo;
use proptest::prelude::*;
use std::collections::{BTreeSet, HashSet};

/// A uniformly random permutation: argsort of random keys, with ties
/// broken by position.
fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    prop::collection::vec(any::<u64>(), degree).prop_map(move |keys| {
        let mut idx: Vec<u32> = (0..degree as u32).collect();
        idx.sort_by_key(|&i| (keys[i as usize], i));
        Permutation::from_images(idx).unwrap()
    })
}

fn small_graph(n: u32) -> impl Strategy<Value = maps::Graph> {
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
        let edges: BTreeSet<(u32, u32)> = pairs
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(&e, _)| e)
            .collect();
        maps::Graph::new(n, edges, None).unwrap()
    })
}

proptest! {
    #[test]
    fn compose_is_associative(p in perm(12), q in perm(12), r in perm(12)) {
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
    }

    #[test]
    fn inverse_reverses_products(p in perm(12), q in perm(12)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.compose(&q).inverse(), q.inverse().compose(&p.inverse()));
    }

    #[test]
    fn cycle_notation_round_trips(p in perm(15)) {
        let text = p.to_string();
        prop_assert_eq!(Permutation::from_cycles(15, &text).unwrap(), p);
    }

    #[test]
    fn shift_then_restrict_recovers(p in perm(8), offset in 0usize..5) {
        let shifted = p.shift(offset, 16);
        prop_assert_eq!(shifted.restrict(offset, 8).unwrap(), p);
        for fixed in 0..offset {
            prop_assert_eq!(shifted.image(fixed), fixed);
        }
    }

    #[test]
    fn chain_order_matches_closure(a in perm(6), b in perm(6)) {
        let g = PermGroup::from_generators(vec![a, b]).unwrap();
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut frontier = vec![Permutation::identity(6)];
        seen.insert(frontier[0].clone());
        while let Some(cur) = frontier.pop() {
            for gen in g.generators() {
                let next = cur.compose(gen);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        prop_assert_eq!(Some(seen.len() as u64), g.order_u64());
    }

    #[test]
    fn coset_representative_ignores_the_coset_part(g in perm(8), h in perm(8), e in 0u32..12) {
        let sub = PermGroup::cyclic_from(&h);
        let rep = sub.min_coset_rep(&g);
        let moved = h.pow(i64::from(e)).compose(&g);
        prop_assert_eq!(sub.min_coset_rep(&moved), rep.clone());
        prop_assert!(sub.contains(&rep.compose(&g.inverse())));
    }

    #[test]
    fn decomposition_recomposes(indices in prop::collection::vec(any::<u64>(), 4)) {
        let (g, h, k) = zoo::standard_factorization(&hallmap::descriptor::GroupDescriptor::Alt(5)).unwrap();
        let f = certify_factorization(&g, &h, &k).unwrap();
        let sizes = g.transversal_sizes();
        let idx: Vec<usize> = sizes
            .iter()
            .zip(indices.iter().cycle())
            .map(|(&s, &r)| (r % s as u64) as usize)
            .collect();
        let el = g.element_from_indices(&idx);
        let (part, j) = f.decompose(&el).unwrap();
        prop_assert!(f.h().contains(&part));
        prop_assert!(j < f.k_order());
        prop_assert_eq!(part.compose(f.k_power(j)), el);
    }

    #[test]
    fn skew_identity_holds_on_random_pairs(i in any::<u32>(), j in any::<u32>()) {
        let s4 = zoo::sym_group(4).unwrap();
        let d8 = zoo::dihedral_group(8).unwrap();
        let k = Permutation::from_cycles(4, "(1,2,3)").unwrap();
        let f = certify_factorization(&s4, &d8, &k).unwrap();
        let s = skew::skew_from_factorization(&f).unwrap();
        let n = s.elements.len() as u32;
        let g = &s.elements[(i % n) as usize];
        let h = &s.elements[(j % n) as usize];
        let lhs = s.rho_of(&g.compose(h)).unwrap().clone();
        let mut rhs = h.clone();
        for _ in 0..s.pi_of(g).unwrap() {
            rhs = s.rho_of(&rhs).unwrap().clone();
        }
        prop_assert_eq!(lhs, s.rho_of(g).unwrap().compose(&rhs));
    }

    #[test]
    fn tensor_product_edge_count(a in small_graph(5), b in small_graph(5)) {
        let p = maps::graph_direct_product(&a, &b);
        prop_assert_eq!(p.edge_count(), 2 * a.edge_count() * b.edge_count());
        prop_assert_eq!(p.n, a.n * b.n);
    }
}
