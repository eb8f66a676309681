use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sconn::connection::{ConditionMode, ConnectionContext, FactorizedGroup};
use sconn::graphs::{are_independent, prime_graph, soluble_graph};
use sconn::groupio::{
    builtin, enumerate_factorizations, parse_generators, random_soluble_group, render_generators,
};
use sconn::liearith::arith::small_prime_divisors;
use sconn::{Budget, PermGroup, Permutation};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

const SMALL: [&str; 8] = [
    "S4", "A5", "S3xS3", "A4xC3", "D12", "psl2_7", "S3xC5", "C12",
];

struct Factored {
    ctx: ConnectionContext,
    factorizations: Vec<FactorizedGroup>,
}

fn factored(name: &'static str) -> &'static Factored {
    static S4: OnceLock<Factored> = OnceLock::new();
    static A5: OnceLock<Factored> = OnceLock::new();
    let cell = match name {
        "S4" => &S4,
        "A5" => &A5,
        _ => unreachable!("only S4 and A5 are cached"),
    };
    cell.get_or_init(|| {
        let g = builtin(name).unwrap();
        let b = Budget::default();
        Factored {
            ctx: ConnectionContext::new(&g, &b).unwrap(),
            factorizations: enumerate_factorizations(&g, &b).unwrap(),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_files_round_trip(degree in 1usize..12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Permutation> = (0..3)
            .map(|_| {
                let mut v: Vec<usize> = (0..degree).collect();
                rand::seq::SliceRandom::shuffle(v.as_mut_slice(), &mut rng);
                Permutation::from_images(v).unwrap()
            })
            .collect();
        let text = render_generators(degree, &gens);
        prop_assert_eq!(parse_generators(&text).unwrap(), gens);
    }

    #[test]
    fn compose_inverse_and_conjugation(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        // x^g = g⁻¹ x g, and conjugation is an action
        prop_assert_eq!(a.conjugate_by(&b), b.inverse().compose(&a).compose(&b));
        prop_assert_eq!(a.conjugate_by(&b).conjugate_by(&c), a.conjugate_by(&b.compose(&c)));
    }

    #[test]
    fn full_condition_implies_prime_pairs_and_matches_radical(idx in any::<prop::sample::Index>(), which in 0usize..2) {
        let f = factored(["S4", "A5"][which]);
        let fz = &f.factorizations[idx.index(f.factorizations.len())];
        let full = f.ctx.check_condition(fz, ConditionMode::Full).unwrap().holds;
        let pairs = f.ctx.check_condition(fz, ConditionMode::PrimePairs).unwrap().holds;
        let radical = f.ctx.check_condition3(fz).unwrap();
        prop_assert!(!full || pairs);
        prop_assert_eq!(full, radical);
        prop_assert_eq!(full, pairs);
    }

    #[test]
    fn conjugating_the_factors_keeps_the_prime_pair_condition(idx in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let f = factored("S4");
        let fz = &f.factorizations[idx.index(f.factorizations.len())];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = fz.g.random_element(&mut rng);
        let h = fz.g.random_element(&mut rng);
        prop_assert!(f.ctx.verify_conjugation_lemma(fz, &g, &h).unwrap());
    }

    #[test]
    fn independence_is_symmetric_and_matches_the_soluble_graph(which in 0usize..SMALL.len()) {
        let b = Budget::default();
        let g = builtin(SMALL[which]).unwrap();
        let primes = small_prime_divisors(g.order(), g.degree() as u64);
        let sol = soluble_graph(&g, SMALL[which], &b).unwrap();
        for &p in &primes {
            for &q in primes.iter().filter(|&&q| q != p) {
                let pq = are_independent(&g, p, q, &b).unwrap();
                prop_assert_eq!(pq, are_independent(&g, q, p, &b).unwrap());
                prop_assert_eq!(pq, !sol.has_edge(p, q));
            }
        }
    }

    #[test]
    fn prime_graph_inside_soluble_graph(seed in any::<u64>()) {
        let b = Budget::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_soluble_group(&mut rng, 12);
        prop_assume!(h.order_u64().is_some_and(|o| o <= 5000));
        let gamma = prime_graph(&h, "H", &b).unwrap();
        let sol = soluble_graph(&h, "H", &b).unwrap();
        prop_assert_eq!(&gamma.vertices, &sol.vertices);
        prop_assert!(gamma.edges.iter().all(|&(p, q)| sol.has_edge(p, q)));
        // a soluble group's soluble graph is complete
        let n = sol.vertices.len();
        prop_assert_eq!(sol.edges.len(), n * n.saturating_sub(1) / 2);
    }

    #[test]
    fn subgroup_soluble_graph_is_a_subgraph(which in 0usize..SMALL.len(), seed in any::<u64>()) {
        let b = Budget::default();
        let g = builtin(SMALL[which]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = PermGroup::with_degree(g.degree(), vec![g.random_element(&mut rng), g.random_element(&mut rng)]).unwrap();
        let parent = soluble_graph(&g, "G", &b).unwrap();
        let sub = soluble_graph(&h, "H", &b).unwrap();
        prop_assert!(sub.vertices.iter().all(|v| parent.vertices.contains(v)));
        prop_assert!(sub.edges.iter().all(|&(p, q)| parent.has_edge(p, q)));
    }
}
