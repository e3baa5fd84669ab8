mod common;

use common::{graph_from_code, lp_fractional_factor, Q};
use netinverse::factors::{fractional_factor, has_fractional_factor, theorem1_certify, FactorSpec};
use netinverse::graph::{bit_len, Family};
use netinverse::oracle::canonical_representatives;
use netinverse::Graph;
use proptest::prelude::*;

fn spec(a: u32, b: u32) -> FactorSpec {
    FactorSpec::new(a, b).unwrap()
}

fn witness_is_valid(g: &Graph, a: u32, b: u32) {
    let f = fractional_factor(g, spec(a, b)).expect("factor present");
    let mut deg = vec![Q::from_integer(0); g.order()];
    for &((u, v), doubled) in &f.doubled {
        assert!(g.has_edge(u, v));
        assert!(doubled <= 2);
        let w = Q::new(doubled as i64, 2);
        deg[u] += w;
        deg[v] += w;
    }
    for d in deg {
        assert!(d >= Q::from_integer(a as i64) && d <= Q::from_integer(b as i64));
    }
}

#[test]
fn every_small_graph_matches_the_lp() {
    for n in 2..=5 {
        for code in 0..1u64 << bit_len(n) {
            let g = graph_from_code(n, code);
            for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
                let flow = has_fractional_factor(&g, spec(a, b));
                assert_eq!(flow, lp_fractional_factor(&g, a as i64, b as i64), "n={n} code={code} [{a},{b}]");
                if flow {
                    witness_is_valid(&g, a, b);
                }
            }
        }
    }
}

#[test]
fn odd_cycles_need_half_weights() {
    let c5 = Family::Cycle { n: 5 }.build().unwrap();
    assert!(has_fractional_factor(&c5, spec(2, 2)));
    // A perfect matching of C5 does not exist, but h = 1/2 everywhere is a fractional 1-factor.
    assert!(has_fractional_factor(&c5, spec(1, 1)));
    let f = fractional_factor(&c5, spec(1, 1)).unwrap();
    assert!(f.doubled.iter().all(|&(_, d)| d == 1));
}

#[test]
fn sufficiency_never_contradicted_up_to_order_eight() {
    for n in 3..=8 {
        for g in canonical_representatives(n).unwrap() {
            for k in 2..=3 {
                let cert = theorem1_certify(&g, k).expect("no consistency violation");
                if cert.verdict.accepted() {
                    assert!(cert.factor_exists);
                }
            }
        }
    }
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), bit_len(n)).prop_map(move |bits| Graph::from_bits(n, &bits).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn flow_agrees_with_lp(g in arb_graph(8), a in 1u32..=3, extra in 0u32..=2) {
        let b = a + extra;
        let flow = has_fractional_factor(&g, spec(a, b));
        prop_assert_eq!(flow, lp_fractional_factor(&g, a as i64, b as i64));
        if flow {
            witness_is_valid(&g, a, b);
        }
    }

    #[test]
    fn widening_the_interval_keeps_factors(g in arb_graph(8), a in 1u32..=3) {
        if has_fractional_factor(&g, spec(a, a)) {
            prop_assert!(has_fractional_factor(&g, spec(a, a + 1)));
            if a > 1 {
                prop_assert!(has_fractional_factor(&g, spec(a - 1, a)));
            }
        }
    }
}
