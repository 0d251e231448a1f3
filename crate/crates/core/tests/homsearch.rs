use cycle_minion::graph::*;
use cycle_minion::homsearch::*;

fn brute_force(g: &Graph, h: &Graph) -> Vec<Vec<usize>> {
    let (nv, nh) = (g.vertex_count(), h.vertex_count());
    let total = nh.pow(nv as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut f = vec![0; nv];
        let mut c = code;
        for slot in f.iter_mut().rev() {
            *slot = c % nh;
            c /= nh;
        }
        if g.edges().iter().all(|&(u, v)| h.has_edge(f[u], f[v])) {
            out.push(f);
        }
    }
    out
}

fn small_pairs() -> Vec<(Graph, Graph)> {
    let c = |k| make_cycle(k).unwrap();
    vec![
        (c(3), make_complete(3).unwrap()),
        (c(4), c(3)),
        (c(6), c(3)),
        (c(7), c(5)),
        (c(9), c(3)),
        (c(11), make_complete(3).unwrap()),
        (make_power(&c(3), 2).unwrap(), c(3)),
        (c(5), make_dk(9, 3).unwrap()),
        (c(12), make_complete(3).unwrap()),
    ]
}

#[test]
fn complete_against_brute_force() {
    for (g, h) in small_pairs() {
        if (h.vertex_count() as f64).powi(g.vertex_count() as i32) > 3f64.powi(12) * 10.0 {
            continue;
        }
        let expected = brute_force(&g, &h);
        let found = enumerate_homs(&g, &h, &SearchConfig::default()).unwrap();
        assert_eq!(found, expected);
        let unpropagated =
            enumerate_homs(&g, &h, &SearchConfig::default().without_propagation()).unwrap();
        assert_eq!(unpropagated, expected);
        assert_eq!(
            enumerate_homs_parallel(&g, &h, &SearchConfig::default()).unwrap(),
            expected
        );
    }
}

#[test]
fn emitted_maps_are_homomorphisms() {
    for (g, h) in small_pairs() {
        for f in enumerate_homs(&g, &h, &SearchConfig::default()).unwrap() {
            assert!(is_homomorphism(&g, &h, &f).unwrap());
        }
    }
}

#[test]
fn chromatic_counts() {
    let k3 = make_complete(3).unwrap();
    for k in 3..=12usize {
        let expected = (1i64 << k) + if k % 2 == 0 { 2 } else { -2 };
        assert_eq!(
            count_homs(&make_cycle(k).unwrap(), &k3).unwrap() as i64,
            expected
        );
    }
}

#[test]
fn limit_truncates() {
    let g = make_cycle(9).unwrap();
    let k3 = make_complete(3).unwrap();
    let some = enumerate_homs(&g, &k3, &SearchConfig::default().with_limit(7)).unwrap();
    let all = enumerate_homs(&g, &k3, &SearchConfig::default()).unwrap();
    assert_eq!(some, all[..7]);
}

#[test]
fn samples_are_valid_and_reproducible() {
    let k3 = make_complete(3).unwrap();
    for seed in 0..20 {
        let f = sample_polymorphism(9, 2, &k3, seed).unwrap().unwrap();
        assert_eq!(sample_polymorphism(9, 2, &k3, seed).unwrap().unwrap(), f);
        let base = make_power(&make_cycle(9).unwrap(), 2).unwrap();
        assert!(is_homomorphism(&base, &k3, f.values()).unwrap());
    }
    assert_eq!(
        sample_hom(&make_cycle(5).unwrap(), &make_cycle(4).unwrap(), 3).unwrap(),
        None
    );
}

#[test]
fn budget_refuses_large_enumerations() {
    let k3 = make_complete(3).unwrap();
    let err = enumerate_polymorphisms(7, 2, &k3, DEFAULT_BUDGET).unwrap_err();
    assert!(matches!(err, cycle_minion::Error::BudgetExceeded { .. }));
    assert_eq!(
        enumerate_polymorphisms(5, 2, &k3, DEFAULT_BUDGET)
            .unwrap()
            .len(),
        7560
    );
    assert_eq!(
        enumerate_polymorphisms(3, 3, &k3, DEFAULT_BUDGET)
            .unwrap()
            .len(),
        18
    );
}
