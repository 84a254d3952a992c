use hybrid_routing::graphcore::{
    bipartite_double_cover, complete_bipartite, cycle, girth, petersen, shortest_paths, Bipartite,
    Distance,
};
use hybrid_routing::lowerbound::*;
use hybrid_routing::surd::{Surd, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PROBLEMS: [Problem; 3] = [Problem::Oracle, Problem::Stateless, Problem::Stateful];

#[test]
fn unweighted_all_zero_and_all_one() {
    for k in 1..=4 {
        for h in 1..=4 {
            let zero = gen_unweighted(k, h, Planted::Bits(vec![false; k * k])).unwrap();
            let r = verify_unweighted(&zero).unwrap();
            assert!(r.pass, "k={k} h={h}");
            assert!(r
                .records
                .iter()
                .all(|p| p.measured == Distance::Finite(h as u64 + 2) && p.via_v));
            let one = gen_unweighted(k, h, Planted::Bits(vec![true; k * k])).unwrap();
            let r = verify_unweighted(&one).unwrap();
            assert!(r.pass);
            assert!(r.records.iter().all(|p| !p.via_v));
        }
    }
}

#[test]
fn unweighted_large_random() {
    let inst = gen_unweighted(8, 5, Planted::Seed(42)).unwrap();
    let r = verify_unweighted(&inst).unwrap();
    assert_eq!(r.records.len(), 64);
    assert!(r.pass);
    assert_eq!(r.hop_ab, Some(5));
}

#[test]
fn weighted_k22_hand_values() {
    // (w0, w1, w2) = (2, 1, 1) at ell = 4: 1 < 2 < 3.
    let preset = WeightPreset {
        problem: Problem::Oracle,
        ell: 4,
        epsilon: 0.1,
        t: 1,
        w0: 2,
        w1: 1,
        w2: 1,
        alpha: Surd::int(1),
        alpha_nominal: Surd::int(1),
    };
    let base = complete_bipartite(2).unwrap();
    let inst = gen_weighted(
        &base,
        2,
        &preset,
        Planted::Bits(vec![true, false, true, true]),
    )
    .unwrap();
    let r = verify_weighted(&inst).unwrap();
    assert!(r.pass);
    assert_eq!(r.d1, 3);
    assert_eq!(r.d0, 4);
    assert_eq!(inst.graph.node_count(), 2 * 4 + 2);
    let ones = gen_weighted(&base, 2, &preset, Planted::Bits(vec![true; 4])).unwrap();
    let ut = ones
        .roles
        .transits
        .iter()
        .flat_map(|&u| ones.roles.targets.iter().map(move |&t| (u, t)))
        .filter(|&(u, t)| ones.graph.has_edge(u, t))
        .count();
    assert_eq!(ut, 4);
}

#[test]
fn weighted_rejects_bad_inputs() {
    let p4 = make_preset(Problem::Oracle, 4, 0.5, 3).unwrap();
    let p6 = make_preset(Problem::Oracle, 6, 0.5, 3).unwrap();
    let k33 = complete_bipartite(3).unwrap();
    assert!(matches!(
        gen_weighted(&k33, 3, &p6, Planted::Seed(0)),
        Err(LowerBoundError::GirthTooSmall { .. })
    ));
    let inst = gen_weighted(&k33, 3, &p4, Planted::Seed(0)).unwrap();
    assert_eq!(inst.m(), 9);
    let mut bad = p4.clone();
    bad.w0 = bad.w1;
    assert!(matches!(
        gen_weighted(&k33, 3, &bad, Planted::Seed(0)),
        Err(LowerBoundError::PresetInvalid { .. })
    ));
    assert!(matches!(
        gen_weighted(&k33, 3, &p4, Planted::Bits(vec![true; 8])),
        Err(LowerBoundError::BadXLength { .. })
    ));
    // C6 is bipartite but its natural numbering alternates sides.
    let c6 = Bipartite {
        graph: cycle(6),
        left: vec![0, 1, 2],
        right: vec![3, 4, 5],
    };
    assert_eq!(
        gen_weighted(&c6, 3, &p4, Planted::Seed(0)).unwrap_err(),
        LowerBoundError::NotBalancedBipartite
    );
}

#[test]
fn weighted_petersen_cover_stateful() {
    let base = bipartite_double_cover(&petersen());
    assert_eq!(girth(&base.graph), Some(6));
    for h in 2..=6 {
        for eps in [0.1, 0.5] {
            let p = make_preset(Problem::Stateful, 6, eps, h).unwrap();
            let inst = gen_weighted(&base, h, &p, Planted::Seed(5)).unwrap();
            assert_eq!(inst.m(), 30);
            let r = verify_weighted(&inst).unwrap();
            assert!(r.pass, "h={h} eps={eps}: {:?}", r.failures().next());
        }
    }
}

// With w2 = 1 the route s_i, v, s_q, ..., u_q, t_j costs 3*w2 + w1 + h - 1,
// far below d0 once t_j keeps any other edge, so the distance claim for
// absent bits needs 2*w2 >= w0 - w1.
#[test]
fn unit_source_weight_admits_detour_via_other_source() {
    let base = complete_bipartite(3).unwrap();
    for problem in [Problem::Oracle, Problem::Stateless] {
        let p = make_preset(problem, 4, 0.1, 3).unwrap();
        assert_eq!(p.w2, 1);
        // Only bit (0, 0) absent; t_0 still has edges from u_1 and u_2.
        let mut x = vec![true; 9];
        x[0] = false;
        let inst = gen_weighted(&base, 3, &p, Planted::Bits(x)).unwrap();
        let r = verify_weighted(&inst).unwrap();
        assert!(!r.pass);
        let bad: Vec<_> = r.failures().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].measured, Distance::Finite(3 * p.w2 + p.w1 + 3 - 1));
        // The detour still enters through v, so only the distance is off.
        assert!(bad[0].via_v);
        // All-zeros has no transit-target edge left, so the lemma holds.
        let zeros = gen_weighted(&base, 3, &p, Planted::Bits(vec![false; 9])).unwrap();
        assert!(verify_weighted(&zeros).unwrap().pass);
    }
}

#[test]
fn stateful_source_weight_blocks_detour() {
    for ell in [4, 6, 8, 10] {
        for eps in [0.05, 0.1, 0.5] {
            let p = make_preset(Problem::Stateful, ell, eps, 4).unwrap();
            assert!(2 * p.w2 >= p.w0 - p.w1, "ell={ell}");
        }
    }
}

#[test]
fn weighted_random_triples() {
    for seed in 0..20u64 {
        let ell = [4, 6, 8][seed as usize % 3];
        let h = 2 + seed as usize % 4;
        let g = high_girth_greedy(6 + seed as usize % 5, ell, 1000, seed).unwrap();
        let p = make_preset(Problem::Stateful, ell, 0.3, h).unwrap();
        let inst = gen_weighted(&g.base, h, &p, Planted::Seed(seed)).unwrap();
        let r = verify_weighted(&inst).unwrap();
        assert!(r.pass, "seed {seed}");
        assert_eq!(r.hop_ab, Some(h));
    }
}

#[test]
fn weighted_json_round_trip() {
    let base = bipartite_double_cover(&cycle(5));
    let p = make_preset(Problem::Stateful, 10, 0.1, 4).unwrap();
    let inst = gen_weighted(&base, 4, &p, Planted::Seed(3)).unwrap();
    let back: GammaInstance = serde_json::from_str(&inst.to_json()).unwrap();
    assert_eq!(back, inst);
    assert!(verify_weighted(&back).unwrap().pass);
    assert!(verify_unweighted(&back).is_err());
}

#[test]
fn presets_sound_and_strict_across_grid() {
    for problem in PROBLEMS {
        for ell in [4, 6, 8, 10] {
            for eps in [0.05, 0.1, 0.5] {
                for h in [2, 3, 10, 25, 50] {
                    let p = make_preset(problem, ell, eps, h).unwrap();
                    let r = check_inequalities(&p, h);
                    assert!(r.pass, "{problem:?} ell={ell} eps={eps} h={h}: {r:?}");
                    if problem == Problem::Stateful {
                        let mut raised = p.clone();
                        raised.alpha = p
                            .alpha
                            .add_rational(Q::new(2, 1) * Surd::from_f64(eps).unwrap().a);
                        assert!(!check_inequalities(&raised, h).pass);
                    }
                }
            }
        }
    }
}

#[test]
fn stateful_ten_table_value() {
    let p = make_preset(Problem::Stateful, 10, 0.1, 10).unwrap();
    let want = (3.0 + 17f64.sqrt()) / 4.0 - 0.1;
    assert!((p.alpha.to_f64() - want).abs() < 1e-12);
    let r = check_inequalities(&p, 10);
    assert_eq!(r.inequalities.len(), 5);
    assert!(r.inequalities.iter().all(|i| i.holds && i.slack > 0.0));
}

#[test]
fn stateless_beyond_one_plus_sqrt2_breaks_condition_three() {
    let h = 5;
    let eps = 0.1;
    let mut p = make_preset(Problem::Stateless, 8, eps, h).unwrap();
    let c = Surd::new(Q::new(11, 10), Q::new(1, 1), 2);
    p.w0 = c.floor_times(p.t as i128) as u64;
    p.alpha = Surd::rational(Q::new(p.w0 as i128, p.t as i128) - Q::new(1, 10));
    let r = check_inequalities(&p, h);
    assert!(r.precondition);
    let three = r.inequalities.iter().find(|i| i.name == "(3)").unwrap();
    assert!(!three.holds);
}

#[test]
fn decoding_survives_inflation() {
    let base = bipartite_double_cover(&petersen());
    let p = make_preset(Problem::Stateful, 6, 0.1, 3).unwrap();
    let inst = gen_weighted(&base, 3, &p, Planted::Seed(8)).unwrap();
    let exact: Vec<Distance> = (0..inst.m())
        .map(|b| {
            let (s, t) = inst.pair(b);
            shortest_paths(&inst.graph, s).unwrap().dist[t]
        })
        .collect();
    assert_eq!(decode_from_oracle(&inst, &exact).unwrap(), inst.x);
    let alpha = p.alpha.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let est = inflate_estimates(&exact, alpha, &mut rng);
        assert_eq!(decode_from_oracle(&inst, &est).unwrap(), inst.x);
    }
    // Worst legal inflation: exactly alpha times the distance, rounded down.
    let worst: Vec<Distance> = exact
        .iter()
        .map(|d| Distance::Finite((d.finite().unwrap() as f64 * alpha).floor() as u64))
        .collect();
    assert_eq!(decode_from_oracle(&inst, &worst).unwrap(), inst.x);
}

#[test]
fn greedy_is_k_kk_at_four() {
    let g = high_girth_greedy(4, 4, 16, 0).unwrap();
    assert_eq!(g.base.graph.edge_count(), 16);
    assert_eq!(girth(&g.base.graph), Some(4));
}
