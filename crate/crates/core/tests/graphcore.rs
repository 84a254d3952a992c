use hybrid_routing::graphcore::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Shortest simple path by exhaustive DFS. Exponential; tiny graphs only.
fn brute_dist(g: &Graph, s: NodeId, t: NodeId) -> Distance {
    fn go(g: &Graph, u: NodeId, t: NodeId, acc: u64, seen: &mut Vec<bool>, best: &mut Option<u64>) {
        if u == t {
            *best = Some(best.map_or(acc, |b| b.min(acc)));
            return;
        }
        for (v, w) in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                go(g, v, t, acc + w, seen, best);
                seen[v] = false;
            }
        }
    }
    let mut seen = vec![false; g.node_count()];
    seen[s] = true;
    let mut best = None;
    go(g, s, t, 0, &mut seen, &mut best);
    best.map_or(Distance::Infinite, Distance::Finite)
}

/// Lightest walk with at most `h` edges, by enumerating all walks.
fn brute_hop_limited(g: &Graph, s: NodeId, t: NodeId, h: usize) -> Distance {
    fn go(g: &Graph, u: NodeId, t: NodeId, left: usize, acc: u64, best: &mut Option<u64>) {
        if u == t {
            *best = Some(best.map_or(acc, |b| b.min(acc)));
        }
        if left == 0 {
            return;
        }
        for (v, w) in g.neighbors(u) {
            go(g, v, t, left - 1, acc + w, best);
        }
    }
    let mut best = None;
    go(g, s, t, h, 0, &mut best);
    best.map_or(Distance::Infinite, Distance::Finite)
}

/// Girth as the minimum over edges of (shortest detour avoiding the edge) + 1.
fn girth_by_edge_removal(g: &Graph) -> Option<usize> {
    let mut best = None;
    for (u, v, _) in g.edges() {
        let h = Graph::from_edges(
            g.node_count(),
            g.edges().into_iter().filter(|&(a, b, _)| (a, b) != (u, v)),
        )
        .unwrap();
        if let Some(d) = bfs_hops(&h, u)[v] {
            best = Some(best.map_or(d + 1, |b: usize| b.min(d + 1)));
        }
    }
    best
}

fn small_graph(seed: u64, n: usize, p: f64, w: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gnp(n, p, w, &mut rng)
}

#[test]
fn dijkstra_matches_simple_path_enumeration() {
    for seed in 0..30 {
        let g = small_graph(seed, 7, 0.45, 9);
        let fw = floyd_warshall(&g);
        for s in 0..g.node_count() {
            let t = shortest_paths(&g, s).unwrap();
            for v in 0..g.node_count() {
                let b = brute_dist(&g, s, v);
                assert_eq!(t.dist[v], b, "seed {seed} {s}->{v}");
                assert_eq!(fw[s][v], b);
                if let Some(p) = t.path_to(v) {
                    assert_eq!(Distance::Finite(path_weight(&g, &p).unwrap()), b);
                }
            }
        }
    }
}

#[test]
fn hop_limited_matches_walk_enumeration() {
    for seed in 0..20 {
        let g = small_graph(seed, 6, 0.5, 7);
        for h in 0..4 {
            for s in 0..6 {
                let t = hop_limited(&g, s, h).unwrap();
                for v in 0..6 {
                    assert_eq!(
                        t.dist[v],
                        brute_hop_limited(&g, s, v, h),
                        "seed {seed} h {h}"
                    );
                }
            }
        }
    }
}

#[test]
fn girth_matches_edge_removal() {
    assert_eq!(girth(&petersen()), Some(5));
    for seed in 0..40 {
        let g = small_graph(seed, 9, 0.3, 1);
        assert_eq!(girth(&g), girth_by_edge_removal(&g), "seed {seed}");
    }
    let cover = bipartite_double_cover(&petersen());
    assert_eq!(girth(&cover.graph), girth_by_edge_removal(&cover.graph));
}

#[test]
fn generators_are_connected_and_seeded() {
    for seed in 0..10 {
        let mut a = ChaCha8Rng::seed_from_u64(seed);
        let mut b = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(60, 0.05, 100, &mut a);
        assert!(g.is_connected());
        assert!(g.max_weight() <= 100);
        assert_eq!(g, random_connected(60, 0.05, 100, &mut b));
        let r = ring_with_chords(80, 3, 0.2, 1, &mut a);
        assert!(r.is_connected());
    }
}

#[test]
fn ball_matches_repeated_neighborhood_union() {
    let g = small_graph(3, 30, 0.08, 4);
    for v in 0..30 {
        let mut set = vec![false; 30];
        set[v] = true;
        for h in 0..5 {
            let b = ball(&g, v, h).unwrap();
            let want: Vec<NodeId> = (0..30).filter(|&u| set[u]).collect();
            assert_eq!(b.members, want);
            for (x, y, w) in g.edges() {
                assert_eq!(b.graph.has_edge(x, y), set[x] && set[y]);
                if set[x] && set[y] {
                    assert_eq!(b.graph.weight(x, y), Some(w));
                }
            }
            let next: Vec<bool> = (0..30)
                .map(|u| set[u] || g.neighbors(u).any(|(z, _)| set[z]))
                .collect();
            set = next;
        }
    }
}

proptest! {
    #[test]
    fn distances_are_a_metric(seed in 0u64..1000, n in 2usize..25) {
        let g = small_graph(seed, n, 0.25, 20);
        let fw = floyd_warshall(&g);
        for a in 0..n {
            prop_assert_eq!(fw[a][a], Distance::ZERO);
            for b in 0..n {
                prop_assert_eq!(fw[a][b], fw[b][a]);
                for c in 0..n {
                    prop_assert!(fw[a][c] <= fw[a][b] + fw[b][c]);
                }
            }
        }
    }

    #[test]
    fn hop_limited_is_monotone_and_converges(seed in 0u64..1000, n in 2usize..20) {
        let g = small_graph(seed, n, 0.3, 9);
        let exact = shortest_paths(&g, 0).unwrap().dist;
        let mut prev = hop_limited(&g, 0, 0).unwrap().dist;
        for h in 1..n {
            let cur = hop_limited(&g, 0, h).unwrap().dist;
            for v in 0..n {
                prop_assert!(cur[v] <= prev[v]);
                prop_assert!(cur[v] >= exact[v]);
            }
            prev = cur;
        }
        prop_assert_eq!(prev, exact);
    }

    #[test]
    fn double_cover_shape(seed in 0u64..1000, n in 2usize..15) {
        let g = small_graph(seed, n, 0.3, 5);
        let c = bipartite_double_cover(&g);
        prop_assert_eq!(c.graph.node_count(), 2 * n);
        prop_assert_eq!(c.graph.edge_count(), 2 * g.edge_count());
        prop_assert!(is_bipartite(&c.graph).is_some());
        match (girth(&g), girth(&c.graph)) {
            (Some(a), Some(b)) => prop_assert!(b >= a),
            (None, Some(_)) => prop_assert!(false, "cover of a forest has a cycle"),
            _ => {}
        }
    }

    #[test]
    fn json_round_trip(seed in 0u64..1000, n in 1usize..20) {
        let g = small_graph(seed, n, 0.3, 50);
        let back: Graph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }
}
