use lurker::netgen::{
    avg_path_length, barabasi_albert, clustering_coefficient, diameter, network_metrics, watts_strogatz, Graph,
    NetworkSpec,
};
use proptest::prelude::*;

/// Mean distance of a ring lattice computed from ring offsets alone: a node
/// at ring offset d is ceil(d / half) hops away.
fn ring_lattice_apl_oracle(n: usize, k: usize) -> (f64, usize) {
    let half = k / 2;
    let mut total = 0usize;
    let mut diam = 0;
    for d in 1..n {
        let ring = d.min(n - d);
        let hops = ring.div_ceil(half);
        total += hops;
        diam = diam.max(hops);
    }
    (total as f64 / (n - 1) as f64, diam)
}

#[test]
fn ring_lattice_metrics_match_offset_oracle() {
    for (n, k) in [(30, 4), (101, 4), (64, 6), (200, 8)] {
        let g = watts_strogatz(n, k, 0.0, 0).unwrap();
        let (apl, diam) = ring_lattice_apl_oracle(n, k);
        assert!((avg_path_length(&g).unwrap() - apl).abs() < 1e-9, "n={n} k={k}");
        assert_eq!(diameter(&g).unwrap(), diam);
    }
}

#[test]
fn ring_lattice_5000_oracle_is_table_value() {
    let (apl, diam) = ring_lattice_apl_oracle(5000, 4);
    assert!((apl - 625.38).abs() < 0.01);
    assert_eq!(diam, 1250);
}

#[test]
fn ws_clustering_decreases_with_beta() {
    let mean = |beta: f64| {
        (0..20u64)
            .map(|s| clustering_coefficient(&watts_strogatz(1000, 4, beta, s).unwrap()).unwrap())
            .sum::<f64>()
            / 20.0
    };
    let c: Vec<f64> = [0.0, 0.3, 0.5, 0.8].iter().map(|&b| mean(b)).collect();
    assert_eq!(c[0], 0.5);
    assert!(c.windows(2).all(|w| w[1] <= w[0]), "{c:?}");
}

#[test]
fn ba_has_hubs() {
    let g = barabasi_albert(5000, 2, 3).unwrap();
    let mean = g.mean_degree();
    assert!((mean - 4.0).abs() < 0.01);
    let max = *g.degrees().iter().max().unwrap() as f64;
    assert!(max > 10.0 * mean, "max degree {max}");
}

/// Log-binned degree density for degrees >= 8, fitted by least squares in
/// log-log space.
fn tail_exponent(degree_counts: &[usize]) -> f64 {
    let total: usize = degree_counts.iter().sum();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut lo = 8usize;
    while lo < degree_counts.len() {
        let hi = (2 * lo).min(degree_counts.len());
        let count: usize = degree_counts[lo..hi].iter().sum();
        if count > 0 {
            let width = (hi - lo) as f64;
            let centre = ((lo as f64) * ((hi - 1) as f64)).sqrt();
            xs.push(centre.ln());
            ys.push((count as f64 / width / total as f64).ln());
        }
        lo = hi;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn ba_tail_exponent_near_minus_three() {
    let mut counts = vec![0usize; 1];
    for seed in 0..20 {
        let g = barabasi_albert(5000, 2, seed).unwrap();
        for d in g.degrees() {
            if d >= counts.len() {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
    }
    let slope = tail_exponent(&counts);
    assert!((slope + 3.0).abs() <= 0.5, "slope {slope}");
}

#[test]
fn disconnected_graph_reports_components() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
    let err = network_metrics(&g).unwrap_err();
    assert!(err.to_string().contains("3 components"), "{err}");
}

fn spec_strategy() -> impl Strategy<Value = NetworkSpec> {
    prop_oneof![
        (12usize..120, prop_oneof![Just(2usize), Just(4), Just(6)], 0.0f64..=1.0, any::<u32>())
            .prop_map(|(n, k, beta, seed)| NetworkSpec::ws(n, k, beta, u64::from(seed))),
        (3usize..150, 1usize..4, any::<u32>())
            .prop_filter("m < n", |(n, m, _)| m < n)
            .prop_map(|(n, m, seed)| NetworkSpec::ba(n, m, u64::from(seed))),
        (2usize..30).prop_map(NetworkSpec::complete),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_graphs_are_simple_and_symmetric(spec in spec_strategy()) {
        let g = match spec.generate() {
            Ok(g) => g,
            // sparse WS rings can stay disconnected through every retry
            Err(lurker::Error::Disconnected { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(g.validate().is_ok());
        prop_assert_eq!(g.node_count(), spec.n);
        for u in 0..g.node_count() {
            for &v in g.neighbors(u) {
                prop_assert!(v != u);
                prop_assert!(g.neighbors(v).contains(&u));
            }
        }
        match spec.model {
            lurker::netgen::NetworkModel::Ws { mean_degree, .. } => {
                prop_assert_eq!(g.edge_count(), spec.n * mean_degree / 2);
                prop_assert!(g.is_connected());
            }
            lurker::netgen::NetworkModel::Ba { m } => {
                prop_assert_eq!(g.edge_count(), m * (m + 1) / 2 + m * (spec.n - m - 1));
            }
            lurker::netgen::NetworkModel::Complete => {
                prop_assert_eq!(g.edge_count(), spec.n * (spec.n - 1) / 2);
            }
        }
        // same spec, same graph
        prop_assert_eq!(spec.generate().unwrap(), g.clone());
        prop_assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn ws_beta_zero_is_seed_independent(n in 10usize..200, s1 in any::<u64>(), s2 in any::<u64>()) {
        prop_assert_eq!(watts_strogatz(n, 4, 0.0, s1).unwrap(), watts_strogatz(n, 4, 0.0, s2).unwrap());
    }
}
