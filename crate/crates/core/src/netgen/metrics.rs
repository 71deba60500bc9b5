use rayon::prelude::*;
use serde::Serialize;

use super::graph::Graph;
use crate::error::{Error, Result};

/// Structural properties reported for an evaluation network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NetworkMetrics {
    pub avg_path_length: f64,
    pub diameter: usize,
    pub clustering: f64,
}

fn require_connected(g: &Graph) -> Result<()> {
    match g.component_count() {
        1 => Ok(()),
        components => Err(Error::Disconnected { components }),
    }
}

/// (sum of distances, eccentricity) for every BFS source, fanned across the
/// rayon pool.
fn all_pairs(g: &Graph) -> (u128, usize) {
    (0..g.node_count())
        .into_par_iter()
        .map(|s| {
            let dist = g.bfs_distances(s);
            let sum: u128 = dist.iter().map(|&d| d as u128).sum();
            let ecc = dist.iter().copied().max().unwrap_or(0);
            (sum, ecc)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1.max(b.1)))
}

fn mean_distance(g: &Graph, total: u128) -> f64 {
    let n = g.node_count();
    if n < 2 {
        return 0.0;
    }
    total as f64 / (n as f64 * (n - 1) as f64)
}

/// Mean shortest-path length over ordered pairs of distinct nodes.
pub fn avg_path_length(g: &Graph) -> Result<f64> {
    require_connected(g)?;
    Ok(mean_distance(g, all_pairs(g).0))
}

pub fn diameter(g: &Graph) -> Result<usize> {
    require_connected(g)?;
    Ok(all_pairs(g).1)
}

/// Local clustering of one node; zero below degree 2.
pub fn local_clustering(g: &Graph, u: usize) -> f64 {
    let nbrs = g.neighbors(u);
    let d = nbrs.len();
    if d < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in nbrs.iter().enumerate() {
        links += sorted_intersection_len(&nbrs[i + 1..], g.neighbors(a));
    }
    2.0 * links as f64 / (d * (d - 1)) as f64
}

fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Mean local clustering coefficient (Watts-Strogatz definition).
pub fn clustering_coefficient(g: &Graph) -> Result<f64> {
    require_connected(g)?;
    Ok(mean_local_clustering(g))
}

fn mean_local_clustering(g: &Graph) -> f64 {
    let n = g.node_count();
    let sum: f64 = (0..n).into_par_iter().map(|u| local_clustering(g, u)).sum();
    sum / n as f64
}

/// All three metrics with a single all-pairs BFS pass.
pub fn network_metrics(g: &Graph) -> Result<NetworkMetrics> {
    require_connected(g)?;
    let (total, diameter) = all_pairs(g);
    Ok(NetworkMetrics {
        avg_path_length: mean_distance(g, total),
        diameter,
        clustering: mean_local_clustering(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::generators::{complete, watts_strogatz};

    #[test]
    fn complete_graph_metrics() {
        let m = network_metrics(&complete(4).unwrap()).unwrap();
        assert_eq!(m.avg_path_length, 1.0);
        assert_eq!(m.diameter, 1);
        assert_eq!(m.clustering, 1.0);
    }

    #[test]
    fn disconnected_graph_is_an_error() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        match avg_path_length(&g) {
            Err(Error::Disconnected { components }) => assert_eq!(components, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(diameter(&g).is_err());
        assert!(clustering_coefficient(&g).is_err());
    }

    #[test]
    fn path_graph() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        // distances: 1,2,3,1,2,1 over 6 unordered pairs
        assert!((avg_path_length(&g).unwrap() - 10.0 / 6.0).abs() < 1e-12);
        assert_eq!(diameter(&g).unwrap(), 3);
        assert_eq!(clustering_coefficient(&g).unwrap(), 0.0);
    }

    #[test]
    fn lattice_clustering_matches_closed_form() {
        // 3(k-2) / (4(k-1)) for a ring lattice with even degree k
        for k in [4usize, 6, 8] {
            let g = watts_strogatz(100, k, 0.0, 0).unwrap();
            let expected = 3.0 * (k as f64 - 2.0) / (4.0 * (k as f64 - 1.0));
            assert!((clustering_coefficient(&g).unwrap() - expected).abs() < 1e-12);
        }
    }
}
