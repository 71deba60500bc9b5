use rand::Rng;

use super::graph::Graph;
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

/// Connected-graph retries for Watts-Strogatz rewiring.
pub const WS_MAX_RETRIES: u64 = 100;

/// Watts-Strogatz small world: ring lattice with `mean_degree / 2` neighbors
/// per side, then each lattice edge `(u, u + j)` has its far endpoint rewired
/// with probability `beta` to a uniform node that is neither `u` nor already
/// adjacent to it.
///
/// A disconnected result is regenerated with `seed + 1`, `seed + 2`, ... up to
/// [`WS_MAX_RETRIES`] times.
pub fn watts_strogatz(n: usize, mean_degree: usize, beta: f64, seed: u64) -> Result<Graph> {
    if mean_degree < 2 || mean_degree % 2 != 0 {
        return Err(Error::spec(format!("WS mean_degree must be even and >= 2, got {mean_degree}")));
    }
    if n <= mean_degree {
        return Err(Error::spec(format!("WS needs n > mean_degree, got n={n}, mean_degree={mean_degree}")));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::spec(format!("WS beta must lie in [0,1], got {beta}")));
    }
    let mut components = 0;
    for attempt in 0..=WS_MAX_RETRIES {
        let g = ws_once(n, mean_degree, beta, seed.wrapping_add(attempt));
        components = g.component_count();
        if components == 1 {
            return Ok(g);
        }
    }
    Err(Error::Disconnected { components })
}

fn ws_once(n: usize, mean_degree: usize, beta: f64, seed: u64) -> Graph {
    let half = mean_degree / 2;
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(mean_degree + 2); n];
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            insert_sorted(&mut adj[u], v);
            insert_sorted(&mut adj[v], u);
        }
    }
    if beta > 0.0 {
        let mut rng = rng_from_seed(seed);
        for j in 1..=half {
            for u in 0..n {
                let v = (u + j) % n;
                if !rng.gen_bool(beta) {
                    continue;
                }
                // the edge may already have been rewired away
                if adj[u].binary_search(&v).is_err() || adj[u].len() >= n - 1 {
                    continue;
                }
                let w = loop {
                    let w = rng.gen_range(0..n);
                    if w != u && adj[u].binary_search(&w).is_err() {
                        break w;
                    }
                };
                remove_sorted(&mut adj[u], v);
                remove_sorted(&mut adj[v], u);
                insert_sorted(&mut adj[u], w);
                insert_sorted(&mut adj[w], u);
            }
        }
    }
    Graph::from_adjacency_unchecked(adj)
}

/// Barabasi-Albert preferential attachment seeded with an `(m + 1)`-clique.
/// Each arriving node draws `m` distinct targets with probability
/// proportional to degree, discarding repeated draws.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m < 1 {
        return Err(Error::spec("BA needs m >= 1"));
    }
    if m >= n {
        return Err(Error::spec(format!("BA needs m < n, got m={m}, n={n}")));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    // every edge contributes both endpoints, so a uniform pick is degree-proportional
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * (m * (m + 1) / 2 + m * (n - m - 1)));
    for u in 0..=m {
        for v in (u + 1)..=m {
            adj[u].push(v);
            adj[v].push(u);
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut rng = rng_from_seed(seed);
    let mut targets = Vec::with_capacity(m);
    for v in (m + 1)..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            adj[v].push(t);
            adj[t].push(v);
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

/// Complete graph K_n, the mean-field topology.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::spec(format!("complete graph needs n >= 2, got {n}")));
    }
    let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
    Ok(Graph::from_adjacency_unchecked(adj))
}

fn insert_sorted(list: &mut Vec<usize>, value: usize) {
    if let Err(pos) = list.binary_search(&value) {
        list.insert(pos, value);
    }
}

fn remove_sorted(list: &mut Vec<usize>, value: usize) {
    if let Ok(pos) = list.binary_search(&value) {
        list.remove(pos);
    }
}
