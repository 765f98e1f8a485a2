//! Centrality routines over adjacency lists (node indices `0..n`).

use std::collections::VecDeque;

use rayon::prelude::*;

const EIGEN_MAX_ITER: usize = 100;
const EIGEN_TOL: f64 = 1e-9;

/// BFS hop counts from `v`; `None` for unreachable nodes.
pub fn distances_from(out: &[Vec<usize>], v: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; out.len()];
    dist[v] = Some(0);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap() + 1;
        for &w in &out[u] {
            if dist[w].is_none() {
                dist[w] = Some(d);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Mean distance from `v` to the nodes it reaches.
pub fn closeness(out: &[Vec<usize>], v: usize) -> Option<f64> {
    let (sum, count) = distances_from(out, v)
        .into_iter()
        .enumerate()
        .filter_map(|(u, d)| d.filter(|_| u != v))
        .fold((0usize, 0usize), |(s, c), d| (s + d, c + 1));
    (count > 0).then(|| sum as f64 / count as f64)
}

/// Dependencies of every node on shortest paths starting at `s` (one
/// Brandes accumulation).
fn dependencies(out: &[Vec<usize>], s: usize) -> Vec<f64> {
    let n = out.len();
    let mut sigma = vec![0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    sigma[s] = 1.0;
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &out[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    let mut delta = vec![0f64; n];
    for &w in order.iter().rev() {
        for &v in &preds[w] {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
    }
    delta[s] = 0.0;
    delta
}

/// Unnormalized directed betweenness: for every ordered pair (s, t), the
/// share of shortest s-t paths through each intermediate node.
pub fn betweenness(out: &[Vec<usize>]) -> Vec<f64> {
    let n = out.len();
    let per_source: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| dependencies(out, s))
        .collect();
    // Summed in source order so the result does not depend on scheduling.
    let mut bc = vec![0f64; n];
    for d in &per_source {
        for (b, x) in bc.iter_mut().zip(d) {
            *b += x;
        }
    }
    bc
}

/// Power iteration on incoming arcs, `x <- x + A^T x`, rescaled to max 1
/// each step. The identity shift keeps periodic graphs from oscillating.
/// `None` when there are no arcs.
pub fn eigenvector(inn: &[Vec<usize>]) -> Option<Vec<f64>> {
    let n = inn.len();
    if inn.iter().all(Vec::is_empty) {
        return None;
    }
    let mut x = vec![1.0; n];
    for _ in 0..EIGEN_MAX_ITER {
        let mut next: Vec<f64> = (0..n)
            .map(|v| x[v] + inn[v].iter().map(|&u| x[u]).sum::<f64>())
            .collect();
        let max = next.iter().cloned().fold(0.0, f64::max);
        for y in &mut next {
            *y /= max;
        }
        let delta = next
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = next;
        if delta < EIGEN_TOL {
            break;
        }
    }
    Some(x)
}

/// Local clustering on the undirected projection. `None` for nodes with
/// fewer than two neighbours.
pub fn clustering(out: &[Vec<usize>], inn: &[Vec<usize>]) -> Vec<Option<f64>> {
    let n = out.len();
    let mut adj = vec![vec![false; n]; n];
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for &w in out[v].iter().chain(&inn[v]) {
            if w != v && !adj[v][w] {
                adj[v][w] = true;
                nbrs[v].push(w);
            }
        }
    }
    (0..n)
        .map(|v| {
            let k = nbrs[v].len();
            if k < 2 {
                return None;
            }
            let mut links = 0usize;
            for (i, &a) in nbrs[v].iter().enumerate() {
                for &b in &nbrs[v][i + 1..] {
                    if adj[a][b] {
                        links += 1;
                    }
                }
            }
            Some(2.0 * links as f64 / (k * (k - 1)) as f64)
        })
        .collect()
}
