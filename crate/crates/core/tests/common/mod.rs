//! Brute-force reference implementations and random inputs shared by the
//! integration tests and the acceptance runner.
#![allow(dead_code)]

use domainscope::domain::{Category, Host};
use domainscope::mentions::{Collision, DomainGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random digraph on `n{i}.com` nodes; arcs appear with probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DomainGraph {
    let names: Vec<Host> = (0..n)
        .map(|i| Host::parse(&format!("n{i}.com")).unwrap())
        .collect();
    let cols = [
        Collision::None,
        Collision::SiblingPrefix,
        Collision::SelfPrefix,
    ];
    let mut arcs = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if s != t && rng.random_bool(p) {
                let col = cols[rng.random_range(0..3)];
                arcs.push((
                    names[s].clone(),
                    names[t].clone(),
                    rng.random_range(1..100_000u64),
                    rng.random_bool(0.8),
                    col,
                ));
            }
        }
    }
    let nodes = names.into_iter().map(|h| {
        let c = rng.random_range(0..=Category::ALL.len());
        (h, Category::ALL.get(c).copied())
    });
    let nodes: Vec<_> = nodes.collect();
    DomainGraph::new(nodes, arcs).unwrap()
}

pub fn adjacency_matrix(g: &DomainGraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for arc in g.arcs() {
        a[arc.source][arc.target] = true;
    }
    a
}

/// All-pairs hop distances by Floyd-Warshall.
pub fn all_pairs(a: &[Vec<bool>]) -> Vec<Vec<Option<usize>>> {
    let n = a.len();
    let mut d: Vec<Vec<Option<usize>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Some(0)
                    } else if a[i][j] {
                        Some(1)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| x + y < c) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Every shortest s-t path, enumerated by depth-first search.
fn shortest_paths(a: &[Vec<bool>], s: usize, t: usize, len: usize) -> Vec<Vec<usize>> {
    fn walk(
        a: &[Vec<bool>],
        path: &mut Vec<usize>,
        t: usize,
        left: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        if left == 0 {
            if v == t {
                out.push(path.clone());
            }
            return;
        }
        for w in 0..a.len() {
            if a[v][w] && !path.contains(&w) {
                path.push(w);
                walk(a, path, t, left - 1, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(a, &mut vec![s], t, len, &mut out);
    out
}

pub fn betweenness(a: &[Vec<bool>]) -> Vec<f64> {
    let n = a.len();
    let d = all_pairs(a);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            let Some(len) = d[s][t].filter(|_| s != t) else {
                continue;
            };
            let paths = shortest_paths(a, s, t, len);
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    bc[v] += 1.0 / paths.len() as f64;
                }
            }
        }
    }
    bc
}

pub fn closeness(a: &[Vec<bool>]) -> Vec<Option<f64>> {
    all_pairs(a)
        .iter()
        .enumerate()
        .map(|(v, row)| {
            let ds: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(u, _)| *u != v)
                .filter_map(|(_, d)| *d)
                .collect();
            (!ds.is_empty()).then(|| ds.iter().sum::<usize>() as f64 / ds.len() as f64)
        })
        .collect()
}

/// `x <- (I + A^T) x` on the dense matrix, normalized to max 1.
pub fn eigenvector(a: &[Vec<bool>]) -> Option<Vec<f64>> {
    let n = a.len();
    if !a.iter().flatten().any(|&x| x) {
        return None;
    }
    let m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| f64::from(u8::from(i == j || a[j][i])))
                .collect()
        })
        .collect();
    let mut x = vec![1.0; n];
    for _ in 0..100 {
        let y: Vec<f64> = m
            .iter()
            .map(|row| row.iter().zip(&x).map(|(p, q)| p * q).sum())
            .collect();
        let max = y.iter().cloned().fold(f64::MIN, f64::max);
        let y: Vec<f64> = y.iter().map(|v| v / max).collect();
        let delta = y
            .iter()
            .zip(&x)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max);
        x = y;
        if delta < 1e-9 {
            break;
        }
    }
    Some(x)
}

pub fn clustering(a: &[Vec<bool>]) -> Vec<Option<f64>> {
    let n = a.len();
    let und = |i: usize, j: usize| i != j && (a[i][j] || a[j][i]);
    (0..n)
        .map(|v| {
            let nb: Vec<usize> = (0..n).filter(|&u| und(v, u)).collect();
            let k = nb.len();
            if k < 2 {
                return None;
            }
            let mut links = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if und(nb[i], nb[j]) {
                        links += 1;
                    }
                }
            }
            Some(links as f64 / (k * (k - 1) / 2) as f64)
        })
        .collect()
}

/// Average ranks computed by counting, then Pearson on the ranks.
pub fn rank_pearson(x: &[f64], y: &[f64]) -> f64 {
    let rank = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .map(|a| {
                let less = v.iter().filter(|b| *b < a).count() as f64;
                let equal = v.iter().filter(|b| *b == a).count() as f64;
                less + (equal + 1.0) / 2.0
            })
            .collect()
    };
    let (rx, ry) = (rank(x), rank(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Varimax criterion maximized over a fine grid of rotation angles (two
/// components).
pub fn grid_varimax_2(loadings: &[Vec<f64>], criterion: impl Fn(&[Vec<f64>]) -> f64) -> f64 {
    let steps = 200_000;
    let mut best = f64::MIN;
    for s in 0..steps {
        let th = std::f64::consts::FRAC_PI_2 * s as f64 / steps as f64;
        let (c, sn) = (th.cos(), th.sin());
        let rot: Vec<Vec<f64>> = loadings
            .iter()
            .map(|r| vec![r[0] * c + r[1] * sn, -r[0] * sn + r[1] * c])
            .collect();
        best = best.max(criterion(&rot));
    }
    best
}
