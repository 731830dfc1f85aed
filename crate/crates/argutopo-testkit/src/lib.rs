//! Brute-force persistence oracle used to validate the optimized Rips
//! reduction in `argutopo`, plus deterministic point-cloud generators for
//! randomized suites.
//!
//! The oracle enumerates every simplex up to dimension `max_dim + 1`,
//! builds the full boundary matrix in one global filtration order, and
//! runs the textbook left-to-right column reduction. It shares no code
//! with the crate under test.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One diagram point: (homology dimension, birth, death), `None` = never dies.
pub type Bar = (usize, f64, Option<f64>);

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        let d = x - y;
        acc += d * d;
    }
    acc.sqrt()
}

fn subsets_of_size(n: usize, k: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), out);
}

/// Full-matrix Rips persistence of a point cloud, homology dimensions
/// `0..=max_dim`, unbounded filtration radius.
///
/// Simplices are ordered by (diameter, dimension, lexicographic vertex
/// order); zero-persistence pairs are dropped.
pub fn naive_rips_diagram(points: &[Vec<f64>], max_dim: usize) -> Vec<Bar> {
    assert!(!points.is_empty(), "oracle needs at least one point");
    let n = points.len();

    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = euclidean(&points[i], &points[j]);
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }

    // All simplices with 1..=max_dim+2 vertices, i.e. up to dimension
    // max_dim+1 so that classes of dimension max_dim can die.
    let mut simplices: Vec<(f64, Vec<usize>)> = Vec::new();
    for size in 1..=(max_dim + 2).min(n) {
        let mut subs = Vec::new();
        subsets_of_size(n, size, &mut subs);
        for verts in subs {
            let mut diam = 0.0f64;
            for a in 0..verts.len() {
                for b in (a + 1)..verts.len() {
                    diam = diam.max(dist[verts[a] * n + verts[b]]);
                }
            }
            simplices.push((diam, verts));
        }
    }
    simplices.sort_by(|(da, va), (db, vb)| {
        da.total_cmp(db)
            .then(va.len().cmp(&vb.len()))
            .then(va.cmp(vb))
    });

    let mut index_of: HashMap<Vec<usize>, usize> = HashMap::new();
    for (idx, (_, verts)) in simplices.iter().enumerate() {
        index_of.insert(verts.clone(), idx);
    }

    // Left-to-right reduction of the full boundary matrix over Z/2.
    let mut reduced: Vec<Option<Vec<usize>>> = vec![None; simplices.len()];
    let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
    let mut bars: Vec<Bar> = Vec::new();

    for j in 0..simplices.len() {
        let verts = &simplices[j].1;
        let mut col: Vec<usize> = Vec::new();
        if verts.len() > 1 {
            for drop in 0..verts.len() {
                let mut face = verts.clone();
                face.remove(drop);
                col.push(index_of[&face]);
            }
            col.sort_unstable();
        }
        loop {
            let Some(&low) = col.last() else { break };
            let Some(&owner) = pivot_owner.get(&low) else {
                break;
            };
            col = xor_sorted(&col, reduced[owner].as_ref().unwrap());
        }
        if let Some(&low) = col.last() {
            let birth = simplices[low].0;
            let death = simplices[j].0;
            if birth < death {
                bars.push((simplices[low].1.len() - 1, birth, Some(death)));
            }
            pivot_owner.insert(low, j);
            reduced[j] = Some(col);
        }
    }

    // Unpaired cycle columns of reportable dimension are essential classes.
    for j in 0..simplices.len() {
        let dim = simplices[j].1.len() - 1;
        if reduced[j].is_none() && dim <= max_dim && !pivot_owner.contains_key(&j) {
            bars.push((dim, simplices[j].0, None));
        }
    }

    sort_bars(&mut bars);
    bars
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Canonical order for diagram comparison: by dimension, then birth, then
/// death with essential classes last.
pub fn sort_bars(bars: &mut [Bar]) {
    bars.sort_by(|(da, ba, xa), (db, bb, xb)| {
        da.cmp(db).then(ba.total_cmp(bb)).then_with(|| match (xa, xb) {
            (Some(a), Some(b)) => a.total_cmp(b),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        })
    });
}

/// Uniform points in the unit cube, reproducible from the seed.
pub fn random_cloud(n: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
        .collect()
}

/// `n` points equally spaced on the unit circle.
pub fn circle_cloud(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            vec![theta.cos(), theta.sin()]
        })
        .collect()
}
