//! Dimension-0 persistence via a minimum spanning forest.
//!
//! This route never touches the boundary-matrix machinery in `rips`, so the
//! two can be checked against each other.

use std::collections::BTreeMap;

use super::{DiagramPoint, DistanceMatrix, PersistenceDiagram};

struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grandparent = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grandparent;
            x = grandparent;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra as usize].cmp(&self.rank[rb as usize]) {
            std::cmp::Ordering::Less => self.parent[ra as usize] = rb,
            std::cmp::Ordering::Greater => self.parent[rb as usize] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb as usize] = ra;
                self.rank[ra as usize] += 1;
            }
        }
        true
    }
}

/// All dimension-0 bars of the full Rips filtration: every vertex is born
/// at 0, each spanning-tree edge kills one class at its length, and each
/// final connected component leaves one essential class. Bars of zero
/// persistence (merges at distance 0) are omitted.
pub fn h0_persistence(dm: &DistanceMatrix) -> PersistenceDiagram {
    let n = dm.n();
    let mut edges: Vec<(f64, u32, u32)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((dm.get(i, j), i as u32, j as u32));
        }
    }
    edges.sort_unstable_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("distances are finite")
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });

    let mut uf = UnionFind::new(n);
    let mut points = Vec::new();
    let mut components = n;
    for (length, i, j) in edges {
        if uf.union(i, j) {
            components -= 1;
            if length > 0.0 {
                points.push(DiagramPoint {
                    dim: 0,
                    birth: 0.0,
                    death: length,
                });
            }
            if components == 1 {
                break;
            }
        }
    }
    for _ in 0..components {
        points.push(DiagramPoint {
            dim: 0,
            birth: 0.0,
            death: f64::INFINITY,
        });
    }

    let metadata = BTreeMap::from([("n_points".to_string(), n.to_string())]);
    PersistenceDiagram::new(0, points, metadata).expect("bars are valid by construction")
}
