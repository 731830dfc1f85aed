//! Vietoris-Rips persistence by boundary-matrix reduction over Z/2.
//!
//! Simplices enter the filtration ordered by diameter, then dimension, then
//! vertex order. The reduction runs one dimension at a time from the top
//! down, so pivots found at dimension d+1 let the matching columns at
//! dimension d be skipped outright (their pairs are already known). The
//! filtration is truncated at the enclosing radius, past which the complex
//! is a cone and nothing is born or dies.

use std::collections::BTreeMap;
use std::collections::HashMap;

use super::{enclosing_radius, DiagramPoint, DistanceMatrix, PersistenceDiagram};
use crate::error::{Error, Result};

pub fn rips_persistence(
    dm: &DistanceMatrix,
    max_dim: usize,
    max_radius: f64,
) -> Result<PersistenceDiagram> {
    if !(1..=2).contains(&max_dim) {
        return Err(Error::InvalidParameter(format!(
            "max homology dimension must be 1 or 2, got {max_dim}"
        )));
    }
    if max_radius.is_nan() || max_radius < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "max_radius must be non-negative, got {max_radius}"
        )));
    }

    let n = dm.n();
    let t = max_radius.min(enclosing_radius(dm));
    let mut points: Vec<DiagramPoint> = Vec::new();

    let edges = build_edges(dm, t);
    let tri_pivot_rows = if max_dim == 2 {
        let (tris, tri_rank) = build_triangles(dm, t, &edges, true);
        let tets = build_tetrahedra(dm, t, &tri_rank.expect("rank table requested"));
        let tet_pivot_rows = reduce(&tets, tris.len(), &tris.diam, None, 2, max_dim, &mut points);
        reduce(
            &tris,
            edges.len(),
            &edges.diam,
            Some(&tet_pivot_rows),
            1,
            max_dim,
            &mut points,
        )
    } else {
        let (tris, _) = build_triangles(dm, t, &edges, false);
        reduce(&tris, edges.len(), &edges.diam, None, 1, max_dim, &mut points)
    };

    let edge_cols = edge_columns(&edges);
    let edge_pivot_rows = reduce(
        &edge_cols,
        n,
        &vec![0.0; n],
        Some(&tri_pivot_rows),
        0,
        max_dim,
        &mut points,
    );
    for v in 0..n {
        if !edge_pivot_rows[v] {
            points.push(DiagramPoint {
                dim: 0,
                birth: 0.0,
                death: f64::INFINITY,
            });
        }
    }

    let metadata = BTreeMap::from([
        ("n_points".to_string(), n.to_string()),
        ("max_dim".to_string(), max_dim.to_string()),
        (
            "max_radius".to_string(),
            if max_radius.is_finite() {
                max_radius.to_string()
            } else {
                "inf".to_string()
            },
        ),
    ]);
    PersistenceDiagram::new(max_dim, points, metadata)
}

/// Columns of one dimension: diameters in filtration order and a flat
/// boundary table with `arity` ascending row indices per column.
struct Columns {
    arity: usize,
    diam: Vec<f64>,
    bnd: Vec<u32>,
}

impl Columns {
    fn len(&self) -> usize {
        self.diam.len()
    }

    fn boundary(&self, c: usize) -> &[u32] {
        &self.bnd[c * self.arity..(c + 1) * self.arity]
    }
}

struct Edges {
    diam: Vec<f64>,
    verts: Vec<(u32, u32)>,
    /// Dense `(i, j) -> filtration rank` lookup at `i*n + j` for `i < j`.
    rank: Vec<u32>,
    n: usize,
}

impl Edges {
    fn len(&self) -> usize {
        self.diam.len()
    }

    fn rank_of(&self, i: u32, j: u32) -> u32 {
        self.rank[i as usize * self.n + j as usize]
    }
}

fn build_edges(dm: &DistanceMatrix, t: f64) -> Edges {
    let n = dm.n();
    let mut list: Vec<(f64, u32, u32)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dm.get(i, j);
            if d <= t {
                list.push((d, i as u32, j as u32));
            }
        }
    }
    list.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut rank = vec![u32::MAX; n * n];
    let mut diam = Vec::with_capacity(list.len());
    let mut verts = Vec::with_capacity(list.len());
    for (r, &(d, i, j)) in list.iter().enumerate() {
        rank[i as usize * n + j as usize] = r as u32;
        diam.push(d);
        verts.push((i, j));
    }
    Edges { diam, verts, rank, n }
}

fn edge_columns(edges: &Edges) -> Columns {
    let mut bnd = Vec::with_capacity(edges.len() * 2);
    for &(i, j) in &edges.verts {
        bnd.push(i);
        bnd.push(j);
    }
    Columns {
        arity: 2,
        diam: edges.diam.clone(),
        bnd,
    }
}

type TriRank = HashMap<[u32; 3], u32>;

fn build_triangles(
    dm: &DistanceMatrix,
    t: f64,
    edges: &Edges,
    want_rank: bool,
) -> (Columns, Option<TriRank>) {
    let n = dm.n();
    let mut list: Vec<(f64, u32, u32, u32)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let dij = dm.get(i, j);
            if dij > t {
                continue;
            }
            for k in (j + 1)..n {
                let dik = dm.get(i, k);
                if dik > t {
                    continue;
                }
                let djk = dm.get(j, k);
                if djk > t {
                    continue;
                }
                list.push((dij.max(dik).max(djk), i as u32, j as u32, k as u32));
            }
        }
    }
    list.sort_unstable_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
            .then(a.3.cmp(&b.3))
    });

    let mut diam = Vec::with_capacity(list.len());
    let mut bnd = Vec::with_capacity(list.len() * 3);
    let mut rank_map = want_rank.then(|| TriRank::with_capacity(list.len()));
    for (r, &(d, i, j, k)) in list.iter().enumerate() {
        diam.push(d);
        let mut rows = [
            edges.rank_of(i, j),
            edges.rank_of(i, k),
            edges.rank_of(j, k),
        ];
        rows.sort_unstable();
        bnd.extend_from_slice(&rows);
        if let Some(map) = rank_map.as_mut() {
            map.insert([i, j, k], r as u32);
        }
    }
    (
        Columns {
            arity: 3,
            diam,
            bnd,
        },
        rank_map,
    )
}

fn build_tetrahedra(dm: &DistanceMatrix, t: f64, tri_rank: &TriRank) -> Columns {
    let n = dm.n();
    let mut list: Vec<(f64, [u32; 4])> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let dij = dm.get(i, j);
            if dij > t {
                continue;
            }
            for k in (j + 1)..n {
                let dik = dm.get(i, k);
                let djk = dm.get(j, k);
                let d3 = dij.max(dik).max(djk);
                if d3 > t {
                    continue;
                }
                for l in (k + 1)..n {
                    let dil = dm.get(i, l);
                    let djl = dm.get(j, l);
                    let dkl = dm.get(k, l);
                    let diameter = d3.max(dil).max(djl).max(dkl);
                    if diameter <= t {
                        list.push((diameter, [i as u32, j as u32, k as u32, l as u32]));
                    }
                }
            }
        }
    }
    list.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut diam = Vec::with_capacity(list.len());
    let mut bnd = Vec::with_capacity(list.len() * 4);
    for &(d, [i, j, k, l]) in &list {
        diam.push(d);
        let mut rows = [
            tri_rank[&[i, j, k]],
            tri_rank[&[i, j, l]],
            tri_rank[&[i, k, l]],
            tri_rank[&[j, k, l]],
        ];
        rows.sort_unstable();
        bnd.extend_from_slice(&rows);
    }
    Columns {
        arity: 4,
        diam,
        bnd,
    }
}

/// Standard left-to-right column reduction of one boundary dimension.
///
/// Columns are d-simplices, rows are (d-1)-simplices; `row_dim = d - 1` is
/// the homology dimension of emitted pairs. Columns flagged in `cleared`
/// are pivots of the (d+1)-pass and are skipped. Zero columns create a
/// d-cycle: essential classes when `d <= max_dim`. Returns which rows
/// became pivots, for clearing the next pass down.
fn reduce(
    cols: &Columns,
    n_rows: usize,
    row_diam: &[f64],
    cleared: Option<&[bool]>,
    row_dim: usize,
    max_dim: usize,
    points: &mut Vec<DiagramPoint>,
) -> Vec<bool> {
    let n_cols = cols.len();
    let mut pivot_owner: Vec<u32> = vec![u32::MAX; n_rows];
    let mut stored: Vec<Vec<u32>> = Vec::new();
    let mut stored_idx: Vec<u32> = vec![u32::MAX; n_cols];
    let mut work: Vec<u32> = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();

    for c in 0..n_cols {
        if cleared.is_some_and(|cl| cl[c]) {
            continue;
        }
        work.clear();
        work.extend_from_slice(cols.boundary(c));
        let paired = loop {
            let Some(&r) = work.last() else { break false };
            let owner = pivot_owner[r as usize];
            if owner == u32::MAX {
                pivot_owner[r as usize] = c as u32;
                if cols.diam[c] > row_diam[r as usize] {
                    points.push(DiagramPoint {
                        dim: row_dim,
                        birth: row_diam[r as usize],
                        death: cols.diam[c],
                    });
                }
                stored_idx[c] = stored.len() as u32;
                stored.push(work.clone());
                break true;
            }
            let other = &stored[stored_idx[owner as usize] as usize];
            xor_sorted(&work, other, &mut scratch);
            std::mem::swap(&mut work, &mut scratch);
        };
        if !paired && row_dim + 1 <= max_dim {
            points.push(DiagramPoint {
                dim: row_dim + 1,
                birth: cols.diam[c],
                death: f64::INFINITY,
            });
        }
    }
    pivot_owner.iter().map(|&o| o != u32::MAX).collect()
}

/// Symmetric difference of two ascending index lists.
fn xor_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => {
                out.push(a[x]);
                x += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[y]);
                y += 1;
            }
            std::cmp::Ordering::Equal => {
                x += 1;
                y += 1;
            }
        }
    }
    out.extend_from_slice(&a[x..]);
    out.extend_from_slice(&b[y..]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::PointCloud;
    use crate::tda::pairwise_distances;

    fn unit_square() -> DistanceMatrix {
        pairwise_distances(
            &PointCloud::from_rows(&[
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 1.0],
            ])
            .unwrap(),
        )
    }

    fn bars(d: &PersistenceDiagram, dim: usize) -> Vec<(f64, f64)> {
        d.points_in_dim(dim).map(|p| (p.birth, p.death)).collect()
    }

    #[test]
    fn unit_square_full_filtration() {
        let d = rips_persistence(&unit_square(), 1, f64::INFINITY).unwrap();
        assert_eq!(
            bars(&d, 0),
            vec![
                (0.0, 1.0),
                (0.0, 1.0),
                (0.0, 1.0),
                (0.0, f64::INFINITY)
            ]
        );
        assert_eq!(bars(&d, 1), vec![(1.0, 2.0f64.sqrt())]);
    }

    #[test]
    fn unit_square_truncated_keeps_the_loop_open() {
        let d = rips_persistence(&unit_square(), 1, 1.0).unwrap();
        assert_eq!(bars(&d, 1), vec![(1.0, f64::INFINITY)]);
        assert_eq!(d.n_finite(0), 3);
        assert_eq!(d.n_essential(0), 1);
    }

    #[test]
    fn unit_square_below_every_edge_is_discrete() {
        let d = rips_persistence(&unit_square(), 1, 0.5).unwrap();
        assert_eq!(d.n_essential(0), 4);
        assert_eq!(d.n_finite(0), 0);
        assert!(bars(&d, 1).is_empty());
    }

    #[test]
    fn single_point_and_pair() {
        let one = DistanceMatrix::from_condensed(1, vec![]).unwrap();
        let d = rips_persistence(&one, 1, f64::INFINITY).unwrap();
        assert_eq!(bars(&d, 0), vec![(0.0, f64::INFINITY)]);
        assert!(bars(&d, 1).is_empty());

        let two = DistanceMatrix::from_condensed(2, vec![3.0]).unwrap();
        let d = rips_persistence(&two, 1, f64::INFINITY).unwrap();
        assert_eq!(bars(&d, 0), vec![(0.0, 3.0), (0.0, f64::INFINITY)]);
    }

    #[test]
    fn duplicate_points_add_no_bars() {
        let cloud = PointCloud::from_rows(&[
            vec![1.0, 2.0],
            vec![1.0, 2.0],
            vec![4.0, 6.0],
        ])
        .unwrap();
        let d = rips_persistence(&pairwise_distances(&cloud), 1, f64::INFINITY).unwrap();
        assert_eq!(bars(&d, 0), vec![(0.0, 5.0), (0.0, f64::INFINITY)]);
        assert!(bars(&d, 1).is_empty());
    }

    #[test]
    fn twenty_point_circle_has_one_loop() {
        let rows: Vec<Vec<f64>> = (0..20)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / 20.0;
                vec![a.cos(), a.sin()]
            })
            .collect();
        let d = rips_persistence(
            &pairwise_distances(&PointCloud::from_rows(&rows).unwrap()),
            1,
            f64::INFINITY,
        )
        .unwrap();

        let h1 = bars(&d, 1);
        assert_eq!(h1.len(), 1);
        let side = 2.0 * (std::f64::consts::PI / 20.0).sin();
        let death = 2.0 * (7.0 * std::f64::consts::PI / 20.0).sin();
        assert!((h1[0].0 - side).abs() <= 1e-12, "birth = {}", h1[0].0);
        assert!((h1[0].1 - death).abs() <= 1e-12, "death = {}", h1[0].1);

        assert_eq!(d.n_finite(0), 19);
        assert_eq!(d.n_essential(0), 1);
        for p in d.points_in_dim(0).filter(|p| !p.is_essential()) {
            assert!((p.death - side).abs() <= 1e-12);
        }
    }

    #[test]
    fn octahedron_sphere_in_dimension_two() {
        let rows = vec![
            vec![1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, -1.0],
        ];
        let d = rips_persistence(
            &pairwise_distances(&PointCloud::from_rows(&rows).unwrap()),
            2,
            f64::INFINITY,
        )
        .unwrap();
        assert_eq!(bars(&d, 2), vec![(2.0f64.sqrt(), 2.0)]);
        assert!(bars(&d, 1).is_empty());
        assert_eq!(d.n_finite(0), 5);
        assert_eq!(d.n_essential(0), 1);
    }

    #[test]
    fn parameters_are_validated() {
        let dm = unit_square();
        assert!(rips_persistence(&dm, 0, f64::INFINITY).is_err());
        assert!(rips_persistence(&dm, 3, f64::INFINITY).is_err());
        assert!(rips_persistence(&dm, 1, f64::NAN).is_err());
        assert!(rips_persistence(&dm, 1, -1.0).is_err());
        assert!(rips_persistence(&dm, 1, 0.0).is_ok());
    }

    #[test]
    fn metadata_records_parameters() {
        let d = rips_persistence(&unit_square(), 1, f64::INFINITY).unwrap();
        assert_eq!(d.metadata["n_points"], "4");
        assert_eq!(d.metadata["max_dim"], "1");
        assert_eq!(d.metadata["max_radius"], "inf");

        let d = rips_persistence(&unit_square(), 1, 2.5).unwrap();
        assert_eq!(d.metadata["max_radius"], "2.5");
    }
}
