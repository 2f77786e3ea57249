//! Network builders: geometric and K-neighbor graphs, the nested
//! MST/RNG/Gabriel/Delaunay chain via templates, power-weighted networks,
//! line-process overlays and planarization.

mod delaunay;
mod overlay;
mod proximity;

pub use delaunay::build_delaunay;
pub use overlay::{overlay_line_process, planarize};
pub use proximity::{build_gabriel, build_proximity, build_rng};

use crate::error::invalid;
use crate::geometry::{GridIndex, PointConfig};
use crate::network::{FamilyTag, Network};
use crate::templates::beta_template;
use crate::Result;

/// Geometric graph: edge iff the pair distance is at most `c`.
/// Connectivity is not guaranteed.
pub fn build_geometric(config: &PointConfig, c: f64) -> Result<Network> {
    if !(c > 0.0) {
        return Err(invalid(format!("geometric cutoff must be positive, got {c}")));
    }
    let grid = GridIndex::build_unit(config);
    let mut b = Network::builder(config, FamilyTag::with("geometric", &[("c", c)]));
    for i in 0..config.n() as u32 {
        for j in grid.query_disc(config.points()[i as usize], c) {
            if j > i {
                b.add_edge(i, j);
            }
        }
    }
    Ok(b.finish())
}

/// K-neighbor graph: edge iff either endpoint is among the other's K
/// nearest. Connectivity is not guaranteed.
pub fn build_k_neighbor(config: &PointConfig, k: usize) -> Result<Network> {
    let n = config.n();
    if k < 1 || k >= n {
        return Err(invalid(format!("k must satisfy 1 <= k < n, got k={k}, n={n}")));
    }
    let grid = GridIndex::build_unit(config);
    let mut pairs = std::collections::BTreeSet::new();
    for i in 0..n as u32 {
        for j in grid.k_nearest(i, k) {
            pairs.insert((i.min(j), i.max(j)));
        }
    }
    let mut b = Network::builder(config, FamilyTag::with("k-neighbor", &[("k", k as f64)]));
    for (i, j) in pairs {
        b.add_edge(i, j);
    }
    Ok(b.finish())
}

/// Euclidean minimum spanning tree by Prim's algorithm on the complete
/// distance graph. Unique under general position.
pub fn build_mst(config: &PointConfig) -> Result<Network> {
    let n = config.n();
    if n < 1 {
        return Err(invalid("mst needs at least one city"));
    }
    let pts = config.points();
    let mut in_tree = vec![false; n];
    let mut best_d2 = vec![f64::INFINITY; n];
    let mut best_from = vec![0u32; n];
    in_tree[0] = true;
    for j in 1..n {
        best_d2[j] = pts[0].dist2(pts[j]);
    }
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(n.saturating_sub(1));
    for _ in 1..n {
        let mut u = usize::MAX;
        let mut ud2 = f64::INFINITY;
        for j in 0..n {
            if !in_tree[j] && best_d2[j] < ud2 {
                ud2 = best_d2[j];
                u = j;
            }
        }
        debug_assert!(u != usize::MAX);
        in_tree[u] = true;
        edges.push((best_from[u], u as u32));
        for j in 0..n {
            if !in_tree[j] {
                let d2 = pts[u].dist2(pts[j]);
                if d2 < best_d2[j] {
                    best_d2[j] = d2;
                    best_from[j] = u as u32;
                }
            }
        }
    }
    let mut b = Network::builder(config, FamilyTag::new("mst"));
    for (u, v) in edges {
        b.add_edge(u.min(v), u.max(v));
    }
    Ok(b.finish())
}

/// Power-weighted network: edge iff the one-step route is the cheapest
/// route under step costs `d^p`.
///
/// For `p >= 2` every step of a cheapest route is a Gabriel edge (a city
/// inside the diameter disc gives a strictly cheaper two-step detour by
/// the power-mean inequality), so shortest paths are computed on the
/// Gabriel graph; for `p < 2` they run on the complete graph.
pub fn build_gp(config: &PointConfig, p: f64) -> Result<Network> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(invalid(format!("exponent must satisfy p >= 1, got {p}")));
    }
    let n = config.n();
    let tag = FamilyTag::with("power-weighted", &[("p", p)]);
    if n < 2 {
        return Ok(Network::builder(config, tag).finish());
    }
    let pts = config.points();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    if p >= 2.0 {
        let gabriel = build_proximity(config, &beta_template(1.0)?)?;
        let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
        for e in gabriel.edges() {
            let w = e.length.powf(p);
            adj[e.u as usize].push((e.v, w));
            adj[e.v as usize].push((e.u, w));
        }
        let mut dist = vec![f64::INFINITY; n];
        let mut heap = std::collections::BinaryHeap::new();
        for src in 0..n {
            dist.iter_mut().for_each(|d| *d = f64::INFINITY);
            dist[src] = 0.0;
            heap.clear();
            heap.push(std::cmp::Reverse((0u64, src as u32)));
            while let Some(std::cmp::Reverse((db, u))) = heap.pop() {
                let du = f64::from_bits(db);
                if du > dist[u as usize] {
                    continue;
                }
                for &(v, w) in &adj[u as usize] {
                    let nd = du + w;
                    if nd < dist[v as usize] {
                        dist[v as usize] = nd;
                        heap.push(std::cmp::Reverse((nd.to_bits(), v)));
                    }
                }
            }
            for j in (src + 1)..n {
                let direct = pts[src].dist(pts[j]).powf(p);
                if dist[j] >= direct * (1.0 - 1e-12) {
                    pairs.push((src as u32, j as u32));
                }
            }
        }
    } else {
        // Dense Dijkstra per source on the complete graph.
        let mut cost = vec![0.0f64; n];
        let mut dist = vec![f64::INFINITY; n];
        let mut settled = vec![false; n];
        for src in 0..n {
            for j in 0..n {
                dist[j] = f64::INFINITY;
                settled[j] = false;
            }
            dist[src] = 0.0;
            for _ in 0..n {
                let mut u = usize::MAX;
                let mut du = f64::INFINITY;
                for j in 0..n {
                    if !settled[j] && dist[j] < du {
                        du = dist[j];
                        u = j;
                    }
                }
                if u == usize::MAX {
                    break;
                }
                settled[u] = true;
                for j in 0..n {
                    if !settled[j] {
                        cost[j] = pts[u].dist(pts[j]).powf(p);
                        let nd = du + cost[j];
                        if nd < dist[j] {
                            dist[j] = nd;
                        }
                    }
                }
            }
            for j in (src + 1)..n {
                let direct = pts[src].dist(pts[j]).powf(p);
                if dist[j] >= direct * (1.0 - 1e-12) {
                    pairs.push((src as u32, j as u32));
                }
            }
        }
    }
    let mut b = Network::builder(config, tag);
    for (u, v) in pairs {
        b.add_edge(u, v);
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample_finite_model;

    #[test]
    fn geometric_extremes() {
        let cfg = sample_finite_model(40, 8).unwrap();
        let tiny = build_geometric(&cfg, 1e-9).unwrap();
        assert_eq!(tiny.edges().len(), 0);
        let diam = cfg.window().side() * 2.0;
        let full = build_geometric(&cfg, diam).unwrap();
        assert_eq!(full.edges().len(), 40 * 39 / 2);
    }

    #[test]
    fn k_neighbor_extremes() {
        let cfg = sample_finite_model(2, 9).unwrap();
        let net = build_k_neighbor(&cfg, 1).unwrap();
        assert_eq!(net.edges().len(), 1);

        let cfg = sample_finite_model(30, 10).unwrap();
        let net = build_k_neighbor(&cfg, 29).unwrap();
        assert_eq!(net.edges().len(), 30 * 29 / 2);
        assert!(build_k_neighbor(&cfg, 30).is_err());
    }

    #[test]
    fn mst_has_n_minus_one_edges_and_is_connected() {
        for seed in 0..5 {
            let cfg = sample_finite_model(64, seed).unwrap();
            let mst = build_mst(&cfg).unwrap();
            assert_eq!(mst.edges().len(), 63);
            assert!(mst.is_connected_over_cities());
        }
    }

    #[test]
    fn mst_on_two_and_three_cities() {
        let cfg = sample_finite_model(2, 11).unwrap();
        assert_eq!(build_mst(&cfg).unwrap().edges().len(), 1);

        // Triangle: the two shortest sides, never the longest.
        let cfg = sample_finite_model(3, 12).unwrap();
        let pts = cfg.points();
        let mut sides = vec![
            (pts[0].dist(pts[1]), (0u32, 1u32)),
            (pts[1].dist(pts[2]), (1, 2)),
            (pts[0].dist(pts[2]), (0, 2)),
        ];
        sides.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mst = build_mst(&cfg).unwrap();
        let got = mst.city_edge_set();
        assert!(got.contains(&sides[0].1));
        assert!(got.contains(&sides[1].1));
        assert!(!got.contains(&sides[2].1));
    }

    #[test]
    fn gp_at_one_is_complete() {
        let cfg = sample_finite_model(24, 13).unwrap();
        let net = build_gp(&cfg, 1.0).unwrap();
        assert_eq!(net.edges().len(), 24 * 23 / 2);
    }

    #[test]
    fn gp_large_p_approaches_mst() {
        let cfg = sample_finite_model(64, 14).unwrap();
        let mst = build_mst(&cfg).unwrap().city_edge_set();
        let g32 = build_gp(&cfg, 32.0).unwrap().city_edge_set();
        for e in &mst {
            assert!(g32.contains(e), "mst edge {e:?} missing from G_32");
        }
        assert!(g32.len() <= mst.len() + 6, "G_32 has {} edges", g32.len());
    }

    #[test]
    fn gp_two_is_within_gabriel() {
        let cfg = sample_finite_model(64, 15).unwrap();
        let g2 = build_gp(&cfg, 2.0).unwrap().city_edge_set();
        let gabriel =
            build_proximity(&cfg, &crate::templates::beta_template(1.0).unwrap()).unwrap();
        let gset = gabriel.city_edge_set();
        for e in &g2 {
            assert!(gset.contains(e));
        }
    }

    #[test]
    fn gp_edge_sets_shrink_with_p() {
        let cfg = sample_finite_model(48, 16).unwrap();
        let mut prev = build_gp(&cfg, 1.0).unwrap().city_edge_set();
        for p in [1.5, 2.0, 3.0, 8.0] {
            let cur = build_gp(&cfg, p).unwrap().city_edge_set();
            for e in &cur {
                assert!(prev.contains(e), "edge {e:?} appeared at p={p}");
            }
            prev = cur;
        }
    }
}
