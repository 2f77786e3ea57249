//! Proximity graphs: edge (x, y) iff the template region A(x, y) contains
//! no other city.
//!
//! For beta >= 1 the template contains the Gabriel disc, so the skeleton
//! is a subgraph of the Delaunay triangulation and only Delaunay edges
//! need testing. For beta < 1 every pair is a candidate; the scan exits
//! early because any city strictly inside the template's inscribed disc
//! blocks the pair, and for distant pairs such a blocker is found in the
//! first few cells around the midpoint.

use crate::geometry::{GridIndex, Point, PointConfig};
use crate::network::{FamilyTag, Network};
use crate::templates::Template;
use crate::Result;

pub fn build_proximity(config: &PointConfig, template: &Template) -> Result<Network> {
    let n = config.n();
    let tag = FamilyTag::with("beta-skeleton", &[("beta", template.beta())]);
    if n <= 2 {
        let mut b = Network::builder(config, tag);
        if n == 2 {
            b.add_edge(0, 1);
        }
        return Ok(b.finish());
    }

    let grid = GridIndex::build_unit(config);
    let pts = config.points();
    let pairs: Vec<(u32, u32)> = if template.beta() >= 1.0 {
        let dt = super::build_delaunay(config)?;
        dt.city_edge_set()
            .into_iter()
            .filter(|&(i, j)| {
                !blocked(template, &grid, pts, i, j)
            })
            .collect()
    } else {
        let mut out = Vec::new();
        for i in 0..n as u32 {
            for j in (i + 1)..n as u32 {
                if !blocked(template, &grid, pts, i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    };

    let mut b = Network::builder(config, tag);
    for (i, j) in pairs {
        b.add_edge(i, j);
    }
    Ok(b.finish())
}

/// True iff some city other than `i`, `j` lies in A(p_i, p_j).
fn blocked(template: &Template, grid: &GridIndex, pts: &[Point], i: u32, j: u32) -> bool {
    let a = pts[i as usize];
    let b = pts[j as usize];
    let mid = a.midpoint(b);
    let r = template.bounding_radius() * a.dist(b) + 1e-9;
    let mut hit = false;
    grid.scan_disc(mid, r, |id, p| {
        if id != i && id != j && template.contains(a, b, p) {
            hit = true;
            return false;
        }
        true
    });
    hit
}

/// Gabriel graph, the beta = 1 skeleton.
pub fn build_gabriel(config: &PointConfig) -> Result<Network> {
    build_proximity(config, &crate::templates::beta_template(1.0)?)
}

/// Relative neighborhood graph, the beta = 2 skeleton.
pub fn build_rng(config: &PointConfig) -> Result<Network> {
    build_proximity(config, &crate::templates::beta_template(2.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_delaunay, build_mst};
    use crate::geometry::sample_finite_model;
    use crate::templates::beta_template;

    #[test]
    fn nesting_chain_mst_rng_gabriel_delaunay() {
        for seed in 0..5 {
            let cfg = sample_finite_model(64, 100 + seed).unwrap();
            let mst = build_mst(&cfg).unwrap().city_edge_set();
            let rng = build_rng(&cfg).unwrap().city_edge_set();
            let gabriel = build_gabriel(&cfg).unwrap().city_edge_set();
            let dt = build_delaunay(&cfg).unwrap().city_edge_set();
            assert!(mst.is_subset(&rng), "seed {seed}: MST not within RNG");
            assert!(rng.is_subset(&gabriel), "seed {seed}: RNG not within Gabriel");
            assert!(gabriel.is_subset(&dt), "seed {seed}: Gabriel not within Delaunay");
        }
    }

    #[test]
    fn beta_monotone_edge_sets() {
        let cfg = sample_finite_model(80, 42).unwrap();
        let betas = [0.6, 0.8, 1.0, 1.4, 2.0];
        let nets: Vec<_> = betas
            .iter()
            .map(|b| build_proximity(&cfg, &beta_template(*b).unwrap()).unwrap().city_edge_set())
            .collect();
        for w in nets.windows(2) {
            assert!(w[1].is_subset(&w[0]), "edges must shrink as beta grows");
        }
    }

    #[test]
    fn proximity_graphs_are_connected() {
        for beta in [0.7, 1.0, 1.5, 2.0] {
            let cfg = sample_finite_model(120, 7).unwrap();
            let net = build_proximity(&cfg, &beta_template(beta).unwrap()).unwrap();
            assert!(net.is_connected_over_cities(), "beta {beta} disconnected");
        }
    }

    #[test]
    fn two_cities_always_edge() {
        let cfg = sample_finite_model(2, 5).unwrap();
        let net = build_gabriel(&cfg).unwrap();
        assert_eq!(net.edges().len(), 1);
    }

    #[test]
    fn square_corners_with_small_beta_keep_both_diagonals() {
        use crate::geometry::{Model, PointConfig, Window};
        let cfg = PointConfig::from_parts(
            Window::new(1.0).unwrap(),
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            0,
            Model::FiniteUniform,
        );
        let net = build_proximity(&cfg, &beta_template(0.5).unwrap()).unwrap();
        let edges = net.city_edge_set();
        assert!(edges.contains(&(0, 2)), "diagonal 0-2 missing");
        assert!(edges.contains(&(1, 3)), "diagonal 1-3 missing");
    }
}
