//! The β-skeleton template family.
//!
//! A template is an open region defined relative to the canonical frame
//! with anchor points v- = (-1/2, 0) and v+ = (1/2, 0). For an ordered
//! city pair (x, y) the region A(x, y) is the image of the template under
//! the similarity taking (v-, v+) to (x, y); the pair is an edge of the
//! proximity graph iff A(x, y) contains no other city.
//!
//! For beta in [1, 2] the template is the intersection of the two open
//! discs of radius beta/2 centered at (+-(beta-1)/2, 0); for beta in
//! (0, 1) it is the intersection of the two open discs of radius
//! 1/(2 beta) passing through v- and v+. beta = 1 is the Gabriel disc,
//! beta = 2 the lune of the relative neighborhood graph.

use crate::error::invalid;
use crate::geometry::{lens_area, Point, GEOM_TOL};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Template {
    beta: f64,
    area: f64,
}

/// Construct the β-skeleton template for `beta` in (0, 2].
pub fn beta_template(beta: f64) -> Result<Template> {
    if !(beta > 0.0 && beta <= 2.0) {
        return Err(invalid(format!("beta must lie in (0, 2], got {beta}")));
    }
    Ok(Template { beta, area: template_area(beta)? })
}

/// Area of the β-skeleton template (the constant `c` of the degree and
/// length formulas).
pub fn template_area(beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta <= 2.0) {
        return Err(invalid(format!("beta must lie in (0, 2], got {beta}")));
    }
    if beta >= 1.0 {
        Ok(lens_area(beta / 2.0, beta / 2.0, beta - 1.0))
    } else {
        let r = 1.0 / (2.0 * beta);
        let half = (r * r - 0.25).sqrt();
        Ok(lens_area(r, r, 2.0 * half))
    }
}

/// True iff `z` lies in the open region A(x, y).
pub fn template_contains(t: &Template, x: Point, y: Point, z: Point) -> bool {
    t.contains(x, y, z)
}

impl Template {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Membership in the canonical frame. Strict inequalities at tolerance
    /// [`GEOM_TOL`]: the region is open, so boundary points (in particular
    /// v- and v+ themselves) are outside.
    pub fn contains_canonical(&self, cx: f64, cy: f64) -> bool {
        if self.beta >= 1.0 {
            contains_large_beta(self.beta, cx, cy)
        } else {
            contains_small_beta(self.beta, cx, cy)
        }
    }

    /// True iff `z` lies in A(x, y); `x != y` required.
    pub fn contains(&self, x: Point, y: Point, z: Point) -> bool {
        let d = x.dist(y);
        debug_assert!(d > 0.0, "template frame needs distinct endpoints");
        let ux = (y.x - x.x) / d;
        let uy = (y.y - x.y) / d;
        let mx = (x.x + y.x) / 2.0;
        let my = (x.y + y.y) / 2.0;
        let rx = z.x - mx;
        let ry = z.y - my;
        let cx = (rx * ux + ry * uy) / d;
        let cy = (ux * ry - uy * rx) / d;
        self.contains_canonical(cx, cy)
    }

    /// Radius (canonical units) of the disc about the frame midpoint that
    /// contains the whole template. Scale by the pair distance to bound
    /// blocker searches.
    pub fn bounding_radius(&self) -> f64 {
        if self.beta >= 1.0 {
            (2.0 * self.beta - 1.0).sqrt() / 2.0
        } else {
            0.5
        }
    }

    /// Radius (canonical units) of the disc about the frame midpoint that
    /// the template contains: any city strictly inside it blocks the edge.
    pub fn inscribed_radius(&self) -> f64 {
        if self.beta >= 1.0 {
            0.5
        } else {
            let r = 1.0 / (2.0 * self.beta);
            r - (r * r - 0.25).sqrt()
        }
    }
}

fn contains_large_beta(beta: f64, x: f64, y: f64) -> bool {
    let c = (beta - 1.0) / 2.0;
    let r2 = beta * beta / 4.0 - GEOM_TOL;
    let dx1 = x - c;
    let dx2 = x + c;
    dx1 * dx1 + y * y < r2 && dx2 * dx2 + y * y < r2
}

fn contains_small_beta(beta: f64, x: f64, y: f64) -> bool {
    let r = 1.0 / (2.0 * beta);
    let c = (r * r - 0.25).sqrt();
    let r2 = r * r - GEOM_TOL;
    let dy1 = y - c;
    let dy2 = y + c;
    x * x + dy1 * dy1 < r2 && x * x + dy2 * dy2 < r2
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use std::f64::consts::PI;

    #[test]
    fn rejects_beta_outside_range() {
        assert!(beta_template(0.0).is_err());
        assert!(beta_template(-1.0).is_err());
        assert!(beta_template(2.1).is_err());
        assert!(beta_template(2.0).is_ok());
    }

    #[test]
    fn gabriel_area_is_quarter_pi() {
        assert!((template_area(1.0).unwrap() - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn lune_area() {
        let want = 2.0 * PI / 3.0 - 3.0f64.sqrt() / 2.0;
        assert!((template_area(2.0).unwrap() - want).abs() < 1e-12);
        assert!((want - 1.22837).abs() < 1e-5);
    }

    #[test]
    fn half_beta_area_matches_unit_lens() {
        // beta = 1/2: discs of radius 1 with centers sqrt(3) apart.
        let want = lens_area(1.0, 1.0, 3.0f64.sqrt());
        assert!((template_area(0.5).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn regimes_agree_at_beta_one() {
        let mut rng = crate::seeds::substream(1, "template-continuity", 0);
        for _ in 0..10_000 {
            let x = rng.gen::<f64>() * 1.4 - 0.7;
            let y = rng.gen::<f64>() * 1.4 - 0.7;
            assert_eq!(contains_large_beta(1.0, x, y), contains_small_beta(1.0, x, y));
        }
    }

    #[test]
    fn midpoint_inside_endpoints_outside() {
        for beta in [0.3, 0.5, 0.8, 1.0, 1.3, 1.7, 2.0] {
            let t = beta_template(beta).unwrap();
            let a = Point::new(3.0, 1.0);
            let b = Point::new(5.5, 4.0);
            assert!(t.contains(a, b, a.midpoint(b)), "beta {beta}");
            assert!(!t.contains(a, b, a), "beta {beta}");
            assert!(!t.contains(a, b, b), "beta {beta}");
        }
    }

    #[test]
    fn lune_contains_adjacent_square_corner() {
        // Opposite unit-square corners as the pair: the adjacent corner
        // sits at canonical (0, 1/2), inside the lune but on the Gabriel
        // disc boundary, so the square's diagonal is a Gabriel edge and
        // not a relative-neighborhood edge.
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 1.0);
        let z = Point::new(1.0, 0.0);
        assert!(beta_template(2.0).unwrap().contains(a, b, z));
        assert!(!beta_template(1.0).unwrap().contains(a, b, z));
        assert!(!beta_template(0.5).unwrap().contains(a, b, z));
    }

    #[test]
    fn reflection_symmetry() {
        let mut rng = crate::seeds::substream(2, "template-reflect", 0);
        for beta in [0.4, 0.9, 1.0, 1.5, 2.0] {
            let t = beta_template(beta).unwrap();
            for _ in 0..2_000 {
                let x = rng.gen::<f64>() * 1.6 - 0.8;
                let y = rng.gen::<f64>() * 1.6 - 0.8;
                let m = t.contains_canonical(x, y);
                assert_eq!(m, t.contains_canonical(-x, y));
                assert_eq!(m, t.contains_canonical(x, -y));
            }
        }
    }

    #[test]
    fn templates_nest_monotonically_in_beta() {
        let betas = [0.3, 0.6, 0.9, 1.0, 1.2, 1.6, 2.0];
        let ts: Vec<Template> = betas.iter().map(|b| beta_template(*b).unwrap()).collect();
        let mut rng = crate::seeds::substream(3, "template-nesting", 0);
        for _ in 0..10_000 {
            let x = rng.gen::<f64>() * 1.6 - 0.8;
            let y = rng.gen::<f64>() * 1.6 - 0.8;
            for w in ts.windows(2) {
                if w[0].contains_canonical(x, y) {
                    assert!(
                        w[1].contains_canonical(x, y),
                        "A_beta1 not within A_beta2 at ({x},{y})"
                    );
                }
            }
        }
    }

    #[test]
    fn template_inside_lune_and_bounding_discs() {
        let lune = beta_template(2.0).unwrap();
        let mut rng = crate::seeds::substream(4, "template-lune", 0);
        for beta in [0.35, 0.7, 1.0, 1.4, 1.9] {
            let t = beta_template(beta).unwrap();
            let rb = t.bounding_radius();
            let ri = t.inscribed_radius();
            for _ in 0..4_000 {
                let x = rng.gen::<f64>() * 2.0 - 1.0;
                let y = rng.gen::<f64>() * 2.0 - 1.0;
                if t.contains_canonical(x, y) {
                    assert!(lune.contains_canonical(x, y) || beta == 2.0);
                    assert!(x * x + y * y <= rb * rb + 1e-9);
                }
                if x * x + y * y < ri * ri * (1.0 - 1e-9) {
                    assert!(t.contains_canonical(x, y), "inscribed disc point outside template");
                }
            }
        }
    }

    #[test]
    fn area_matches_template_struct() {
        for beta in [0.2, 0.5, 1.0, 1.5, 2.0] {
            let t = beta_template(beta).unwrap();
            assert!((t.area() - template_area(beta).unwrap()).abs() < 1e-9);
            assert!(t.area() > 0.0);
        }
    }
}
