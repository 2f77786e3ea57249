//! The random model: city positions in a square window, plus the small
//! geometric toolbox (distances, disc-intersection areas) everything else
//! builds on.
//!
//! Coordinates are in normalized units: cities have density one per unit
//! area, so the finite model with `n` cities lives in a square of side
//! `sqrt(n)`.

mod grid;
mod sample;

pub use grid::GridIndex;
pub(crate) use sample::poisson_count;
pub use sample::{sample_finite_model, sample_poisson};

use serde::{Deserialize, Serialize};

/// Tolerance for geometric predicates on normalized coordinates.
pub const GEOM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist2(&self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: Point) -> f64 {
        self.dist2(other).sqrt()
    }

    pub fn midpoint(&self, other: Point) -> Point {
        Point::new((self.x + other.x) / 2.0, (self.y + other.y) / 2.0)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Square observation window with origin fixed at (0,0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    side: f64,
}

impl Window {
    pub fn new(side: f64) -> crate::Result<Self> {
        if !(side > 0.0) || !side.is_finite() {
            return Err(crate::error::invalid(format!("window side must be positive, got {side}")));
        }
        Ok(Window { side })
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn area(&self) -> f64 {
        self.side * self.side
    }

    pub fn center(&self) -> Point {
        Point::new(self.side / 2.0, self.side / 2.0)
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= 0.0 && p.y >= 0.0 && p.x <= self.side && p.y <= self.side
    }

    /// The inner measurement window obtained by trimming `margin * side`
    /// off every edge.
    pub fn contains_inner(&self, p: Point, margin: f64) -> bool {
        let lo = margin * self.side;
        let hi = (1.0 - margin) * self.side;
        p.x >= lo && p.x <= hi && p.y >= lo && p.y <= hi
    }
}

/// Which random model produced a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "finite-uniform")]
    FiniteUniform,
    #[serde(rename = "poisson")]
    Poisson,
}

/// A seeded configuration of city positions.
///
/// Points are guaranteed pairwise distinct and free of pairwise-distance
/// ties at tolerance [`GEOM_TOL`] (general position); samplers re-draw
/// offending points from the seeded stream until this holds.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    window: Window,
    points: Vec<Point>,
    seed: u64,
    model: Model,
}

impl PointConfig {
    pub(crate) fn from_parts(window: Window, points: Vec<Point>, seed: u64, model: Model) -> Self {
        debug_assert!(points.iter().all(|p| window.contains(*p)));
        PointConfig { window, points, seed, model }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn model(&self) -> Model {
        self.model
    }
}

/// Area of the intersection of two discs with radii `r1`, `r2` whose
/// centers are `center_dist` apart.
///
/// Zero when the discs are disjoint or tangent; the smaller disc's area
/// when one disc contains the other.
pub fn lens_area(r1: f64, r2: f64, center_dist: f64) -> f64 {
    assert!(r1 > 0.0 && r2 > 0.0 && center_dist >= 0.0);
    let (rmin, rmax) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    let d = center_dist;
    if d >= r1 + r2 {
        return 0.0;
    }
    if d + rmin <= rmax {
        return std::f64::consts::PI * rmin * rmin;
    }
    // Circular-segment decomposition about the radical axis.
    let cos1 = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0);
    let cos2 = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0);
    let t1 = r1 * r1 * cos1.acos();
    let t2 = r2 * r2 * cos2.acos();
    let sq = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    t1 + t2 - 0.5 * sq.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lens_coincident_discs() {
        let r = 1.7;
        assert!((lens_area(r, r, 0.0) - PI * r * r).abs() < 1e-12);
    }

    #[test]
    fn lens_tangent_discs() {
        assert_eq!(lens_area(1.0, 1.0, 2.0), 0.0);
        assert_eq!(lens_area(1.0, 1.0, 2.5), 0.0);
    }

    #[test]
    fn lens_contained_disc() {
        assert!((lens_area(0.5, 3.0, 1.0) - PI * 0.25).abs() < 1e-12);
    }

    #[test]
    fn lens_unit_discs_unit_distance() {
        // 2*pi/3 - sqrt(3)/2, the lune area.
        let want = 2.0 * PI / 3.0 - 3.0f64.sqrt() / 2.0;
        assert!((lens_area(1.0, 1.0, 1.0) - want).abs() < 1e-12);
    }

    #[test]
    fn lens_symmetric_in_radii() {
        let a = lens_area(0.8, 1.3, 0.9);
        let b = lens_area(1.3, 0.8, 0.9);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn window_inner_margin() {
        let w = Window::new(10.0).unwrap();
        assert!(w.contains_inner(Point::new(5.0, 5.0), 0.2));
        assert!(!w.contains_inner(Point::new(1.0, 5.0), 0.2));
        assert!((w.area() - 100.0).abs() < 1e-12);
    }
}
