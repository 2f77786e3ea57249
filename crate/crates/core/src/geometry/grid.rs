//! Uniform-cell spatial index over a point configuration.
//!
//! Immutable after construction; shared read-only by concurrent workers.

use super::{Point, PointConfig, Window};
use crate::error::invalid;
use crate::Result;

#[derive(Debug, Clone)]
pub struct GridIndex {
    points: Vec<Point>,
    cell_side: f64,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<u32>>,
}

impl GridIndex {
    pub fn build(config: &PointConfig, cell_side: f64) -> Result<Self> {
        Self::build_from_points(config.points(), config.window(), cell_side)
    }

    pub fn build_from_points(points: &[Point], window: Window, cell_side: f64) -> Result<Self> {
        if !(cell_side > 0.0) || !cell_side.is_finite() {
            return Err(invalid(format!("cell side must be positive, got {cell_side}")));
        }
        let nx = ((window.side() / cell_side).ceil() as usize).max(1);
        let ny = nx;
        let mut cells = vec![Vec::new(); nx * ny];
        let mut grid = GridIndex { points: points.to_vec(), cell_side, nx, ny, cells: Vec::new() };
        for (id, p) in points.iter().enumerate() {
            let (cx, cy) = grid.cell_of(*p);
            cells[cy * nx + cx].push(id as u32);
        }
        grid.cells = cells;
        Ok(grid)
    }

    /// A cell side of one normalized unit, i.e. about one city per cell in
    /// the density-1 models.
    pub fn build_unit(config: &PointConfig) -> Self {
        let cell = config.window().side().min(1.0);
        Self::build(config, cell).expect("positive cell side")
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    fn cell_of(&self, p: Point) -> (usize, usize) {
        let cx = ((p.x / self.cell_side) as isize).clamp(0, self.nx as isize - 1) as usize;
        let cy = ((p.y / self.cell_side) as isize).clamp(0, self.ny as isize - 1) as usize;
        (cx, cy)
    }

    fn cell_range(&self, lo: f64, hi: f64) -> (usize, usize) {
        let a = ((lo / self.cell_side).floor() as isize).clamp(0, self.nx as isize - 1) as usize;
        let b = ((hi / self.cell_side).floor() as isize).clamp(0, self.ny as isize - 1) as usize;
        (a, b)
    }

    /// Ids of points inside the closed rectangle `[x0,x1] x [y0,y1]`.
    pub fn query_rect(&self, x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<u32> {
        let mut out = Vec::new();
        if x1 < x0 || y1 < y0 {
            return out;
        }
        if x1 < 0.0 || y1 < 0.0 {
            return out;
        }
        let (cx0, cx1) = self.cell_range(x0.max(0.0), x1);
        let (cy0, cy1) = self.cell_range(y0.max(0.0), y1);
        for cy in cy0..=cy1 {
            for cx in cx0..=cx1 {
                for &id in &self.cells[cy * self.nx + cx] {
                    let p = self.points[id as usize];
                    if p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1 {
                        out.push(id);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Visit ids of points with `dist(center, p) <= r`, nearer cells first.
    /// The callback returns `false` to stop early.
    pub fn scan_disc(&self, center: Point, r: f64, mut visit: impl FnMut(u32, Point) -> bool) {
        let r2 = r * r;
        let (ccx, ccy) = self.cell_of(center);
        let max_ring = (r / self.cell_side).ceil() as isize + 1;
        for ring in 0..=max_ring {
            // Cells at Chebyshev ring k are at least (k-1) cells away.
            if ring >= 2 {
                let min_d = (ring - 1) as f64 * self.cell_side;
                if min_d * min_d > r2 {
                    return;
                }
            }
            let mut done = true;
            let cx0 = ccx as isize - ring;
            let cx1 = ccx as isize + ring;
            let cy0 = ccy as isize - ring;
            let cy1 = ccy as isize + ring;
            for cy in cy0..=cy1 {
                if cy < 0 || cy >= self.ny as isize {
                    continue;
                }
                for cx in cx0..=cx1 {
                    if cx < 0 || cx >= self.nx as isize {
                        continue;
                    }
                    let on_ring = cx == cx0 || cx == cx1 || cy == cy0 || cy == cy1;
                    if !on_ring {
                        continue;
                    }
                    done = false;
                    for &id in &self.cells[cy as usize * self.nx + cx as usize] {
                        let p = self.points[id as usize];
                        if p.dist2(center) <= r2 && !visit(id, p) {
                            return;
                        }
                    }
                }
            }
            if done && ring > 0 {
                return;
            }
        }
    }

    /// Ids of points within distance `r` of `center`, ascending by id.
    pub fn query_disc(&self, center: Point, r: f64) -> Vec<u32> {
        let mut out = Vec::new();
        self.scan_disc(center, r, |id, _| {
            out.push(id);
            true
        });
        out.sort_unstable();
        out
    }

    /// The `k` nearest points to `points[from]` (excluding itself),
    /// ascending by distance.
    pub fn k_nearest(&self, from: u32, k: usize) -> Vec<u32> {
        let origin = self.points[from as usize];
        // (dist2, id) heap of current best k; max at root via reverse sort.
        let mut best: Vec<(f64, u32)> = Vec::with_capacity(k + 1);
        let (ccx, ccy) = self.cell_of(origin);
        let max_ring = self.nx.max(self.ny) as isize;
        for ring in 0..=max_ring {
            if ring >= 2 && best.len() == k {
                let min_d = (ring - 1) as f64 * self.cell_side;
                if min_d * min_d > best[k - 1].0 {
                    break;
                }
            }
            let cx0 = ccx as isize - ring;
            let cx1 = ccx as isize + ring;
            let cy0 = ccy as isize - ring;
            let cy1 = ccy as isize + ring;
            let mut any = false;
            for cy in cy0..=cy1 {
                if cy < 0 || cy >= self.ny as isize {
                    continue;
                }
                for cx in cx0..=cx1 {
                    if cx < 0 || cx >= self.nx as isize {
                        continue;
                    }
                    if ring > 0 && !(cx == cx0 || cx == cx1 || cy == cy0 || cy == cy1) {
                        continue;
                    }
                    any = true;
                    for &id in &self.cells[cy as usize * self.nx + cx as usize] {
                        if id == from {
                            continue;
                        }
                        let d2 = self.points[id as usize].dist2(origin);
                        if best.len() < k {
                            best.push((d2, id));
                            best.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
                        } else if d2 < best[k - 1].0 {
                            best[k - 1] = (d2, id);
                            best.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
                        }
                    }
                }
            }
            if !any && ring > 0 && best.len() == k {
                break;
            }
        }
        best.into_iter().map(|(_, id)| id).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample_finite_model;
    use rand::Rng;

    #[test]
    fn whole_window_query_returns_everything() {
        let cfg = sample_finite_model(200, 1).unwrap();
        let g = GridIndex::build_unit(&cfg);
        let side = cfg.window().side();
        let all = g.query_rect(0.0, 0.0, side, side);
        assert_eq!(all.len(), 200);
    }

    #[test]
    fn query_outside_window_is_empty() {
        let cfg = sample_finite_model(50, 2).unwrap();
        let g = GridIndex::build_unit(&cfg);
        assert!(g.query_rect(-5.0, -5.0, -1.0, -1.0).is_empty());
        let s = cfg.window().side();
        assert!(g.query_rect(s + 1.0, 0.0, s + 2.0, s).is_empty());
    }

    #[test]
    fn rect_queries_match_brute_force() {
        let cfg = sample_finite_model(500, 3).unwrap();
        let g = GridIndex::build(&cfg, 0.8).unwrap();
        let side = cfg.window().side();
        let mut rng = crate::seeds::substream(3, "test-rects", 0);
        for _ in 0..100 {
            let ax = rng.gen::<f64>() * side;
            let bx = rng.gen::<f64>() * side;
            let ay = rng.gen::<f64>() * side;
            let by = rng.gen::<f64>() * side;
            let (x0, x1) = (ax.min(bx), ax.max(bx));
            let (y0, y1) = (ay.min(by), ay.max(by));
            let mut want: Vec<u32> = cfg
                .points()
                .iter()
                .enumerate()
                .filter(|(_, p)| p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1)
                .map(|(i, _)| i as u32)
                .collect();
            want.sort_unstable();
            assert_eq!(g.query_rect(x0, y0, x1, y1), want);
        }
    }

    #[test]
    fn disc_queries_match_brute_force() {
        let cfg = sample_finite_model(400, 4).unwrap();
        let g = GridIndex::build(&cfg, 1.3).unwrap();
        let side = cfg.window().side();
        let mut rng = crate::seeds::substream(4, "test-discs", 0);
        for _ in 0..100 {
            let c = Point::new(rng.gen::<f64>() * side, rng.gen::<f64>() * side);
            let r = rng.gen::<f64>() * side / 3.0;
            let mut want: Vec<u32> = cfg
                .points()
                .iter()
                .enumerate()
                .filter(|(_, p)| p.dist2(c) <= r * r)
                .map(|(i, _)| i as u32)
                .collect();
            want.sort_unstable();
            assert_eq!(g.query_disc(c, r), want);
        }
    }

    #[test]
    fn k_nearest_matches_sort() {
        let cfg = sample_finite_model(300, 5).unwrap();
        let g = GridIndex::build_unit(&cfg);
        for from in [0u32, 7, 120, 299] {
            let got = g.k_nearest(from, 5);
            let origin = cfg.points()[from as usize];
            let mut want: Vec<(f64, u32)> = cfg
                .points()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i as u32 != from)
                .map(|(i, p)| (p.dist2(origin), i as u32))
                .collect();
            want.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
            let want: Vec<u32> = want.into_iter().take(5).map(|(_, i)| i).collect();
            assert_eq!(got, want);
        }
    }
}
