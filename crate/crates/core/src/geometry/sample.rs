//! Samplers for the finite-uniform and Poisson models, with general-position
//! enforcement.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use super::{Model, Point, PointConfig, Window, GEOM_TOL};
use crate::error::invalid;
use crate::seeds::substream;
use crate::Result;

/// `n` cities i.i.d. uniform on the square of area `n` (side `sqrt(n)`).
pub fn sample_finite_model(n: usize, seed: u64) -> Result<PointConfig> {
    if n < 1 {
        return Err(invalid("finite model needs n >= 1"));
    }
    let window = Window::new((n as f64).sqrt())?;
    let mut rng = substream(seed, "sample-finite", 0);
    let mut points = draw_uniform(n, window, &mut rng);
    enforce_general_position(&mut points, window, &mut rng);
    Ok(PointConfig::from_parts(window, points, seed, Model::FiniteUniform))
}

/// Poisson point process of the given rate on the window: the count is
/// Poisson(rate * area), positions i.i.d. uniform given the count.
pub fn sample_poisson(window: Window, rate: f64, seed: u64) -> Result<PointConfig> {
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(invalid(format!("poisson rate must be positive, got {rate}")));
    }
    let mut rng = substream(seed, "sample-poisson", 0);
    let n = poisson_count(rate * window.area(), &mut rng);
    let mut points = draw_uniform(n, window, &mut rng);
    enforce_general_position(&mut points, window, &mut rng);
    Ok(PointConfig::from_parts(window, points, seed, Model::Poisson))
}

pub(crate) fn poisson_count(mean: f64, rng: &mut ChaCha8Rng) -> usize {
    Poisson::new(mean).expect("positive mean").sample(rng) as usize
}

fn draw_uniform(n: usize, window: Window, rng: &mut ChaCha8Rng) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new(rng.gen::<f64>() * window.side(), rng.gen::<f64>() * window.side()))
        .collect()
}

/// Re-draw points until no two coincide and no two pairwise distances tie
/// within [`GEOM_TOL`]. Downstream code (MST uniqueness, sweep orders,
/// open-region boundary tests) relies on this.
fn enforce_general_position(points: &mut [Point], window: Window, rng: &mut ChaCha8Rng) {
    loop {
        let offenders = offending_points(points);
        if offenders.is_empty() {
            return;
        }
        for idx in offenders {
            points[idx] =
                Point::new(rng.gen::<f64>() * window.side(), rng.gen::<f64>() * window.side());
        }
    }
}

/// Indices that participate in a coincidence or a distance tie. At most one
/// endpoint per offending pair is returned, so one redraw round breaks every
/// detected tie.
fn offending_points(points: &[Point]) -> Vec<usize> {
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    let mut dists = Vec::with_capacity(n * (n - 1) / 2);
    let mut out = std::collections::BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = points[i].dist(points[j]);
            if d <= GEOM_TOL {
                out.insert(j);
            }
            dists.push(d);
        }
    }
    dists.sort_unstable_by(f64::total_cmp);
    let mut tied_values = Vec::new();
    for w in dists.windows(2) {
        if w[1] - w[0] <= GEOM_TOL {
            tied_values.push(w[0]);
            tied_values.push(w[1]);
        }
    }
    drop(dists);
    if !tied_values.is_empty() {
        tied_values.sort_unstable_by(f64::total_cmp);
        for i in 0..n {
            for j in (i + 1)..n {
                let d = points[i].dist(points[j]);
                let k = tied_values.partition_point(|v| *v < d - GEOM_TOL);
                if k < tied_values.len() && (tied_values[k] - d).abs() <= GEOM_TOL {
                    out.insert(j);
                }
            }
        }
    }
    out.into_iter().collect()
}
