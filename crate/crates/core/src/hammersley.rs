//! The Hammersley network: cities are read as a space-time point process
//! (y as time, x as space) and two sweeps of the frog process produce the
//! edges.
//!
//! Leftward pass: frogs start as a rate-1 Poisson process on [0, side] at
//! time 0. Sweeping cities upward in y, the frog nearest strictly to the
//! right of a city jumps onto it; if that frog last sat on a city, the two
//! cities get an edge (the new city's SE edge, the old one's NW edge).
//! The rightward pass mirrors this (nearest frog strictly to the left),
//! giving SW/NE edges. Edges to time-0 frog positions are dropped, so
//! statistics use an inner window; the boundary layer is the only place
//! the initial randomization matters.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::invalid;
use crate::geometry::{poisson_count, Point, PointConfig};
use crate::network::{FamilyTag, Network};
use crate::quad::integrate2d;
use crate::seeds::substream;
use crate::Result;

/// Frog state: the city it last landed on, or None for a time-0 frog that
/// has not jumped yet.
type Tape = BTreeMap<u64, Option<u32>>;

pub fn build_hammersley(config: &PointConfig, seed: u64) -> Result<Network> {
    let n = config.n();
    if n < 1 {
        return Err(invalid("hammersley needs at least one city"));
    }
    let pts = config.points();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by(|&a, &b| pts[a as usize].y.total_cmp(&pts[b as usize].y));
    for w in order.windows(2) {
        assert!(
            pts[w[0] as usize].y < pts[w[1] as usize].y,
            "sweep needs distinct y coordinates (general position)"
        );
    }

    let side = config.window().side();
    let mut pairs = std::collections::BTreeSet::new();
    for (tag_index, leftward) in [(1u64, true), (2u64, false)] {
        let mut rng = substream(seed, "hammersley-frogs", tag_index);
        let mut tape: Tape = BTreeMap::new();
        let frogs = poisson_count(side, &mut rng);
        for _ in 0..frogs {
            tape.insert(key(rng.gen::<f64>() * side), None);
        }
        for &city in &order {
            let x = key(pts[city as usize].x);
            let responsible = if leftward {
                tape.range((std::ops::Bound::Excluded(x), std::ops::Bound::Unbounded))
                    .next()
                    .map(|(k, v)| (*k, *v))
            } else {
                tape.range((std::ops::Bound::Unbounded, std::ops::Bound::Excluded(x)))
                    .next_back()
                    .map(|(k, v)| (*k, *v))
            };
            let Some((fkey, last)) = responsible else {
                continue; // no frog on that side; city enters no edge here
            };
            tape.remove(&fkey);
            if let Some(prev) = last {
                pairs.insert((prev.min(city), prev.max(city)));
            }
            tape.insert(x, Some(city));
        }
    }

    let mut b = Network::builder(config, FamilyTag::new("hammersley"));
    for (u, v) in pairs {
        b.add_edge(u, v);
    }
    Ok(b.finish())
}

// Nonnegative f64 bit patterns sort like the values.
fn key(x: f64) -> u64 {
    debug_assert!(x >= 0.0);
    x.to_bits()
}

/// Mean edge length of the Hammersley network: the NE displacement has
/// independent Exponential(1) components, so this is the integral of
/// sqrt(x^2 + y^2) e^(-x-y) over the positive quadrant (truncated where
/// the integrand is below 1e-12), evaluated to 1e-7.
pub fn hammersley_mean_edge() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| {
        let cutoff = 40.0;
        integrate2d(
            |x, y| (x * x + y * y).sqrt() * (-x - y).exp(),
            0.0,
            cutoff,
            0.0,
            cutoff,
            1e-7,
        )
    })
}

/// Compass quadrant of `to` relative to `from`; open quadrants only under
/// general position.
pub fn quadrant(from: Point, to: Point) -> (bool, bool) {
    (to.x > from.x, to.y > from.y)
}
