//! Network statistics: normalized length L, average degree, route lengths,
//! the binned route-excess profile rho(d), and the summary statistics
//! R-tilde / R_max / R_ave.
//!
//! r(i,j) = l(i,j)/d(i,j) - 1 is the relative route excess; rho-tilde(d)
//! averages it over city pairs whose Euclidean distance falls in the bin
//! centered at d; R-tilde is the maximum over qualifying bins, taken from
//! the smallest bin center upward. Pairs are restricted to an inner
//! measurement window to suppress boundary effects.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::builders::planarize;
use crate::error::invalid;
use crate::geometry::{GridIndex, Point};
use crate::network::Network;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileParams {
    pub bin_width: f64,
    pub d_max: f64,
    pub inner_margin: f64,
    pub min_count: usize,
    /// Route over the planarized network (junctions at edge crossings).
    /// Off by default: crossings have negligible effect on route lengths.
    pub planarize_routing: bool,
}

impl Default for ProfileParams {
    fn default() -> Self {
        ProfileParams {
            bin_width: 0.25,
            d_max: 10.0,
            inner_margin: 0.1,
            min_count: 100,
            planarize_routing: false,
        }
    }
}

impl ProfileParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.bin_width > 0.0) {
            return Err(invalid(format!("bin width must be positive, got {}", self.bin_width)));
        }
        if !(self.d_max > 0.0) {
            return Err(invalid(format!("d_max must be positive, got {}", self.d_max)));
        }
        check_margin(self.inner_margin)?;
        Ok(())
    }
}

pub(crate) fn check_margin(margin: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&margin) {
        return Err(invalid(format!("inner margin must lie in [0, 0.5), got {margin}")));
    }
    Ok(margin)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoBin {
    pub center: f64,
    pub count: u64,
    /// None below the qualification count; infinite if the bin saw an
    /// unreachable pair.
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhoProfile {
    pub bin_width: f64,
    pub d_max: f64,
    pub inner_margin: f64,
    pub min_count: usize,
    pub bins: Vec<RhoBin>,
    pub unreachable_pairs: u64,
}

impl RhoProfile {
    /// Max of qualifying bin means from the smallest center up; infinite
    /// when any measured pair is unreachable, NaN when no bin qualifies.
    pub fn r_tilde(&self) -> f64 {
        if self.unreachable_pairs > 0 {
            return f64::INFINITY;
        }
        let mut best = f64::NAN;
        for b in &self.bins {
            if let Some(m) = b.mean_ratio {
                // f64::max ignores the initial NaN.
                best = best.max(m);
            }
        }
        best
    }

    /// Center of the qualifying bin with the largest mean.
    pub fn argmax_center(&self) -> Option<f64> {
        let mut best: Option<(f64, f64)> = None;
        for b in &self.bins {
            if let Some(m) = b.mean_ratio {
                if best.map_or(true, |(bm, _)| m > bm) {
                    best = Some((m, b.center));
                }
            }
        }
        best.map(|(_, c)| c)
    }

    /// Mean ratio of the bin whose center is nearest `d`.
    pub fn mean_near(&self, d: f64) -> Option<f64> {
        self.bins
            .iter()
            .min_by(|a, b| (a.center - d).abs().total_cmp(&(b.center - d).abs()))
            .and_then(|b| b.mean_ratio)
    }

    /// Heuristic for profiles that keep growing to the window edge, the
    /// finite-n signature of rho(d) unbounded in d: the last three
    /// qualifying bin means are strictly increasing.
    pub fn unbounded_suspected(&self) -> bool {
        let means: Vec<f64> = self
            .bins
            .iter()
            .filter_map(|b| b.mean_ratio)
            .filter(|m| m.is_finite())
            .collect();
        if means.len() < 3 {
            return false;
        }
        let tail = &means[means.len() - 3..];
        tail[0] < tail[1] && tail[1] < tail[2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStats {
    pub measured: u64,
    pub unreachable: u64,
    /// Max over measured pairs; infinite if any pair is unreachable.
    pub r_max: f64,
    /// Mean over reachable measured pairs.
    pub r_ave: f64,
}

/// One-network summary: normalized length, average degree, and the
/// route-length statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetSummary {
    pub l: f64,
    pub avg_degree: f64,
    pub r_tilde: f64,
    pub r_max: f64,
    pub r_ave: f64,
    pub unreachable_fraction: f64,
    pub unbounded_suspected: bool,
}

impl NetSummary {
    pub fn to_json(&self) -> serde_json::Value {
        fn num(v: f64) -> serde_json::Value {
            if v.is_finite() {
                serde_json::json!(v)
            } else if v.is_nan() {
                serde_json::Value::String("nan".into())
            } else {
                serde_json::Value::String("inf".into())
            }
        }
        serde_json::json!({
            "L": num(self.l),
            "avg_degree": num(self.avg_degree),
            "r_tilde": num(self.r_tilde),
            "r_max": num(self.r_max),
            "r_ave": num(self.r_ave),
            "unreachable_fraction": num(self.unreachable_fraction),
            "unbounded_suspected": self.unbounded_suspected,
        })
    }
}

/// Total edge length per unit window area.
pub fn normalized_length(net: &Network) -> f64 {
    net.total_length() / net.window().area()
}

/// Edge length inside the inner window (edges clipped to it) per unit
/// inner area. Unbiased for stationary networks, unlike dropping edges
/// that poke out.
pub fn normalized_length_inner(net: &Network, margin: f64) -> Result<f64> {
    check_margin(margin)?;
    let w = net.window();
    let lo = margin * w.side();
    let hi = (1.0 - margin) * w.side();
    let mut total = 0.0;
    for e in net.edges() {
        total += clipped_length(net.position(e.u), net.position(e.v), lo, hi);
    }
    let inner_side = hi - lo;
    Ok(total / (inner_side * inner_side))
}

fn clipped_length(p: Point, q: Point, lo: f64, hi: f64) -> f64 {
    let d = (q.x - p.x, q.y - p.y);
    let mut t0: f64 = 0.0;
    let mut t1: f64 = 1.0;
    for (den, num) in [
        (-d.0, p.x - lo),
        (d.0, hi - p.x),
        (-d.1, p.y - lo),
        (d.1, hi - p.y),
    ] {
        if den.abs() < 1e-300 {
            if num < 0.0 {
                return 0.0;
            }
            continue;
        }
        let r = num / den;
        if den < 0.0 {
            t0 = t0.max(r);
        } else {
            t1 = t1.min(r);
        }
    }
    if t0 >= t1 {
        return 0.0;
    }
    (t1 - t0) * p.dist(q)
}

/// Mean incident-edge count over city vertices in the inner window.
pub fn avg_degree(net: &Network, inner_margin: f64) -> Result<f64> {
    check_margin(inner_margin)?;
    let w = net.window();
    let mut sum = 0usize;
    let mut count = 0usize;
    for v in 0..net.n_cities() as u32 {
        if w.contains_inner(net.position(v), inner_margin) {
            sum += net.degree(v);
            count += 1;
        }
    }
    if count == 0 {
        return Ok(f64::NAN);
    }
    Ok(sum as f64 / count as f64)
}

/// Compressed adjacency for shortest-path runs over a fixed network.
struct Csr {
    offsets: Vec<u32>,
    targets: Vec<u32>,
    weights: Vec<f64>,
}

impl Csr {
    fn from(net: &Network) -> Self {
        let nv = net.vertices().len();
        let mut offsets = vec![0u32; nv + 1];
        for e in net.edges() {
            offsets[e.u as usize + 1] += 1;
            offsets[e.v as usize + 1] += 1;
        }
        for i in 0..nv {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; net.edges().len() * 2];
        let mut weights = vec![0.0f64; net.edges().len() * 2];
        for e in net.edges() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                let c = cursor[a as usize] as usize;
                targets[c] = b;
                weights[c] = e.length;
                cursor[a as usize] += 1;
            }
        }
        Csr { offsets, targets, weights }
    }

    fn n_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Dijkstra from `src`; stops once `stop_after` targets from
    /// `targets_mask` (when given) are settled.
    fn dijkstra(&self, src: u32, dist: &mut [f64], targets_mask: Option<(&[bool], usize)>) {
        dist.iter_mut().for_each(|d| *d = f64::INFINITY);
        dist[src as usize] = 0.0;
        let mut remaining = match targets_mask {
            Some((_, 0)) => return,
            Some((_, count)) => count,
            None => usize::MAX,
        };
        let mut settled = vec![false; dist.len()];
        let mut heap: BinaryHeap<Reverse<(u64, u32)>> = BinaryHeap::new();
        heap.push(Reverse((0u64, src)));
        while let Some(Reverse((db, u))) = heap.pop() {
            let du = f64::from_bits(db);
            if du > dist[u as usize] || settled[u as usize] {
                continue;
            }
            settled[u as usize] = true;
            if let Some((mask, _)) = targets_mask {
                if mask[u as usize] {
                    remaining -= 1;
                    if remaining == 0 {
                        return;
                    }
                }
            }
            let lo = self.offsets[u as usize] as usize;
            let hi = self.offsets[u as usize + 1] as usize;
            for k in lo..hi {
                let v = self.targets[k];
                let nd = du + self.weights[k];
                if nd < dist[v as usize] {
                    dist[v as usize] = nd;
                    heap.push(Reverse((nd.to_bits(), v)));
                }
            }
        }
    }
}

/// Shortest-path distances (Euclidean edge weights) from a city to every
/// city; unreachable cities report infinity.
pub fn route_lengths(net: &Network, source: u32) -> Result<Vec<f64>> {
    if source as usize >= net.n_cities() {
        return Err(invalid(format!("source {source} is not a city")));
    }
    let csr = Csr::from(net);
    let mut dist = vec![f64::INFINITY; csr.n_vertices()];
    csr.dijkstra(source, &mut dist, None);
    Ok(dist[..net.n_cities()].to_vec())
}

struct SourceAccum {
    bins: Vec<(u64, f64, f64)>, // count, sum (inf-propagating), max
    measured: u64,
    unreachable: u64,
    r_max: f64,
    reach_sum: f64,
    reach_count: u64,
}

/// The binned profile plus the flat pair statistics, over city pairs with
/// both endpoints in the inner window and distance within the last bin.
pub fn rho_profile_with_stats(
    net: &Network,
    params: &ProfileParams,
) -> Result<(RhoProfile, PairStats)> {
    params.validate()?;
    let routed;
    let net = if params.planarize_routing {
        routed = planarize(net);
        &routed
    } else {
        net
    };
    let w = net.window();
    let n = net.n_cities();
    let kmax = (params.d_max / params.bin_width).round() as usize;
    let cutoff = (kmax as f64 + 0.5) * params.bin_width;

    let cities: Vec<Point> = (0..n as u32).map(|v| net.position(v)).collect();
    let inner: Vec<bool> = cities.iter().map(|p| w.contains_inner(*p, params.inner_margin)).collect();
    let grid = GridIndex::build_from_points(&cities, w, 1.0f64.min(w.side()))?;
    let csr = Csr::from(net);
    let nv = csr.n_vertices();

    let sources: Vec<u32> = (0..n as u32).filter(|v| inner[*v as usize]).collect();
    let accums: Vec<SourceAccum> = sources
        .par_iter()
        .map(|&src| {
            let mut acc = SourceAccum {
                bins: vec![(0, 0.0, f64::NEG_INFINITY); kmax + 1],
                measured: 0,
                unreachable: 0,
                r_max: f64::NEG_INFINITY,
                reach_sum: 0.0,
                reach_count: 0,
            };
            let origin = cities[src as usize];
            // Candidate partners: inner cities with larger index inside the
            // profile's distance reach.
            let mut partners: Vec<(u32, f64)> = Vec::new();
            let mut mask = vec![false; nv];
            let mut target_count = 0usize;
            grid.scan_disc(origin, cutoff, |id, p| {
                if id > src && inner[id as usize] {
                    let d = origin.dist(p);
                    let k = (d / params.bin_width).round() as usize;
                    if k <= kmax {
                        partners.push((id, d));
                        mask[id as usize] = true;
                        target_count += 1;
                    }
                }
                true
            });
            if partners.is_empty() {
                return acc;
            }
            let mut dist = vec![f64::INFINITY; nv];
            csr.dijkstra(src, &mut dist, Some((&mask, target_count)));
            for (j, d) in partners {
                let l = dist[j as usize];
                let r = if l.is_finite() { l / d - 1.0 } else { f64::INFINITY };
                let k = (d / params.bin_width).round() as usize;
                let bin = &mut acc.bins[k];
                bin.0 += 1;
                bin.1 += r;
                bin.2 = bin.2.max(r);
                acc.measured += 1;
                if r.is_finite() {
                    acc.reach_sum += r;
                    acc.reach_count += 1;
                    acc.r_max = acc.r_max.max(r);
                } else {
                    acc.unreachable += 1;
                    acc.r_max = f64::INFINITY;
                }
            }
            acc
        })
        .collect();

    // Merge in source order so results are independent of worker count.
    let mut bins = vec![(0u64, 0.0f64, f64::NEG_INFINITY); kmax + 1];
    let mut measured = 0u64;
    let mut unreachable = 0u64;
    let mut r_max = f64::NEG_INFINITY;
    let mut reach_sum = 0.0;
    let mut reach_count = 0u64;
    for acc in accums {
        for (k, b) in acc.bins.iter().enumerate() {
            bins[k].0 += b.0;
            bins[k].1 += b.1;
            bins[k].2 = bins[k].2.max(b.2);
        }
        measured += acc.measured;
        unreachable += acc.unreachable;
        r_max = r_max.max(acc.r_max);
        reach_sum += acc.reach_sum;
        reach_count += acc.reach_count;
    }

    let out_bins: Vec<RhoBin> = bins
        .iter()
        .enumerate()
        .map(|(k, &(count, sum, max))| RhoBin {
            center: k as f64 * params.bin_width,
            count,
            mean_ratio: if count as usize >= params.min_count {
                Some(sum / count as f64)
            } else {
                None
            },
            max_ratio: if count > 0 { Some(max) } else { None },
        })
        .collect();

    let profile = RhoProfile {
        bin_width: params.bin_width,
        d_max: params.d_max,
        inner_margin: params.inner_margin,
        min_count: params.min_count,
        bins: out_bins,
        unreachable_pairs: unreachable,
    };
    let stats = PairStats {
        measured,
        unreachable,
        r_max: if measured == 0 { f64::NAN } else { r_max },
        r_ave: if reach_count == 0 { f64::NAN } else { reach_sum / reach_count as f64 },
    };
    Ok((profile, stats))
}

pub fn rho_profile(net: &Network, params: &ProfileParams) -> Result<RhoProfile> {
    Ok(rho_profile_with_stats(net, params)?.0)
}

/// L, average degree, R-tilde, R_max, R_ave and the unbounded heuristic in
/// one pass.
pub fn summarize(net: &Network, params: &ProfileParams) -> Result<NetSummary> {
    let (profile, stats) = rho_profile_with_stats(net, params)?;
    Ok(NetSummary {
        l: normalized_length(net),
        avg_degree: avg_degree(net, params.inner_margin)?,
        r_tilde: profile.r_tilde(),
        r_max: stats.r_max,
        r_ave: stats.r_ave,
        unreachable_fraction: if stats.measured == 0 {
            0.0
        } else {
            stats.unreachable as f64 / stats.measured as f64
        },
        unbounded_suspected: profile.unbounded_suspected(),
    })
}
