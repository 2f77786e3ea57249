//! Line-process overlays and planarization.
//!
//! The overlay superimposes an isotropic Poisson line process on a base
//! network: line count ~ Poisson(intensity * 2D) with D the half window
//! diagonal, angle uniform on [0, pi), signed offset from the window
//! center uniform on [-D, D]. Lines are clipped to the window; junction
//! vertices are created where they cross base edges, other lines, or the
//! window boundary.

use rand::Rng;
use robust::{orient2d, Coord};

use crate::error::invalid;
use crate::geometry::{Point, Window};
use crate::network::{Edge, FamilyTag, Network, Vertex, VertexKind};
use crate::seeds::substream;
use crate::Result;

pub fn overlay_line_process(base: &Network, line_intensity: f64, seed: u64) -> Result<Network> {
    if !(line_intensity >= 0.0) || !line_intensity.is_finite() {
        return Err(invalid(format!("line intensity must be >= 0, got {line_intensity}")));
    }
    if line_intensity == 0.0 {
        return Ok(base.clone());
    }
    let window = base.window();
    let side = window.side();
    let half_diag = side * std::f64::consts::SQRT_2 / 2.0;
    let mut rng = substream(seed, "line-process", 0);
    let count = crate::geometry::poisson_count(line_intensity * 2.0 * half_diag, &mut rng);

    let center = window.center();
    let mut chords: Vec<(Point, Point)> = Vec::new();
    for _ in 0..count {
        let theta = rng.gen::<f64>() * std::f64::consts::PI;
        let offset = (rng.gen::<f64>() * 2.0 - 1.0) * half_diag;
        let anchor = Point::new(
            center.x + offset * theta.cos(),
            center.y + offset * theta.sin(),
        );
        let dir = (-theta.sin(), theta.cos());
        if let Some(chord) = clip_line(anchor, dir, window) {
            chords.push(chord);
        }
    }

    let mut out = Rebuild::from(base);
    let mut chord_cuts: Vec<Vec<(f64, u32)>> = vec![Vec::new(); chords.len()];

    // Lines vs base edges.
    for (ci, &(a, b)) in chords.iter().enumerate() {
        for (ei, e) in base.edges().iter().enumerate() {
            let p = base.position(e.u);
            let q = base.position(e.v);
            if let Some((t_line, t_edge, x)) = proper_crossing(a, b, p, q) {
                let j = out.add_vertex(x, VertexKind::Junction);
                chord_cuts[ci].push((t_line, j));
                out.cut_edge(ei, t_edge, j);
            }
        }
    }

    // Lines vs lines.
    for i in 0..chords.len() {
        for j in (i + 1)..chords.len() {
            let (a, b) = chords[i];
            let (c, d) = chords[j];
            if let Some((ti, tj, x)) = proper_crossing(a, b, c, d) {
                let v = out.add_vertex(x, VertexKind::Junction);
                chord_cuts[i].push((ti, v));
                chord_cuts[j].push((tj, v));
            }
        }
    }

    // Chord chains between boundary anchors.
    for (ci, &(a, b)) in chords.iter().enumerate() {
        let va = out.add_vertex(a, VertexKind::BoundaryAnchor);
        let vb = out.add_vertex(b, VertexKind::BoundaryAnchor);
        let mut cuts = std::mem::take(&mut chord_cuts[ci]);
        cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut prev = va;
        for (_, v) in cuts {
            out.add_edge(prev, v);
            prev = v;
        }
        out.add_edge(prev, vb);
    }

    let mut params: Vec<(String, f64)> =
        base.family().params.iter().map(|(k, v)| (k.clone(), *v)).collect();
    params.push(("line_intensity".to_string(), line_intensity));
    let tag = FamilyTag {
        name: format!("{}+lines", base.family().name),
        params: params.into_iter().collect(),
    };
    Ok(out.finish(base, tag))
}

/// Replace every interior crossing of two edges with a junction vertex
/// splitting both. Total length is preserved; the output has no crossing
/// edges, so planarize is idempotent.
pub fn planarize(net: &Network) -> Network {
    let mut out = Rebuild::from(net);
    let edges = net.edges();

    // Bucket edges by the cells their bounding box overlaps.
    let side = net.window().side();
    let mean_len = if edges.is_empty() {
        side
    } else {
        net.total_length() / edges.len() as f64
    };
    let cell = (2.0 * mean_len).max(side / 512.0).min(side);
    let ncell = ((side / cell).ceil() as usize).max(1);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); ncell * ncell];
    let clampc = |v: f64| ((v / cell) as isize).clamp(0, ncell as isize - 1) as usize;
    for (ei, e) in edges.iter().enumerate() {
        let p = net.position(e.u);
        let q = net.position(e.v);
        let (x0, x1) = (clampc(p.x.min(q.x)), clampc(p.x.max(q.x)));
        let (y0, y1) = (clampc(p.y.min(q.y)), clampc(p.y.max(q.y)));
        for cy in y0..=y1 {
            for cx in x0..=x1 {
                buckets[cy * ncell + cx].push(ei as u32);
            }
        }
    }

    let mut tested = std::collections::HashSet::new();
    for bucket in &buckets {
        for (k, &ei) in bucket.iter().enumerate() {
            for &ej in &bucket[k + 1..] {
                let (lo, hi) = (ei.min(ej), ei.max(ej));
                if !tested.insert((lo, hi)) {
                    continue;
                }
                let e1 = edges[lo as usize];
                let e2 = edges[hi as usize];
                if e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v {
                    continue;
                }
                let (a, b) = (net.position(e1.u), net.position(e1.v));
                let (c, d) = (net.position(e2.u), net.position(e2.v));
                if let Some((t1, t2, x)) = proper_crossing(a, b, c, d) {
                    let j = out.add_vertex(x, VertexKind::Junction);
                    out.cut_edge(lo as usize, t1, j);
                    out.cut_edge(hi as usize, t2, j);
                }
            }
        }
    }

    out.finish(net, net.family().clone())
}

/// Clip the infinite line `anchor + t * dir` to the window; returns the
/// chord endpoints ordered by `t`, or None when the line misses.
fn clip_line(anchor: Point, dir: (f64, f64), window: Window) -> Option<(Point, Point)> {
    let side = window.side();
    let mut t0 = f64::NEG_INFINITY;
    let mut t1 = f64::INFINITY;
    for (p, q) in [(-dir.0, anchor.x), (dir.0, side - anchor.x), (-dir.1, anchor.y), (dir.1, side - anchor.y)] {
        if p.abs() < 1e-15 {
            if q < 0.0 {
                return None;
            }
            continue;
        }
        let r = q / p;
        if p < 0.0 {
            t0 = t0.max(r);
        } else {
            t1 = t1.min(r);
        }
    }
    if t0 >= t1 {
        return None;
    }
    let at = |t: f64| {
        Point::new(
            (anchor.x + t * dir.0).clamp(0.0, side),
            (anchor.y + t * dir.1).clamp(0.0, side),
        )
    };
    Some((at(t0), at(t1)))
}

/// Strict interior crossing of segments (a,b) and (c,d); returns the
/// parameters along each segment and the intersection point. Endpoint
/// touches and collinear overlaps report None.
fn proper_crossing(a: Point, b: Point, c: Point, d: Point) -> Option<(f64, f64, Point)> {
    let ca = Coord { x: a.x, y: a.y };
    let cb = Coord { x: b.x, y: b.y };
    let cc = Coord { x: c.x, y: c.y };
    let cd = Coord { x: d.x, y: d.y };
    let d1 = orient2d(cc, cd, ca);
    let d2 = orient2d(cc, cd, cb);
    let d3 = orient2d(ca, cb, cc);
    let d4 = orient2d(ca, cb, cd);
    if d1 == 0.0 || d2 == 0.0 || d3 == 0.0 || d4 == 0.0 {
        return None;
    }
    if (d1 > 0.0) == (d2 > 0.0) || (d3 > 0.0) == (d4 > 0.0) {
        return None;
    }
    let r = (b.x - a.x, b.y - a.y);
    let s = (d.x - c.x, d.y - c.y);
    let denom = r.0 * s.1 - r.1 * s.0;
    let qp = (c.x - a.x, c.y - a.y);
    let t = (qp.0 * s.1 - qp.1 * s.0) / denom;
    let u = (qp.0 * r.1 - qp.1 * r.0) / denom;
    let x = Point::new(a.x + t * r.0, a.y + t * r.1);
    Some((t, u, x))
}

/// Accumulates vertex additions and edge cuts over a base network, then
/// re-emits the full edge list.
struct Rebuild {
    vertices: Vec<Vertex>,
    cuts: Vec<Vec<(f64, u32)>>,
    extra: Vec<(u32, u32)>,
}

impl Rebuild {
    fn from(net: &Network) -> Self {
        Rebuild {
            vertices: net.vertices().to_vec(),
            cuts: vec![Vec::new(); net.edges().len()],
            extra: Vec::new(),
        }
    }

    fn add_vertex(&mut self, pos: Point, kind: VertexKind) -> u32 {
        let id = self.vertices.len() as u32;
        self.vertices.push(Vertex { pos, kind, city_id: None });
        id
    }

    fn cut_edge(&mut self, edge: usize, t: f64, vertex: u32) {
        self.cuts[edge].push((t, vertex));
    }

    fn add_edge(&mut self, u: u32, v: u32) {
        self.extra.push((u, v));
    }

    fn finish(mut self, base: &Network, family: FamilyTag) -> Network {
        let mut edges: Vec<Edge> = Vec::with_capacity(base.edges().len() + self.extra.len());
        let mut push = |vertices: &[Vertex], u: u32, v: u32| {
            let length = vertices[u as usize].pos.dist(vertices[v as usize].pos);
            edges.push(Edge { u, v, length });
        };
        for (ei, e) in base.edges().iter().enumerate() {
            let cuts = &mut self.cuts[ei];
            if cuts.is_empty() {
                push(&self.vertices, e.u, e.v);
            } else {
                cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
                let mut prev = e.u;
                for &(_, v) in cuts.iter() {
                    push(&self.vertices, prev, v);
                    prev = v;
                }
                push(&self.vertices, prev, e.v);
            }
        }
        for &(u, v) in &self.extra {
            push(&self.vertices, u, v);
        }
        Network::from_parts(
            self.vertices,
            edges,
            base.window(),
            base.n_cities() as u32,
            family,
            base.source(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_gabriel, build_mst};
    use crate::geometry::{sample_finite_model, Model, PointConfig};

    #[test]
    fn zero_intensity_returns_base() {
        let cfg = sample_finite_model(50, 1).unwrap();
        let mst = build_mst(&cfg).unwrap();
        let same = overlay_line_process(&mst, 0.0, 9).unwrap();
        assert_eq!(same.edges().len(), mst.edges().len());
        assert_eq!(same.vertices().len(), mst.vertices().len());
    }

    #[test]
    fn horizontal_clip_spans_the_window() {
        let w = crate::geometry::Window::new(10.0).unwrap();
        let (a, b) = clip_line(Point::new(5.0, 3.0), (1.0, 0.0), w).unwrap();
        assert!((a.x, a.y) == (0.0, 3.0) && (b.x, b.y) == (10.0, 3.0));
        // A line past the corners misses the window.
        assert!(clip_line(Point::new(5.0, 12.0), (1.0, 0.0), w).is_none());
    }

    #[test]
    fn chords_form_anchored_chains() {
        // Base with one city and no edges: every chord becomes a polyline
        // between two boundary anchors, threaded through its line-line
        // junctions. So edges = chords + 2 * junctions, anchors = 2 * chords.
        let cfg = sample_finite_model(1, 2).unwrap();
        let base = Network::builder(&cfg, FamilyTag::new("empty")).finish();
        let mut seen_chord = false;
        for seed in 0..20 {
            let net = overlay_line_process(&base, 2.0, seed).unwrap();
            let anchors = net
                .vertices()
                .iter()
                .filter(|v| v.kind == VertexKind::BoundaryAnchor)
                .count();
            assert_eq!(anchors % 2, 0);
            let chords = anchors / 2;
            seen_chord |= chords > 0;
            assert_eq!(net.edges().len(), chords + 2 * net_junctions(&net));
            let w = net.window();
            for v in net.vertices() {
                if v.kind == VertexKind::BoundaryAnchor {
                    let on_boundary = v.pos.x.min(v.pos.y) < 1e-9
                        || v.pos.x.max(v.pos.y) > w.side() - 1e-9;
                    assert!(on_boundary, "anchor off the boundary: {:?}", v.pos);
                }
            }
        }
        assert!(seen_chord);
    }

    fn net_junctions(net: &Network) -> usize {
        net.vertices().iter().filter(|v| v.kind == VertexKind::Junction).count()
    }

    #[test]
    fn overlay_preserves_base_length_and_connectivity() {
        let cfg = sample_finite_model(200, 3).unwrap();
        let mst = build_mst(&cfg).unwrap();
        let base_len = mst.total_length();
        let over = overlay_line_process(&mst, 0.4, 11).unwrap();
        assert!(over.total_length() > base_len);
        assert!(over.is_connected_over_cities());

        let again = overlay_line_process(&mst, 0.4, 11).unwrap();
        assert_eq!(again.edges().len(), over.edges().len());
        assert!((again.total_length() - over.total_length()).abs() < 1e-12);
    }

    #[test]
    fn planarize_two_crossing_segments() {
        let cfg = PointConfig::from_parts(
            crate::geometry::Window::new(1.0).unwrap(),
            vec![
                Point::new(0.1, 0.1),
                Point::new(0.9, 0.9),
                Point::new(0.1, 0.9),
                Point::new(0.9, 0.1),
            ],
            0,
            Model::FiniteUniform,
        );
        let mut b = Network::builder(&cfg, FamilyTag::new("cross"));
        b.add_edge(0, 1);
        b.add_edge(2, 3);
        let net = b.finish();
        let total = net.total_length();
        let planar = planarize(&net);
        assert_eq!(planar.edges().len(), 4);
        assert_eq!(net_junctions(&planar), 1);
        assert!((planar.total_length() - total).abs() < 1e-9);

        // Idempotent.
        let twice = planarize(&planar);
        assert_eq!(twice.edges().len(), 4);
        assert_eq!(net_junctions(&twice), 1);
    }

    #[test]
    fn planarize_leaves_gabriel_untouched() {
        let cfg = sample_finite_model(150, 4).unwrap();
        let g = build_gabriel(&cfg).unwrap();
        let p = planarize(&g);
        assert_eq!(p.edges().len(), g.edges().len());
        assert_eq!(p.vertices().len(), g.vertices().len());
    }
}
