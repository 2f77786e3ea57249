//! Incremental Delaunay triangulation (Bowyer-Watson) with exact
//! orientation/in-circle predicates.
//!
//! A finite super-triangle far outside the window encloses the cities;
//! with exact predicates the only error this can introduce is the loss of
//! a hull edge whose every witness circle has radius comparable to the
//! super-triangle distance (three hull cities collinear to ~1e-10 of the
//! window scale), which general position makes negligible. Cities are
//! inserted in a serpentine band order so the walk-based point location
//! stays short.

use robust::{incircle, orient2d, Coord};

use crate::error::{invalid, Error};
use crate::geometry::{Point, PointConfig};
use crate::network::{FamilyTag, Network};
use crate::Result;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Tri {
    v: [u32; 3],
    /// Neighbor opposite v[k], sharing edge (v[k+1], v[k+2]).
    nb: [u32; 3],
}

struct Mesh<'a> {
    pts: &'a [Point],
    super_pts: [Point; 3],
    tris: Vec<Tri>,
    alive: Vec<bool>,
    mark: Vec<u32>,
    stamp: u32,
    free: Vec<u32>,
    last: u32,
}

impl<'a> Mesh<'a> {
    fn new(pts: &'a [Point], super_pts: [Point; 3]) -> Self {
        let n = pts.len() as u32;
        let root = Tri { v: [n, n + 1, n + 2], nb: [NONE, NONE, NONE] };
        Mesh {
            pts,
            super_pts,
            tris: vec![root],
            alive: vec![true],
            mark: vec![0],
            stamp: 0,
            free: Vec::new(),
            last: 0,
        }
    }

    fn coord(&self, v: u32) -> Coord<f64> {
        let n = self.pts.len() as u32;
        let p = if v < n { self.pts[v as usize] } else { self.super_pts[(v - n) as usize] };
        Coord { x: p.x, y: p.y }
    }

    fn in_circumcircle(&self, t: u32, p: Coord<f64>) -> bool {
        let tri = self.tris[t as usize];
        incircle(self.coord(tri.v[0]), self.coord(tri.v[1]), self.coord(tri.v[2]), p) > 0.0
    }

    fn alloc(&mut self, tri: Tri) -> u32 {
        if let Some(i) = self.free.pop() {
            self.tris[i as usize] = tri;
            self.alive[i as usize] = true;
            i
        } else {
            self.tris.push(tri);
            self.alive.push(true);
            self.mark.push(0);
            (self.tris.len() - 1) as u32
        }
    }

    fn replace_neighbor(&mut self, t: u32, old: u32, new: u32) {
        if t == NONE {
            return;
        }
        let tri = &mut self.tris[t as usize];
        for k in 0..3 {
            if tri.nb[k] == old {
                tri.nb[k] = new;
                return;
            }
        }
        debug_assert!(false, "neighbor link missing");
    }

    /// Visibility walk from the last created triangle; terminates on a
    /// Delaunay triangulation when the predicates are exact.
    fn locate(&self, p: Coord<f64>) -> u32 {
        let mut cur = self.last;
        loop {
            debug_assert!(self.alive[cur as usize]);
            let tri = self.tris[cur as usize];
            let mut moved = false;
            for k in 0..3 {
                let a = self.coord(tri.v[(k + 1) % 3]);
                let b = self.coord(tri.v[(k + 2) % 3]);
                if orient2d(a, b, p) < 0.0 {
                    debug_assert!(tri.nb[k] != NONE, "walked out of the super-triangle");
                    cur = tri.nb[k];
                    moved = true;
                    break;
                }
            }
            if !moved {
                return cur;
            }
        }
    }

    fn insert(&mut self, v: u32) {
        let p = self.coord(v);
        let seed = self.locate(p);

        // Cavity: triangles whose circumcircle strictly contains p. An
        // exactly cocircular quadruple would make the diagonal choice
        // arbitrary; general position keeps that measure-zero.
        self.stamp += 1;
        let stamp = self.stamp;
        self.mark[seed as usize] = stamp;
        let mut bad = vec![seed];
        let mut queue = vec![seed];
        let mut boundary: Vec<(u32, u32, u32, u32)> = Vec::new(); // (a, b, outer, inner)
        while let Some(t) = queue.pop() {
            let tri = self.tris[t as usize];
            for k in 0..3 {
                let nb = tri.nb[k];
                let a = tri.v[(k + 1) % 3];
                let b = tri.v[(k + 2) % 3];
                if nb == NONE {
                    boundary.push((a, b, NONE, t));
                } else if self.mark[nb as usize] != stamp {
                    if self.in_circumcircle(nb, p) {
                        self.mark[nb as usize] = stamp;
                        bad.push(nb);
                        queue.push(nb);
                    } else {
                        boundary.push((a, b, nb, t));
                    }
                }
            }
        }
        for &t in &bad {
            self.alive[t as usize] = false;
            self.free.push(t);
        }

        // Fan p to the cavity boundary. The boundary edge (a, b) keeps the
        // cavity interior on its left, so [v, a, b] is counterclockwise.
        let mut open: std::collections::HashMap<u32, (u32, usize)> =
            std::collections::HashMap::with_capacity(boundary.len());
        for &(a, b, outer, inner) in &boundary {
            let t = self.alloc(Tri { v: [v, a, b], nb: [outer, NONE, NONE] });
            self.replace_neighbor(outer, inner, t);
            // Inner edge (v, b) sits opposite slot 1, (v, a) opposite slot 2.
            for (other, slot) in [(b, 1usize), (a, 2usize)] {
                match open.remove(&other) {
                    Some((t2, slot2)) => {
                        self.tris[t as usize].nb[slot] = t2;
                        self.tris[t2 as usize].nb[slot2] = t;
                    }
                    None => {
                        open.insert(other, (t, slot));
                    }
                }
            }
            self.last = t;
        }
        debug_assert!(open.is_empty(), "cavity boundary not closed");
    }
}

/// Delaunay triangulation over the cities: planar, connected, contains the
/// MST. Errors on fewer than three cities or an all-collinear configuration.
pub fn build_delaunay(config: &PointConfig) -> Result<Network> {
    let pts = config.points();
    let n = pts.len();
    if n < 3 {
        return Err(invalid(format!("delaunay needs n >= 3, got {n}")));
    }
    if all_collinear(pts) {
        return Err(Error::DegenerateConfiguration);
    }

    let side = config.window().side();
    let c = config.window().center();
    let m = 4e9 * (side + 1.0);
    let super_pts = [
        Point::new(c.x, c.y + 2.0 * m),
        Point::new(c.x - 2.0 * m, c.y - 2.0 * m),
        Point::new(c.x + 2.0 * m, c.y - 2.0 * m),
    ];

    let mut mesh = Mesh::new(pts, super_pts);
    for v in insertion_order(config) {
        mesh.insert(v);
    }

    let mut pairs = std::collections::BTreeSet::new();
    let nn = n as u32;
    for (t, tri) in mesh.tris.iter().enumerate() {
        if !mesh.alive[t] {
            continue;
        }
        for k in 0..3 {
            let a = tri.v[k];
            let b = tri.v[(k + 1) % 3];
            if a < nn && b < nn {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }

    let mut b = Network::builder(config, FamilyTag::new("delaunay"));
    for (u, v) in pairs {
        b.add_edge(u, v);
    }
    Ok(b.finish())
}

fn all_collinear(pts: &[Point]) -> bool {
    let a = Coord { x: pts[0].x, y: pts[0].y };
    let b = Coord { x: pts[1].x, y: pts[1].y };
    pts[2..].iter().all(|p| orient2d(a, b, Coord { x: p.x, y: p.y }) == 0.0)
}

/// Serpentine band order: horizontal bands bottom to top, x alternating.
fn insertion_order(config: &PointConfig) -> Vec<u32> {
    let pts = config.points();
    let n = pts.len();
    let bands = ((n as f64).sqrt() / 2.0).ceil().max(1.0);
    let bh = config.window().side() / bands;
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by_key(|&i| {
        let p = pts[i as usize];
        let band = ((p.y / bh) as i64).min(bands as i64 - 1);
        let xb = p.x.to_bits();
        (band, if band % 2 == 0 { xb } else { !xb })
    });
    order
}
