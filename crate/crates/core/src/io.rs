//! File formats: point configurations (CSV + JSON sidecar), networks
//! (vertices.csv / edges.csv / manifest.json), profiles and summaries.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! file read back yields bit-identical values and reruns produce
//! byte-identical files.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::geometry::{Model, Point, PointConfig, Window};
use crate::metrics::RhoProfile;
use crate::network::{Edge, FamilyTag, Network, SourceMeta, Vertex, VertexKind};
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

fn parse_err(path: &Path, msg: impl Into<String>) -> Error {
    Error::Parse { path: path.display().to_string(), msg: msg.into() }
}

/// Hex SHA-256 over the window, seed, model and point coordinates.
pub fn config_hash(config: &PointConfig) -> String {
    let mut h = Sha256::new();
    h.update(b"spatnet-config-v1");
    h.update(config.window().side().to_le_bits_bytes());
    h.update(config.seed().to_le_bytes());
    h.update([match config.model() {
        Model::FiniteUniform => 0u8,
        Model::Poisson => 1u8,
    }]);
    h.update((config.n() as u64).to_le_bytes());
    for p in config.points() {
        h.update(p.x.to_le_bits_bytes());
        h.update(p.y.to_le_bits_bytes());
    }
    hex(&h.finalize())
}

trait F64Bytes {
    fn to_le_bits_bytes(self) -> [u8; 8];
}

impl F64Bytes for f64 {
    fn to_le_bits_bytes(self) -> [u8; 8] {
        self.to_bits().to_le_bytes()
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct ConfigSidecar {
    schema: u32,
    model: Model,
    n: usize,
    side: f64,
    seed: u64,
}

/// Sidecar path for a points CSV: the same stem with extension `json`.
pub fn sidecar_path(csv: &Path) -> std::path::PathBuf {
    csv.with_extension("json")
}

/// Write `id,x,y` rows plus the JSON sidecar describing the model.
pub fn write_points(config: &PointConfig, csv: &Path) -> Result<()> {
    let mut out = String::from("id,x,y\n");
    for (i, p) in config.points().iter().enumerate() {
        out.push_str(&format!("{i},{},{}\n", p.x, p.y));
    }
    fs::write(csv, out)?;
    let sidecar = ConfigSidecar {
        schema: SCHEMA_VERSION,
        model: config.model(),
        n: config.n(),
        side: config.window().side(),
        seed: config.seed(),
    };
    let mut f = fs::File::create(sidecar_path(csv))?;
    writeln!(f, "{}", serde_json::to_string_pretty(&sidecar)?)?;
    Ok(())
}

/// Read a points CSV and its sidecar back into a configuration.
pub fn read_points(csv: &Path) -> Result<PointConfig> {
    let sidecar: ConfigSidecar =
        serde_json::from_str(&fs::read_to_string(sidecar_path(csv))?)?;
    let window = Window::new(sidecar.side)?;
    let body = fs::read_to_string(csv)?;
    let mut lines = body.lines();
    match lines.next() {
        Some("id,x,y") => {}
        other => return Err(parse_err(csv, format!("bad header {other:?}"))),
    }
    let mut points = Vec::with_capacity(sidecar.n);
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let id: usize = next_col(csv, &mut cols, lineno)?;
        let x: f64 = next_col(csv, &mut cols, lineno)?;
        let y: f64 = next_col(csv, &mut cols, lineno)?;
        if id != points.len() {
            return Err(parse_err(csv, format!("ids must be dense, got {id} at row {lineno}")));
        }
        let p = Point::new(x, y);
        if !window.contains(p) {
            return Err(parse_err(csv, format!("point {id} outside window")));
        }
        points.push(p);
    }
    if points.len() != sidecar.n {
        return Err(parse_err(csv, format!("sidecar n={} but {} rows", sidecar.n, points.len())));
    }
    Ok(PointConfig::from_parts(window, points, sidecar.seed, sidecar.model))
}

fn next_col<T: std::str::FromStr>(
    path: &Path,
    cols: &mut std::str::Split<'_, char>,
    lineno: usize,
) -> Result<T> {
    let raw = cols
        .next()
        .ok_or_else(|| parse_err(path, format!("missing column at row {lineno}")))?;
    raw.parse()
        .map_err(|_| parse_err(path, format!("bad value {raw:?} at row {lineno}")))
}

#[derive(Debug, Serialize, Deserialize)]
struct NetworkManifest {
    schema: u32,
    family: FamilyTag,
    source: SourceManifest,
}

#[derive(Debug, Serialize, Deserialize)]
struct SourceManifest {
    model: Model,
    n: usize,
    side: f64,
    seed: u64,
    hash: String,
}

/// Hash of the cities a network is built over, matching
/// [`config_hash`] of the generating configuration.
pub fn network_source_hash(net: &Network) -> String {
    let cities: Vec<Point> =
        (0..net.n_cities() as u32).map(|v| net.position(v)).collect();
    let cfg = PointConfig::from_parts(net.window(), cities, net.source().seed, net.source().model);
    config_hash(&cfg)
}

/// Write `vertices.csv`, `edges.csv` and `manifest.json` into `dir`.
pub fn write_network(net: &Network, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut v = String::from("id,x,y,kind,cityId\n");
    for (i, vert) in net.vertices().iter().enumerate() {
        let city = vert.city_id.map(|c| c.to_string()).unwrap_or_default();
        v.push_str(&format!(
            "{i},{},{},{},{city}\n",
            vert.pos.x,
            vert.pos.y,
            vert.kind.as_str()
        ));
    }
    fs::write(dir.join("vertices.csv"), v)?;

    let mut e = String::from("u,v,length\n");
    for edge in net.edges() {
        e.push_str(&format!("{},{},{}\n", edge.u, edge.v, edge.length));
    }
    fs::write(dir.join("edges.csv"), e)?;

    let manifest = NetworkManifest {
        schema: SCHEMA_VERSION,
        family: net.family().clone(),
        source: SourceManifest {
            model: net.source().model,
            n: net.source().n,
            side: net.source().side,
            seed: net.source().seed,
            hash: network_source_hash(net),
        },
    };
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(())
}

/// Read a network directory written by [`write_network`].
pub fn read_network(dir: &Path) -> Result<Network> {
    let manifest_path = dir.join("manifest.json");
    let manifest: NetworkManifest =
        serde_json::from_str(&fs::read_to_string(&manifest_path)?)?;
    let window = Window::new(manifest.source.side)?;

    let vpath = dir.join("vertices.csv");
    let body = fs::read_to_string(&vpath)?;
    let mut lines = body.lines();
    match lines.next() {
        Some("id,x,y,kind,cityId") => {}
        other => return Err(parse_err(&vpath, format!("bad header {other:?}"))),
    }
    let mut vertices: Vec<Vertex> = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 5 {
            return Err(parse_err(&vpath, format!("expected 5 columns at row {lineno}")));
        }
        let id: usize = cols[0]
            .parse()
            .map_err(|_| parse_err(&vpath, format!("bad id at row {lineno}")))?;
        if id != vertices.len() {
            return Err(parse_err(&vpath, "ids must be dense"));
        }
        let x: f64 = cols[1]
            .parse()
            .map_err(|_| parse_err(&vpath, format!("bad x at row {lineno}")))?;
        let y: f64 = cols[2]
            .parse()
            .map_err(|_| parse_err(&vpath, format!("bad y at row {lineno}")))?;
        let kind = match cols[3] {
            "city" => VertexKind::City,
            "junction" => VertexKind::Junction,
            "boundary-anchor" => VertexKind::BoundaryAnchor,
            other => return Err(parse_err(&vpath, format!("unknown kind {other:?}"))),
        };
        let city_id = if cols[4].is_empty() {
            None
        } else {
            Some(
                cols[4]
                    .parse()
                    .map_err(|_| parse_err(&vpath, format!("bad cityId at row {lineno}")))?,
            )
        };
        vertices.push(Vertex { pos: Point::new(x, y), kind, city_id });
    }
    let n_cities = vertices.iter().filter(|v| v.kind == VertexKind::City).count();
    for (i, v) in vertices.iter().enumerate().take(n_cities) {
        if v.kind != VertexKind::City || v.city_id != Some(i as u32) {
            return Err(parse_err(&vpath, "cities must form a dense prefix"));
        }
    }
    if n_cities != manifest.source.n {
        return Err(parse_err(&vpath, "city count disagrees with manifest"));
    }

    let epath = dir.join("edges.csv");
    let body = fs::read_to_string(&epath)?;
    let mut lines = body.lines();
    match lines.next() {
        Some("u,v,length") => {}
        other => return Err(parse_err(&epath, format!("bad header {other:?}"))),
    }
    let mut edges: Vec<Edge> = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let u: u32 = next_col(&epath, &mut cols, lineno)?;
        let v: u32 = next_col(&epath, &mut cols, lineno)?;
        let length: f64 = next_col(&epath, &mut cols, lineno)?;
        if u as usize >= vertices.len() || v as usize >= vertices.len() {
            return Err(parse_err(&epath, format!("edge endpoint out of range at row {lineno}")));
        }
        edges.push(Edge { u, v, length });
    }

    let source = SourceMeta {
        model: manifest.source.model,
        n: manifest.source.n,
        side: manifest.source.side,
        seed: manifest.source.seed,
    };
    Ok(Network::from_parts(
        vertices,
        edges,
        window,
        n_cities as u32,
        manifest.family,
        source,
    ))
}

/// `d_center,count,mean_ratio,max_ratio` rows; empty mean below the
/// qualification count, `inf` when a bin saw an unreachable pair.
pub fn rho_profile_csv(profile: &RhoProfile) -> String {
    let mut out = String::from("d_center,count,mean_ratio,max_ratio\n");
    for b in &profile.bins {
        let mean = b.mean_ratio.map(fmt_f64).unwrap_or_default();
        let max = b.max_ratio.map(fmt_f64).unwrap_or_default();
        out.push_str(&format!("{},{},{mean},{max}\n", b.center, b.count));
    }
    out
}

/// Shortest-round-trip float text, with `inf`/`nan` spelled out.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}
