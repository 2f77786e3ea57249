//! Geometric networks: vertices with positions, undirected edges carrying
//! Euclidean lengths.
//!
//! City vertices always occupy indices `0..n_cities` in configuration
//! order; junctions and boundary anchors (from line overlays and
//! planarization) follow. A network is immutable once built.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{Model, Point, PointConfig, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexKind {
    #[serde(rename = "city")]
    City,
    #[serde(rename = "junction")]
    Junction,
    #[serde(rename = "boundary-anchor")]
    BoundaryAnchor,
}

impl VertexKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VertexKind::City => "city",
            VertexKind::Junction => "junction",
            VertexKind::BoundaryAnchor => "boundary-anchor",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub pos: Point,
    pub kind: VertexKind,
    pub city_id: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub length: f64,
}

/// Family label plus its numeric parameters, e.g. `beta-skeleton {beta: 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyTag {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

impl FamilyTag {
    pub fn new(name: &str) -> Self {
        FamilyTag { name: name.to_string(), params: BTreeMap::new() }
    }

    pub fn with(name: &str, params: &[(&str, f64)]) -> Self {
        FamilyTag {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.name.clone()
        } else {
            let ps: Vec<String> =
                self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{}({})", self.name, ps.join(","))
        }
    }
}

/// Provenance of the cities a network was built over.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceMeta {
    pub model: Model,
    pub n: usize,
    pub side: f64,
    pub seed: u64,
}

impl SourceMeta {
    pub fn of(config: &PointConfig) -> Self {
        SourceMeta {
            model: config.model(),
            n: config.n(),
            side: config.window().side(),
            seed: config.seed(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Network {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// Per-vertex list of (neighbor vertex, edge index).
    adjacency: Vec<Vec<(u32, u32)>>,
    window: Window,
    n_cities: u32,
    family: FamilyTag,
    source: SourceMeta,
}

impl Network {
    /// Start a network over the cities of `config`; edges are added with
    /// [`NetworkBuilder::add_edge`].
    pub fn builder(config: &PointConfig, family: FamilyTag) -> NetworkBuilder {
        let vertices: Vec<Vertex> = config
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| Vertex { pos: *p, kind: VertexKind::City, city_id: Some(i as u32) })
            .collect();
        NetworkBuilder {
            vertices,
            edges: Vec::new(),
            window: config.window(),
            n_cities: config.n() as u32,
            family,
            source: SourceMeta::of(config),
        }
    }

    pub(crate) fn from_parts(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        window: Window,
        n_cities: u32,
        family: FamilyTag,
        source: SourceMeta,
    ) -> Self {
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (idx, e) in edges.iter().enumerate() {
            debug_assert_ne!(e.u, e.v, "self-loop");
            debug_assert!(
                (e.length - vertices[e.u as usize].pos.dist(vertices[e.v as usize].pos)).abs()
                    < 1e-9,
                "edge length disagrees with endpoint distance"
            );
            adjacency[e.u as usize].push((e.v, idx as u32));
            adjacency[e.v as usize].push((e.u, idx as u32));
        }
        Network { vertices, edges, adjacency, window, n_cities, family, source }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn n_cities(&self) -> usize {
        self.n_cities as usize
    }

    pub fn family(&self) -> &FamilyTag {
        &self.family
    }

    pub fn source(&self) -> SourceMeta {
        self.source
    }

    pub fn position(&self, v: u32) -> Point {
        self.vertices[v as usize].pos
    }

    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// City-to-city edges as sorted index pairs; junction-mediated edges
    /// are excluded. Builders that produce no junctions (all families
    /// except overlays/planarization) are fully described by this set.
    pub fn city_edge_set(&self) -> std::collections::BTreeSet<(u32, u32)> {
        self.edges
            .iter()
            .filter(|e| (e.u as usize) < self.n_cities as usize && (e.v as usize) < self.n_cities as usize)
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect()
    }

    /// True iff every city lies in one connected component.
    pub fn is_connected_over_cities(&self) -> bool {
        if self.n_cities == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut cities_seen = 1usize;
        while let Some(v) = stack.pop() {
            for &(w, _) in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    if w < self.n_cities {
                        cities_seen += 1;
                    }
                    stack.push(w);
                }
            }
        }
        cities_seen == self.n_cities as usize
    }

    pub fn with_family(mut self, family: FamilyTag) -> Self {
        self.family = family;
        self
    }
}

/// Accumulates edges for a network under construction.
pub struct NetworkBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    window: Window,
    n_cities: u32,
    family: FamilyTag,
    source: SourceMeta,
}

impl NetworkBuilder {
    pub fn add_edge(&mut self, u: u32, v: u32) {
        debug_assert_ne!(u, v);
        let length = self.vertices[u as usize].pos.dist(self.vertices[v as usize].pos);
        self.edges.push(Edge { u, v, length });
    }

    pub fn add_vertex(&mut self, pos: Point, kind: VertexKind) -> u32 {
        let id = self.vertices.len() as u32;
        self.vertices.push(Vertex { pos, kind, city_id: None });
        id
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn finish(self) -> Network {
        Network::from_parts(
            self.vertices,
            self.edges,
            self.window,
            self.n_cities,
            self.family,
            self.source,
        )
    }
}
