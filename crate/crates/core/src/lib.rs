//! Connected spatial networks over random points.
//!
//! Samples city configurations (uniform or Poisson), builds the classic
//! connected networks on them (MST, beta-skeletons including Gabriel and
//! relative neighborhood, Delaunay, power-weighted networks, the
//! Hammersley network), and measures normalized length, degree, and
//! route-length efficiency statistics, with a seeded Monte Carlo
//! experiment harness on top.

pub mod analytics;
pub mod builders;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod hammersley;
pub mod io;
pub mod metrics;
pub mod network;
pub mod quad;
pub mod seeds;
pub mod templates;

pub use error::{Error, Result};
pub use geometry::{
    lens_area, sample_finite_model, sample_poisson, GridIndex, Model, Point, PointConfig, Window,
};
pub use metrics::{
    avg_degree, normalized_length, normalized_length_inner, rho_profile, route_lengths, summarize,
    NetSummary, ProfileParams, RhoProfile,
};
pub use network::{Edge, FamilyTag, Network, SourceMeta, Vertex, VertexKind};
pub use templates::{beta_template, template_area, template_contains, Template};
