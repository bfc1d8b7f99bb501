//! Compact routing in visibility graphs of polygonal domains.
//!
//! Every vertex stores a short table of cyclic label intervals, one per cone
//! of its inner angle and boundary, and forwards packets by table lookup.
//! Routes stay within a `1 + epsilon` factor of the geodesic distance.
//!
//! The core is generic over the coordinate type; [`Scalar`] is implemented
//! for `f32` and `f64`. The aliases at the crate root fix it to `f64`.

pub mod cones;
pub mod domain;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod router;
pub mod scalar;
pub mod shortest_paths;
pub mod tables;
pub mod visibility;
pub mod warning;

pub use cones::{build_fan, cone_count, ConeFan};
pub use domain::{
    parse_domain, serialize_domain, validate, Boundary, BoundaryKind, ValidateOptions, ValidationReport, VertexLabel,
};
pub use error::{Error, Result};
pub use geometry::Point;
pub use router::{route_step, RoutingScheme, RoutingTrace};
pub use scalar::Scalar;
pub use shortest_paths::{shortest_path_tree, ShortestPathTree};
pub use tables::{build_all_tables, parse_tables, serialize_tables, CompiledTables, RoutingTable, TableEntry, TablesDocument};
pub use visibility::{build_visibility_graph, VisibilityGraph};
pub use warning::Warning;

pub type Point64 = geometry::Point<f64>;
pub type Point32 = geometry::Point<f32>;
pub type Domain64 = domain::PolygonalDomain<f64>;
pub type Domain32 = domain::PolygonalDomain<f32>;
pub type Graph64 = visibility::VisibilityGraph<f64>;
pub type Tree64 = shortest_paths::ShortestPathTree<f64>;
pub type Fan64 = cones::ConeFan<f64>;
pub type Scheme64 = router::RoutingScheme<f64>;
pub type Trace64 = router::RoutingTrace<f64>;

pub use domain::PolygonalDomain;
