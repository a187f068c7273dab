//! Star topology on the bare representation `B(G)` of finite simple graphs.

pub mod caps;
pub mod chromatic;
pub mod error;
pub mod factor;
pub mod graph;
pub mod io;
pub mod maps;
pub mod oracle;
pub mod topology;

pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::{named_graph, Edge, Graph, NamedGraph, VertexId, VertexMap};
pub use topology::{BarePoint, PointSet};
