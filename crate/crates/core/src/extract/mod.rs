//! Constructive extraction of bipartite clique minors and RB-bipartite
//! topological cliques.

pub mod compatible;
pub mod connector;
pub mod pipeline;
pub mod topological;

pub use compatible::{find_compatible_partition, greedy_compatible_partition, CompatiblePartition};
pub use connector::{build_projector, connect_pair, Connection, Projector};
pub use pipeline::{bipartite_minor_pipeline, PipelineReport};
pub use topological::{rb_topological_clique, TopologicalModel};
