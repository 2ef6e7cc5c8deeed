//! Construction, detection and verification of Berge-C4-free hypergraphs.
//!
//! * [`hypergraph`]: hypergraphs, graphs, coloured multigraphs, digraphs.
//! * [`berge`]: Berge-cycle detection with witnesses and an exhaustive oracle.
//! * [`subgraph`]: `K_{s,t}` and small directed-pattern detectors.
//! * [`embedding`]: the coloured edge embedding, per-vertex auxiliary graphs
//!   and the structural checks run on them.
//! * [`constructions`]: projective-plane incidence graphs and their blow-ups.
//! * [`search`]: exact extremal values for small vertex counts.
//! * [`cli`]: the `berge` command-line tool.

pub mod berge;
pub mod cli;
pub mod constructions;
pub mod embedding;
pub mod error;
pub mod hypergraph;
pub mod random;
pub mod search;
pub mod subgraph;

pub use berge::{find_berge_cycle, is_berge_c4_free, naive_berge_oracle, BergeCycleWitness};
pub use error::{Error, Result};
pub use hypergraph::{BipartiteGraph, ColoredGraph, Digraph, Graph, HyperedgeId, Hypergraph, Vertex};
