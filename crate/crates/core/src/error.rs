use thiserror::Error;

use crate::berge::BergeCycleWitness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("hyperedges[{hyperedge}]: vertex {vertex} out of range for n = {n}")]
    HyperedgeVertexOutOfRange { hyperedge: usize, vertex: usize, n: usize },

    #[error("hyperedges[{hyperedge}]: vertex {vertex} listed more than once")]
    RepeatedVertex { hyperedge: usize, vertex: usize },

    #[error("invalid edge {0}-{1}: loops are not allowed")]
    Loop(usize, usize),

    #[error("vertex {0} lies in both parts of a bipartite graph")]
    PartsOverlap(usize),

    #[error("decomposition of hyperedge {0} is not a set of disjoint triangles and edges with |h| - 3 edges")]
    InvalidDecomposition(usize),

    #[error("degree statistics are undefined for a graph with no vertices")]
    EmptyGraph,

    #[error("cycle length must be at least 2, got {0}")]
    CycleLength(usize),

    #[error("K_{{s,t}} search needs 1 <= s <= t, got s = {s}, t = {t}")]
    BicliqueShape { s: usize, t: usize },

    #[error("instance too large for exhaustive oracle: {vertices} vertices, {hyperedges} hyperedges (limit {limit} each)")]
    OracleLimit {
        vertices: usize,
        hyperedges: usize,
        limit: usize,
    },

    #[error("hypergraph contains a Berge-C4: {0}")]
    NotBergeC4Free(BergeCycleWitness),

    #[error("vertex {vertex} is not a neighbour of {center}")]
    NotNeighbour { center: usize, vertex: usize },

    #[error("the two triples must be disjoint and avoid the centre vertex")]
    TriplesOverlap,

    #[error("vertices {first} and {second} share the colour {color}")]
    SharedColor {
        first: usize,
        second: usize,
        color: usize,
    },

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("n = {0} is too small: the smallest construction needs 42 vertices")]
    ConstructionTooSmall(usize),

    #[error("exact search is guarded to 4 <= n <= 7 (got {0}); pass an explicit override")]
    SearchGuard(usize),

    #[error("sample size {sample} exceeds vertex count {n}")]
    SampleTooLarge { sample: usize, n: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
