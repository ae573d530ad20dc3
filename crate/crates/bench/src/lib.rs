//! Shared workloads for the benchmarks.

use zdg_core::{
    build_adjacency, class_partition, factorize, AdjacencyMatrix, ClassStructure, Convention,
    DEFAULT_DENSE_CAP,
};

/// Moduli spanning the three families at increasing vertex counts.
pub const MODULI: [u64; 5] = [27, 125, 300, 343, 1000];

pub fn partition(n: u64) -> ClassStructure {
    class_partition(&factorize(n).expect("valid modulus")).expect("has zero divisors")
}

pub fn adjacency(n: u64) -> AdjacencyMatrix {
    build_adjacency(&partition(n), Convention::PaperLoops, DEFAULT_DENSE_CAP).expect("under cap")
}
