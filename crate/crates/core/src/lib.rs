//! Zero-divisor graphs Γ[Z_n]: construction, block structure, spectra,
//! energy and Wiener index, each computed by a brute-force route and checked
//! against the closed forms known for n = p³ and n = p²q.

pub mod error;
pub mod formula;
pub mod graph;
pub mod real;
pub mod report;
pub mod spectra;
pub mod sweep;
pub mod wiener;
pub mod zmod;

use serde::Serialize;

pub use error::{Error, Result};
pub use graph::{
    adjacency_oracle, build_adjacency, check_block_form, export, AdjacencyMatrix, BlockKind,
    BlockSpec, Convention, ExportFormat, DEFAULT_DENSE_CAP,
};
pub use real::Real;
pub use report::{analyze, AnalysisReport, Settings};
pub use spectra::{spectrum, Spectrum, SpectrumMode};
pub use sweep::{run_sweep, FormFilter, SweepConfig, SweepSummary};
pub use wiener::{bfs_distances, wiener_index, DistanceMatrix, WienerReport};
pub use zmod::{class_partition, factorize, zero_divisors, ClassStructure, FactoredModulus, Form};

/// Outcome of comparing a closed form against a computed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch,
}

impl Verdict {
    pub fn from_bool(matches: bool) -> Self {
        if matches {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    }

    pub fn is_match(self) -> bool {
        self == Verdict::Match
    }
}
