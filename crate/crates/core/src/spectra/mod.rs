//! Adjacency spectra and graph energy.
//!
//! Two independent routes produce the nonzero spectrum: Jacobi on the full
//! dense adjacency matrix, and Jacobi on the k×k class-reduced matrix.

mod closed;
mod jacobi;
mod reduced;

use serde::Serialize;

pub use closed::{
    closed_eigenvalues_p3, energy_closed_p3, quartic_p2q, quartic_verdict, verify_quartic,
    QuarticCheck, QuarticCoefficients, QuarticVariant,
};
pub use jacobi::{jacobi_eigenvalues, DEFAULT_TOLERANCE, MAX_SWEEPS};
pub use reduced::{reduced_class_matrix, ReducedClassMatrix};

use crate::error::Result;
use crate::graph::{build_adjacency, Convention};
use crate::zmod::ClassStructure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMode {
    FullDense,
    ClassReduced,
}

/// `1e-7 · max(1, max |λ|)`.
pub fn zero_threshold(eigenvalues: &[f64]) -> f64 {
    let largest = eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    1e-7 * largest.max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    /// Nonzero eigenvalues, descending.
    pub nonzero: Vec<f64>,
    pub zero_multiplicity: usize,
    pub energy: f64,
    pub source: SpectrumMode,
    /// Every eigenvalue the solver returned, ascending.
    pub raw: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<ReducedClassMatrix>,
}

impl Spectrum {
    /// Sum of all solver eigenvalues (the trace for a full dense solve).
    pub fn raw_sum(&self) -> f64 {
        self.raw.iter().sum()
    }

    pub fn raw_sum_of_squares(&self) -> f64 {
        self.raw.iter().map(|v| v * v).sum()
    }
}

fn split_nonzero(eigenvalues: &[f64]) -> Vec<f64> {
    let threshold = zero_threshold(eigenvalues);
    let mut nonzero: Vec<f64> = eigenvalues
        .iter()
        .copied()
        .filter(|v| v.abs() > threshold)
        .collect();
    nonzero.sort_by(|a, b| b.total_cmp(a));
    nonzero
}

/// Spectrum of Γ[Z_n] under `convention`.
///
/// `FullDense` needs the vertex count within `dense_cap`; `ClassReduced`
/// works at any size.
pub fn spectrum(
    cs: &ClassStructure,
    convention: Convention,
    mode: SpectrumMode,
    dense_cap: usize,
) -> Result<Spectrum> {
    let total = cs.total_vertices();
    match mode {
        SpectrumMode::FullDense => {
            let a = build_adjacency(cs, convention, dense_cap)?;
            let raw = jacobi_eigenvalues(&a.to_f64(), a.order(), DEFAULT_TOLERANCE)?;
            let nonzero = split_nonzero(&raw);
            Ok(Spectrum {
                zero_multiplicity: total - nonzero.len(),
                energy: nonzero.iter().map(|v| v.abs()).sum(),
                nonzero,
                source: mode,
                raw,
                reduced: None,
            })
        }
        SpectrumMode::ClassReduced => {
            let r = reduced_class_matrix(cs, convention);
            let raw = jacobi_eigenvalues(&r.entries, r.order, DEFAULT_TOLERANCE)?;
            let mut nonzero = split_nonzero(&raw);
            nonzero.extend(std::iter::repeat_n(-1.0, r.extra_minus_one));
            nonzero.sort_by(|a, b| b.total_cmp(a));
            Ok(Spectrum {
                zero_multiplicity: total - nonzero.len(),
                energy: nonzero.iter().map(|v| v.abs()).sum(),
                nonzero,
                source: mode,
                raw,
                reduced: Some(r),
            })
        }
    }
}
