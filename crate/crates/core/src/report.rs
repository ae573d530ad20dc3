//! Full analysis of a single modulus: structure, spectrum, Wiener index and
//! the verdict of every applicable closed form.

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::formula;
use crate::graph::{build_adjacency, check_block_form, BlockSpec, Convention, DEFAULT_DENSE_CAP};
use crate::real::{reals, Real};
use crate::spectra::{
    closed_eigenvalues_p3, energy_closed_p3, quartic_p2q, quartic_verdict, spectrum,
    QuarticVariant, Spectrum, SpectrumMode,
};
use crate::wiener::{wiener_report, WienerReport};
use crate::zmod::{class_partition, factorize, Form};
use crate::Verdict;

/// Absolute tolerance between the two spectrum routes.
pub const REDUCTION_TOLERANCE: f64 = 1e-8;
/// Trace identity tolerance, multiplied by N.
pub const TRACE_TOLERANCE: f64 = 1e-8;
/// Frobenius identity tolerance, multiplied by N².
pub const FROBENIUS_TOLERANCE: f64 = 1e-8;
/// Default closed-form tolerance.
pub const DEFAULT_FORMULA_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub convention: Convention,
    /// Closed-form tolerance: absolute for eigenvalues and energy, relative
    /// for quartic residuals.
    pub tol: f64,
    pub dense_cap: usize,
    pub timings: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            convention: Convention::PaperLoops,
            tol: DEFAULT_FORMULA_TOLERANCE,
            dense_cap: DEFAULT_DENSE_CAP,
            timings: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassSummary {
    pub divisor: u64,
    pub size: usize,
    pub looped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub source: SpectrumMode,
    pub nonzero: Vec<Real>,
    pub zero_multiplicity: usize,
    pub energy: Real,
}

impl From<&Spectrum> for SpectrumSummary {
    fn from(s: &Spectrum) -> Self {
        SpectrumSummary {
            source: s.source,
            nonzero: reals(&s.nonzero),
            zero_multiplicity: s.zero_multiplicity,
            energy: Real(s.energy),
        }
    }
}

/// Agreement between the class-reduced and full dense spectra, plus the
/// trace and Frobenius identities of the dense solve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseCrossCheck {
    pub nonzero_count_agrees: bool,
    pub max_abs_diff: Real,
    pub energy_diff: Real,
    pub trace_residual: Real,
    pub frobenius_residual: Real,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralFormula {
    pub formula_id: &'static str,
    pub verdict: Verdict,
    pub formula: Vec<Real>,
    pub max_residual: Real,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub partition_ms: Real,
    pub adjacency_ms: Real,
    pub spectrum_ms: Real,
    pub dense_ms: Real,
    pub wiener_ms: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub n: u64,
    pub form: Form,
    pub factors: Vec<(u64, u32)>,
    pub classes: Vec<ClassSummary>,
    pub vertices: usize,
    pub convention: Convention,
    /// `None` for general moduli or when the matrix is over the dense cap.
    pub block_form: Option<bool>,
    pub spectrum: SpectrumSummary,
    pub dense_check: Option<DenseCrossCheck>,
    pub spectral_formulas: Vec<SpectralFormula>,
    /// `None` when the matrix is over the dense cap.
    pub wiener: Option<WienerReport>,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Timings>,
}

impl AnalysisReport {
    /// Every `(formula_id, verdict)` in report order.
    pub fn verdicts(&self) -> Vec<(&'static str, Verdict)> {
        let mut out: Vec<_> = self
            .spectral_formulas
            .iter()
            .map(|f| (f.formula_id, f.verdict))
            .collect();
        if let Some(w) = &self.wiener {
            out.extend(w.closed_forms.iter().map(|f| (f.formula_id, f.verdict)));
        }
        out
    }

    pub fn any_mismatch(&self) -> bool {
        self.verdicts().iter().any(|(_, v)| !v.is_match())
    }

    /// Structure held and every formula outside the known-disagreeing set matched.
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
            && self
                .verdicts()
                .iter()
                .all(|(id, v)| v.is_match() || formula::EXPECTED_TO_DISAGREE.contains(id))
    }
}

fn elapsed_ms(start: Instant) -> Real {
    Real(start.elapsed().as_secs_f64() * 1e3)
}

fn cross_check(
    reduced: &Spectrum,
    dense: &Spectrum,
    trace: usize,
    ones: usize,
    order: usize,
) -> DenseCrossCheck {
    let nonzero_count_agrees = reduced.nonzero.len() == dense.nonzero.len();
    let max_abs_diff = if nonzero_count_agrees {
        reduced
            .nonzero
            .iter()
            .zip(&dense.nonzero)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let energy_diff = (reduced.energy - dense.energy).abs();
    let trace_residual = (dense.raw_sum() - trace as f64).abs();
    let frobenius_residual = (dense.raw_sum_of_squares() - ones as f64).abs();
    let n = order as f64;
    let holds = nonzero_count_agrees
        && max_abs_diff <= REDUCTION_TOLERANCE
        && energy_diff <= REDUCTION_TOLERANCE
        && trace_residual <= TRACE_TOLERANCE * n
        && frobenius_residual <= FROBENIUS_TOLERANCE * n * n;
    DenseCrossCheck {
        nonzero_count_agrees,
        max_abs_diff: Real(max_abs_diff),
        energy_diff: Real(energy_diff),
        trace_residual: Real(trace_residual),
        frobenius_residual: Real(frobenius_residual),
        holds,
    }
}

fn p3_formulas(p: u64, s: &Spectrum, tol: f64) -> Result<Vec<SpectralFormula>> {
    let (hi, lo) = closed_eigenvalues_p3(p)?;
    let pair_residual = match s.nonzero.as_slice() {
        [a, b] => (a - hi).abs().max((b - lo).abs()),
        _ => f64::INFINITY,
    };
    let energy = energy_closed_p3(p)?;
    let energy_residual = (s.energy - energy).abs();
    Ok(vec![
        SpectralFormula {
            formula_id: formula::EIGENVALUES_P3,
            verdict: Verdict::from_bool(pair_residual <= tol),
            formula: reals(&[hi, lo]),
            max_residual: Real(pair_residual),
        },
        SpectralFormula {
            formula_id: formula::ENERGY_P3,
            verdict: Verdict::from_bool(energy_residual <= tol),
            formula: reals(&[energy]),
            max_residual: Real(energy_residual),
        },
    ])
}

fn p2q_formulas(p: u64, q: u64, s: &Spectrum, tol: f64) -> Result<Vec<SpectralFormula>> {
    [
        QuarticVariant::ProofDerivation,
        QuarticVariant::StatementAsPrinted,
    ]
    .into_iter()
    .map(|variant| {
        let coeffs = quartic_p2q(p, q, variant)?;
        let check = quartic_verdict(&coeffs, s, tol);
        Ok(SpectralFormula {
            formula_id: variant.formula_id(),
            verdict: check.verdict,
            formula: reals(&coeffs.as_array()),
            max_residual: Real(check.max_residual),
        })
    })
    .collect()
}

/// Analyze Γ[Z_n].
///
/// The spectrum always comes from the class-reduced route; when the graph is
/// within the dense cap the full dense spectrum, block form and Wiener index
/// are computed too and cross-checked.
pub fn analyze(n: u64, settings: &Settings) -> Result<AnalysisReport> {
    let mut timings = Timings::default();

    let t = Instant::now();
    let modulus = factorize(n)?;
    let cs = class_partition(&modulus)?;
    timings.partition_ms = elapsed_ms(t);
    let form = modulus.form();
    let order = cs.total_vertices();
    let mut violations = Vec::new();

    let t = Instant::now();
    let reduced = spectrum(
        &cs,
        settings.convention,
        SpectrumMode::ClassReduced,
        settings.dense_cap,
    )?;
    timings.spectrum_ms = elapsed_ms(t);

    let t = Instant::now();
    let matrix = if order <= settings.dense_cap {
        Some(build_adjacency(
            &cs,
            settings.convention,
            settings.dense_cap,
        )?)
    } else {
        None
    };
    let block_form = match (&matrix, BlockSpec::for_form(form, settings.convention)) {
        (Some(a), Some(spec)) => Some(check_block_form(a, &spec)?),
        _ => None,
    };
    timings.adjacency_ms = elapsed_ms(t);
    if block_form == Some(false) {
        violations.push("adjacency matrix does not have the expected block form".to_string());
    }

    let t = Instant::now();
    let dense = match &matrix {
        Some(_) => Some(spectrum(
            &cs,
            settings.convention,
            SpectrumMode::FullDense,
            settings.dense_cap,
        )?),
        None => None,
    };
    let dense_check = match (&matrix, &dense) {
        (Some(a), Some(d)) => Some(cross_check(&reduced, d, a.trace(), a.ones(), order)),
        _ => None,
    };
    timings.dense_ms = elapsed_ms(t);
    if let Some(c) = &dense_check {
        if !c.holds {
            violations.push("class-reduced and dense spectra disagree".to_string());
        }
    }

    let best = dense.as_ref().unwrap_or(&reduced);
    let spectral_formulas = match form {
        Form::PCubed { p } => {
            if settings.convention == Convention::PaperLoops
                && best.zero_multiplicity as u64 != p * p - 3
            {
                violations.push(format!(
                    "zero multiplicity {} differs from p^2 - 3 = {}",
                    best.zero_multiplicity,
                    p * p - 3
                ));
            }
            p3_formulas(p, best, settings.tol)?
        }
        Form::PSquaredQ { p, q } => p2q_formulas(p, q, best, settings.tol)?,
        Form::General => Vec::new(),
    };

    let t = Instant::now();
    let wiener = match &matrix {
        Some(a) => Some(wiener_report(&cs, a)?),
        None => None,
    };
    timings.wiener_ms = elapsed_ms(t);
    if let Some(w) = &wiener {
        let bound = match form {
            Form::PCubed { .. } => Some(2),
            Form::PSquaredQ { .. } => Some(3),
            Form::General => None,
        };
        if let Some(b) = bound {
            if w.diameter != b && order > 1 {
                violations.push(format!("diameter {} differs from expected {b}", w.diameter));
            }
        }
        if w.brute_force.is_none() {
            violations.push(format!(
                "graph is disconnected ({} unreachable pairs)",
                w.unreachable_pairs
            ));
        }
    }

    Ok(AnalysisReport {
        n,
        form,
        factors: modulus.factors().to_vec(),
        classes: cs
            .classes()
            .iter()
            .map(|c| ClassSummary {
                divisor: c.divisor,
                size: c.size(),
                looped: c.looped,
            })
            .collect(),
        vertices: order,
        convention: settings.convention,
        block_form,
        spectrum: SpectrumSummary::from(&reduced),
        dense_check,
        spectral_formulas,
        wiener,
        violations,
        timings_ms: settings.timings.then_some(timings),
    })
}
