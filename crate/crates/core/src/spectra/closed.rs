//! Closed-form eigenvalue, energy and quartic results for n = p³ and n = p²q.

use serde::Serialize;

use super::{spectrum, Spectrum, SpectrumMode};
use crate::error::{Error, Result};
use crate::graph::Convention;
use crate::zmod::{class_partition, factorize, is_prime};
use crate::Verdict;

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// The two nonzero eigenvalues `(p−1)(1 ± √(1+4p))/2` for n = p³,
/// positive one first.
pub fn closed_eigenvalues_p3(p: u64) -> Result<(f64, f64)> {
    require_prime(p)?;
    let pf = p as f64;
    let root = (1.0 + 4.0 * pf).sqrt();
    let half = (pf - 1.0) / 2.0;
    Ok((half * (1.0 + root), half * (1.0 - root)))
}

/// Energy `(p−1)√(1+4p)` of Γ[Z_{p³}].
pub fn energy_closed_p3(p: u64) -> Result<f64> {
    require_prime(p)?;
    let pf = p as f64;
    Ok((pf - 1.0) * (1.0 + 4.0 * pf).sqrt())
}

/// Which printed form of the n = p²q quartic to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuarticVariant {
    /// λ² coefficient −2p(p−1)(q−1), as the determinant expansion gives it.
    ProofDerivation,
    /// λ² coefficient −2p(q−1)²(p−1), as the result is stated.
    StatementAsPrinted,
}

impl QuarticVariant {
    pub fn formula_id(self) -> &'static str {
        match self {
            QuarticVariant::ProofDerivation => crate::formula::QUARTIC_PROOF,
            QuarticVariant::StatementAsPrinted => crate::formula::QUARTIC_STATEMENT,
        }
    }
}

/// Monic quartic `λ⁴ + c3λ³ + c2λ² + c1λ + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuarticCoefficients {
    pub c4: f64,
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
    pub variant: QuarticVariant,
}

impl QuarticCoefficients {
    /// Highest degree first.
    pub fn as_array(&self) -> [f64; 5] {
        [self.c4, self.c3, self.c2, self.c1, self.c0]
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.as_array().iter().fold(0.0, |acc, c| acc * x + c)
    }

    /// `|f(x)|` divided by `Σ |c_i| |x|^i`.
    pub fn relative_residual(&self, x: f64) -> f64 {
        let scale = self
            .as_array()
            .iter()
            .fold(0.0, |acc, c| acc * x.abs() + c.abs());
        if scale == 0.0 {
            0.0
        } else {
            self.evaluate(x).abs() / scale
        }
    }
}

pub fn quartic_p2q(p: u64, q: u64, variant: QuarticVariant) -> Result<QuarticCoefficients> {
    if p == q {
        return Err(Error::EqualPrimes(p));
    }
    require_prime(p)?;
    require_prime(q)?;
    let (pf, qf) = (p as f64, q as f64);
    let (p1, q1) = (pf - 1.0, qf - 1.0);
    let c2 = match variant {
        QuarticVariant::ProofDerivation => -2.0 * pf * p1 * q1,
        QuarticVariant::StatementAsPrinted => -2.0 * pf * q1 * q1 * p1,
    };
    Ok(QuarticCoefficients {
        c4: 1.0,
        c3: -p1,
        c2,
        c1: pf * p1 * p1 * q1,
        c0: pf * p1.powi(3) * q1 * q1,
        variant,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuarticCheck {
    pub verdict: Verdict,
    pub max_residual: f64,
    pub nonzero_count: usize,
}

/// Evaluate the quartic at every nonzero eigenvalue of `spectrum`.
///
/// Matches iff there are exactly four nonzero eigenvalues and each relative
/// residual is at most `tol`.
pub fn quartic_verdict(
    coeffs: &QuarticCoefficients,
    spectrum: &Spectrum,
    tol: f64,
) -> QuarticCheck {
    let max_residual = spectrum
        .nonzero
        .iter()
        .map(|&l| coeffs.relative_residual(l))
        .fold(0.0, f64::max);
    let nonzero_count = spectrum.nonzero.len();
    let verdict = Verdict::from_bool(nonzero_count == 4 && max_residual <= tol);
    QuarticCheck {
        verdict,
        max_residual,
        nonzero_count,
    }
}

/// Check a quartic variant against the full dense spectrum of Γ[Z_{p²q}].
pub fn verify_quartic(
    p: u64,
    q: u64,
    variant: QuarticVariant,
    tol: f64,
    dense_cap: usize,
) -> Result<QuarticCheck> {
    let coeffs = quartic_p2q(p, q, variant)?;
    let n = p
        .checked_mul(p)
        .and_then(|v| v.checked_mul(q))
        .ok_or(Error::InvalidModulus(u64::MAX))?;
    let cs = class_partition(&factorize(n)?)?;
    let s = spectrum(
        &cs,
        Convention::PaperLoops,
        SpectrumMode::FullDense,
        dense_cap,
    )?;
    Ok(quartic_verdict(&coeffs, &s, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DEFAULT_DENSE_CAP;

    #[test]
    fn eigenvalue_pairs() {
        assert_eq!(closed_eigenvalues_p3(2).unwrap(), (2.0, -1.0));
        let (a, b) = closed_eigenvalues_p3(3).unwrap();
        let r13 = 13f64.sqrt();
        assert!((a - (1.0 + r13)).abs() < 1e-15 && (b - (1.0 - r13)).abs() < 1e-15);
        assert!((a - 4.6056).abs() < 1e-4 && (b + 2.6056).abs() < 1e-4);
        let (a, b) = closed_eigenvalues_p3(5).unwrap();
        assert!((a - 11.165).abs() < 1e-3 && (b + 7.165).abs() < 1e-3);
    }

    #[test]
    fn energies() {
        assert_eq!(energy_closed_p3(2).unwrap(), 3.0);
        assert!((energy_closed_p3(3).unwrap() - 2.0 * 13f64.sqrt()).abs() < 1e-15);
        assert!((energy_closed_p3(5).unwrap() - 18.330).abs() < 1e-3);
    }

    #[test]
    fn composite_p_rejected() {
        assert_eq!(closed_eigenvalues_p3(4), Err(Error::NotPrime(4)));
        assert_eq!(energy_closed_p3(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn quartic_coefficients() {
        use QuarticVariant::*;
        let arr = |p, q, v| quartic_p2q(p, q, v).unwrap().as_array();
        assert_eq!(arr(2, 3, ProofDerivation), [1.0, -1.0, -8.0, 4.0, 8.0]);
        assert_eq!(arr(2, 3, StatementAsPrinted), [1.0, -1.0, -16.0, 4.0, 8.0]);
        // (q−1)² = q−1 at q = 2, so both variants coincide
        assert_eq!(arr(3, 2, ProofDerivation), [1.0, -2.0, -12.0, 12.0, 24.0]);
        assert_eq!(
            arr(3, 2, StatementAsPrinted),
            [1.0, -2.0, -12.0, 12.0, 24.0]
        );
        assert_eq!(
            quartic_p2q(3, 3, ProofDerivation),
            Err(Error::EqualPrimes(3))
        );
    }

    #[test]
    fn quartic_verdicts_on_small_moduli() {
        use QuarticVariant::*;
        let v = |p, q, var| {
            verify_quartic(p, q, var, 1e-9, DEFAULT_DENSE_CAP)
                .unwrap()
                .verdict
        };
        assert_eq!(v(2, 3, ProofDerivation), Verdict::Match);
        assert_eq!(v(2, 3, StatementAsPrinted), Verdict::Mismatch);
        assert_eq!(v(3, 2, StatementAsPrinted), Verdict::Match);
    }
}
