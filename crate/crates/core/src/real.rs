use serde::{Serialize, Serializer};

/// Significant digits kept when a [`Real`] is serialized.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// A float that serializes rounded to 12 significant digits, so reports are
/// byte-stable across runs and platforms.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Real(pub f64);

impl Real {
    pub fn rounded(self) -> f64 {
        round_significant(self.0, SIGNIFICANT_DIGITS)
    }
}

impl From<f64> for Real {
    fn from(v: f64) -> Self {
        Real(v)
    }
}

pub fn round_significant(v: f64, digits: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return if v == 0.0 { 0.0 } else { v };
    }
    let r: f64 = format!("{:.*e}", digits - 1, v).parse().unwrap_or(v);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let r = self.rounded();
        if r.is_finite() {
            serializer.serialize_f64(r)
        } else {
            serializer.serialize_none()
        }
    }
}

pub fn reals(values: &[f64]) -> Vec<Real> {
    values.iter().copied().map(Real).collect()
}
