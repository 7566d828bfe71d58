use std::collections::HashSet;

use crate::carrier::{Carrier, Value};
use crate::error::FaError;

/// The sampled target: an ordered, duplicate-free list of (x, y) pairs over one
/// carrier. Targets are total on their sample points, so neither column ever
/// holds an undefined value. Real targets may take values outside the carrier
/// interval (the interval bounds domains, not images).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    carrier: Carrier,
    points: Vec<(Value, Value)>,
}

impl SampleSet {
    pub fn new(carrier: Carrier, points: Vec<(Value, Value)>) -> Result<Self, FaError> {
        if points.is_empty() {
            return Err(FaError::config("samples", "sample set must be nonempty"));
        }
        let mut seen = HashSet::new();
        for (i, (x, y)) in points.iter().enumerate() {
            if !carrier.contains(x) {
                return Err(FaError::config(
                    format!("samples[{i}].x"),
                    format!("{x} is not a value of the carrier"),
                ));
            }
            match (y, &carrier) {
                (Value::Finite(v), Carrier::Finite { m }) if v < m => {}
                (Value::Real(v), Carrier::Real { .. }) if v.is_finite() => {}
                _ => {
                    return Err(FaError::config(
                        format!("samples[{i}].y"),
                        format!("{y} is not a defined value compatible with the carrier"),
                    ));
                }
            }
            if !seen.insert(x.encode()) {
                return Err(FaError::config(
                    format!("samples[{i}].x"),
                    format!("duplicate sample point {x}"),
                ));
            }
        }
        Ok(SampleSet { carrier, points })
    }

    /// Target given as a full table over a finite carrier: y[i] is the value at i.
    pub fn from_finite_table(m: u64, outputs: &[u64]) -> Result<Self, FaError> {
        let carrier = Carrier::finite(m)?;
        let points = outputs
            .iter()
            .enumerate()
            .map(|(x, y)| (Value::Finite(x as u64), Value::Finite(*y)))
            .collect();
        SampleSet::new(carrier, points)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn points(&self) -> &[(Value, Value)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Deterministic sub-sample used by history-aware builders: every other
    /// point, starting at the first.
    pub fn subsample_even(&self) -> SampleSet {
        let points: Vec<_> = self.points.iter().step_by(2).cloned().collect();
        SampleSet { carrier: self.carrier, points }
    }
}
