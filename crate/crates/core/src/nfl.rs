//! Averaging a fixed sequence's error over *every* total target on a finite
//! carrier. Any two total sequences tie at (m - 1) / m under the zero-one
//! metric; this module computes the average in exact integer arithmetic so the
//! equality check never touches floating point.

use crate::carrier::Carrier;
use crate::closure::sequence_table;
use crate::error::FaError;
use crate::sequence::BoundSequence;
use crate::space::SearchSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TargetAverage {
    /// Sum over all targets of the per-target disagreement count.
    pub disagreements: u128,
    /// Number of targets swept: m^m.
    pub targets: u128,
    /// Points per target: m.
    pub points: u128,
}

impl TargetAverage {
    /// disagreements / (targets * points), the mean zero-one error.
    pub fn mean(&self) -> f64 {
        self.disagreements as f64 / (self.targets * self.points) as f64
    }
}

/// Sweep all m^m total targets with σ the full carrier and count zero-one
/// disagreements of the fixed sequence, exactly. Partial sequences are
/// rejected: an undefined point has no frequentist count.
pub fn average_over_all_targets(
    space: &SearchSpace,
    seq: &BoundSequence,
) -> Result<TargetAverage, FaError> {
    let Carrier::Finite { m } = *space.carrier() else {
        return Err(FaError::UnsupportedOnReal("target averaging"));
    };
    let table = sequence_table(space, seq)?;
    let outputs: Vec<u64> = table
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            FaError::config(
                "sequence",
                format!("`{}` is partial; target averaging needs a total sequence", seq.render(space)),
            )
        })?;

    let mut targets: u128 = 1;
    for _ in 0..m {
        targets = targets.checked_mul(m as u128).ok_or(FaError::CountOverflow)?;
    }

    let mut disagreements: u128 = 0;
    let mut target = vec![0u64; m as usize];
    loop {
        for (x, out) in outputs.iter().enumerate() {
            if *out != target[x] {
                disagreements += 1;
            }
        }
        // odometer over all total tables
        let mut i = target.len();
        loop {
            if i == 0 {
                return Ok(TargetAverage {
                    disagreements,
                    targets,
                    points: m as u128,
                });
            }
            i -= 1;
            if target[i] + 1 < m {
                target[i] += 1;
                for t in target[i + 1..].iter_mut() {
                    *t = 0;
                }
                break;
            }
        }
    }
}
