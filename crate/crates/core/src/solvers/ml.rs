use std::time::Instant;

use crate::error::FaError;
use crate::eval::approximation_error_unchecked;
use crate::metric::Metric;
use crate::sample::SampleSet;
use crate::sequence::SequenceSkeleton;
use crate::space::{enumerate_assignments, SearchSpace};

use super::SolveResult;

/// Grid search over the parameter assignments of one fixed skeleton. The
/// skeleton never changes; only its parameters do. Ties break to the first
/// minimum in odometer order.
pub fn ml_solve(
    space: &SearchSpace,
    fixed: &SequenceSkeleton,
    samples: &SampleSet,
    metric: Metric,
) -> Result<SolveResult, FaError> {
    fixed.validate(space)?;
    if samples.carrier() != space.carrier() {
        return Err(FaError::config("samples", "sample set and space use different carriers"));
    }

    let started = Instant::now();
    let mut best: Option<(f64, crate::sequence::BoundSequence)> = None;
    let mut evaluated = 0u64;
    for seq in enumerate_assignments(space, fixed) {
        let error = approximation_error_unchecked(space, &seq, samples, metric);
        evaluated += 1;
        if best.as_ref().is_none_or(|(e, _)| error < *e) {
            best = Some((error, seq));
        }
    }
    let (error, best) = best.expect("parameter grids are nonempty");

    Ok(SolveResult {
        best,
        error,
        evaluated,
        frontier_trace: None,
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{Carrier, Value};
    use crate::primitive::{BuiltinForm, ParamTuple, Primitive, PrimitiveRule, Restriction};

    #[test]
    fn grid_search_recovers_the_identity_line() {
        // affine with a, b drawn from {0, 1}; target y = x on sigma = {0, 1}
        let mut params = Vec::new();
        for a in [0.0, 1.0] {
            for b in [0.0, 1.0] {
                params.push(ParamTuple(vec![a, b]));
            }
        }
        let space = SearchSpace::new(
            Carrier::real(-1.0, 2.0).unwrap(),
            vec![Primitive {
                id: "affine".into(),
                rule: PrimitiveRule::Builtin(BuiltinForm::Affine),
                params,
                restriction: Restriction::None,
            }],
        )
        .unwrap();
        let samples = SampleSet::new(
            *space.carrier(),
            vec![
                (Value::Real(0.0), Value::Real(0.0)),
                (Value::Real(1.0), Value::Real(1.0)),
            ],
        )
        .unwrap();
        let result = ml_solve(
            &space,
            &SequenceSkeleton::new(vec![0]),
            &samples,
            crate::metric::Metric::abs_diff(),
        )
        .unwrap();
        assert_eq!(result.error, 0.0);
        // (a, b) = (1, 0) is grid row 2 in odometer order
        assert_eq!(result.best.steps, vec![(0, 2)]);
        assert_eq!(result.evaluated, 4);
    }

    #[test]
    fn constant_skeleton_cannot_fit_a_balanced_target() {
        let space = SearchSpace::new(
            Carrier::finite(2).unwrap(),
            vec![Primitive::table("const0", vec![0, 0])],
        )
        .unwrap();
        // target = not
        let samples = SampleSet::from_finite_table(2, &[1, 0]).unwrap();
        let result = ml_solve(
            &space,
            &SequenceSkeleton::new(vec![0]),
            &samples,
            crate::metric::Metric::zero_one(),
        )
        .unwrap();
        assert_eq!(result.error, 0.5);
    }

    #[test]
    fn singleton_grid_scores_once() {
        let space = SearchSpace::new(
            Carrier::finite(3).unwrap(),
            vec![Primitive::table("inc", vec![1, 2, 0])],
        )
        .unwrap();
        let samples = SampleSet::from_finite_table(3, &[0, 0, 0]).unwrap();
        let result = ml_solve(
            &space,
            &SequenceSkeleton::new(vec![0, 0]),
            &samples,
            crate::metric::Metric::zero_one(),
        )
        .unwrap();
        assert_eq!(result.evaluated, 1);
        assert_eq!(result.best.steps, vec![(0, 0), (0, 0)]);
    }
}
