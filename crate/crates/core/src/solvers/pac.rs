use std::time::Instant;

use crate::error::FaError;
use crate::eval::approximation_error_unchecked;
use crate::metric::Metric;
use crate::sample::SampleSet;
use crate::sequence::BoundSequence;
use crate::space::SearchSpace;

use super::SolveResult;

/// Select the single hypothesis minimizing the frequentist (zero-one) error.
///
/// Hypotheses are the space's length-1 bound sequences in catalog order; the
/// expanded space is never searched. Ties break to the earliest hypothesis.
pub fn pac_solve(hypotheses: &SearchSpace, samples: &SampleSet) -> Result<SolveResult, FaError> {
    if samples.carrier() != hypotheses.carrier() {
        return Err(FaError::config("samples", "sample set and space use different carriers"));
    }
    let metric = Metric::zero_one();
    let started = Instant::now();

    let mut best: Option<(f64, BoundSequence)> = None;
    let mut evaluated = 0u64;
    for pair in hypotheses.pairs() {
        let seq = BoundSequence::new(vec![pair]);
        let error = approximation_error_unchecked(hypotheses, &seq, samples, metric);
        evaluated += 1;
        if best.as_ref().is_none_or(|(e, _)| error < *e) {
            best = Some((error, seq));
        }
    }
    let (error, best) = best.expect("hypothesis spaces are nonempty");

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
    use crate::carrier::Carrier;
    use crate::primitive::{ParamTuple, Primitive, PrimitiveRule, Restriction};

    #[test]
    fn realizable_target_reaches_zero() {
        let space = SearchSpace::new(
            Carrier::finite(2).unwrap(),
            vec![
                Primitive::table("const0", vec![0, 0]),
                Primitive::table("not", vec![1, 0]),
            ],
        )
        .unwrap();
        let samples = SampleSet::from_finite_table(2, &[1, 0]).unwrap();
        let result = pac_solve(&space, &samples).unwrap();
        assert_eq!(result.error, 0.0);
        assert_eq!(result.best.steps, vec![(1, 0)]);
    }

    #[test]
    fn symmetric_disagreement_keeps_the_first_hypothesis() {
        let space = SearchSpace::new(
            Carrier::finite(2).unwrap(),
            vec![
                Primitive::table("const0", vec![0, 0]),
                Primitive::table("const1", vec![1, 1]),
            ],
        )
        .unwrap();
        // target = not: both constants miss exactly one point
        let samples = SampleSet::from_finite_table(2, &[1, 0]).unwrap();
        let result = pac_solve(&space, &samples).unwrap();
        assert_eq!(result.error, 0.5);
        assert_eq!(result.best.steps, vec![(0, 0)]);
    }

    #[test]
    fn threshold_grid_recovers_the_cut_point() {
        let m = 10u64;
        let rows: Vec<Vec<u64>> = (0..=m)
            .map(|theta| (0..m).map(|x| u64::from(x >= theta)).collect())
            .collect();
        let mut table = Vec::new();
        for row in &rows {
            table.extend_from_slice(row);
        }
        let space = SearchSpace::new(
            Carrier::finite(m).unwrap(),
            vec![Primitive {
                id: "threshold".into(),
                rule: PrimitiveRule::LookupTable(table),
                params: (0..rows.len()).map(|i| ParamTuple(vec![i as f64])).collect(),
                restriction: Restriction::None,
            }],
        )
        .unwrap();
        let target: Vec<u64> = (0..m).map(|x| u64::from(x >= 5)).collect();
        let samples = SampleSet::from_finite_table(m, &target).unwrap();
        let result = pac_solve(&space, &samples).unwrap();
        assert_eq!(result.error, 0.0);
        assert_eq!(result.best.steps, vec![(0, 5)]);
    }
}
