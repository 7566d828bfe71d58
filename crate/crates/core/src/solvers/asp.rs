use std::time::Instant;

use rayon::prelude::*;

use crate::error::FaError;
use crate::eval::approximation_error_unchecked;
use crate::metric::Metric;
use crate::sample::SampleSet;
use crate::sequence::BoundSequence;
use crate::space::{count_expanded, enumerate_assignments, skeleton_at, SearchSpace};

use super::SolveResult;

struct Candidate {
    error: f64,
    skeleton_rank: u128,
    assignment_rank: u128,
    seq: BoundSequence,
}

fn better(a: &Candidate, b: &Candidate) -> bool {
    (a.error, a.skeleton_rank, a.assignment_rank) < (b.error, b.skeleton_rank, b.assignment_rank)
}

/// Score every bound sequence of length <= n and return the global minimizer.
///
/// Refuses up front when the expanded space exceeds `ceiling`, reporting the
/// exact count. Work parallelizes over skeleton ranks; the reduction keeps the
/// smallest (error, skeleton rank, assignment rank), so the winner is the first
/// minimum of the canonical stream regardless of partitioning.
pub fn asp_solve(
    space: &SearchSpace,
    n: usize,
    samples: &SampleSet,
    metric: Metric,
    ceiling: u128,
) -> Result<SolveResult, FaError> {
    if samples.carrier() != space.carrier() {
        return Err(FaError::config("samples", "sample set and space use different carriers"));
    }
    let counts = count_expanded(space, n)?;
    if counts.bound_sequences > ceiling {
        return Err(FaError::BudgetExceeded {
            count: counts.bound_sequences,
            ceiling,
        });
    }

    let started = Instant::now();
    let structures = counts.structures as usize;
    let best = (0..structures)
        .into_par_iter()
        .map(|rank| {
            let skeleton = skeleton_at(space, n, rank as u128)
                .expect("rank below the structure count");
            let mut local: Option<Candidate> = None;
            for (assignment_rank, seq) in enumerate_assignments(space, &skeleton).enumerate() {
                let error = approximation_error_unchecked(space, &seq, samples, metric);
                let candidate = Candidate {
                    error,
                    skeleton_rank: rank as u128,
                    assignment_rank: assignment_rank as u128,
                    seq,
                };
                if local.as_ref().is_none_or(|cur| better(&candidate, cur)) {
                    local = Some(candidate);
                }
            }
            local
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(a), Some(b)) => Some(if better(&a, &b) { a } else { b }),
                (x, None) | (None, x) => x,
            },
        )
        .expect("a space holds at least one sequence");

    Ok(SolveResult {
        best: best.seq,
        error: best.error,
        evaluated: counts.bound_sequences.min(u64::MAX as u128) as u64,
        frontier_trace: None,
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::Carrier;
    use crate::primitive::Primitive;
    use crate::solvers::DEFAULT_BUDGET_CEILING;

    #[test]
    fn finds_the_exact_composition() {
        let space = SearchSpace::new(
            Carrier::finite(3).unwrap(),
            vec![Primitive::table("inc", vec![1, 2, 0])],
        )
        .unwrap();
        // target x + 2 mod 3
        let samples = SampleSet::from_finite_table(3, &[2, 0, 1]).unwrap();
        let result =
            asp_solve(&space, 2, &samples, Metric::zero_one(), DEFAULT_BUDGET_CEILING).unwrap();
        assert_eq!(result.error, 0.0);
        assert_eq!(result.best.steps, vec![(0, 0), (0, 0)]);
        assert_eq!(result.evaluated, 2);
    }

    #[test]
    fn no_composition_of_not_is_constant() {
        let space = SearchSpace::new(
            Carrier::finite(2).unwrap(),
            vec![Primitive::table("not", vec![1, 0])],
        )
        .unwrap();
        let samples = SampleSet::from_finite_table(2, &[0, 0]).unwrap();
        let result =
            asp_solve(&space, 3, &samples, Metric::zero_one(), DEFAULT_BUDGET_CEILING).unwrap();
        assert_eq!(result.error, 0.5);
        assert_eq!(result.evaluated, 3);
        // tie between all three sequences breaks to the shortest
        assert_eq!(result.best.steps.len(), 1);
    }

    #[test]
    fn members_of_the_space_reach_zero() {
        let space = crate::catalog::elementary_catalog("t3-generators").unwrap();
        let member = BoundSequence::new(vec![(1, 0), (2, 0)]);
        let table = crate::closure::sequence_table(&space, &member).unwrap();
        let outputs: Vec<u64> = table.into_iter().map(Option::unwrap).collect();
        let samples = SampleSet::from_finite_table(3, &outputs).unwrap();
        let result =
            asp_solve(&space, 2, &samples, Metric::zero_one(), DEFAULT_BUDGET_CEILING).unwrap();
        assert_eq!(result.error, 0.0);
    }

    #[test]
    fn refuses_over_the_ceiling_with_the_exact_count() {
        let space = SearchSpace::new(
            Carrier::finite(2).unwrap(),
            vec![
                Primitive::table("a", vec![0, 1]),
                Primitive::table("b", vec![1, 0]),
            ],
        )
        .unwrap();
        let samples = SampleSet::from_finite_table(2, &[0, 1]).unwrap();
        let err = asp_solve(&space, 4, &samples, Metric::zero_one(), 10).unwrap_err();
        match err {
            FaError::BudgetExceeded { count, ceiling } => {
                assert_eq!(count, 30);
                assert_eq!(ceiling, 10);
            }
            other => panic!("expected a budget refusal, got {other}"),
        }
    }

    #[test]
    fn error_round_trips_through_recomputation() {
        let space = crate::catalog::elementary_catalog("t3-generators").unwrap();
        let samples = SampleSet::from_finite_table(3, &[2, 2, 0]).unwrap();
        let result =
            asp_solve(&space, 3, &samples, Metric::abs_diff(), DEFAULT_BUDGET_CEILING).unwrap();
        let recomputed =
            crate::eval::approximation_error(&space, &result.best, &samples, Metric::abs_diff())
                .unwrap();
        assert_eq!(result.error.to_bits(), recomputed.to_bits());
    }
}
