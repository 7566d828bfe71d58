//! Builder-driven search.
//!
//! The solver alternates between [`builder_step`], which proposes candidate
//! sequences from the expanded space given everything scored so far, and a
//! scoring pass over the proposals. `builder_step` is a pure function of
//! (space, bound, builder, history): identical inputs always yield identical
//! candidate sets, with any randomness drawn from the seeded counter-based
//! generator at a stream index derived from the history length. An empty
//! candidate set signals termination.
//!
//! Because every scored candidate is a member of the expanded space, the
//! returned error can never beat the exhaustive solver's.

use std::time::Instant;

use crate::error::FaError;
use crate::eval::approximation_error_unchecked;
use crate::metric::Metric;
use crate::rng::SplitMix64;
use crate::sample::SampleSet;
use crate::sequence::BoundSequence;
use crate::space::{count_expanded, enumerate_assignments, enumerate_structures, flat_sequence_at, SearchSpace};

use super::{asp_solve, BuilderSpec, BuilderStrategy, FrontierRound, SolveResult};

/// Scored sequences in scoring order; the builder's entire view of the run.
pub type History = Vec<(BoundSequence, f64)>;

/// Propose the next round of candidates. Empty means the builder is done.
pub fn builder_step(
    space: &SearchSpace,
    n: usize,
    builder: &BuilderSpec,
    history: &History,
) -> Result<Vec<BoundSequence>, FaError> {
    builder.validate()?;
    if n < 1 {
        return Err(FaError::config("n", "length bound must be >= 1"));
    }
    match &builder.strategy {
        BuilderStrategy::Exhaustive => {
            if !history.is_empty() {
                return Ok(Vec::new());
            }
            let mut all = Vec::new();
            for skeleton in enumerate_structures(space, n) {
                all.extend(enumerate_assignments(space, &skeleton));
            }
            Ok(all)
        }
        BuilderStrategy::Greedy => frontier_step(space, n, 1, true, history),
        BuilderStrategy::Beam { width } => frontier_step(space, n, *width, false, history),
        BuilderStrategy::Random { budget, seed } => {
            if !history.is_empty() {
                return Ok(Vec::new());
            }
            sample_batch(space, n, *budget, *seed)
        }
        BuilderStrategy::EpsilonGreedy { epsilon, budget, seed } => {
            let spent = history.len() as u64;
            if spent >= *budget {
                return Ok(Vec::new());
            }
            if history.is_empty() {
                // open like greedy so the incumbent has something to stand on
                return Ok(all_extensions(space, None));
            }
            let incumbent = best_entry(history).clone();
            let mut rng = SplitMix64::at(*seed, spent);
            let inject = rng.next_f64() < *epsilon || incumbent.len() >= n;
            if inject {
                let total = count_expanded(space, n)?.bound_sequences;
                let seq = flat_sequence_at(space, n, rng.next_below(total))?;
                Ok(vec![seq])
            } else {
                Ok(all_extensions(space, Some(&incumbent)))
            }
        }
    }
}

/// Greedy/beam round: extend the best `width` sequences of the deepest length
/// reached so far by every (primitive, parameter) step.
fn frontier_step(
    space: &SearchSpace,
    n: usize,
    width: usize,
    stop_on_plateau: bool,
    history: &History,
) -> Result<Vec<BoundSequence>, FaError> {
    if history.is_empty() {
        return Ok(all_extensions(space, None));
    }
    let depth = history.iter().map(|(s, _)| s.len()).max().unwrap();
    if depth >= n {
        return Ok(Vec::new());
    }
    if stop_on_plateau {
        let deepest_best = level_best(history, depth);
        let incumbent = history
            .iter()
            .filter(|(s, _)| s.len() < depth)
            .map(|(_, e)| *e)
            .fold(f64::INFINITY, f64::min);
        if depth > 1 && deepest_best >= incumbent {
            return Ok(Vec::new());
        }
    }
    let mut level: Vec<&(BoundSequence, f64)> =
        history.iter().filter(|(s, _)| s.len() == depth).collect();
    level.sort_by(|a, b| {
        a.1.total_cmp(&b.1).then_with(|| a.0.canonical_cmp(&b.0))
    });
    let mut candidates = Vec::new();
    for (seq, _) in level.into_iter().take(width) {
        candidates.extend(all_extensions(space, Some(seq)));
    }
    Ok(candidates)
}

fn level_best(history: &History, len: usize) -> f64 {
    history
        .iter()
        .filter(|(s, _)| s.len() == len)
        .map(|(_, e)| *e)
        .fold(f64::INFINITY, f64::min)
}

fn best_entry(history: &History) -> &BoundSequence {
    &history
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.canonical_cmp(&b.0)))
        .expect("history is nonempty")
        .0
}

/// One-step extensions of `base` (or all length-1 sequences) in canonical pair
/// order.
fn all_extensions(space: &SearchSpace, base: Option<&BoundSequence>) -> Vec<BoundSequence> {
    space
        .pairs()
        .into_iter()
        .map(|pair| {
            let mut steps = base.map(|b| b.steps.clone()).unwrap_or_default();
            steps.push(pair);
            BoundSequence::new(steps)
        })
        .collect()
}

/// `budget` distinct sequences drawn uniformly from the expanded space. A
/// budget covering the whole space degenerates to the canonical sweep.
fn sample_batch(
    space: &SearchSpace,
    n: usize,
    budget: u64,
    seed: u64,
) -> Result<Vec<BoundSequence>, FaError> {
    let total = count_expanded(space, n)?.bound_sequences;
    if budget as u128 >= total {
        let mut all = Vec::new();
        for skeleton in enumerate_structures(space, n) {
            all.extend(enumerate_assignments(space, &skeleton));
        }
        return Ok(all);
    }
    let mut rng = SplitMix64::new(seed);
    let picked: Vec<u128> = if total <= 1 << 20 {
        // partial Fisher-Yates over the full index range
        let mut indices: Vec<u128> = (0..total).collect();
        let take = budget as usize;
        for i in 0..take {
            let j = i + rng.next_below(total - i as u128) as usize;
            indices.swap(i, j);
        }
        indices.truncate(take);
        indices
    } else {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(budget as usize);
        while out.len() < budget as usize {
            let idx = rng.next_below(total);
            if seen.insert(idx) {
                out.push(idx);
            }
        }
        out
    };
    picked
        .into_iter()
        .map(|idx| flat_sequence_at(space, n, idx))
        .collect()
}

/// Run the builder to termination and return the best fully-scored sequence.
pub fn a_asp_solve(
    space: &SearchSpace,
    n: usize,
    samples: &SampleSet,
    metric: Metric,
    builder: &BuilderSpec,
) -> Result<SolveResult, FaError> {
    builder.validate()?;
    if samples.carrier() != space.carrier() {
        return Err(FaError::config("samples", "sample set and space use different carriers"));
    }
    if builder.strategy == BuilderStrategy::Exhaustive {
        // stream instead of materializing the whole space through the builder
        let mut result = asp_solve(space, n, samples, metric, u128::MAX)?;
        result.frontier_trace = Some(Vec::new());
        return Ok(result);
    }

    let started = Instant::now();
    let selection = if builder.history_aware && samples.len() > 1 {
        samples.subsample_even()
    } else {
        samples.clone()
    };
    let rescore_width = match &builder.strategy {
        BuilderStrategy::Beam { width } => *width,
        _ => 1,
    };

    let mut history: History = Vec::new();
    let mut trace: Vec<FrontierRound> = Vec::new();
    let mut evaluated = 0u64;
    let mut best: Option<(f64, BoundSequence)> = None;

    loop {
        let candidates = builder_step(space, n, builder, &history)?;
        if candidates.is_empty() {
            break;
        }
        let mut scored: Vec<(BoundSequence, f64)> = candidates
            .into_iter()
            .map(|seq| {
                let err = approximation_error_unchecked(space, &seq, &selection, metric);
                (seq, err)
            })
            .collect();
        evaluated += scored.len() as u64;

        let round_best = scored
            .iter()
            .map(|(_, e)| *e)
            .fold(f64::INFINITY, f64::min);
        trace.push(FrontierRound {
            round: trace.len() + 1,
            candidates: scored.len() as u64,
            best_error: round_best,
        });

        if builder.history_aware {
            // the survivors get their reportable score on the full sample set
            let mut by_selection: Vec<usize> = (0..scored.len()).collect();
            by_selection.sort_by(|a, b| {
                scored[*a]
                    .1
                    .total_cmp(&scored[*b].1)
                    .then_with(|| scored[*a].0.canonical_cmp(&scored[*b].0))
            });
            for i in by_selection.into_iter().take(rescore_width) {
                let full = approximation_error_unchecked(space, &scored[i].0, samples, metric);
                evaluated += 1;
                if best.as_ref().is_none_or(|(e, b)| {
                    full < *e || (full == *e && scored[i].0.canonical_cmp(b).is_lt())
                }) {
                    best = Some((full, scored[i].0.clone()));
                }
            }
        } else {
            for (seq, err) in &scored {
                if best.as_ref().is_none_or(|(e, b)| {
                    err < e || (err == e && seq.canonical_cmp(b).is_lt())
                }) {
                    best = Some((*err, seq.clone()));
                }
            }
        }
        history.append(&mut scored);
    }

    let (error, best) = best.expect("builders propose at least one candidate");
    Ok(SolveResult {
        best,
        error,
        evaluated,
        frontier_trace: Some(trace),
        wall_ms: started.elapsed().as_millis() as u64,
    })
}
