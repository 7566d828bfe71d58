//! The solution strategies, sharing one result contract.
//!
//! * [`ml_solve`] — grid search over the parameter assignments of one fixed
//!   skeleton.
//! * [`asp_solve`] — exhaustive search over the whole expanded space, the
//!   quality ceiling the other strategies are measured against.
//! * [`a_asp_solve`] — builder-driven search: a set-builder proposes candidate
//!   sequences round by round, seeing the scored history in between.
//! * [`pac_solve`] — hypothesis selection among the space's length-1 sequences
//!   under the frequentist (zero-one) error.
//!
//! Every solver is deterministic given its inputs and seed. Ties break to the
//! first minimum in canonical order (shortest, then skeleton, then parameter
//! assignment), and parallel runs reduce on (error, canonical rank) so the
//! winner does not depend on how work was partitioned.

mod a_asp;
mod asp;
mod ml;
mod pac;

pub use a_asp::{a_asp_solve, builder_step, History};
pub use asp::asp_solve;
pub use ml::ml_solve;
pub use pac::pac_solve;

use crate::error::FaError;
use crate::sequence::BoundSequence;

/// Default ceiling on how many bound sequences an exhaustive run may score.
pub const DEFAULT_BUDGET_CEILING: u128 = 100_000_000;

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub best: BoundSequence,
    /// Error of `best`; recomputing it through `approximation_error` gives this
    /// value bit-exactly.
    pub error: f64,
    /// Bound sequences scored (history-aware builders also count their full-σ
    /// re-scores).
    pub evaluated: u64,
    /// Per-round summaries for builder-driven runs.
    pub frontier_trace: Option<Vec<FrontierRound>>,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierRound {
    pub round: usize,
    pub candidates: u64,
    /// Best selection-score seen this round.
    pub best_error: f64,
}

/// Candidate-selection strategy for [`a_asp_solve`].
#[derive(Debug, Clone, PartialEq)]
pub enum BuilderStrategy {
    /// Propose the whole expanded space; equivalent to [`asp_solve`].
    Exhaustive,
    /// Keep the single best sequence per length and extend it one step; stops
    /// early once a round fails to improve on the incumbent.
    Greedy,
    /// Keep the `width` best sequences per length; always runs to the length
    /// bound, so a width at least the frontier size reproduces the exhaustive
    /// result exactly.
    Beam { width: usize },
    /// Score `budget` sequences sampled uniformly, without replacement, from
    /// the expanded space.
    Random { budget: u64, seed: u64 },
    /// Per round: extend the incumbent (probability 1 - epsilon) or inject one
    /// uniformly random sequence (probability epsilon), until `budget`
    /// sequences have been scored.
    EpsilonGreedy { epsilon: f64, budget: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuilderSpec {
    pub strategy: BuilderStrategy,
    /// Score candidate steps on a deterministic half of σ; each round's
    /// surviving frontier is re-scored on the full σ.
    pub history_aware: bool,
}

impl BuilderSpec {
    pub fn new(strategy: BuilderStrategy) -> Self {
        BuilderSpec { strategy, history_aware: false }
    }

    pub fn history_aware(mut self) -> Self {
        self.history_aware = true;
        self
    }

    pub fn validate(&self) -> Result<(), FaError> {
        match &self.strategy {
            BuilderStrategy::Beam { width } if *width < 1 => {
                Err(FaError::config("builder.width", "beam width must be >= 1"))
            }
            BuilderStrategy::Random { budget, .. } if *budget < 1 => {
                Err(FaError::config("builder.budget", "budget must be >= 1"))
            }
            BuilderStrategy::EpsilonGreedy { epsilon, budget, .. } => {
                if !(0.0..=1.0).contains(epsilon) {
                    Err(FaError::config("builder.epsilon", "epsilon must lie in [0, 1]"))
                } else if *budget < 1 {
                    Err(FaError::config("builder.budget", "budget must be >= 1"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        let base = match &self.strategy {
            BuilderStrategy::Exhaustive => "a-asp:exhaustive".to_string(),
            BuilderStrategy::Greedy => "a-asp:greedy".to_string(),
            BuilderStrategy::Beam { width } => format!("a-asp:beam:{width}"),
            BuilderStrategy::Random { budget, .. } => format!("a-asp:random:{budget}"),
            BuilderStrategy::EpsilonGreedy { epsilon, budget, .. } => {
                format!("a-asp:epsilon-greedy:{epsilon}:{budget}")
            }
        };
        if self.history_aware {
            format!("{base}+hist")
        } else {
            base
        }
    }
}
