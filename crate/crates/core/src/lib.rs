//! Search and analysis toolkit for approximating functions by composition
//! sequences of parameterized primitives drawn from a declared search space.
//!
//! A [`SearchSpace`] fixes a value universe (a [`Carrier`]: the modular set
//! `Z_m` or a real interval) and an ordered list of [`Primitive`]s — lookup
//! tables or closed forms, each with a finite parameter grid and an optional
//! restriction on its outputs. Candidate approximators are [`BoundSequence`]s:
//! compositions of primitives with one parameter choice per step, evaluated
//! left to right, undefined as soon as any step's output is restricted away.
//!
//! On top of that value model the crate provides:
//!
//! * the approximation error of a sequence against a sampled target
//!   ([`eval::approximation_error`]), under absolute, squared, or zero-one
//!   metrics with a configurable rule for undefined points
//! * canonical enumeration and closed-form counting of the expanded space of
//!   all sequences up to a length bound ([`space`])
//! * solvers sharing one result contract ([`solvers`]): fixed-skeleton grid
//!   search, exhaustive search, builder-driven search (greedy, beam, random,
//!   epsilon-greedy, optionally history-aware), and frequentist hypothesis
//!   selection
//! * analyzers ([`capacity`], [`closure`], [`vc`], [`nfl`]): capacity and
//!   potential measures, realized-function closure with fixpoint detection,
//!   brute-force VC dimension with shattering witnesses, and exact
//!   all-targets error averaging
//!
//! Everything is deterministic: enumeration order is fixed, ties break to the
//! first minimum in canonical order, parallel reductions are
//! partition-independent, and all randomness flows from the seeded
//! counter-based generator in [`rng`].

pub mod capacity;
pub mod carrier;
pub mod catalog;
pub mod closure;
pub mod error;
pub mod eval;
pub mod io;
pub mod metric;
pub mod nfl;
pub mod primitive;
pub mod rng;
pub mod sample;
pub mod sequence;
pub mod solvers;
pub mod space;
pub mod vc;

pub use carrier::{Carrier, Value};
pub use error::FaError;
pub use metric::{Metric, MetricKind, UndefinedFallback};
pub use primitive::{BuiltinForm, ParamTuple, Primitive, PrimitiveRule, Restriction};
pub use sample::SampleSet;
pub use sequence::{BoundSequence, SequenceSkeleton};
pub use solvers::{BuilderSpec, BuilderStrategy, SolveResult, DEFAULT_BUDGET_CEILING};
pub use space::SearchSpace;
