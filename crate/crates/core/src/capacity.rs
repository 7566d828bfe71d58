//! Combinatorial analyzers: the capacity of one sequence skeleton, the
//! potential of a whole space, and its growth with the length bound.
//!
//! Capacity multiplies, per step, the size of the incoming domain, the
//! parameter grid, and the step's image. Images are *realized*: the outputs a
//! step actually attains over its incoming domain, with restricted values
//! removed before they feed the next step (the final image keeps restricted
//! values, matching the product's published form). Incoming domains intersect
//! the primitive's own domain, so on real carriers a value that escaped the
//! interval does not contribute downstream.
//!
//! Potential is the union of per-sequence trace sets. A strict trace records
//! one defined evaluation end to end — input, each step's parameter index and
//! output — so traces of different lengths are distinct elements by
//! construction. Collapsed mode instead keys on (input, final output) alone:
//! the parameter-pool coordinate of the collapsed capacity form is the same
//! for every sequence drawn from the space, so it drops out of the dedup key,
//! and two spaces that publish the same rules under different parameter
//! slicings report equal collapsed potentials.
//!
//! Growth tracks the number of distinct function tables realized per length
//! bound (the function-level reading of potential) and reports the saturation
//! depth when composition stops producing new tables.
//!
//! Real carriers have no finite value universe, so these analyzers run over an
//! explicit sample grid and say so via the `sampled` flag.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;

use crate::carrier::{Carrier, Value};
use crate::error::FaError;
use crate::eval::eval_primitive;
use crate::sequence::SequenceSkeleton;
use crate::space::{count_expanded, enumerate_assignments, enumerate_structures, SearchSpace};

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityReport {
    /// Product of `factor_sizes`, kept arbitrary-width.
    pub cardinality: BigUint,
    /// |dom|, then per step |params| and |image| (intermediate images are
    /// post-restriction, the final one is not).
    pub factor_sizes: Vec<u64>,
    pub collapsed: bool,
    /// True when the factors were measured over a sample grid.
    pub sampled: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PotentialReport {
    pub cardinality: u64,
    pub sampled: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    /// Distinct realized function tables for length bounds 1..=n_max.
    pub cardinalities: Vec<u64>,
    /// Smallest bound past which no new table appears, if observed.
    pub saturated_at: Option<usize>,
}

fn domain_values(space: &SearchSpace, grid: Option<&[f64]>, what: &'static str) -> Result<Vec<Value>, FaError> {
    match space.carrier() {
        Carrier::Finite { .. } => Ok(space.carrier().finite_values().unwrap()),
        Carrier::Real { .. } => {
            let grid = grid.ok_or(FaError::UnsupportedOnReal(what))?;
            if grid.is_empty() {
                return Err(FaError::config("grid", "sample grid must be nonempty"));
            }
            Ok(grid.iter().map(|x| Value::Real(*x)).collect())
        }
    }
}

pub fn information_capacity(
    space: &SearchSpace,
    skeleton: &SequenceSkeleton,
    collapsed: bool,
    grid: Option<&[f64]>,
) -> Result<CapacityReport, FaError> {
    skeleton.validate(space)?;
    let sampled = !space.carrier().is_finite();
    let dom0 = domain_values(space, grid, "information capacity needs a sample grid")?;

    let mut factor_sizes = vec![dom0.len() as u64];
    let mut domain: BTreeSet<u64> = dom0.iter().map(Value::encode).collect();
    let mut last_image_size = 0u64;

    let k = skeleton.len();
    for (i, prim_index) in skeleton.steps.iter().enumerate() {
        let prim = space.primitive(*prim_index);
        let last = i + 1 == k;
        let mut image = BTreeSet::new();
        let mut image_unrestricted = BTreeSet::new();
        for enc in &domain {
            let x = decode(space.carrier(), *enc);
            for a in 0..prim.param_count() {
                let out = eval_without_restriction(space, *prim_index, a, &x)?;
                if let Some(out) = out {
                    image_unrestricted.insert(out.encode());
                    if !prim.restriction.excludes(&out) {
                        image.insert(out.encode());
                    }
                }
            }
        }
        if !collapsed {
            factor_sizes.push(prim.param_count() as u64);
            factor_sizes.push(if last {
                image_unrestricted.len() as u64
            } else {
                image.len() as u64
            });
        }
        last_image_size = image_unrestricted.len() as u64;
        let next = if last { image_unrestricted } else { image };
        if next.is_empty() {
            return Err(FaError::EmptyCapacity { step: i + 1 });
        }
        domain = next;
    }

    if collapsed {
        let mut pool: BTreeSet<Vec<u64>> = BTreeSet::new();
        for prim_index in &skeleton.steps {
            for tuple in &space.primitive(*prim_index).params {
                pool.insert(tuple.0.iter().map(|x| x.to_bits()).collect());
            }
        }
        factor_sizes.push(pool.len() as u64);
        factor_sizes.push(last_image_size);
    }

    let cardinality = factor_sizes
        .iter()
        .fold(BigUint::from(1u32), |acc, f| acc * BigUint::from(*f));
    Ok(CapacityReport {
        cardinality,
        factor_sizes,
        collapsed,
        sampled,
    })
}

fn decode(carrier: &Carrier, enc: u64) -> Value {
    match carrier {
        Carrier::Finite { .. } => Value::Finite(enc),
        Carrier::Real { .. } => Value::Real(f64::from_bits(enc)),
    }
}

/// Rule output before the restriction predicate; `None` when the input lies
/// outside the primitive's domain or the output is not finite.
fn eval_without_restriction(
    space: &SearchSpace,
    prim_index: usize,
    param: usize,
    x: &Value,
) -> Result<Option<Value>, FaError> {
    let prim = space.primitive(prim_index);
    match (space.carrier(), x) {
        (Carrier::Finite { .. }, Value::Finite(_)) => {
            // lookup tables never restrict their own domain; only the
            // restriction predicate can reject, which we bypass here
            let mut unrestricted = prim.clone();
            unrestricted.restriction = Default::default();
            Ok(match eval_primitive(space.carrier(), &unrestricted, param, x)? {
                Value::Undefined => None,
                out => Some(out),
            })
        }
        (Carrier::Real { lo, hi }, Value::Real(v)) => {
            if !(*lo <= *v && *v <= *hi) {
                return Ok(None);
            }
            let crate::primitive::PrimitiveRule::Builtin(form) = &prim.rule else {
                unreachable!("real carriers hold builtin rules");
            };
            let y = form.apply(&prim.params[param].0, *v);
            Ok(if y.is_finite() { Some(Value::Real(y)) } else { None })
        }
        _ => Err(FaError::config("capacity", "value kind does not match the carrier")),
    }
}

/// Number of distinct traces over all bound sequences of length <= `n`.
pub fn information_potential(
    space: &SearchSpace,
    n: usize,
    collapsed: bool,
    grid: Option<&[f64]>,
    ceiling: u128,
) -> Result<PotentialReport, FaError> {
    let traces = potential_traces(space, n, collapsed, grid, ceiling)?;
    Ok(PotentialReport {
        cardinality: traces.len() as u64,
        sampled: !space.carrier().is_finite(),
    })
}

/// The materialized trace set behind `information_potential`, exposed so
/// callers can test union inclusion between spaces.
///
/// Strict traces encode `[x, a_1, v_1, .., a_k, v_k]`; collapsed traces encode
/// `[x, v_k]`. Real values appear as IEEE bits.
pub fn potential_traces(
    space: &SearchSpace,
    n: usize,
    collapsed: bool,
    grid: Option<&[f64]>,
    ceiling: u128,
) -> Result<HashSet<Vec<u64>>, FaError> {
    let counts = count_expanded(space, n)?;
    if counts.bound_sequences > ceiling {
        return Err(FaError::BudgetExceeded {
            count: counts.bound_sequences,
            ceiling,
        });
    }
    let inputs = domain_values(space, grid, "information potential needs a sample grid")?;

    let mut traces = HashSet::new();
    for skeleton in enumerate_structures(space, n) {
        for seq in enumerate_assignments(space, &skeleton) {
            'point: for x in &inputs {
                let mut trace = Vec::with_capacity(1 + 2 * seq.len());
                trace.push(x.encode());
                let mut current = *x;
                for (p, a) in &seq.steps {
                    current = eval_primitive(space.carrier(), space.primitive(*p), *a, &current)?;
                    if current.is_undefined() {
                        continue 'point;
                    }
                    trace.push(*a as u64);
                    trace.push(current.encode());
                }
                if collapsed {
                    traces.insert(vec![trace[0], current.encode()]);
                } else {
                    traces.insert(trace);
                }
            }
        }
    }
    Ok(traces)
}

/// Realized-table counts for length bounds 1..=n_max.
pub fn potential_growth(
    space: &SearchSpace,
    n_max: usize,
    ceiling: u128,
) -> Result<GrowthReport, FaError> {
    if n_max < 1 {
        return Err(FaError::config("n", "length bound must be >= 1"));
    }
    let closure = crate::closure::closure_capped(space, n_max, ceiling)?;
    let mut cardinalities: Vec<u64> = closure.cumulative.iter().map(|c| *c as u64).collect();
    let last = *cardinalities.last().expect("closure runs at least one level");
    while cardinalities.len() < n_max {
        cardinalities.push(last);
    }
    Ok(GrowthReport {
        cardinalities,
        saturated_at: closure.fixpoint_depth.filter(|d| *d <= n_max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitive::{ParamTuple, Primitive, PrimitiveRule, Restriction};
    use crate::solvers::DEFAULT_BUDGET_CEILING;

    fn prim_with_params(id: &str, m: u64, rows: &[&[u64]]) -> Primitive {
        let mut table = Vec::new();
        for row in rows {
            assert_eq!(row.len(), m as usize);
            table.extend_from_slice(row);
        }
        Primitive {
            id: id.into(),
            rule: PrimitiveRule::LookupTable(table),
            params: (0..rows.len()).map(|i| ParamTuple(vec![i as f64])).collect(),
            restriction: Restriction::None,
        }
    }

    #[test]
    fn one_step_full_image() {
        // |dom| = 3, two parameter rows covering the full carrier
        let prim = prim_with_params("f", 3, &[&[1, 2, 0], &[2, 0, 1]]);
        let space = SearchSpace::new(Carrier::finite(3).unwrap(), vec![prim]).unwrap();
        let report =
            information_capacity(&space, &SequenceSkeleton::new(vec![0]), false, None).unwrap();
        assert_eq!(report.factor_sizes, vec![3, 2, 3]);
        assert_eq!(report.cardinality, BigUint::from(18u32));
    }

    #[test]
    fn restriction_shrinks_intermediate_factors() {
        // step 1 realizes {0, 1, 2} but 0 is restricted away; step 2 maps {1, 2}
        // onto two values
        let mut first = prim_with_params("first", 3, &[&[0, 1, 2]]);
        first.restriction = Restriction::Exclude(vec![0]);
        let second = prim_with_params("second", 3, &[&[0, 2, 1]]);
        let space =
            SearchSpace::new(Carrier::finite(3).unwrap(), vec![first, second]).unwrap();
        let report =
            information_capacity(&space, &SequenceSkeleton::new(vec![0, 1]), false, None).unwrap();
        assert_eq!(report.factor_sizes, vec![3, 1, 2, 1, 2]);
        assert_eq!(report.cardinality, BigUint::from(12u32));
    }

    #[test]
    fn identity_squares_the_carrier() {
        for m in [2u64, 3, 5] {
            let identity: Vec<u64> = (0..m).collect();
            let space = SearchSpace::new(
                Carrier::finite(m).unwrap(),
                vec![Primitive::table("id", identity)],
            )
            .unwrap();
            let report =
                information_capacity(&space, &SequenceSkeleton::new(vec![0]), false, None).unwrap();
            assert_eq!(report.cardinality, BigUint::from(m * m));
        }
    }

    #[test]
    fn empty_image_is_its_own_condition() {
        // step 1 realizes only the restricted value, so nothing reaches step 2
        let mut prim = prim_with_params("f", 2, &[&[0, 0]]);
        prim.restriction = Restriction::Exclude(vec![0]);
        let space = SearchSpace::new(Carrier::finite(2).unwrap(), vec![prim]).unwrap();
        let err = information_capacity(&space, &SequenceSkeleton::new(vec![0, 0]), false, None)
            .unwrap_err();
        assert!(matches!(err, FaError::EmptyCapacity { step: 1 }));
    }

    #[test]
    fn identity_potential_is_one_trace_per_input() {
        let space = SearchSpace::new(
            Carrier::finite(3).unwrap(),
            vec![Primitive::table("id", vec![0, 1, 2])],
        )
        .unwrap();
        let report =
            information_potential(&space, 1, false, None, DEFAULT_BUDGET_CEILING).unwrap();
        assert_eq!(report.cardinality, 3);
        assert!(!report.sampled);
    }

    #[test]
    fn adding_a_primitive_strictly_grows_strict_potential() {
        let inc = Primitive::table("inc", vec![1, 2, 0]);
        let swap = Primitive::table("swap01", vec![1, 0, 2]);
        let small =
            SearchSpace::new(Carrier::finite(3).unwrap(), vec![inc.clone()]).unwrap();
        let big = SearchSpace::new(Carrier::finite(3).unwrap(), vec![inc, swap]).unwrap();
        let a = potential_traces(&small, 2, false, None, DEFAULT_BUDGET_CEILING).unwrap();
        let b = potential_traces(&big, 2, false, None, DEFAULT_BUDGET_CEILING).unwrap();
        assert!(a.is_subset(&b));
        assert!(a.len() < b.len());
    }

    #[test]
    fn collapsed_potential_ignores_parameter_slicing() {
        // same rule row published under one label vs the same row twice under
        // different labels: strict potentials differ, collapsed ones agree
        let single = prim_with_params("f", 3, &[&[1, 2, 0]]);
        let doubled = prim_with_params("f", 3, &[&[1, 2, 0], &[1, 2, 0]]);
        let s1 = SearchSpace::new(Carrier::finite(3).unwrap(), vec![single]).unwrap();
        let s2 = SearchSpace::new(Carrier::finite(3).unwrap(), vec![doubled]).unwrap();

        let strict1 = potential_traces(&s1, 2, false, None, DEFAULT_BUDGET_CEILING).unwrap();
        let strict2 = potential_traces(&s2, 2, false, None, DEFAULT_BUDGET_CEILING).unwrap();
        assert!(strict1.len() < strict2.len());

        let c1 = potential_traces(&s1, 2, true, None, DEFAULT_BUDGET_CEILING).unwrap();
        let c2 = potential_traces(&s2, 2, true, None, DEFAULT_BUDGET_CEILING).unwrap();
        assert_eq!(c1, c2);
    }

    #[test]
    fn growth_saturates_with_the_cycle_order() {
        let space = SearchSpace::new(
            Carrier::finite(3).unwrap(),
            vec![Primitive::table("inc", vec![1, 2, 0])],
        )
        .unwrap();
        let growth = potential_growth(&space, 5, DEFAULT_BUDGET_CEILING).unwrap();
        assert_eq!(growth.cardinalities, vec![1, 2, 3, 3, 3]);
        assert_eq!(growth.saturated_at, Some(3));
    }

    #[test]
    fn constants_saturate_immediately() {
        let space = SearchSpace::new(
            Carrier::finite(3).unwrap(),
            vec![Primitive::table("const0", vec![0, 0, 0])],
        )
        .unwrap();
        let growth = potential_growth(&space, 3, DEFAULT_BUDGET_CEILING).unwrap();
        assert_eq!(growth.cardinalities, vec![1, 1, 1]);
        assert_eq!(growth.saturated_at, Some(1));
    }

    #[test]
    fn potential_refuses_over_ceiling() {
        let space = SearchSpace::new(
            Carrier::finite(3).unwrap(),
            vec![
                Primitive::table("a", vec![1, 2, 0]),
                Primitive::table("b", vec![1, 0, 2]),
            ],
        )
        .unwrap();
        let err = information_potential(&space, 4, false, None, 10).unwrap_err();
        assert!(matches!(err, FaError::BudgetExceeded { count: 30, .. }));
    }
}
