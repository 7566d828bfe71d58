//! Evaluation of primitives, sequences, and the approximation error.
//!
//! A step evaluates to undefined when its input falls outside the primitive's
//! domain (real carriers: the carrier interval), when the rule's output is not
//! a finite number, or when the output lands in the restriction set. Undefined
//! absorbs: once any prefix of a sequence is undefined at a point, the whole
//! sequence is.

use crate::carrier::{Carrier, Value};
use crate::error::FaError;
use crate::metric::{metric_eval, Metric};
use crate::primitive::{Primitive, PrimitiveRule};
use crate::sample::SampleSet;
use crate::sequence::BoundSequence;
use crate::space::SearchSpace;

/// Apply one primitive at `x` with the given parameter row.
pub fn eval_primitive(
    carrier: &Carrier,
    prim: &Primitive,
    param_index: usize,
    x: &Value,
) -> Result<Value, FaError> {
    if param_index >= prim.param_count() {
        return Err(FaError::config(
            format!("primitive `{}`", prim.id),
            format!(
                "parameter index {param_index} out of range (|params| = {})",
                prim.param_count()
            ),
        ));
    }
    match (x, carrier, &prim.rule) {
        (Value::Undefined, _, _) => Ok(Value::Undefined),
        (Value::Finite(i), Carrier::Finite { m }, PrimitiveRule::LookupTable(table)) => {
            if i >= m {
                return Err(FaError::config(
                    format!("primitive `{}`", prim.id),
                    format!("input {i} lies outside the carrier Z_{m}"),
                ));
            }
            let out = Value::Finite(table[param_index * *m as usize + *i as usize]);
            if prim.restriction.excludes(&out) {
                Ok(Value::Undefined)
            } else {
                Ok(out)
            }
        }
        (Value::Real(v), Carrier::Real { lo, hi }, PrimitiveRule::Builtin(form)) => {
            if !(*lo <= *v && *v <= *hi) {
                return Ok(Value::Undefined);
            }
            let y = form.apply(&prim.params[param_index].0, *v);
            if !y.is_finite() {
                return Ok(Value::Undefined);
            }
            let out = Value::Real(y);
            if prim.restriction.excludes(&out) {
                Ok(Value::Undefined)
            } else {
                Ok(out)
            }
        }
        _ => Err(FaError::config(
            format!("primitive `{}`", prim.id),
            "value kind does not match the carrier",
        )),
    }
}

/// Apply a sequence at `x`, step 0 first.
pub fn eval_sequence(space: &SearchSpace, seq: &BoundSequence, x: &Value) -> Result<Value, FaError> {
    seq.validate(space)?;
    Ok(eval_sequence_unchecked(space, seq, x))
}

/// Evaluation body shared with the solvers, which validate once up front.
pub(crate) fn eval_sequence_unchecked(space: &SearchSpace, seq: &BoundSequence, x: &Value) -> Value {
    let mut current = *x;
    for (p, a) in &seq.steps {
        if current.is_undefined() {
            return Value::Undefined;
        }
        current = eval_primitive(space.carrier(), space.primitive(*p), *a, &current)
            .expect("validated sequence evaluates without configuration errors");
    }
    current
}

/// Mean metric discrepancy of a sequence against the sampled target, summed in
/// the listed sample order so the floating-point result is reproducible.
pub fn approximation_error(
    space: &SearchSpace,
    seq: &BoundSequence,
    samples: &SampleSet,
    metric: Metric,
) -> Result<f64, FaError> {
    seq.validate(space)?;
    if samples.carrier() != space.carrier() {
        return Err(FaError::config(
            "samples",
            "sample set and space use different carriers",
        ));
    }
    Ok(approximation_error_unchecked(space, seq, samples, metric))
}

pub(crate) fn approximation_error_unchecked(
    space: &SearchSpace,
    seq: &BoundSequence,
    samples: &SampleSet,
    metric: Metric,
) -> f64 {
    let mut sum = 0.0;
    for (x, y) in samples.points() {
        let out = eval_sequence_unchecked(space, seq, x);
        sum += metric_eval(metric, &out, y)
            .expect("sample sets hold defined values of the space's carrier");
    }
    sum / samples.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitive::{ParamTuple, Restriction};

    fn z3_inc_space() -> SearchSpace {
        SearchSpace::new(
            Carrier::finite(3).unwrap(),
            vec![Primitive::table("inc", vec![1, 2, 0])],
        )
        .unwrap()
    }

    #[test]
    fn table_lookup() {
        let space = z3_inc_space();
        let out = eval_primitive(space.carrier(), space.primitive(0), 0, &Value::Finite(2)).unwrap();
        assert_eq!(out, Value::Finite(0));
    }

    #[test]
    fn affine_identity() {
        let carrier = Carrier::real(-1.0, 1.0).unwrap();
        let prim = Primitive {
            id: "aff".into(),
            rule: PrimitiveRule::Builtin(crate::primitive::BuiltinForm::Affine),
            params: vec![ParamTuple(vec![1.0, 0.0])],
            restriction: Restriction::None,
        };
        let out = eval_primitive(&carrier, &prim, 0, &Value::Real(0.5)).unwrap();
        assert_eq!(out, Value::Real(0.5));
    }

    #[test]
    fn restricted_output_is_undefined() {
        let carrier = Carrier::finite(3).unwrap();
        let mut prim = Primitive::table("f", vec![2, 2, 2]);
        prim.restriction = Restriction::Exclude(vec![2]);
        let out = eval_primitive(&carrier, &prim, 0, &Value::Finite(0)).unwrap();
        assert_eq!(out, Value::Undefined);
    }

    #[test]
    fn out_of_range_param_is_config_error() {
        let space = z3_inc_space();
        let err = eval_primitive(space.carrier(), space.primitive(0), 1, &Value::Finite(0));
        assert!(err.is_err());
    }

    #[test]
    fn out_of_domain_real_input_is_undefined() {
        let carrier = Carrier::real(-1.0, 1.0).unwrap();
        let prim = Primitive {
            id: "s".into(),
            rule: PrimitiveRule::Builtin(crate::primitive::BuiltinForm::Sin),
            params: vec![ParamTuple::empty()],
            restriction: Restriction::None,
        };
        let out = eval_primitive(&carrier, &prim, 0, &Value::Real(2.0)).unwrap();
        assert_eq!(out, Value::Undefined);
    }

    #[test]
    fn sequence_applies_leftmost_first() {
        let space = z3_inc_space();
        let seq = BoundSequence::new(vec![(0, 0), (0, 0)]);
        let out = eval_sequence(&space, &seq, &Value::Finite(1)).unwrap();
        assert_eq!(out, Value::Finite(0));
    }

    #[test]
    fn length_one_identity() {
        let space = SearchSpace::new(
            Carrier::finite(3).unwrap(),
            vec![Primitive::table("id", vec![0, 1, 2])],
        )
        .unwrap();
        for x in 0..3 {
            let seq = BoundSequence::new(vec![(0, 0)]);
            assert_eq!(
                eval_sequence(&space, &seq, &Value::Finite(x)).unwrap(),
                Value::Finite(x)
            );
        }
    }

    #[test]
    fn undefined_propagates_past_later_steps() {
        let carrier = Carrier::finite(3).unwrap();
        let mut blocker = Primitive::table("blocker", vec![2, 0, 1]);
        blocker.restriction = Restriction::Exclude(vec![2]);
        let inc = Primitive::table("inc", vec![1, 2, 0]);
        let space = SearchSpace::new(carrier, vec![blocker, inc]).unwrap();
        // blocker(0) = 2 is excluded, so every extension stays undefined
        let seq = BoundSequence::new(vec![(0, 0), (1, 0), (1, 0)]);
        assert_eq!(
            eval_sequence(&space, &seq, &Value::Finite(0)).unwrap(),
            Value::Undefined
        );
        // other inputs pass through
        assert_eq!(
            eval_sequence(&space, &seq, &Value::Finite(1)).unwrap(),
            Value::Finite(2)
        );
    }

    #[test]
    fn error_zero_when_sequence_matches_target() {
        let space = z3_inc_space();
        let samples = SampleSet::from_finite_table(3, &[1, 2, 0]).unwrap();
        let seq = BoundSequence::new(vec![(0, 0)]);
        let err = approximation_error(&space, &seq, &samples, Metric::zero_one()).unwrap();
        assert_eq!(err, 0.0);
    }

    #[test]
    fn error_is_mean_abs_gap() {
        // f(x) = x, target y = x + 1 on sigma = {1, 2}
        let space = SearchSpace::new(
            Carrier::finite(4).unwrap(),
            vec![Primitive::table("id", vec![0, 1, 2, 3])],
        )
        .unwrap();
        let samples = SampleSet::new(
            *space.carrier(),
            vec![
                (Value::Finite(1), Value::Finite(2)),
                (Value::Finite(2), Value::Finite(3)),
            ],
        )
        .unwrap();
        let identity = BoundSequence::new(vec![(0, 0)]);
        let err = approximation_error(&space, &identity, &samples, Metric::abs_diff()).unwrap();
        assert_eq!(err, 1.0);
    }

    #[test]
    fn zero_one_counts_disagreements() {
        let space = z3_inc_space();
        // inc disagrees with this target on exactly one of three points
        let samples = SampleSet::from_finite_table(3, &[1, 2, 1]).unwrap();
        let seq = BoundSequence::new(vec![(0, 0)]);
        let err = approximation_error(&space, &seq, &samples, Metric::zero_one()).unwrap();
        assert_eq!(err, 1.0 / 3.0);
    }

    #[test]
    fn evaluation_is_deterministic() {
        let space = z3_inc_space();
        let seq = BoundSequence::new(vec![(0, 0), (0, 0)]);
        let a = eval_sequence(&space, &seq, &Value::Finite(2)).unwrap();
        let b = eval_sequence(&space, &seq, &Value::Finite(2)).unwrap();
        assert_eq!(a, b);
    }
}
