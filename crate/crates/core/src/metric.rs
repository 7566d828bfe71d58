use crate::carrier::Value;
use crate::error::FaError;

/// Pointwise discrepancy used inside the approximation error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    AbsDiff,
    SquaredDiff,
    ZeroOne,
}

impl MetricKind {
    pub fn label(&self) -> &'static str {
        match self {
            MetricKind::AbsDiff => "abs",
            MetricKind::SquaredDiff => "sq",
            MetricKind::ZeroOne => "01",
        }
    }
}

/// Rule applied when the candidate is undefined at a sample point.
///
/// `Magnitude` keeps the metric nonnegative: |y|, y², or 1 by metric kind.
/// `Literal` returns the raw target value, signed; it exists for side-by-side
/// comparison with the magnitude convention and may go negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UndefinedFallback {
    #[default]
    Magnitude,
    Literal,
}

/// Absolute tolerance for zero-one equality on real values. Finite elements
/// compare exactly; round-off must not flip a frequentist count.
pub const REAL_EQ_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metric {
    pub kind: MetricKind,
    pub fallback: UndefinedFallback,
}

impl Metric {
    pub fn new(kind: MetricKind) -> Self {
        Metric { kind, fallback: UndefinedFallback::default() }
    }

    pub fn abs_diff() -> Self {
        Metric::new(MetricKind::AbsDiff)
    }

    pub fn squared_diff() -> Self {
        Metric::new(MetricKind::SquaredDiff)
    }

    pub fn zero_one() -> Self {
        Metric::new(MetricKind::ZeroOne)
    }

    pub fn with_fallback(mut self, fallback: UndefinedFallback) -> Self {
        self.fallback = fallback;
        self
    }
}

/// `d(a, b)` where `b` is a target value and therefore always defined. An
/// undefined `a` triggers the fallback rule; mixing carriers is a configuration
/// error.
pub fn metric_eval(metric: Metric, a: &Value, b: &Value) -> Result<f64, FaError> {
    let target = b
        .as_real()
        .ok_or_else(|| FaError::config("metric", "target values must be defined"))?;

    match a {
        Value::Undefined => Ok(match metric.fallback {
            UndefinedFallback::Literal => target,
            UndefinedFallback::Magnitude => match metric.kind {
                MetricKind::AbsDiff => target.abs(),
                MetricKind::SquaredDiff => target * target,
                MetricKind::ZeroOne => 1.0,
            },
        }),
        Value::Finite(ai) => {
            let Value::Finite(bi) = b else {
                return Err(FaError::config("metric", "carrier mismatch between compared values"));
            };
            Ok(match metric.kind {
                MetricKind::AbsDiff => (*ai as f64 - *bi as f64).abs(),
                MetricKind::SquaredDiff => {
                    let d = *ai as f64 - *bi as f64;
                    d * d
                }
                MetricKind::ZeroOne => {
                    if ai == bi {
                        0.0
                    } else {
                        1.0
                    }
                }
            })
        }
        Value::Real(av) => {
            let Value::Real(bv) = b else {
                return Err(FaError::config("metric", "carrier mismatch between compared values"));
            };
            Ok(match metric.kind {
                MetricKind::AbsDiff => (av - bv).abs(),
                MetricKind::SquaredDiff => {
                    let d = av - bv;
                    d * d
                }
                MetricKind::ZeroOne => {
                    if (av - bv).abs() <= REAL_EQ_TOLERANCE {
                        0.0
                    } else {
                        1.0
                    }
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abs_diff_direct() {
        let d = metric_eval(Metric::abs_diff(), &Value::Finite(2), &Value::Finite(5)).unwrap();
        assert_eq!(d, 3.0);
    }

    #[test]
    fn zero_one_identity() {
        let d = metric_eval(Metric::zero_one(), &Value::Finite(4), &Value::Finite(4)).unwrap();
        assert_eq!(d, 0.0);
        let d = metric_eval(Metric::zero_one(), &Value::Real(0.3), &Value::Real(0.3)).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn undefined_fallback_is_magnitude() {
        let d = metric_eval(Metric::abs_diff(), &Value::Undefined, &Value::Real(-5.0)).unwrap();
        assert_eq!(d, 5.0);
        let d = metric_eval(Metric::squared_diff(), &Value::Undefined, &Value::Real(-3.0)).unwrap();
        assert_eq!(d, 9.0);
        let d = metric_eval(Metric::zero_one(), &Value::Undefined, &Value::Finite(0)).unwrap();
        assert_eq!(d, 1.0);
    }

    #[test]
    fn literal_fallback_returns_signed_target() {
        let m = Metric::abs_diff().with_fallback(UndefinedFallback::Literal);
        let d = metric_eval(m, &Value::Undefined, &Value::Real(-5.0)).unwrap();
        assert_eq!(d, -5.0);
    }

    #[test]
    fn zero_one_real_tolerance() {
        let d = metric_eval(Metric::zero_one(), &Value::Real(0.5), &Value::Real(0.5 + 1e-12)).unwrap();
        assert_eq!(d, 0.0);
        let d = metric_eval(Metric::zero_one(), &Value::Real(0.5), &Value::Real(0.5 + 1e-6)).unwrap();
        assert_eq!(d, 1.0);
    }

    #[test]
    fn carrier_mismatch_is_config_error() {
        let e = metric_eval(Metric::abs_diff(), &Value::Finite(1), &Value::Real(1.0));
        assert!(e.is_err());
    }

    #[test]
    fn symmetry_on_defined_values() {
        for (a, b) in [(0u64, 2u64), (1, 1), (2, 0)] {
            for m in [Metric::abs_diff(), Metric::squared_diff(), Metric::zero_one()] {
                let ab = metric_eval(m, &Value::Finite(a), &Value::Finite(b)).unwrap();
                let ba = metric_eval(m, &Value::Finite(b), &Value::Finite(a)).unwrap();
                assert_eq!(ab, ba);
            }
        }
    }
}
