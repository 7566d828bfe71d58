use serde::{Deserialize, Serialize};

use crate::error::FaError;

/// The value universe a search space and its targets share: the finite modular
/// set `{0, .., m-1}` or a closed real interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Carrier {
    Finite { m: u64 },
    Real { lo: f64, hi: f64 },
}

impl Carrier {
    pub fn finite(m: u64) -> Result<Self, FaError> {
        if m < 1 {
            return Err(FaError::config("carrier.m", "finite carrier requires m >= 1"));
        }
        Ok(Carrier::Finite { m })
    }

    pub fn real(lo: f64, hi: f64) -> Result<Self, FaError> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(FaError::config(
                "carrier",
                "real carrier requires finite bounds with lo < hi",
            ));
        }
        Ok(Carrier::Real { lo, hi })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Carrier::Finite { .. })
    }

    /// Checked after deserialization, where the constructors were bypassed.
    pub fn validate(&self, key: &str) -> Result<(), FaError> {
        match self {
            Carrier::Finite { m } => {
                Carrier::finite(*m).map_err(|_| FaError::config(format!("{key}.m"), "finite carrier requires m >= 1"))?;
            }
            Carrier::Real { lo, hi } => {
                Carrier::real(*lo, *hi)
                    .map_err(|_| FaError::config(key, "real carrier requires finite bounds with lo < hi"))?;
            }
        }
        Ok(())
    }

    /// Domain membership. Real carriers admit any point of the interval; finite
    /// carriers admit indices below `m`.
    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Carrier::Finite { m }, Value::Finite(i)) => i < m,
            (Carrier::Real { lo, hi }, Value::Real(x)) => x.is_finite() && *lo <= *x && *x <= *hi,
            _ => false,
        }
    }

    /// All domain values of a finite carrier.
    pub fn finite_values(&self) -> Option<Vec<Value>> {
        match self {
            Carrier::Finite { m } => Some((0..*m).map(Value::Finite).collect()),
            Carrier::Real { .. } => None,
        }
    }

    /// Evenly spaced grid over a real carrier, endpoints included.
    pub fn grid(&self, points: usize) -> Option<Vec<f64>> {
        match self {
            Carrier::Real { lo, hi } => {
                assert!(points >= 2);
                let step = (hi - lo) / (points - 1) as f64;
                Some((0..points).map(|i| lo + step * i as f64).collect())
            }
            Carrier::Finite { .. } => None,
        }
    }
}

/// A tagged scalar. `Undefined` arises only from evaluation outside a domain or
/// restriction; it is never a stored sample value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Finite(u64),
    Real(f64),
    Undefined,
}

impl Value {
    pub fn is_undefined(&self) -> bool {
        matches!(self, Value::Undefined)
    }

    /// Numeric view used by metrics; finite elements read as their index.
    pub fn as_real(&self) -> Option<f64> {
        match self {
            Value::Finite(i) => Some(*i as f64),
            Value::Real(x) => Some(*x),
            Value::Undefined => None,
        }
    }

    /// Stable 64-bit encoding for dedup keys: index for finite elements, IEEE
    /// bits for reals.
    pub fn encode(&self) -> u64 {
        match self {
            Value::Finite(i) => *i,
            Value::Real(x) => x.to_bits(),
            Value::Undefined => panic!("undefined values have no encoding"),
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Finite(i) => write!(f, "{i}"),
            Value::Real(x) => write!(f, "{x}"),
            Value::Undefined => write!(f, "undefined"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_carrier_rejects_zero() {
        assert!(Carrier::finite(0).is_err());
        assert!(Carrier::finite(1).is_ok());
    }

    #[test]
    fn real_carrier_requires_ordered_bounds() {
        assert!(Carrier::real(1.0, 1.0).is_err());
        assert!(Carrier::real(2.0, -2.0).is_err());
        assert!(Carrier::real(-1.0, 1.0).is_ok());
    }

    #[test]
    fn membership_respects_kind() {
        let zm = Carrier::finite(3).unwrap();
        assert!(zm.contains(&Value::Finite(2)));
        assert!(!zm.contains(&Value::Finite(3)));
        assert!(!zm.contains(&Value::Real(0.5)));

        let iv = Carrier::real(-1.0, 1.0).unwrap();
        assert!(iv.contains(&Value::Real(0.5)));
        assert!(!iv.contains(&Value::Real(1.5)));
        assert!(!iv.contains(&Value::Undefined));
    }

    #[test]
    fn grid_hits_endpoints() {
        let iv = Carrier::real(0.0, 1.0).unwrap();
        let g = iv.grid(5).unwrap();
        assert_eq!(g.first(), Some(&0.0));
        assert_eq!(g.last(), Some(&1.0));
        assert_eq!(g.len(), 5);
    }
}
