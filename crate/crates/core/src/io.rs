//! JSON formats for search spaces and targets, `format_version` 1.
//!
//! A space document:
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "carrier": {"kind": "finite", "m": 3},
//!   "primitives": [
//!     {"id": "inc", "rule": {"table": [1, 2, 0]}, "params": [[]], "restriction": null}
//!   ]
//! }
//! ```
//!
//! Lookup tables list outputs per parameter row (`param * m + input`); real
//! carriers use `"rule": {"builtin": "affine"}` with parameter tuples filling
//! the form's slots. Restrictions are a list of excluded outputs on finite
//! carriers or `{"keep": [lo, hi]}` on real ones.
//!
//! A target document names its source — a builtin function, an inline table,
//! or a sequence over the governing space — plus an optional explicit sigma:
//!
//! ```json
//! {"format_version": 1, "source": {"builtin": {"name": "identity", "carrier": {"kind": "finite", "m": 3}}}}
//! {"format_version": 1, "source": {"table": {"carrier": {"kind": "finite", "m": 3}, "points": [[0, 1], [1, 2], [2, 0]]}}}
//! {"format_version": 1, "source": {"sequence": {"steps": [["inc", 0], ["inc", 0]]}}, "sigma": [0, 1, 2]}
//! ```
//!
//! When sigma is omitted it defaults to the full carrier (finite) or a 64-point
//! grid (real). Builtin targets: `identity`, `inc`, `const0` on finite
//! carriers; `identity`, `sin`, `square`, `relu` on real ones.

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, Value};
use crate::error::FaError;
use crate::primitive::{BuiltinForm, ParamTuple, Primitive, PrimitiveRule, Restriction};
use crate::sample::SampleSet;
use crate::sequence::BoundSequence;
use crate::space::SearchSpace;

pub const FORMAT_VERSION: u32 = 1;

/// Sigma width used when a real-carrier target omits its sample points.
pub const DEFAULT_REAL_GRID: usize = 64;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub format_version: u32,
    pub carrier: Carrier,
    pub primitives: Vec<PrimitiveSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrimitiveSpec {
    pub id: String,
    pub rule: RuleSpec,
    pub params: Vec<Vec<f64>>,
    #[serde(default)]
    pub restriction: Option<RestrictionSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleSpec {
    Table(Vec<u64>),
    Builtin(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RestrictionSpec {
    Exclude(Vec<u64>),
    Keep { keep: [f64; 2] },
}

pub fn load_space(text: &str) -> Result<SearchSpace, FaError> {
    let spec: SpaceSpec = serde_json::from_str(text)
        .map_err(|e| FaError::config("space", format!("invalid JSON: {e}")))?;
    space_from_spec(&spec)
}

pub fn load_space_file(path: &std::path::Path) -> Result<SearchSpace, FaError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        FaError::config("space", format!("cannot read `{}`: {e}", path.display()))
    })?;
    load_space(&text)
}

pub fn space_from_spec(spec: &SpaceSpec) -> Result<SearchSpace, FaError> {
    if spec.format_version != FORMAT_VERSION {
        return Err(FaError::config(
            "format_version",
            format!("expected {FORMAT_VERSION}, found {}", spec.format_version),
        ));
    }
    spec.carrier.validate("carrier")?;
    let mut primitives = Vec::with_capacity(spec.primitives.len());
    for (i, p) in spec.primitives.iter().enumerate() {
        let key = format!("primitives[{i}]");
        let rule = match &p.rule {
            RuleSpec::Table(entries) => PrimitiveRule::LookupTable(entries.clone()),
            RuleSpec::Builtin(name) => {
                let form = BuiltinForm::from_name(name).ok_or_else(|| {
                    FaError::config(format!("{key}.rule.builtin"), format!("unknown builtin `{name}`"))
                })?;
                PrimitiveRule::Builtin(form)
            }
        };
        let restriction = match &p.restriction {
            None => Restriction::None,
            Some(RestrictionSpec::Exclude(values)) => Restriction::Exclude(values.clone()),
            Some(RestrictionSpec::Keep { keep }) => Restriction::Keep { lo: keep[0], hi: keep[1] },
        };
        primitives.push(Primitive {
            id: p.id.clone(),
            rule,
            params: p.params.iter().map(|t| ParamTuple(t.clone())).collect(),
            restriction,
        });
    }
    SearchSpace::new(spec.carrier, primitives)
}

pub fn space_to_spec(space: &SearchSpace) -> SpaceSpec {
    SpaceSpec {
        format_version: FORMAT_VERSION,
        carrier: *space.carrier(),
        primitives: space
            .primitives()
            .iter()
            .map(|p| PrimitiveSpec {
                id: p.id.clone(),
                rule: match &p.rule {
                    PrimitiveRule::LookupTable(t) => RuleSpec::Table(t.clone()),
                    PrimitiveRule::Builtin(form) => RuleSpec::Builtin(form.name().to_string()),
                },
                params: p.params.iter().map(|t| t.0.clone()).collect(),
                restriction: match &p.restriction {
                    Restriction::None => None,
                    Restriction::Exclude(v) => Some(RestrictionSpec::Exclude(v.clone())),
                    Restriction::Keep { lo, hi } => Some(RestrictionSpec::Keep { keep: [*lo, *hi] }),
                },
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TargetSpec {
    pub format_version: u32,
    pub source: SourceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceSpec {
    Builtin { name: String, carrier: Carrier },
    Table { carrier: Carrier, points: Vec<(f64, f64)> },
    Sequence { steps: Vec<(String, usize)> },
}

pub fn load_target(text: &str) -> Result<TargetSpec, FaError> {
    let spec: TargetSpec = serde_json::from_str(text)
        .map_err(|e| FaError::config("target", format!("invalid JSON: {e}")))?;
    if spec.format_version != FORMAT_VERSION {
        return Err(FaError::config(
            "target.format_version",
            format!("expected {FORMAT_VERSION}, found {}", spec.format_version),
        ));
    }
    Ok(spec)
}

pub fn load_target_file(path: &std::path::Path) -> Result<TargetSpec, FaError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        FaError::config("target", format!("cannot read `{}`: {e}", path.display()))
    })?;
    load_target(&text)
}

fn value_from_number(carrier: &Carrier, x: f64, key: &str) -> Result<Value, FaError> {
    match carrier {
        Carrier::Finite { m } => {
            if x.fract() != 0.0 || x < 0.0 || x >= *m as f64 {
                return Err(FaError::config(
                    key,
                    format!("{x} is not an element of Z_{m}"),
                ));
            }
            Ok(Value::Finite(x as u64))
        }
        Carrier::Real { .. } => {
            if !x.is_finite() {
                return Err(FaError::config(key, "real values must be finite"));
            }
            Ok(Value::Real(x))
        }
    }
}

fn default_sigma(carrier: &Carrier) -> Vec<Value> {
    match carrier {
        Carrier::Finite { .. } => carrier.finite_values().unwrap(),
        Carrier::Real { .. } => carrier
            .grid(DEFAULT_REAL_GRID)
            .unwrap()
            .into_iter()
            .map(Value::Real)
            .collect(),
    }
}

fn builtin_target(name: &str, carrier: &Carrier, x: &Value) -> Result<Value, FaError> {
    match (carrier, x) {
        (Carrier::Finite { m }, Value::Finite(i)) => {
            let y = match name {
                "identity" => *i,
                "inc" => (*i + 1) % *m,
                "const0" => 0,
                _ => {
                    return Err(FaError::config(
                        "target.source.builtin.name",
                        format!("unknown finite builtin `{name}`"),
                    ))
                }
            };
            Ok(Value::Finite(y))
        }
        (Carrier::Real { .. }, Value::Real(v)) => {
            let y = match name {
                "identity" => *v,
                "sin" => v.sin(),
                "square" => v * v,
                "relu" => v.max(0.0),
                _ => {
                    return Err(FaError::config(
                        "target.source.builtin.name",
                        format!("unknown real builtin `{name}`"),
                    ))
                }
            };
            Ok(Value::Real(y))
        }
        _ => unreachable!("sigma values are drawn from the carrier"),
    }
}

/// Materialize the target into a total sample set. Sequence sources need the
/// governing space; the others stand alone.
pub fn resolve_target(
    spec: &TargetSpec,
    space: Option<&SearchSpace>,
) -> Result<SampleSet, FaError> {
    match &spec.source {
        SourceSpec::Table { carrier, points } => {
            carrier.validate("target.source.table.carrier")?;
            if spec.sigma.is_some() {
                return Err(FaError::config(
                    "target.sigma",
                    "table sources imply their sigma; drop the explicit one",
                ));
            }
            let mut pairs = Vec::with_capacity(points.len());
            for (i, (x, y)) in points.iter().enumerate() {
                pairs.push((
                    value_from_number(carrier, *x, &format!("target.source.table.points[{i}].x"))?,
                    match carrier {
                        Carrier::Finite { .. } => value_from_number(
                            carrier,
                            *y,
                            &format!("target.source.table.points[{i}].y"),
                        )?,
                        Carrier::Real { .. } => {
                            if !y.is_finite() {
                                return Err(FaError::config(
                                    format!("target.source.table.points[{i}].y"),
                                    "real values must be finite",
                                ));
                            }
                            Value::Real(*y)
                        }
                    },
                ));
            }
            SampleSet::new(*carrier, pairs)
        }
        SourceSpec::Builtin { name, carrier } => {
            carrier.validate("target.source.builtin.carrier")?;
            let sigma = sigma_values(spec, carrier)?;
            let pairs = sigma
                .iter()
                .map(|x| Ok((*x, builtin_target(name, carrier, x)?)))
                .collect::<Result<Vec<_>, FaError>>()?;
            SampleSet::new(*carrier, pairs)
        }
        SourceSpec::Sequence { steps } => {
            let space = space.ok_or_else(|| {
                FaError::config(
                    "target.source.sequence",
                    "sequence targets need a governing space",
                )
            })?;
            let ids: Vec<(&str, usize)> =
                steps.iter().map(|(id, a)| (id.as_str(), *a)).collect();
            let seq = BoundSequence::from_ids(&ids, space)?;
            let sigma = sigma_values(spec, space.carrier())?;
            let mut pairs = Vec::with_capacity(sigma.len());
            for x in &sigma {
                let y = crate::eval::eval_sequence(space, &seq, x)?;
                if y.is_undefined() {
                    return Err(FaError::config(
                        "target.source.sequence",
                        format!("sequence target is undefined at x = {x}; targets must be total on sigma"),
                    ));
                }
                pairs.push((*x, y));
            }
            SampleSet::new(*space.carrier(), pairs)
        }
    }
}

fn sigma_values(spec: &TargetSpec, carrier: &Carrier) -> Result<Vec<Value>, FaError> {
    match &spec.sigma {
        None => Ok(default_sigma(carrier)),
        Some(xs) => {
            if xs.is_empty() {
                return Err(FaError::config("target.sigma", "sigma must be nonempty"));
            }
            xs.iter()
                .enumerate()
                .map(|(i, x)| value_from_number(carrier, *x, &format!("target.sigma[{i}]")))
                .collect()
        }
    }
}
