use crate::carrier::{Carrier, Value};
use crate::error::FaError;

/// One parameter tuple. For lookup-table primitives the tuple is an opaque grid
/// label whose position selects a table row; for builtin forms the entries fill
/// the form's slots in order.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamTuple(pub Vec<f64>);

impl ParamTuple {
    pub fn empty() -> Self {
        ParamTuple(Vec::new())
    }

    fn bits(&self) -> Vec<u64> {
        self.0.iter().map(|x| x.to_bits()).collect()
    }
}

/// Closed-form rules available on real carriers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinForm {
    Affine,
    Scale,
    Sin,
    Exp,
    Relu,
    Constant,
}

impl BuiltinForm {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "affine" => BuiltinForm::Affine,
            "scale" => BuiltinForm::Scale,
            "sin" => BuiltinForm::Sin,
            "exp" => BuiltinForm::Exp,
            "relu" => BuiltinForm::Relu,
            "constant" => BuiltinForm::Constant,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinForm::Affine => "affine",
            BuiltinForm::Scale => "scale",
            BuiltinForm::Sin => "sin",
            BuiltinForm::Exp => "exp",
            BuiltinForm::Relu => "relu",
            BuiltinForm::Constant => "constant",
        }
    }

    /// Number of parameter slots the form consumes.
    pub fn arity(&self) -> usize {
        match self {
            BuiltinForm::Affine => 2,
            BuiltinForm::Scale | BuiltinForm::Constant => 1,
            BuiltinForm::Sin | BuiltinForm::Exp | BuiltinForm::Relu => 0,
        }
    }

    pub fn apply(&self, params: &[f64], x: f64) -> f64 {
        match self {
            BuiltinForm::Affine => params[0] * x + params[1],
            BuiltinForm::Scale => params[0] * x,
            BuiltinForm::Sin => x.sin(),
            BuiltinForm::Exp => x.exp(),
            BuiltinForm::Relu => x.max(0.0),
            BuiltinForm::Constant => params[0],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PrimitiveRule {
    /// Finite carriers: output per (parameter row, input), entry
    /// `param_index * m + input`.
    LookupTable(Vec<u64>),
    /// Real carriers: a closed-form family.
    Builtin(BuiltinForm),
}

/// Output values a primitive refuses to produce. Refused outputs evaluate to
/// undefined, which then absorbs the rest of the sequence.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Restriction {
    #[default]
    None,
    /// Finite carriers: these outputs are excluded.
    Exclude(Vec<u64>),
    /// Real carriers: outputs outside `[lo, hi]` are excluded.
    Keep { lo: f64, hi: f64 },
}

impl Restriction {
    pub fn excludes(&self, v: &Value) -> bool {
        match (self, v) {
            (Restriction::None, _) => false,
            (Restriction::Exclude(set), Value::Finite(i)) => set.contains(i),
            (Restriction::Keep { lo, hi }, Value::Real(x)) => *x < *lo || *x > *hi,
            _ => false,
        }
    }
}

/// One parameterized unary function of a search space.
#[derive(Debug, Clone, PartialEq)]
pub struct Primitive {
    pub id: String,
    pub rule: PrimitiveRule,
    pub params: Vec<ParamTuple>,
    pub restriction: Restriction,
}

impl Primitive {
    /// Lookup-table primitive with a single empty parameter tuple.
    pub fn table(id: &str, table: Vec<u64>) -> Self {
        Primitive {
            id: id.to_string(),
            rule: PrimitiveRule::LookupTable(table),
            params: vec![ParamTuple::empty()],
            restriction: Restriction::None,
        }
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    /// Full structural validation against a carrier; `key` prefixes error paths.
    pub fn validate(&self, carrier: &Carrier, key: &str) -> Result<(), FaError> {
        if self.id.is_empty()
            || !self
                .id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return Err(FaError::config(
                format!("{key}.id"),
                "primitive ids are nonempty and drawn from [A-Za-z0-9_-]",
            ));
        }
        if self.params.is_empty() {
            return Err(FaError::config(format!("{key}.params"), "parameter grid is empty"));
        }
        let mut seen = std::collections::HashSet::new();
        for (j, tuple) in self.params.iter().enumerate() {
            if tuple.0.iter().any(|x| !x.is_finite()) {
                return Err(FaError::config(
                    format!("{key}.params[{j}]"),
                    "parameter entries must be finite",
                ));
            }
            if !seen.insert(tuple.bits()) {
                return Err(FaError::config(
                    format!("{key}.params[{j}]"),
                    "duplicate parameter tuple",
                ));
            }
        }
        match (&self.rule, carrier) {
            (PrimitiveRule::LookupTable(table), Carrier::Finite { m }) => {
                let expected = (*m as usize) * self.params.len();
                if table.len() != expected {
                    return Err(FaError::config(
                        format!("{key}.rule.table"),
                        format!(
                            "expected {expected} entries (m * |params| = {m} * {}), found {}",
                            self.params.len(),
                            table.len()
                        ),
                    ));
                }
                if let Some(pos) = table.iter().position(|v| v >= m) {
                    return Err(FaError::config(
                        format!("{key}.rule.table[{pos}]"),
                        format!("output {} lies outside the carrier Z_{m}", table[pos]),
                    ));
                }
            }
            (PrimitiveRule::Builtin(form), Carrier::Real { .. }) => {
                for (j, tuple) in self.params.iter().enumerate() {
                    if tuple.0.len() != form.arity() {
                        return Err(FaError::config(
                            format!("{key}.params[{j}]"),
                            format!(
                                "builtin `{}` takes {} parameter slot(s), tuple has {}",
                                form.name(),
                                form.arity(),
                                tuple.0.len()
                            ),
                        ));
                    }
                }
            }
            (PrimitiveRule::LookupTable(_), Carrier::Real { .. }) => {
                return Err(FaError::config(
                    format!("{key}.rule"),
                    "lookup tables require a finite carrier",
                ));
            }
            (PrimitiveRule::Builtin(_), Carrier::Finite { .. }) => {
                return Err(FaError::config(
                    format!("{key}.rule"),
                    "builtin forms require a real carrier",
                ));
            }
        }
        match (&self.restriction, carrier) {
            (Restriction::None, _) => {}
            (Restriction::Exclude(set), Carrier::Finite { m }) => {
                if let Some(pos) = set.iter().position(|v| v >= m) {
                    return Err(FaError::config(
                        format!("{key}.restriction[{pos}]"),
                        format!("excluded value {} lies outside the carrier Z_{m}", set[pos]),
                    ));
                }
            }
            (Restriction::Keep { lo, hi }, Carrier::Real { .. }) => {
                if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                    return Err(FaError::config(
                        format!("{key}.restriction"),
                        "keep interval requires finite bounds with lo < hi",
                    ));
                }
            }
            _ => {
                return Err(FaError::config(
                    format!("{key}.restriction"),
                    "restriction kind does not match the carrier",
                ));
            }
        }
        Ok(())
    }
}
