//! Built-in search spaces.
//!
//! The finite catalogs `tK-generators` are generating sets for every unary
//! total function on `Z_K`: the 0↔1 transposition, the full cycle `x+1 mod K`,
//! and the rank-reducing merge `1 ↦ 0`. Composing them reaches all `K^K`
//! function tables, which makes them the reference spaces for zero-error
//! sweeps. On `Z_2` the transposition and the cycle coincide and the merge is
//! the zero constant, so that catalog is published under its natural names
//! `{not, const0}`.
//!
//! `real-basic` is a small heuristic basis over the interval `[-1, 1]`:
//!
//! * `affine(a, b)` with `a` in {-2, -1, -0.5, 0.5, 1, 2} and `b` in
//!   {-1, -0.5, 0, 0.5, 1}
//! * `scale(c)` with `c` in {-2, -1, -0.5, 0.5, 1, 2}
//! * `sin`, `exp`, `relu`, parameter-free

use crate::carrier::Carrier;
use crate::error::FaError;
use crate::primitive::{BuiltinForm, ParamTuple, Primitive, PrimitiveRule, Restriction};
use crate::space::SearchSpace;

pub const CATALOG_NAMES: &[&str] = &[
    "t2-generators",
    "t3-generators",
    "t4-generators",
    "real-basic",
];

pub fn elementary_catalog(name: &str) -> Result<SearchSpace, FaError> {
    match name {
        "t2-generators" => transformation_generators(2),
        "t3-generators" => transformation_generators(3),
        "t4-generators" => transformation_generators(4),
        "real-basic" => real_basic(),
        _ => Err(FaError::config(
            "catalog",
            format!("unknown catalog `{name}`; known: {}", CATALOG_NAMES.join(", ")),
        )),
    }
}

/// Generators of the full transformation monoid on `Z_k`.
pub fn transformation_generators(k: u64) -> Result<SearchSpace, FaError> {
    if k < 2 {
        return Err(FaError::config("catalog", "generator catalogs need k >= 2"));
    }
    let carrier = Carrier::finite(k)?;
    if k == 2 {
        return SearchSpace::new(
            carrier,
            vec![
                Primitive::table("not", vec![1, 0]),
                Primitive::table("const0", vec![0, 0]),
            ],
        );
    }
    let swap01: Vec<u64> = (0..k).map(|x| match x {
        0 => 1,
        1 => 0,
        other => other,
    }).collect();
    let cycle: Vec<u64> = (0..k).map(|x| (x + 1) % k).collect();
    let merge10: Vec<u64> = (0..k).map(|x| if x == 1 { 0 } else { x }).collect();
    SearchSpace::new(
        carrier,
        vec![
            Primitive::table("swap01", swap01),
            Primitive::table("cycle", cycle),
            Primitive::table("merge10", merge10),
        ],
    )
}

fn real_basic() -> Result<SearchSpace, FaError> {
    let carrier = Carrier::real(-1.0, 1.0)?;
    let slopes = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
    let offsets = [-1.0, -0.5, 0.0, 0.5, 1.0];

    let mut affine_params = Vec::new();
    for a in slopes {
        for b in offsets {
            affine_params.push(ParamTuple(vec![a, b]));
        }
    }
    let scale_params: Vec<_> = slopes.iter().map(|c| ParamTuple(vec![*c])).collect();

    let builtin = |id: &str, form: BuiltinForm, params: Vec<ParamTuple>| Primitive {
        id: id.to_string(),
        rule: PrimitiveRule::Builtin(form),
        params,
        restriction: Restriction::None,
    };

    SearchSpace::new(
        carrier,
        vec![
            builtin("affine", BuiltinForm::Affine, affine_params),
            builtin("scale", BuiltinForm::Scale, scale_params),
            builtin("sin", BuiltinForm::Sin, vec![ParamTuple::empty()]),
            builtin("exp", BuiltinForm::Exp, vec![ParamTuple::empty()]),
            builtin("relu", BuiltinForm::Relu, vec![ParamTuple::empty()]),
        ],
    )
}
