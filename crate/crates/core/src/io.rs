//! Model and coframe files (JSON) and exact rational serialisation.
//!
//! A model file describes a distribution either by two vector fields or by
//! a Monge function `F`, together with working points, fiber points for the
//! oracle, an optional Cartan coframe and optional jet orders.  The schema
//! is documented in `docs/model-schema.md`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::rational::{parse_rational, to_pq};
use crate::algebra::{parse_expression, ParseError, Rational, Vars};
use crate::cartan::{cartan_frame, CartanCoframe, CartanError};
use crate::diffgeo::{GeometryError, VectorField, DIM};

/// Schema tag accepted in model files.
pub const MODEL_SCHEMA: &str = "g235-model/1";

/// Input problems, each tagged with the JSON path where it was found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    /// The document is not valid JSON or does not match the schema.
    #[error("{path}: {message} (line {line}, column {column})")]
    Json {
        /// Location description.
        path: String,
        /// Underlying message.
        message: String,
        /// 1-based line.
        line: usize,
        /// 1-based column.
        column: usize,
    },
    /// A field has an invalid value.
    #[error("{path}: {message}")]
    Invalid {
        /// JSON path of the offending value.
        path: String,
        /// What is wrong.
        message: String,
    },
    /// An expression failed to parse.
    #[error("{path}: {source}")]
    Expression {
        /// JSON path of the expression.
        path: String,
        /// Parser diagnostic (with byte position inside the expression).
        source: ParseError,
    },
}

/// Jet-order overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSpec {
    /// Order of the Jacobi-curve jet (default 12).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<usize>,
    /// τ-order of the canonical frame (default 4).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
}

/// Coframe block: 5 forms `omega` and 7 forms `bar`, each 5 component texts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoframeSpec {
    /// `ω1..ω5`.
    pub omega: Vec<Vec<String>>,
    /// `ω̄1..ω̄7`.
    pub bar: Vec<Vec<String>>,
}

/// The raw model document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    /// Must equal [`MODEL_SCHEMA`] when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    /// Free-form label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Five coordinate names (default `x, y, p, q, z` for Monge models, else `x1..x5`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<String>>,
    /// Components of `X1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x1: Option<Vec<String>>,
    /// Components of `X2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x2: Option<Vec<String>>,
    /// Monge function `F`: `X1 = ∂q`, `X2 = ∂x + p∂y + q∂p + F∂z`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monge: Option<String>,
    /// Working points (five rationals each, as strings or integers).
    #[serde(default)]
    pub points: Vec<Vec<serde_json::Value>>,
    /// Fiber points `(u4, u5)` for the oracle (default `(0,1)` and `(1,1)`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covectors: Option<Vec<Vec<serde_json::Value>>>,
    /// Optional Cartan coframe.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coframe: Option<CoframeSpec>,
    /// Optional jet orders.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<OrderSpec>,
}

/// A validated model.
#[derive(Clone, Debug)]
pub struct Model {
    /// Label.
    pub name: String,
    /// Coordinate names.
    pub vars: Vars,
    /// `X1`.
    pub x1: VectorField,
    /// `X2`.
    pub x2: VectorField,
    /// Working points.
    pub points: Vec<Vec<Rational>>,
    /// Fiber points `(u4, u5)`.
    pub covectors: Vec<(Rational, Rational)>,
    /// Cartan coframe, if supplied.
    pub coframe: Option<CartanCoframe>,
    /// Jet orders.
    pub orders: OrderSpec,
}

/// Render a rational as `"p/q"` (always with a denominator).
pub fn rational_to_string(r: &Rational) -> String {
    to_pq(r)
}

/// Parse `"p/q"`, `"p"` or a JSON integer.
pub fn rational_from_json(v: &serde_json::Value) -> Option<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s.trim()),
        serde_json::Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
        _ => None,
    }
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Invalid { path: path.into(), message: message.into() }
}

fn field(comps: &[String], vars: &Vars, path: &str) -> Result<VectorField, InputError> {
    if comps.len() != DIM {
        return Err(invalid(path, format!("expected {DIM} components, found {}", comps.len())));
    }
    let mut c = Vec::with_capacity(DIM);
    for (i, text) in comps.iter().enumerate() {
        let f = parse_expression(text, vars).map_err(|source| InputError::Expression { path: format!("{path}[{i}]"), source })?;
        c.push(f);
    }
    Ok(VectorField { c: c.try_into().unwrap() })
}

fn rational_list(vals: &[serde_json::Value], len: usize, path: &str) -> Result<Vec<Rational>, InputError> {
    if vals.len() != len {
        return Err(invalid(path, format!("expected {len} entries, found {}", vals.len())));
    }
    vals.iter().enumerate().map(|(i, v)| rational_from_json(v).ok_or_else(|| invalid(format!("{path}[{i}]"), format!("not a rational: {v}")))).collect()
}

/// Parse a coframe block against the given coordinates.
pub fn coframe_from_spec(spec: &CoframeSpec, vars: &Vars, path: &str) -> Result<CartanCoframe, InputError> {
    if spec.omega.len() != DIM {
        return Err(invalid(format!("{path}.omega"), format!("expected 5 forms, found {}", spec.omega.len())));
    }
    if spec.bar.len() != 7 {
        return Err(invalid(format!("{path}.bar"), format!("expected 7 forms, found {}", spec.bar.len())));
    }
    let mut forms = Vec::new();
    for (name, list) in [("omega", &spec.omega), ("bar", &spec.bar)] {
        for (i, comps) in list.iter().enumerate() {
            forms.push(field(comps, vars, &format!("{path}.{name}[{i}]"))?);
        }
    }
    let one = |v: VectorField| crate::diffgeo::OneForm { c: v.c };
    let mut it = forms.into_iter().map(one);
    Ok(CartanCoframe { omega: std::array::from_fn(|_| it.next().unwrap()), bar: std::array::from_fn(|_| it.next().unwrap()) })
}

/// Serialise a coframe with the given coordinate names.
pub fn coframe_to_spec(cf: &CartanCoframe, vars: &Vars) -> CoframeSpec {
    let comps = |w: &crate::diffgeo::OneForm| w.c.iter().map(|f| f.display(&vars.0).to_string()).collect();
    CoframeSpec { omega: cf.omega.iter().map(comps).collect(), bar: cf.bar.iter().map(comps).collect() }
}

fn json_error(e: serde_json::Error) -> InputError {
    InputError::Json { path: "$".into(), message: e.to_string(), line: e.line(), column: e.column() }
}

/// Parse and validate a model document.
pub fn load_model(text: &str) -> Result<Model, InputError> {
    let spec: ModelSpec = serde_json::from_str(text).map_err(json_error)?;
    model_from_spec(&spec)
}

/// Validate a parsed model document.
pub fn model_from_spec(spec: &ModelSpec) -> Result<Model, InputError> {
    if let Some(s) = &spec.schema {
        if s != MODEL_SCHEMA {
            return Err(invalid("$.schema", format!("unsupported schema '{s}', expected '{MODEL_SCHEMA}'")));
        }
    }
    let default_names: Vec<String> =
        if spec.monge.is_some() { ["x", "y", "p", "q", "z"].iter().map(|s| s.to_string()).collect() } else { (1..=DIM).map(|i| format!("x{i}")).collect() };
    let names = spec.coordinates.clone().unwrap_or(default_names);
    if names.len() != DIM {
        return Err(invalid("$.coordinates", format!("expected exactly {DIM} names, found {}", names.len())));
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(invalid(format!("$.coordinates[{i}]"), format!("duplicate name '{n}'")));
        }
    }
    let vars = Vars(names);
    let coframe = match &spec.coframe {
        Some(c) => Some(coframe_from_spec(c, &vars, "$.coframe")?),
        None => None,
    };
    let (x1, x2) = match (&spec.monge, &spec.x1, &spec.x2) {
        (Some(f), None, None) => {
            let n = &vars.0;
            let comps1: Vec<String> = vec!["0".into(), "0".into(), "0".into(), "1".into(), "0".into()];
            let comps2: Vec<String> = vec!["1".into(), n[2].clone(), n[3].clone(), "0".into(), format!("({f})")];
            let x1 = field(&comps1, &vars, "$.monge")?;
            let x2 = field(&comps2, &vars, "$.monge").map_err(|e| match e {
                InputError::Expression { source, .. } => {
                    // report the position inside F itself (the wrapper adds one byte)
                    InputError::Expression { path: "$.monge".into(), source: ParseError { pos: source.pos.saturating_sub(1), ..source } }
                }
                other => other,
            })?;
            (x1, x2)
        }
        (None, Some(a), Some(b)) => (field(a, &vars, "$.x1")?, field(b, &vars, "$.x2")?),
        (None, None, None) => match &coframe {
            Some(cf) => {
                let frame = cartan_frame(cf).map_err(|e: CartanError| invalid("$.coframe", e.to_string()))?;
                (frame.x[0].clone(), frame.x[1].clone())
            }
            None => return Err(invalid("$", "a model needs 'monge', both 'x1' and 'x2', or a 'coframe'")),
        },
        _ => return Err(invalid("$", "give either 'monge' or both 'x1' and 'x2', not a mixture")),
    };
    let points = spec.points.iter().enumerate().map(|(i, p)| rational_list(p, DIM, &format!("$.points[{i}]"))).collect::<Result<Vec<_>, _>>()?;
    let covectors = match &spec.covectors {
        None => {
            vec![(Rational::from_integer(0.into()), Rational::from_integer(1.into())), (Rational::from_integer(1.into()), Rational::from_integer(1.into()))]
        }
        Some(list) => list
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let path = format!("$.covectors[{i}]");
                let v = rational_list(c, 2, &path)?;
                if num::Zero::is_zero(&v[0]) && num::Zero::is_zero(&v[1]) {
                    return Err(invalid(path, "covector must be nonzero"));
                }
                Ok((v[0].clone(), v[1].clone()))
            })
            .collect::<Result<_, _>>()?,
    };
    Ok(Model {
        name: spec.name.clone().unwrap_or_else(|| "model".into()),
        vars,
        x1,
        x2,
        points,
        covectors,
        coframe,
        orders: spec.orders.clone().unwrap_or_default(),
    })
}

/// Parse a standalone coframe file (`{"coordinates": [...], "omega": ..., "bar": ...}`).
pub fn load_coframe(text: &str) -> Result<(Vars, CartanCoframe), InputError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct File {
        #[serde(default)]
        coordinates: Option<Vec<String>>,
        omega: Vec<Vec<String>>,
        bar: Vec<Vec<String>>,
    }
    let f: File = serde_json::from_str(text).map_err(json_error)?;
    let vars = Vars(f.coordinates.unwrap_or_else(|| (1..=DIM).map(|i| format!("x{i}")).collect()));
    if vars.len() != DIM {
        return Err(invalid("$.coordinates", "expected exactly 5 names"));
    }
    let cf = coframe_from_spec(&CoframeSpec { omega: f.omega, bar: f.bar }, &vars, "$")?;
    Ok((vars, cf))
}

impl From<GeometryError> for InputError {
    fn from(e: GeometryError) -> Self {
        invalid("$", e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn monge_shorthand() {
        let m = load_model(r#"{"monge": "q^3", "points": [["0","0","0","1","0"], [1, 2, "1/2", 3, 0]]}"#).unwrap();
        assert_eq!(m.points[1][2], rat(1, 2));
        assert_eq!(m.covectors.len(), 2);
        assert_eq!(m.x2.c[4].display(&m.vars.0).to_string(), "q^3");
    }

    #[test]
    fn positional_errors() {
        let e = load_model(r#"{"monge": "q^^3"}"#).unwrap_err();
        match e {
            InputError::Expression { path, source } => {
                assert_eq!(path, "$.monge");
                assert_eq!(source.pos, 2);
            }
            other => panic!("{other:?}"),
        }
        let e = load_model("{\"monge\": \"q\",\n \"points\": [[1,2]]}").unwrap_err();
        assert!(e.to_string().starts_with("$.points[0]"));
        let e = load_model("{\"monge\": \"q\",\n \"bogus\": 1}").unwrap_err();
        assert!(matches!(e, InputError::Json { line: 2, .. }));
    }

    #[test]
    fn coframe_round_trip() {
        let cf = crate::cartan::gauged_flat_coframe();
        let vars = Vars::base5();
        let spec = coframe_to_spec(&cf, &vars);
        let back = coframe_from_spec(&spec, &vars, "$").unwrap();
        assert_eq!(back, cf);
    }

    #[test]
    fn rationals_round_trip() {
        for r in [rat(-7, 3), rat(0, 1), rat(5, 1)] {
            let s = rational_to_string(&r);
            assert_eq!(rational_from_json(&serde_json::Value::String(s)).unwrap(), r);
        }
    }
}
