//! Job documents and the object references they contain.
//!
//! A job is `{"command", "field", "options"?, "input"}`. Objects inside
//! `input` are either inline documents in the emitted schema of their type or
//! short references such as `{"builtin": "diagonal3"}`. Unknown fields are
//! rejected everywhere.

use serde::Deserialize;
use serde_json::{Map, Value};

use crate::cayley_dickson::{CdAlgebra, DegreeFourJordan};
use crate::cns::{builtin, CubicNormStructure, SemilinearMap};
use crate::cubic::CubicForm;
use crate::error::{Error, Result};
use crate::hcns::{semilinear_extend, HermitianCns};
use crate::scalars::{EtaleExtension, Field, Ring};
use crate::structurable::{
    exchange_autotopy_algebra, matrix_algebra, AutotopyAlgebra, GenericAlgebra, SkewDimOneAlgebra,
};
use crate::verify::{SamplingPolicy, DEFAULT_EXHAUSTIVE_THRESHOLD, DEFAULT_QUADRUPLE_SAMPLES, DEFAULT_SAMPLES, DEFAULT_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Build,
    Check,
    Convert,
    Nu,
    Extract,
    Cd,
    Scan,
    Iso,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::Check => "check",
            Command::Convert => "convert",
            Command::Nu => "nu",
            Command::Extract => "extract",
            Command::Cd => "cd",
            Command::Scan => "scan",
            Command::Iso => "iso",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct JobOptions {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub exhaustive_threshold: Option<u64>,
    pub quadruple_samples: Option<usize>,
    pub output: Option<String>,
}

impl JobOptions {
    /// Fields set in `other` win.
    pub fn overridden_by(&self, other: &JobOptions) -> JobOptions {
        JobOptions {
            seed: other.seed.or(self.seed),
            samples: other.samples.or(self.samples),
            exhaustive_threshold: other.exhaustive_threshold.or(self.exhaustive_threshold),
            quadruple_samples: other.quadruple_samples.or(self.quadruple_samples),
            output: other.output.clone().or_else(|| self.output.clone()),
        }
    }

    pub fn policy(&self) -> SamplingPolicy {
        SamplingPolicy {
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            samples: self.samples.unwrap_or(DEFAULT_SAMPLES),
            exhaustive_threshold: self.exhaustive_threshold.map_or(DEFAULT_EXHAUSTIVE_THRESHOLD, u128::from),
            quadruple_samples: self.quadruple_samples.unwrap_or(DEFAULT_QUADRUPLE_SAMPLES),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDocument {
    pub command: Command,
    /// `"Q"` or `{"prime": p}`.
    pub field: Value,
    #[serde(default)]
    pub options: JobOptions,
    pub input: Value,
}

impl JobDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::schema(e.to_string()))
    }
}

/// The fields of an object, after checking that only `allowed` occur.
pub fn fields<'a>(v: &'a Value, what: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let obj = v.as_object().ok_or_else(|| Error::schema(format!("{what} must be an object")))?;
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::schema(format!("unknown field `{key}` in {what}")));
        }
    }
    Ok(obj)
}

pub fn required<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::schema(format!("{what} needs `{key}`")))
}

/// `{"builtin": name}` or an inline structure document.
pub fn parse_cns<R: Ring>(ring: &R, v: &Value) -> Result<CubicNormStructure<R>> {
    if let Some(obj) = v.as_object().filter(|o| o.contains_key("builtin")) {
        fields(v, "builtin reference", &["builtin"])?;
        let name = obj["builtin"].as_str().ok_or_else(|| Error::schema("`builtin` must be a string"))?;
        return builtin(ring.clone(), name);
    }
    CubicNormStructure::from_value(ring.clone(), v)
}

/// `"split"` or `{"mu": μ}` for `F[x]/(x² − μ)`, which is split when `μ` is a
/// nonzero square.
pub fn parse_extension<F: Field>(f: &F, v: &Value) -> Result<EtaleExtension<F>> {
    if v.as_str() == Some("split") {
        return Ok(EtaleExtension::split(f.clone()));
    }
    let obj = fields(v, "extension", &["mu"])?;
    EtaleExtension::quadratic(f.clone(), f.parse(required(obj, "mu", "extension")?)?)
}

/// `{"extend": cns, "lambda"?: k}` (semilinear extension of a structure over
/// `F`, `λ` defaulting to the trace-zero generator) or an inline hermitian
/// structure document.
pub fn parse_hcns<F: Field>(k: &EtaleExtension<F>, v: &Value) -> Result<HermitianCns<F>> {
    if v.as_object().is_some_and(|o| o.contains_key("extend")) {
        let obj = fields(v, "semilinear extension", &["extend", "lambda"])?;
        let j = parse_cns(k.base(), &obj["extend"])?;
        let lambda = match obj.get("lambda") {
            Some(l) => k.parse(l)?,
            None => k.trace_zero_generator(),
        };
        return semilinear_extend(&j, k, &lambda);
    }
    HermitianCns::from_value(k.clone(), v)
}

/// An algebra in one of its presentations.
#[derive(Debug, Clone)]
pub enum Algebra<F: Field> {
    Hermitian(SkewDimOneAlgebra<F>),
    Autotopy(AutotopyAlgebra<F>),
    Matrix(GenericAlgebra<F>),
    CayleyDickson(CdAlgebra<F>),
    Generic(GenericAlgebra<F>),
}

impl<F: Field> Algebra<F> {
    pub fn to_generic(&self) -> GenericAlgebra<F> {
        match self {
            Algebra::Hermitian(a) => a.to_generic(),
            Algebra::Autotopy(a) => a.to_generic(),
            Algebra::Matrix(g) | Algebra::Generic(g) => g.clone(),
            Algebra::CayleyDickson(a) => a.to_generic(),
        }
    }

    /// The `K ⊕ J` form, for presentations that have one directly.
    pub fn hermitian(&self) -> Result<Option<SkewDimOneAlgebra<F>>> {
        Ok(match self {
            Algebra::Hermitian(a) => Some(a.clone()),
            Algebra::Autotopy(a) => Some(SkewDimOneAlgebra::new(a.hermitian()?)),
            _ => None,
        })
    }
}

/// Parses an algebra document, dispatching on `presentation`:
///
/// - `hermitian`: `{extension, hcns}`
/// - `autotopy`: `{extension, cns, phi, gamma}` with `cns` over `K`
/// - `exchange`: `{cns, eta}`, the split-case autotopy algebra
/// - `matrix`: `{cns, eta}`
/// - `cayley-dickson`: `{core, mu}`
/// - `generic`: `{dim, table, involution, unit}`
pub fn parse_algebra<F: Field>(f: &F, v: &Value) -> Result<Algebra<F>> {
    let tag = v
        .get("presentation")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::schema("algebra needs a string `presentation`"))?;
    match tag {
        "hermitian" => {
            let obj = fields(v, "hermitian algebra", &["presentation", "extension", "hcns"])?;
            let k = parse_extension(f, required(obj, "extension", "hermitian algebra")?)?;
            Ok(Algebra::Hermitian(SkewDimOneAlgebra::new(parse_hcns(&k, required(obj, "hcns", "hermitian algebra")?)?)))
        }
        "autotopy" => {
            let what = "autotopy algebra";
            let obj = fields(v, what, &["presentation", "extension", "cns", "phi", "gamma"])?;
            let k = parse_extension(f, required(obj, "extension", what)?)?;
            let cns = parse_cns(&k, required(obj, "cns", what)?)?;
            let phi = SemilinearMap::from_value(&k, cns.dim(), required(obj, "phi", what)?)?;
            let gamma = k.parse(required(obj, "gamma", what)?)?;
            Ok(Algebra::Autotopy(AutotopyAlgebra::new(cns, phi, gamma)?))
        }
        "exchange" | "matrix" => {
            let obj = fields(v, "matrix algebra", &["presentation", "cns", "eta"])?;
            let j = parse_cns(f, required(obj, "cns", "matrix algebra")?)?;
            let eta = f.parse(required(obj, "eta", "matrix algebra")?)?;
            if tag == "exchange" {
                Ok(Algebra::Autotopy(exchange_autotopy_algebra(&j, &eta)?))
            } else {
                Ok(Algebra::Matrix(matrix_algebra(&j, &eta)?))
            }
        }
        "cayley-dickson" => {
            let obj = fields(v, "Cayley–Dickson algebra", &["presentation", "core", "mu"])?;
            let j = parse_cns(f, required(obj, "core", "Cayley–Dickson algebra")?)?;
            let mu = f.parse(required(obj, "mu", "Cayley–Dickson algebra")?)?;
            Ok(Algebra::CayleyDickson(CdAlgebra::new(DegreeFourJordan::new(&j)?, mu)?))
        }
        "generic" => {
            let mut rest = fields(v, "generic algebra", &["presentation", "ring", "dim", "table", "involution", "unit"])?.clone();
            rest.remove("presentation");
            Ok(Algebra::Generic(GenericAlgebra::from_value(f.clone(), &Value::Object(rest))?))
        }
        other => Err(Error::schema(format!("unknown presentation `{other}`"))),
    }
}

/// The document form of a generic algebra, tagged so that it parses back.
pub fn generic_value<F: Field>(g: &GenericAlgebra<F>) -> Value {
    let mut v = g.to_value();
    v.as_object_mut().expect("object").insert("presentation".into(), Value::String("generic".into()));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rationals;
    use serde_json::json;

    #[test]
    fn job_rejects_unknown_fields() {
        let ok = r#"{"command": "check", "field": "Q", "input": {}}"#;
        assert!(JobDocument::parse(ok).is_ok());
        let extra = r#"{"command": "check", "field": "Q", "input": {}, "bogus": 1}"#;
        assert!(matches!(JobDocument::parse(extra), Err(Error::Schema(_))));
        let opt = r#"{"command": "check", "field": "Q", "input": {}, "options": {"sample": 3}}"#;
        assert!(matches!(JobDocument::parse(opt), Err(Error::Schema(_))));
        let cmd = r#"{"command": "frobnicate", "field": "Q", "input": {}}"#;
        assert!(matches!(JobDocument::parse(cmd), Err(Error::Schema(_))));
    }

    #[test]
    fn options_merge_and_policy() {
        let base = JobOptions { seed: Some(1), samples: Some(5), ..Default::default() };
        let flags = JobOptions { samples: Some(9), ..Default::default() };
        let pol = base.overridden_by(&flags).policy();
        assert_eq!((pol.seed, pol.samples), (1, 9));
        assert_eq!(pol.exhaustive_threshold, DEFAULT_EXHAUSTIVE_THRESHOLD);
    }

    #[test]
    fn algebra_references_parse() {
        let f = Rationals;
        let h = json!({"presentation": "hermitian", "extension": {"mu": -1}, "hcns": {"extend": {"builtin": "unit"}}});
        assert!(matches!(parse_algebra(&f, &h).unwrap(), Algebra::Hermitian(_)));
        let m = json!({"presentation": "matrix", "cns": {"builtin": "diagonal3"}, "eta": "1/2"});
        let g = parse_algebra(&f, &m).unwrap().to_generic();
        let back = parse_algebra(&f, &generic_value(&g)).unwrap().to_generic();
        assert_eq!(g, back);
        let bad = json!({"presentation": "matrix", "cns": {"builtin": "diagonal3"}, "eta": 1, "x": 0});
        assert!(matches!(parse_algebra(&f, &bad), Err(Error::Schema(_))));
        assert!(matches!(parse_extension(&f, &json!("splitt")), Err(Error::Schema(_))));
    }
}
