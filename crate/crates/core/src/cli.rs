//! Runs one job document and produces a machine-readable report.
//!
//! The report is `{"command", "field", "policy", "status", "result",
//! "reports", "summary"}`, or `{…, "status": "error", "error"}` when the job
//! could not run. Exit codes: 0 when every check passes, 1 when a check
//! fails, 2 for a malformed document, 3 when an operation's precondition
//! does not hold.

use serde_json::{json, Value};

use crate::cayley_dickson::{cd_isomorphism, CdAlgebra, DegreeFourJordan};
use crate::cns::{CubicNormStructure, SemilinearMap};
use crate::cubic::CubicForm;
use crate::doc::{
    fields, generic_value, parse_algebra, parse_cns, parse_extension, parse_hcns, required, Algebra, Command,
    JobDocument, JobOptions,
};
use crate::error::{Error, Result};
use crate::hcns::{from_autotopy, to_cns_with_autotopy, HermitianCns};
use crate::scalars::{AnyField, EtaleExtension, Field, Ring};
use crate::structurable::{
    compare_presentations, division_scan, element_from_value, extract_hcns, projective_zeros, verify_norm,
    verify_structurable, GenericAlgebra,
};
use crate::tensor;
use crate::verify::{Record, Report, SamplingPolicy};
use crate::with_field;

/// A finished job: the report document, the process exit code and where the
/// document should be written (`None` for standard output).
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub exit_code: i32,
    pub output: Option<String>,
}

impl Outcome {
    /// Pretty-printed JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Parses and runs a job; `flags` override the job's own options.
pub fn run_text(text: &str, flags: &JobOptions) -> Outcome {
    match JobDocument::parse(text) {
        Ok(job) => run_job(&job, flags),
        Err(e) => Outcome { document: error_value(None, &e), exit_code: e.exit_code(), output: flags.output.clone() },
    }
}

pub fn run_job(job: &JobDocument, flags: &JobOptions) -> Outcome {
    let opts = job.options.overridden_by(flags);
    let pol = opts.policy();
    let mut document = json!({
        "command": job.command.name(),
        "field": job.field,
        "policy": {
            "seed": pol.seed,
            "samples": pol.samples,
            "exhaustive-threshold": pol.exhaustive_threshold.to_string(),
            "quadruple-samples": pol.quadruple_samples,
        },
    });
    let run = AnyField::from_value(&job.field)
        .and_then(|field| with_field!(field, |f| execute(&f, job.command, &job.input, &pol)));
    let obj = document.as_object_mut().expect("object");
    let exit_code = match run {
        Ok((result, reports)) => {
            let passed = reports.iter().all(Report::all_passed);
            obj.insert("status".into(), json!(if passed { "pass" } else { "fail" }));
            obj.insert("result".into(), result);
            obj.insert("reports".into(), Value::Array(reports.iter().map(Report::to_value).collect()));
            let summary: Vec<Value> =
                reports.iter().flat_map(|r| r.summary().lines().map(|l| json!(l)).collect::<Vec<_>>()).collect();
            obj.insert("summary".into(), Value::Array(summary));
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let err = error_value(Some(job.command), &e);
            obj.insert("status".into(), json!("error"));
            obj.insert("error".into(), err["error"].clone());
            e.exit_code()
        }
    };
    Outcome { document, exit_code, output: opts.output }
}

fn error_value(command: Option<Command>, e: &Error) -> Value {
    let kind = match e {
        Error::Schema(_) | Error::UnknownBuiltin(_) => "schema",
        Error::VerificationFailed(_) => "check",
        _ => "precondition",
    };
    json!({
        "command": command.map(Command::name),
        "status": "error",
        "error": { "kind": kind, "message": e.to_string() },
    })
}

type Executed = (Value, Vec<Report>);

fn execute<F: Field>(f: &F, command: Command, input: &Value, pol: &SamplingPolicy) -> Result<Executed> {
    match command {
        Command::Build => Ok((parse_subject(f, input)?.to_value(), Vec::new())),
        Command::Check => check(f, input, pol),
        Command::Convert => convert(f, input),
        Command::Nu => nu(f, input),
        Command::Extract => {
            let obj = fields(input, "extract input", &["algebra"])?;
            let g = parse_algebra(f, required(obj, "algebra", "extract input")?)?.to_generic();
            let ex = extract_hcns(&g, pol)?;
            let mut result = ex.to_value();
            result.as_object_mut().expect("object").remove("report");
            Ok((result, vec![ex.report]))
        }
        Command::Cd => {
            let (j, mu) = core_and_mu(f, input)?;
            let cd = CdAlgebra::new(DegreeFourJordan::new(&j)?, mu)?;
            let g = cd.to_generic();
            let reports = vec![cd.jordan().verify(pol), verify_structurable(&g, pol)];
            Ok((json!({ "algebra": cd.to_value(), "structure_constants": generic_value(&g) }), reports))
        }
        Command::Scan => scan(f, input),
        Command::Iso => {
            let (j, mu) = core_and_mu(f, input)?;
            let iso = cd_isomorphism(&j, &mu)?;
            let mut result = iso.to_value();
            result.as_object_mut().expect("object").remove("report");
            Ok((result, vec![iso.report]))
        }
    }
}

fn core_and_mu<F: Field>(f: &F, input: &Value) -> Result<(CubicNormStructure<F>, F::Elem)> {
    let obj = fields(input, "Cayley–Dickson input", &["core", "mu"])?;
    let j = parse_cns(f, required(obj, "core", "Cayley–Dickson input")?)?;
    Ok((j, f.parse(required(obj, "mu", "Cayley–Dickson input")?)?))
}

/// What `build` and `check` operate on.
enum Subject<F: Field> {
    Cns(CubicNormStructure<F>),
    KCns(CubicNormStructure<EtaleExtension<F>>),
    Hcns(HermitianCns<F>),
    Algebra(Algebra<F>),
}

/// `{"cns"}` (over `F`), `{"cns", "extension"}` (over `K`),
/// `{"hcns", "extension"}` or `{"algebra"}`.
fn parse_subject<F: Field>(f: &F, input: &Value) -> Result<Subject<F>> {
    let obj = fields(input, "input", &["cns", "hcns", "extension", "algebra"])?;
    let ext = || parse_extension(f, required(obj, "extension", "input")?);
    match (obj.get("cns"), obj.get("hcns"), obj.get("algebra")) {
        (Some(c), None, None) if obj.contains_key("extension") => Ok(Subject::KCns(parse_cns(&ext()?, c)?)),
        (Some(c), None, None) => Ok(Subject::Cns(parse_cns(f, c)?)),
        (None, Some(h), None) => Ok(Subject::Hcns(parse_hcns(&ext()?, h)?)),
        (None, None, Some(a)) if !obj.contains_key("extension") => Ok(Subject::Algebra(parse_algebra(f, a)?)),
        _ => Err(Error::schema("input needs exactly one of `cns`, `hcns` (with `extension`) or `algebra`")),
    }
}

impl<F: Field> Subject<F> {
    fn to_value(&self) -> Value {
        match self {
            Subject::Cns(c) => json!({ "cns": c.to_value() }),
            Subject::KCns(c) => json!({ "extension": c.ring().descriptor_value(), "cns": c.to_value() }),
            Subject::Hcns(h) => json!({ "extension": h.extension().descriptor_value(), "hcns": h.to_value() }),
            Subject::Algebra(a) => {
                let g = a.to_generic();
                let doc = match a {
                    Algebra::Hermitian(h) => h.to_value(),
                    Algebra::Autotopy(t) => t.to_value(),
                    Algebra::CayleyDickson(c) => c.to_value(),
                    Algebra::Matrix(_) | Algebra::Generic(_) => generic_value(&g),
                };
                json!({ "algebra": doc, "structure_constants": generic_value(&g) })
            }
        }
    }
}

fn check<F: Field>(f: &F, input: &Value, pol: &SamplingPolicy) -> Result<Executed> {
    let subject = parse_subject(f, input)?;
    let mut result = json!({});
    let reports = match &subject {
        Subject::Cns(c) => vec![c.verify(pol)],
        Subject::KCns(c) => vec![c.verify(pol)],
        Subject::Hcns(h) => vec![h.verify(pol)],
        Subject::Algebra(a) => {
            let g = a.to_generic();
            let mut reports = vec![verify_structurable(&g, pol)];
            let center = g.center().len();
            result = json!({ "dim": g.dim(), "center_dim": center });
            if let Some(h) = a.hermitian()? {
                reports.push(verify_norm(&h, pol));
                let rad = h.radical();
                result["nondegenerate"] = json!(rad.nondegenerate);
                let mut extra = rad.report;
                if rad.nondegenerate {
                    extra.push(Record::direct("algebra.center", "center(A) = F1", center == 1, || json!({ "dim": center })));
                }
                reports.push(extra);
            }
            if let Algebra::Autotopy(t) = a {
                let mut rep = Report::new("presentations");
                rep.push(compare_presentations(t)?);
                reports.push(rep);
            }
            if let Algebra::CayleyDickson(c) = a {
                reports.push(c.jordan().verify(pol));
            }
            reports
        }
    };
    Ok((result, reports))
}

/// `{"extension", "hcns", "z"}` gives the structure over `K` with its
/// autotopy and `γ`; `{"extension", "cns", "phi", "gamma"}` goes back.
fn convert<F: Field>(f: &F, input: &Value) -> Result<Executed> {
    let what = "convert input";
    let obj = fields(input, what, &["extension", "hcns", "z", "cns", "phi", "gamma"])?;
    let k = parse_extension(f, required(obj, "extension", what)?)?;
    if let Some(h) = obj.get("hcns") {
        if obj.contains_key("cns") || obj.contains_key("phi") || obj.contains_key("gamma") {
            return Err(Error::schema("convert takes either `hcns` and `z` or `cns`, `phi` and `gamma`"));
        }
        let h = parse_hcns(&k, h)?;
        let z = tensor::vector_from_value(&k, h.dim(), required(obj, "z", what)?, "z")?;
        let out = to_cns_with_autotopy(&h, &z)?;
        let back = from_autotopy(&out.cns, &out.phi, &out.gamma)?;
        let mut rep = Report::new("conversion");
        rep.push(Record::direct("convert.round-trip", "the structure rebuilt from (J, φ, γ) is the input", back == h, || {
            Value::Null
        }));
        let result = json!({
            "extension": k.descriptor_value(),
            "cns": out.cns.to_value(),
            "phi": out.phi.to_value(&k),
            "gamma": k.emit(&out.gamma),
        });
        return Ok((result, vec![rep]));
    }
    if obj.contains_key("z") {
        return Err(Error::schema("`z` only applies when converting from `hcns`"));
    }
    let cns = parse_cns(&k, required(obj, "cns", what)?)?;
    let phi = SemilinearMap::from_value(&k, cns.dim(), required(obj, "phi", what)?)?;
    let gamma = k.parse(required(obj, "gamma", what)?)?;
    let h = from_autotopy(&cns, &phi, &gamma)?;
    Ok((json!({ "extension": k.descriptor_value(), "hcns": h.to_value() }), Vec::new()))
}

/// `{"algebra", "x"}`: `x` is `{"s", "b"}` for presentations on `K ⊕ J` and
/// a coordinate vector otherwise.
fn nu<F: Field>(f: &F, input: &Value) -> Result<Executed> {
    let obj = fields(input, "nu input", &["algebra", "x"])?;
    let a = parse_algebra(f, required(obj, "algebra", "nu input")?)?;
    let x = required(obj, "x", "nu input")?;
    let value = match &a {
        Algebra::Hermitian(h) => h.nu(&element_from_value(h.extension(), h.hcns().dim(), x)?)?,
        Algebra::Autotopy(t) => t.nu(&element_from_value(t.extension(), (t.f_dim() - 2) / 2, x)?)?,
        _ => {
            let g = a.to_generic();
            let x = tensor::vector_from_value(f, g.dim(), x, "x")?;
            g.nu_via_psi(&x, &skew_line(&g)?)?
        }
    };
    Ok((json!({ "nu": f.emit(&value) }), Vec::new()))
}

fn skew_line<F: Field>(g: &GenericAlgebra<F>) -> Result<Vec<F::Elem>> {
    let mut skew = g.skew_basis();
    if skew.len() != 1 {
        return Err(Error::precondition(format!("skew part has dimension {}, expected 1", skew.len())));
    }
    Ok(skew.remove(0))
}

fn scan<F: Field>(f: &F, input: &Value) -> Result<Executed> {
    let obj = fields(input, "scan input", &["algebra"])?;
    let a = parse_algebra(f, required(obj, "algebra", "scan input")?)?;
    let zeros = match a.hermitian()? {
        Some(h) => division_scan(&h)?,
        None => {
            let g = a.to_generic();
            let s0 = skew_line(&g)?;
            projective_zeros(f, g.dim(), |x| g.nu_via_psi(x, &s0))?
        }
    };
    let list: Vec<Value> = zeros.iter().map(|z| tensor::vector_to_value(f, z)).collect();
    Ok((json!({ "count": zeros.len(), "zeros": list }), Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(job: Value) -> Outcome {
        run_text(&job.to_string(), &JobOptions::default())
    }

    #[test]
    fn check_passes_on_extension_of_diagonal() {
        let out = run(json!({
            "command": "check",
            "field": "Q",
            "options": {"samples": 20, "quadruple-samples": 10},
            "input": {"algebra": {"presentation": "hermitian", "extension": {"mu": 2}, "hcns": {"extend": {"builtin": "diagonal3"}}}},
        }));
        assert_eq!(out.exit_code, 0, "{}", out.render());
        assert_eq!(out.document["status"], "pass");
    }

    #[test]
    fn nu_of_unit_extension() {
        let out = run(json!({
            "command": "nu",
            "field": "Q",
            "input": {
                "algebra": {"presentation": "hermitian", "extension": {"mu": -1}, "hcns": {"extend": {"builtin": "unit"}}},
                "x": {"s": ["0", "0"], "b": [["1", "0"]]},
            },
        }));
        assert_eq!(out.exit_code, 0, "{}", out.render());
        assert_eq!(out.document["result"]["nu"], "-3");
    }

    #[test]
    fn exit_codes() {
        let schema = run(json!({"command": "check", "field": "Q", "input": {"cns": {"builtin": "diagonal3"}, "junk": 1}}));
        assert_eq!(schema.exit_code, 2);
        assert_eq!(run_text("not json", &JobOptions::default()).exit_code, 2);
        let pre = run(json!({"command": "cd", "field": "Q", "input": {"core": {"builtin": "unit"}, "mu": 0}}));
        assert_eq!(pre.exit_code, 3);
        assert_eq!(pre.document["status"], "error");
        let trivial = run(json!({
            "command": "extract",
            "field": "Q",
            "input": {"algebra": {"presentation": "generic", "dim": 1, "table": [[["1"]]], "involution": [["1"]], "unit": ["1"]}},
        }));
        assert_eq!(trivial.exit_code, 3);
    }

    #[test]
    fn convert_round_trips_byte_for_byte() {
        let hcns = json!({"extend": {"builtin": "diagonal3"}});
        let first = run(json!({
            "command": "build",
            "field": {"prime": 7},
            "input": {"hcns": hcns, "extension": {"mu": 3}},
        }));
        let original = first.document["result"].clone();
        let fwd = run(json!({
            "command": "convert",
            "field": {"prime": 7},
            "input": {"extension": {"mu": 3}, "hcns": original["hcns"], "z": [[1, 1], [2, 0], [1, 3]]},
        }));
        assert_eq!(fwd.exit_code, 0, "{}", fwd.render());
        let back = run(json!({"command": "convert", "field": {"prime": 7}, "input": fwd.document["result"]}));
        assert_eq!(back.exit_code, 0, "{}", back.render());
        assert_eq!(
            serde_json::to_string(&back.document["result"]).unwrap(),
            serde_json::to_string(&original).unwrap()
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let job = json!({
            "command": "check",
            "field": "Q",
            "options": {"seed": 5, "samples": 10, "quadruple-samples": 5},
            "input": {"algebra": {"presentation": "cayley-dickson", "core": {"builtin": "unit"}, "mu": 2}},
        });
        let (a, b) = (run(job.clone()), run(job));
        assert_eq!(a.exit_code, 0, "{}", a.render());
        assert_eq!(a.render(), b.render());
    }
}
