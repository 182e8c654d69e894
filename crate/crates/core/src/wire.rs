//! JSON encoding of problems, verdicts and certificates. Scalars are always
//! written in the scalar grammar, so output contains no floating point.

use serde_json::{json, Map, Value};

use crate::classes::{class_from_jordan, ClassSpec, JordanBlock, JordanForm};
use crate::closure::TripleCertificate;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::roots::{DimVector, RootClass, RootTag, Sign};
use crate::scalar::{parse_scalar, Scalar};
use crate::solver::{Answer, Decomposition, Mode, Verdict};

pub const FORMAT_VERSION: u64 = 1;

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("{path}: {msg}"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(path, format!("missing field \"{key}\"")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(path, "expected a nonnegative integer"))
}

fn int(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| err(path, "expected an integer"))
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

/// Parses a scalar string (or a JSON integer), prefixing errors with `path`.
pub fn scalar_from_json(v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| err(path, e)),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_int(n.as_i64().unwrap())),
        _ => Err(err(path, "expected a scalar string")),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(scalar_to_json).collect())).collect())
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<Matrix> {
    let rows = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let p = format!("{path}[{i}]");
            array(r, &p)?
                .iter()
                .enumerate()
                .map(|(j, x)| scalar_from_json(x, &format!("{p}[{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows).map_err(|e| err(path, e))
}

pub fn dimvec_to_json(a: &DimVector) -> Value {
    json!({ "center": a.a0, "arms": a.arms })
}

pub fn dimvec_from_json(v: &Value, path: &str) -> Result<DimVector> {
    let obj = object(v, path)?;
    let a0 = int(field(obj, "center", path)?, &format!("{path}.center"))?;
    let arms = array(field(obj, "arms", path)?, &format!("{path}.arms"))?
        .iter()
        .enumerate()
        .map(|(i, arm)| {
            let p = format!("{path}.arms[{i}]");
            array(arm, &p)?.iter().enumerate().map(|(j, x)| int(x, &format!("{p}[{j}]"))).collect()
        })
        .collect::<Result<_>>()?;
    Ok(DimVector::new(a0, arms))
}

/// Parses a comma-separated list of integers in vertex order.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Input(format!("\"{s}\" is not an integer"))))
        .collect()
}

pub fn class_to_json(c: &ClassSpec) -> Value {
    json!({
        "eigenvalues": c.eigenvalues.iter().map(scalar_to_json).collect::<Vec<_>>(),
        "dims": c.dims,
    })
}

/// A class given either as `{"eigenvalues", "dims"}` or as
/// `{"jordan": [{"eigenvalue", "size", "count"}], "eigenvalues"?}`.
pub fn class_from_json(v: &Value, path: &str) -> Result<ClassSpec> {
    let obj = object(v, path)?;
    let row = match obj.get("eigenvalues") {
        Some(e) => Some(
            array(e, &format!("{path}.eigenvalues"))?
                .iter()
                .enumerate()
                .map(|(j, x)| scalar_from_json(x, &format!("{path}.eigenvalues[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    if let Some(jordan) = obj.get("jordan") {
        let blocks = array(jordan, &format!("{path}.jordan"))?
            .iter()
            .enumerate()
            .map(|(b, x)| {
                let p = format!("{path}.jordan[{b}]");
                let o = object(x, &p)?;
                Ok(JordanBlock {
                    eigenvalue: scalar_from_json(field(o, "eigenvalue", &p)?, &format!("{p}.eigenvalue"))?,
                    size: uint(field(o, "size", &p)?, &format!("{p}.size"))? as usize,
                    count: o.get("count").map(|c| uint(c, &format!("{p}.count"))).transpose()?.unwrap_or(1) as usize,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return class_from_jordan(&JordanForm::new(blocks), row.as_deref()).map_err(|e| err(path, e));
    }
    let eigenvalues = row.ok_or_else(|| err(path, "missing field \"eigenvalues\" or \"jordan\""))?;
    let dims = array(field(obj, "dims", path)?, &format!("{path}.dims"))?
        .iter()
        .enumerate()
        .map(|(j, x)| uint(x, &format!("{path}.dims[{j}]")).map(|d| d as usize))
        .collect::<Result<Vec<_>>>()?;
    ClassSpec::new(eigenvalues, dims).map_err(|e| err(path, e))
}

/// Which equation a problem file poses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    Multiplicative,
    Additive,
}

impl Equation {
    pub fn name(self) -> &'static str {
        match self {
            Equation::Multiplicative => "multiplicative",
            Equation::Additive => "additive",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "multiplicative" => Ok(Equation::Multiplicative),
            "additive" => Ok(Equation::Additive),
            other => Err(Error::Input(format!("unknown mode \"{other}\""))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub equation: Equation,
    pub classes: Vec<ClassSpec>,
    pub options: Map<String, Value>,
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column())))
}

fn check_version(obj: &Map<String, Value>) -> Result<()> {
    match obj.get("version") {
        None => Ok(()),
        Some(v) if v.as_u64() == Some(FORMAT_VERSION) => Ok(()),
        Some(v) => Err(Error::Input(format!("unsupported version {v}"))),
    }
}

fn classes_from_json(obj: &Map<String, Value>) -> Result<Vec<ClassSpec>> {
    array(field(obj, "classes", "$")?, "$.classes")?
        .iter()
        .enumerate()
        .map(|(i, c)| class_from_json(c, &format!("$.classes[{i}]")))
        .collect()
}

fn equation_from_json(obj: &Map<String, Value>) -> Result<Equation> {
    obj.get("mode")
        .map(|m| m.as_str().ok_or_else(|| err("$.mode", "expected a string")).and_then(Equation::parse))
        .transpose()
        .map(|m| m.unwrap_or(Equation::Multiplicative))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let v = parse_json(text)?;
    let obj = object(&v, "$")?;
    check_version(obj)?;
    let options = match obj.get("options") {
        Some(o) => object(o, "$.options")?.clone(),
        None => Map::new(),
    };
    Ok(ProblemFile { equation: equation_from_json(obj)?, classes: classes_from_json(obj)?, options })
}

pub fn problem_to_json(equation: Equation, classes: &[ClassSpec]) -> Value {
    json!({
        "version": FORMAT_VERSION,
        "mode": equation.name(),
        "classes": classes.iter().map(class_to_json).collect::<Vec<_>>(),
    })
}

pub fn root_class_to_json(c: &RootClass) -> Value {
    json!({
        "tag": match c.tag {
            RootTag::NotRoot => "not a root",
            RootTag::RealRoot => "real root",
            RootTag::ImaginaryRoot => "imaginary root",
        },
        "sign": match c.sign {
            Sign::Positive => "positive",
            Sign::Negative => "negative",
            Sign::Mixed => "mixed",
        },
        "strict": c.strict,
        "fundamental_region": c.in_fundamental_region,
    })
}

pub fn decomposition_to_json(d: &Decomposition) -> Value {
    Value::Array(
        d.parts
            .iter()
            .map(|p| {
                json!({
                    "root": dimvec_to_json(&p.root),
                    "bracket": p.bracket.to_string(),
                    "strict": p.class.strict,
                    "real": p.class.tag == RootTag::RealRoot,
                })
            })
            .collect(),
    )
}

pub fn answer_str(a: Answer) -> &'static str {
    match a {
        Answer::Yes => "yes",
        Answer::No => "no",
        Answer::Undecided => "undecided",
    }
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    let mut out = json!({
        "answer": answer_str(v.answer),
        "criterion": v.criterion,
        "reason": v.reason,
    });
    let obj = out.as_object_mut().unwrap();
    if let Some(d) = &v.decomposition {
        obj.insert("decomposition".into(), decomposition_to_json(d));
    }
    if let Some(c) = &v.construction {
        obj.insert(
            "construction".into(),
            json!({
                "matrices": c.mats.iter().map(matrix_to_json).collect::<Vec<_>>(),
                "parts": c.parts.iter().map(dimvec_to_json).collect::<Vec<_>>(),
            }),
        );
    }
    if !v.unconstructed_parts.is_empty() {
        obj.insert(
            "existence_only_parts".into(),
            Value::Array(v.unconstructed_parts.iter().map(dimvec_to_json).collect()),
        );
    }
    out
}

pub fn triple_to_json(t: &TripleCertificate) -> Value {
    json!({
        "xi": t.xi.iter().map(scalar_to_json).collect::<Vec<_>>(),
        "dims": t.dims,
        "phi": t.phi.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "psi": t.psi.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "reductions": t.reductions.iter().map(|&(r, s)| json!([r, s])).collect::<Vec<_>>(),
    })
}

pub fn triple_from_json(v: &Value, path: &str) -> Result<TripleCertificate> {
    let obj = object(v, path)?;
    let list = |key: &str| -> Result<Vec<Value>> { Ok(array(field(obj, key, path)?, &format!("{path}.{key}"))?.clone()) };
    let xi = list("xi")?
        .iter()
        .enumerate()
        .map(|(j, x)| scalar_from_json(x, &format!("{path}.xi[{j}]")))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = list("dims")?
        .iter()
        .enumerate()
        .map(|(j, x)| uint(x, &format!("{path}.dims[{j}]")).map(|d| d as usize))
        .collect::<Result<_>>()?;
    // Empty matrices carry no column count on the wire; restore it from `dims`.
    let mats = |key: &str| -> Result<Vec<Matrix>> {
        list(key)?
            .iter()
            .enumerate()
            .map(|(j, m)| {
                let m = matrix_from_json(m, &format!("{path}.{key}[{j}]"))?;
                let (a, b) = (dims.get(j + 1).copied(), dims.get(j).copied());
                let shape = if key == "phi" { a.zip(b) } else { b.zip(a) };
                Ok(match shape {
                    Some((r, c)) if m.rows() * m.cols() == 0 && r * c == 0 => Matrix::zeros(r, c),
                    _ => m,
                })
            })
            .collect()
    };
    let reductions = match obj.get("reductions") {
        None => Vec::new(),
        Some(r) => array(r, &format!("{path}.reductions"))?
            .iter()
            .enumerate()
            .map(|(j, pair)| {
                let p = format!("{path}.reductions[{j}]");
                let a = array(pair, &p)?;
                if a.len() != 2 {
                    return Err(err(&p, "expected a pair"));
                }
                Ok((uint(&a[0], &p)? as usize, uint(&a[1], &p)? as usize))
            })
            .collect::<Result<_>>()?,
    };
    let (phi, psi) = (mats("phi")?, mats("psi")?);
    Ok(TripleCertificate { xi, dims, phi, psi, reductions })
}

/// A certificate file accepted by `check-solution`.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// Matrices solving the equation, optionally with per-class triples.
    Solution {
        closure: bool,
        classes: Vec<ClassSpec>,
        matrices: Vec<Matrix>,
        triples: Vec<Option<TripleCertificate>>,
    },
    /// A decomposition of the dimension vector into admissible positive roots.
    Decomposition { mode: Mode, classes: Vec<ClassSpec>, parts: Vec<DimVector> },
}

pub fn solution_certificate(
    closure: bool,
    classes: &[ClassSpec],
    matrices: &[Matrix],
    triples: &[Option<TripleCertificate>],
) -> Value {
    json!({
        "version": FORMAT_VERSION,
        "kind": "solution",
        "mode": Equation::Multiplicative.name(),
        "check": if closure { "closure" } else { "exact" },
        "classes": classes.iter().map(class_to_json).collect::<Vec<_>>(),
        "matrices": matrices.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "triples": triples.iter().map(|t| t.as_ref().map_or(Value::Null, triple_to_json)).collect::<Vec<_>>(),
    })
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Multiplicative => "multiplicative",
        Mode::AdditiveZero => "additive-zero",
        Mode::AdditiveInteger => "additive-integer",
    }
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "multiplicative" => Ok(Mode::Multiplicative),
        "additive-zero" => Ok(Mode::AdditiveZero),
        "additive-integer" => Ok(Mode::AdditiveInteger),
        other => Err(Error::Input(format!("unknown decomposition mode \"{other}\""))),
    }
}

pub fn decomposition_certificate(mode: Mode, classes: &[ClassSpec], parts: &[DimVector]) -> Value {
    json!({
        "version": FORMAT_VERSION,
        "kind": "decomposition",
        "mode": mode_name(mode),
        "classes": classes.iter().map(class_to_json).collect::<Vec<_>>(),
        "parts": parts.iter().map(dimvec_to_json).collect::<Vec<_>>(),
    })
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let v = parse_json(text)?;
    let obj = object(&v, "$")?;
    check_version(obj)?;
    let classes = classes_from_json(obj)?;
    let kind = field(obj, "kind", "$")?.as_str().ok_or_else(|| err("$.kind", "expected a string"))?;
    match kind {
        "solution" => {
            let closure = match obj.get("check").and_then(Value::as_str) {
                None | Some("exact") => false,
                Some("closure") => true,
                Some(other) => return Err(err("$.check", format!("unknown check \"{other}\""))),
            };
            let matrices = array(field(obj, "matrices", "$")?, "$.matrices")?
                .iter()
                .enumerate()
                .map(|(i, m)| matrix_from_json(m, &format!("$.matrices[{i}]")))
                .collect::<Result<_>>()?;
            let triples = match obj.get("triples") {
                None => Vec::new(),
                Some(t) => array(t, "$.triples")?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| match x {
                        Value::Null => Ok(None),
                        _ => triple_from_json(x, &format!("$.triples[{i}]")).map(Some),
                    })
                    .collect::<Result<_>>()?,
            };
            Ok(Certificate::Solution { closure, classes, matrices, triples })
        }
        "decomposition" => {
            let parts = array(field(obj, "parts", "$")?, "$.parts")?
                .iter()
                .enumerate()
                .map(|(i, p)| dimvec_from_json(p, &format!("$.parts[{i}]")))
                .collect::<Result<_>>()?;
            let mode = field(obj, "mode", "$")?.as_str().ok_or_else(|| err("$.mode", "expected a string"))?;
            Ok(Certificate::Decomposition { mode: parse_mode(mode)?, classes, parts })
        }
        other => Err(err("$.kind", format!("unknown certificate kind \"{other}\""))),
    }
}
