//! JSON encoding of exact rational matrices, points and realizations.
//!
//! Scalars are written as `"p/q"` strings (`"p"` for integers); on input
//! JSON integers are accepted as well. A matrix is an array of rows. A
//! realization is an object
//! `{"d", "s", "L", "Y": [Mat], "D", "C", "A": [[Mat; s*s]; d], "B": ...}`
//! where the images of `A_k` and `B_k` are listed for `E_11, E_12, ...` in
//! row-major order.

use serde_json::{json, Map, Value};

use crate::calculus::{unit_label, LaReport, LlaReport, LlaWitness};
use crate::error::{Error, Result};
use crate::linalg::{BlockLinearMap, Mat};
use crate::point::MatTuple;
use crate::realization::FMRealization;
use crate::{QMat, Rat};

fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub fn parse_rat(text: &str) -> Result<Rat> {
    text.trim().parse::<Rat>().map_err(|_| input(format!("not a rational number: {text:?}")))
}

pub fn rat_to_json(x: &Rat) -> Value {
    Value::String(x.to_string())
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => Ok(Rat::from_integer(i.into())),
            (_, Some(u)) => Ok(Rat::from_integer(u.into())),
            _ => Err(input(format!("non-integer JSON number {n}; write fractions as \"p/q\" strings"))),
        },
        other => Err(input(format!("expected a rational, found {other}"))),
    }
}

pub fn mat_to_json(m: &QMat) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(rat_to_json).collect())).collect())
}

/// Reads a matrix; `cols` fixes the width of a matrix with no rows.
fn mat_from_json_cols(v: &Value, cols: Option<usize>) -> Result<QMat> {
    let rows = v.as_array().ok_or_else(|| input("a matrix must be an array of rows"))?;
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| input("a matrix row must be an array"))?
                .iter()
                .map(rat_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Ok(Mat::zeros(0, cols.unwrap_or(0)));
    }
    Mat::from_rows(parsed).map_err(|_| input("matrix rows have different lengths"))
}

pub fn mat_from_json(v: &Value) -> Result<QMat> {
    mat_from_json_cols(v, None)
}

fn expect_shape(m: QMat, shape: (usize, usize), what: &str) -> Result<QMat> {
    if m.shape() != shape {
        return Err(input(format!("{what} is {:?}, expected {:?}", m.shape(), shape)));
    }
    Ok(m)
}

pub fn point_to_json(x: &MatTuple<Rat>) -> Value {
    Value::Array(x.mats().iter().map(mat_to_json).collect())
}

/// A point is a nonempty array of square matrices of a common size.
pub fn point_from_json(v: &Value) -> Result<MatTuple<Rat>> {
    let mats = v.as_array().ok_or_else(|| input("a point must be an array of matrices"))?;
    if mats.is_empty() {
        return Err(input("a point needs at least one matrix"));
    }
    let mats = mats.iter().map(mat_from_json).collect::<Result<Vec<_>>>()?;
    MatTuple::new(mats).map_err(|_| input("point matrices must be square and of one size"))
}

fn map_to_json(m: &BlockLinearMap<Rat>) -> Value {
    Value::Array(m.images().iter().map(mat_to_json).collect())
}

fn map_from_json(v: &Value, s: usize, r: usize, c: usize, what: &str) -> Result<BlockLinearMap<Rat>> {
    let imgs = v.as_array().ok_or_else(|| input(format!("{what} must be an array of s*s images")))?;
    if imgs.len() != s * s {
        return Err(input(format!("{what} has {} images, expected {}", imgs.len(), s * s)));
    }
    let imgs = imgs
        .iter()
        .enumerate()
        .map(|(k, img)| expect_shape(mat_from_json_cols(img, Some(c))?, (r, c), &format!("{what}({})", unit_label(k, s))))
        .collect::<Result<Vec<_>>>()?;
    BlockLinearMap::new(s, r, c, imgs)
}

pub fn realization_to_json(r: &FMRealization<Rat>) -> Value {
    json!({
        "d": r.d(),
        "s": r.s(),
        "L": r.state_dim(),
        "Y": point_to_json(r.centre()),
        "D": mat_to_json(r.feedthrough()),
        "C": mat_to_json(r.output()),
        "A": r.a().iter().map(map_to_json).collect::<Vec<_>>(),
        "B": r.b().iter().map(map_to_json).collect::<Vec<_>>(),
    })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| input(format!("realization is missing {key:?}")))
}

fn size_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    field(obj, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| input(format!("{key:?} must be a nonnegative integer")))
}

pub fn realization_from_json(v: &Value) -> Result<FMRealization<Rat>> {
    let obj = v.as_object().ok_or_else(|| input("a realization must be a JSON object"))?;
    let (d, s, l) = (size_field(obj, "d")?, size_field(obj, "s")?, size_field(obj, "L")?);
    let y = point_from_json(field(obj, "Y")?)?;
    if y.d() != d || y.level() != s {
        return Err(input(format!("centre has {} matrices of size {}, expected {d} of size {s}", y.d(), y.level())));
    }
    let dd = expect_shape(mat_from_json(field(obj, "D")?)?, (s, s), "D")?;
    let c = expect_shape(mat_from_json_cols(field(obj, "C")?, Some(l))?, (s, l), "C")?;
    let maps = |key: &str, r: usize, cols: usize| -> Result<Vec<BlockLinearMap<Rat>>> {
        let list = field(obj, key)?.as_array().ok_or_else(|| input(format!("{key:?} must be an array of maps")))?;
        if list.len() != d {
            return Err(input(format!("{key:?} has {} maps, expected {d}", list.len())));
        }
        list.iter().enumerate().map(|(k, m)| map_from_json(m, s, r, cols, &format!("{key}_{}", k + 1))).collect()
    };
    let a = maps("A", l, l)?;
    let b = maps("B", l, s)?;
    FMRealization::new(y, dd, c, a, b).map_err(|e| input(e.to_string()))
}

fn witness_to_json(w: &LlaWitness, s: usize) -> Value {
    let opt_unit = |u: &Option<usize>| u.map(|u| Value::String(unit_label(u, s))).unwrap_or(Value::Null);
    let opt = |i: &Option<usize>| i.map(Value::from).unwrap_or(Value::Null);
    match w {
        LlaWitness::Basis { s: su, z1, z2, i1, i2 } => json!({
            "S": unit_label(*su, s), "Z1": opt_unit(z1), "Z2": opt_unit(z2), "i1": opt(i1), "i2": opt(i2),
        }),
        LlaWitness::Trial { trial, i1, i2 } => json!({ "trial": trial, "i1": opt(i1), "i2": opt(i2) }),
    }
}

/// `s` is the block size, used to label matrix units.
pub fn lla_report_to_json(rep: &LlaReport<Rat>, s: usize) -> Value {
    json!({
        "pass": rep.pass(),
        "minimal": rep.minimal,
        "interpretation": rep.interpretation(),
        "violations": rep.violations.iter().map(|v| json!({
            "equation": v.equation.tag().to_string(),
            "at": witness_to_json(&v.witness, s),
            "residual": mat_to_json(&v.residual),
        })).collect::<Vec<_>>(),
    })
}

pub fn la_report_to_json(rep: &LaReport<Rat>, s: usize) -> Value {
    json!({
        "pass": rep.pass(),
        "checked": rep.checked,
        "violations": rep.violations.iter().map(|v| json!({
            "condition": format!("{:?}", v.condition),
            "word": v.word.to_string(),
            "S": unit_label(v.s_unit, s),
            "Z": v.z_units.iter().map(|&u| unit_label(u, s)).collect::<Vec<_>>(),
            "residual": mat_to_json(&v.residual),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::synthesis::{realize_const, realize_expr};

    #[test]
    fn rationals_and_matrices_round_trip() {
        let m = QMat::from_fn(2, 3, |i, j| Rat::new((i as i64 * 3 - j as i64).into(), (j as i64 + 1).into()));
        let v = mat_to_json(&m);
        assert_eq!(v[0][1], json!("-1/2"));
        assert_eq!(mat_from_json(&v).unwrap(), m);
        assert_eq!(mat_from_json(&json!([[1, "2/4"], [-3, "0"]])).unwrap().row(0)[1], Rat::new(1.into(), 2.into()));
        assert!(mat_from_json(&json!([[1.5]])).is_err());
        assert!(mat_from_json(&json!([[1, 2], [3]])).is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn realizations_round_trip() {
        let y = point_from_json(&json!([[[0, 1], [0, 0]], [[0, 0], [1, 0]]])).unwrap();
        for r in [realize_expr(&parse("(x1*x2 - x2*x1)^-1 + 1/2").unwrap(), &y).unwrap(), realize_const(&Rat::from_integer(3.into()), &y)] {
            let v = realization_to_json(&r);
            let text = serde_json::to_string(&v).unwrap();
            let back = realization_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn malformed_realizations_are_input_errors() {
        let y = point_from_json(&json!([[[1]]])).unwrap();
        let mut v = realization_to_json(&realize_expr(&parse("x1").unwrap(), &y).unwrap());
        v["L"] = json!(2);
        assert!(matches!(realization_from_json(&v), Err(Error::Input(_))));
        assert!(matches!(point_from_json(&json!([[[1, 2]]])), Err(Error::Input(_))));
    }
}
