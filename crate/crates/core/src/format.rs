//! Text formats: algebra files, parameter files and report serialization.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_rational, Polynomial, Rational, Var};
use crate::liealg::{BasisChange, LieAlgebra, Vector};

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub(crate) fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_rational_list<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

pub(crate) fn ser_display_list<T: std::fmt::Display, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    #[serde(default)]
    parameters: Vec<String>,
    brackets: Vec<BracketEntry>,
}

/// Serializes `g` in the algebra file format. Coefficient keys are the basis
/// indices as decimal strings; brackets appear in `(i, j)` order.
pub fn algebra_to_json(g: &LieAlgebra) -> String {
    let parameters: Vec<String> = g.parameters().iter().map(ToString::to_string).collect();
    let mut out = format!(
        "{{\n  \"dim\": {},\n  \"parameters\": {},\n  \"brackets\": [",
        g.dim(),
        serde_json::to_string(&parameters).expect("strings")
    );
    // written by hand so coefficient keys stay in numeric order
    let mut any = false;
    for (&(i, j), v) in g.brackets() {
        if any {
            out.push(',');
        }
        any = true;
        let coeffs: Vec<String> = v
            .support()
            .map(|(h, p)| format!("\"{h}\": {}", json_str(&p.to_string())))
            .collect();
        out.push_str(&format!("\n    {{\"i\": {i}, \"j\": {j}, \"coeffs\": {{{}}}}}", coeffs.join(", ")));
    }
    if any {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string")
}

/// Parses an algebra file. Pairs must satisfy `i < j` and appear at most
/// once; unknown keys are rejected.
pub fn algebra_from_json(text: &str) -> Result<LieAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let mut g = LieAlgebra::abelian(file.dim);
    for name in &file.parameters {
        g.declare_parameter(name.parse::<Var>()?);
    }
    let mut seen = std::collections::BTreeSet::new();
    for b in file.brackets {
        if b.i >= b.j {
            return Err(Error::Format(format!("bracket pair ({}, {}) must satisfy i < j", b.i, b.j)));
        }
        if !seen.insert((b.i, b.j)) {
            return Err(Error::Format(format!("bracket pair ({}, {}) listed twice", b.i, b.j)));
        }
        let mut coords = vec![Polynomial::zero(); file.dim];
        for (h, c) in &b.coeffs {
            let h: usize = h.parse().map_err(|_| Error::Format(format!("bad basis index {h:?}")))?;
            if h == 0 || h > file.dim {
                return Err(Error::IndexOutOfRange { index: h, dim: file.dim });
            }
            coords[h - 1] = c.parse::<Polynomial>()?;
        }
        g.set_bracket(b.i, b.j, Vector::from_coords(coords))?;
    }
    Ok(g)
}

/// Parses a parameter file: a map from parameter names to rational strings
/// or `"free"`. `None` marks a parameter kept symbolic.
pub fn params_from_json(text: &str) -> Result<BTreeMap<Var, Option<Rational>>> {
    let raw: BTreeMap<String, String> = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    raw.into_iter()
        .map(|(k, v)| {
            let var = k.parse::<Var>()?;
            let value = if v.trim() == "free" { None } else { Some(parse_rational(&v)?) };
            Ok((var, value))
        })
        .collect()
}

#[derive(Serialize)]
struct BasisChangeFile {
    dim: usize,
    /// Column `j` is the new basis vector `f_j` in old coordinates.
    columns: Vec<Vec<String>>,
}

pub fn basis_change_to_json(b: &BasisChange) -> String {
    let m = b.matrix();
    let file = BasisChangeFile {
        dim: b.dim(),
        columns: (0..m.cols()).map(|j| m.column(j).iter().map(format_rational).collect()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn algebra_round_trip() {
        let mut g = LieAlgebra::model(5);
        g.declare_parameter(Var::Alpha(1));
        let mut v = Vector::zero(5);
        v.add_scaled(&Vector::basis(5, 1), &"3/5*a_1".parse().unwrap());
        g.set_bracket(4, 5, v).unwrap();
        let text = algebra_to_json(&g);
        assert_eq!(algebra_from_json(&text).unwrap(), g);
        assert!(text.contains("\"parameters\": [\"a_1\"]"));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(algebra_from_json(r#"{"dim": 3, "brackets": [], "extra": 1}"#).is_err());
        assert!(algebra_from_json(r#"{"dim": 3, "brackets": [{"i": 2, "j": 1, "coeffs": {}}]}"#).is_err());
        assert!(algebra_from_json(r#"{"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {"4": "1"}}]}"#).is_err());
        assert!(algebra_from_json(r#"{"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}, "k": 0}]}"#).is_err());
    }

    #[test]
    fn parameter_file() {
        let m = params_from_json(r#"{"a_1": "1/2", "g_5": "free", "b_2_4": "-3"}"#).unwrap();
        assert_eq!(m[&Var::Alpha(1)], Some(crate::exactmath::ratio(1, 2)));
        assert_eq!(m[&Var::Gamma(5)], None);
        assert_eq!(m[&Var::Beta(2, 4)], Some(rat(-3)));
        assert!(params_from_json(r#"{"a_1": "x"}"#).is_err());
        assert!(params_from_json(r#"{"a_1": 1}"#).is_err());
    }

    #[test]
    fn basis_change_columns() {
        let b = BasisChange::permutation(&[2, 1]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&basis_change_to_json(&b)).unwrap();
        assert_eq!(v["columns"][0], serde_json::json!(["0", "1"]));
    }
}
