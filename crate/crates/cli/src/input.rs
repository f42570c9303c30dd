//! JSON inputs: state pairs and POVMs.
//!
//! State pair: `{"rho1": M, "rho2": M}` with `M` a 2×2 array whose entries
//! are numbers or `[re, im]` pairs. POVM: `{"kets": [[x, y], …]}` or
//! `{"outcomes": [[[a, b], [b, c]], …]}`.

use std::path::Path;

use num_complex::Complex64;
use qaccess_core::linalg::{CMat2, Mat2};
use qaccess_core::measure::{Povm, Rank1Povm};
use qaccess_core::qstate::{to_real_basis, validate_pair, ComplexDensityPair, DensityPair};
use serde_json::Value;

use crate::commands::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_json(text: &str, what: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{what}: malformed JSON: {e}")))
}

fn field<'a>(root: &'a Value, name: &str, what: &str) -> Result<&'a Value, CliError> {
    match root {
        Value::Object(map) => map.get(name).ok_or_else(|| CliError::Input(format!("{what}: missing field `{name}`"))),
        _ => Err(CliError::Input(format!("{what}: expected a JSON object"))),
    }
}

fn number(v: &Value, path: &str) -> Result<f64, CliError> {
    v.as_f64().filter(|x| x.is_finite()).ok_or_else(|| CliError::Input(format!("{path}: expected a finite number")))
}

fn array<'a>(v: &'a Value, len: Option<usize>, path: &str) -> Result<&'a Vec<Value>, CliError> {
    let a = v.as_array().ok_or_else(|| CliError::Input(format!("{path}: expected an array")))?;
    match len {
        Some(n) if a.len() != n => Err(CliError::Input(format!("{path}: expected {n} entries, got {}", a.len()))),
        _ => Ok(a),
    }
}

fn complex_entry(v: &Value, path: &str) -> Result<Complex64, CliError> {
    match v {
        Value::Number(_) => Ok(Complex64::new(number(v, path)?, 0.0)),
        Value::Array(parts) if parts.len() == 2 => {
            Ok(Complex64::new(number(&parts[0], &format!("{path}[0]"))?, number(&parts[1], &format!("{path}[1]"))?))
        }
        _ => Err(CliError::Input(format!("{path}: expected a number or [re, im]"))),
    }
}

fn complex_matrix(v: &Value, path: &str) -> Result<CMat2, CliError> {
    let rows = array(v, Some(2), path)?;
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        for (j, entry) in array(row, Some(2), &row_path)?.iter().enumerate() {
            m[i][j] = complex_entry(entry, &format!("{row_path}[{j}]"))?;
        }
    }
    Ok(CMat2(m))
}

fn real_matrix(v: &Value, path: &str) -> Result<Mat2, CliError> {
    let rows = array(v, Some(2), path)?;
    let mut m = [[0.0; 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        for (j, entry) in array(row, Some(2), &row_path)?.iter().enumerate() {
            m[i][j] = number(entry, &format!("{row_path}[{j}]"))?;
        }
    }
    Ok(Mat2(m))
}

/// Parse, validate, and bring a state pair into its real basis.
pub fn parse_state_pair(text: &str) -> Result<DensityPair, CliError> {
    let root = parse_json(text, "state pair")?;
    let rho1 = complex_matrix(field(&root, "rho1", "state pair")?, "rho1")?;
    let rho2 = complex_matrix(field(&root, "rho2", "state pair")?, "rho2")?;
    let pair = ComplexDensityPair { rho1, rho2 };
    let check = validate_pair(&pair);
    if !check.is_ok() {
        let msgs: Vec<String> = check.violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Input(format!("invalid state pair: {}", msgs.join("; "))));
    }
    to_real_basis(&pair).map_err(|e| CliError::Input(e.to_string()))
}

pub fn parse_povm(text: &str) -> Result<Povm, CliError> {
    let root = parse_json(text, "POVM")?;
    let map = root.as_object().ok_or_else(|| CliError::Input("POVM: expected a JSON object".into()))?;
    let invalid = |e: qaccess_core::Error| CliError::Input(e.to_string());
    match (map.get("kets"), map.get("outcomes")) {
        (Some(kets), None) => {
            let kets = array(kets, None, "kets")?
                .iter()
                .enumerate()
                .map(|(i, k)| {
                    let path = format!("kets[{i}]");
                    let k = array(k, Some(2), &path)?;
                    Ok([number(&k[0], &format!("{path}[0]"))?, number(&k[1], &format!("{path}[1]"))?])
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(Rank1Povm::new(kets).map_err(invalid)?.to_povm())
        }
        (None, Some(outcomes)) => {
            let outcomes = array(outcomes, None, "outcomes")?
                .iter()
                .enumerate()
                .map(|(i, o)| real_matrix(o, &format!("outcomes[{i}]")))
                .collect::<Result<Vec<_>, CliError>>()?;
            Povm::new(outcomes).map_err(invalid)
        }
        (Some(_), Some(_)) => Err(CliError::Input("POVM: give either `kets` or `outcomes`, not both".into())),
        (None, None) => Err(CliError::Input("POVM: missing field `kets` or `outcomes`".into())),
    }
}
