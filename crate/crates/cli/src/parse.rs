use std::path::Path;

use nalgebra::{SVector, Vector3};
use unruh_core::{pauli4_encode, BlochVector, TwoAtomState, UnitVector};

use crate::CliError;

/// Tolerance on `|n| = 1` and `|r| ≤ 1` before a warning or rejection.
pub const NORM_TOL: f64 = 1e-6;

fn parse_numbers(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| t.trim().trim_matches(|c| c == '(' || c == ')'))
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("not a finite number: {t:?} in {s:?}")))
        })
        .collect()
}

pub fn parse_vector(s: &str) -> Result<Vector3<f64>, CliError> {
    match parse_numbers(s)?.as_slice() {
        &[x, y, z] => Ok(Vector3::new(x, y, z)),
        v => Err(CliError::Usage(format!(
            "expected 3 components, got {} in {s:?}",
            v.len()
        ))),
    }
}

/// Parses a direction and rescales it to unit length, warning when the input
/// was off by more than [`NORM_TOL`].
pub fn parse_axis(s: &str) -> Result<UnitVector, CliError> {
    let v = parse_vector(s)?;
    let norm = v.norm();
    if norm == 0.0 {
        return Err(CliError::Usage(format!("axis {s:?} has zero length")));
    }
    if (norm - 1.0).abs() > NORM_TOL {
        eprintln!("warning: axis {s:?} has norm {norm:.6e}; normalized");
    }
    UnitVector::new(v).map_err(|e| CliError::Usage(e.to_string()))
}

/// Bloch vector from components or one of `ground` (`−n`), `excited` (`+n`), `mixed`.
pub fn parse_bloch(s: &str, n: &UnitVector) -> Result<BlochVector, CliError> {
    match s.trim() {
        "ground" => return Ok(BlochVector::pure(&-*n)),
        "excited" => return Ok(BlochVector::pure(n)),
        "mixed" => return Ok(BlochVector::maximally_mixed()),
        _ => {}
    }
    bloch_from_vector(parse_vector(s)?, s)
}

fn bloch_from_vector(v: Vector3<f64>, label: &str) -> Result<BlochVector, CliError> {
    let norm = v.norm();
    if norm > 1.0 + NORM_TOL {
        return Err(CliError::Usage(format!(
            "Bloch vector {label:?} has norm {norm:.6e} > 1"
        )));
    }
    let v = if norm > 1.0 { v / norm } else { v };
    BlochVector::new(v).map_err(|e| CliError::Usage(e.to_string()))
}

/// Two-atom initial state: `product:(x,y,z),(x,y,z)`, `werner:EPS`, `singlet`,
/// `mixed`, or `file:PATH` holding 16 Pauli components `Tr[ρ σμ⊗σν]`.
pub fn parse_init(s: &str) -> Result<TwoAtomState, CliError> {
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    let state = match kind.trim() {
        "singlet" => TwoAtomState::singlet(),
        "mixed" => TwoAtomState::maximally_mixed(),
        "werner" => {
            let eps = rest
                .trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad Werner parameter {rest:?}")))?;
            TwoAtomState::werner(eps).map_err(|e| CliError::Usage(e.to_string()))?
        }
        "product" => match parse_numbers(rest)?.as_slice() {
            &[x1, y1, z1, x2, y2, z2] => {
                let first = bloch_from_vector(Vector3::new(x1, y1, z1), rest)?;
                let second = bloch_from_vector(Vector3::new(x2, y2, z2), rest)?;
                TwoAtomState::product(&first, &second)
            }
            v => {
                return Err(CliError::Usage(format!(
                    "product state needs 6 components, got {}",
                    v.len()
                )))
            }
        },
        "file" => read_components(Path::new(rest.trim()))?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown initial state kind {other:?}"
            )))
        }
    };
    pauli4_encode(&state)
        .map_err(|e| CliError::Usage(format!("initial state is not physical: {e}")))?;
    Ok(state)
}

fn read_components(path: &Path) -> Result<TwoAtomState, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let array = match &value {
        serde_json::Value::Object(map) => map.get("components"),
        v => Some(v),
    }
    .and_then(|v| v.as_array())
    .ok_or_else(|| {
        CliError::Usage(format!(
            "{}: expected an array of 16 numbers",
            path.display()
        ))
    })?;
    let numbers: Vec<f64> = array.iter().filter_map(|v| v.as_f64()).collect();
    if numbers.len() != 16 || array.len() != 16 {
        return Err(CliError::Usage(format!(
            "{}: expected 16 numeric components",
            path.display()
        )));
    }
    TwoAtomState::from_components(&SVector::<f64, 16>::from_column_slice(&numbers))
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// `key=value` pair with a finite value.
pub fn parse_assignment(s: &str) -> Result<(String, f64), CliError> {
    let (key, value) = s
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("expected KEY=VALUE, got {s:?}")))?;
    let value = value
        .trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Usage(format!("bad value in {s:?}")))?;
    Ok((key.trim().to_string(), value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_accept_parentheses_and_spaces() {
        assert_eq!(
            parse_vector("(1, -2,3)").unwrap(),
            Vector3::new(1.0, -2.0, 3.0)
        );
        assert!(parse_vector("1,2").is_err());
        assert!(parse_vector("1,2,nan").is_err());
    }

    #[test]
    fn axis_is_normalized() {
        let n = parse_axis("0,0,2").unwrap();
        assert_eq!(*n.as_vector(), Vector3::z());
        assert!(parse_axis("0,0,0").is_err());
    }

    #[test]
    fn bloch_keywords_follow_the_axis() {
        let n = UnitVector::z();
        assert_eq!(parse_bloch("ground", &n).unwrap().as_vector().z, -1.0);
        assert_eq!(parse_bloch("excited", &n).unwrap().as_vector().z, 1.0);
        assert!(parse_bloch("0,0,1.1", &n).is_err());
        assert_eq!(parse_bloch("0,0,1.0000001", &n).unwrap().norm(), 1.0);
    }

    #[test]
    fn init_specs() {
        let p = parse_init("product:(0,0,1),(0,0,-1)").unwrap();
        assert_eq!(p.tau(), -1.0);
        assert_eq!(parse_init("singlet").unwrap().tau(), -3.0);
        assert!((parse_init("werner:0.4").unwrap().tau() + 1.8).abs() < 1e-15);
        assert!(parse_init("werner:2").is_err());
        assert!(parse_init("product:0,0,1").is_err());
        assert!(parse_init("bell").is_err());
    }

    #[test]
    fn init_from_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.json");
        let c = TwoAtomState::singlet().components();
        let body = serde_json::json!({ "components": c.iter().collect::<Vec<_>>() });
        std::fs::write(&path, body.to_string()).unwrap();
        let s = parse_init(&format!("file:{}", path.display())).unwrap();
        assert_eq!(s.components(), c);

        std::fs::write(&path, "[1, 0, 0]").unwrap();
        assert!(parse_init(&format!("file:{}", path.display())).is_err());
    }

    #[test]
    fn assignments() {
        assert_eq!(parse_assignment("r = 0.5").unwrap(), ("r".into(), 0.5));
        assert!(parse_assignment("r").is_err());
        assert!(parse_assignment("r=inf").is_err());
    }
}
