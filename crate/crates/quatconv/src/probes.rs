//! Probe files: serialized observations of a foreign library's behavior.
//!
//! A probe file is JSON Lines, each line one tagged sample:
//!
//! ```text
//! {"kind":"product","p":[0,1,0,0],"q":[0,0,1,0],"r":[0,0,0,1]}
//! {"kind":"q2m","q":[0.707...,0,0,0.707...],"C":[[0,-1,0],[1,0,0],[0,0,1]]}
//! {"kind":"m2q","C":[[0,-1,0],[1,0,0],[0,0,1]],"q":[0.707...,0,0,0.707...]}
//! ```
//!
//! The loader validates shape and numeric sanity and resolves the
//! scalar-first/scalar-last ambiguity; convention detection itself happens
//! afterwards, in [`crate::detect`].

use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::ComponentOrder;
use crate::detect::{MatrixToQuatSample, ProbeTable, ProductSample, QuatToMatrixSample};
use crate::quat::UnitQuaternion;
use crate::so3::RotationMatrix;

// ── File records ─────────────────────────────────────────────────────

/// One line of a probe file. Quaternion arrays follow the component order
/// given to the loader; matrices are row-major 3×3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProbeRecord {
    Product {
        p: [f64; 4],
        q: [f64; 4],
        r: [f64; 4],
    },
    Q2m {
        q: [f64; 4],
        #[serde(rename = "C")]
        c: [[f64; 3]; 3],
    },
    M2q {
        #[serde(rename = "C")]
        c: [[f64; 3]; 3],
        q: [f64; 4],
    },
}

#[derive(Debug, Error)]
pub enum ProbeError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// A line failed to parse or holds data no convention could explain
    /// structurally (non-finite values, zero quaternions, non-rotation
    /// matrices).
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

// ── Loading ──────────────────────────────────────────────────────────

fn check_finite(line: usize, values: &[f64]) -> Result<(), ProbeError> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(ProbeError::Malformed {
            line,
            message: "non-finite component".to_string(),
        });
    }
    Ok(())
}

fn load_unit(
    line: usize,
    order: ComponentOrder,
    a: [f64; 4],
) -> Result<UnitQuaternion<f64>, ProbeError> {
    check_finite(line, &a)?;
    // Foreign data may carry single-precision rounding; normalize rather
    // than demand unit norm, and reject only the degenerate zero.
    UnitQuaternion::normalize(order.from_array(a)).map_err(|e| ProbeError::Malformed {
        line,
        message: format!("quaternion sample: {e}"),
    })
}

fn load_rotation(line: usize, m: [[f64; 3]; 3]) -> Result<RotationMatrix<f64>, ProbeError> {
    for row in &m {
        check_finite(line, row)?;
    }
    RotationMatrix::new(m).map_err(|e| ProbeError::Malformed {
        line,
        message: format!("matrix sample: {e}"),
    })
}

/// Parses a probe file into a [`ProbeTable`], interpreting quaternion
/// arrays in the given component order. Blank lines are skipped; any
/// invalid line aborts with its 1-based number.
pub fn read_probes<R: BufRead>(
    reader: R,
    order: ComponentOrder,
) -> Result<ProbeTable<f64>, ProbeError> {
    let mut table = ProbeTable::default();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let record: ProbeRecord =
            serde_json::from_str(text).map_err(|e| ProbeError::Malformed {
                line: line_no,
                message: format!("invalid probe record: {e}"),
            })?;
        match record {
            ProbeRecord::Product { p, q, r } => {
                check_finite(line_no, &p)?;
                check_finite(line_no, &q)?;
                check_finite(line_no, &r)?;
                table.product_samples.push(ProductSample {
                    p: order.from_array(p),
                    q: order.from_array(q),
                    r: order.from_array(r),
                });
            }
            ProbeRecord::Q2m { q, c } => {
                table.q2m_samples.push(QuatToMatrixSample {
                    q: load_unit(line_no, order, q)?,
                    c: load_rotation(line_no, c)?,
                });
            }
            ProbeRecord::M2q { c, q } => {
                table.m2q_samples.push(MatrixToQuatSample {
                    c: load_rotation(line_no, c)?,
                    q: load_unit(line_no, order, q)?,
                });
            }
        }
    }
    Ok(table)
}

pub fn read_probes_path<P: AsRef<Path>>(
    path: P,
    order: ComponentOrder,
) -> Result<ProbeTable<f64>, ProbeError> {
    let file = std::fs::File::open(path)?;
    read_probes(std::io::BufReader::new(file), order)
}

// ── Tests ────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{classify, Verdict, DETECTION_TOLERANCE};
    use crate::quat::Multiplication;
    use crate::so3::MatrixMap;

    const S: f64 = core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn parses_all_three_kinds() {
        let text = format!(
            "{}\n{}\n{}\n",
            r#"{"kind":"product","p":[0,1,0,0],"q":[0,0,1,0],"r":[0,0,0,1]}"#,
            format!(r#"{{"kind":"q2m","q":[{S},0,0,{S}],"C":[[0,-1,0],[1,0,0],[0,0,1]]}}"#),
            format!(r#"{{"kind":"m2q","C":[[0,-1,0],[1,0,0],[0,0,1]],"q":[{S},0,0,{S}]}}"#),
        );
        let table = read_probes(text.as_bytes(), ComponentOrder::Wxyz).unwrap();
        assert_eq!(table.product_samples.len(), 1);
        assert_eq!(table.q2m_samples.len(), 1);
        assert_eq!(table.m2q_samples.len(), 1);

        let result = classify(&table, DETECTION_TOLERANCE);
        assert_eq!(result.multiplication, Verdict::Found(Multiplication::Hamilton));
        assert_eq!(result.map, Verdict::Found(MatrixMap::CH));
        assert_eq!(result.homomorphic, Some(true));
    }

    #[test]
    fn scalar_last_order_is_reinterpreted() {
        // The same i·j = k probe with arrays stored [x,y,z,w].
        let text = r#"{"kind":"product","p":[1,0,0,0],"q":[0,1,0,0],"r":[0,0,1,0]}"#;
        let table = read_probes(text.as_bytes(), ComponentOrder::Xyzw).unwrap();
        let s = &table.product_samples[0];
        assert_eq!(s.p, crate::quat::Quaternion::i());
        assert_eq!(s.q, crate::quat::Quaternion::j());
        assert_eq!(s.r, crate::quat::Quaternion::k());
    }

    #[test]
    fn bad_lines_are_reported_with_their_number() {
        let text = "\n{\"kind\":\"product\",\"p\":[0,1,0,0],\"q\":[0,0,1,0]}\n";
        let err = read_probes(text.as_bytes(), ComponentOrder::Wxyz).unwrap_err();
        assert!(matches!(err, ProbeError::Malformed { line: 2, .. }));
    }

    #[test]
    fn non_rotation_matrices_are_malformed() {
        let text = format!(
            r#"{{"kind":"q2m","q":[{S},0,0,{S}],"C":[[2,0,0],[0,1,0],[0,0,1]]}}"#
        );
        let err = read_probes(text.as_bytes(), ComponentOrder::Wxyz).unwrap_err();
        assert!(matches!(err, ProbeError::Malformed { line: 1, .. }));
    }

    #[test]
    fn zero_quaternions_are_malformed() {
        let text = r#"{"kind":"m2q","C":[[1,0,0],[0,1,0],[0,0,1]],"q":[0,0,0,0]}"#;
        let err = read_probes(text.as_bytes(), ComponentOrder::Wxyz).unwrap_err();
        assert!(matches!(err, ProbeError::Malformed { line: 1, .. }));
    }

    #[test]
    fn empty_file_gives_an_empty_table() {
        let table = read_probes("".as_bytes(), ComponentOrder::Wxyz).unwrap();
        assert!(table.is_empty());
    }

    #[test]
    fn records_roundtrip_through_serde() {
        let record = ProbeRecord::Q2m {
            q: [S, 0.0, 0.0, S],
            c: [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]],
        };
        let json = serde_json::to_string(&record).unwrap();
        assert!(json.contains(r#""kind":"q2m""#));
        assert!(json.contains(r#""C":"#));
        let back: ProbeRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);
    }
}
