//! Serialized quaternion datasets and their convention migration.
//!
//! The on-disk format is JSON Lines: the first non-blank line is a header
//! object naming the convention the records were produced under,
//!
//! ```text
//! {"multiplication":"hamilton","map":"CH","order":"wxyz"}
//! [0.7071067811865476, 0.0, 0.0, 0.7071067811865476]
//! ...
//! ```
//!
//! and every following non-blank line is one quaternion as an array of four
//! numbers in the header's component order. Migration between the two
//! homomorphic conventions is pure conjugation — negating the imaginary
//! parts is exact in IEEE arithmetic, so a migration roundtrip reproduces
//! the original records bit for bit.

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quat::{Multiplication, Quaternion};
use crate::so3::{MatrixMap, QmConvention};

// ── Types ────────────────────────────────────────────────────────────

/// Component order of the stored 4-arrays. Internal math is always
/// scalar-first; this tag only describes the file encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentOrder {
    /// Scalar-first `[w, x, y, z]`.
    Wxyz,
    /// Scalar-last `[x, y, z, w]`, common in aerospace files.
    Xyzw,
}

impl ComponentOrder {
    #[inline]
    pub fn to_array(self, q: Quaternion<f64>) -> [f64; 4] {
        match self {
            ComponentOrder::Wxyz => [q.w, q.x, q.y, q.z],
            ComponentOrder::Xyzw => [q.x, q.y, q.z, q.w],
        }
    }

    #[inline]
    pub fn from_array(self, a: [f64; 4]) -> Quaternion<f64> {
        match self {
            ComponentOrder::Wxyz => Quaternion::new(a[0], a[1], a[2], a[3]),
            ComponentOrder::Xyzw => Quaternion::new(a[3], a[0], a[1], a[2]),
        }
    }
}

impl core::fmt::Display for ComponentOrder {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ComponentOrder::Wxyz => write!(f, "wxyz"),
            ComponentOrder::Xyzw => write!(f, "xyzw"),
        }
    }
}

/// The first line of a dataset file: which convention produced the records
/// and how their components are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetHeader {
    pub multiplication: Multiplication,
    pub map: MatrixMap,
    pub order: ComponentOrder,
}

impl DatasetHeader {
    #[inline]
    pub fn convention(&self) -> QmConvention {
        QmConvention::new(self.map, self.multiplication)
    }
}

/// A dataset held in memory: header plus records, the records always in
/// scalar-first order regardless of the file encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatDataset {
    pub header: DatasetHeader,
    pub records: Vec<Quaternion<f64>>,
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// The file has no header line.
    #[error("dataset file is empty; expected a header line")]
    MissingHeader,
    /// A line failed to parse or holds invalid data.
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    /// Migration touched a dataset whose header names an antihomomorphic
    /// pairing; such data has no defined quaternion semantics to migrate.
    #[error("header convention {convention} is antihomomorphic; only (CH, hamilton) and (CS, shuster) datasets can be migrated")]
    AntihomomorphicHeader { convention: QmConvention },
}

// ── Reading and writing ──────────────────────────────────────────────

/// Reads a JSONL dataset: header from the first non-blank line, one
/// quaternion per following non-blank line, converted to scalar-first
/// order. Rejects non-finite components and malformed lines with their
/// 1-based line number.
pub fn read_dataset<R: BufRead>(reader: R) -> Result<QuatDataset, DatasetError> {
    let mut header: Option<DatasetHeader> = None;
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let line_no = idx + 1;
        match header {
            None => {
                let h: DatasetHeader =
                    serde_json::from_str(text).map_err(|e| DatasetError::Malformed {
                        line: line_no,
                        message: format!("invalid header: {e}"),
                    })?;
                header = Some(h);
            }
            Some(h) => {
                let a: [f64; 4] =
                    serde_json::from_str(text).map_err(|e| DatasetError::Malformed {
                        line: line_no,
                        message: format!("expected an array of 4 numbers: {e}"),
                    })?;
                if a.iter().any(|c| !c.is_finite()) {
                    return Err(DatasetError::Malformed {
                        line: line_no,
                        message: "non-finite component".to_string(),
                    });
                }
                records.push(h.order.from_array(a));
            }
        }
    }
    let header = header.ok_or(DatasetError::MissingHeader)?;
    Ok(QuatDataset { header, records })
}

/// Writes a dataset in its header's component order, one JSON value per
/// line. The number formatting round-trips every `f64` bit-exactly.
pub fn write_dataset<W: Write>(mut writer: W, ds: &QuatDataset) -> Result<(), DatasetError> {
    serde_json::to_writer(&mut writer, &ds.header).map_err(std::io::Error::from)?;
    writer.write_all(b"\n")?;
    for q in &ds.records {
        serde_json::to_writer(&mut writer, &ds.header.order.to_array(*q))
            .map_err(std::io::Error::from)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_dataset_path<P: AsRef<Path>>(path: P) -> Result<QuatDataset, DatasetError> {
    let file = std::fs::File::open(path)?;
    read_dataset(std::io::BufReader::new(file))
}

pub fn write_dataset_path<P: AsRef<Path>>(path: P, ds: &QuatDataset) -> Result<(), DatasetError> {
    let file = std::fs::File::create(path)?;
    write_dataset(std::io::BufWriter::new(file), ds)
}

// ── Migration ────────────────────────────────────────────────────────

/// Migrates a dataset to the target convention. Quaternion data crossing a
/// convention boundary is conjugated — the data-level version of the
/// interface rule — and the output is always written scalar-first. Source
/// and target must both be homomorphic pairings; when they already agree
/// the records pass through untouched, so migration is idempotent.
pub fn migrate_dataset(
    ds: &QuatDataset,
    target: QmConvention,
) -> Result<QuatDataset, DatasetError> {
    let source = ds.header.convention();
    if !source.is_homomorphic() {
        return Err(DatasetError::AntihomomorphicHeader { convention: source });
    }
    if !target.is_homomorphic() {
        return Err(DatasetError::AntihomomorphicHeader { convention: target });
    }
    let needs_conjugation = source != target;
    let records = ds
        .records
        .iter()
        .map(|q| if needs_conjugation { q.conjugate() } else { *q })
        .collect();
    Ok(QuatDataset {
        header: DatasetHeader {
            multiplication: target.mult,
            map: target.map,
            order: ComponentOrder::Wxyz,
        },
        records,
    })
}

// ── Tests ────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;

    fn qt() -> Quaternion<f64> {
        let s = 0.5f64.sqrt();
        Quaternion::new(s, 0.0, 0.0, s)
    }

    fn header(mult: Multiplication, map: MatrixMap, order: ComponentOrder) -> DatasetHeader {
        DatasetHeader {
            multiplication: mult,
            map,
            order,
        }
    }

    #[test]
    fn header_serializes_to_the_documented_strings() {
        let h = header(Multiplication::Hamilton, MatrixMap::CH, ComponentOrder::Wxyz);
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"multiplication":"hamilton","map":"CH","order":"wxyz"}"#
        );
        let h = header(Multiplication::Shuster, MatrixMap::CS, ComponentOrder::Xyzw);
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"multiplication":"shuster","map":"CS","order":"xyzw"}"#
        );
    }

    #[test]
    fn reads_a_scalar_last_file_into_scalar_first_records() {
        let text = "\
{\"multiplication\":\"shuster\",\"map\":\"CS\",\"order\":\"xyzw\"}\n\
[1.0, 2.0, 3.0, 4.0]\n\
\n\
[0.0, 0.0, 1.0, 0.0]\n";
        let ds = read_dataset(text.as_bytes()).unwrap();
        assert_eq!(ds.records.len(), 2);
        assert_eq!(ds.records[0], Quaternion::new(4.0, 1.0, 2.0, 3.0));
        assert_eq!(ds.records[1], Quaternion::new(0.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn write_read_roundtrip_is_bit_exact() {
        let ds = QuatDataset {
            header: header(Multiplication::Hamilton, MatrixMap::CH, ComponentOrder::Wxyz),
            records: vec![
                qt(),
                Quaternion::new(-0.0, 1e-300, -1.0, 0.1 + 0.2), // awkward values on purpose
                Quaternion::new(f64::MIN_POSITIVE, -f64::MIN_POSITIVE, 0.3, -0.7),
            ],
        };
        let mut buf = Vec::new();
        write_dataset(&mut buf, &ds).unwrap();
        let back = read_dataset(buf.as_slice()).unwrap();
        assert_eq!(back.header, ds.header);
        for (a, b) in back.records.iter().zip(&ds.records) {
            assert_eq!(
                a.to_array().map(f64::to_bits),
                b.to_array().map(f64::to_bits)
            );
        }
    }

    #[test]
    fn missing_header_and_malformed_lines_are_rejected() {
        assert!(matches!(
            read_dataset("".as_bytes()),
            Err(DatasetError::MissingHeader)
        ));
        let bad_header = "{\"multiplication\":\"other\",\"map\":\"CH\",\"order\":\"wxyz\"}\n";
        assert!(matches!(
            read_dataset(bad_header.as_bytes()),
            Err(DatasetError::Malformed { line: 1, .. })
        ));
        let bad_record = "\
{\"multiplication\":\"hamilton\",\"map\":\"CH\",\"order\":\"wxyz\"}\n\
[1.0, 2.0, 3.0]\n";
        assert!(matches!(
            read_dataset(bad_record.as_bytes()),
            Err(DatasetError::Malformed { line: 2, .. })
        ));
        let nonfinite = "\
{\"multiplication\":\"hamilton\",\"map\":\"CH\",\"order\":\"wxyz\"}\n\
[1.0, 2.0, 3.0, 1e999]\n";
        assert!(matches!(
            read_dataset(nonfinite.as_bytes()),
            Err(DatasetError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn migration_conjugates_iff_the_convention_changes() {
        let ds = QuatDataset {
            header: header(Multiplication::Shuster, MatrixMap::CS, ComponentOrder::Wxyz),
            records: vec![qt()],
        };
        let out = migrate_dataset(&ds, QmConvention::HAMILTON_CH).unwrap();
        assert_eq!(out.header.multiplication, Multiplication::Hamilton);
        assert_eq!(out.header.map, MatrixMap::CH);
        assert_eq!(out.records[0], qt().conjugate());

        let same = migrate_dataset(&ds, QmConvention::SHUSTER_CS).unwrap();
        assert_eq!(same.records[0], qt());
    }

    #[test]
    fn migration_normalizes_the_order_to_scalar_first() {
        let ds = QuatDataset {
            header: header(Multiplication::Hamilton, MatrixMap::CH, ComponentOrder::Xyzw),
            records: vec![Quaternion::new(1.0, 2.0, 3.0, 4.0)],
        };
        let out = migrate_dataset(&ds, QmConvention::HAMILTON_CH).unwrap();
        assert_eq!(out.header.order, ComponentOrder::Wxyz);
        // Same convention: records untouched even though the order tag moved.
        assert_eq!(out.records[0], ds.records[0]);
    }

    #[test]
    fn migration_roundtrip_is_bit_exact() {
        let awkward = vec![
            Quaternion::new(0.0, -0.0, 1e-300, -1e-300),
            Quaternion::new(0.1 + 0.2, -0.3, f64::MIN_POSITIVE, 1.0),
            qt(),
        ];
        let ds = QuatDataset {
            header: header(Multiplication::Hamilton, MatrixMap::CH, ComponentOrder::Wxyz),
            records: awkward,
        };
        let there = migrate_dataset(&ds, QmConvention::SHUSTER_CS).unwrap();
        let back = migrate_dataset(&there, QmConvention::HAMILTON_CH).unwrap();
        for (a, b) in back.records.iter().zip(&ds.records) {
            assert_eq!(
                a.to_array().map(f64::to_bits),
                b.to_array().map(f64::to_bits)
            );
        }
    }

    #[test]
    fn antihomomorphic_headers_are_rejected() {
        let ds = QuatDataset {
            header: header(Multiplication::Shuster, MatrixMap::CH, ComponentOrder::Wxyz),
            records: vec![],
        };
        assert!(matches!(
            migrate_dataset(&ds, QmConvention::HAMILTON_CH),
            Err(DatasetError::AntihomomorphicHeader { .. })
        ));
        let good = QuatDataset {
            header: header(Multiplication::Hamilton, MatrixMap::CH, ComponentOrder::Wxyz),
            records: vec![],
        };
        let bad_target = QmConvention::new(MatrixMap::CS, Multiplication::Hamilton);
        assert!(matches!(
            migrate_dataset(&good, bad_target),
            Err(DatasetError::AntihomomorphicHeader { .. })
        ));
    }
}
