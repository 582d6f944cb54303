//! Data ingestion and result serialization: CSV and LIBSVM loaders, the
//! selected-ids file format and the JSON run report.
//!
//! CSV rows are feature values with the class label in the last column;
//! labels are mapped to dense integers in first-appearance order. Numbers
//! are written with the shortest representation that round-trips exactly.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::selector::{SelectionConfig, StepRecord};

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Load a CSV dataset. The last column is the class label; `has_header`
/// skips the first line. Returns the dataset and the label names in mapped
/// order.
pub fn load_csv(path: &Path, has_header: bool) -> Result<(Dataset, Vec<String>)> {
    let text = std::fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    let mut label_names: Vec<String> = Vec::new();
    let mut expected_fields = None;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        if has_header && idx == 0 {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let n = *expected_fields.get_or_insert(fields.len());
        if fields.len() != n {
            return Err(parse_err(
                path,
                line_no,
                format!("expected {n} fields, got {}", fields.len()),
            ));
        }
        if n < 2 {
            return Err(parse_err(path, line_no, "need at least one feature and a label"));
        }
        let mut row = Vec::with_capacity(n - 1);
        for (col, field) in fields[..n - 1].iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                parse_err(path, line_no, format!("non-numeric value {field:?} in column {}", col + 1))
            })?;
            row.push(v);
        }
        let name = fields[n - 1];
        let label = match label_names.iter().position(|l| l == name) {
            Some(i) => i,
            None => {
                label_names.push(name.to_string());
                label_names.len() - 1
            }
        };
        rows.push(row);
        labels.push(label);
    }
    if rows.is_empty() {
        return Err(parse_err(path, 1, "empty file"));
    }
    let dataset = Dataset::new(rows, labels)?;
    Ok((dataset, label_names))
}

/// Write a dataset back to CSV with the label names in the last column.
pub fn write_csv(dataset: &Dataset, label_names: &[String], path: &Path) -> Result<()> {
    let mut out = String::new();
    for r in 0..dataset.n_samples() {
        for v in dataset.row(r) {
            let _ = write!(out, "{v},");
        }
        let label = dataset.label(r);
        let name = label_names
            .get(label)
            .cloned()
            .unwrap_or_else(|| label.to_string());
        let _ = writeln!(out, "{name}");
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Load a sparse LIBSVM text file (`label idx:val ...`, 1-based strictly
/// increasing indexes) into a dense dataset. Width is the maximum index.
pub fn load_libsvm(path: &Path) -> Result<(Dataset, Vec<String>)> {
    let text = std::fs::read_to_string(path)?;
    let mut parsed: Vec<(usize, Vec<(usize, f64)>)> = Vec::new();
    let mut label_names: Vec<String> = Vec::new();
    let mut width = 0usize;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let name = parts.next().unwrap();
        let label = match label_names.iter().position(|l| l == name) {
            Some(i) => i,
            None => {
                label_names.push(name.to_string());
                label_names.len() - 1
            }
        };
        let mut entries = Vec::new();
        let mut last_index = 0usize;
        for part in parts {
            let (i_str, v_str) = part.split_once(':').ok_or_else(|| {
                parse_err(path, line_no, format!("expected idx:val, got {part:?}"))
            })?;
            let index: usize = i_str.parse().map_err(|_| {
                parse_err(path, line_no, format!("bad feature index {i_str:?}"))
            })?;
            if index == 0 {
                return Err(parse_err(path, line_no, "indexes are 1-based"));
            }
            if index <= last_index {
                return Err(parse_err(
                    path,
                    line_no,
                    format!("indexes must be strictly increasing, got {index} after {last_index}"),
                ));
            }
            let value: f64 = v_str.parse().map_err(|_| {
                parse_err(path, line_no, format!("non-numeric value {v_str:?}"))
            })?;
            last_index = index;
            width = width.max(index);
            entries.push((index - 1, value));
        }
        parsed.push((label, entries));
    }
    if parsed.is_empty() {
        return Err(parse_err(path, 1, "empty file"));
    }
    if width == 0 {
        return Err(parse_err(path, 1, "no features present"));
    }
    let mut rows = Vec::with_capacity(parsed.len());
    let mut labels = Vec::with_capacity(parsed.len());
    for (label, entries) in parsed {
        let mut row = vec![0.0; width];
        for (i, v) in entries {
            row[i] = v;
        }
        rows.push(row);
        labels.push(label);
    }
    Ok((Dataset::new(rows, labels)?, label_names))
}

/// Load a CSV of feature rows only (no label column), for scoring inputs.
pub fn load_feature_matrix(path: &Path, has_header: bool) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut expected = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() || (has_header && idx == 0) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let n = *expected.get_or_insert(fields.len());
        if fields.len() != n {
            return Err(parse_err(path, line_no, format!("expected {n} fields, got {}", fields.len())));
        }
        let row = fields
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| parse_err(path, line_no, format!("non-numeric value {f:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(path, 1, "empty file"));
    }
    Ok(rows)
}

/// Selected-ids file: one integer per line.
pub fn write_ids(ids: &[usize], path: &Path) -> Result<()> {
    let mut out = String::new();
    for id in ids {
        let _ = writeln!(out, "{id}");
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_ids(path: &Path) -> Result<Vec<usize>> {
    let text = std::fs::read_to_string(path)?;
    let mut ids = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let id = line
            .parse::<usize>()
            .map_err(|_| parse_err(path, idx + 1, format!("bad feature id {line:?}")))?;
        ids.push(id);
    }
    if ids.is_empty() {
        return Err(parse_err(path, 1, "no feature ids"));
    }
    Ok(ids)
}

/// Full record of a `select` run; any run is reproducible from its report
/// alone since the effective config (defaults resolved) is echoed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub data_path: String,
    pub config: SelectionConfig,
    pub label_names: Vec<String>,
    pub selected_ids: Vec<usize>,
    pub steps: Vec<StepRecord>,
    pub evaluations: usize,
    /// Cross-validated UAR of the full feature set on the held-out folds.
    pub uar_full: f64,
    /// Same, restricted to the selected subset.
    pub uar_selected: f64,
    pub step_wall_ms: Vec<f64>,
    pub total_wall_ms: f64,
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Load a selection config file (JSON, keys mirroring [`SelectionConfig`];
/// missing keys take their defaults).
pub fn load_config(path: &Path) -> Result<SelectionConfig> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use tempfile::tempdir;

    fn write_tmp(dir: &tempfile::TempDir, name: &str, content: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        std::fs::write(&p, content).unwrap();
        p
    }

    #[test]
    fn csv_basic_format() {
        let dir = tempdir().unwrap();
        let p = write_tmp(&dir, "d.csv", "1,2,A\n3,4,B\n5,6,A\n");
        let (ds, names) = load_csv(&p, false).unwrap();
        assert_eq!(ds.n_features(), 2);
        assert_eq!(ds.labels(), &[0, 1, 0]);
        assert_eq!(names, vec!["A", "B"]);
    }

    #[test]
    fn csv_ragged_row_names_the_line() {
        let dir = tempdir().unwrap();
        let p = write_tmp(&dir, "d.csv", "1,2,A\n3,B\n5,6,A\n");
        let err = load_csv(&p, false).unwrap_err().to_string();
        assert!(err.contains(":2:"), "{err}");
        assert!(err.contains("expected 3 fields"), "{err}");
    }

    #[test]
    fn csv_non_numeric_cell_is_an_error() {
        let dir = tempdir().unwrap();
        let p = write_tmp(&dir, "d.csv", "1,x,A\n3,4,B\n");
        let err = load_csv(&p, false).unwrap_err().to_string();
        assert!(err.contains(":1:"), "{err}");
    }

    #[test]
    fn csv_empty_file_is_an_error() {
        let dir = tempdir().unwrap();
        let p = write_tmp(&dir, "d.csv", "");
        assert!(load_csv(&p, false).is_err());
    }

    #[test]
    fn csv_single_class_is_an_error() {
        let dir = tempdir().unwrap();
        let p = write_tmp(&dir, "d.csv", "1,2,A\n3,4,A\n");
        assert!(load_csv(&p, false).is_err());
    }

    #[test]
    fn csv_header_is_skipped() {
        let dir = tempdir().unwrap();
        let p = write_tmp(&dir, "d.csv", "f1,f2,label\n1,2,A\n3,4,B\n");
        let (ds, _) = load_csv(&p, true).unwrap();
        assert_eq!(ds.n_samples(), 2);
    }

    #[test]
    fn libsvm_basic_format() {
        let dir = tempdir().unwrap();
        let p = write_tmp(&dir, "d.svm", "+1 1:0.5 3:1.0\n-1 2:2.0\n");
        let (ds, names) = load_libsvm(&p).unwrap();
        assert_eq!(ds.n_features(), 3);
        assert_eq!(ds.row(0), &[0.5, 0.0, 1.0]);
        assert_eq!(ds.row(1), &[0.0, 2.0, 0.0]);
        assert_eq!(ds.labels(), &[0, 1]);
        assert_eq!(names, vec!["+1", "-1"]);
    }

    #[test]
    fn libsvm_zero_index_rejected() {
        let dir = tempdir().unwrap();
        let p = write_tmp(&dir, "d.svm", "+1 0:0.5\n-1 1:1.0\n");
        let err = load_libsvm(&p).unwrap_err().to_string();
        assert!(err.contains("1-based"), "{err}");
    }

    #[test]
    fn libsvm_non_increasing_indexes_rejected() {
        let dir = tempdir().unwrap();
        let p = write_tmp(&dir, "d.svm", "+1 2:0.5 2:1.0\n-1 1:1.0\n");
        let err = load_libsvm(&p).unwrap_err().to_string();
        assert!(err.contains("strictly increasing"), "{err}");
    }

    #[test]
    fn ids_round_trip() {
        let dir = tempdir().unwrap();
        let p = dir.path().join("ids.txt");
        write_ids(&[5, 0, 12], &p).unwrap();
        assert_eq!(read_ids(&p).unwrap(), vec![5, 0, 12]);
    }

    #[test]
    fn report_round_trip_preserves_selected_ids() {
        let report = RunReport {
            version: "0.1.0".into(),
            data_path: "d.csv".into(),
            config: SelectionConfig::default(),
            label_names: vec!["A".into(), "B".into()],
            selected_ids: vec![4, 1, 9],
            steps: vec![],
            evaluations: 10,
            uar_full: 0.9,
            uar_selected: 0.92,
            step_wall_ms: vec![1.5],
            total_wall_ms: 1.5,
        };
        let restored = RunReport::from_json(&report.to_json().unwrap()).unwrap();
        assert_eq!(restored.selected_ids, report.selected_ids);
        assert_eq!(restored, report);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn csv_round_trip_is_exact(
            values in proptest::collection::vec(
                proptest::collection::vec(-1e6f64..1e6, 3),
                2..10,
            ),
        ) {
            let n = values.len();
            let labels: Vec<usize> = (0..n).map(|i| i % 2).collect();
            let ds = Dataset::new(values.clone(), labels.clone()).unwrap();
            let names = vec!["neg".to_string(), "pos".to_string()];
            let dir = tempdir().unwrap();
            let p = dir.path().join("rt.csv");
            write_csv(&ds, &names, &p).unwrap();
            let (back, back_names) = load_csv(&p, false).unwrap();
            prop_assert_eq!(back_names, names);
            prop_assert_eq!(back.labels(), ds.labels());
            for r in 0..n {
                prop_assert_eq!(back.row(r), ds.row(r));
            }
        }
    }
}
