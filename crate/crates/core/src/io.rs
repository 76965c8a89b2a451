//! CSV ingestion, date alignment and log-returns.

use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Fewest samples a date-joined pair may keep.
pub const MIN_JOINED_LEN: usize = 64;

/// One numeric column read from a CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub label: String,
    pub values: Vec<f64>,
    /// Present when a date column was requested; aligned with `values`.
    pub dates: Option<Vec<String>>,
    /// Rows skipped because a cell was empty or a missing-value marker.
    pub dropped: usize,
}

fn is_missing(cell: &str) -> bool {
    cell.is_empty()
        || ["na", "nan", "null", "n/a", "-"]
            .iter()
            .any(|m| cell.eq_ignore_ascii_case(m))
}

fn header_index(path: &Path, headers: &csv::StringRecord, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| Error::MissingColumn {
            path: path.to_path_buf(),
            column: name.to_string(),
        })
}

/// Reads the named numeric columns of a headed CSV file.
///
/// A row is dropped when any requested value cell (or the date cell) is
/// missing; the drop count is shared by all returned columns. Row numbers
/// in errors count the header as row 1.
pub fn read_columns(
    path: &Path,
    columns: &[&str],
    date_column: Option<&str>,
) -> Result<Vec<Column>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err)?;
    let headers = reader.headers().map_err(csv_err)?.clone();
    let idx: Vec<usize> = columns
        .iter()
        .map(|c| header_index(path, &headers, c))
        .collect::<Result<_>>()?;
    let date_idx = date_column
        .map(|d| header_index(path, &headers, d))
        .transpose()?;

    let mut values: Vec<Vec<f64>> = vec![Vec::new(); columns.len()];
    let mut dates = date_idx.map(|_| Vec::new());
    let mut seen = HashSet::new();
    let mut dropped = 0;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let row = i + 2;
        let cells: Vec<&str> = idx.iter().map(|&k| record.get(k).unwrap_or("")).collect();
        let date = date_idx.map(|k| record.get(k).unwrap_or(""));
        if cells.iter().any(|c| is_missing(c)) || date.is_some_and(is_missing) {
            dropped += 1;
            continue;
        }
        let parsed: Vec<f64> = cells
            .iter()
            .zip(columns)
            .map(|(cell, name)| {
                cell.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Parse {
                        path: path.to_path_buf(),
                        row,
                        column: name.to_string(),
                        cell: cell.to_string(),
                    })
            })
            .collect::<Result<_>>()?;
        if let (Some(d), Some(list)) = (date, dates.as_mut()) {
            if !seen.insert(d.to_string()) {
                return Err(Error::DuplicateDate {
                    path: path.to_path_buf(),
                    row,
                    date: d.to_string(),
                });
            }
            list.push(d.to_string());
        }
        for (col, v) in values.iter_mut().zip(parsed) {
            col.push(v);
        }
    }
    Ok(columns
        .iter()
        .zip(values)
        .map(|(name, values)| Column {
            label: name.to_string(),
            values,
            dates: dates.clone(),
            dropped,
        })
        .collect())
}

/// Reads one column as a series.
pub fn load_series(path: &Path, column: &str, date_column: Option<&str>) -> Result<TimeSeries> {
    let col = read_columns(path, &[column], date_column)?.remove(0);
    TimeSeries::new(col.label, col.values)
}

/// Two columns aligned on their dates, in the order of the first.
#[derive(Debug, Clone, PartialEq)]
pub struct JoinedPair {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub dates: Vec<String>,
    /// Samples of each input without a partner.
    pub unmatched: (usize, usize),
}

/// Inner join of two dated columns.
pub fn join_on_dates(a: &Column, b: &Column) -> Result<JoinedPair> {
    let (Some(da), Some(db)) = (&a.dates, &b.dates) else {
        return Err(Error::Config(
            "date join needs a date column on both inputs".into(),
        ));
    };
    let lookup: HashMap<&str, f64> = db
        .iter()
        .map(String::as_str)
        .zip(b.values.iter().copied())
        .collect();
    let mut pair = JoinedPair {
        x: Vec::new(),
        y: Vec::new(),
        dates: Vec::new(),
        unmatched: (0, 0),
    };
    for (d, &v) in da.iter().zip(&a.values) {
        if let Some(&w) = lookup.get(d.as_str()) {
            pair.x.push(v);
            pair.y.push(w);
            pair.dates.push(d.clone());
        }
    }
    pair.unmatched = (a.values.len() - pair.x.len(), b.values.len() - pair.x.len());
    Ok(pair)
}

/// `r_t = ln(p_t / p_{t-1})`.
pub fn log_returns(prices: &[f64]) -> Result<Vec<f64>> {
    if prices.len() < 2 {
        return Err(Error::TooShort {
            len: prices.len(),
            min: 2,
        });
    }
    if let Some((index, &value)) = prices
        .iter()
        .enumerate()
        .find(|(_, p)| p.is_nan() || **p <= 0.0)
    {
        return Err(Error::NonPositivePrice { index, value });
    }
    Ok(prices.windows(2).map(|w| (w[1] / w[0]).ln()).collect())
}

/// Where the series of a run come from.
#[derive(Debug, Clone, PartialEq)]
pub struct InputSpec {
    pub input: PathBuf,
    pub input2: Option<PathBuf>,
    /// One or two column names. Two columns with one input read a pair
    /// from the same file; with two inputs a single name is used for both.
    pub columns: Vec<String>,
    pub date_column: Option<String>,
    pub log_returns: bool,
}

/// What loading did to the raw rows.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LoadReport {
    pub files: Vec<String>,
    pub columns: Vec<String>,
    pub rows_dropped: Vec<usize>,
    pub date_joined: bool,
    pub unmatched_dates: Option<(usize, usize)>,
    pub log_returns: bool,
    pub lengths: Vec<usize>,
}

/// Loads one or two series according to `spec`.
pub fn load_inputs(spec: &InputSpec) -> Result<(Vec<TimeSeries>, LoadReport)> {
    let date = spec.date_column.as_deref();
    let names: Vec<&str> = spec.columns.iter().map(String::as_str).collect();
    if names.is_empty() || names.len() > 2 {
        return Err(Error::Config("expected one or two column names".into()));
    }
    let mut files = vec![spec.input.display().to_string()];
    let mut cols = match &spec.input2 {
        None => read_columns(&spec.input, &names, date)?,
        Some(second) => {
            files.push(second.display().to_string());
            let (n1, n2) = (names[0], *names.last().expect("non-empty"));
            let mut a = read_columns(&spec.input, &[n1], date)?;
            a.extend(read_columns(second, &[n2], date)?);
            for (col, path) in a.iter_mut().zip([&spec.input, second]) {
                let stem = path
                    .file_stem()
                    .map(|s| s.to_string_lossy())
                    .unwrap_or_default();
                col.label = format!("{stem}:{}", col.label);
            }
            if a[0].label == a[1].label {
                a[0].label.push_str("#1");
                a[1].label.push_str("#2");
            }
            a
        }
    };
    let mut report = LoadReport {
        files,
        columns: cols.iter().map(|c| c.label.clone()).collect(),
        rows_dropped: cols.iter().map(|c| c.dropped).collect(),
        date_joined: false,
        unmatched_dates: None,
        log_returns: spec.log_returns,
        lengths: Vec::new(),
    };

    if cols.len() == 2 && spec.input2.is_some() && date.is_some() {
        let pair = join_on_dates(&cols[0], &cols[1])?;
        if pair.x.len() < MIN_JOINED_LEN {
            return Err(Error::TooShort {
                len: pair.x.len(),
                min: MIN_JOINED_LEN,
            });
        }
        report.date_joined = true;
        report.unmatched_dates = Some(pair.unmatched);
        cols[0].values = pair.x;
        cols[1].values = pair.y;
    }
    if cols.len() == 2 && cols[0].values.len() != cols[1].values.len() {
        return Err(Error::LengthMismatch {
            left: cols[0].values.len(),
            right: cols[1].values.len(),
        });
    }

    let series = cols
        .into_iter()
        .map(|c| {
            let values = if spec.log_returns {
                log_returns(&c.values)?
            } else {
                c.values
            };
            TimeSeries::new(c.label, values)
        })
        .collect::<Result<Vec<_>>>()?;
    report.lengths = series.iter().map(TimeSeries::len).collect();
    Ok((series, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn csv_file(body: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(body.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_single_column() {
        let f = csv_file("v\n1\n2\n4\n");
        let c = read_columns(f.path(), &["v"], None).unwrap().remove(0);
        assert_eq!(c.values, vec![1.0, 2.0, 4.0]);
        assert_eq!(c.dropped, 0);
    }

    #[test]
    fn missing_column_named() {
        let f = csv_file("a,b\n1,2\n");
        let err = read_columns(f.path(), &["price"], None).unwrap_err();
        assert!(matches!(&err, Error::MissingColumn { column, .. } if column == "price"));
        assert!(err.to_string().contains("'price'"));
    }

    #[test]
    fn parse_error_names_row_and_column() {
        let f = csv_file("v\n1\nabc\n");
        let err = read_columns(f.path(), &["v"], None).unwrap_err();
        assert!(
            matches!(err, Error::Parse { row: 3, ref column, ref cell, .. } if column == "v" && cell == "abc")
        );
    }

    #[test]
    fn missing_values_dropped_and_counted() {
        let f = csv_file("d,v\n1,1\n2,\n3,NA\n4,NaN\n5,null\n6,7\n");
        let c = read_columns(f.path(), &["v"], Some("d")).unwrap().remove(0);
        assert_eq!(c.values, vec![1.0, 7.0]);
        assert_eq!(c.dates.unwrap(), vec!["1", "6"]);
        assert_eq!(c.dropped, 4);
    }

    #[test]
    fn duplicate_dates_rejected() {
        let f = csv_file("d,v\nx,1\nx,2\n");
        assert!(matches!(
            read_columns(f.path(), &["v"], Some("d")),
            Err(Error::DuplicateDate { row: 3, .. })
        ));
    }

    #[test]
    fn inner_join_on_dates() {
        let a = csv_file("date,v\nd1,1\nd2,2\nd3,3\n");
        let b = csv_file("date,v\nd2,20\nd3,30\nd4,40\n");
        let ca = read_columns(a.path(), &["v"], Some("date"))
            .unwrap()
            .remove(0);
        let cb = read_columns(b.path(), &["v"], Some("date"))
            .unwrap()
            .remove(0);
        let j = join_on_dates(&ca, &cb).unwrap();
        assert_eq!(j.x, vec![2.0, 3.0]);
        assert_eq!(j.y, vec![20.0, 30.0]);
        assert_eq!(j.unmatched, (1, 1));
    }

    #[test]
    fn short_join_rejected() {
        let a = csv_file("date,v\nd1,1\nd2,2\nd3,3\n");
        let b = csv_file("date,v\nd2,20\nd3,30\nd4,40\n");
        let spec = InputSpec {
            input: a.path().into(),
            input2: Some(b.path().into()),
            columns: vec!["v".into()],
            date_column: Some("date".into()),
            log_returns: false,
        };
        assert!(matches!(
            load_inputs(&spec),
            Err(Error::TooShort { len: 2, min: 64 })
        ));
    }

    #[test]
    fn log_return_examples() {
        let e = std::f64::consts::E;
        let r = log_returns(&[1.0, e, e * e]).unwrap();
        assert!((r[0] - 1.0).abs() < 1e-15 && (r[1] - 1.0).abs() < 1e-15);
        assert_eq!(log_returns(&[5.0; 4]).unwrap(), vec![0.0; 3]);
        assert!(matches!(log_returns(&[1.0]), Err(Error::TooShort { .. })));
        assert!(matches!(
            log_returns(&[1.0, 2.0, 0.0]),
            Err(Error::NonPositivePrice { index: 2, .. })
        ));
    }
}
