//! CSV reading and writing.
//!
//! Files must have a header row naming the attributes. `?` and the empty
//! string mark missing values. By default the last column is the class and
//! every other column's kind is inferred: continuous when all non-missing
//! cells parse as finite numbers, nominal otherwise. Nominal and class codes
//! are assigned by first appearance, top to bottom.

use std::io::{Read, Write};
use std::path::Path;

use crate::dataset::{AttrKind, AttributeSpec, Cell, Dataset};
use crate::error::{Error, Result};

/// Optional overrides for how a CSV file is interpreted.
#[derive(Debug, Clone, Default)]
pub struct CsvOptions {
    /// Class column index; defaults to the last column.
    pub class_index: Option<usize>,
    /// Per-column kind overrides for non-class columns. Shorter than the
    /// column count is fine; `None` entries fall back to inference.
    pub kinds: Vec<Option<AttrKind>>,
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    read_csv_with(path, &CsvOptions::default())
}

pub fn read_csv_with(path: impl AsRef<Path>, options: &CsvOptions) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })?;
    parse_csv(file, options).map_err(|e| at_path(e, path))
}

/// Parses CSV from any reader. Errors carry `<csv>` as the path; use
/// `read_csv_with` to get real file names in messages.
pub fn parse_csv(reader: impl Read, options: &CsvOptions) -> Result<Dataset> {
    let mut rdr = ::csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(::csv::Trim::All)
        .flexible(true)
        .from_reader(reader);

    let header = rdr
        .headers()
        .map_err(|e| parse_err(None, e.to_string()))?
        .clone();
    let names: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    if names.is_empty() {
        return Err(parse_err(None, "empty header row".into()));
    }
    let width = names.len();

    let mut raw: Vec<Vec<String>> = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let line = i + 2; // header is line 1
        let record = record.map_err(|e| parse_err(Some(line), e.to_string()))?;
        if record.len() != width {
            return Err(parse_err(
                Some(line),
                format!("expected {width} fields, found {}", record.len()),
            ));
        }
        raw.push(record.iter().map(|s| s.to_string()).collect());
    }
    if raw.is_empty() {
        return Err(Error::EmptyDataset);
    }

    let class_index = options.class_index.unwrap_or(width - 1);
    if class_index >= width {
        return Err(Error::Param(format!(
            "class column {class_index} out of range for {width} columns"
        )));
    }

    let mut kinds = vec![AttrKind::Nominal; width];
    for (i, kind) in kinds.iter_mut().enumerate() {
        if i == class_index {
            *kind = AttrKind::Class;
        } else if let Some(Some(k)) = options.kinds.get(i) {
            if *k == AttrKind::Class {
                return Err(Error::Param(
                    "kind override cannot introduce a second class column".into(),
                ));
            }
            *kind = *k;
        } else {
            let numeric = raw.iter().all(|row| {
                let cell = row[i].as_str();
                is_missing(cell) || parses_finite(cell)
            });
            *kind = if numeric {
                AttrKind::Continuous
            } else {
                AttrKind::Nominal
            };
        }
    }

    let mut attributes: Vec<AttributeSpec> = names
        .iter()
        .zip(&kinds)
        .map(|(name, kind)| AttributeSpec {
            name: name.clone(),
            kind: *kind,
            values: Vec::new(),
        })
        .collect();

    let mut rows = Vec::with_capacity(raw.len());
    let mut dropped_rows = 0usize;
    for (i, record) in raw.iter().enumerate() {
        let line = i + 2;
        if is_missing(&record[class_index]) {
            dropped_rows += 1;
            continue;
        }
        let mut row = Vec::with_capacity(width);
        for (col, text) in record.iter().enumerate() {
            let cell = if is_missing(text) {
                Cell::Missing
            } else {
                match kinds[col] {
                    AttrKind::Continuous => {
                        let x: f64 = text.parse().map_err(|_| {
                            parse_err(Some(line), format!("`{text}` is not a number"))
                        })?;
                        if !x.is_finite() {
                            return Err(parse_err(
                                Some(line),
                                format!("`{text}` is not a finite number"),
                            ));
                        }
                        Cell::Number(x)
                    }
                    AttrKind::Nominal | AttrKind::Class => {
                        Cell::Code(intern(&mut attributes[col].values, text))
                    }
                }
            };
            row.push(cell);
        }
        rows.push(row);
    }

    if rows.is_empty() {
        return Err(Error::Unusable(
            "every row has a missing class value".into(),
        ));
    }

    let ds = Dataset {
        attributes,
        rows,
        class_index,
        dropped_rows,
    };
    ds.validate()?;
    Ok(ds)
}

pub fn write_csv(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })?;
    emit_csv(ds, file).map_err(|e| at_path(e, path))
}

pub fn emit_csv(ds: &Dataset, writer: impl Write) -> Result<()> {
    let mut w = ::csv::Writer::from_writer(writer);
    let io_err = |e: ::csv::Error| parse_err(None, format!("write failed: {e}"));
    w.write_record(ds.attributes.iter().map(|a| a.name.as_str()))
        .map_err(io_err)?;
    for row in &ds.rows {
        let fields: Vec<String> = row
            .iter()
            .zip(&ds.attributes)
            .map(|(cell, attr)| match cell {
                Cell::Number(x) => format!("{x}"),
                Cell::Code(c) => attr.values[(*c - 1) as usize].clone(),
                Cell::Missing => "?".to_string(),
            })
            .collect();
        w.write_record(&fields).map_err(io_err)?;
    }
    w.flush().map_err(|e| parse_err(None, e.to_string()))?;
    Ok(())
}

fn intern(values: &mut Vec<String>, text: &str) -> u32 {
    match values.iter().position(|v| v == text) {
        Some(i) => (i + 1) as u32,
        None => {
            values.push(text.to_string());
            values.len() as u32
        }
    }
}

fn is_missing(cell: &str) -> bool {
    cell.is_empty() || cell == "?"
}

fn parses_finite(cell: &str) -> bool {
    cell.parse::<f64>().map(|x| x.is_finite()).unwrap_or(false)
}

fn parse_err(line: Option<usize>, msg: String) -> Error {
    Error::Parse {
        path: "<csv>".into(),
        line,
        msg,
    }
}

fn at_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { line, msg, .. } => Error::Parse {
            path: path.into(),
            line,
            msg,
        },
        other => other,
    }
}
