//! Reader for a practical subset of the ARFF format.
//!
//! Supported: `@relation`, `@attribute <name> numeric|real|integer`,
//! `@attribute <name> {v1,v2,...}`, `%` comments, and dense `@data` rows
//! with `?` for missing values. Quoted names and values use `'` or `"`.
//! The last declared attribute is the class. String/date attributes and
//! sparse data rows are rejected with a clear error.

use std::io::Read;
use std::path::Path;

use crate::dataset::{AttrKind, AttributeSpec, Cell, Dataset};
use crate::error::{Error, Result};

pub fn read_arff(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let mut text = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|source| Error::Io {
            path: path.into(),
            source,
        })?;
    parse_arff(&text).map_err(|e| match e {
        Error::Parse { line, msg, .. } => Error::Parse {
            path: path.into(),
            line,
            msg,
        },
        other => other,
    })
}

enum DeclaredType {
    Numeric,
    Nominal(Vec<String>),
}

pub fn parse_arff(text: &str) -> Result<Dataset> {
    let mut declared: Vec<(String, DeclaredType)> = Vec::new();
    let mut in_data = false;
    let mut data_lines: Vec<(usize, &str)> = Vec::new();

    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if in_data {
            data_lines.push((line_no, line));
            continue;
        }
        let lower = line.to_ascii_lowercase();
        if lower.starts_with("@relation") {
            continue;
        }
        if lower.starts_with("@attribute") {
            let rest = line["@attribute".len()..].trim();
            declared.push(parse_attribute_decl(rest, line_no)?);
            continue;
        }
        if lower == "@data" {
            in_data = true;
            continue;
        }
        return Err(parse_err(
            Some(line_no),
            format!("unrecognized directive `{line}`"),
        ));
    }

    if declared.is_empty() {
        return Err(parse_err(None, "no @attribute declarations".into()));
    }
    if !in_data {
        return Err(parse_err(None, "missing @data section".into()));
    }
    if data_lines.is_empty() {
        return Err(Error::EmptyDataset);
    }

    let width = declared.len();
    let class_index = width - 1;
    let mut attributes: Vec<AttributeSpec> = declared
        .iter()
        .enumerate()
        .map(|(i, (name, ty))| {
            let kind = if i == class_index {
                AttrKind::Class
            } else {
                match ty {
                    DeclaredType::Numeric => AttrKind::Continuous,
                    DeclaredType::Nominal(_) => AttrKind::Nominal,
                }
            };
            let values = match ty {
                DeclaredType::Numeric => Vec::new(),
                DeclaredType::Nominal(vs) => vs.clone(),
            };
            AttributeSpec {
                name: name.clone(),
                kind,
                values,
            }
        })
        .collect();
    let class_declared_numeric = matches!(declared[class_index].1, DeclaredType::Numeric);

    let mut rows = Vec::new();
    let mut dropped_rows = 0usize;
    for (line_no, line) in data_lines {
        if line.starts_with('{') {
            return Err(parse_err(
                Some(line_no),
                "sparse data rows are not supported".into(),
            ));
        }
        let fields = split_fields(line, line_no)?;
        if fields.len() != width {
            return Err(parse_err(
                Some(line_no),
                format!("expected {width} fields, found {}", fields.len()),
            ));
        }
        if fields[class_index] == "?" {
            dropped_rows += 1;
            continue;
        }
        let mut row = Vec::with_capacity(width);
        for (col, field) in fields.iter().enumerate() {
            let attr = &mut attributes[col];
            let cell = if field == "?" {
                Cell::Missing
            } else {
                match attr.kind {
                    AttrKind::Continuous => {
                        let x: f64 = field.parse().map_err(|_| {
                            parse_err(Some(line_no), format!("`{field}` is not a number"))
                        })?;
                        if !x.is_finite() {
                            return Err(parse_err(
                                Some(line_no),
                                format!("`{field}` is not a finite number"),
                            ));
                        }
                        Cell::Number(x)
                    }
                    AttrKind::Nominal => match attr.values.iter().position(|v| v == field) {
                        Some(p) => Cell::Code((p + 1) as u32),
                        None => {
                            return Err(parse_err(
                                Some(line_no),
                                format!("value `{field}` not declared for attribute `{}`", attr.name),
                            ))
                        }
                    },
                    AttrKind::Class => {
                        if class_declared_numeric {
                            // Numeric class declarations are accepted by
                            // treating each distinct literal as a label.
                            match attr.values.iter().position(|v| v == field) {
                                Some(p) => Cell::Code((p + 1) as u32),
                                None => {
                                    attr.values.push(field.clone());
                                    Cell::Code(attr.values.len() as u32)
                                }
                            }
                        } else {
                            match attr.values.iter().position(|v| v == field) {
                                Some(p) => Cell::Code((p + 1) as u32),
                                None => {
                                    return Err(parse_err(
                                        Some(line_no),
                                        format!(
                                            "class value `{field}` not declared for `{}`",
                                            attr.name
                                        ),
                                    ))
                                }
                            }
                        }
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

fn parse_attribute_decl(rest: &str, line_no: usize) -> Result<(String, DeclaredType)> {
    let rest = rest.trim();
    let (name, after) = take_token(rest)
        .ok_or_else(|| parse_err(Some(line_no), "missing attribute name".into()))?;
    let ty = after.trim();
    if ty.is_empty() {
        return Err(parse_err(Some(line_no), "missing attribute type".into()));
    }
    if ty.starts_with('{') {
        let inner = ty
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| parse_err(Some(line_no), "unterminated nominal value list".into()))?;
        let values = split_fields(inner, line_no)?;
        if values.is_empty() {
            return Err(parse_err(Some(line_no), "empty nominal value list".into()));
        }
        let mut seen = Vec::new();
        for v in &values {
            if seen.contains(v) {
                return Err(parse_err(
                    Some(line_no),
                    format!("duplicate nominal value `{v}`"),
                ));
            }
            seen.push(v.clone());
        }
        return Ok((name, DeclaredType::Nominal(values)));
    }
    match ty.to_ascii_lowercase().as_str() {
        "numeric" | "real" | "integer" => Ok((name, DeclaredType::Numeric)),
        other => Err(parse_err(
            Some(line_no),
            format!("unsupported attribute type `{other}`"),
        )),
    }
}

/// Takes one possibly-quoted token off the front, returning (token, rest).
fn take_token(text: &str) -> Option<(String, &str)> {
    let text = text.trim_start();
    let mut chars = text.char_indices();
    let (_, first) = chars.next()?;
    if first == '\'' || first == '"' {
        for (i, ch) in chars {
            if ch == first {
                return Some((text[1..i].to_string(), &text[i + 1..]));
            }
        }
        None
    } else {
        let end = text
            .char_indices()
            .find(|(_, ch)| ch.is_whitespace())
            .map(|(i, _)| i)
            .unwrap_or(text.len());
        Some((text[..end].to_string(), &text[end..]))
    }
}

/// Splits a comma-separated list, honoring `'` / `"` quoting and trimming
/// unquoted whitespace.
fn split_fields(line: &str, line_no: usize) -> Result<Vec<String>> {
    let mut fields = Vec::new();
    let mut current = String::new();
    let mut quote: Option<char> = None;
    let mut quoted_field = false;
    for ch in line.chars() {
        match quote {
            Some(q) => {
                if ch == q {
                    quote = None;
                } else {
                    current.push(ch);
                }
            }
            None => match ch {
                '\'' | '"' => {
                    quote = Some(ch);
                    quoted_field = true;
                }
                ',' => {
                    fields.push(finish_field(&mut current, &mut quoted_field));
                }
                _ => current.push(ch),
            },
        }
    }
    if quote.is_some() {
        return Err(parse_err(Some(line_no), "unterminated quote".into()));
    }
    fields.push(finish_field(&mut current, &mut quoted_field));
    Ok(fields)
}

fn finish_field(current: &mut String, quoted: &mut bool) -> String {
    let field = if *quoted {
        current.clone()
    } else {
        current.trim().to_string()
    };
    current.clear();
    *quoted = false;
    field
}

fn parse_err(line: Option<usize>, msg: String) -> Error {
    Error::Parse {
        path: "<arff>".into(),
        line,
        msg,
    }
}
