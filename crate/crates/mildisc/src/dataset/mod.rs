//! In-memory tabular dataset model.
//!
//! A dataset is a rectangular table of cells with one designated class
//! attribute. Continuous attributes hold floating-point numbers, nominal
//! attributes hold 1-based codes into a declared value list, and any cell
//! except the class may be missing. Rows whose class value is missing are
//! dropped at parse time and only counted.

pub mod arff;
pub mod csv;
pub mod manifest;
pub mod split;

pub use manifest::{load_entry, load_manifest, LoadedDataset, Manifest, ManifestEntry};
pub use split::{stratified_split, SplitPair};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttrKind {
    Continuous,
    Nominal,
    Class,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: AttrKind,
    /// Declared value strings for nominal and class attributes; the code of
    /// `values[i]` is `i + 1`. Empty for continuous attributes.
    pub values: Vec<String>,
}

impl AttributeSpec {
    pub fn continuous(name: impl Into<String>) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttrKind::Continuous,
            values: Vec::new(),
        }
    }

    pub fn nominal(name: impl Into<String>, values: Vec<String>) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttrKind::Nominal,
            values,
        }
    }

    pub fn class(name: impl Into<String>, values: Vec<String>) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttrKind::Class,
            values,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Number(f64),
    /// 1-based code into the attribute's declared values.
    Code(u32),
    Missing,
}

impl Cell {
    pub fn is_missing(&self) -> bool {
        matches!(self, Cell::Missing)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub attributes: Vec<AttributeSpec>,
    pub rows: Vec<Vec<Cell>>,
    pub class_index: usize,
    /// Rows removed at parse time because their class value was missing.
    pub dropped_rows: usize,
}

/// Summary of the non-missing values of one continuous column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnStats {
    pub min: f64,
    pub max: f64,
    pub present: usize,
    pub missing: usize,
}

/// Computes min/max and presence counts, or `None` if every value is missing.
pub fn column_stats(values: &[Option<f64>]) -> Option<ColumnStats> {
    let mut stats: Option<ColumnStats> = None;
    let mut missing = 0usize;
    for v in values {
        match v {
            Some(x) => match stats.as_mut() {
                Some(s) => {
                    s.min = s.min.min(*x);
                    s.max = s.max.max(*x);
                    s.present += 1;
                }
                None => {
                    stats = Some(ColumnStats {
                        min: *x,
                        max: *x,
                        present: 1,
                        missing: 0,
                    })
                }
            },
            None => missing += 1,
        }
    }
    stats.map(|mut s| {
        s.missing = missing;
        s
    })
}

impl Dataset {
    /// Number of examples, written `m` throughout the discretizers.
    pub fn example_count(&self) -> usize {
        self.rows.len()
    }

    /// Number of declared class values, written `s`. This is a property of
    /// the classification problem, so a subset split off from this dataset
    /// keeps the same count even if some class is absent from its rows.
    pub fn class_count(&self) -> usize {
        self.attributes[self.class_index].values.len()
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    pub fn continuous_attribute_indices(&self) -> Vec<usize> {
        self.attributes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.kind == AttrKind::Continuous)
            .map(|(i, _)| i)
            .collect()
    }

    /// Extracts one continuous column as `Option<f64>` per row.
    pub fn column(&self, index: usize) -> Result<Vec<Option<f64>>> {
        let attr = self
            .attributes
            .get(index)
            .ok_or_else(|| Error::Param(format!("attribute index {index} out of range")))?;
        if attr.kind != AttrKind::Continuous {
            return Err(Error::Param(format!(
                "attribute `{}` is not continuous",
                attr.name
            )));
        }
        self.rows
            .iter()
            .enumerate()
            .map(|(r, row)| match row[index] {
                Cell::Number(x) => Ok(Some(x)),
                Cell::Missing => Ok(None),
                Cell::Code(_) => Err(Error::Internal(format!(
                    "row {r}: nominal code in continuous attribute `{}`",
                    attr.name
                ))),
            })
            .collect()
    }

    /// Class code of every row. Codes are 1-based and always present.
    pub fn class_codes(&self) -> Vec<u32> {
        self.rows
            .iter()
            .map(|row| match row[self.class_index] {
                Cell::Code(c) => c,
                _ => unreachable!("class cells are validated codes"),
            })
            .collect()
    }

    /// Row indices grouped by class code (index 0 holds code 1).
    pub fn rows_by_class(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.class_count()];
        for (r, row) in self.rows.iter().enumerate() {
            if let Cell::Code(c) = row[self.class_index] {
                groups[(c - 1) as usize].push(r);
            }
        }
        groups
    }

    pub fn stats(&self, index: usize) -> Result<ColumnStats> {
        let col = self.column(index)?;
        column_stats(&col).ok_or_else(|| {
            Error::Unusable(format!(
                "attribute `{}` has no non-missing values",
                self.attributes[index].name
            ))
        })
    }

    /// Checks the structural invariants every well-formed dataset satisfies.
    pub fn validate(&self) -> Result<()> {
        let class_kinds = self
            .attributes
            .iter()
            .filter(|a| a.kind == AttrKind::Class)
            .count();
        if class_kinds != 1 {
            return Err(Error::Internal(format!(
                "expected exactly one class attribute, found {class_kinds}"
            )));
        }
        if self
            .attributes
            .get(self.class_index)
            .map(|a| a.kind != AttrKind::Class)
            .unwrap_or(true)
        {
            return Err(Error::Internal(
                "class_index does not point at the class attribute".into(),
            ));
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != self.attributes.len() {
                return Err(Error::Internal(format!(
                    "row {r} has {} cells, expected {}",
                    row.len(),
                    self.attributes.len()
                )));
            }
            for (i, (cell, attr)) in row.iter().zip(&self.attributes).enumerate() {
                match (cell, attr.kind) {
                    (Cell::Number(x), AttrKind::Continuous) => {
                        if !x.is_finite() {
                            return Err(Error::Internal(format!(
                                "row {r}, attribute `{}`: non-finite value",
                                attr.name
                            )));
                        }
                    }
                    (Cell::Missing, AttrKind::Continuous) | (Cell::Missing, AttrKind::Nominal) => {}
                    (Cell::Code(c), AttrKind::Nominal) | (Cell::Code(c), AttrKind::Class) => {
                        if *c == 0 || *c as usize > attr.values.len() {
                            return Err(Error::Internal(format!(
                                "row {r}, attribute `{}`: code {c} out of range 1..={}",
                                attr.name,
                                attr.values.len()
                            )));
                        }
                    }
                    _ => {
                        return Err(Error::Internal(format!(
                            "row {r}, attribute `{}` (index {i}): cell does not match kind",
                            attr.name
                        )))
                    }
                }
            }
        }
        Ok(())
    }
}
