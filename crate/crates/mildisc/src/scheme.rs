//! Discretization schemes: ordered regions over a real line plus the rules
//! for turning raw values into region labels, and JSON persistence so a
//! scheme fitted on one dataset can be applied to another.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Mil,
    ModifiedMil,
    EqualWidth,
    EqualFrequency,
    Mdlp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Mil,
        Algorithm::ModifiedMil,
        Algorithm::EqualWidth,
        Algorithm::EqualFrequency,
        Algorithm::Mdlp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mil => "mil",
            Algorithm::ModifiedMil => "modified-mil",
            Algorithm::EqualWidth => "equal-width",
            Algorithm::EqualFrequency => "equal-frequency",
            Algorithm::Mdlp => "mdlp",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mil" => Ok(Algorithm::Mil),
            "modified-mil" => Ok(Algorithm::ModifiedMil),
            "equal-width" => Ok(Algorithm::EqualWidth),
            "equal-frequency" => Ok(Algorithm::EqualFrequency),
            "mdlp" => Ok(Algorithm::Mdlp),
            other => Err(Error::Param(format!(
                "unknown algorithm `{other}` (expected mil, modified-mil, equal-width, equal-frequency, or mdlp)"
            ))),
        }
    }
}

/// Fitting parameters recorded inside a scheme so it can be reproduced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SchemeParams {
    /// Information-loss merging family: subintervals per class `c` and
    /// merge divisor `k`.
    MilFamily { c: u32, k: u32, seed: u64 },
    /// Fixed-arity binning: requested number of bins.
    Binned { bins: u32, seed: u64 },
    /// Entropy-based fitting with no arity knob.
    Seeded { seed: u64 },
}

/// One half-open region `[lower, upper)`. The final region of a scheme has
/// `upper == f64::INFINITY` so values above the training maximum still map
/// somewhere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub lower: f64,
    #[serde(with = "upper_bound")]
    pub upper: f64,
    /// Ordinal label, 1-based and consecutive left to right.
    pub label: u32,
    /// Training values observed inside the region when it was fitted.
    pub total_cts: u64,
    /// Number of initial grid subintervals merged into the region; 1 for
    /// discretizers that have no merge phase.
    pub span: u32,
    /// Representative value, kept by discretizers that define one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub midpoint: Option<f64>,
}

impl Region {
    pub fn contains(&self, v: f64) -> bool {
        v >= self.lower && v < self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeScheme {
    pub attribute: String,
    pub algorithm: Algorithm,
    pub params: SchemeParams,
    pub d_min: f64,
    pub d_max: f64,
    pub regions: Vec<Region>,
}

/// Maps a value to its region label.
///
/// Missing values and values below the fitted minimum take the first
/// region's label; values at or above the last region's lower bound take
/// the last label (its upper bound is infinite).
pub fn apply_scheme(scheme: &AttributeScheme, value: Option<f64>) -> u32 {
    let regions = &scheme.regions;
    debug_assert!(!regions.is_empty());
    let v = match value {
        None => return regions[0].label,
        Some(v) => v,
    };
    if v < regions[0].lower {
        return regions[0].label;
    }
    // Regions are contiguous, so the upper bound check is implicit in the
    // next region's lower bound.
    let idx = regions.partition_point(|r| r.lower <= v) - 1;
    regions[idx].label
}

/// Checks the structural invariants of a fitted scheme.
pub fn validate_scheme(scheme: &AttributeScheme) -> Result<()> {
    let broken = |msg: String| {
        Err(Error::Internal(format!(
            "scheme for `{}`: {msg}",
            scheme.attribute
        )))
    };
    if scheme.regions.is_empty() {
        return broken("no regions".into());
    }
    if !(scheme.d_min.is_finite() && scheme.d_max.is_finite() && scheme.d_min <= scheme.d_max) {
        return broken(format!(
            "bad fitted range [{}, {}]",
            scheme.d_min, scheme.d_max
        ));
    }
    let first = &scheme.regions[0];
    if first.lower != scheme.d_min {
        return broken(format!(
            "first region starts at {}, not d_min {}",
            first.lower, scheme.d_min
        ));
    }
    let last = scheme.regions.last().unwrap();
    if last.upper != f64::INFINITY {
        return broken("last region must be open above".into());
    }
    for (i, r) in scheme.regions.iter().enumerate() {
        if r.label != (i + 1) as u32 {
            return broken(format!("region {i} has label {}, want {}", r.label, i + 1));
        }
        if !(r.lower < r.upper) {
            return broken(format!("region {i} is empty: [{}, {})", r.lower, r.upper));
        }
        if !r.lower.is_finite() {
            return broken(format!("region {i} has non-finite lower bound"));
        }
        if let Some(mid) = r.midpoint {
            if !mid.is_finite() {
                return broken(format!("region {i} has non-finite midpoint"));
            }
        }
    }
    for pair in scheme.regions.windows(2) {
        if pair[0].upper != pair[1].lower {
            return broken(format!(
                "gap between regions: {} != {}",
                pair[0].upper, pair[1].lower
            ));
        }
    }
    Ok(())
}

/// On-disk container for one or more attribute schemes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeFile {
    pub schemes: Vec<AttributeScheme>,
}

pub fn write_schemes(path: impl AsRef<Path>, schemes: &[AttributeScheme]) -> Result<()> {
    let path = path.as_ref();
    let file = SchemeFile {
        schemes: schemes.to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&file).map_err(|e| Error::Json {
        path: path.into(),
        msg: e.to_string(),
    })?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })
}

pub fn read_schemes(path: impl AsRef<Path>) -> Result<Vec<AttributeScheme>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })?;
    let file: SchemeFile = serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.into(),
        msg: e.to_string(),
    })?;
    for scheme in &file.schemes {
        validate_scheme(scheme).map_err(|e| Error::Json {
            path: path.into(),
            msg: e.to_string(),
        })?;
    }
    Ok(file.schemes)
}

/// Serializes the upper bound as the string "inf" when infinite, since JSON
/// has no literal for infinity.
mod upper_bound {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        struct UpperVisitor;

        impl<'de> Visitor<'de> for UpperVisitor {
            type Value = f64;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
                Ok(v)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
                Ok(v as f64)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
                Ok(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
                if v == "inf" {
                    Ok(f64::INFINITY)
                } else {
                    Err(E::custom(format!("unexpected upper bound `{v}`")))
                }
            }
        }

        d.deserialize_any(UpperVisitor)
    }
}
