//! Point I/O.
//!
//! A point is written either as JSON `{"w": [[re,im],[re,im],[re,im],[re,im]]}`
//! or as a flat CSV line `re1,im1,re2,im2,re3,im3,re4,im4`. The parser also
//! accepts a parenthesised tuple of four complex literals such as
//! `(1,(1+1i)/2,1,0.5-0.5i)`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadric::{QuadricError, QuadricPoint};
use crate::Complex64;

#[derive(Debug, Error)]
pub enum PointParseError {
    #[error("field `w`: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv point needs 8 numbers, got {0}")]
    CsvArity(usize),
    #[error("tuple point needs 4 entries, got {0}")]
    TupleArity(usize),
    #[error("cannot parse number `{0}`")]
    Number(String),
    #[error(transparent)]
    Quadric(#[from] QuadricError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointJson {
    pub w: [[f64; 2]; 4],
}

impl From<QuadricPoint> for PointJson {
    fn from(p: QuadricPoint) -> Self {
        PointJson {
            w: p.coords().map(|z| [z.re, z.im]),
        }
    }
}

impl TryFrom<PointJson> for QuadricPoint {
    type Error = QuadricError;
    fn try_from(p: PointJson) -> Result<Self, Self::Error> {
        QuadricPoint::new(p.w.map(|[re, im]| Complex64::new(re, im)))
    }
}

/// Serde adapter writing a complex number as `[re, im]`.
pub mod complex_pair {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Complex64;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Serde adapter for `Option<Complex64>` as `[re, im]` or `null`.
pub mod opt_complex_pair {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Complex64;

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        z.map(|z| [z.re, z.im]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Ok(Option::<[f64; 2]>::deserialize(d)?.map(|[re, im]| Complex64::new(re, im)))
    }
}

/// Parses a point in any of the accepted forms and checks quadric membership.
pub fn parse_point(s: &str) -> Result<QuadricPoint, PointParseError> {
    parse_point_with_tol(s, crate::quadric::QUADRIC_TOL)
}

pub fn parse_point_with_tol(s: &str, tol: f64) -> Result<QuadricPoint, PointParseError> {
    let s = s.trim();
    let w = if s.starts_with('{') {
        let p: PointJson = serde_json::from_str(s)?;
        p.w.map(|[re, im]| Complex64::new(re, im))
    } else if s.starts_with('(') && s.ends_with(')') {
        let entries = split_top_level(&s[1..s.len() - 1]);
        if entries.len() != 4 {
            return Err(PointParseError::TupleArity(entries.len()));
        }
        let mut w = [Complex64::new(0.0, 0.0); 4];
        for (slot, e) in w.iter_mut().zip(entries) {
            *slot = parse_complex(e)?;
        }
        w
    } else {
        let nums: Vec<&str> = s.split(',').map(str::trim).collect();
        if nums.len() != 8 {
            return Err(PointParseError::CsvArity(nums.len()));
        }
        let mut v = [0.0; 8];
        for (slot, n) in v.iter_mut().zip(nums) {
            *slot = f64::from_str(n).map_err(|_| PointParseError::Number(n.to_string()))?;
        }
        std::array::from_fn(|k| Complex64::new(v[2 * k], v[2 * k + 1]))
    };
    Ok(QuadricPoint::with_tol(w, tol)?)
}

/// Flat CSV form of a point.
pub fn point_to_csv(p: &QuadricPoint) -> String {
    p.coords()
        .iter()
        .flat_map(|z| [z.re, z.im])
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// A complex literal, optionally of the form `(<literal>)/<real>`.
fn parse_complex(e: &str) -> Result<Complex64, PointParseError> {
    let bad = || PointParseError::Number(e.to_string());
    let e = e.trim();
    if let Some(rest) = e.strip_prefix('(') {
        let close = rest.rfind(')').ok_or_else(bad)?;
        let inner = parse_complex(&rest[..close])?;
        let tail = rest[close + 1..].trim();
        if tail.is_empty() {
            return Ok(inner);
        }
        let den = tail.strip_prefix('/').ok_or_else(bad)?;
        let den = f64::from_str(den.trim()).map_err(|_| bad())?;
        return Ok(inner / den);
    }
    let compact: String = e.chars().filter(|c| !c.is_whitespace()).collect();
    let normalized = match compact.as_str() {
        "i" | "+i" => "0+1i".to_string(),
        "-i" => "0-1i".to_string(),
        other => other.replace("+i", "+1i").replace("-i", "-1i"),
    };
    Complex64::from_str(&normalized).map_err(|_| bad())
}
