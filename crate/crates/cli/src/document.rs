//! JSON matrix documents.
//!
//! ```json
//! {"n": 1, "kind": "complex_cov", "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}
//! ```
//!
//! Entries are `[re, im]` pairs in row-major nested arrays. `channel_xy` carries
//! `x` and `y` instead of `matrix`. `n` counts modes except for `block_map`,
//! where the matrix is `2n×2n`.

use std::fmt;
use std::path::Path;

use gaussdisk::dynamics::GaussianChannel;
use gaussdisk::siegel::{BlockMap2x2, DiskPoint};
use gaussdisk::states::{ComplexCovariance, DoubleDiskPoint, RealCovariance};
use gaussdisk::{ComplexMatrix, ToleranceConfig, C64};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub type Entries = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    RealCov,
    ComplexCov,
    DiskPoint,
    DoubleDisk,
    ChannelXy,
    BlockMap,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string tag"))
    }
}

/// Wire form, before any invariant is checked.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub n: usize,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Entries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Entries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Entries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    RealCov(RealCovariance),
    ComplexCov(ComplexCovariance),
    DiskPoint(DiskPoint),
    DoubleDisk(DoubleDiskPoint),
    Channel(GaussianChannel),
    BlockMap { map: BlockMap2x2, nu: Option<Vec<f64>> },
}

pub fn entries(m: &ComplexMatrix) -> Entries {
    m.rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()
}

fn matrix_from(e: &Entries, field: &str, size: usize) -> Result<ComplexMatrix, CliError> {
    if e.len() != size || e.iter().any(|r| r.len() != size) {
        let shape: Vec<usize> = e.iter().map(Vec::len).collect();
        return Err(CliError::Schema(format!(
            "field `{field}` must be {size}x{size}, got {} rows with lengths {shape:?}",
            e.len()
        )));
    }
    let rows: Vec<Vec<C64>> = e.iter().map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
    ComplexMatrix::from_rows(&rows).map_err(|err| CliError::Schema(format!("field `{field}`: {err}")))
}

fn required<'a>(field: &'a Option<Entries>, name: &str, kind: Kind) -> Result<&'a Entries, CliError> {
    field.as_ref().ok_or_else(|| CliError::Schema(format!("kind `{kind}` requires field `{name}`")))
}

fn forbid(field: bool, name: &str, kind: Kind) -> Result<(), CliError> {
    if field {
        return Err(CliError::Schema(format!("kind `{kind}` does not take field `{name}`")));
    }
    Ok(())
}

impl RawDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(format!("parse error: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite entries serialize")
    }

    pub fn into_typed(self, tol: &ToleranceConfig) -> Result<Document, CliError> {
        let n = self.n;
        if n == 0 {
            return Err(CliError::Schema("`n` must be at least 1".into()));
        }
        let kind = self.kind;
        if kind == Kind::ChannelXy {
            forbid(self.matrix.is_some(), "matrix", kind)?;
            forbid(self.nu.is_some(), "nu", kind)?;
            let x = matrix_from(required(&self.x, "x", kind)?, "x", 2 * n)?;
            let y = matrix_from(required(&self.y, "y", kind)?, "y", 2 * n)?;
            return Ok(Document::Channel(GaussianChannel::new(x, y, tol)?));
        }
        forbid(self.x.is_some(), "x", kind)?;
        forbid(self.y.is_some(), "y", kind)?;
        if kind != Kind::BlockMap {
            forbid(self.nu.is_some(), "nu", kind)?;
        }
        let size = if kind == Kind::DiskPoint { n } else { 2 * n };
        let m = matrix_from(required(&self.matrix, "matrix", kind)?, "matrix", size)?;
        Ok(match kind {
            Kind::RealCov => Document::RealCov(RealCovariance::new(m, tol)?),
            Kind::ComplexCov => Document::ComplexCov(ComplexCovariance::new(m, tol)?),
            Kind::DiskPoint => Document::DiskPoint(DiskPoint::new(m, tol)?),
            Kind::DoubleDisk => Document::DoubleDisk(DoubleDiskPoint::new(m, tol)?),
            Kind::BlockMap => {
                if let Some(nu) = &self.nu {
                    if nu.iter().any(|v| !v.is_finite()) {
                        return Err(CliError::Schema("`nu` entries must be finite".into()));
                    }
                }
                Document::BlockMap { map: BlockMap2x2::new(m)?, nu: self.nu }
            }
            Kind::ChannelXy => unreachable!("handled above"),
        })
    }
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::RealCov(_) => Kind::RealCov,
            Document::ComplexCov(_) => Kind::ComplexCov,
            Document::DiskPoint(_) => Kind::DiskPoint,
            Document::DoubleDisk(_) => Kind::DoubleDisk,
            Document::Channel(_) => Kind::ChannelXy,
            Document::BlockMap { .. } => Kind::BlockMap,
        }
    }

    pub fn to_raw(&self) -> RawDocument {
        let single = |n: usize, kind: Kind, m: &ComplexMatrix| RawDocument {
            n,
            kind,
            matrix: Some(entries(m)),
            x: None,
            y: None,
            nu: None,
        };
        match self {
            Document::RealCov(s) => single(s.n(), Kind::RealCov, s.matrix()),
            Document::ComplexCov(s) => single(s.n(), Kind::ComplexCov, s.matrix()),
            Document::DiskPoint(k) => single(k.n(), Kind::DiskPoint, k.k()),
            Document::DoubleDisk(a) => single(a.n(), Kind::DoubleDisk, a.matrix()),
            Document::Channel(ch) => RawDocument {
                n: ch.n(),
                kind: Kind::ChannelXy,
                matrix: None,
                x: Some(entries(ch.x())),
                y: Some(entries(ch.y())),
                nu: None,
            },
            Document::BlockMap { map, nu } => RawDocument { nu: nu.clone(), ..single(map.n(), Kind::BlockMap, map.matrix()) },
        }
    }

    pub fn to_json(&self) -> String {
        self.to_raw().to_json()
    }
}

pub fn parse_str(text: &str, tol: &ToleranceConfig) -> Result<Document, CliError> {
    RawDocument::from_json(text)?.into_typed(tol)
}

pub fn parse_document(path: &Path, tol: &ToleranceConfig) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_str(&text, tol).map_err(|e| e.context(&path.display().to_string()))
}
