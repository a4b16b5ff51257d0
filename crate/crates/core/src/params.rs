//! Parameter files.
//!
//! ```json
//! {"alpha": {"rat": [169, 478]}, "C0": [-0.417, -0.909], "C1": [1.0, 0.0],
//!  "gamma": {"rat": [1, 4]}, "z0": [0.0, 0.0]}
//! ```
//!
//! Angles are a number of radians, `{"rat":[p,q]}` for `2πp/q`, or
//! `{"surd":[p,q,d,r]}` for `2π(p+q√d)/r`. `z0` is a point of the
//! discontinuity line and defaults to the origin.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::angle::AngleSpec;
use crate::error::{Error, Result};
use crate::map::{PiecewiseRotation, RawParams};
use crate::Complex;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub alpha: AngleSpec,
    #[serde(rename = "C0")]
    pub c0: [f64; 2],
    #[serde(rename = "C1")]
    pub c1: [f64; 2],
    pub gamma: AngleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z0: Option<[f64; 2]>,
}

impl ParamsFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Params(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn raw(&self) -> RawParams {
        let c = |v: [f64; 2]| Complex::new(v[0], v[1]);
        RawParams {
            alpha: self.alpha,
            c0: c(self.c0),
            c1: c(self.c1),
            gamma: self.gamma.radians(),
            z0: self.z0.map(c).unwrap_or_default(),
        }
    }

    /// Normalized map described by the file.
    pub fn to_map(&self) -> Result<PiecewiseRotation> {
        PiecewiseRotation::normalize(self.raw())
    }

    pub fn from_map(t: &PiecewiseRotation) -> Self {
        ParamsFile {
            alpha: t.angle(),
            c0: [t.c0().re, t.c0().im],
            c1: [t.c1().re, t.c1().im],
            gamma: AngleSpec::Decimal(t.gamma()),
            z0: None,
        }
    }
}
