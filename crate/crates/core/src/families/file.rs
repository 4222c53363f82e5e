//! JSON family files.
//!
//! ```json
//! {
//!   "format": "hjekr-family",
//!   "version": 1,
//!   "construction": "canonical",
//!   "ring": "gr:p=2,r=1",
//!   "n": 4,
//!   "kappa": "2^2",
//!   "tau": "2^1",
//!   "semantics": "at-least",
//!   "avoid": { "level": 1, "rows": [["0:0", "0:0", "1:0", "0:0"]] },
//!   "members": [[["1:0", "0:0", "0:0", "0:0"], ["0:0", "1:0", "0:0", "0:0"]]]
//! }
//! ```
//!
//! Each member is a list of generator rows; entries are `a0:a1`, the
//! Γ-indices of `γ_{a0} + γ_{a1} θ` (as in the submodule text format).
//! Rows need not be canonical. `avoid` is optional.

use serde::{Deserialize, Serialize};

use super::{Family, FamilyProblem, Semantics};
use crate::error::{Error, Result};
use crate::module::{Submodule, Vector};
use crate::ring::{Ring, RingSpec};
use crate::shape::Shape;

pub const FORMAT: &str = "hjekr-family";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidRecord {
    pub level: usize,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub format: String,
    pub version: u32,
    #[serde(default)]
    pub construction: String,
    pub ring: String,
    pub n: usize,
    pub kappa: Shape,
    pub tau: Shape,
    #[serde(default)]
    pub semantics: Semantics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub avoid: Option<AvoidRecord>,
    pub members: Vec<Vec<Vec<String>>>,
}

fn encode(sub: &Submodule) -> Vec<Vec<String>> {
    let ring = sub.ring();
    sub.rows()
        .iter()
        .map(|row| row.iter().map(|&x| format!("{}:{}", ring.digit0(x), ring.digit1(x))).collect())
        .collect()
}

fn decode(ring: &Ring, n: usize, rows: &[Vec<String>]) -> Result<Submodule> {
    let q = ring.q();
    let vectors: Vec<Vector> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| {
                    let (a, b) = cell.split_once(':').ok_or_else(|| Error::Parse(format!("entry `{cell}`")))?;
                    let a: u32 = a.trim().parse().map_err(|_| Error::Parse(format!("entry `{cell}`")))?;
                    let b: u32 = b.trim().parse().map_err(|_| Error::Parse(format!("entry `{cell}`")))?;
                    if a >= q || b >= q || (ring.length() == 1 && b != 0) {
                        return Err(Error::Parse(format!("entry `{cell}` out of range")));
                    }
                    Ok(ring.compose(a, b))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Submodule::span(ring, n, &vectors)
}

impl FamilyFile {
    pub fn from_family(family: &Family) -> Self {
        let p = &family.problem;
        FamilyFile {
            format: FORMAT.into(),
            version: VERSION,
            construction: family.construction.clone(),
            ring: p.ring.spec().to_string(),
            n: p.n,
            kappa: p.kappa.clone(),
            tau: p.tau.clone(),
            semantics: p.semantics,
            avoid: p.avoid.as_ref().map(|a| AvoidRecord { level: a.level, rows: encode(&a.w) }),
            members: family.members.iter().map(encode).collect(),
        }
    }

    pub fn to_family(&self) -> Result<Family> {
        if self.format != FORMAT || self.version != VERSION {
            return Err(Error::Parse(format!("expected {FORMAT} version {VERSION}")));
        }
        let spec: RingSpec = self.ring.parse()?;
        let ring = Ring::new(&spec)?;
        let mut problem =
            FamilyProblem::new(&ring, self.n, self.kappa.clone(), self.tau.clone())?.with_semantics(self.semantics);
        if let Some(a) = &self.avoid {
            problem = problem.with_avoid(decode(&ring, self.n, &a.rows)?, a.level)?;
        }
        let members = self.members.iter().map(|rows| decode(&ring, self.n, rows)).collect::<Result<_>>()?;
        Ok(Family::new(problem, members, &self.construction))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("family file: {e}")))
    }
}
