use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{PcsBuilder, RelPcs};
use crate::error::{malformed, Result};

/// Serialized form: cubes by dimension, and every stored relation as
/// `{"cube", "word", "targets"}` with words over `+-0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcsJson {
    pub dim_bound: usize,
    pub cubes: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub faces: Vec<FaceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceJson {
    pub cube: String,
    pub word: String,
    pub targets: Vec<String>,
}

impl PcsJson {
    /// Builds the object as written, without closing or checking it.
    pub fn to_raw(&self) -> Result<RelPcs> {
        let mut dims: Vec<(usize, &Vec<String>)> = self
            .cubes
            .iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|d| (d, v))
                    .map_err(|_| malformed("precubical set", format!("dimension key {k:?}")))
            })
            .collect::<Result<_>>()?;
        dims.sort_by_key(|(d, _)| *d);
        let mut b = PcsBuilder::new(self.dim_bound);
        for (d, names) in dims {
            for n in names {
                b.cube(n.clone(), d)?;
            }
        }
        for f in &self.faces {
            for t in &f.targets {
                b.face(&f.cube, &f.word, t)?;
            }
        }
        Ok(b.build_raw())
    }
}

impl RelPcs {
    /// Parses JSON without closing the relations; see [`RelPcs::validate`].
    pub fn from_json_str(s: &str) -> Result<RelPcs> {
        let j: PcsJson = serde_json::from_str(s)?;
        j.to_raw()
    }

    pub fn to_json(&self) -> PcsJson {
        let mut cubes: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for c in 0..self.len() {
            cubes
                .entry(self.dim(c).to_string())
                .or_default()
                .push(self.name(c).to_string());
        }
        let faces = (0..self.len())
            .flat_map(|a| {
                self.faces_of(a).iter().map(move |(w, bs)| FaceJson {
                    cube: self.name(a).to_string(),
                    word: w.to_string(),
                    targets: bs.iter().map(|b| self.name(*b).to_string()).collect(),
                })
            })
            .collect();
        PcsJson {
            dim_bound: self.dim_bound(),
            cubes,
            faces,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data")
    }
}
