use serde::{Deserialize, Serialize};

use super::IcsiInstance;
use crate::error::{Error, Result};
use crate::galois::{prime_power, FieldSpec};

/// JSON instance file. Message indices are 1-based; the field block is
/// optional for purely combinatorial queries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    pub m: usize,
    pub n: usize,
    pub f: Vec<usize>,
    #[serde(rename = "X")]
    pub x: Vec<Vec<usize>>,
}

impl InstanceFile {
    pub fn parse(src: &str) -> Result<Self> {
        Ok(serde_json::from_str(src)?)
    }

    pub fn from_instance(inst: &IcsiInstance, field: Option<&FieldSpec>) -> Self {
        InstanceFile {
            q: field.map(|f| f.order()),
            p: field.map(|f| f.p()),
            e: field.map(|f| f.e()),
            m: inst.m(),
            n: inst.n(),
            f: inst.demands().iter().map(|&v| v + 1).collect(),
            x: inst.side_sets().iter().map(|s| s.iter().map(|&v| v + 1).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }

    pub fn instance(&self) -> Result<IcsiInstance> {
        if self.f.len() != self.m || self.x.len() != self.m {
            return Err(Error::InvalidInstance {
                receiver: 0,
                reason: format!("m = {} but f has {} and X has {} entries", self.m, self.f.len(), self.x.len()),
            });
        }
        IcsiInstance::from_one_based(self.n, &self.f, &self.x)
    }

    /// The field named by the file, if any. `q`, `p` and `e` must agree when
    /// more than one is given.
    pub fn field(&self) -> Result<Option<FieldSpec>> {
        let (p, e) = match (self.q, self.p, self.e) {
            (None, None, None) => return Ok(None),
            (Some(q), p, e) => {
                let (pp, ee) = prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
                if p.is_some_and(|p| p != pp) || e.is_some_and(|e| e != ee) {
                    return Err(Error::Field(format!("q = {q} disagrees with p/e")));
                }
                (pp, ee)
            }
            (None, Some(p), e) => (p, e.unwrap_or(1)),
            (None, None, Some(_)) => return Err(Error::Field("e given without p or q".into())),
        };
        FieldSpec::new(p, e, None).map(Some)
    }

    /// Stable content hash of the instance (SHA-256 of its canonical JSON).
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}
