//! JSON profile documents:
//! `{ "n": 4, "I": [3,2,1,2], "t": ["10/97","13/97","31/97"], "N": [1,1,1] }`
//! with an optional `"S": [[plus, minus], …]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{IndexProfile, SplittingPair};
use crate::scalar::{format_ratio, parse_ratio, Int};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDocument {
    pub n: u64,
    #[serde(rename = "I")]
    pub arc_values: Vec<u64>,
    #[serde(rename = "t")]
    pub phases: Vec<String>,
    #[serde(rename = "N")]
    pub nullities: Vec<u64>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Vec<[u64; 2]>>,
}

impl ProfileDocument {
    pub fn from_profile<T: Int>(p: &IndexProfile<T>) -> Self {
        ProfileDocument {
            n: p.n(),
            arc_values: p.arc_values().to_vec(),
            phases: p.phases().iter().map(format_ratio).collect(),
            nullities: p.nullities().to_vec(),
            splitting: p
                .splitting()
                .map(|s| s.iter().map(|x| [x.plus, x.minus]).collect()),
        }
    }

    pub fn to_profile<T: Int>(&self) -> Result<IndexProfile<T>> {
        let mut phases = Vec::with_capacity(self.phases.len());
        for (i, s) in self.phases.iter().enumerate() {
            let t = parse_ratio(s).ok_or_else(|| {
                Error::Document(format!("malformed rational at t[{i}]: {s:?}"))
            })?;
            phases.push(t);
        }
        let p = IndexProfile::new(
            self.n,
            self.arc_values.clone(),
            phases,
            self.nullities.clone(),
        )?;
        match &self.splitting {
            None => Ok(p),
            Some(pairs) => p.with_splitting(
                pairs
                    .iter()
                    .map(|&[plus, minus]| SplittingPair { plus, minus })
                    .collect(),
            ),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile documents always serialize")
    }
}

/// Parses and validates a profile document. Errors name the first problem:
/// malformed JSON, a malformed rational (with its position), or the first
/// violated structural invariant.
pub fn parse_profile<T: Int>(text: &str) -> Result<IndexProfile<T>> {
    let doc: ProfileDocument = serde_json::from_str(text)
        .map_err(|e| Error::Document(format!("malformed profile document: {e}")))?;
    doc.to_profile()
}

pub fn profile_to_json<T: Int>(p: &IndexProfile<T>) -> String {
    ProfileDocument::from_profile(p).to_json()
}
