//! JSON interchange for complexes and pairs.
//!
//! A complex is `{"vertices": [..], "facets": [[..], ..]}`; `vertices` may be
//! omitted, in which case it is the union of the facets. A pair is
//! `{"delta": <complex>, "gamma": <complex>}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, RelativeComplex, SimplicialComplex, Vertex};
use crate::corpus::corpus_entry;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vertex>>,
    pub facets: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub delta: ComplexJson,
    pub gamma: ComplexJson,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(k: &SimplicialComplex) -> ComplexJson {
        ComplexJson {
            vertices: Some(k.vertices().iter().copied().collect()),
            facets: k.facets().iter().map(|f| f.vertices().to_vec()).collect(),
        }
    }
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;

    fn try_from(c: ComplexJson) -> Result<SimplicialComplex> {
        let facets: Vec<Face> = c.facets.into_iter().map(Face::new).collect();
        match c.vertices {
            Some(vs) => SimplicialComplex::new(vs, facets),
            None => Ok(SimplicialComplex::from_facets(facets)),
        }
    }
}

pub fn complex_to_json(k: &SimplicialComplex) -> String {
    serde_json::to_string(&ComplexJson::from(k)).expect("complexes serialize")
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    serde_json::from_str::<ComplexJson>(text)?.try_into()
}

pub fn pair_to_json(pair: &RelativeComplex) -> String {
    let p = PairJson {
        delta: pair.delta().into(),
        gamma: pair.gamma().into(),
    };
    serde_json::to_string(&p).expect("pairs serialize")
}

pub fn pair_from_json(text: &str) -> Result<RelativeComplex> {
    let p: PairJson = serde_json::from_str(text)?;
    RelativeComplex::new(p.delta.try_into()?, p.gamma.try_into()?)
}

/// Resolves `corpus:<name>` to a corpus entry and anything else to a JSON file.
pub fn load_complex(source: &str) -> Result<SimplicialComplex> {
    if let Some(name) = source.strip_prefix("corpus:") {
        return corpus_entry(name)
            .map(|e| e.complex)
            .ok_or_else(|| Error::Parse(format!("unknown corpus complex `{name}`")));
    }
    complex_from_json(&std::fs::read_to_string(Path::new(source))?)
}

pub fn load_pair(path: &Path) -> Result<RelativeComplex> {
    pair_from_json(&std::fs::read_to_string(path)?)
}
