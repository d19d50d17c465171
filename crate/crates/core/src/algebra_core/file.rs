//! JSON quiver documents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::quiver::{Arrow, Quiver};

/// A vertex id as written in a file: a string or a number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexId {
    Num(u64),
    Name(String),
}

impl VertexId {
    pub fn as_string(&self) -> String {
        match self {
            VertexId::Num(n) => n.to_string(),
            VertexId::Name(s) => s.clone(),
        }
    }

    fn from_name(s: &str) -> VertexId {
        match s.parse::<u64>() {
            Ok(n) if n.to_string() == s => VertexId::Num(n),
            _ => VertexId::Name(s.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub id: String,
    pub tail: VertexId,
    pub head: VertexId,
}

/// `{vertices, arrows, order?, double?, invert?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub double: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invert: Option<Vec<String>>,
}

impl QuiverFile {
    pub fn from_json(text: &str) -> Result<QuiverFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quiver documents serialize")
    }

    pub fn to_quiver(&self) -> Result<Quiver> {
        let names: Vec<String> = self.vertices.iter().map(VertexId::as_string).collect();
        let arrows: Vec<(String, String, String)> =
            self.arrows.iter().map(|a| (a.id.clone(), a.tail.as_string(), a.head.as_string())).collect();
        let refs: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        let mut q = Quiver::new(&names, &refs)?;
        if self.double {
            q = q.double()?;
        }
        if let Some(order) = &self.order {
            q = q.with_order(order)?;
        }
        if let Some(inv) = &self.invert {
            q = q.with_inverted(inv)?;
        }
        Ok(q)
    }

    /// The document describing `q`; doubled quivers list their base arrows with `double: true`.
    pub fn from_quiver(q: &Quiver) -> QuiverFile {
        let vid = |i: usize| VertexId::from_name(&q.vertices()[i]);
        let spec = |a: &Arrow| ArrowSpec { id: a.id.clone(), tail: vid(a.tail), head: vid(a.head) };
        let listed: Vec<usize> = if q.is_doubled() { q.base_arrows() } else { (0..q.n_arrows()).collect() };
        let default_order: Vec<usize> = if q.is_doubled() {
            listed.iter().flat_map(|&i| [i, q.star(i).expect("doubled")]).collect()
        } else {
            listed.clone()
        };
        let order = (q.order() != default_order.as_slice()).then(|| q.order().iter().map(|&i| q.arrow(i).id.clone()).collect());
        let inv: Vec<String> = (0..q.n_arrows()).filter(|&i| q.is_inverted(i)).map(|i| q.arrow(i).id.clone()).collect();
        QuiverFile {
            vertices: (0..q.n_vertices()).map(vid).collect(),
            arrows: listed.iter().map(|&i| spec(q.arrow(i))).collect(),
            order,
            double: q.is_doubled(),
            invert: (!inv.is_empty()).then_some(inv),
        }
    }
}

pub fn read_quiver(text: &str) -> Result<Quiver> {
    QuiverFile::from_json(text)?.to_quiver()
}

pub fn write_quiver(q: &Quiver) -> String {
    QuiverFile::from_quiver(q).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: &str = r#"{"vertices": [1, 2], "arrows": [{"id": "a", "tail": 1, "head": 2}], "double": true, "invert": ["a"]}"#;

    #[test]
    fn reads_doubled_and_inverted() {
        let q = read_quiver(P2).unwrap();
        assert!(q.is_doubled());
        assert_eq!(q.n_arrows(), 2);
        assert!(q.is_inverted(0));
    }

    #[test]
    fn round_trip_is_exact() {
        let f = QuiverFile::from_json(P2).unwrap();
        let text = f.to_json();
        assert_eq!(QuiverFile::from_json(&text).unwrap(), f);
        let q = f.to_quiver().unwrap();
        assert_eq!(read_quiver(&write_quiver(&q)).unwrap(), q);
        let reordered = q.with_order(&["a*", "a"]).unwrap();
        assert_eq!(read_quiver(&write_quiver(&reordered)).unwrap(), reordered);
    }

    #[test]
    fn bad_documents() {
        assert!(matches!(QuiverFile::from_json("{\"vertices\": [1], \"arrows\": [}"), Err(Error::Parse { .. })));
        let dangling = r#"{"vertices": ["x"], "arrows": [{"id": "a", "tail": "x", "head": "y"}]}"#;
        assert!(matches!(read_quiver(dangling), Err(Error::UnknownVertex(_))));
    }
}
