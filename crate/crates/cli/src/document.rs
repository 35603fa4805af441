//! The JSON graph document.
//!
//! ```json
//! {
//!   "index_set": [1, 2],
//!   "cartan": [[2, -2], [-1, 2]],
//!   "vertices": [{"id": 0, "a": [0,0,0,0], "x": [0,0,0,0], "wt": [0,0], "eps": [0,0], "phi": [1,1]}],
//!   "edges": [{"from": 0, "to": 1, "color": 1}],
//!   "max": 0
//! }
//! ```
//!
//! Vertex ids are arbitrary distinct integers. `wt`, `eps` and `phi` are
//! listed in index-set order and are written for convenience; they are not
//! read back.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crystal_core::cartan::CartanError;
use crystal_core::graph::GraphError;
use crystal_core::{Color, ColoredGraph, Gcm, IndexSet, PbwElement, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub index_set: Vec<Color>,
    pub cartan: Vec<Vec<i64>>,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wt: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: u64,
    pub to: u64,
    pub color: Color,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("vertex id {0} appears more than once")]
    DuplicateId(u64),
    #[error("edge {from} -{color}-> {to} references unknown vertex {missing}")]
    UnknownEndpoint {
        from: u64,
        to: u64,
        color: Color,
        missing: u64,
    },
    #[error("edge {from} -{color}-> {to} uses a color outside the index set")]
    UnknownColor { from: u64, to: u64, color: Color },
    #[error("max refers to unknown vertex {0}")]
    UnknownMax(u64),
    #[error("vertex {id}: a = {a:?} and x = {x:?} are not related by the transition map")]
    InconsistentLabel { id: u64, a: [u32; 4], x: [u32; 4] },
    #[error("vertex {0}: PBW labels require a rank-2 index set")]
    LabelRank(u64),
    #[error("the graph carries no Cartan matrix")]
    MissingCartan,
}

/// A parsed document: the graph on dense ids plus the original ids.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: ColoredGraph,
    pub ids: Vec<u64>,
    pub max: Option<VertexId>,
}

impl LoadedGraph {
    pub fn cartan(&self) -> &Gcm {
        self.graph.cartan().expect("loaded graphs always carry a Cartan matrix")
    }

    pub fn id(&self, v: VertexId) -> u64 {
        self.ids[v]
    }
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Builds the graph. Structural defects such as two outgoing arrows of
    /// one color are kept for the checker rather than rejected here.
    pub fn load(&self) -> Result<LoadedGraph, DocumentError> {
        let index = IndexSet::new(self.index_set.clone())?;
        let cartan = Gcm::new(index.clone(), self.cartan.clone())?;
        let mut g = ColoredGraph::with_vertices(index, self.vertices.len());
        let mut dense: HashMap<u64, VertexId> = HashMap::with_capacity(self.vertices.len());
        let mut ids = Vec::with_capacity(self.vertices.len());
        for (v, rec) in self.vertices.iter().enumerate() {
            if dense.insert(rec.id, v).is_some() {
                return Err(DocumentError::DuplicateId(rec.id));
            }
            ids.push(rec.id);
            let label = match (rec.a, rec.x) {
                (None, None) => continue,
                (Some(a), None) => PbwElement::from_a(a),
                (None, Some(x)) => PbwElement::from_x(x),
                (Some(a), Some(x)) => {
                    let m = PbwElement::new(a, x);
                    if !m.is_consistent() {
                        return Err(DocumentError::InconsistentLabel { id: rec.id, a, x });
                    }
                    m
                }
            };
            if self.index_set.len() != 2 {
                return Err(DocumentError::LabelRank(rec.id));
            }
            g.set_label(v, Some(label));
        }
        for e in &self.edges {
            let lookup = |id: u64| {
                dense.get(&id).copied().ok_or(DocumentError::UnknownEndpoint {
                    from: e.from,
                    to: e.to,
                    color: e.color,
                    missing: id,
                })
            };
            let (from, to) = (lookup(e.from)?, lookup(e.to)?);
            match g.insert_edge_lenient(from, to, e.color) {
                Ok(()) => {}
                Err(GraphError::UnknownColor(_)) => {
                    return Err(DocumentError::UnknownColor {
                        from: e.from,
                        to: e.to,
                        color: e.color,
                    })
                }
                Err(other) => unreachable!("endpoints were resolved: {other}"),
            }
        }
        let max = match self.max {
            None => None,
            Some(id) => Some(*dense.get(&id).ok_or(DocumentError::UnknownMax(id))?),
        };
        g.set_cartan(Some(cartan));
        Ok(LoadedGraph { graph: g, ids, max })
    }

    /// Serializes a graph with dense ids `0..n`.
    pub fn from_graph(g: &ColoredGraph) -> Result<Self, DocumentError> {
        let ids: Vec<u64> = g.vertices().map(|v| v as u64).collect();
        Self::from_graph_with_ids(g, &ids)
    }

    pub fn from_graph_with_ids(g: &ColoredGraph, ids: &[u64]) -> Result<Self, DocumentError> {
        let cartan = g.cartan().ok_or(DocumentError::MissingCartan)?;
        let colors = g.colors().to_vec();
        let table = g.string_table().ok();
        let maxima = g.maximum_elements();
        let weights = match maxima.as_slice() {
            [x0] => g.wt_assign(*x0).ok(),
            _ => None,
        };
        let vertices = g
            .vertices()
            .map(|v| VertexRecord {
                id: ids[v],
                a: g.label(v).map(|m| m.a.0),
                x: g.label(v).map(|m| m.x.0),
                wt: weights
                    .as_ref()
                    .map(|w| colors.iter().map(|&c| w.wt[v].get(c)).collect()),
                eps: table.as_ref().map(|t| t.eps[v].clone()),
                phi: table.as_ref().map(|t| t.phi[v].clone()),
            })
            .collect();
        let edges = g
            .edges()
            .into_iter()
            .map(|e| EdgeRecord {
                from: ids[e.from],
                to: ids[e.to],
                color: e.color,
            })
            .collect();
        Ok(Self {
            index_set: colors,
            cartan: cartan.rows().to_vec(),
            vertices,
            edges,
            max: weights.map(|w| ids[w.root]),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crystal_core::pbw::generate;
    use crystal_core::HighestWeightB2;

    #[test]
    fn round_trip_is_identity() {
        for (l1, l2) in [(0, 0), (1, 1), (2, 1)] {
            let g = generate(HighestWeightB2::new(l1, l2)).unwrap();
            let doc = GraphDocument::from_graph(&g).unwrap();
            let back = GraphDocument::from_json(&doc.to_json()).unwrap().load().unwrap();
            assert_eq!(back.graph, g);
            assert_eq!(back.max, Some(0));
            assert_eq!(GraphDocument::from_graph(&back.graph).unwrap(), doc);
        }
    }

    #[test]
    fn derived_fields() {
        let g = generate(HighestWeightB2::new(1, 0)).unwrap();
        let doc = GraphDocument::from_graph(&g).unwrap();
        assert_eq!(doc.vertices.len(), 4);
        assert_eq!(doc.vertices[0].wt, Some(vec![0, 0]));
        assert_eq!(doc.vertices[0].phi, Some(vec![1, 0]));
        assert_eq!(doc.index_set, vec![1, 2]);
        assert_eq!(doc.cartan, vec![vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn sparse_ids_are_remapped() {
        let text = r#"{"index_set":[1,2],"cartan":[[2,-2],[-1,2]],
            "vertices":[{"id":40},{"id":7}],"edges":[{"from":40,"to":7,"color":2}],"max":40}"#;
        let l = GraphDocument::from_json(text).unwrap().load().unwrap();
        assert_eq!(l.ids, vec![40, 7]);
        assert_eq!(l.graph.f(2, 0), Some(1));
        assert_eq!(l.max, Some(0));
        let doc = GraphDocument::from_graph_with_ids(&l.graph, &l.ids).unwrap();
        assert_eq!(
            doc.edges,
            vec![EdgeRecord {
                from: 40,
                to: 7,
                color: 2
            }]
        );
    }

    #[test]
    fn rejects_bad_input() {
        let base = |vertices: &str, edges: &str| {
            format!(r#"{{"index_set":[1,2],"cartan":[[2,-2],[-1,2]],"vertices":{vertices},"edges":{edges}}}"#)
        };
        let load = |t: String| GraphDocument::from_json(&t).and_then(|d| d.load());
        assert!(matches!(
            load(base(r#"[{"id":1},{"id":1}]"#, "[]")),
            Err(DocumentError::DuplicateId(1))
        ));
        assert!(matches!(
            load(base(r#"[{"id":1}]"#, r#"[{"from":1,"to":2,"color":1}]"#)),
            Err(DocumentError::UnknownEndpoint { missing: 2, .. })
        ));
        assert!(matches!(
            load(base(r#"[{"id":1},{"id":2}]"#, r#"[{"from":1,"to":2,"color":3}]"#)),
            Err(DocumentError::UnknownColor { color: 3, .. })
        ));
        assert!(matches!(
            load(base(r#"[{"id":1,"a":[1,0,0,0],"x":[0,0,0,0]}]"#, "[]")),
            Err(DocumentError::InconsistentLabel { id: 1, .. })
        ));
        assert!(matches!(load("{".into()), Err(DocumentError::Json(_))));
        let bad_matrix = r#"{"index_set":[1,2],"cartan":[[2,1],[-1,2]],"vertices":[],"edges":[]}"#;
        assert!(matches!(load(bad_matrix.into()), Err(DocumentError::Cartan(_))));
    }

    #[test]
    fn duplicate_arrows_survive_loading() {
        let text = r#"{"index_set":[1,2],"cartan":[[2,-2],[-1,2]],
            "vertices":[{"id":0},{"id":1},{"id":2}],
            "edges":[{"from":0,"to":1,"color":1},{"from":0,"to":2,"color":1}]}"#;
        let l = GraphDocument::from_json(text).unwrap().load().unwrap();
        assert_eq!(l.graph.edge_count(), 2);
        assert!(!l.graph.is_good().is_empty());
    }
}
