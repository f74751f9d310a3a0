//! JSON scheme documents and their unvalidated in-memory form.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::error::SchemeError;
use super::ids::{EdgeId, FaceId, Id, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDocument {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeDoc>,
    pub rotation: BTreeMap<VertexId, Vec<EdgeEndDoc>>,
    pub source: VertexId,
    pub sink: VertexId,
    /// Boundary walk of the exterior face read from the source: the bottom
    /// path forwards, then the top path backwards.
    pub exterior_boundary: Vec<EdgeId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<FaceDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: EdgeId,
    pub src: VertexId,
    pub tgt: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Out,
    In,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEndDoc {
    pub edge: EdgeId,
    pub end: End,
}

/// Names an interior face by its domain path. `s`, `t` and `tau` are optional
/// and cross-checked when present (they are always present in emitted documents).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceDoc {
    pub id: FaceId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<VertexId>,
    pub sigma: Vec<EdgeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<EdgeId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: End,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeclaredFace {
    pub id: FaceId,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub sigma: Vec<usize>,
    pub tau: Option<Vec<usize>>,
}

/// A parsed but unvalidated scheme: graph, rotation system and declared
/// source/sink, all referring to vertices and edges by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawScheme {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
    /// Counterclockwise edge-end order around each vertex.
    pub rotation: Vec<Vec<EdgeEnd>>,
    pub source: usize,
    pub sink: usize,
    pub exterior_boundary: Vec<usize>,
    pub declared_faces: Vec<DeclaredFace>,
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<EdgeId, usize>,
}

impl RawScheme {
    pub fn vertex_index(&self, id: &VertexId) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_index(&self, id: &EdgeId) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    /// Mirror image of the embedding: every cyclic order reversed.
    pub fn mirrored(&self) -> RawScheme {
        let mut out = self.clone();
        for ends in &mut out.rotation {
            ends.reverse();
        }
        out.exterior_boundary.reverse();
        out
    }

    pub fn from_document(doc: &SchemeDocument) -> Result<RawScheme, SchemeError> {
        let mut vertex_index = HashMap::new();
        for (i, v) in doc.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(SchemeError::DuplicateId {
                    what: "vertex",
                    id: v.to_string(),
                });
            }
        }
        let vertex = |id: &Id, context: &str| {
            vertex_index
                .get(id)
                .copied()
                .ok_or_else(|| SchemeError::UnknownReference {
                    what: "vertex",
                    id: id.to_string(),
                    context: context.to_owned(),
                })
        };

        let mut edge_index = HashMap::new();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (i, e) in doc.edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(SchemeError::DuplicateId {
                    what: "edge",
                    id: e.id.to_string(),
                });
            }
            let ctx = format!("edge {}", e.id);
            edges.push(Edge {
                id: e.id.clone(),
                src: vertex(&e.src, &ctx)?,
                tgt: vertex(&e.tgt, &ctx)?,
            });
        }
        let edge = |id: &Id, context: &str| {
            edge_index
                .get(id)
                .copied()
                .ok_or_else(|| SchemeError::UnknownReference {
                    what: "edge",
                    id: id.to_string(),
                    context: context.to_owned(),
                })
        };

        let mut rotation = vec![Vec::new(); doc.vertices.len()];
        for (v, ends) in &doc.rotation {
            let ctx = format!("rotation at {v}");
            let vi = vertex(v, &ctx)?;
            for end in ends {
                rotation[vi].push(EdgeEnd {
                    edge: edge(&end.edge, &ctx)?,
                    end: end.end,
                });
            }
        }

        let exterior_boundary = doc
            .exterior_boundary
            .iter()
            .map(|e| edge(e, "exterior_boundary"))
            .collect::<Result<Vec<_>, _>>()?;

        let mut declared_faces = Vec::with_capacity(doc.faces.len());
        let mut seen = HashMap::new();
        for f in &doc.faces {
            if seen.insert(f.id.clone(), ()).is_some() {
                return Err(SchemeError::DuplicateId {
                    what: "face",
                    id: f.id.to_string(),
                });
            }
            let ctx = format!("face {}", f.id);
            declared_faces.push(DeclaredFace {
                id: f.id.clone(),
                s: f.s.as_ref().map(|v| vertex(v, &ctx)).transpose()?,
                t: f.t.as_ref().map(|v| vertex(v, &ctx)).transpose()?,
                sigma: f
                    .sigma
                    .iter()
                    .map(|e| edge(e, &ctx))
                    .collect::<Result<_, _>>()?,
                tau: f
                    .tau
                    .as_ref()
                    .map(|p| p.iter().map(|e| edge(e, &ctx)).collect::<Result<_, _>>())
                    .transpose()?,
            });
        }

        Ok(RawScheme {
            source: vertex(&doc.source, "source")?,
            sink: vertex(&doc.sink, "sink")?,
            vertices: doc.vertices.clone(),
            edges,
            rotation,
            exterior_boundary,
            declared_faces,
            vertex_index,
            edge_index,
        })
    }
}

/// Parses a JSON scheme document. No graph-theoretic validation is performed.
pub fn parse_scheme(text: &str) -> Result<RawScheme, SchemeError> {
    let doc: SchemeDocument =
        serde_json::from_str(text).map_err(|e| SchemeError::Malformed(e.to_string()))?;
    RawScheme::from_document(&doc)
}
