//! Plane directed graphs with a rotation system, face tracing, and the
//! pasting-scheme axioms.
//!
//! Orientation convention: rotations list edge ends counterclockwise in the
//! standard orientation of the plane, with the top of a drawing pointing up.
//! The domain path `sigma` of an interior face is the side the face lies to
//! the right of, which is the upper side of the face in a drawing where
//! 2-cells point downwards. For the exterior face `tau` is the top path and
//! `sigma` the bottom path. [`Orientation::Mirrored`] reads the embedding
//! upside down, exchanging the two sides of every face.

mod document;
mod error;
mod faces;
mod ids;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

pub use document::{
    parse_scheme, DeclaredFace, Edge, EdgeDoc, EdgeEnd, EdgeEndDoc, End, FaceDoc, RawScheme,
    SchemeDocument,
};
pub use error::SchemeError;
pub use faces::{check_rotation, decompose, trace_faces, BoundaryWalk, Dart};
pub use ids::{natural_cmp, EdgeId, FaceId, Id, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Standard,
    Mirrored,
}

/// A directed path, as edge indices. Empty walks keep an anchoring vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    pub edges: Vec<usize>,
    pub start: usize,
    pub end: usize,
}

impl Walk {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub source: usize,
    pub target: usize,
    pub sigma: Walk,
    pub tau: Walk,
    pub boundary: BoundaryWalk,
    pub is_exterior: bool,
}

/// A validated pasting scheme. Interior faces are sorted by id.
#[derive(Debug, Clone)]
pub struct PastingScheme {
    raw: RawScheme,
    faces: Vec<Face>,
    exterior: Face,
    traced_faces: usize,
}

impl PastingScheme {
    pub fn vertices(&self) -> &[VertexId] {
        &self.raw.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.raw.edges
    }

    pub fn raw(&self) -> &RawScheme {
        &self.raw
    }

    pub fn source(&self) -> usize {
        self.raw.source
    }

    pub fn sink(&self) -> usize {
        self.raw.sink
    }

    /// Interior faces.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn exterior(&self) -> &Face {
        &self.exterior
    }

    /// Number of faces of the embedding, exterior included.
    pub fn face_count_with_exterior(&self) -> usize {
        self.traced_faces
    }

    pub fn face_index(&self, id: &FaceId) -> Option<usize> {
        self.faces.iter().position(|f| &f.id == id)
    }

    pub fn face_ids(&self) -> Vec<FaceId> {
        self.faces.iter().map(|f| f.id.clone()).collect()
    }

    pub fn edge_id(&self, e: usize) -> &EdgeId {
        &self.raw.edges[e].id
    }

    pub fn vertex_id(&self, v: usize) -> &VertexId {
        &self.raw.vertices[v]
    }

    pub fn edge_ids(&self, walk: &[usize]) -> Vec<EdgeId> {
        walk.iter().map(|&e| self.edge_id(e).clone()).collect()
    }

    /// `(top, bottom)`: the codomain and domain paths of the exterior face.
    pub fn top_bottom_paths(&self) -> (Walk, Walk) {
        (self.exterior.tau.clone(), self.exterior.sigma.clone())
    }

    /// `reach[u][v]`: there is a non-empty directed path from `u` to `v`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.raw.vertices.len();
        let order = topological_order(&self.raw).expect("validated scheme is acyclic");
        let mut reach = vec![vec![false; n]; n];
        for &u in order.iter().rev() {
            for e in &self.raw.edges {
                if e.src == u {
                    let below = reach[e.tgt].clone();
                    reach[u][e.tgt] = true;
                    for (x, y) in reach[u].iter_mut().zip(below) {
                        *x |= y;
                    }
                }
            }
        }
        reach
    }

    /// Canonical document form; re-validating it reproduces this scheme.
    pub fn to_document(&self) -> SchemeDocument {
        let raw = &self.raw;
        let id = |e: usize| raw.edges[e].id.clone();
        SchemeDocument {
            vertices: raw.vertices.clone(),
            edges: raw
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    src: raw.vertices[e.src].clone(),
                    tgt: raw.vertices[e.tgt].clone(),
                })
                .collect(),
            rotation: raw
                .rotation
                .iter()
                .enumerate()
                .map(|(v, ends)| {
                    (
                        raw.vertices[v].clone(),
                        ends.iter()
                            .map(|end| EdgeEndDoc {
                                edge: id(end.edge),
                                end: end.end,
                            })
                            .collect(),
                    )
                })
                .collect::<BTreeMap<_, _>>(),
            source: raw.vertices[raw.source].clone(),
            sink: raw.vertices[raw.sink].clone(),
            exterior_boundary: raw.exterior_boundary.iter().map(|&e| id(e)).collect(),
            faces: self
                .faces
                .iter()
                .map(|f| FaceDoc {
                    id: f.id.clone(),
                    s: Some(raw.vertices[f.source].clone()),
                    t: Some(raw.vertices[f.target].clone()),
                    sigma: f.sigma.edges.iter().map(|&e| id(e)).collect(),
                    tau: Some(f.tau.edges.iter().map(|&e| id(e)).collect()),
                })
                .collect(),
        }
    }

    pub fn report(&self) -> SchemeReport {
        let face = |f: &Face| FaceReport {
            id: f.id.to_string(),
            s: self.vertex_id(f.source).to_string(),
            t: self.vertex_id(f.target).to_string(),
            sigma: self.edge_ids(&f.sigma.edges).iter().map(|e| e.to_string()).collect(),
            tau: self.edge_ids(&f.tau.edges).iter().map(|e| e.to_string()).collect(),
        };
        let (top, bottom) = self.top_bottom_paths();
        SchemeReport {
            source: self.vertex_id(self.source()).to_string(),
            sink: self.vertex_id(self.sink()).to_string(),
            vertices: self.raw.vertices.len(),
            edges: self.raw.edges.len(),
            interior_faces: self.faces.len(),
            faces: self.faces.iter().map(face).collect(),
            exterior: face(&self.exterior),
            top: self.edge_ids(&top.edges).iter().map(|e| e.to_string()).collect(),
            bottom: self.edge_ids(&bottom.edges).iter().map(|e| e.to_string()).collect(),
        }
    }

    /// Graphviz rendering of the underlying digraph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph scheme {\n  rankdir=LR;\n");
        for v in &self.raw.vertices {
            let _ = writeln!(out, "  {};", dot_quote(v.as_str()));
        }
        for e in &self.raw.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                dot_quote(self.raw.vertices[e.src].as_str()),
                dot_quote(self.raw.vertices[e.tgt].as_str()),
                dot_quote(e.id.as_str())
            );
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceReport {
    pub id: String,
    pub s: String,
    pub t: String,
    pub sigma: Vec<String>,
    pub tau: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemeReport {
    pub source: String,
    pub sink: String,
    pub vertices: usize,
    pub edges: usize,
    pub interior_faces: usize,
    pub faces: Vec<FaceReport>,
    pub exterior: FaceReport,
    pub top: Vec<String>,
    pub bottom: Vec<String>,
}

/// Kahn's algorithm; `None` when the graph has a directed cycle.
fn topological_order(raw: &RawScheme) -> Option<Vec<usize>> {
    let n = raw.vertices.len();
    let mut indeg = vec![0usize; n];
    for e in &raw.edges {
        indeg[e.tgt] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for e in raw.edges.iter().filter(|e| e.src == u) {
            indeg[e.tgt] -= 1;
            if indeg[e.tgt] == 0 {
                queue.push_back(e.tgt);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Some directed cycle, as a vertex sequence, found by depth-first search.
fn find_cycle(raw: &RawScheme) -> Option<Vec<usize>> {
    let n = raw.vertices.len();
    let mut state = vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();

    fn dfs(
        u: usize,
        raw: &RawScheme,
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[u] = 1;
        stack.push(u);
        for e in raw.edges.iter().filter(|e| e.src == u) {
            match state[e.tgt] {
                0 => {
                    if let Some(c) = dfs(e.tgt, raw, state, stack) {
                        return Some(c);
                    }
                }
                1 => {
                    let at = stack.iter().position(|&x| x == e.tgt).unwrap();
                    return Some(stack[at..].to_vec());
                }
                _ => {}
            }
        }
        stack.pop();
        state[u] = 2;
        None
    }

    (0..n).find_map(|v| {
        if state[v] == 0 {
            dfs(v, raw, &mut state, &mut stack)
        } else {
            None
        }
    })
}

fn reachable(raw: &RawScheme, from: usize, forward: bool, undirected: bool) -> Vec<bool> {
    let n = raw.vertices.len();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        for e in &raw.edges {
            let mut nexts = Vec::with_capacity(2);
            if (forward || undirected) && e.src == u {
                nexts.push(e.tgt);
            }
            if (!forward || undirected) && e.tgt == u {
                nexts.push(e.src);
            }
            for v in nexts {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

/// Validates a raw scheme in the standard orientation.
pub fn validate_scheme(raw: RawScheme) -> Result<PastingScheme, SchemeError> {
    validate_with(raw, Orientation::Standard)
}

pub fn validate_with(raw: RawScheme, orientation: Orientation) -> Result<PastingScheme, SchemeError> {
    let raw = match orientation {
        Orientation::Standard => raw,
        Orientation::Mirrored => raw.mirrored(),
    };

    if let Some(e) = raw.edges.iter().find(|e| e.src == e.tgt) {
        return Err(SchemeError::Loop(e.id.clone()));
    }
    if raw.source == raw.sink {
        return Err(SchemeError::SourceEqualsSink);
    }
    check_rotation(&raw)?;

    let connected = reachable(&raw, raw.source, true, true);
    if let Some(v) = connected.iter().position(|&c| !c) {
        return Err(SchemeError::Disconnected(raw.vertices[v].clone()));
    }
    if topological_order(&raw).is_none() {
        let cycle = find_cycle(&raw).unwrap_or_default();
        return Err(SchemeError::DirectedCycle(
            cycle.into_iter().map(|v| raw.vertices[v].clone()).collect(),
        ));
    }
    let from_source = reachable(&raw, raw.source, true, false);
    if let Some(v) = from_source.iter().position(|&r| !r) {
        return Err(SchemeError::Unreachable(raw.vertices[v].clone()));
    }
    let to_sink = reachable(&raw, raw.sink, false, false);
    if let Some(v) = to_sink.iter().position(|&r| !r) {
        return Err(SchemeError::NotCoreachable(raw.vertices[v].clone()));
    }

    let walks = trace_faces(&raw)?;
    let (v, e, f) = (raw.vertices.len(), raw.edges.len(), walks.len());
    if v + f != e + 2 {
        return Err(SchemeError::NotPlanar {
            vertices: v,
            edges: e,
            faces: f,
        });
    }

    let exterior_at = walks
        .iter()
        .position(|w| {
            w.readings_from(&raw, raw.source).contains(&raw.exterior_boundary)
        })
        .ok_or_else(|| SchemeError::ExteriorMismatch {
            declared: raw
                .exterior_boundary
                .iter()
                .map(|&e| raw.edges[e].id.clone())
                .collect(),
        })?;

    let mut interior = Vec::with_capacity(walks.len() - 1);
    let mut exterior = None;
    for (i, walk) in walks.into_iter().enumerate() {
        let face = build_face(&raw, walk, i == exterior_at)?;
        if face.is_exterior {
            exterior = Some(face);
        } else {
            interior.push(face);
        }
    }
    let exterior = exterior.expect("exterior face located above");
    if exterior.source != raw.source || exterior.target != raw.sink {
        return Err(SchemeError::ExteriorEndpoints);
    }

    name_faces(&raw, &mut interior, orientation)?;
    interior.sort_by(|a, b| natural_cmp(a.id.as_str(), b.id.as_str()));

    Ok(PastingScheme {
        traced_faces: interior.len() + 1,
        raw,
        faces: interior,
        exterior,
    })
}

fn build_face(raw: &RawScheme, walk: BoundaryWalk, is_exterior: bool) -> Result<Face, SchemeError> {
    let ids = |w: &BoundaryWalk| w.edges().map(|e| raw.edges[e].id.clone()).collect::<Vec<_>>();
    let (sigma, tau) = decompose(&walk).ok_or_else(|| SchemeError::BadFaceBoundary(ids(&walk)))?;
    let source = raw.edges[sigma[0]].src;
    let target = raw.edges[*sigma.last().unwrap()].tgt;
    if source == target {
        return Err(SchemeError::DegenerateFace(ids(&walk)));
    }
    Ok(Face {
        id: FaceId::new(""),
        source,
        target,
        sigma: Walk {
            edges: sigma,
            start: source,
            end: target,
        },
        tau: Walk {
            edges: tau,
            start: source,
            end: target,
        },
        boundary: walk,
        is_exterior,
    })
}

/// Applies declared face names; the rest are named `F1`, `F2`, ... in the
/// document order of the first edge of their domain path.
fn name_faces(raw: &RawScheme, faces: &mut [Face], orientation: Orientation) -> Result<(), SchemeError> {
    let mut named = vec![false; faces.len()];
    let mut used = HashSet::new();
    for decl in &raw.declared_faces {
        let bad = |reason: &str| SchemeError::DeclaredFace {
            id: decl.id.clone(),
            reason: reason.to_owned(),
        };
        // Mirroring exchanges the two sides of every face.
        let pick = |f: &Face| match orientation {
            Orientation::Standard => (f.sigma.edges.clone(), f.tau.edges.clone()),
            Orientation::Mirrored => (f.tau.edges.clone(), f.sigma.edges.clone()),
        };
        let at = faces
            .iter()
            .position(|f| pick(f).0 == decl.sigma)
            .ok_or_else(|| bad("no interior face has this domain path"))?;
        if named[at] {
            return Err(bad("face already named"));
        }
        if let Some(tau) = &decl.tau {
            if *tau != pick(&faces[at]).1 {
                return Err(bad("declared codomain path differs from the traced one"));
            }
        }
        let (s, t) = (faces[at].source, faces[at].target);
        if decl.s.is_some_and(|v| v != s) || decl.t.is_some_and(|v| v != t) {
            return Err(bad("declared endpoints differ from the traced ones"));
        }
        named[at] = true;
        used.insert(decl.id.clone());
        faces[at].id = decl.id.clone();
    }

    let mut rest: Vec<usize> = (0..faces.len()).filter(|&i| !named[i]).collect();
    rest.sort_by_key(|&i| faces[i].sigma.edges[0]);
    let mut counter = 1;
    for i in rest {
        let id = loop {
            let candidate = FaceId::new(format!("F{counter}"));
            counter += 1;
            if !used.contains(&candidate) {
                break candidate;
            }
        };
        used.insert(id.clone());
        faces[i].id = id;
    }
    Ok(())
}
