//! Generators of valid pasting schemes for tests and benchmarks.
//!
//! Schemes are grown from a top path by repeatedly gluing a new face below a
//! segment of the current bottom boundary. With all edges drawn left to
//! right, the rotation at a vertex lists outgoing edges bottom to top, then
//! incoming edges top to bottom, so each glued path is inserted at the
//! bottom of its endpoints' edge fans.

use std::collections::BTreeMap;

use rand::Rng;

use crate::scheme::{
    validate_scheme, EdgeDoc, EdgeEndDoc, End, FaceDoc, Id, PastingScheme, RawScheme, SchemeDocument,
    SchemeError,
};

/// Incrementally builds a scheme from the top down.
#[derive(Debug, Clone)]
pub struct SchemeBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, usize, usize)>,
    /// Outgoing and incoming edges per vertex, top to bottom.
    outs: Vec<Vec<usize>>,
    ins: Vec<Vec<usize>>,
    top: Vec<usize>,
    bottom: Vec<usize>,
    faces: Vec<(String, Vec<usize>)>,
}

impl SchemeBuilder {
    /// A single path of `len >= 1` edges from `s` to `t`.
    pub fn new(len: usize) -> Self {
        assert!(len >= 1, "top path needs an edge");
        let mut b = SchemeBuilder {
            vertices: vec!["s".into()],
            edges: Vec::new(),
            outs: vec![Vec::new()],
            ins: vec![Vec::new()],
            top: Vec::new(),
            bottom: Vec::new(),
            faces: Vec::new(),
        };
        let mut at = 0;
        for i in 0..len {
            let next = if i + 1 == len { b.add_vertex("t".into()) } else { b.fresh_vertex() };
            let e = b.add_edge(at, next);
            b.top.push(e);
            at = next;
        }
        b.bottom = b.top.clone();
        b
    }

    fn fresh_vertex(&mut self) -> usize {
        let name = format!("v{}", self.vertices.len());
        self.add_vertex(name)
    }

    fn add_vertex(&mut self, name: String) -> usize {
        self.vertices.push(name);
        self.outs.push(Vec::new());
        self.ins.push(Vec::new());
        self.vertices.len() - 1
    }

    fn add_edge(&mut self, src: usize, tgt: usize) -> usize {
        let e = self.edges.len();
        self.edges.push((format!("e{e}"), src, tgt));
        self.outs[src].push(e);
        self.ins[tgt].push(e);
        e
    }

    /// Current bottom boundary, as edge indices from source to sink.
    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Glues a face whose domain is `bottom[start..start + len]` and whose
    /// codomain is a fresh path of `new_len >= 1` edges below it.
    pub fn attach_below(&mut self, start: usize, len: usize, new_len: usize) {
        assert!(len >= 1 && new_len >= 1 && start + len <= self.bottom.len());
        let sigma: Vec<usize> = self.bottom[start..start + len].to_vec();
        let u = self.edges[sigma[0]].1;
        let v = self.edges[sigma[len - 1]].2;
        let mut tau = Vec::with_capacity(new_len);
        let mut at = u;
        for i in 0..new_len {
            let next = if i + 1 == new_len { v } else { self.fresh_vertex() };
            tau.push(self.add_edge(at, next));
            at = next;
        }
        let name = format!("F{}", self.faces.len() + 1);
        self.faces.push((name, sigma));
        self.bottom.splice(start..start + len, tau);
    }

    pub fn document(&self) -> SchemeDocument {
        let eid = |e: usize| Id::new(self.edges[e].0.clone());
        let rotation = (0..self.vertices.len())
            .map(|v| {
                let outs = self.outs[v].iter().rev().map(|&e| EdgeEndDoc {
                    edge: eid(e),
                    end: End::Out,
                });
                let ins = self.ins[v].iter().map(|&e| EdgeEndDoc {
                    edge: eid(e),
                    end: End::In,
                });
                (Id::new(self.vertices[v].clone()), outs.chain(ins).collect())
            })
            .collect::<BTreeMap<_, _>>();
        let exterior = self.bottom.iter().copied().chain(self.top.iter().rev().copied());
        SchemeDocument {
            vertices: self.vertices.iter().map(|v| Id::new(v.clone())).collect(),
            edges: self
                .edges
                .iter()
                .map(|(id, s, t)| EdgeDoc {
                    id: Id::new(id.clone()),
                    src: Id::new(self.vertices[*s].clone()),
                    tgt: Id::new(self.vertices[*t].clone()),
                })
                .collect(),
            rotation,
            source: Id::new("s"),
            sink: Id::new("t"),
            exterior_boundary: exterior.map(eid).collect(),
            faces: self
                .faces
                .iter()
                .map(|(id, sigma)| FaceDoc {
                    id: Id::new(id.clone()),
                    s: None,
                    t: None,
                    sigma: sigma.iter().map(|&e| eid(e)).collect(),
                    tau: None,
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<PastingScheme, SchemeError> {
        validate_scheme(RawScheme::from_document(&self.document())?)
    }
}

/// A random scheme with between 1 and `max_faces` interior faces.
///
/// Short glued segments on a long top path keep many faces side by side,
/// so the schemes have many composition orders.
pub fn random_scheme<R: Rng>(rng: &mut R, max_faces: usize) -> PastingScheme {
    let mut b = SchemeBuilder::new(rng.gen_range(1..=5));
    let faces = rng.gen_range(1..=max_faces.max(1));
    for _ in 0..faces {
        let n = b.bottom().len();
        let len = match rng.gen_range(0..10) {
            0..=5 => 1,
            6..=8 => 2,
            _ => 3,
        }
        .min(n);
        let start = rng.gen_range(0..=n - len);
        let new_len = rng.gen_range(1..=2);
        b.attach_below(start, len, new_len);
    }
    b.build().expect("generated schemes are valid")
}

/// `n` bigons glued end to end.
pub fn bigons_in_series(n: usize) -> PastingScheme {
    let mut b = SchemeBuilder::new(n);
    for i in 0..n {
        b.attach_below(i, 1, 1);
    }
    b.build().expect("bigon chains are valid")
}
