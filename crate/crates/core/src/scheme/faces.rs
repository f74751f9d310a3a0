//! Face tracing on the combinatorial map given by the rotation system.
//!
//! Darts are edge-sides: an edge traversed forwards (src to tgt) or backwards.
//! Every face is traced so that it lies to the right of its boundary walk.
//! With rotations listed counterclockwise this walks interior faces clockwise
//! and the exterior face counterclockwise, so a face boundary reads as its
//! domain path forwards followed by its codomain path backwards.

use std::collections::HashMap;

use super::document::{End, RawScheme};
use super::error::SchemeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    pub fn start(&self, raw: &RawScheme) -> usize {
        let e = &raw.edges[self.edge];
        if self.forward {
            e.src
        } else {
            e.tgt
        }
    }

    pub fn end(&self, raw: &RawScheme) -> usize {
        let e = &raw.edges[self.edge];
        if self.forward {
            e.tgt
        } else {
            e.src
        }
    }
}

/// Closed boundary walk of one face, as a cyclic sequence of darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryWalk {
    pub darts: Vec<Dart>,
}

impl BoundaryWalk {
    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|d| d.edge)
    }

    /// Edge sequences of the walk read from each occurrence of `vertex`.
    pub fn readings_from(&self, raw: &RawScheme, vertex: usize) -> Vec<Vec<usize>> {
        let n = self.darts.len();
        (0..n)
            .filter(|&k| self.darts[k].start(raw) == vertex)
            .map(|k| (0..n).map(|i| self.darts[(k + i) % n].edge).collect())
            .collect()
    }
}

/// Checks that every edge end occurs exactly once, at its own vertex.
pub fn check_rotation(raw: &RawScheme) -> Result<(), SchemeError> {
    let mut seen: HashMap<(usize, End), usize> = HashMap::new();
    for (v, ends) in raw.rotation.iter().enumerate() {
        for end in ends {
            let e = &raw.edges[end.edge];
            let at = match end.end {
                End::Out => e.src,
                End::In => e.tgt,
            };
            if at != v {
                return Err(SchemeError::InvalidRotation {
                    vertex: raw.vertices[v].clone(),
                    reason: format!("edge {} has no {:?} end here", e.id, end.end),
                });
            }
            if seen.insert((end.edge, end.end), v).is_some() {
                return Err(SchemeError::InvalidRotation {
                    vertex: raw.vertices[v].clone(),
                    reason: format!("edge end {} {:?} listed twice", e.id, end.end),
                });
            }
        }
    }
    for (i, e) in raw.edges.iter().enumerate() {
        for (end, at) in [(End::Out, e.src), (End::In, e.tgt)] {
            if !seen.contains_key(&(i, end)) {
                return Err(SchemeError::InvalidRotation {
                    vertex: raw.vertices[at].clone(),
                    reason: format!("edge end {} {:?} missing", e.id, end),
                });
            }
        }
    }
    Ok(())
}

/// Traces all faces of the embedding, exterior included.
///
/// Faces are returned in the order their first dart appears when darts are
/// scanned by edge index, forward side first.
pub fn trace_faces(raw: &RawScheme) -> Result<Vec<BoundaryWalk>, SchemeError> {
    check_rotation(raw)?;

    let mut position: HashMap<(usize, End), (usize, usize)> = HashMap::new();
    for (v, ends) in raw.rotation.iter().enumerate() {
        for (i, end) in ends.iter().enumerate() {
            position.insert((end.edge, end.end), (v, i));
        }
    }

    let next = |d: Dart| -> Dart {
        let arrival = if d.forward { End::In } else { End::Out };
        let (v, i) = position[&(d.edge, arrival)];
        let ends = &raw.rotation[v];
        let succ = ends[(i + 1) % ends.len()];
        Dart {
            edge: succ.edge,
            forward: succ.end == End::Out,
        }
    };

    let total = 2 * raw.edges.len();
    let mut visited = vec![false; total];
    let slot = |d: Dart| 2 * d.edge + usize::from(!d.forward);
    let mut faces = Vec::new();
    for edge in 0..raw.edges.len() {
        for forward in [true, false] {
            let start = Dart { edge, forward };
            if visited[slot(start)] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                if visited[slot(d)] {
                    // next() is a permutation of darts, so the only revisit is `start`.
                    if d != start {
                        return Err(SchemeError::InvalidRotation {
                            vertex: raw.vertices[d.start(raw)].clone(),
                            reason: "face tracing does not close".into(),
                        });
                    }
                    break;
                }
                visited[slot(d)] = true;
                darts.push(d);
                d = next(d);
            }
            faces.push(BoundaryWalk { darts });
        }
    }
    Ok(faces)
}

/// Splits a boundary walk into a directed path followed by a reversed
/// directed path. Returns `(sigma, tau)` with both running from the common
/// start vertex to the common end vertex.
pub fn decompose(walk: &BoundaryWalk) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = walk.darts.len();
    let changes: Vec<usize> = (0..n)
        .filter(|&i| walk.darts[i].forward && !walk.darts[(i + n - 1) % n].forward)
        .collect();
    if changes.len() != 1 {
        return None;
    }
    let start = changes[0];
    let rotated: Vec<Dart> = (0..n).map(|i| walk.darts[(start + i) % n]).collect();
    let split = rotated.iter().position(|d| !d.forward)?;
    if rotated[split..].iter().any(|d| d.forward) {
        return None;
    }
    let sigma = rotated[..split].iter().map(|d| d.edge).collect();
    let tau = rotated[split..].iter().rev().map(|d| d.edge).collect();
    Some((sigma, tau))
}
