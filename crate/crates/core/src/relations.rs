//! Binary relations on the interior faces of a scheme, stored as dense
//! boolean matrices over a fixed element order, and the order-theoretic
//! queries built on them: closures, acyclicity, minimal elements and linear
//! extensions.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scheme::{FaceId, PastingScheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("relation has a cycle through {0}")]
    Cyclic(String),
    #[error("minimal elements requested for an empty subset")]
    EmptySubset,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// A face's codomain shares an edge with another face's domain.
    Triangle,
    /// A directed, possibly empty path runs from one face's sink to the other's source.
    Prec,
    TransitiveClosure(Box<RelationKind>),
    Custom,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationKind::Triangle => f.write_str("triangle"),
            RelationKind::Prec => f.write_str("prec"),
            RelationKind::TransitiveClosure(k) => write!(f, "transitive-closure-of-{k}"),
            RelationKind::Custom => f.write_str("custom"),
        }
    }
}

/// A binary relation on a finite, ordered set of elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRelation {
    elements: Vec<FaceId>,
    matrix: Vec<Vec<bool>>,
    kind: RelationKind,
}

impl FaceRelation {
    pub fn empty(elements: Vec<FaceId>, kind: RelationKind) -> Self {
        let n = elements.len();
        FaceRelation {
            elements,
            matrix: vec![vec![false; n]; n],
            kind,
        }
    }

    pub fn from_pairs(
        elements: Vec<FaceId>,
        kind: RelationKind,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut rel = Self::empty(elements, kind);
        for (a, b) in pairs {
            rel.insert(a, b);
        }
        rel
    }

    /// A relation on `n` anonymous elements named `0..n`.
    pub fn on_indices(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let elements = (0..n).map(|i| FaceId::new(i.to_string())).collect();
        Self::from_pairs(elements, RelationKind::Custom, pairs)
    }

    pub fn elements(&self) -> &[FaceId] {
        &self.elements
    }

    pub fn kind(&self) -> &RelationKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.matrix[a][b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.matrix[a][b] = true;
    }

    /// Flips membership of one pair.
    pub fn toggle(&mut self, a: usize, b: usize) {
        self.matrix[a][b] = !self.matrix[a][b];
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.matrix[a][b])
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.matrix.iter().flatten().filter(|&&x| x).count()
    }

    pub fn named_pairs(&self) -> Vec<(FaceId, FaceId)> {
        self.pairs()
            .into_iter()
            .map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
            .collect()
    }

    /// Smallest transitive superset (Warshall).
    pub fn transitive_closure(&self) -> FaceRelation {
        let n = self.len();
        let mut m = self.matrix.clone();
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        let kind = match &self.kind {
            k @ RelationKind::TransitiveClosure(_) => k.clone(),
            k => RelationKind::TransitiveClosure(Box::new(k.clone())),
        };
        FaceRelation {
            elements: self.elements.clone(),
            matrix: m,
            kind,
        }
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.len()).all(|i| !self.matrix[i][i])
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| !self.matrix[i][j] || (0..n).all(|k| !self.matrix[j][k] || self.matrix[i][k]))
        })
    }

    pub fn is_asymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| !(self.matrix[i][j] && self.matrix[j][i])))
    }

    pub fn is_strict_partial_order(&self) -> bool {
        self.is_irreflexive() && self.is_transitive()
    }

    /// True iff there is no cycle `x1 R x2 R ... R x1`, loops included.
    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Some cycle of the relation, as element indices.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut state = vec![0u8; n];
        let mut stack = Vec::new();
        for root in 0..n {
            if state[root] == 0 {
                if let Some(c) = self.cycle_from(root, &mut state, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }

    fn cycle_from(&self, u: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[u] = 1;
        stack.push(u);
        for v in 0..self.len() {
            if !self.matrix[u][v] {
                continue;
            }
            match state[v] {
                0 => {
                    if let Some(c) = self.cycle_from(v, state, stack) {
                        return Some(c);
                    }
                }
                1 => {
                    let at = stack.iter().position(|&x| x == v).unwrap();
                    return Some(stack[at..].to_vec());
                }
                _ => {}
            }
        }
        stack.pop();
        state[u] = 2;
        None
    }

    fn cyclic_error(&self) -> RelationError {
        let cycle = self.find_cycle().unwrap_or_default();
        RelationError::Cyclic(
            cycle
                .iter()
                .map(|&i| self.elements[i].to_string())
                .collect::<Vec<_>>()
                .join(" "),
        )
    }

    /// All `m` in `subset` such that no `s` in `subset` has `s R m`.
    pub fn minimal_elements(&self, subset: &[usize]) -> Result<Vec<usize>, RelationError> {
        if subset.is_empty() {
            return Err(RelationError::EmptySubset);
        }
        Ok(subset
            .iter()
            .copied()
            .filter(|&m| subset.iter().all(|&s| !self.matrix[s][m]))
            .collect())
    }

    /// Every strict linear extension of the transitive closure, in
    /// lexicographic order of element indices.
    pub fn linear_extensions(&self) -> Result<Vec<Vec<usize>>, RelationError> {
        let mut out = Vec::new();
        self.for_each_extension(|ext| {
            out.push(ext.to_vec());
            true
        })?;
        Ok(out)
    }

    /// Calls `visit` on each linear extension in lexicographic order until it
    /// returns false.
    pub fn for_each_extension(
        &self,
        mut visit: impl FnMut(&[usize]) -> bool,
    ) -> Result<(), RelationError> {
        if !self.is_acyclic() {
            return Err(self.cyclic_error());
        }
        let n = self.len();
        // pending[v]: number of unplaced predecessors of v
        let mut pending: Vec<usize> = (0..n)
            .map(|v| (0..n).filter(|&u| self.matrix[u][v]).count())
            .collect();
        let mut placed = vec![false; n];
        let mut prefix = Vec::with_capacity(n);
        self.extend(&mut pending, &mut placed, &mut prefix, &mut visit);
        Ok(())
    }

    fn extend(
        &self,
        pending: &mut [usize],
        placed: &mut [bool],
        prefix: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = self.len();
        if prefix.len() == n {
            return visit(prefix);
        }
        for v in 0..n {
            if placed[v] || pending[v] != 0 {
                continue;
            }
            placed[v] = true;
            prefix.push(v);
            for w in 0..n {
                if self.matrix[v][w] {
                    pending[w] -= 1;
                }
            }
            let go_on = self.extend(pending, placed, prefix, visit);
            for w in 0..n {
                if self.matrix[v][w] {
                    pending[w] += 1;
                }
            }
            prefix.pop();
            placed[v] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    /// One linear extension, built by repeatedly removing a minimal element,
    /// smallest index first.
    pub fn one_extension(&self) -> Result<Vec<usize>, RelationError> {
        let mut remaining: Vec<usize> = (0..self.len()).collect();
        let mut out = Vec::with_capacity(self.len());
        while !remaining.is_empty() {
            let minimal = self.minimal_elements(&remaining)?;
            let Some(&m) = minimal.iter().min() else {
                return Err(self.cyclic_error());
            };
            out.push(m);
            remaining.retain(|&x| x != m);
        }
        Ok(out)
    }

    /// Whether `order` (a permutation of the elements) contains the relation.
    pub fn is_extension(&self, order: &[usize]) -> bool {
        let n = self.len();
        if order.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        self.pairs().into_iter().all(|(a, b)| pos[a] < pos[b])
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.to_string(),
            "elements": self.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "pairs": self
                .named_pairs()
                .into_iter()
                .map(|(a, b)| vec![a.to_string(), b.to_string()])
                .collect::<Vec<_>>(),
        })
    }
}

/// `(F1, F2)` iff some edge lies on both the codomain of F1 and the domain of F2.
pub fn triangle_relation(scheme: &PastingScheme) -> FaceRelation {
    let faces = scheme.faces();
    let mut rel = FaceRelation::empty(scheme.face_ids(), RelationKind::Triangle);
    for (i, f1) in faces.iter().enumerate() {
        for (j, f2) in faces.iter().enumerate() {
            if f1.tau.edges.iter().any(|e| f2.sigma.edges.contains(e)) {
                rel.insert(i, j);
            }
        }
    }
    rel
}

/// `(F1, F2)` iff `t_F1 = s_F2` or `s_F2` is reachable from `t_F1`.
pub fn prec_relation(scheme: &PastingScheme) -> FaceRelation {
    let faces = scheme.faces();
    let reach = scheme.reachability();
    let mut rel = FaceRelation::empty(scheme.face_ids(), RelationKind::Prec);
    for (i, f1) in faces.iter().enumerate() {
        for (j, f2) in faces.iter().enumerate() {
            if f1.target == f2.source || reach[f1.target][f2.source] {
                rel.insert(i, j);
            }
        }
    }
    rel
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparabilityReport {
    pub pairs_checked: usize,
    /// Unordered pairs where closure-incomparability and prec-comparability disagree.
    pub violations: Vec<(String, String)>,
}

impl ComparabilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for every unordered pair of distinct faces, that the pair is
/// incomparable under the closed triangle relation exactly when it is
/// comparable under the prec relation.
pub fn check_comparability(scheme: &PastingScheme) -> ComparabilityReport {
    comparability_between(&triangle_relation(scheme).transitive_closure(), &prec_relation(scheme))
}

pub fn comparability_between(closure: &FaceRelation, prec: &FaceRelation) -> ComparabilityReport {
    let n = closure.len();
    let mut report = ComparabilityReport {
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for a in 0..n {
        for b in a + 1..n {
            report.pairs_checked += 1;
            let incomparable = !closure.contains(a, b) && !closure.contains(b, a);
            let ordered = prec.contains(a, b) || prec.contains(b, a);
            if incomparable != ordered {
                report
                    .violations
                    .push((closure.elements()[a].to_string(), closure.elements()[b].to_string()));
            }
        }
    }
    report
}
