//! Composites of labelled schemes as vertical composites of whiskered
//! 2-cells, and the interchangers relating composites of adjacent orders.
//!
//! Composition starts from the top path and applies faces in string order:
//! each face's domain path is found in the current boundary and replaced by
//! its codomain path. The boundary segment before the domain (source side)
//! is the right whisker, the segment after it (sink side) the left whisker.
//! Terms print right to left, last-applied entry first, in the usual
//! notation `Zαx·...` with whiskers written as composite 1-cells.

mod signature;

use serde::Serialize;
use thiserror::Error;

use crate::rewrite::{FaceString, MorphismWord, RewriteError, RewriteSystem};
use crate::scheme::PastingScheme;

pub use signature::{
    check_labelling, free_labelling, parse_labelling, Cell1, Cell2, Labelling, LabellingReport, Signature,
    Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("malformed labelling document: {0}")]
    Malformed(String),
    #[error("{context} refers to unknown {what} {name}")]
    UnknownSymbol {
        what: &'static str,
        name: String,
        context: String,
    },
    #[error("{what} {id} has no label")]
    Unlabelled { what: &'static str, id: String },
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("labelling does not preserve boundaries ({} violations)", .0.len())]
    Violations(Vec<Violation>),
    #[error("domain of face {face} is not a segment of the boundary {boundary}")]
    NoSegment { face: String, boundary: String },
    #[error("terms have different boundaries")]
    BoundaryMismatch,
    #[error("term does not type-check: {0}")]
    IllTyped(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// One entry of a vertical composite: a face's 2-cell whiskered by the
/// boundary paths on either side of its domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WhiskeredCell {
    pub face: usize,
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    /// Sink-side whisker, as edges in path order.
    pub left: Vec<usize>,
    /// Source-side whisker, as edges in path order.
    pub right: Vec<usize>,
}

impl WhiskeredCell {
    fn domain(&self) -> Vec<usize> {
        [&self.right[..], &self.sigma, &self.left].concat()
    }

    fn codomain(&self) -> Vec<usize> {
        [&self.right[..], &self.tau, &self.left].concat()
    }
}

/// A vertical composite of whiskered cells, in application order, from the
/// top path to the bottom path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeTerm {
    pub entries: Vec<WhiskeredCell>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

impl CompositeTerm {
    /// Checks that each entry's whiskered domain is the running boundary and
    /// that the last codomain is the target.
    pub fn type_check(&self) -> Result<(), ComposeError> {
        let mut boundary = self.source.clone();
        for (i, e) in self.entries.iter().enumerate() {
            if e.domain() != boundary {
                return Err(ComposeError::IllTyped(format!("entry {i} does not match the running boundary")));
            }
            boundary = e.codomain();
        }
        if boundary != self.target {
            return Err(ComposeError::IllTyped("composite does not end at the target path".into()));
        }
        Ok(())
    }

    pub fn faces(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.face).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Sink-side cell first, to source-side cell first.
    Gamma,
    GammaInverse,
}

/// The whiskered Gray cell exchanging two adjacent entries.
///
/// The boundary before the pair reads `outer_source ++ sigma(source_cell) ++
/// middle ++ sigma(sink_cell) ++ outer_sink`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterchangerStep {
    pub position: usize,
    pub direction: Direction,
    pub sink_cell: usize,
    pub source_cell: usize,
    pub outer_sink: Vec<usize>,
    pub middle: Vec<usize>,
    pub outer_source: Vec<usize>,
    /// The two entries before the exchange, in application order.
    pub before: [WhiskeredCell; 2],
    /// The two entries after the exchange, in application order.
    pub after: [WhiskeredCell; 2],
}

fn find_segment(boundary: &[usize], seg: &[usize]) -> Option<usize> {
    if seg.is_empty() || seg.len() > boundary.len() {
        return None;
    }
    (0..=boundary.len() - seg.len()).find(|&i| boundary[i..i + seg.len()] == *seg)
}

/// Applies a face to a boundary, returning the entry and the new boundary.
fn apply_face(
    boundary: &[usize],
    face: usize,
    sigma: &[usize],
    tau: &[usize],
) -> Option<(WhiskeredCell, Vec<usize>)> {
    let at = find_segment(boundary, sigma)?;
    let entry = WhiskeredCell {
        face,
        sigma: sigma.to_vec(),
        tau: tau.to_vec(),
        left: boundary[at + sigma.len()..].to_vec(),
        right: boundary[..at].to_vec(),
    };
    let next = entry.codomain();
    Some((entry, next))
}

/// Recomputes whisker contexts for the given application order.
fn recontextualize(source: &[usize], cells: &[&WhiskeredCell]) -> Option<Vec<WhiskeredCell>> {
    let mut boundary = source.to_vec();
    let mut out = Vec::with_capacity(cells.len());
    for c in cells {
        let (entry, next) = apply_face(&boundary, c.face, &c.sigma, &c.tau)?;
        out.push(entry);
        boundary = next;
    }
    Some(out)
}

/// Whether two composites agree once interchangers are identities, decided
/// by moving source-side entries before commuting sink-side ones in both
/// terms and comparing the results verbatim.
pub fn strict_collapse_equal(t1: &CompositeTerm, t2: &CompositeTerm) -> Result<bool, ComposeError> {
    if t1.source != t2.source || t1.target != t2.target {
        return Err(ComposeError::BoundaryMismatch);
    }
    Ok(strict_normal_form(t1)? == strict_normal_form(t2)?)
}

fn strict_normal_form(t: &CompositeTerm) -> Result<Vec<WhiskeredCell>, ComposeError> {
    t.type_check()?;
    let mut entries = t.entries.clone();
    loop {
        // The later entry lies entirely in the earlier one's source-side whisker.
        let swap = (0..entries.len().saturating_sub(1)).find(|&i| {
            let (x, y) = (&entries[i], &entries[i + 1]);
            y.right.len() + y.sigma.len() <= x.right.len()
        });
        let Some(i) = swap else { break };
        let mut order: Vec<&WhiskeredCell> = entries.iter().collect();
        order.swap(i, i + 1);
        entries = recontextualize(&t.source, &order)
            .ok_or_else(|| ComposeError::IllTyped("exchange left the boundary".into()))?;
    }
    Ok(entries)
}

/// Composes labelled faces of one scheme.
#[derive(Debug, Clone)]
pub struct Composer<'a> {
    scheme: &'a PastingScheme,
    edge_labels: Vec<String>,
    face_labels: Vec<String>,
}

impl<'a> Composer<'a> {
    /// Checks the labelling and prepares label lookups.
    pub fn new(scheme: &'a PastingScheme, sig: &Signature, lab: &Labelling) -> Result<Self, ComposeError> {
        let report = check_labelling(scheme, sig, lab)?;
        if !report.passed() {
            return Err(ComposeError::Violations(report.violations));
        }
        Ok(Composer {
            scheme,
            edge_labels: scheme
                .edges()
                .iter()
                .map(|e| lab.edge_labels[e.id.as_str()].clone())
                .collect(),
            face_labels: scheme
                .faces()
                .iter()
                .map(|f| lab.face_labels[f.id.as_str()].clone())
                .collect(),
        })
    }

    /// Uses the free labelling by ids.
    pub fn free(scheme: &'a PastingScheme) -> Self {
        let (sig, lab) = free_labelling(scheme);
        Self::new(scheme, &sig, &lab).expect("free labelling preserves boundaries")
    }

    pub fn scheme(&self) -> &PastingScheme {
        self.scheme
    }

    fn boundary_after(&self, faces: &[usize], mut boundary: Vec<usize>) -> Result<(Vec<WhiskeredCell>, Vec<usize>), ComposeError> {
        let mut entries = Vec::with_capacity(faces.len());
        for &f in faces {
            let face = &self.scheme.faces()[f];
            let (entry, next) = apply_face(&boundary, f, &face.sigma.edges, &face.tau.edges)
                .ok_or_else(|| ComposeError::NoSegment {
                    face: face.id.to_string(),
                    boundary: self.render_path(&boundary),
                })?;
            entries.push(entry);
            boundary = next;
        }
        Ok((entries, boundary))
    }

    /// The composite of the faces in string order.
    pub fn compose(&self, s: &FaceString) -> Result<CompositeTerm, ComposeError> {
        let (top, bottom) = self.scheme.top_bottom_paths();
        let (entries, end) = self.boundary_after(s.faces(), top.edges.clone())?;
        if end != bottom.edges {
            return Err(ComposeError::IllTyped("composite does not reach the bottom path".into()));
        }
        let term = CompositeTerm {
            entries,
            source: top.edges,
            target: bottom.edges,
        };
        term.type_check()?;
        Ok(term)
    }

    /// Labels of a path, composed right to left and juxtaposed.
    pub fn render_path(&self, path: &[usize]) -> String {
        path.iter().rev().map(|&e| self.edge_labels[e].as_str()).collect()
    }

    pub fn render_entry(&self, e: &WhiskeredCell) -> String {
        format!(
            "{}{}{}",
            self.render_path(&e.left),
            self.face_labels[e.face],
            self.render_path(&e.right)
        )
    }

    /// The term in vertical-composite notation, last-applied entry first.
    pub fn render(&self, t: &CompositeTerm) -> String {
        if t.entries.is_empty() {
            return format!("1_{{{}}}", self.render_path(&t.source));
        }
        t.entries
            .iter()
            .rev()
            .map(|e| self.render_entry(e))
            .collect::<Vec<_>>()
            .join("·")
    }

    pub fn face_label(&self, face: usize) -> &str {
        &self.face_labels[face]
    }

    /// The interchanger for swapping positions `position` and `position + 1`
    /// of the object `s`.
    pub fn interchanger_of(
        &self,
        sys: &RewriteSystem,
        s: &FaceString,
        position: usize,
    ) -> Result<InterchangerStep, ComposeError> {
        if !sys.is_object(s) || !sys.is_legal(s, position) {
            return Err(RewriteError::NotApplicable {
                position,
                string: sys.render(s),
                reason: "not a generator here",
            }
            .into());
        }
        let faces = s.faces();
        let (top, _) = self.scheme.top_bottom_paths();
        let (_, boundary) = self.boundary_after(&faces[..position], top.edges)?;
        let (g, h) = (faces[position], faces[position + 1]);
        let locate = |f: usize| {
            find_segment(&boundary, &self.scheme.faces()[f].sigma.edges).ok_or_else(|| ComposeError::NoSegment {
                face: self.scheme.faces()[f].id.to_string(),
                boundary: self.render_path(&boundary),
            })
        };
        let (at_g, at_h) = (locate(g)?, locate(h)?);
        let (src_cell, snk_cell, at_src, at_snk) = if at_h < at_g { (h, g, at_h, at_g) } else { (g, h, at_g, at_h) };
        let src_len = self.scheme.faces()[src_cell].sigma.len();
        let snk_len = self.scheme.faces()[snk_cell].sigma.len();
        if at_src + src_len > at_snk {
            return Err(ComposeError::IllTyped("swapped faces overlap in the boundary".into()));
        }
        let sink_first = snk_cell == g;
        if sink_first != sys.is_forward(s, position) {
            return Err(ComposeError::IllTyped(
                "prec orientation disagrees with the position of the faces in the boundary".into(),
            ));
        }
        let (before, _) = self.boundary_after(&[g, h], boundary.clone())?;
        let (after, _) = self.boundary_after(&[h, g], boundary.clone())?;
        Ok(InterchangerStep {
            position,
            direction: if sink_first { Direction::Gamma } else { Direction::GammaInverse },
            sink_cell: snk_cell,
            source_cell: src_cell,
            outer_sink: boundary[at_snk + snk_len..].to_vec(),
            middle: boundary[at_src + src_len..at_snk].to_vec(),
            outer_source: boundary[..at_src].to_vec(),
            before: [before[0].clone(), before[1].clone()],
            after: [after[0].clone(), after[1].clone()],
        })
    }

    /// `Zγ_{a,Yb}X`: sink-side context, Gray cell of the sink-side and
    /// source-side cells with the middle context, source-side context.
    pub fn render_step(&self, st: &InterchangerStep) -> String {
        let gamma = match st.direction {
            Direction::Gamma => "γ",
            Direction::GammaInverse => "γ⁻¹",
        };
        format!(
            "{}{gamma}_{{{},{}{}}}{}",
            self.render_path(&st.outer_sink),
            self.face_labels[st.sink_cell],
            self.render_path(&st.middle),
            self.face_labels[st.source_cell],
            self.render_path(&st.outer_source)
        )
    }

    /// One interchanger per generator of the word, each checked to carry the
    /// composite of its source to the composite of its target.
    pub fn word_to_steps(&self, sys: &RewriteSystem, w: &MorphismWord) -> Result<Vec<InterchangerStep>, ComposeError> {
        let strings = sys.word_strings(w)?;
        let mut out = Vec::with_capacity(w.len());
        for (k, step) in w.steps.iter().enumerate() {
            let st = self.interchanger_of(sys, &strings[k], step.position)?;
            let mut term = self.compose(&strings[k])?;
            let i = step.position;
            if term.entries[i..i + 2] != st.before {
                return Err(ComposeError::IllTyped(format!("step {k} does not start at the composite")));
            }
            term.entries.splice(i..i + 2, st.after.iter().cloned());
            if term != self.compose(&strings[k + 1])? {
                return Err(ComposeError::IllTyped(format!("step {k} does not end at the composite")));
            }
            out.push(st);
        }
        Ok(out)
    }
}
