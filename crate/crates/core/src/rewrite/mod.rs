//! The groupoid of composition orders and its oriented rewriting system.
//!
//! Objects are strings of faces that linearly extend the closed triangle
//! relation. A generator swaps two adjacent faces that are incomparable under
//! that closure. A swap is *forward* when the face moving leftward is
//! prec-below the face moving rightward; forward swaps form a terminating,
//! confluent rewriting system whose unique normal form is the string with no
//! adjacent prec-inversion. Backward swaps are the formal inverses.

mod certificate;
mod confluence;
mod groupoid;
mod tessellate;

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::relations::{prec_relation, triangle_relation, FaceRelation, RelationError};
use crate::scheme::{FaceId, PastingScheme};

pub use certificate::{check_contractibility, Certificate, CertificateOptions, Counterexample, TessellationMode};
pub use confluence::{check_unique_normal_form, exchange_edges, local_branchings, Closure, Fork, NormalFormReport};
pub use groupoid::{derive_equal, reduce_to_zigzag, relation_instances, GroupoidCase, RelationInstance};
pub use tessellate::{canonical_word, replay, replay_checked, ApplicationKind, RelationApplication, Tessellator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("{faces} interior faces exceed the limit of {limit}")]
    FaceLimit { faces: usize, limit: usize },
    #[error("unknown face {0}")]
    UnknownFace(String),
    #[error("{0} is not a linear extension of the closed triangle relation")]
    NotAnObject(String),
    #[error("no generator at position {position} of {string}: {reason}")]
    NotApplicable {
        position: usize,
        string: String,
        reason: &'static str,
    },
    #[error("words are not parallel: {0}")]
    NotParallel(String),
    #[error("relation application {index} does not match the word: {reason}")]
    ReplayMismatch { index: usize, reason: String },
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// An object: an ordering of all interior faces, by face index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceString(Vec<usize>);

impl FaceString {
    pub fn new(faces: Vec<usize>) -> Self {
        FaceString(faces)
    }

    pub fn faces(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The string with positions `i` and `i + 1` exchanged.
    pub fn swapped(&self, i: usize) -> FaceString {
        let mut out = self.0.clone();
        out.swap(i, i + 1);
        FaceString(out)
    }
}

/// An applicable forward rewrite: the face `right` at `position + 1` moves
/// in front of `left`, which it is prec-below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Swap {
    pub position: usize,
    pub left: usize,
    pub right: usize,
}

/// One generator in a word: the adjacent swap at `position` of the current
/// string, marked inverse when it is not a forward rewrite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Step {
    pub position: usize,
    pub inverse: bool,
}

impl Step {
    pub fn forward(position: usize) -> Self {
        Step {
            position,
            inverse: false,
        }
    }

    pub fn backward(position: usize) -> Self {
        Step {
            position,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Step {
            position: self.position,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}'", self.position)
        } else {
            write!(f, "{}", self.position)
        }
    }
}

/// A composable sequence of generators starting at `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphismWord {
    pub source: FaceString,
    pub steps: Vec<Step>,
}

impl MorphismWord {
    pub fn identity(source: FaceString) -> Self {
        MorphismWord {
            source,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// True when no step is a formal inverse.
    pub fn is_forward_only(&self) -> bool {
        self.steps.iter().all(|s| !s.inverse)
    }
}

#[derive(Debug, Clone)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(ChaCha8Rng),
}

impl Strategy {
    pub fn random(seed: u64) -> Self {
        Strategy::Random(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Leftmost => "leftmost",
            Strategy::Rightmost => "rightmost",
            Strategy::Random(_) => "random",
        }
    }

    fn pick(&mut self, candidates: &[Swap]) -> Swap {
        match self {
            Strategy::Leftmost => candidates[0],
            Strategy::Rightmost => candidates[candidates.len() - 1],
            Strategy::Random(rng) => candidates[rng.gen_range(0..candidates.len())],
        }
    }
}

/// The rewriting system of a scheme: face names, the closed triangle
/// relation (which fixes the objects) and the prec relation (which orients
/// the generators).
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    ids: Vec<FaceId>,
    index: HashMap<String, usize>,
    closure: FaceRelation,
    prec: FaceRelation,
}

impl RewriteSystem {
    pub fn new(scheme: &PastingScheme) -> Self {
        Self::from_relations(&triangle_relation(scheme), prec_relation(scheme))
    }

    /// Builds a system from explicit relations over the same elements.
    pub fn from_relations(triangle: &FaceRelation, prec: FaceRelation) -> Self {
        assert_eq!(triangle.elements(), prec.elements(), "relations over different faces");
        let ids = triangle.elements().to_vec();
        let index = ids.iter().enumerate().map(|(i, id)| (id.to_string(), i)).collect();
        RewriteSystem {
            ids,
            index,
            closure: triangle.transitive_closure(),
            prec,
        }
    }

    pub fn face_count(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[FaceId] {
        &self.ids
    }

    pub fn closure(&self) -> &FaceRelation {
        &self.closure
    }

    pub fn prec(&self) -> &FaceRelation {
        &self.prec
    }

    pub fn render(&self, s: &FaceString) -> String {
        s.0.iter()
            .map(|&f| self.ids[f].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses face names into a string; it need not be an object.
    pub fn parse_string<S: AsRef<str>>(&self, names: &[S]) -> Result<FaceString, RewriteError> {
        names
            .iter()
            .map(|n| {
                self.index
                    .get(n.as_ref())
                    .copied()
                    .ok_or_else(|| RewriteError::UnknownFace(n.as_ref().to_owned()))
            })
            .collect::<Result<_, _>>()
            .map(FaceString)
    }

    /// Parses face names and checks the result is an object.
    pub fn parse_object<S: AsRef<str>>(&self, names: &[S]) -> Result<FaceString, RewriteError> {
        let s = self.parse_string(names)?;
        if !self.is_object(&s) {
            return Err(RewriteError::NotAnObject(self.render(&s)));
        }
        Ok(s)
    }

    pub fn is_object(&self, s: &FaceString) -> bool {
        self.closure.is_extension(&s.0)
    }

    /// All objects in lexicographic order of face indices.
    pub fn objects(&self, limit: Option<usize>) -> Result<Vec<FaceString>, RewriteError> {
        if let Some(limit) = limit {
            if self.face_count() > limit {
                return Err(RewriteError::FaceLimit {
                    faces: self.face_count(),
                    limit,
                });
            }
        }
        Ok(self
            .closure
            .linear_extensions()?
            .into_iter()
            .map(FaceString)
            .collect())
    }

    /// An arbitrary object, built by minimal-element removal.
    pub fn some_object(&self) -> Result<FaceString, RewriteError> {
        Ok(FaceString(self.closure.one_extension()?))
    }

    /// Whether swapping positions `i`, `i + 1` of an object gives an object.
    pub fn is_legal(&self, s: &FaceString, i: usize) -> bool {
        i + 1 < s.len()
            && !self.closure.contains(s.0[i], s.0[i + 1])
            && !self.closure.contains(s.0[i + 1], s.0[i])
    }

    /// Whether the swap at `i` moves a prec-smaller face leftward.
    pub fn is_forward(&self, s: &FaceString, i: usize) -> bool {
        i + 1 < s.len() && self.prec.contains(s.0[i + 1], s.0[i])
    }

    /// The generator at position `i` of `s`, with its orientation.
    pub fn step_at(&self, s: &FaceString, i: usize) -> Step {
        Step {
            position: i,
            inverse: !self.is_forward(s, i),
        }
    }

    pub fn applicable_rewrites(&self, s: &FaceString) -> Vec<Swap> {
        (0..s.len().saturating_sub(1))
            .filter(|&i| self.is_forward(s, i) && self.is_legal(s, i))
            .map(|i| Swap {
                position: i,
                left: s.0[i],
                right: s.0[i + 1],
            })
            .collect()
    }

    /// Number of pairs `i < j` with `s[j]` prec-below `s[i]`.
    pub fn rho(&self, s: &FaceString) -> usize {
        let n = s.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.prec.contains(s.0[j], s.0[i]))
            .count()
    }

    /// Applies a forward rewrite.
    pub fn apply(&self, s: &FaceString, w: &Swap) -> Result<FaceString, RewriteError> {
        let i = w.position;
        let reason = if i + 1 >= s.len() {
            Some("position out of range")
        } else if s.0[i] != w.left || s.0[i + 1] != w.right {
            Some("faces differ from the swap's pair")
        } else if !self.is_forward(s, i) {
            Some("not a forward rewrite")
        } else if !self.is_legal(s, i) {
            Some("faces are related by the closed triangle relation")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(RewriteError::NotApplicable {
                position: i,
                string: self.render(s),
                reason,
            }),
            None => Ok(s.swapped(i)),
        }
    }

    /// Applies one generator, forward or inverse, checking its orientation mark.
    pub fn apply_step(&self, s: &FaceString, step: Step) -> Result<FaceString, RewriteError> {
        let i = step.position;
        let fail = |reason| RewriteError::NotApplicable {
            position: i,
            string: self.render(s),
            reason,
        };
        if !self.is_legal(s, i) {
            return Err(fail("not a generator here"));
        }
        if step.inverse == self.is_forward(s, i) {
            return Err(fail("orientation mark disagrees with the prec relation"));
        }
        Ok(s.swapped(i))
    }

    /// Every string visited by the word, source first.
    pub fn word_strings(&self, w: &MorphismWord) -> Result<Vec<FaceString>, RewriteError> {
        let mut out = Vec::with_capacity(w.len() + 1);
        let mut cur = w.source.clone();
        for &step in &w.steps {
            let next = self.apply_step(&cur, step)?;
            out.push(std::mem::replace(&mut cur, next));
        }
        out.push(cur);
        Ok(out)
    }

    pub fn word_target(&self, w: &MorphismWord) -> Result<FaceString, RewriteError> {
        Ok(self.word_strings(w)?.pop().expect("non-empty"))
    }

    /// Builds a word from bare positions, deriving orientation marks.
    pub fn word_from_positions(
        &self,
        source: FaceString,
        positions: &[usize],
    ) -> Result<MorphismWord, RewriteError> {
        let mut cur = source.clone();
        let mut steps = Vec::with_capacity(positions.len());
        for &p in positions {
            let step = self.step_at(&cur, p);
            cur = self.apply_step(&cur, step)?;
            steps.push(step);
        }
        Ok(MorphismWord { source, steps })
    }

    /// The inverse word: steps reversed, marks flipped.
    pub fn invert(&self, w: &MorphismWord) -> Result<MorphismWord, RewriteError> {
        Ok(MorphismWord {
            source: self.word_target(w)?,
            steps: w.steps.iter().rev().map(|s| s.inverted()).collect(),
        })
    }

    /// Rewrites until no rewrite applies. The word's length equals `rho(s)`.
    pub fn normalize(&self, s: &FaceString, strategy: &mut Strategy) -> (FaceString, MorphismWord) {
        let mut cur = s.clone();
        let mut steps = Vec::new();
        loop {
            let candidates = self.applicable_rewrites(&cur);
            if candidates.is_empty() {
                break;
            }
            let swap = strategy.pick(&candidates);
            cur = cur.swapped(swap.position);
            steps.push(Step::forward(swap.position));
        }
        (
            cur,
            MorphismWord {
                source: s.clone(),
                steps,
            },
        )
    }

    /// The unique normal form, reached from any object.
    pub fn normal_form(&self) -> Result<FaceString, RewriteError> {
        Ok(self.normalize(&self.some_object()?, &mut Strategy::Leftmost).0)
    }

    /// Whether no adjacent pair is a prec-inversion.
    pub fn is_maximally_ordered(&self, s: &FaceString) -> bool {
        (0..s.len().saturating_sub(1)).all(|i| !self.is_forward(s, i))
    }

    pub fn describe_word(&self, w: &MorphismWord) -> Result<WordReport, RewriteError> {
        let strings = self.word_strings(w)?;
        Ok(WordReport {
            source: self.render(&w.source),
            target: self.render(strings.last().unwrap()),
            steps: w
                .steps
                .iter()
                .zip(&strings)
                .map(|(step, s)| StepReport {
                    position: step.position,
                    inverse: step.inverse,
                    pair: [
                        self.ids[s.0[step.position]].to_string(),
                        self.ids[s.0[step.position + 1]].to_string(),
                    ],
                })
                .collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub position: usize,
    pub inverse: bool,
    /// Faces at `position` and `position + 1` before the step.
    pub pair: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordReport {
    pub source: String,
    pub target: String,
    pub steps: Vec<StepReport>,
}
