//! Equality of parallel words by diamond tessellation.
//!
//! For a target object `T`, the canonical word from `x` greedily applies the
//! leftmost forward rewrite that does not remove an inversion `T` still has.
//! Every forward word from `x` to `T` is transformed into the canonical one
//! by induction on its length: the first step and the canonical first step
//! form a fork, closed by an exchange square or a hexagon, and the remaining
//! sub-diamonds are handled recursively. The relation applications produced
//! are explicit enough to be replayed without search.

use std::collections::HashMap;
use std::rc::Rc;

use serde::Serialize;

use super::{FaceString, MorphismWord, RewriteError, RewriteSystem, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApplicationKind {
    /// Insert or delete a generator followed by its inverse.
    Cancel,
    /// Exchange two swaps at disjoint positions.
    Exchange,
    /// Replace one side of a hexagon by the other.
    Hexagon,
}

/// Replaces `before` by `after` at step index `at` of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RelationApplication {
    pub kind: ApplicationKind,
    pub at: usize,
    pub before: Vec<Step>,
    pub after: Vec<Step>,
}

impl RelationApplication {
    pub fn reversed(&self) -> Self {
        RelationApplication {
            kind: self.kind,
            at: self.at,
            before: self.after.clone(),
            after: self.before.clone(),
        }
    }

    fn shifted(&self, by: usize) -> Self {
        RelationApplication {
            at: self.at + by,
            ..self.clone()
        }
    }

    /// Whether before/after instantiate the relation schema named by `kind`.
    fn matches_schema(&self) -> bool {
        let pos = |w: &[Step]| w.iter().map(|s| s.position).collect::<Vec<_>>();
        let (b, a) = (&self.before, &self.after);
        match self.kind {
            ApplicationKind::Cancel => {
                let pair = if a.is_empty() { b } else { a };
                (a.is_empty() || b.is_empty())
                    && pair.len() == 2
                    && pair[0].position == pair[1].position
                    && pair[0].inverse != pair[1].inverse
            }
            ApplicationKind::Exchange => {
                b.len() == 2
                    && a.len() == 2
                    && a[0] == b[1]
                    && a[1] == b[0]
                    && b[0].position.abs_diff(b[1].position) >= 2
            }
            ApplicationKind::Hexagon => {
                let (pb, pa) = (pos(b), pos(a));
                pb.len() == 3
                    && pa.len() == 3
                    && pb[0] == pb[2]
                    && pa[0] == pa[2]
                    && pb[0] == pa[1]
                    && pa[0] == pb[1]
                    && pb[0].abs_diff(pb[1]) == 1
            }
        }
    }
}

fn shift_all(apps: &[RelationApplication], by: usize, out: &mut Vec<RelationApplication>) {
    out.extend(apps.iter().map(|a| a.shifted(by)));
}

fn reverse_all(apps: &[RelationApplication], by: usize, out: &mut Vec<RelationApplication>) {
    out.extend(apps.iter().rev().map(|a| a.reversed().shifted(by)));
}

/// Replays relation applications on a word, checking every intermediate
/// word is well typed and keeps the original endpoints.
pub fn replay(
    sys: &RewriteSystem,
    word: &MorphismWord,
    apps: &[RelationApplication],
) -> Result<MorphismWord, RewriteError> {
    replay_with(sys, word, apps, false)
}

/// Like [`replay`], but additionally requires exchange and hexagon
/// applications to involve forward generators only.
pub fn replay_checked(
    sys: &RewriteSystem,
    word: &MorphismWord,
    apps: &[RelationApplication],
) -> Result<MorphismWord, RewriteError> {
    replay_with(sys, word, apps, true)
}

fn replay_with(
    sys: &RewriteSystem,
    word: &MorphismWord,
    apps: &[RelationApplication],
    forward_only: bool,
) -> Result<MorphismWord, RewriteError> {
    let target = sys.word_target(word)?;
    let mut cur = word.clone();
    for (index, app) in apps.iter().enumerate() {
        let fail = |reason: String| RewriteError::ReplayMismatch { index, reason };
        if !app.matches_schema() {
            return Err(fail(format!("{:?} schema not instantiated", app.kind)));
        }
        if forward_only
            && app.kind != ApplicationKind::Cancel
            && app.before.iter().chain(&app.after).any(|s| s.inverse)
        {
            return Err(fail("exchange or hexagon on inverse generators".into()));
        }
        let end = app.at + app.before.len();
        if end > cur.steps.len() || cur.steps[app.at..end] != app.before[..] {
            return Err(fail(format!("window at {} differs", app.at)));
        }
        cur.steps.splice(app.at..end, app.after.iter().copied());
        match sys.word_target(&cur) {
            Ok(t) if t == target => {}
            Ok(_) => return Err(fail("target changed".into())),
            Err(e) => return Err(fail(format!("ill-typed result: {e}"))),
        }
    }
    Ok(cur)
}

/// A target object with its position table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Target {
    string: FaceString,
    position: Vec<usize>,
}

impl Target {
    fn new(string: FaceString) -> Self {
        let mut position = vec![0; string.len()];
        for (i, &f) in string.faces().iter().enumerate() {
            position[f] = i;
        }
        Target { string, position }
    }
}

type MemoKey = (FaceString, usize, FaceString);

/// Builds tessellations, memoizing fork closures between calls.
pub struct Tessellator<'a> {
    sys: &'a RewriteSystem,
    closures: HashMap<MemoKey, Rc<Vec<RelationApplication>>>,
}

impl<'a> Tessellator<'a> {
    pub fn new(sys: &'a RewriteSystem) -> Self {
        Tessellator {
            sys,
            closures: HashMap::new(),
        }
    }

    pub fn system(&self) -> &'a RewriteSystem {
        self.sys
    }

    /// A forward rewrite at `i` of `x` that keeps every inversion of `t`.
    fn allowed(&self, x: &FaceString, i: usize, t: &Target) -> bool {
        let f = x.faces();
        self.sys.is_forward(x, i) && self.sys.is_legal(x, i) && t.position[f[i + 1]] < t.position[f[i]]
    }

    fn first_allowed(&self, x: &FaceString, t: &Target) -> Option<usize> {
        (0..x.len().saturating_sub(1)).find(|&i| self.allowed(x, i, t))
    }

    fn canonical(&self, x: &FaceString, t: &Target) -> Result<Vec<usize>, RewriteError> {
        let mut cur = x.clone();
        let mut out = Vec::new();
        while let Some(i) = self.first_allowed(&cur, t) {
            out.push(i);
            cur = cur.swapped(i);
        }
        if cur != t.string {
            return Err(RewriteError::NotParallel(format!(
                "no forward word from {} to {}",
                self.sys.render(x),
                self.sys.render(&t.string)
            )));
        }
        Ok(out)
    }

    /// Applications turning `[p] ++ canonical(x.p)` into `canonical(x)`.
    fn close(
        &mut self,
        x: &FaceString,
        p: usize,
        t: &Target,
    ) -> Result<Rc<Vec<RelationApplication>>, RewriteError> {
        let key = (x.clone(), p, t.string.clone());
        if let Some(hit) = self.closures.get(&key) {
            return Ok(hit.clone());
        }
        if !self.allowed(x, p, t) {
            return Err(RewriteError::NotParallel(format!(
                "rewrite at {p} of {} cannot be continued to {}",
                self.sys.render(x),
                self.sys.render(&t.string)
            )));
        }
        let q = self.first_allowed(x, t).unwrap_or(p);
        let mut out = Vec::new();
        if q != p {
            let xp = x.swapped(p);
            let xq = x.swapped(q);
            let fwd = Step::forward;
            if p.abs_diff(q) >= 2 {
                reverse_all(&self.close(&xp, q, t)?, 1, &mut out);
                out.push(RelationApplication {
                    kind: ApplicationKind::Exchange,
                    at: 0,
                    before: vec![fwd(p), fwd(q)],
                    after: vec![fwd(q), fwd(p)],
                });
                shift_all(&self.close(&xq, p, t)?, 1, &mut out);
            } else {
                let xpq = xp.swapped(q);
                let xqp = xq.swapped(p);
                reverse_all(&self.close(&xp, q, t)?, 1, &mut out);
                reverse_all(&self.close(&xpq, p, t)?, 2, &mut out);
                out.push(RelationApplication {
                    kind: ApplicationKind::Hexagon,
                    at: 0,
                    before: vec![fwd(p), fwd(q), fwd(p)],
                    after: vec![fwd(q), fwd(p), fwd(q)],
                });
                shift_all(&self.close(&xqp, q, t)?, 2, &mut out);
                shift_all(&self.close(&xq, p, t)?, 1, &mut out);
            }
        }
        let out = Rc::new(out);
        self.closures.insert(key, out.clone());
        Ok(out)
    }

    /// Applications turning a forward word into the canonical word between
    /// the same endpoints.
    fn to_canonical(
        &mut self,
        strings: &[FaceString],
        steps: &[Step],
        t: &Target,
    ) -> Result<Vec<RelationApplication>, RewriteError> {
        let mut out = Vec::new();
        for i in (0..steps.len()).rev() {
            let c = self.close(&strings[i], steps[i].position, t)?;
            shift_all(&c, i, &mut out);
        }
        Ok(out)
    }

    /// The canonical forward word from `x` to `target`.
    pub fn canonical_word(&self, x: &FaceString, target: &FaceString) -> Result<MorphismWord, RewriteError> {
        let positions = self.canonical(x, &Target::new(target.clone()))?;
        Ok(MorphismWord {
            source: x.clone(),
            steps: positions.into_iter().map(Step::forward).collect(),
        })
    }

    /// Relation applications transforming `w1` into `w2`, two parallel
    /// forward words.
    pub fn tessellate(
        &mut self,
        w1: &MorphismWord,
        w2: &MorphismWord,
    ) -> Result<Vec<RelationApplication>, RewriteError> {
        if w1.source != w2.source {
            return Err(RewriteError::NotParallel("sources differ".into()));
        }
        if !w1.is_forward_only() || !w2.is_forward_only() {
            return Err(RewriteError::NotParallel("words contain inverse generators".into()));
        }
        let s1 = self.sys.word_strings(w1)?;
        let s2 = self.sys.word_strings(w2)?;
        if s1.last() != s2.last() {
            return Err(RewriteError::NotParallel("targets differ".into()));
        }
        let t = Target::new(s1.last().unwrap().clone());
        let common = w1
            .steps
            .iter()
            .zip(&w2.steps)
            .take_while(|(a, b)| a == b)
            .count();
        let mut out = Vec::new();
        let a = self.to_canonical(&s1[common..], &w1.steps[common..], &t)?;
        let b = self.to_canonical(&s2[common..], &w2.steps[common..], &t)?;
        shift_all(&a, common, &mut out);
        reverse_all(&b, common, &mut out);
        Ok(out)
    }

    /// Applications turning `[p] ++ n_{x.p}` into `n_x`, where `n_y` is the
    /// canonical word from `y` to `target`.
    pub fn absorb(
        &mut self,
        x: &FaceString,
        p: usize,
        target: &FaceString,
    ) -> Result<Vec<RelationApplication>, RewriteError> {
        let t = Target::new(target.clone());
        Ok(self.close(x, p, &t)?.as_ref().clone())
    }

    pub fn memo_size(&self) -> usize {
        self.closures.len()
    }
}

/// The canonical forward word from `x` to `target`.
pub fn canonical_word(
    sys: &RewriteSystem,
    x: &FaceString,
    target: &FaceString,
) -> Result<MorphismWord, RewriteError> {
    Tessellator::new(sys).canonical_word(x, target)
}
