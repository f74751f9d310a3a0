//! Equality of words with inverse generators.
//!
//! A word from `x` to `y` is reduced to the zig-zag `n_x · inv(n_y)`, where
//! `n_z` is the canonical forward word from `z` to the normal form. The
//! reduction uses cancellation of inverse pairs plus exchange and hexagon
//! applications on forward generators only, so two parallel words are
//! equal exactly when their reductions meet.

use std::fmt;

use serde::Serialize;

use super::tessellate::{ApplicationKind, RelationApplication, Tessellator};
use super::{FaceString, MorphismWord, RewriteError, RewriteSystem, Step};

/// Applications turning `word` into `n_x · inv(n_y)`, and that zig-zag.
pub fn reduce_to_zigzag(
    tess: &mut Tessellator<'_>,
    word: &MorphismWord,
    normal_form: &FaceString,
) -> Result<(Vec<RelationApplication>, MorphismWord), RewriteError> {
    let sys = tess.system();
    let strings = sys.word_strings(word)?;
    let k = word.len();
    let y = &strings[k];
    let n_y = tess.canonical_word(y, normal_form)?;
    let n_y_strings = sys.word_strings(&n_y)?;

    let mut apps = Vec::new();
    // Nest n_y · inv(n_y) at the end, one cancelling pair at a time.
    for (j, step) in n_y.steps.iter().enumerate() {
        let back = sys.step_at(&n_y_strings[j + 1], step.position);
        let app = RelationApplication {
            kind: ApplicationKind::Cancel,
            at: k + j,
            before: Vec::new(),
            after: vec![*step, back],
        };
        apps.push(app);
    }

    for i in (0..k).rev() {
        let step = word.steps[i];
        let p = step.position;
        if !step.inverse {
            let absorbed = tess.absorb(&strings[i], p, normal_form)?;
            apps.extend(absorbed.into_iter().map(|a| shift(a, i)));
        } else {
            // strings[i + 1] --p--> strings[i] is forward
            let absorbed = tess.absorb(&strings[i + 1], p, normal_form)?;
            apps.extend(absorbed.into_iter().rev().map(|a| shift(a.reversed(), i + 1)));
            apps.push(RelationApplication {
                kind: ApplicationKind::Cancel,
                at: i,
                before: vec![step, Step::forward(p)],
                after: Vec::new(),
            });
        }
    }

    let n_x = tess.canonical_word(&word.source, normal_form)?;
    let mut steps = n_x.steps;
    steps.extend(sys.invert(&n_y)?.steps);
    Ok((
        apps,
        MorphismWord {
            source: word.source.clone(),
            steps,
        },
    ))
}

fn shift(mut a: RelationApplication, by: usize) -> RelationApplication {
    a.at += by;
    a
}

/// Applications turning `w1` into `w2`, two parallel words that may contain
/// inverse generators.
pub fn derive_equal(
    tess: &mut Tessellator<'_>,
    w1: &MorphismWord,
    w2: &MorphismWord,
    normal_form: &FaceString,
) -> Result<Vec<RelationApplication>, RewriteError> {
    let sys = tess.system();
    if w1.source != w2.source || sys.word_target(w1)? != sys.word_target(w2)? {
        return Err(RewriteError::NotParallel("endpoints differ".into()));
    }
    let (mut a1, z1) = reduce_to_zigzag(tess, w1, normal_form)?;
    let (a2, z2) = reduce_to_zigzag(tess, w2, normal_form)?;
    if z1 != z2 {
        return Err(RewriteError::NotParallel("zig-zags differ".into()));
    }
    a1.extend(a2.iter().rev().map(|a| a.reversed()));
    Ok(a1)
}

/// Orientation pattern of an exchange or hexagon instance, by how many of
/// the generators on its first side are forward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupoidCase {
    /// Exchange, both generators forward.
    ExchangeBothForward,
    /// Exchange, both generators inverse.
    ExchangeBothInverse,
    /// Exchange, one of each.
    ExchangeMixed,
    /// Hexagon, all three generators forward.
    HexagonAllForward,
    /// Hexagon, all three inverse.
    HexagonAllInverse,
    /// Hexagon, two forward and one inverse.
    HexagonTwoForward,
    /// Hexagon, one forward and two inverse.
    HexagonOneForward,
}

impl GroupoidCase {
    pub const ALL: [GroupoidCase; 7] = [
        GroupoidCase::ExchangeBothForward,
        GroupoidCase::ExchangeBothInverse,
        GroupoidCase::ExchangeMixed,
        GroupoidCase::HexagonAllForward,
        GroupoidCase::HexagonAllInverse,
        GroupoidCase::HexagonTwoForward,
        GroupoidCase::HexagonOneForward,
    ];

    pub fn label(self) -> &'static str {
        match self {
            GroupoidCase::ExchangeBothForward => "b-i",
            GroupoidCase::ExchangeBothInverse => "b-ii",
            GroupoidCase::ExchangeMixed => "b-iii",
            GroupoidCase::HexagonAllForward => "c-i",
            GroupoidCase::HexagonAllInverse => "c-ii",
            GroupoidCase::HexagonTwoForward => "c-iii",
            GroupoidCase::HexagonOneForward => "c-iv",
        }
    }
}

impl fmt::Display for GroupoidCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Both sides of one exchange or hexagon relation at a given object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub case: GroupoidCase,
    pub left: MorphismWord,
    pub right: MorphismWord,
}

/// Every exchange and hexagon instance at the given objects.
pub fn relation_instances(
    sys: &RewriteSystem,
    objects: &[FaceString],
) -> Result<Vec<RelationInstance>, RewriteError> {
    let mut out = Vec::new();
    for x in objects {
        let n = x.len();
        for p in 0..n.saturating_sub(1) {
            if !sys.is_legal(x, p) {
                continue;
            }
            for q in p + 2..n - 1 {
                if !sys.is_legal(x, q) {
                    continue;
                }
                let left = sys.word_from_positions(x.clone(), &[p, q])?;
                let right = sys.word_from_positions(x.clone(), &[q, p])?;
                let case = match left.steps.iter().filter(|s| !s.inverse).count() {
                    2 => GroupoidCase::ExchangeBothForward,
                    0 => GroupoidCase::ExchangeBothInverse,
                    _ => GroupoidCase::ExchangeMixed,
                };
                out.push(RelationInstance { case, left, right });
            }
            let f = x.faces();
            let hexagon = p + 2 < n
                && sys.is_legal(x, p + 1)
                && !sys.closure().contains(f[p], f[p + 2])
                && !sys.closure().contains(f[p + 2], f[p]);
            if hexagon {
                let left = sys.word_from_positions(x.clone(), &[p, p + 1, p])?;
                let right = sys.word_from_positions(x.clone(), &[p + 1, p, p + 1])?;
                let case = match left.steps.iter().filter(|s| !s.inverse).count() {
                    3 => GroupoidCase::HexagonAllForward,
                    0 => GroupoidCase::HexagonAllInverse,
                    2 => GroupoidCase::HexagonTwoForward,
                    _ => GroupoidCase::HexagonOneForward,
                };
                out.push(RelationInstance { case, left, right });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::FaceRelation;
    use crate::rewrite::tessellate::replay_checked;

    fn chain_system(n: usize) -> RewriteSystem {
        let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        RewriteSystem::from_relations(&FaceRelation::on_indices(n, []), FaceRelation::on_indices(n, pairs))
    }

    #[test]
    fn inverse_pair_reduces_to_identity_zigzag() {
        let sys = chain_system(2);
        let nf = FaceString::new(vec![0, 1]);
        let x = FaceString::new(vec![1, 0]);
        let w = sys.word_from_positions(x.clone(), &[0, 0]).unwrap();
        let mut tess = Tessellator::new(&sys);
        let (apps, z) = reduce_to_zigzag(&mut tess, &w, &nf).unwrap();
        assert_eq!(z.steps, [Step::forward(0), Step::backward(0)]);
        assert_eq!(replay_checked(&sys, &w, &apps).unwrap(), z);
    }

    #[test]
    fn every_relation_instance_is_derivable() {
        let sys = chain_system(4);
        let objects = sys.objects(None).unwrap();
        let nf = sys.normal_form().unwrap();
        let instances = relation_instances(&sys, &objects).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        let mut tess = Tessellator::new(&sys);
        for inst in &instances {
            seen.insert(inst.case);
            let apps = derive_equal(&mut tess, &inst.left, &inst.right, &nf).unwrap();
            assert_eq!(replay_checked(&sys, &inst.left, &apps).unwrap(), inst.right);
        }
        assert_eq!(seen.len(), GroupoidCase::ALL.len());
    }

    #[test]
    fn loops_reduce_to_the_identity() {
        let sys = chain_system(3);
        let nf = sys.normal_form().unwrap();
        let x = FaceString::new(vec![1, 2, 0]);
        // around the hexagon and back
        let w = sys.word_from_positions(x.clone(), &[0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(sys.word_target(&w).unwrap(), x);
        let id = MorphismWord::identity(x);
        let mut tess = Tessellator::new(&sys);
        let apps = derive_equal(&mut tess, &w, &id, &nf).unwrap();
        assert_eq!(replay_checked(&sys, &w, &apps).unwrap(), id);
    }
}
