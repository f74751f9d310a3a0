//! The contractibility certificate: unique normal form, closed forks,
//! replayed tessellations of parallel forward words, and derivations of
//! every exchange and hexagon relation from forward ones.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::confluence::{check_unique_normal_form, local_branchings, Closure};
use super::groupoid::{derive_equal, relation_instances, GroupoidCase};
use super::tessellate::{replay_checked, Tessellator};
use super::{FaceString, MorphismWord, RewriteSystem, Step, Strategy};
use crate::relations::comparability_between;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TessellationMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateOptions {
    /// `None` picks exhaustive below the object and rho thresholds.
    pub mode: Option<TessellationMode>,
    pub seed: u64,
    /// Seeded-random normalization runs per object, besides leftmost and rightmost.
    pub random_strategies: usize,
    pub sample_size: usize,
    pub exhaustive_objects: usize,
    pub exhaustive_rho: usize,
    /// Forward words enumerated per object in exhaustive mode.
    pub words_per_object: usize,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            mode: None,
            seed: 0,
            random_strategies: 5,
            sample_size: 1000,
            exhaustive_objects: 64,
            exhaustive_rho: 8,
            words_per_object: 256,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BranchingSummary {
    pub forks: usize,
    pub squares: usize,
    pub hexagons: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TessellationSummary {
    pub mode: TessellationMode,
    pub seed: u64,
    pub pairs: usize,
    pub applications: usize,
    /// Objects whose forward words were not all enumerated.
    pub truncated_objects: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub faces: usize,
    pub objects: usize,
    pub exchange_edges: usize,
    pub connected: bool,
    pub normal_form: Option<String>,
    pub max_rho: usize,
    pub strategy_runs: usize,
    pub comparability_pairs: usize,
    pub branchings: BranchingSummary,
    pub tessellation: TessellationSummary,
    /// Verified relation instances per orientation case.
    pub groupoid_cases: BTreeMap<String, usize>,
    pub counterexamples: Vec<Counterexample>,
    pub certified: bool,
}

/// All forward words from `x` to a terminal object, at most `cap + 1` of them.
fn forward_words(sys: &RewriteSystem, x: &FaceString, cap: usize) -> Vec<MorphismWord> {
    fn go(sys: &RewriteSystem, x: &FaceString, prefix: &mut Vec<Step>, out: &mut Vec<Vec<Step>>, cap: usize) {
        if out.len() > cap {
            return;
        }
        let rws = sys.applicable_rewrites(x);
        if rws.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for r in rws {
            prefix.push(Step::forward(r.position));
            go(sys, &x.swapped(r.position), prefix, out, cap);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(sys, x, &mut Vec::new(), &mut out, cap);
    out.into_iter()
        .map(|steps| MorphismWord {
            source: x.clone(),
            steps,
        })
        .collect()
}

/// Runs every check over the given objects and bundles the results.
pub fn check_contractibility(
    sys: &RewriteSystem,
    objects: &[FaceString],
    opts: &CertificateOptions,
) -> Certificate {
    let mut bad = Vec::new();
    let mut fail = |kind: &str, detail: String| {
        bad.push(Counterexample {
            kind: kind.to_owned(),
            detail,
        })
    };

    let nf_report = check_unique_normal_form(sys, objects, opts.seed, opts.random_strategies);
    if !nf_report.connected {
        fail("exchange-graph", "exchange graph is disconnected".into());
    }
    if nf_report.terminal_objects.len() != 1 {
        fail(
            "normal-form",
            format!("terminal objects: [{}]", nf_report.terminal_objects.join(", ")),
        );
    }
    for d in &nf_report.disagreements {
        fail("strategy", d.clone());
    }

    let comparability = comparability_between(sys.closure(), sys.prec());
    for (a, b) in &comparability.violations {
        fail("comparability", format!("{a} {b}"));
    }

    let mut max_rho = 0;
    for x in objects {
        let r = sys.rho(x);
        max_rho = max_rho.max(r);
        for w in sys.applicable_rewrites(x) {
            let after = sys.rho(&x.swapped(w.position));
            if after + 1 != r {
                fail(
                    "rho",
                    format!("rewrite at {} of {} takes rho {r} to {after}", w.position, sys.render(x)),
                );
            }
        }
    }

    let mut branchings = BranchingSummary::default();
    match local_branchings(sys, objects) {
        Ok(forks) => {
            branchings.forks = forks.len();
            for f in &forks {
                match f.closure {
                    Closure::Square { .. } => branchings.squares += 1,
                    Closure::Hexagon { .. } => branchings.hexagons += 1,
                }
            }
        }
        Err(e) => fail("fork", e.to_string()),
    }

    let mode = opts.mode.unwrap_or(
        if objects.len() <= opts.exhaustive_objects && max_rho <= opts.exhaustive_rho {
            TessellationMode::Exhaustive
        } else {
            TessellationMode::Sampled
        },
    );
    let mut tess_summary = TessellationSummary {
        mode,
        seed: opts.seed,
        pairs: 0,
        applications: 0,
        truncated_objects: 0,
    };
    let mut cases: BTreeMap<String, usize> =
        GroupoidCase::ALL.iter().map(|c| (c.label().to_owned(), 0)).collect();

    let normal_form = match nf_report.terminal_objects.len() {
        1 => objects
            .iter()
            .find(|o| sys.applicable_rewrites(o).is_empty())
            .cloned(),
        _ => None,
    };
    if let Some(nf) = &normal_form {
        let mut tess = Tessellator::new(sys);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

        let mut pairs: Vec<(MorphismWord, MorphismWord)> = Vec::new();
        match mode {
            TessellationMode::Exhaustive => {
                for x in objects {
                    let mut words = forward_words(sys, x, opts.words_per_object);
                    if words.len() > opts.words_per_object {
                        words.truncate(opts.words_per_object);
                        tess_summary.truncated_objects += 1;
                    }
                    for i in 0..words.len() {
                        for j in i + 1..words.len() {
                            pairs.push((words[i].clone(), words[j].clone()));
                        }
                    }
                }
            }
            TessellationMode::Sampled => {
                for _ in 0..opts.sample_size {
                    let x = &objects[rng.gen_range(0..objects.len())];
                    let (_, w1) = sys.normalize(x, &mut Strategy::random(rng.gen()));
                    let (_, w2) = sys.normalize(x, &mut Strategy::random(rng.gen()));
                    pairs.push((w1, w2));
                }
            }
        }
        for (w1, w2) in &pairs {
            tess_summary.pairs += 1;
            let outcome = tess
                .tessellate(w1, w2)
                .and_then(|apps| replay_checked(sys, w1, &apps).map(|r| (apps.len(), r)));
            match outcome {
                Ok((n, replayed)) if &replayed == w2 => tess_summary.applications += n,
                Ok(_) => fail("tessellation", format!("replay of {w1:?} does not reach {w2:?}")),
                Err(e) => fail("tessellation", e.to_string()),
            }
        }

        match relation_instances(sys, objects) {
            Ok(mut instances) => {
                if mode == TessellationMode::Sampled && instances.len() > opts.sample_size {
                    let mut picked = sample(&mut rng, instances.len(), opts.sample_size).into_vec();
                    picked.sort_unstable();
                    instances = picked.into_iter().map(|i| instances[i].clone()).collect();
                }
                for inst in &instances {
                    let outcome = derive_equal(&mut tess, &inst.left, &inst.right, nf)
                        .and_then(|apps| replay_checked(sys, &inst.left, &apps));
                    match outcome {
                        Ok(r) if r == inst.right => *cases.get_mut(inst.case.label()).unwrap() += 1,
                        Ok(_) => fail("groupoid", format!("{} instance does not replay", inst.case)),
                        Err(e) => fail("groupoid", format!("{}: {e}", inst.case)),
                    }
                }
            }
            Err(e) => fail("groupoid", e.to_string()),
        }
    }

    let certified = bad.is_empty();
    Certificate {
        faces: sys.face_count(),
        objects: objects.len(),
        exchange_edges: nf_report.exchange_edges,
        connected: nf_report.connected,
        normal_form: nf_report.normal_form,
        max_rho,
        strategy_runs: nf_report.strategy_runs,
        comparability_pairs: comparability.pairs_checked,
        branchings,
        tessellation: tess_summary,
        groupoid_cases: cases,
        counterexamples: bad,
        certified,
    }
}
