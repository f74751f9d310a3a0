//! Acceptance suite: one pass/fail line per criterion.
//!
//! Every check compares library output with an oracle computed here from
//! the scheme geometry (reachability, face sides) or by brute force, so a
//! fault in the library cannot hide behind itself.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use graypaste_cli::run;
use graypaste_core::composer::{strict_collapse_equal, Composer, Direction};
use graypaste_core::corpus::{bigons_in_series, random_scheme};
use graypaste_core::relations::{check_comparability, triangle_relation, FaceRelation};
use graypaste_core::rewrite::{
    local_branchings, ApplicationKind, Closure, FaceString, MorphismWord, RelationApplication, RewriteSystem, Step,
    Strategy, Tessellator,
};
use graypaste_core::scheme::{parse_scheme, validate_scheme, PastingScheme};

/// Random schemes in the generated corpus.
const CORPUS_SIZE: usize = 240;
const CORPUS_MAX_FACES: usize = 7;
const CORPUS_SEED: u64 = 0x5eed_2024;
/// Random irreflexive relations and their maximum size.
const RELATION_SAMPLES: usize = 600;
const RELATION_MAX_ELEMENTS: usize = 8;
const RELATION_SEED: u64 = 42;
/// Seeded-random normalization runs per object.
const RANDOM_STRATEGIES: u64 = 5;
/// Tessellation is exhaustive over all word pairs on schemes up to this many objects.
const EXHAUSTIVE_OBJECTS: usize = 64;
const FAST_BUDGET: Duration = Duration::from_secs(1);
const CORPUS_BUDGET: Duration = Duration::from_secs(60);

fn fixture_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn fixture(name: &str) -> PastingScheme {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    validate_scheme(parse_scheme(&text).unwrap()).unwrap()
}

/// Relations recomputed from the geometry.
struct Oracle {
    n: usize,
    prec: Vec<Vec<bool>>,
    closure: Vec<Vec<bool>>,
}

impl Oracle {
    fn new(s: &PastingScheme) -> Self {
        let nv = s.vertices().len();
        let mut adj = vec![Vec::new(); nv];
        for e in s.edges() {
            adj[e.src].push(e.tgt);
        }
        let reach_from = |v: usize| {
            let mut seen = vec![false; nv];
            let mut queue = VecDeque::from([v]);
            seen[v] = true;
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            seen
        };
        let faces = s.faces();
        let n = faces.len();
        let prec = (0..n)
            .map(|a| {
                let r = reach_from(faces[a].target);
                (0..n).map(|b| r[faces[b].source]).collect()
            })
            .collect();
        let mut closure: Vec<Vec<bool>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| faces[a].tau.edges.iter().any(|e| faces[b].sigma.edges.contains(e)))
                    .collect()
            })
            .collect();
        // Repeated relational squaring until stable.
        loop {
            let mut next = closure.clone();
            for a in 0..n {
                for b in 0..n {
                    if !next[a][b] {
                        next[a][b] = (0..n).any(|c| closure[a][c] && closure[c][b]);
                    }
                }
            }
            if next == closure {
                break;
            }
            closure = next;
        }
        Oracle { n, prec, closure }
    }

    fn rho(&self, x: &[usize]) -> usize {
        let mut count = 0;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                if self.prec[x[j]][x[i]] {
                    count += 1;
                }
            }
        }
        count
    }

    fn rewrites(&self, x: &[usize]) -> Vec<usize> {
        (0..x.len().saturating_sub(1))
            .filter(|&i| {
                let (a, b) = (x[i], x[i + 1]);
                !self.closure[a][b] && !self.closure[b][a] && self.prec[b][a]
            })
            .collect()
    }

    fn objects(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        let mut perm: Vec<usize> = (0..self.n).collect();
        permutations(&mut perm, 0, &mut |p| {
            let ok = (0..p.len()).all(|i| (i + 1..p.len()).all(|j| !self.closure[p[j]][p[i]]));
            if ok {
                out.insert(p.to_vec());
            }
        });
        out
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

struct Case {
    name: String,
    scheme: PastingScheme,
}

fn corpus() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut out: Vec<Case> = (0..CORPUS_SIZE)
        .map(|i| Case {
            name: format!("random-{i}"),
            scheme: random_scheme(&mut rng, CORPUS_MAX_FACES),
        })
        .collect();
    for (name, scheme) in fixed_set() {
        out.push(Case { name, scheme });
    }
    out
}

fn fixed_set() -> Vec<(String, PastingScheme)> {
    let mut v: Vec<(String, PastingScheme)> = ["figure1.json", "intro.json", "bigon3.json", "stacked_bigons.json", "bigon.json"]
        .iter()
        .map(|n| (n.to_string(), fixture(n)))
        .collect();
    v.push(("three-bigons".into(), bigons_in_series(3)));
    v.push(("four-bigons".into(), bigons_in_series(4)));
    v
}

type Outcome = Result<String, String>;

fn c1_worked_example() -> Outcome {
    let s = fixture("intro.json");
    let text = std::fs::read_to_string(fixture_path("intro_labels.json")).unwrap();
    let (sig, lab) = graypaste_core::composer::parse_labelling(&text).map_err(|e| e.to_string())?;
    let c = Composer::new(&s, &sig, &lab).map_err(|e| e.to_string())?;
    let sys = RewriteSystem::new(&s);
    let norm = |t: &str| t.split_whitespace().collect::<String>();
    let mut got = Vec::new();
    for order in [["alpha", "beta", "gamma", "phi", "delta"], ["alpha", "gamma", "beta", "phi", "delta"]] {
        let x = sys.parse_object(&order).map_err(|e| e.to_string())?;
        got.push(norm(&c.render(&c.compose(&x).map_err(|e| e.to_string())?)));
    }
    if got != ["mδ·φd·γd·cfβ·cαa", "mδ·φd·gβ·γea·cαa"] {
        return Err(format!("composites {got:?}"));
    }
    let x = sys.parse_object(&["alpha", "gamma", "beta", "phi", "delta"]).unwrap();
    let st = c.interchanger_of(&sys, &x, 1).map_err(|e| e.to_string())?;
    let before: Vec<String> = st.before.iter().map(|e| c.render_entry(e)).collect();
    let after: Vec<String> = st.after.iter().map(|e| c.render_entry(e)).collect();
    if before != ["γea", "gβ"] || after != ["cfβ", "γd"] || st.direction != Direction::Gamma {
        return Err(format!("interchanger {before:?} -> {after:?}"));
    }
    Ok("both composites and the interchange square match".into())
}

fn c2_example_relations() -> Outcome {
    let s = fixture("bigon3.json");
    let sys = RewriteSystem::new(&s);
    let names = |r: &FaceRelation| {
        r.named_pairs()
            .into_iter()
            .map(|(a, b)| format!("{a}<{b}"))
            .collect::<BTreeSet<_>>()
    };
    let tri = names(&triangle_relation(&s));
    let prec = names(sys.prec());
    let want_tri: BTreeSet<String> = ["F1<F2", "F3<F2"].iter().map(|s| s.to_string()).collect();
    let want_prec: BTreeSet<String> = ["F1<F3".to_string()].into();
    if tri != want_tri || names(sys.closure()) != want_tri || prec != want_prec {
        return Err(format!("triangle {tri:?}, prec {prec:?}"));
    }
    let objects: Vec<String> = sys.objects(None).unwrap().iter().map(|o| sys.render(o)).collect();
    if objects.len() != 2 {
        return Err(format!("objects {objects:?}"));
    }
    let from = sys.parse_object(&["F3", "F1", "F2"]).unwrap();
    let rws = sys.applicable_rewrites(&from);
    let nf = sys.normal_form().map_err(|e| e.to_string())?;
    let to = sys.apply(&from, &rws[0]).map_err(|e| e.to_string())?;
    let total: usize = sys.objects(None).unwrap().iter().map(|o| sys.applicable_rewrites(o).len()).sum();
    if total != 1 || sys.render(&to) != "F1 F3 F2" || sys.render(&nf) != "F1 F3 F2" {
        return Err(format!("{total} rewrites, normal form {}", sys.render(&nf)));
    }
    Ok("triangle {F1F2, F3F2}, prec {F1F3}, 2 objects, 1 rewrite, normal form F1 F3 F2".into())
}

/// Every rewrite drops the inversion count by one and every maximal
/// reduction from an object has length equal to its inversion count.
fn termination_holds(sys: &RewriteSystem, oracle: &Oracle) -> Result<usize, String> {
    let objects = sys.objects(None).map_err(|e| e.to_string())?;
    let mut lengths: HashMap<Vec<usize>, BTreeSet<usize>> = HashMap::new();
    // Objects sorted by oracle rho so successors are done first.
    let mut order: Vec<&FaceString> = objects.iter().collect();
    order.sort_by_key(|o| oracle.rho(o.faces()));
    let mut rewrites = 0;
    for x in order {
        let r = oracle.rho(x.faces());
        if sys.rho(x) != r {
            return Err(format!("rho({}) = {} but oracle says {r}", sys.render(x), sys.rho(x)));
        }
        let rws = sys.applicable_rewrites(x);
        let positions: Vec<usize> = rws.iter().map(|w| w.position).collect();
        if positions != oracle.rewrites(x.faces()) {
            return Err(format!("rewrites at {} differ from the oracle", sys.render(x)));
        }
        let mut here = BTreeSet::new();
        if rws.is_empty() {
            here.insert(0);
        }
        for w in rws {
            rewrites += 1;
            let y = sys.apply(x, &w).map_err(|e| e.to_string())?;
            let ry = oracle.rho(y.faces());
            if ry + 1 != r {
                return Err(format!("rewrite {} -> {} changes rho {r} -> {ry}", sys.render(x), sys.render(&y)));
            }
            let below = lengths.get(y.faces()).ok_or("successor not yet visited")?;
            here.extend(below.iter().map(|l| l + 1));
        }
        if here != BTreeSet::from([r]) {
            return Err(format!("maximal reductions from {} have lengths {here:?}, rho {r}", sys.render(x)));
        }
        lengths.insert(x.faces().to_vec(), here);
    }
    Ok(rewrites)
}

/// All strategies from every object reach the one maximally ordered object.
fn unique_normal_form_holds(sys: &RewriteSystem, oracle: &Oracle) -> Result<usize, String> {
    let objects = sys.objects(None).map_err(|e| e.to_string())?;
    let listed: BTreeSet<Vec<usize>> = objects.iter().map(|o| o.faces().to_vec()).collect();
    if listed != oracle.objects() {
        return Err("objects differ from the permutation filter".into());
    }
    let maximal: Vec<&Vec<usize>> = listed.iter().filter(|o| oracle.rewrites(o).is_empty()).collect();
    if maximal.len() != 1 {
        return Err(format!("{} maximally ordered objects", maximal.len()));
    }
    let mut runs = 0;
    for x in &objects {
        let mut strategies = vec![Strategy::Leftmost, Strategy::Rightmost];
        strategies.extend((0..RANDOM_STRATEGIES).map(Strategy::random));
        for mut st in strategies {
            runs += 1;
            let (nf, _) = sys.normalize(x, &mut st);
            if nf.faces() != maximal[0].as_slice() {
                return Err(format!("{} from {} reaches {}", st.name(), sys.render(x), sys.render(&nf)));
            }
        }
    }
    Ok(runs)
}

fn c3_termination(corpus: &[Case]) -> Outcome {
    let mut rewrites = 0;
    for case in corpus {
        let sys = RewriteSystem::new(&case.scheme);
        rewrites += termination_holds(&sys, &Oracle::new(&case.scheme)).map_err(|e| format!("{}: {e}", case.name))?;
    }
    Ok(format!("{} schemes, {rewrites} rewrites each drop rho by 1", corpus.len()))
}

fn c4_unique_normal_form(corpus: &[Case]) -> Outcome {
    let mut runs = 0;
    for case in corpus {
        let sys = RewriteSystem::new(&case.scheme);
        runs += unique_normal_form_holds(&sys, &Oracle::new(&case.scheme)).map_err(|e| format!("{}: {e}", case.name))?;
    }
    Ok(format!("{runs} strategy runs agree"))
}

fn c5_comparability(corpus: &[Case]) -> Outcome {
    let mut pairs = 0;
    for case in corpus {
        let o = Oracle::new(&case.scheme);
        for a in 0..o.n {
            for b in a + 1..o.n {
                pairs += 1;
                let incomparable = !o.closure[a][b] && !o.closure[b][a];
                let ordered = o.prec[a][b] || o.prec[b][a];
                if incomparable != ordered {
                    return Err(format!("{}: faces {a}, {b}", case.name));
                }
            }
        }
        if !check_comparability(&case.scheme).passed() {
            return Err(format!("{}: library comparability check failed", case.name));
        }
    }
    Ok(format!("{pairs} face pairs"))
}

fn c6_acyclicity_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RELATION_SEED);
    let (mut acyclic, mut cyclic) = (0, 0);
    for k in 0..RELATION_SAMPLES {
        let n = rng.gen_range(1..=RELATION_MAX_ELEMENTS);
        let density: f64 = rng.gen_range(0.05..0.5);
        // Half the samples respect a hidden order, so both outcomes occur.
        let hidden: Vec<usize> = {
            let mut v: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                v.swap(i, rng.gen_range(0..=i));
            }
            v
        };
        let ordered = k % 2 == 0;
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && (!ordered || hidden[a] < hidden[b]) && rng.gen_bool(density) {
                    pairs.push((a, b));
                }
            }
        }
        let rel = FaceRelation::on_indices(n, pairs.iter().copied());
        let well_founded = (1u32..1 << n).all(|mask| {
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            subset
                .iter()
                .any(|&m| !subset.iter().any(|&x| pairs.contains(&(x, m))))
        });
        let has_extension = rel.linear_extensions().map(|v| !v.is_empty()).unwrap_or(false);
        if rel.is_acyclic() != well_founded || well_founded != has_extension {
            return Err(format!("sample {k}: acyclic {}, well-founded {well_founded}, extensions {has_extension}", rel.is_acyclic()));
        }
        if well_founded {
            acyclic += 1;
        } else {
            cyclic += 1;
        }
    }
    if acyclic == 0 || cyclic == 0 {
        return Err("samples did not cover both outcomes".into());
    }
    Ok(format!("{RELATION_SAMPLES} relations ({acyclic} acyclic, {cyclic} cyclic)"))
}

fn run_forward(sys: &RewriteSystem, x: &FaceString, positions: &[usize]) -> Option<FaceString> {
    let mut cur = x.clone();
    for &p in positions {
        if !sys.is_legal(&cur, p) || !sys.is_forward(&cur, p) {
            return None;
        }
        cur = cur.swapped(p);
    }
    Some(cur)
}

fn c7_local_confluence(corpus: &[Case]) -> Outcome {
    let (mut squares, mut hexagons) = (0, 0);
    for case in corpus {
        let sys = RewriteSystem::new(&case.scheme);
        let oracle = Oracle::new(&case.scheme);
        let objects = sys.objects(None).unwrap();
        let forks = local_branchings(&sys, &objects).map_err(|e| format!("{}: {e}", case.name))?;
        let expected: usize = objects
            .iter()
            .map(|o| {
                let k = oracle.rewrites(o.faces()).len();
                k * k.saturating_sub(1) / 2
            })
            .sum();
        if forks.len() != expected {
            return Err(format!("{}: {} forks, expected {expected}", case.name, forks.len()));
        }
        for f in &forks {
            let (left, right): (Vec<usize>, Vec<usize>) = match &f.closure {
                Closure::Square { left, right } => {
                    squares += 1;
                    (left.to_vec(), right.to_vec())
                }
                Closure::Hexagon { left, right } => {
                    hexagons += 1;
                    (left.to_vec(), right.to_vec())
                }
            };
            let a = run_forward(&sys, &f.object, &left);
            let b = run_forward(&sys, &f.object, &right);
            if a.is_none() || a != b || a.as_ref() != Some(&f.target) {
                return Err(format!("{}: fork at {} does not close", case.name, sys.render(&f.object)));
            }
        }
    }
    let kinds = |s: &PastingScheme| {
        let sys = RewriteSystem::new(s);
        let forks = local_branchings(&sys, &sys.objects(None).unwrap()).unwrap();
        (
            forks.iter().any(|f| matches!(f.closure, Closure::Square { .. })),
            forks.iter().any(|f| matches!(f.closure, Closure::Hexagon { .. })),
        )
    };
    let fixed: Vec<(bool, bool)> = fixed_set().iter().map(|(_, s)| kinds(s)).collect();
    if !fixed.iter().any(|k| k.0) || !fixed.iter().any(|k| k.1) {
        return Err("fixed set does not exercise both closure kinds".into());
    }
    Ok(format!("{squares} squares, {hexagons} hexagons close"))
}

/// Applies relation applications to a word, checking each against the
/// relation schemas and the word's typing.
fn replay(sys: &RewriteSystem, w: &MorphismWord, apps: &[RelationApplication]) -> Result<MorphismWord, String> {
    let mut steps = w.steps.clone();
    for (i, a) in apps.iter().enumerate() {
        let pos = |v: &[Step]| v.iter().map(|s| s.position).collect::<Vec<_>>();
        let forward = |v: &[Step]| v.iter().all(|s| !s.inverse);
        let ok = match a.kind {
            ApplicationKind::Cancel => {
                let pair = if a.before.is_empty() { &a.after } else { &a.before };
                (a.before.is_empty() != a.after.is_empty())
                    && pair.len() == 2
                    && pair[0].position == pair[1].position
                    && pair[0].inverse != pair[1].inverse
            }
            ApplicationKind::Exchange => {
                let (b, f) = (pos(&a.before), pos(&a.after));
                b.len() == 2
                    && b[0].abs_diff(b[1]) >= 2
                    && f == [b[1], b[0]]
                    && forward(&a.before)
                    && forward(&a.after)
            }
            ApplicationKind::Hexagon => {
                let (b, f) = (pos(&a.before), pos(&a.after));
                b.len() == 3
                    && b[0] == b[2]
                    && b[0].abs_diff(b[1]) == 1
                    && f == [b[1], b[0], b[1]]
                    && forward(&a.before)
                    && forward(&a.after)
            }
        };
        if !ok {
            return Err(format!("application {i} is not an instance of its relation"));
        }
        let end = a.at + a.before.len();
        if end > steps.len() || steps[a.at..end] != a.before[..] {
            return Err(format!("application {i} does not match the word"));
        }
        steps.splice(a.at..end, a.after.iter().copied());
        let word = MorphismWord {
            source: w.source.clone(),
            steps: steps.clone(),
        };
        sys.word_strings(&word).map_err(|e| format!("application {i} leaves an ill-typed word: {e}"))?;
    }
    Ok(MorphismWord {
        source: w.source.clone(),
        steps,
    })
}

fn all_forward_words(sys: &RewriteSystem, x: &FaceString) -> Vec<MorphismWord> {
    fn go(sys: &RewriteSystem, x: &FaceString, prefix: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        let rws = sys.applicable_rewrites(x);
        if rws.is_empty() {
            out.push(prefix.clone());
        }
        for r in rws {
            prefix.push(Step::forward(r.position));
            go(sys, &x.swapped(r.position), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(sys, x, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|steps| MorphismWord {
            source: x.clone(),
            steps,
        })
        .collect()
}

fn c8_tessellation(corpus: &[Case]) -> Outcome {
    let (mut schemes, mut pairs, mut applications) = (0, 0usize, 0usize);
    for case in corpus {
        let sys = RewriteSystem::new(&case.scheme);
        let objects = sys.objects(None).unwrap();
        if objects.len() > EXHAUSTIVE_OBJECTS {
            continue;
        }
        schemes += 1;
        let mut tess = Tessellator::new(&sys);
        for x in &objects {
            let words = all_forward_words(&sys, x);
            for (i, w1) in words.iter().enumerate() {
                for w2 in &words[i + 1..] {
                    pairs += 1;
                    let apps = tess.tessellate(w1, w2).map_err(|e| format!("{}: {e}", case.name))?;
                    applications += apps.len();
                    let got = replay(&sys, w1, &apps).map_err(|e| format!("{}: {e}", case.name))?;
                    if got != *w2 {
                        return Err(format!("{}: replay from {} ends at a different word", case.name, sys.render(x)));
                    }
                }
            }
        }
    }
    Ok(format!("{schemes} schemes, {pairs} word pairs, {applications} applications replayed"))
}

fn c9_strict_collapse(corpus: &[Case]) -> Outcome {
    let mut pairs = 0;
    for case in corpus {
        let c = Composer::free(&case.scheme);
        let sys = RewriteSystem::new(&case.scheme);
        let terms: Vec<_> = sys
            .objects(None)
            .unwrap()
            .iter()
            .map(|o| c.compose(o))
            .collect::<Result<_, _>>()
            .map_err(|e| format!("{}: {e}", case.name))?;
        for (i, t1) in terms.iter().enumerate() {
            for t2 in &terms[i + 1..] {
                pairs += 1;
                if !strict_collapse_equal(t1, t2).map_err(|e| e.to_string())? {
                    return Err(format!("{}: {} and {} differ", case.name, c.render(t1), c.render(t2)));
                }
            }
        }
    }
    Ok(format!("{pairs} composite pairs collapse"))
}

fn c10_certificate(corpus: &[Case]) -> Outcome {
    for name in ["figure1.json", "intro.json"] {
        let out = run(["graypaste", "coherence-check", &fixture_path(name)]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
        if out.code != 0 || v["certified"] != true || v["counterexamples"].as_array().map(Vec::len) != Some(0) {
            return Err(format!("{name}: exit {}, {}", out.code, out.stdout));
        }
    }
    // Flip one prec pair: the oracle-based checks must notice.
    let (mut mutants, mut caught) = (0, 0);
    for case in corpus {
        let oracle = Oracle::new(&case.scheme);
        let tri = triangle_relation(&case.scheme);
        let sys = RewriteSystem::new(&case.scheme);
        let Some(&(a, b)) = sys.prec().pairs().first() else { continue };
        let mut flipped = sys.prec().clone();
        flipped.toggle(a, b);
        flipped.insert(b, a);
        let mutant = RewriteSystem::from_relations(&tri, flipped);
        mutants += 1;
        let t = termination_holds(&mutant, &oracle).is_err();
        let u = unique_normal_form_holds(&mutant, &oracle).is_err();
        if t || u {
            caught += 1;
        }
    }
    if mutants == 0 || caught != mutants {
        return Err(format!("{caught}/{mutants} orientation mutants caught"));
    }
    Ok(format!("both certificates clean; {caught}/{mutants} orientation mutants caught"))
}

fn main() {
    let start = Instant::now();
    let corpus = corpus();
    let built = start.elapsed();
    assert!(corpus.iter().all(|c| c.scheme.faces().len() <= CORPUS_MAX_FACES));
    println!("corpus: {} schemes built in {:.2?}", corpus.len(), built);
    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(usize, &str, Option<Duration>, Check)> = vec![
        (1, "worked-example fidelity", Some(FAST_BUDGET), Box::new(c1_worked_example)),
        (2, "example-relation fidelity", Some(FAST_BUDGET), Box::new(c2_example_relations)),
        (3, "termination measure", Some(CORPUS_BUDGET), Box::new(|| c3_termination(&corpus))),
        (4, "unique normal form", None, Box::new(|| c4_unique_normal_form(&corpus))),
        (5, "comparability", None, Box::new(|| c5_comparability(&corpus))),
        (6, "acyclicity equivalence", Some(CORPUS_BUDGET), Box::new(c6_acyclicity_equivalence)),
        (7, "local confluence", None, Box::new(|| c7_local_confluence(&corpus))),
        (8, "tessellation soundness", None, Box::new(|| c8_tessellation(&corpus))),
        (9, "strict collapse", None, Box::new(|| c9_strict_collapse(&corpus))),
        (10, "contractibility certificate", None, Box::new(|| c10_certificate(&corpus))),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let t = Instant::now();
        let mut result = check();
        let took = t.elapsed();
        if let (Ok(_), Some(b)) = (&result, budget) {
            if took > b {
                result = Err(format!("took {took:.2?}, budget {b:.2?}"));
            }
        }
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {why} [{took:.2?}]");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
