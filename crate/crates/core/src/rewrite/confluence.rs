//! Local branchings, their closures, and the unique-normal-form check.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{FaceString, MorphismWord, RewriteError, RewriteSystem, Step, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Closure {
    /// Disjoint positions: `p q` and `q p` meet.
    Square { left: [usize; 2], right: [usize; 2] },
    /// Adjacent positions: `p q p` and `q p q` meet.
    Hexagon { left: [usize; 3], right: [usize; 3] },
}

/// Two distinct rewrites out of one object, with their closing diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fork {
    pub object: FaceString,
    pub first: usize,
    pub second: usize,
    pub closure: Closure,
    pub target: FaceString,
}

fn forward_target(sys: &RewriteSystem, x: &FaceString, positions: &[usize]) -> Option<FaceString> {
    let w = MorphismWord {
        source: x.clone(),
        steps: positions.iter().map(|&p| Step::forward(p)).collect(),
    };
    sys.word_target(&w).ok()
}

/// Closes one fork at `x`, checking both sides are forward words with a
/// common target.
pub fn close_fork(sys: &RewriteSystem, x: &FaceString, p: usize, q: usize) -> Result<Fork, RewriteError> {
    let (p, q) = (p.min(q), p.max(q));
    let closure = if q - p >= 2 {
        Closure::Square {
            left: [p, q],
            right: [q, p],
        }
    } else {
        Closure::Hexagon {
            left: [p, q, p],
            right: [q, p, q],
        }
    };
    let (left, right): (&[usize], &[usize]) = match &closure {
        Closure::Square { left, right } => (left, right),
        Closure::Hexagon { left, right } => (left, right),
    };
    match (forward_target(sys, x, left), forward_target(sys, x, right)) {
        (Some(a), Some(b)) if a == b => Ok(Fork {
            object: x.clone(),
            first: p,
            second: q,
            closure,
            target: a,
        }),
        _ => Err(RewriteError::NotParallel(format!(
            "fork at positions {p}, {q} of {} does not close",
            sys.render(x)
        ))),
    }
}

/// Every unordered pair of distinct rewrites at every object, closed.
pub fn local_branchings(sys: &RewriteSystem, objects: &[FaceString]) -> Result<Vec<Fork>, RewriteError> {
    let mut out = Vec::new();
    for x in objects {
        let rws = sys.applicable_rewrites(x);
        for (i, a) in rws.iter().enumerate() {
            for b in &rws[i + 1..] {
                out.push(close_fork(sys, x, a.position, b.position)?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFormReport {
    pub objects: usize,
    pub exchange_edges: usize,
    pub connected: bool,
    /// Objects admitting no rewrite.
    pub terminal_objects: Vec<String>,
    pub strategy_runs: usize,
    /// `object/strategy` runs that ended elsewhere than the unique terminal object.
    pub disagreements: Vec<String>,
    pub normal_form: Option<String>,
}

impl NormalFormReport {
    pub fn passed(&self) -> bool {
        self.connected && self.terminal_objects.len() == 1 && self.disagreements.is_empty()
    }
}

/// Undirected edges between objects that differ by one generator.
pub fn exchange_edges(sys: &RewriteSystem, objects: &[FaceString]) -> Vec<(usize, usize, usize)> {
    let index: HashMap<&FaceString, usize> = objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut out = Vec::new();
    for (i, x) in objects.iter().enumerate() {
        for p in 0..x.len().saturating_sub(1) {
            if sys.is_legal(x, p) {
                if let Some(&j) = index.get(&x.swapped(p)) {
                    if i < j {
                        out.push((i, j, p));
                    }
                }
            }
        }
    }
    out
}

/// Connectivity of the exchange graph, uniqueness of the terminal object,
/// and agreement of leftmost, rightmost and seeded-random normalization
/// from every object.
pub fn check_unique_normal_form(
    sys: &RewriteSystem,
    objects: &[FaceString],
    seed: u64,
    random_runs: usize,
) -> NormalFormReport {
    let edges = exchange_edges(sys, objects);
    let n = objects.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b, _) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    if n > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }

    let terminal: Vec<&FaceString> = objects
        .iter()
        .filter(|o| sys.applicable_rewrites(o).is_empty())
        .collect();
    let mut report = NormalFormReport {
        objects: n,
        exchange_edges: edges.len(),
        connected: seen.iter().all(|&s| s),
        terminal_objects: terminal.iter().map(|o| sys.render(o)).collect(),
        strategy_runs: 0,
        disagreements: Vec::new(),
        normal_form: (terminal.len() == 1).then(|| sys.render(terminal[0])),
    };

    let mut strategies = vec![Strategy::Leftmost, Strategy::Rightmost];
    strategies.extend((0..random_runs).map(|k| Strategy::random(seed.wrapping_add(k as u64))));
    for x in objects {
        for strat in strategies.iter_mut() {
            let (nf, word) = sys.normalize(x, strat);
            report.strategy_runs += 1;
            let ok = terminal.len() == 1 && &nf == terminal[0] && word.len() == sys.rho(x);
            if !ok {
                report
                    .disagreements
                    .push(format!("{}/{}", sys.render(x), strat.name()));
            }
        }
    }
    report
}
