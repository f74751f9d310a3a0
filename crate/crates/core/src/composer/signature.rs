//! Signatures of 0-, 1- and 2-cell symbols and labellings of schemes in them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ComposeError;
use crate::scheme::{PastingScheme, Walk};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell1 {
    pub dom: String,
    pub cod: String,
}

/// A 2-cell between two composable 1-cell paths, each listed first cell first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell2 {
    pub dom: Vec<String>,
    pub cod: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    pub cells0: BTreeSet<String>,
    pub cells1: BTreeMap<String, Cell1>,
    pub cells2: BTreeMap<String, Cell2>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Labelling {
    pub vertex_labels: BTreeMap<String, String>,
    pub edge_labels: BTreeMap<String, String>,
    pub face_labels: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Cells0 {
    List(Vec<String>),
    Map(BTreeMap<String, serde_json::Value>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabellingDocument {
    cells0: Cells0,
    cells1: BTreeMap<String, Cell1>,
    cells2: BTreeMap<String, Cell2>,
    #[serde(default)]
    vertex_labels: BTreeMap<String, String>,
    #[serde(default)]
    edge_labels: BTreeMap<String, String>,
    #[serde(default)]
    face_labels: BTreeMap<String, String>,
}

impl Signature {
    /// Checks that every boundary refers to known symbols and that 2-cell
    /// boundaries are composable paths with common endpoints.
    pub fn validate(&self) -> Result<(), ComposeError> {
        for (name, c) in &self.cells1 {
            for end in [&c.dom, &c.cod] {
                if !self.cells0.contains(end) {
                    return Err(ComposeError::UnknownSymbol {
                        what: "0-cell",
                        name: end.clone(),
                        context: format!("1-cell {name}"),
                    });
                }
            }
        }
        for (name, c) in &self.cells2 {
            let dom = self.path_ends(&c.dom, name)?;
            let cod = self.path_ends(&c.cod, name)?;
            if dom != cod {
                return Err(ComposeError::Signature(format!(
                    "2-cell {name}: domain and codomain paths have different endpoints"
                )));
            }
        }
        Ok(())
    }

    fn path_ends(&self, path: &[String], cell: &str) -> Result<(String, String), ComposeError> {
        let mut ends: Option<(String, String)> = None;
        for one in path {
            let c = self.cells1.get(one).ok_or_else(|| ComposeError::UnknownSymbol {
                what: "1-cell",
                name: one.clone(),
                context: format!("2-cell {cell}"),
            })?;
            ends = match ends {
                None => Some((c.dom.clone(), c.cod.clone())),
                Some((s, t)) if t == c.dom => Some((s, c.cod.clone())),
                Some(_) => {
                    return Err(ComposeError::Signature(format!(
                        "2-cell {cell}: path is not composable at {one}"
                    )))
                }
            };
        }
        ends.ok_or_else(|| ComposeError::Signature(format!("2-cell {cell}: empty boundary path")))
    }
}

/// Parses a labelling document into its signature and labelling.
pub fn parse_labelling(text: &str) -> Result<(Signature, Labelling), ComposeError> {
    let doc: LabellingDocument =
        serde_json::from_str(text).map_err(|e| ComposeError::Malformed(e.to_string()))?;
    let cells0 = match doc.cells0 {
        Cells0::List(v) => v.into_iter().collect(),
        Cells0::Map(m) => m.into_keys().collect(),
    };
    let sig = Signature {
        cells0,
        cells1: doc.cells1,
        cells2: doc.cells2,
    };
    sig.validate()?;
    Ok((
        sig,
        Labelling {
            vertex_labels: doc.vertex_labels,
            edge_labels: doc.edge_labels,
            face_labels: doc.face_labels,
        },
    ))
}

/// The labelling of a scheme in its own free signature: every vertex, edge
/// and face labelled by its id.
pub fn free_labelling(scheme: &PastingScheme) -> (Signature, Labelling) {
    let name = |e: usize| scheme.edge_id(e).to_string();
    let path = |w: &Walk| w.edges.iter().map(|&e| name(e)).collect::<Vec<_>>();
    let sig = Signature {
        cells0: scheme.vertices().iter().map(|v| v.to_string()).collect(),
        cells1: scheme
            .edges()
            .iter()
            .map(|e| {
                (
                    e.id.to_string(),
                    Cell1 {
                        dom: scheme.vertex_id(e.src).to_string(),
                        cod: scheme.vertex_id(e.tgt).to_string(),
                    },
                )
            })
            .collect(),
        cells2: scheme
            .faces()
            .iter()
            .map(|f| {
                (
                    f.id.to_string(),
                    Cell2 {
                        dom: path(&f.sigma),
                        cod: path(&f.tau),
                    },
                )
            })
            .collect(),
    };
    let ident = |ids: Vec<String>| ids.into_iter().map(|i| (i.clone(), i)).collect();
    let lab = Labelling {
        vertex_labels: ident(scheme.vertices().iter().map(|v| v.to_string()).collect()),
        edge_labels: ident(scheme.edges().iter().map(|e| e.id.to_string()).collect()),
        face_labels: ident(scheme.face_ids().iter().map(|f| f.to_string()).collect()),
    };
    (sig, lab)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub cell: String,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabellingReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl LabellingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn lookup<'m>(
    map: &'m BTreeMap<String, String>,
    what: &'static str,
    id: &str,
) -> Result<&'m String, ComposeError> {
    map.get(id).ok_or_else(|| ComposeError::Unlabelled {
        what,
        id: id.to_owned(),
    })
}

/// Checks that the labelling preserves domains and codomains: edge labels
/// run between their endpoint labels, and each face's 2-cell goes from the
/// label of its domain path to the label of its codomain path.
pub fn check_labelling(
    scheme: &PastingScheme,
    sig: &Signature,
    lab: &Labelling,
) -> Result<LabellingReport, ComposeError> {
    let mut report = LabellingReport {
        checked: 0,
        violations: Vec::new(),
    };
    for v in scheme.vertices() {
        let l = lookup(&lab.vertex_labels, "vertex", v.as_str())?;
        if !sig.cells0.contains(l) {
            return Err(ComposeError::UnknownSymbol {
                what: "0-cell",
                name: l.clone(),
                context: format!("vertex {v}"),
            });
        }
    }
    let mut edge_label = Vec::with_capacity(scheme.edges().len());
    for e in scheme.edges() {
        let l = lookup(&lab.edge_labels, "edge", e.id.as_str())?;
        let cell = sig.cells1.get(l).ok_or_else(|| ComposeError::UnknownSymbol {
            what: "1-cell",
            name: l.clone(),
            context: format!("edge {}", e.id),
        })?;
        for (end, v, which) in [(&cell.dom, e.src, "source"), (&cell.cod, e.tgt, "target")] {
            report.checked += 1;
            let found = &lab.vertex_labels[scheme.vertex_id(v).as_str()];
            if found != end {
                report.violations.push(Violation {
                    cell: format!("edge {} {which}", e.id),
                    expected: end.clone(),
                    found: found.clone(),
                });
            }
        }
        edge_label.push(l.clone());
    }
    for f in scheme.faces() {
        let l = lookup(&lab.face_labels, "face", f.id.as_str())?;
        let cell = sig.cells2.get(l).ok_or_else(|| ComposeError::UnknownSymbol {
            what: "2-cell",
            name: l.clone(),
            context: format!("face {}", f.id),
        })?;
        for (want, walk, which) in [(&cell.dom, &f.sigma, "domain"), (&cell.cod, &f.tau, "codomain")] {
            report.checked += 1;
            let found: Vec<String> = walk.edges.iter().map(|&e| edge_label[e].clone()).collect();
            if &found != want {
                report.violations.push(Violation {
                    cell: format!("face {} {which}", f.id),
                    expected: want.join(" "),
                    found: found.join(" "),
                });
            }
        }
    }
    Ok(report)
}
