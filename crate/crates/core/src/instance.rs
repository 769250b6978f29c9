//! JSON instance files.
//!
//! One top-level object per file. `kind` selects which payload section must
//! be present: `morse` for `global_quotient`, `intrinsic` for `intrinsic`,
//! `triangulation` for `simplicial`, and both `morse` and `triangulation` for
//! `comparison`. Permutations are 0-based image arrays, signs are `1`/`-1`
//! and rationals are strings such as `"3/2"`. Critical points, flows and
//! vertices are referred to by label.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{generate_group, group_cap, GroupAction, Perm};
use crate::intrinsic::{OrbifoldCritPoint, OrbifoldFlow, OrbifoldMorseSystem};
use crate::quotient::{CritPoint, EquivariantMorseSystem, Flow, GeneratorAction};
use crate::rational::{Sign, Q};
use crate::simplicial::{GSimplicialComplex, SimplicialComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    GlobalQuotient,
    Intrinsic,
    Simplicial,
    Comparison,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::GlobalQuotient => "global_quotient",
            Kind::Intrinsic => "intrinsic",
            Kind::Simplicial => "simplicial",
            Kind::Comparison => "comparison",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub ambient_dim: usize,
    #[serde(default)]
    pub self_indexing: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morse: Option<MorseSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intrinsic: Option<IntrinsicSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangulation: Option<TriangulationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CritPointSpec {
    pub label: String,
    pub index: usize,
    #[serde(default, with = "crate::rational::serde_opt_q", skip_serializing_if = "Option::is_none")]
    pub value: Option<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSpec {
    pub label: String,
    pub src: String,
    pub dst: String,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorActionSpec {
    pub crit: Vec<usize>,
    pub flows: Vec<usize>,
    pub tau: Vec<Sign>,
}

/// A global quotient `M/G`: group, manifold Morse data and the action of
/// each group generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseSection {
    pub group: GroupSpec,
    pub crit_points: Vec<CritPointSpec>,
    pub flows: Vec<FlowSpec>,
    pub generator_actions: Vec<GeneratorActionSpec>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbifoldCritPointSpec {
    pub label: String,
    pub index: usize,
    pub iso_order: u64,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub orientable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbifoldFlowSpec {
    pub label: String,
    pub src: String,
    pub dst: String,
    pub iso_order: u64,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntrinsicSection {
    pub crit_points: Vec<OrbifoldCritPointSpec>,
    pub flows: Vec<OrbifoldFlowSpec>,
}

/// A G-triangulation: vertex labels, maximal simplices by label, an optional
/// invariant subcomplex and the generators as permutations of the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationSection {
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcomplex: Option<Vec<Vec<String>>>,
    pub vertex_generators: Vec<Vec<usize>>,
    /// Subdivide twice before use.
    #[serde(default)]
    pub regularize: bool,
}

/// Outcomes the corpus runner checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_squared: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_orientable: Option<Vec<String>>,
}

/// 1-based line and column of byte offset `at`.
fn position(text: &str, at: usize) -> (usize, usize) {
    let before = &text[..at.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, column)
}

/// Pins a label error to the first place its quoted label occurs.
fn locate(text: &str, err: Error) -> Error {
    let (label, message) = match &err {
        Error::UnknownLabel { label, .. } | Error::DuplicateLabel(label) => (label.clone(), err.to_string()),
        _ => return err,
    };
    let needle = format!("\"{label}\"");
    let at = match &err {
        Error::DuplicateLabel(_) => text.match_indices(&needle).nth(1).map(|(i, _)| i),
        _ => text.find(&needle),
    };
    match at {
        Some(at) => {
            let (line, column) = position(text, at);
            Error::Parse { line, column, message }
        }
        None => err,
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.check_sections()?;
        // label errors are input errors; everything else is left to validation
        match file.build() {
            Err(e @ (Error::UnknownLabel { .. } | Error::DuplicateLabel(_))) => Err(locate(text, e)),
            _ => Ok(file),
        }
    }

    pub fn load(path: &Path) -> Result<InstanceFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        InstanceFile::parse(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance files serialize");
        s.push('\n');
        s
    }

    fn check_sections(&self) -> Result<()> {
        let (want_m, want_i, want_t) = match self.kind {
            Kind::GlobalQuotient => (true, false, false),
            Kind::Intrinsic => (false, true, false),
            Kind::Simplicial => (false, false, true),
            Kind::Comparison => (true, false, true),
        };
        for (name, want, has) in [
            ("morse", want_m, self.morse.is_some()),
            ("intrinsic", want_i, self.intrinsic.is_some()),
            ("triangulation", want_t, self.triangulation.is_some()),
        ] {
            if want != has {
                let message = if want {
                    format!("{} instance needs a `{name}` section", self.kind)
                } else {
                    format!("{} instance cannot have a `{name}` section", self.kind)
                };
                return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message,
                });
            }
        }
        Ok(())
    }

    /// Builds the mathematical objects; structural checks run here, law
    /// checks are left to the validators.
    pub fn build(&self) -> Result<Instance> {
        self.check_sections()?;
        Ok(match self.kind {
            Kind::GlobalQuotient => Instance::GlobalQuotient(build_morse(self.ambient_dim, self.morse.as_ref().unwrap())?),
            Kind::Intrinsic => Instance::Intrinsic(build_intrinsic(self.ambient_dim, self.intrinsic.as_ref().unwrap())?),
            Kind::Simplicial => Instance::Simplicial(build_triangulation(self.triangulation.as_ref().unwrap())?),
            Kind::Comparison => Instance::Comparison(
                build_morse(self.ambient_dim, self.morse.as_ref().unwrap())?,
                build_triangulation(self.triangulation.as_ref().unwrap())?,
            ),
        })
    }

    pub fn expected(&self) -> Expected {
        self.expected.clone().unwrap_or_default()
    }

    /// Intrinsic instance file for a derived orbifold system.
    pub fn from_intrinsic(name: &str, description: &str, s: &OrbifoldMorseSystem) -> InstanceFile {
        let labels: Vec<&str> = s.crit_points().iter().map(|c| c.label.as_str()).collect();
        InstanceFile {
            kind: Kind::Intrinsic,
            name: name.to_string(),
            description: description.to_string(),
            ambient_dim: s.ambient_dim(),
            self_indexing: false,
            morse: None,
            intrinsic: Some(IntrinsicSection {
                crit_points: s
                    .crit_points()
                    .iter()
                    .map(|c| OrbifoldCritPointSpec {
                        label: c.label.clone(),
                        index: c.index,
                        iso_order: c.iso_order,
                        orientable: c.orientable,
                    })
                    .collect(),
                flows: s
                    .flows()
                    .iter()
                    .map(|f| OrbifoldFlowSpec {
                        label: f.label.clone(),
                        src: labels[f.src].to_string(),
                        dst: labels[f.dst].to_string(),
                        iso_order: f.iso_order,
                        sign: f.sign,
                    })
                    .collect(),
            }),
            triangulation: None,
            expected: None,
        }
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum Instance {
    GlobalQuotient(EquivariantMorseSystem),
    Intrinsic(OrbifoldMorseSystem),
    Simplicial(GSimplicialComplex),
    Comparison(EquivariantMorseSystem, GSimplicialComplex),
}

fn unique_index<'a>(labels: impl Iterator<Item = &'a str>) -> Result<HashMap<&'a str, usize>> {
    let mut out = HashMap::new();
    for (i, l) in labels.enumerate() {
        if out.insert(l, i).is_some() {
            return Err(Error::DuplicateLabel(l.to_string()));
        }
    }
    Ok(out)
}

fn resolve(index: &HashMap<&str, usize>, label: &str, context: &str) -> Result<usize> {
    index.get(label).copied().ok_or_else(|| Error::UnknownLabel {
        label: label.to_string(),
        context: context.to_string(),
    })
}

fn build_morse(ambient_dim: usize, m: &MorseSection) -> Result<EquivariantMorseSystem> {
    let gens = m
        .group
        .generators
        .iter()
        .map(|g| {
            if g.len() != m.group.degree {
                return Err(Error::MalformedPermutation(format!(
                    "generator of length {} for degree {}",
                    g.len(),
                    m.group.degree
                )));
            }
            Perm::new(g.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let group = Arc::new(generate_group(m.group.degree, &gens, group_cap())?);
    let index = unique_index(m.crit_points.iter().map(|c| c.label.as_str()))?;
    unique_index(m.flows.iter().map(|f| f.label.as_str()))?;
    let crit = m
        .crit_points
        .iter()
        .map(|c| CritPoint {
            label: c.label.clone(),
            index: c.index,
            value: c.value.clone(),
        })
        .collect();
    let flows = m
        .flows
        .iter()
        .map(|f| {
            Ok(Flow {
                label: f.label.clone(),
                src: resolve(&index, &f.src, &format!("source of flow `{}`", f.label))?,
                dst: resolve(&index, &f.dst, &format!("target of flow `{}`", f.label))?,
                sign: f.sign,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let actions = m
        .generator_actions
        .iter()
        .map(|a| {
            Ok(GeneratorAction {
                crit: Perm::new(a.crit.clone())?,
                flows: Perm::new(a.flows.clone())?,
                tau: a.tau.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    EquivariantMorseSystem::from_generators(group, ambient_dim, crit, flows, &actions)
}

fn build_intrinsic(ambient_dim: usize, s: &IntrinsicSection) -> Result<OrbifoldMorseSystem> {
    let index = unique_index(s.crit_points.iter().map(|c| c.label.as_str()))?;
    unique_index(s.flows.iter().map(|f| f.label.as_str()))?;
    let crit = s
        .crit_points
        .iter()
        .map(|c| OrbifoldCritPoint {
            label: c.label.clone(),
            index: c.index,
            iso_order: c.iso_order,
            orientable: c.orientable,
        })
        .collect();
    let flows = s
        .flows
        .iter()
        .map(|f| {
            Ok(OrbifoldFlow {
                label: f.label.clone(),
                src: resolve(&index, &f.src, &format!("source of flow `{}`", f.label))?,
                dst: resolve(&index, &f.dst, &format!("target of flow `{}`", f.label))?,
                iso_order: f.iso_order,
                sign: f.sign,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    OrbifoldMorseSystem::new(ambient_dim, crit, flows)
}

fn build_triangulation(t: &TriangulationSection) -> Result<GSimplicialComplex> {
    let k = SimplicialComplex::from_labels(t.vertices.clone(), &t.maximal_simplices)?;
    let n = t.vertices.len();
    let gens = t
        .vertex_generators
        .iter()
        .map(|g| {
            if g.len() != n {
                return Err(Error::MalformedPermutation(format!(
                    "vertex generator of length {} for {n} vertices",
                    g.len()
                )));
            }
            Perm::new(g.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let group = Arc::new(generate_group(n, &gens, group_cap())?);
    let action = GroupAction::from_generator_images(group, t.vertices.clone(), &gens)?;
    let mut gk = GSimplicialComplex::new(k, action)?;
    if let Some(sub) = &t.subcomplex {
        let seen: HashSet<&String> = t.vertices.iter().collect();
        if let Some(v) = sub.iter().flatten().find(|v| !seen.contains(v)) {
            return Err(Error::UnknownLabel {
                label: v.clone(),
                context: "subcomplex".into(),
            });
        }
        let l = SimplicialComplex::from_labels(t.vertices.clone(), sub)?;
        gk = gk.with_subcomplex(l)?;
    }
    Ok(if t.regularize { gk.regularized() } else { gk })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
  "kind": "global_quotient",
  "name": "sphere",
  "ambient_dim": 2,
  "self_indexing": true,
  "morse": {
    "group": { "degree": 1, "generators": [] },
    "crit_points": [
      { "label": "n", "index": 2, "value": "2" },
      { "label": "s", "index": 0, "value": "0" }
    ],
    "flows": [],
    "generator_actions": []
  }
}
"#;

    #[test]
    fn round_trip() {
        let f = InstanceFile::parse(SMALL).unwrap();
        let again = InstanceFile::parse(&f.to_json()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn syntax_error_has_position() {
        let broken = SMALL.replace("\"n\",", "\"n\"");
        match InstanceFile::parse(&broken) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dangling_endpoint_names_label() {
        let bad = SMALL.replace(
            "\"flows\": [],",
            "\"flows\": [ { \"label\": \"g\", \"src\": \"n\", \"dst\": \"zz\", \"sign\": 1 } ],",
        );
        match InstanceFile::parse(&bad) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 12);
                assert!(message.contains("`zz`"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_section_is_rejected() {
        let bad = SMALL.replace("\"global_quotient\"", "\"intrinsic\"");
        assert!(matches!(InstanceFile::parse(&bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn bad_sign_is_rejected() {
        let bad = SMALL.replace(
            "\"flows\": [],",
            "\"flows\": [ { \"label\": \"g\", \"src\": \"n\", \"dst\": \"s\", \"sign\": 2 } ],",
        );
        assert!(matches!(InstanceFile::parse(&bad), Err(Error::Parse { .. })));
    }
}
