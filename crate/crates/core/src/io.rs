//! JSON artifacts and cycle notation.
//!
//! Element indices are 0-based everywhere except cycle-notation points,
//! which are 1-based.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::corpus::named;
use crate::error::ParseError;
use crate::group::{Automorphism, Elem, FiniteGroup};
use crate::lattice::IntMatrix;
use crate::wreath::scenarios::{self, Scenario};
use crate::wreath::{SigmaElement, DEFAULT_BUDGET, DEFAULT_WINDOW};

/// Deserializes `text`, reporting the field path together with line and column.
pub fn from_json<T: DeserializeOwned>(text: &str, context: &str) -> Result<T, ParseError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let context = if path == "." {
            context.to_owned()
        } else {
            format!("{context}: field {path}")
        };
        ParseError::json(context, inner)
    })
}

pub fn read_text(path: &Path) -> Result<String, ParseError> {
    std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Permutation of `{0, .., degree-1}` from cycle notation on 1-based points.
///
/// `"()"` and the empty string are the identity. Points within one
/// permutation must be distinct.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<usize>, ParseError> {
    let err = |position: usize, message: String| ParseError::Cycle {
        text: text.to_owned(),
        position,
        message,
    };
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                let open = i;
                i += 1;
                let mut cycle: Vec<(usize, usize)> = Vec::new();
                loop {
                    while i < bytes.len() && matches!(bytes[i], b' ' | b'\t' | b',') {
                        i += 1;
                    }
                    if i >= bytes.len() {
                        return Err(err(open, "unclosed cycle".into()));
                    }
                    if bytes[i] == b')' {
                        i += 1;
                        break;
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(err(start, format!("unexpected character {:?}", bytes[i] as char)));
                    }
                    let p: usize = text[start..i]
                        .parse()
                        .map_err(|_| err(start, "point out of range".into()))?;
                    if p == 0 || p > degree {
                        return Err(err(start, format!("point {p} outside 1..={degree}")));
                    }
                    if std::mem::replace(&mut used[p - 1], true) {
                        return Err(err(start, format!("point {p} appears twice")));
                    }
                    cycle.push((p - 1, start));
                }
                for w in 0..cycle.len() {
                    perm[cycle[w].0] = cycle[(w + 1) % cycle.len()].0;
                }
            }
            c => return Err(err(i, format!("unexpected character {:?}", c as char))),
        }
    }
    Ok(perm)
}

/// Largest point mentioned in cycle notation, ignoring malformed input.
fn max_point(text: &str) -> usize {
    text.split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

/// Group file: a Cayley table or permutation generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_group(group: &FiniteGroup) -> Self {
        GroupFile {
            name: group.name().map(str::to_owned),
            order: Some(group.order()),
            table: Some(group.table()),
            degree: None,
            generators: None,
        }
    }

    pub fn build(&self, context: &str) -> Result<FiniteGroup, ParseError> {
        let group = match (&self.table, &self.generators) {
            (Some(table), None) => {
                if let Some(n) = self.order {
                    if n != table.len() {
                        return Err(ParseError::invalid(
                            format!("{context}: field order"),
                            format!("order {n} but the table has {} rows", table.len()),
                        ));
                    }
                }
                FiniteGroup::from_table(table)?
            }
            (None, Some(gens)) => {
                let degree = self
                    .degree
                    .unwrap_or_else(|| gens.iter().map(|g| max_point(g)).max().unwrap_or(0));
                let perms = gens
                    .iter()
                    .map(|g| parse_cycles(g, degree))
                    .collect::<Result<Vec<_>, _>>()?;
                let perms = if perms.is_empty() { vec![(0..degree).collect()] } else { perms };
                let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { b.iter().map(|&i| a[i]).collect() };
                let (g, _) = FiniteGroup::from_generators(&perms, compose)?;
                if let Some(n) = self.order {
                    if n != g.order() {
                        return Err(ParseError::invalid(
                            format!("{context}: field order"),
                            format!("order {n} but the generators give {}", g.order()),
                        ));
                    }
                }
                g
            }
            _ => {
                return Err(ParseError::invalid(
                    context,
                    "exactly one of \"table\" and \"generators\" is required",
                ))
            }
        };
        Ok(match &self.name {
            Some(n) => group.with_name(n.clone()),
            None => group,
        })
    }
}

pub fn parse_group_json(text: &str, context: &str) -> Result<FiniteGroup, ParseError> {
    from_json::<GroupFile>(text, context)?.build(context)
}

pub fn parse_group_file(path: &Path) -> Result<FiniteGroup, ParseError> {
    parse_group_json(&read_text(path)?, &path.display().to_string())
}

/// A corpus group name, or else a path to a group file.
pub fn resolve_group(spec: &str) -> Result<FiniteGroup, ParseError> {
    let path = Path::new(spec);
    if !path.exists() {
        if let Some(g) = named(spec) {
            return Ok(g);
        }
    }
    parse_group_file(path)
}

pub fn group_to_json(group: &FiniteGroup) -> String {
    serde_json::to_string(&GroupFile::from_group(group)).expect("group file serializes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismFile {
    pub image: Vec<Elem>,
}

pub fn parse_automorphism_json(text: &str, group: &FiniteGroup, context: &str) -> Result<Automorphism, ParseError> {
    let file: AutomorphismFile = from_json(text, context)?;
    Ok(Automorphism::new(group, file.image)?)
}

pub fn parse_automorphism_file(path: &Path, group: &FiniteGroup) -> Result<Automorphism, ParseError> {
    parse_automorphism_json(&read_text(path)?, group, &path.display().to_string())
}

pub fn automorphism_to_json(phi: &Automorphism) -> String {
    serde_json::to_string(&AutomorphismFile {
        image: phi.image().to_vec(),
    })
    .expect("automorphism serializes")
}

/// `{"k": n, "entries": [[..]]}` or a bare array of rows.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Wire(IntMatrix),
    Rows(Vec<Vec<i64>>),
}

impl MatrixInput {
    fn into_matrix(self, context: &str) -> Result<IntMatrix, ParseError> {
        match self {
            MatrixInput::Wire(m) => Ok(m),
            MatrixInput::Rows(r) => {
                IntMatrix::from_i64(&r).map_err(|e| ParseError::invalid(context, e.to_string()))
            }
        }
    }
}

pub fn parse_matrix_json(text: &str, context: &str) -> Result<IntMatrix, ParseError> {
    from_json::<MatrixInput>(text, context)?.into_matrix(context)
}

/// Inline rows such as `[[0,-1],[1,-1]]`, a path to a matrix file, or a
/// single integer for `k = 1`.
pub fn resolve_matrix(spec: &str) -> Result<IntMatrix, ParseError> {
    if let Ok(v) = spec.trim().parse::<i64>() {
        return Ok(IntMatrix::from_i64(&[vec![v]])?);
    }
    if spec.trim_start().starts_with('[') || spec.trim_start().starts_with('{') {
        return parse_matrix_json(spec, "matrix argument");
    }
    let path = Path::new(spec);
    parse_matrix_json(&read_text(path)?, &path.display().to_string())
}

pub fn matrix_to_json(d: &IntMatrix) -> String {
    serde_json::to_string(d).expect("matrix serializes")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(String),
    Inline(GroupFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupRef,
    pub k: usize,
    pub d: serde_json::Value,
    pub b: Vec<SigmaElement>,
    /// Keyed by the decimal index of a generator of `G`.
    pub a0: BTreeMap<String, SigmaElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
}

impl ScenarioFile {
    pub fn from_scenario(sc: &Scenario) -> Self {
        ScenarioFile {
            name: Some(sc.name.clone()),
            group: GroupRef::Inline(GroupFile::from_group(&sc.group)),
            k: sc.k(),
            d: serde_json::to_value(&sc.d).expect("matrix serializes"),
            b: sc.b.clone(),
            a0: sc.a0.iter().map(|(g, s)| (g.to_string(), s.clone())).collect(),
            window: Some(sc.window),
            budget: Some(sc.budget),
        }
    }

    /// `base` resolves relative group paths.
    pub fn build(&self, context: &str, base: Option<&Path>) -> Result<Scenario, ParseError> {
        let group = match &self.group {
            GroupRef::Inline(f) => f.build(&format!("{context}: field group"))?,
            GroupRef::Path(p) => {
                let path: PathBuf = match base {
                    Some(b) if Path::new(p).is_relative() => b.join(p),
                    _ => PathBuf::from(p),
                };
                if !path.exists() {
                    if let Some(g) = named(p) {
                        g
                    } else {
                        parse_group_file(&path)?
                    }
                } else {
                    parse_group_file(&path)?
                }
            }
        };
        let d_ctx = format!("{context}: field d");
        let d: MatrixInput = serde_json::from_value(self.d.clone())
            .map_err(|e| ParseError::invalid(d_ctx.clone(), e.to_string()))?;
        let d = d.into_matrix(&d_ctx)?;
        if d.dim() != self.k {
            return Err(ParseError::invalid(d_ctx, format!("d is {0}x{0} but k = {1}", d.dim(), self.k)));
        }
        let mut a0 = Vec::new();
        for (key, sigma) in &self.a0 {
            let g: Elem = key.parse().map_err(|_| {
                ParseError::invalid(format!("{context}: field a0.{key}"), "key is not an element index")
            })?;
            group
                .check_element(g)
                .map_err(|e| ParseError::invalid(format!("{context}: field a0.{key}"), e.to_string()))?;
            a0.push((g, sigma.clone().canonical(&group)));
        }
        Ok(Scenario {
            name: self.name.clone().unwrap_or_else(|| context.to_owned()),
            b: self.b.iter().map(|s| s.clone().canonical(&group)).collect(),
            group,
            d,
            a0,
            window: self.window.unwrap_or(DEFAULT_WINDOW),
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
        })
    }
}

pub fn parse_scenario_json(text: &str, context: &str, base: Option<&Path>) -> Result<Scenario, ParseError> {
    from_json::<ScenarioFile>(text, context)?.build(context, base)
}

/// A bundled scenario name, or else a path to a scenario file.
pub fn resolve_scenario(spec: &str) -> Result<Scenario, ParseError> {
    let path = Path::new(spec);
    if !path.exists() {
        if let Some(s) = scenarios::by_name(spec) {
            return Ok(s);
        }
    }
    parse_scenario_json(&read_text(path)?, &path.display().to_string(), path.parent())
}

pub fn scenario_to_json(sc: &Scenario) -> String {
    serde_json::to_string_pretty(&ScenarioFile::from_scenario(sc)).expect("scenario serializes")
}

/// A base element from its wire form.
pub fn parse_sigma_json(text: &str, group: &FiniteGroup, context: &str) -> Result<SigmaElement, ParseError> {
    Ok(from_json::<SigmaElement>(text, context)?.canonical(group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;

    #[test]
    fn trivial_group_from_table() {
        let g = parse_group_json(r#"{"order":1,"table":[[0]]}"#, "t").unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn s3_from_generators() {
        let g = parse_group_json(r#"{"generators":["(1 2)","(1 2 3)"]}"#, "t").unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let g = parse_group_json(r#"{"degree":4,"generators":["(1 2)(3 4)"]}"#, "t").unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn cycle_errors_carry_positions() {
        match parse_cycles("(1 2", 3) {
            Err(ParseError::Cycle { position, .. }) => assert_eq!(position, 0),
            other => panic!("{other:?}"),
        }
        match parse_cycles("(1 2)(2 3)", 3) {
            Err(ParseError::Cycle { position, message, .. }) => {
                assert_eq!(position, 6);
                assert!(message.contains("twice"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_cycles("(1 x)", 3), Err(ParseError::Cycle { position: 3, .. })));
        assert!(matches!(parse_cycles("(0 1)", 3), Err(ParseError::Cycle { position: 1, .. })));
        assert_eq!(parse_cycles("(1 3 2)", 3).unwrap(), vec![2, 0, 1]);
        assert_eq!(parse_cycles("()", 2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn json_errors_name_the_field() {
        let e = parse_group_json("{\n\"table\": [[0, 1], [1, \"a\"]]}", "g.json").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("g.json") && msg.contains("table[1][1]") && msg.contains("line 2"), "{msg}");
        let e = parse_group_json(r#"{"order": 3, "table": [[0]]}"#, "g.json").unwrap_err();
        assert!(e.to_string().contains("field order"));
        assert!(parse_group_json(r#"{"table": [[0,0],[0,0]]}"#, "g.json").is_err());
    }

    #[test]
    fn groups_round_trip() {
        for g in Corpus::bundled().groups().iter().take(20) {
            let back = parse_group_json(&group_to_json(g), "rt").unwrap();
            assert_eq!(back.table(), g.table());
            assert_eq!(back.name(), g.name());
        }
    }

    #[test]
    fn automorphisms_and_matrices_round_trip() {
        let g = named("C5").unwrap();
        let phi = parse_automorphism_json(r#"{"image":[0,2,4,1,3]}"#, &g, "a").unwrap();
        assert_eq!(parse_automorphism_json(&automorphism_to_json(&phi), &g, "a").unwrap(), phi);
        assert!(parse_automorphism_json(r#"{"image":[0,2,4,1,1]}"#, &g, "a").is_err());

        let d = resolve_matrix("[[0,-1],[1,-1]]").unwrap();
        assert_eq!(parse_matrix_json(&matrix_to_json(&d), "m").unwrap(), d);
        assert_eq!(resolve_matrix("-1").unwrap(), IntMatrix::from_i64(&[vec![-1]]).unwrap());
    }

    #[test]
    fn scenarios_round_trip() {
        for sc in scenarios::bundled() {
            let text = scenario_to_json(&sc);
            let back = parse_scenario_json(&text, "rt", None).unwrap();
            assert_eq!(scenario_to_json(&back), text);
            assert_eq!(back.a0, sc.a0);
        }
    }

    #[test]
    fn scenario_with_named_group_and_bare_matrix() {
        let text = r#"{"group": "C2", "k": 1, "d": [[-1]], "b": [[]],
                       "a0": {"1": [{"point": [0], "g": 1}]}}"#;
        let sc = parse_scenario_json(text, "s", None).unwrap();
        assert_eq!(sc.window, DEFAULT_WINDOW);
        assert!(sc.automorphism().is_ok());
        let bad = r#"{"group": "C2", "k": 2, "d": [[-1]], "b": [], "a0": {}}"#;
        assert!(parse_scenario_json(bad, "s", None).unwrap_err().to_string().contains("field d"));
        let bad = r#"{"group": "C2", "k": 1, "d": [[-1]], "b": [[]], "a0": {"1": [{"point": [0], "g": "x"}]}}"#;
        assert!(parse_scenario_json(bad, "s", None).unwrap_err().to_string().contains("a0"));
    }
}
