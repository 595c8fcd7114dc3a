//! Structured problem-file edits: a `Delta` of add/replace/delete lines over
//! the `:objects` and `:init` sections, with the JSON wire format used by the
//! edit-generating translator.
//!
//! Apply order is deletes, then replaces, then adds, with the objects section
//! processed before init so a rename-then-extend sequence is well-defined.
//! An objects replace renames the old name in every init fact. Line matching
//! is on canonical form, so cosmetic whitespace differences do not break
//! edits, and repeated adds are idempotent.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::{Atom, Condition, ProblemFile, TypedName};
use crate::parse::{parse_fact_line, parse_object_line};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionDelta<T: Ord> {
    pub add: Vec<T>,
    pub replace: Vec<(T, T)>,
    pub delete: Vec<T>,
}

impl<T: Ord> Default for SectionDelta<T> {
    fn default() -> Self {
        SectionDelta {
            add: Vec::new(),
            replace: Vec::new(),
            delete: Vec::new(),
        }
    }
}

impl<T: Ord + Clone> SectionDelta<T> {
    pub fn is_empty(&self) -> bool {
        self.add.is_empty() && self.replace.is_empty() && self.delete.is_empty()
    }

    fn normalize(&mut self) {
        self.add.sort();
        self.add.dedup();
        self.delete.sort();
        self.delete.dedup();
        self.replace.sort();
        self.replace.dedup();
    }

    /// No line in both add and delete; replace keys disjoint from delete.
    fn check_disjoint(&self) -> bool {
        self.add.iter().all(|l| !self.delete.contains(l))
            && self.replace.iter().all(|(old, _)| !self.delete.contains(old))
    }
}

/// A structured edit over a problem file's objects and init sections.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Delta {
    pub objects: SectionDelta<TypedName>,
    pub init: SectionDelta<Atom>,
}

impl Delta {
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() && self.init.is_empty()
    }

    pub fn normalized(mut self) -> Self {
        self.objects.normalize();
        self.init.normalize();
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaError {
    #[error("malformed delta: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EditError {
    #[error("rename collision: `{old}` -> `{new}` but `{new}` is already declared")]
    RenameCollision { old: String, new: String },
    #[error("goal references undeclared object `{0}`")]
    UndeclaredObject(String),
}

/// Non-fatal oddities noticed while applying a delta.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EditWarning {
    /// A delete (or the old side of a replace) matched nothing.
    DanglingDelete { section: String, line: String },
    /// An objects add re-declared an existing name with a different type.
    ConflictingAdd { line: String, existing_type: String },
}

// ---------------------------------------------------------------------------
// JSON surface
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawSection {
    add: Vec<String>,
    replace: BTreeMap<String, String>,
    delete: Vec<String>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawDelta {
    objects: RawSection,
    init: RawSection,
}

/// Parse the JSON edit format. Missing sections and keys default to empty;
/// unknown keys, non-string lines, and unparseable object/fact lines are all
/// rejected as [`DeltaError::Malformed`].
pub fn parse_delta_json(text: &str) -> Result<Delta, DeltaError> {
    let raw: RawDelta =
        serde_json::from_str(text).map_err(|e| DeltaError::Malformed(e.to_string()))?;

    let objects = SectionDelta {
        add: parse_lines(&raw.objects.add, parse_object_line)?,
        replace: parse_pairs(&raw.objects.replace, parse_object_line)?,
        delete: parse_lines(&raw.objects.delete, parse_object_line)?,
    };
    let init = SectionDelta {
        add: parse_lines(&raw.init.add, parse_fact_line)?,
        replace: parse_pairs(&raw.init.replace, parse_fact_line)?,
        delete: parse_lines(&raw.init.delete, parse_fact_line)?,
    };

    let delta = Delta { objects, init }.normalized();
    if !delta.objects.check_disjoint() || !delta.init.check_disjoint() {
        return Err(DeltaError::Malformed(
            "a line appears in more than one of add/replace/delete".into(),
        ));
    }
    Ok(delta)
}

fn parse_lines<T, F>(lines: &[String], parse: F) -> Result<Vec<T>, DeltaError>
where
    F: Fn(&str) -> Result<T, crate::parse::ParseError>,
{
    lines
        .iter()
        .map(|l| parse(l).map_err(|e| DeltaError::Malformed(format!("`{}`: {}", l, e))))
        .collect()
}

fn parse_pairs<T, F>(map: &BTreeMap<String, String>, parse: F) -> Result<Vec<(T, T)>, DeltaError>
where
    F: Fn(&str) -> Result<T, crate::parse::ParseError>,
{
    map.iter()
        .map(|(old, new)| {
            let o = parse(old).map_err(|e| DeltaError::Malformed(format!("`{}`: {}", old, e)))?;
            let n = parse(new).map_err(|e| DeltaError::Malformed(format!("`{}`: {}", new, e)))?;
            Ok((o, n))
        })
        .collect()
}

/// Serialize a delta back to the JSON wire format, canonically ordered.
pub fn delta_to_json(delta: &Delta) -> String {
    let raw = RawDelta {
        objects: RawSection {
            add: delta.objects.add.iter().map(|o| o.to_string()).collect(),
            replace: delta
                .objects
                .replace
                .iter()
                .map(|(o, n)| (o.to_string(), n.to_string()))
                .collect(),
            delete: delta.objects.delete.iter().map(|o| o.to_string()).collect(),
        },
        init: RawSection {
            add: delta.init.add.iter().map(|a| a.to_string()).collect(),
            replace: delta
                .init
                .replace
                .iter()
                .map(|(o, n)| (o.to_string(), n.to_string()))
                .collect(),
            delete: delta.init.delete.iter().map(|a| a.to_string()).collect(),
        },
    };
    serde_json::to_string_pretty(&raw).expect("delta serialization cannot fail")
}

// ---------------------------------------------------------------------------
// Application
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct AppliedDelta {
    pub problem: ProblemFile,
    pub warnings: Vec<EditWarning>,
}

/// Apply a delta to a problem file. The goal is never touched.
pub fn apply_delta(pf: &ProblemFile, delta: &Delta) -> Result<AppliedDelta, EditError> {
    let mut out = pf.clone();
    let mut warnings = Vec::new();

    // objects: delete, replace (with init rename), add
    for obj in &delta.objects.delete {
        if out.objects.remove(&obj.name).is_none() {
            warnings.push(EditWarning::DanglingDelete {
                section: "objects".into(),
                line: obj.to_string(),
            });
        }
    }
    for (old, new) in &delta.objects.replace {
        if old.name == new.name {
            out.objects.insert(new.name.clone(), new.typ.clone());
            continue;
        }
        if out.objects.contains_key(&new.name) {
            return Err(EditError::RenameCollision {
                old: old.name.clone(),
                new: new.name.clone(),
            });
        }
        if out.objects.remove(&old.name).is_none() {
            warnings.push(EditWarning::DanglingDelete {
                section: "objects".into(),
                line: old.to_string(),
            });
        }
        out.objects.insert(new.name.clone(), new.typ.clone());
        out.init = out
            .init
            .iter()
            .map(|fact| rename_atom(fact, &old.name, &new.name))
            .collect();
    }
    for obj in &delta.objects.add {
        match out.objects.get(&obj.name) {
            Some(t) if *t != obj.typ => warnings.push(EditWarning::ConflictingAdd {
                line: obj.to_string(),
                existing_type: t.clone(),
            }),
            _ => {
                out.objects.insert(obj.name.clone(), obj.typ.clone());
            }
        }
    }

    // init: delete, replace, add
    for fact in &delta.init.delete {
        if !out.init.remove(fact) {
            warnings.push(EditWarning::DanglingDelete {
                section: "init".into(),
                line: fact.to_string(),
            });
        }
    }
    for (old, new) in &delta.init.replace {
        if !out.init.remove(old) {
            warnings.push(EditWarning::DanglingDelete {
                section: "init".into(),
                line: old.to_string(),
            });
        }
        out.init.insert(new.clone());
    }
    for fact in &delta.init.add {
        out.init.insert(fact.clone());
    }

    Ok(AppliedDelta {
        problem: out,
        warnings,
    })
}

fn rename_atom(atom: &Atom, old: &str, new: &str) -> Atom {
    Atom {
        predicate: atom.predicate.clone(),
        args: atom
            .args
            .iter()
            .map(|a| if a == old { new.to_string() } else { a.clone() })
            .collect(),
    }
}

/// Replace the goal, checking that every constant it mentions is declared.
pub fn set_goal(pf: &ProblemFile, goal: Condition) -> Result<ProblemFile, EditError> {
    for atom in goal.atoms() {
        for arg in &atom.args {
            if arg.starts_with('?') || !pf.objects.contains_key(arg) {
                return Err(EditError::UndeclaredObject(arg.clone()));
            }
        }
    }
    let mut out = pf.clone();
    out.goal = goal;
    Ok(out)
}

/// Minimal delta turning `a` into `b` (goal aside): set difference on
/// canonical lines. Renames are not inferred; they come out as delete+add.
pub fn diff_problems(a: &ProblemFile, b: &ProblemFile) -> Delta {
    let mut delta = Delta::default();
    for (name, typ) in &b.objects {
        if a.objects.get(name) != Some(typ) {
            delta.objects.add.push(TypedName {
                name: name.clone(),
                typ: typ.clone(),
            });
        }
    }
    for (name, typ) in &a.objects {
        if !b.objects.contains_key(name) {
            delta.objects.delete.push(TypedName {
                name: name.clone(),
                typ: typ.clone(),
            });
        } else if b.objects.get(name) != Some(typ) {
            // retype shows up as delete of the old line (the add is above)
            delta.objects.delete.push(TypedName {
                name: name.clone(),
                typ: typ.clone(),
            });
        }
    }
    for fact in b.init.difference(&a.init) {
        delta.init.add.push(fact.clone());
    }
    for fact in a.init.difference(&b.init) {
        delta.init.delete.push(fact.clone());
    }
    delta.normalized()
}

/// Facts a delta would remove from the visited set. A non-empty result is a
/// rule violation: visited relations are never deleted.
pub fn visited_deletes(delta: &Delta) -> Vec<Atom> {
    delta
        .init
        .delete
        .iter()
        .chain(delta.init.replace.iter().map(|(old, _)| old))
        .filter(|a| a.predicate == "visited")
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_problem;
    use crate::print::print_problem;

    fn pf(text: &str) -> ProblemFile {
        parse_problem(text).unwrap()
    }

    const STEP1: &str = r#"
(define (problem exploration) (:domain environment)
  (:objects kitchen - location loc1 - location
            north - direction south - direction east - direction west - direction)
  (:init (at kitchen) (visited kitchen)
         (connected kitchen loc1 south) (closed_door kitchen loc1))
  (:goal (at loc1)))
"#;

    #[test]
    fn empty_json_is_empty_delta() {
        let d = parse_delta_json("{}").unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn unknown_top_level_key_rejected() {
        assert!(parse_delta_json(r#"{"goal": {"add": []}}"#).is_err());
    }

    #[test]
    fn unparseable_fact_rejected() {
        assert!(parse_delta_json(r#"{"init":{"add":["(at"]}}"#).is_err());
        assert!(parse_delta_json(r#"{"init":{"add":[42]}}"#).is_err());
    }

    #[test]
    fn overlapping_add_delete_rejected() {
        let err = parse_delta_json(r#"{"init":{"add":["(at kitchen)"],"delete":["(at  KITCHEN)"]}}"#)
            .unwrap_err();
        assert!(matches!(err, DeltaError::Malformed(_)));
    }

    #[test]
    fn apply_empty_delta_is_identity() {
        let p = pf(STEP1);
        let applied = apply_delta(&p, &Delta::default()).unwrap();
        assert_eq!(applied.problem, p);
        assert!(applied.warnings.is_empty());
    }

    #[test]
    fn object_replace_renames_init() {
        let p = pf(STEP1);
        let d = parse_delta_json(
            r#"{"objects":{"replace":{"loc1 - location":"corridor - location"}}}"#,
        )
        .unwrap();
        let applied = apply_delta(&p, &d).unwrap();
        let q = applied.problem;
        assert!(q.objects.contains_key("corridor"));
        assert!(!q.objects.contains_key("loc1"));
        let facts: Vec<String> = q.init.iter().map(|a| a.to_string()).collect();
        assert!(facts.contains(&"(connected kitchen corridor south)".to_string()));
        assert!(facts.contains(&"(closed_door kitchen corridor)".to_string()));
        assert!(!facts.iter().any(|f| f.contains("loc1")));
        // goal untouched by design
        assert_eq!(q.goal.to_string(), "(at loc1)");
    }

    #[test]
    fn rename_collision_is_fatal() {
        let p = pf(STEP1);
        let d = parse_delta_json(
            r#"{"objects":{"replace":{"loc1 - location":"kitchen - location"}}}"#,
        )
        .unwrap();
        assert!(matches!(
            apply_delta(&p, &d),
            Err(EditError::RenameCollision { .. })
        ));
    }

    #[test]
    fn entering_a_room_keeps_one_at_fact() {
        let p = pf(STEP1);
        let d = parse_delta_json(
            r#"{"objects":{"replace":{"loc1 - location":"corridor - location"}},
                "init":{"delete":["(at kitchen)"],
                         "add":["(at corridor)","(visited corridor)"]}}"#,
        )
        .unwrap();
        let q = apply_delta(&p, &d).unwrap().problem;
        let at_count = q.init.iter().filter(|a| a.predicate == "at").count();
        assert_eq!(at_count, 1);
        assert!(q.init.contains(&Atom::new("at", vec!["corridor".into()])));
    }

    #[test]
    fn dangling_delete_is_a_warning() {
        let p = pf(STEP1);
        let d = parse_delta_json(r#"{"init":{"delete":["(at pantry)"]}}"#).unwrap();
        let applied = apply_delta(&p, &d).unwrap();
        assert_eq!(applied.warnings.len(), 1);
        assert_eq!(applied.problem.init, p.init);
    }

    #[test]
    fn adds_are_idempotent() {
        let p = pf(STEP1);
        let d = parse_delta_json(r#"{"init":{"add":["(visited kitchen)","(at kitchen)"]}}"#).unwrap();
        let once = apply_delta(&p, &d).unwrap().problem;
        let twice = apply_delta(&once, &d).unwrap().problem;
        assert_eq!(once, twice);
        assert_eq!(print_problem(&once), print_problem(&twice));
    }

    #[test]
    fn set_goal_checks_objects() {
        let p = pf(STEP1);
        let g = crate::parse::parse_condition("(at pantry)").unwrap();
        assert!(matches!(
            set_goal(&p, g),
            Err(EditError::UndeclaredObject(_))
        ));
        let same = set_goal(&p, p.goal.clone()).unwrap();
        assert_eq!(same, p);
    }

    #[test]
    fn diff_identity_is_empty() {
        let p = pf(STEP1);
        assert!(diff_problems(&p, &p).is_empty());
    }

    #[test]
    fn diff_then_apply_reaches_target() {
        let a = pf(STEP1);
        let mut b = a.clone();
        b.objects.insert("pantry".into(), "location".into());
        b.init.insert(Atom::new("connected", vec!["kitchen".into(), "pantry".into(), "east".into()]));
        b.init.remove(&Atom::new("at", vec!["kitchen".into()]));
        b.init.insert(Atom::new("at", vec!["pantry".into()]));
        let d = diff_problems(&a, &b);
        let c = apply_delta(&a, &d).unwrap().problem;
        assert_eq!(c.objects, b.objects);
        assert_eq!(c.init, b.init);
    }

    #[test]
    fn visited_delete_guard_fires() {
        let d = parse_delta_json(r#"{"init":{"delete":["(visited kitchen)"]}}"#).unwrap();
        assert_eq!(visited_deletes(&d).len(), 1);
        let ok = parse_delta_json(r#"{"init":{"delete":["(at kitchen)"]}}"#).unwrap();
        assert!(visited_deletes(&ok).is_empty());
    }

    #[test]
    fn delta_json_round_trips() {
        let d = parse_delta_json(
            r#"{"objects":{"add":["loc2 - location"]},
                "init":{"add":["(closed_door kitchen loc2)"],"delete":["(at kitchen)"]}}"#,
        )
        .unwrap();
        let json = delta_to_json(&d);
        assert_eq!(parse_delta_json(&json).unwrap(), d);
    }
}
