//! Consistency checks of a problem file against a domain file.
//!
//! Validation never fails; it returns a list of diagnostics. An empty list
//! means the problem grounds cleanly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ast::{Atom, Condition, DomainFile, ProblemFile, ROOT_TYPE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagnosticKind {
    UndeclaredObject,
    UnknownPredicate,
    ArityMismatch,
    TypeMismatch,
    NonGroundInit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.message)
    }
}

fn diag(kind: DiagnosticKind, message: String) -> Diagnostic {
    Diagnostic { kind, message }
}

/// Check a problem file against a domain. Diagnostics classify undeclared
/// objects, unknown predicates, arity and type mismatches, and non-ground
/// init facts.
pub fn validate_problem(pf: &ProblemFile, df: &DomainFile) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    for (name, typ) in &pf.objects {
        if !df.has_type(typ) {
            out.push(diag(
                DiagnosticKind::TypeMismatch,
                format!("object `{}` has undeclared type `{}`", name, typ),
            ));
        }
    }

    for fact in &pf.init {
        if !fact.is_ground() {
            out.push(diag(
                DiagnosticKind::NonGroundInit,
                format!("init fact {} contains a variable", fact),
            ));
            continue;
        }
        check_atom(fact, "init", pf, df, &mut out);
    }

    check_goal(&pf.goal, pf, df, &mut out);
    out
}

fn check_goal(goal: &Condition, pf: &ProblemFile, df: &DomainFile, out: &mut Vec<Diagnostic>) {
    match goal {
        Condition::Atom(a) | Condition::Not(a) => {
            for arg in &a.args {
                if arg.starts_with('?') {
                    out.push(diag(
                        DiagnosticKind::UndeclaredObject,
                        format!("goal atom {} is not ground", a),
                    ));
                    return;
                }
            }
            check_atom(a, "goal", pf, df, out);
        }
        Condition::And(cs) | Condition::Or(cs) => {
            for c in cs {
                check_goal(c, pf, df, out);
            }
        }
    }
}

fn check_atom(
    atom: &Atom,
    section: &str,
    pf: &ProblemFile,
    df: &DomainFile,
    out: &mut Vec<Diagnostic>,
) {
    let decl = match df.predicate(&atom.predicate) {
        Some(d) => d,
        None => {
            out.push(diag(
                DiagnosticKind::UnknownPredicate,
                format!("{} atom {} uses unknown predicate", section, atom),
            ));
            return;
        }
    };
    if decl.params.len() != atom.args.len() {
        out.push(diag(
            DiagnosticKind::ArityMismatch,
            format!(
                "{} atom {} has {} args, `{}` declares {}",
                section,
                atom,
                atom.args.len(),
                decl.name,
                decl.params.len()
            ),
        ));
        return;
    }
    for (arg, param) in atom.args.iter().zip(&decl.params) {
        match pf.object_type(arg) {
            None => out.push(diag(
                DiagnosticKind::UndeclaredObject,
                format!("{} atom {} uses undeclared object `{}`", section, atom, arg),
            )),
            Some(t) => {
                // flat hierarchy: everything unifies with the root type
                if param.typ != ROOT_TYPE && t != param.typ {
                    out.push(diag(
                        DiagnosticKind::TypeMismatch,
                        format!(
                            "{} atom {}: `{}` is a {}, parameter wants {}",
                            section, atom, arg, t, param.typ
                        ),
                    ));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_domain, parse_problem};

    fn coin_domain() -> DomainFile {
        parse_domain(crate::fixtures::COIN_DOMAIN).unwrap()
    }

    #[test]
    fn empty_problem_is_clean() {
        let pf = parse_problem("(define (problem p) (:domain environment) (:goal (and)))").unwrap();
        assert!(validate_problem(&pf, &coin_domain()).is_empty());
    }

    #[test]
    fn undeclared_object_in_init() {
        let pf = parse_problem(
            "(define (problem p) (:domain environment) (:init (at loc9)) (:goal (and)))",
        )
        .unwrap();
        let diags = validate_problem(&pf, &coin_domain());
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::UndeclaredObject);
    }

    #[test]
    fn arity_mismatch_on_connected() {
        // (connected kitchen south) is arity 2 against the 3-parameter declaration
        let pf = parse_problem(
            "(define (problem p) (:domain environment)
               (:objects kitchen - location south - direction)
               (:init (connected kitchen south)) (:goal (and)))",
        )
        .unwrap();
        let diags = validate_problem(&pf, &coin_domain());
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::ArityMismatch);
    }

    #[test]
    fn type_mismatch_flagged() {
        let pf = parse_problem(
            "(define (problem p) (:domain environment)
               (:objects kitchen - location south - direction)
               (:init (at south)) (:goal (and)))",
        )
        .unwrap();
        let diags = validate_problem(&pf, &coin_domain());
        assert_eq!(diags[0].kind, DiagnosticKind::TypeMismatch);
    }

    #[test]
    fn unknown_predicate_in_goal() {
        let pf = parse_problem(
            "(define (problem p) (:domain environment)
               (:objects kitchen - location)
               (:goal (holding kitchen)))",
        )
        .unwrap();
        let diags = validate_problem(&pf, &coin_domain());
        assert_eq!(diags[0].kind, DiagnosticKind::UnknownPredicate);
    }
}
