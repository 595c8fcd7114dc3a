//! Canonical printers. Output is deterministic so that file diffs and
//! structured deltas are well-defined: objects sorted by (type, name),
//! init facts sorted lexicographically, one per line, all lowercase.

use std::fmt::Write;

use crate::ast::{Condition, DomainFile, ProblemFile, Requirement};

/// Canonical `name - type` object lines, sorted by (type, name).
pub fn object_lines(pf: &ProblemFile) -> Vec<String> {
    let mut entries: Vec<(&String, &String)> =
        pf.objects.iter().map(|(n, t)| (t, n)).collect();
    entries.sort();
    entries
        .into_iter()
        .map(|(t, n)| format!("{} - {}", n, t))
        .collect()
}

/// Canonical init fact lines, sorted.
pub fn init_lines(pf: &ProblemFile) -> Vec<String> {
    pf.init.iter().map(|a| a.to_string()).collect()
}

/// Print a problem file in canonical form.
pub fn print_problem(pf: &ProblemFile) -> String {
    let mut out = String::new();
    writeln!(out, "(define (problem {})", pf.name).unwrap();
    writeln!(out, "  (:domain {})", pf.domain).unwrap();
    if pf.objects.is_empty() {
        writeln!(out, "  (:objects)").unwrap();
    } else {
        writeln!(out, "  (:objects").unwrap();
        for line in object_lines(pf) {
            writeln!(out, "    {}", line).unwrap();
        }
        writeln!(out, "  )").unwrap();
    }
    if pf.init.is_empty() {
        writeln!(out, "  (:init)").unwrap();
    } else {
        writeln!(out, "  (:init").unwrap();
        for line in init_lines(pf) {
            writeln!(out, "    {}", line).unwrap();
        }
        writeln!(out, "  )").unwrap();
    }
    writeln!(out, "  (:goal {})", pf.goal).unwrap();
    writeln!(out, ")").unwrap();
    out
}

/// Print a domain file. Section order is fixed; declaration order of
/// predicates and actions is preserved so parse/print round-trips.
pub fn print_domain(df: &DomainFile) -> String {
    let mut out = String::new();
    writeln!(out, "(define (domain {})", df.name).unwrap();
    if !df.requirements.is_empty() {
        let flags: Vec<&str> = [
            Requirement::Strips,
            Requirement::Typing,
            Requirement::NegativePreconditions,
            Requirement::DisjunctivePreconditions,
        ]
        .iter()
        .filter(|r| df.requirements.contains(r))
        .map(|r| r.as_flag())
        .collect();
        writeln!(out, "  (:requirements {})", flags.join(" ")).unwrap();
    }
    if !df.types.is_empty() {
        writeln!(out, "  (:types").unwrap();
        for t in &df.types {
            writeln!(out, "    {}", t).unwrap();
        }
        writeln!(out, "  )").unwrap();
    }
    if !df.predicates.is_empty() {
        writeln!(out, "  (:predicates").unwrap();
        for p in &df.predicates {
            let mut line = format!("({}", p.name);
            for param in &p.params {
                write!(line, " {} - {}", param.name, param.typ).unwrap();
            }
            line.push(')');
            writeln!(out, "    {}", line).unwrap();
        }
        writeln!(out, "  )").unwrap();
    }
    for a in &df.actions {
        writeln!(out, "  (:action {}", a.name).unwrap();
        let mut params = String::new();
        for (i, p) in a.parameters.iter().enumerate() {
            if i > 0 {
                params.push(' ');
            }
            write!(params, "{} - {}", p.name, p.typ).unwrap();
        }
        writeln!(out, "    :parameters ({})", params).unwrap();
        writeln!(out, "    :precondition {}", a.precondition).unwrap();
        writeln!(out, "    :effect {}", print_effect(a)).unwrap();
        writeln!(out, "  )").unwrap();
    }
    writeln!(out, ")").unwrap();
    out
}

fn print_effect(a: &crate::ast::ActionSchema) -> String {
    let lits: Vec<String> = a
        .effects
        .iter()
        .map(|l| {
            if l.negated {
                format!("(not {})", l.atom)
            } else {
                l.atom.to_string()
            }
        })
        .collect();
    match lits.len() {
        1 => lits.into_iter().next().unwrap(),
        _ => format!("(and {})", lits.join(" ")),
    }
}

/// Render a goal condition as a single line.
pub fn print_condition(c: &Condition) -> String {
    c.to_string()
}
