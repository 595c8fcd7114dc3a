//! Grounding: instantiate action schemas over the problem's objects to form
//! a propositional transition system.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use pddlego_pddl::{Atom, Condition, DomainFile, Literal, ProblemFile, TypedName, ROOT_TYPE};

/// Instantiation cap; grounding aborts above this many ground actions.
pub const DEFAULT_GROUND_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroundError {
    #[error("grounding explosion: more than {cap} instantiations")]
    GroundingExplosion { cap: usize },
}

/// A fully instantiated action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundAction {
    /// Schema name; with `args`, this is the binding an environment command
    /// is rendered from.
    pub name: String,
    pub args: Vec<String>,
    pub precondition: Condition,
    pub add_effects: BTreeSet<Atom>,
    pub del_effects: BTreeSet<Atom>,
}

impl GroundAction {
    /// Conventional one-line rendering: `(open_door kitchen loc1)`.
    pub fn display(&self) -> String {
        if self.args.is_empty() {
            format!("({})", self.name)
        } else {
            format!("({} {})", self.name, self.args.join(" "))
        }
    }
}

/// Grounded task: fact universe, ground actions in canonical order, initial
/// state, and goal.
#[derive(Debug, Clone)]
pub struct GroundTask {
    /// Every ground atom referenced by init, actions, or goal.
    pub facts: BTreeSet<Atom>,
    /// Sorted by (name, args) so downstream search is deterministic.
    pub actions: Vec<GroundAction>,
    pub init: BTreeSet<Atom>,
    pub goal: Condition,
}

/// Ground a validated problem against its domain. All type-consistent
/// instantiations are produced, except that parameters sharing a type never
/// bind the same constant (no action in this fragment self-loops).
pub fn ground(df: &DomainFile, pf: &ProblemFile) -> Result<GroundTask, GroundError> {
    ground_with_cap(df, pf, DEFAULT_GROUND_CAP)
}

pub fn ground_with_cap(
    df: &DomainFile,
    pf: &ProblemFile,
    cap: usize,
) -> Result<GroundTask, GroundError> {
    let mut by_type: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (name, typ) in &pf.objects {
        by_type.entry(typ.as_str()).or_default().push(name.as_str());
    }
    let all: Vec<&str> = pf.objects.keys().map(|s| s.as_str()).collect();

    let mut actions = Vec::new();
    for schema in &df.actions {
        let candidates: Vec<&[&str]> = schema
            .parameters
            .iter()
            .map(|p| {
                if p.typ == ROOT_TYPE {
                    all.as_slice()
                } else {
                    by_type.get(p.typ.as_str()).map(|v| v.as_slice()).unwrap_or(&[])
                }
            })
            .collect();
        let mut binding: Vec<&str> = Vec::with_capacity(schema.parameters.len());
        instantiate(schema, &candidates, &mut binding, &mut actions, cap)?;
    }
    actions.sort_by(|a, b| (&a.name, &a.args).cmp(&(&b.name, &b.args)));

    let mut facts: BTreeSet<Atom> = pf.init.clone();
    for action in &actions {
        facts.extend(action.precondition.atoms().into_iter().cloned());
        facts.extend(action.add_effects.iter().cloned());
        facts.extend(action.del_effects.iter().cloned());
    }
    facts.extend(pf.goal.atoms().into_iter().cloned());

    Ok(GroundTask {
        facts,
        actions,
        init: pf.init.clone(),
        goal: pf.goal.clone(),
    })
}

fn instantiate<'a>(
    schema: &pddlego_pddl::ActionSchema,
    candidates: &[&'a [&'a str]],
    binding: &mut Vec<&'a str>,
    out: &mut Vec<GroundAction>,
    cap: usize,
) -> Result<(), GroundError> {
    let params: &[TypedName] = &schema.parameters;
    if binding.len() == params.len() {
        if out.len() >= cap {
            return Err(GroundError::GroundingExplosion { cap });
        }
        out.push(bind(schema, binding));
        return Ok(());
    }
    let idx = binding.len();
    let typ = &params[idx].typ;
    for &obj in candidates[idx] {
        // same-typed parameters never share a constant
        let clash = params[..idx]
            .iter()
            .zip(binding.iter())
            .any(|(p, &b)| p.typ == *typ && b == obj);
        if clash {
            continue;
        }
        binding.push(obj);
        instantiate(schema, candidates, binding, out, cap)?;
        binding.pop();
    }
    Ok(())
}

fn bind(schema: &pddlego_pddl::ActionSchema, binding: &[&str]) -> GroundAction {
    let map: BTreeMap<&str, &str> = schema
        .parameters
        .iter()
        .map(|p| p.name.as_str())
        .zip(binding.iter().copied())
        .collect();
    let subst_atom = |a: &Atom| Atom {
        predicate: a.predicate.clone(),
        args: a
            .args
            .iter()
            .map(|arg| map.get(arg.as_str()).map(|s| s.to_string()).unwrap_or_else(|| arg.clone()))
            .collect(),
    };

    let mut add_effects = BTreeSet::new();
    let mut del_effects = BTreeSet::new();
    for Literal { atom, negated } in &schema.effects {
        let ground = subst_atom(atom);
        if *negated {
            del_effects.insert(ground);
        } else {
            add_effects.insert(ground);
        }
    }
    // adds win over deletes of the same atom
    for a in &add_effects {
        del_effects.remove(a);
    }

    GroundAction {
        name: schema.name.clone(),
        args: binding.iter().map(|s| s.to_string()).collect(),
        precondition: subst_condition(&schema.precondition, &subst_atom),
        add_effects,
        del_effects,
    }
}

fn subst_condition(cond: &Condition, subst: &dyn Fn(&Atom) -> Atom) -> Condition {
    match cond {
        Condition::Atom(a) => Condition::Atom(subst(a)),
        Condition::Not(a) => Condition::Not(subst(a)),
        Condition::And(cs) => {
            Condition::And(cs.iter().map(|c| subst_condition(c, subst)).collect())
        }
        Condition::Or(cs) => Condition::Or(cs.iter().map(|c| subst_condition(c, subst)).collect()),
    }
}
