//! AST types for the PDDL fragment used by the exploration domains.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Root type every declared type is a subtype of.
pub const ROOT_TYPE: &str = "object";

/// The requirement flags this fragment accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Requirement {
    Strips,
    Typing,
    NegativePreconditions,
    DisjunctivePreconditions,
}

impl Requirement {
    pub fn as_flag(&self) -> &'static str {
        match self {
            Requirement::Strips => ":strips",
            Requirement::Typing => ":typing",
            Requirement::NegativePreconditions => ":negative-preconditions",
            Requirement::DisjunctivePreconditions => ":disjunctive-preconditions",
        }
    }

    pub fn from_flag(flag: &str) -> Option<Self> {
        match flag {
            ":strips" => Some(Requirement::Strips),
            ":typing" => Some(Requirement::Typing),
            ":negative-preconditions" => Some(Requirement::NegativePreconditions),
            ":disjunctive-preconditions" => Some(Requirement::DisjunctivePreconditions),
            _ => None,
        }
    }
}

/// A `name - type` pair, as in object and parameter declarations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypedName {
    pub name: String,
    pub typ: String,
}

impl TypedName {
    pub fn new(name: impl Into<String>, typ: impl Into<String>) -> Self {
        TypedName {
            name: name.into().to_lowercase(),
            typ: typ.into().to_lowercase(),
        }
    }
}

impl fmt::Display for TypedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.name, self.typ)
    }
}

/// A predicate applied to arguments. Arguments are constants or `?`-variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<String>) -> Self {
        Atom {
            predicate: predicate.into().to_lowercase(),
            args: args.into_iter().map(|a| a.to_lowercase()).collect(),
        }
    }

    /// True when no argument is a `?`-variable.
    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|a| !a.starts_with('?'))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.predicate)?;
        for a in &self.args {
            write!(f, " {}", a)?;
        }
        write!(f, ")")
    }
}

/// Precondition/goal tree: NNF over literals with `and`/`or`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    Atom(Atom),
    Not(Atom),
    And(Vec<Condition>),
    Or(Vec<Condition>),
}

impl Condition {
    /// Empty conjunction; always true.
    pub fn top() -> Self {
        Condition::And(Vec::new())
    }

    /// Every atom in the tree, in syntactic order.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.walk_atoms(&mut out);
        out
    }

    fn walk_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Condition::Atom(a) | Condition::Not(a) => out.push(a),
            Condition::And(cs) | Condition::Or(cs) => {
                for c in cs {
                    c.walk_atoms(out);
                }
            }
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atoms().iter().all(|a| a.is_ground())
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Atom(a) => write!(f, "{}", a),
            Condition::Not(a) => write!(f, "(not {})", a),
            Condition::And(cs) => {
                write!(f, "(and")?;
                for c in cs {
                    write!(f, " {}", c)?;
                }
                write!(f, ")")
            }
            Condition::Or(cs) => {
                write!(f, "(or")?;
                for c in cs {
                    write!(f, " {}", c)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// An add (positive) or delete (negated) effect literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            atom,
            negated: false,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            atom,
            negated: true,
        }
    }
}

/// Declared predicate with typed parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateDecl {
    pub name: String,
    pub params: Vec<TypedName>,
}

/// A lifted action: parameters, precondition, and conjunctive effects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSchema {
    pub name: String,
    pub parameters: Vec<TypedName>,
    pub precondition: Condition,
    pub effects: Vec<Literal>,
}

/// Parsed domain file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainFile {
    pub name: String,
    pub requirements: BTreeSet<Requirement>,
    /// Declared types, all direct subtypes of [`ROOT_TYPE`].
    pub types: Vec<TypedName>,
    pub predicates: Vec<PredicateDecl>,
    pub actions: Vec<ActionSchema>,
}

impl DomainFile {
    pub fn predicate(&self, name: &str) -> Option<&PredicateDecl> {
        self.predicates.iter().find(|p| p.name == name)
    }

    pub fn action(&self, name: &str) -> Option<&ActionSchema> {
        self.actions.iter().find(|a| a.name == name)
    }

    /// Whether `typ` is declared (or is the implicit root).
    pub fn has_type(&self, typ: &str) -> bool {
        typ == ROOT_TYPE || self.types.iter().any(|t| t.name == typ)
    }
}

/// Parsed problem file. Objects map name to type; init is a fact set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub name: String,
    pub domain: String,
    pub objects: BTreeMap<String, String>,
    pub init: BTreeSet<Atom>,
    pub goal: Condition,
}

impl ProblemFile {
    pub fn new(name: impl Into<String>, domain: impl Into<String>) -> Self {
        ProblemFile {
            name: name.into().to_lowercase(),
            domain: domain.into().to_lowercase(),
            objects: BTreeMap::new(),
            init: BTreeSet::new(),
            goal: Condition::top(),
        }
    }

    pub fn object_type(&self, name: &str) -> Option<&str> {
        self.objects.get(name).map(|t| t.as_str())
    }

    /// Names of all objects of the given type, sorted.
    pub fn objects_of_type(&self, typ: &str) -> Vec<&str> {
        self.objects
            .iter()
            .filter(|(_, t)| t.as_str() == typ || typ == ROOT_TYPE)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn has_fact(&self, atom: &Atom) -> bool {
        self.init.contains(atom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_display_is_canonical() {
        let a = Atom::new("Connected", vec!["Kitchen".into(), "loc1".into(), "south".into()]);
        assert_eq!(a.to_string(), "(connected kitchen loc1 south)");
    }

    #[test]
    fn condition_groundness() {
        let g = Condition::And(vec![
            Condition::Atom(Atom::new("at", vec!["kitchen".into()])),
            Condition::Not(Atom::new("closed_door", vec!["kitchen".into(), "loc1".into()])),
        ]);
        assert!(g.is_ground());
        let v = Condition::Atom(Atom::new("at", vec!["?loc".into()]));
        assert!(!v.is_ground());
    }

    #[test]
    fn empty_conjunction_prints() {
        assert_eq!(Condition::top().to_string(), "(and)");
    }
}
