//! PDDL fragment used by the exploration agent: parsing, validation,
//! canonical printing, and structured problem-file edits.
//!
//! The fragment covers STRIPS with typing, negative preconditions, and
//! disjunctions in conditions. Values are immutable after construction and
//! safe to share across threads.

pub mod ast;
pub mod edit;
pub mod parse;
pub mod print;
#[cfg(feature = "testgen")]
pub mod testgen;
pub mod validate;

pub use ast::{
    ActionSchema, Atom, Condition, DomainFile, Literal, PredicateDecl, ProblemFile, Requirement,
    TypedName, ROOT_TYPE,
};
pub use edit::{
    apply_delta, delta_to_json, diff_problems, parse_delta_json, set_goal, visited_deletes,
    AppliedDelta, Delta, DeltaError, EditError, EditWarning, SectionDelta,
};
pub use parse::{
    parse_condition, parse_domain, parse_fact_line, parse_object_line, parse_problem, ParseError,
    Pos,
};
pub use print::{init_lines, object_lines, print_condition, print_domain, print_problem};
pub use validate::{validate_problem, Diagnostic, DiagnosticKind};

/// Bundled domain and example files.
pub mod fixtures {
    /// Navigation-only domain: move and open_door over locations/directions.
    pub const COIN_DOMAIN: &str = include_str!("../fixtures/coin-domain.pddl");
    /// Cooking domain: navigation plus knife and appliance actions.
    pub const COOKING_DOMAIN: &str = include_str!("../fixtures/cooking-domain.pddl");
    /// Starting problem for the one-closed-door example observation.
    pub const EXAMPLE_PROBLEM: &str = include_str!("../fixtures/example-problem.pddl");
    /// Edit produced for the two-closed-door example observation.
    pub const EXAMPLE_DELTA: &str = include_str!("../fixtures/example-delta.json");
}
