//! Solver for the grounded PDDL fragment: instantiate a domain/problem pair
//! into a propositional task, search it breadth-first for a shortest plan,
//! and validate plans by simulation.
//!
//! `solve` is a pure function; independent tasks may be solved concurrently.

pub mod ground;
pub mod search;
pub mod validate;

pub use ground::{ground, ground_with_cap, GroundAction, GroundError, GroundTask, DEFAULT_GROUND_CAP};
pub use search::{solve, Plan, SolveLimits, SolveResult};
pub use validate::{holds, validate_plan, PlanCheck};
