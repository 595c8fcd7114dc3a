//! Plan validation by direct simulation over ground atom sets.
//!
//! This is a separate execution path from the search's compiled bitset
//! machinery, so it cross-checks solver output rather than repeating it.

use std::collections::BTreeSet;

use pddlego_pddl::{Atom, Condition};

use crate::ground::GroundTask;
use crate::search::Plan;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanCheck {
    Ok,
    FailureAt { step: usize, reason: String },
}

impl PlanCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, PlanCheck::Ok)
    }
}

/// Closed-world condition evaluation against a fact set.
pub fn holds(cond: &Condition, state: &BTreeSet<Atom>) -> bool {
    match cond {
        Condition::Atom(a) => state.contains(a),
        Condition::Not(a) => !state.contains(a),
        Condition::And(cs) => cs.iter().all(|c| holds(c, state)),
        Condition::Or(cs) => cs.iter().any(|c| holds(c, state)),
    }
}

/// Simulate the plan from init; Ok iff every precondition holds stepwise and
/// the goal holds at the end.
pub fn validate_plan(task: &GroundTask, plan: &Plan) -> PlanCheck {
    let mut state = task.init.clone();
    for (i, step) in plan.steps.iter().enumerate() {
        if !holds(&step.precondition, &state) {
            return PlanCheck::FailureAt {
                step: i,
                reason: format!(
                    "precondition {} of {} does not hold",
                    step.precondition,
                    step.display()
                ),
            };
        }
        for d in &step.del_effects {
            state.remove(d);
        }
        for a in &step.add_effects {
            state.insert(a.clone());
        }
    }
    if holds(&task.goal, &state) {
        PlanCheck::Ok
    } else {
        PlanCheck::FailureAt {
            step: plan.steps.len(),
            reason: format!("goal {} not satisfied in final state", task.goal),
        }
    }
}
