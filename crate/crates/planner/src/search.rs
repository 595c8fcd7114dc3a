//! Breadth-first plan search over the grounded task.
//!
//! Unit-cost BFS returns shortest plans; grounded actions are expanded in
//! canonical (name, args) order, so ties break identically across runs and
//! platforms. Facts of predicates no action ever writes are inertial: their
//! truth is folded into the compiled preconditions and goal instead of being
//! carried in the searched state. Actions whose effects nothing reads are
//! dropped; removing them from a plan never invalidates it, so optimal plan
//! length is preserved.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use pddlego_pddl::{Atom, Condition};

use crate::ground::{GroundAction, GroundTask};

#[derive(Debug, Clone)]
pub struct SolveLimits {
    pub max_expansions: usize,
    pub timeout: Option<Duration>,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits {
            max_expansions: 2_000_000,
            timeout: None,
        }
    }
}

/// A plan: an executable, goal-achieving action sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub steps: Vec<GroundAction>,
}

impl Plan {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One action per line, conventional planner output.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&step.display());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Plan(Plan),
    /// The reachable state space was exhausted without hitting the goal.
    Unsolvable,
    /// Expansion or time limits hit; distinct from proven unsolvability.
    ResourceExhausted,
}

impl SolveResult {
    pub fn plan(self) -> Option<Plan> {
        match self {
            SolveResult::Plan(p) => Some(p),
            _ => None,
        }
    }
}

// Compiled condition over dynamic fact indices; static truth folded away.
#[derive(Debug, Clone)]
enum CCond {
    Const(bool),
    Fact(usize),
    NotFact(usize),
    And(Vec<CCond>),
    Or(Vec<CCond>),
}

impl CCond {
    fn eval(&self, state: &[u64]) -> bool {
        match self {
            CCond::Const(b) => *b,
            CCond::Fact(i) => bit(state, *i),
            CCond::NotFact(i) => !bit(state, *i),
            CCond::And(cs) => cs.iter().all(|c| c.eval(state)),
            CCond::Or(cs) => cs.iter().any(|c| c.eval(state)),
        }
    }

    fn is_const_false(&self) -> bool {
        matches!(self, CCond::Const(false))
    }

    fn dynamic_atoms(&self, out: &mut BTreeSet<usize>) {
        match self {
            CCond::Const(_) => {}
            CCond::Fact(i) | CCond::NotFact(i) => {
                out.insert(*i);
            }
            CCond::And(cs) | CCond::Or(cs) => {
                for c in cs {
                    c.dynamic_atoms(out);
                }
            }
        }
    }
}

#[inline]
fn bit(state: &[u64], i: usize) -> bool {
    state[i / 64] & (1 << (i % 64)) != 0
}

#[inline]
fn set_bit(state: &mut [u64], i: usize) {
    state[i / 64] |= 1 << (i % 64);
}

#[inline]
fn clear_bit(state: &mut [u64], i: usize) {
    state[i / 64] &= !(1 << (i % 64));
}

struct CompiledAction {
    task_index: usize,
    precondition: CCond,
    adds: Vec<usize>,
    dels: Vec<usize>,
}

/// Find a shortest plan by breadth-first search, or prove unsolvability.
pub fn solve(task: &GroundTask, limits: &SolveLimits) -> SolveResult {
    let start = Instant::now();

    // Predicates some action writes; everything else is inertial.
    let mut written: BTreeSet<&str> = BTreeSet::new();
    for a in &task.actions {
        written.extend(a.add_effects.iter().map(|x| x.predicate.as_str()));
        written.extend(a.del_effects.iter().map(|x| x.predicate.as_str()));
    }
    let is_static = |a: &Atom| !written.contains(a.predicate.as_str());

    // Index dynamic facts.
    let mut fact_index: HashMap<&Atom, usize> = HashMap::new();
    let mut dynamic_facts: Vec<&Atom> = Vec::new();
    for fact in &task.facts {
        if !is_static(fact) {
            fact_index.insert(fact, dynamic_facts.len());
            dynamic_facts.push(fact);
        }
    }

    let compile = |cond: &Condition| compile_cond(cond, &fact_index, &task.init, &is_static);
    let goal = compile(&task.goal);
    if goal.is_const_false() {
        return SolveResult::Unsolvable;
    }

    // Statically inapplicable actions are dropped up front.
    let mut compiled: Vec<CompiledAction> = Vec::new();
    for (i, action) in task.actions.iter().enumerate() {
        let pre = compile(&action.precondition);
        if pre.is_const_false() {
            continue;
        }
        let adds: Vec<usize> = action
            .add_effects
            .iter()
            .filter_map(|a| fact_index.get(a).copied())
            .collect();
        let dels: Vec<usize> = action
            .del_effects
            .iter()
            .filter_map(|a| fact_index.get(a).copied())
            .collect();
        compiled.push(CompiledAction {
            task_index: i,
            precondition: pre,
            adds,
            dels,
        });
    }

    // Relevance fixpoint: keep actions whose effects something still reads.
    loop {
        let mut read: BTreeSet<usize> = BTreeSet::new();
        goal.dynamic_atoms(&mut read);
        for a in &compiled {
            a.precondition.dynamic_atoms(&mut read);
        }
        let before = compiled.len();
        compiled.retain(|a| {
            a.adds.iter().chain(a.dels.iter()).any(|i| read.contains(i))
        });
        if compiled.len() == before {
            break;
        }
    }

    let words = (dynamic_facts.len() + 63) / 64;
    let mut init_state = vec![0u64; words.max(1)];
    for fact in &task.init {
        if let Some(&i) = fact_index.get(fact) {
            set_bit(&mut init_state, i);
        }
    }

    if goal.eval(&init_state) {
        return SolveResult::Plan(Plan { steps: Vec::new() });
    }

    struct Node {
        state: Vec<u64>,
        parent: usize,
        action: usize,
    }

    let mut nodes: Vec<Node> = vec![Node {
        state: init_state.clone(),
        parent: usize::MAX,
        action: usize::MAX,
    }];
    let mut visited: HashSet<Vec<u64>> = HashSet::new();
    visited.insert(init_state);
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);

    let mut expansions = 0usize;
    while let Some(node_idx) = queue.pop_front() {
        expansions += 1;
        if expansions > limits.max_expansions {
            return SolveResult::ResourceExhausted;
        }
        if expansions % 1024 == 0 {
            if let Some(t) = limits.timeout {
                if start.elapsed() > t {
                    return SolveResult::ResourceExhausted;
                }
            }
        }

        for (ai, action) in compiled.iter().enumerate() {
            let applicable = action.precondition.eval(&nodes[node_idx].state);
            if !applicable {
                continue;
            }
            let mut next = nodes[node_idx].state.clone();
            for &d in &action.dels {
                clear_bit(&mut next, d);
            }
            for &a in &action.adds {
                set_bit(&mut next, a);
            }
            if visited.contains(&next) {
                continue;
            }
            let reached_goal = goal.eval(&next);
            visited.insert(next.clone());
            nodes.push(Node {
                state: next,
                parent: node_idx,
                action: ai,
            });
            if reached_goal {
                let mut steps = Vec::new();
                let mut cur = nodes.len() - 1;
                while nodes[cur].parent != usize::MAX {
                    steps.push(task.actions[compiled[nodes[cur].action].task_index].clone());
                    cur = nodes[cur].parent;
                }
                steps.reverse();
                return SolveResult::Plan(Plan { steps });
            }
            queue.push_back(nodes.len() - 1);
        }
    }

    SolveResult::Unsolvable
}

fn compile_cond(
    cond: &Condition,
    fact_index: &HashMap<&Atom, usize>,
    init: &BTreeSet<Atom>,
    is_static: &dyn Fn(&Atom) -> bool,
) -> CCond {
    match cond {
        Condition::Atom(a) => {
            if is_static(a) {
                CCond::Const(init.contains(a))
            } else {
                match fact_index.get(a) {
                    Some(&i) => CCond::Fact(i),
                    None => CCond::Const(false),
                }
            }
        }
        Condition::Not(a) => {
            if is_static(a) {
                CCond::Const(!init.contains(a))
            } else {
                match fact_index.get(a) {
                    Some(&i) => CCond::NotFact(i),
                    None => CCond::Const(true),
                }
            }
        }
        Condition::And(cs) => {
            let mut parts = Vec::new();
            for c in cs {
                let cc = compile_cond(c, fact_index, init, is_static);
                match cc {
                    CCond::Const(true) => {}
                    CCond::Const(false) => return CCond::Const(false),
                    other => parts.push(other),
                }
            }
            if parts.is_empty() {
                CCond::Const(true)
            } else {
                CCond::And(parts)
            }
        }
        Condition::Or(cs) => {
            let mut parts = Vec::new();
            for c in cs {
                let cc = compile_cond(c, fact_index, init, is_static);
                match cc {
                    CCond::Const(false) => {}
                    CCond::Const(true) => return CCond::Const(true),
                    other => parts.push(other),
                }
            }
            if parts.is_empty() {
                CCond::Const(false)
            } else {
                CCond::Or(parts)
            }
        }
    }
}
