//! Solver behavior pinned against an independent brute-force search that
//! works directly on ground atom sets, with none of the solver's fact
//! compilation or pruning.

use std::collections::{BTreeSet, HashSet, VecDeque};

use pddlego_pddl::{fixtures, parse_condition, parse_domain, parse_problem, Atom, ProblemFile};
use pddlego_planner::{ground, holds, solve, validate_plan, Plan, PlanCheck, SolveLimits, SolveResult};

/// Brute-force shortest plan length by uncompiled breadth-first reachability.
fn brute_force_shortest(task: &pddlego_planner::GroundTask) -> Option<usize> {
    let mut visited: HashSet<BTreeSet<Atom>> = HashSet::new();
    let mut queue: VecDeque<(BTreeSet<Atom>, usize)> = VecDeque::new();
    if holds(&task.goal, &task.init) {
        return Some(0);
    }
    visited.insert(task.init.clone());
    queue.push_back((task.init.clone(), 0));
    while let Some((state, depth)) = queue.pop_front() {
        for action in &task.actions {
            if !holds(&action.precondition, &state) {
                continue;
            }
            let mut next = state.clone();
            for d in &action.del_effects {
                next.remove(d);
            }
            for a in &action.add_effects {
                next.insert(a.clone());
            }
            if visited.contains(&next) {
                continue;
            }
            if holds(&task.goal, &next) {
                return Some(depth + 1);
            }
            visited.insert(next.clone());
            queue.push_back((next, depth + 1));
        }
    }
    None
}

fn coin_domain() -> pddlego_pddl::DomainFile {
    parse_domain(fixtures::COIN_DOMAIN).unwrap()
}

fn with_goal(pf: &ProblemFile, goal: &str) -> ProblemFile {
    let mut out = pf.clone();
    out.goal = parse_condition(goal).unwrap();
    out
}

#[test]
fn example_problem_two_step_plan() {
    let df = coin_domain();
    let pf = parse_problem(fixtures::EXAMPLE_PROBLEM).unwrap();
    let task = ground(&df, &pf).unwrap();

    let plan = solve(&task, &SolveLimits::default()).plan().expect("plan");
    assert_eq!(
        plan.to_text(),
        "(open_door kitchen loc1)\n(move kitchen loc1 south)\n"
    );
    assert!(validate_plan(&task, &plan).is_ok());
    assert_eq!(brute_force_shortest(&task), Some(2));
}

#[test]
fn visited_goal_is_unsolvable_under_coin_domain() {
    // no action writes `visited`, so it is inertial and cannot become true
    let df = coin_domain();
    let pf = with_goal(&parse_problem(fixtures::EXAMPLE_PROBLEM).unwrap(), "(visited loc1)");
    let task = ground(&df, &pf).unwrap();
    assert_eq!(solve(&task, &SolveLimits::default()), SolveResult::Unsolvable);
    assert_eq!(brute_force_shortest(&task), None);
}

#[test]
fn satisfied_goal_yields_empty_plan() {
    let df = coin_domain();
    let pf = with_goal(&parse_problem(fixtures::EXAMPLE_PROBLEM).unwrap(), "(at kitchen)");
    let task = ground(&df, &pf).unwrap();
    let plan = solve(&task, &SolveLimits::default()).plan().unwrap();
    assert!(plan.is_empty());
    assert!(validate_plan(&task, &plan).is_ok());
}

#[test]
fn closed_door_without_open_action_is_unsolvable() {
    // a domain with move only: the closed door can never be cleared
    let df = parse_domain(
        r#"(define (domain environment)
             (:requirements :strips :typing :negative-preconditions)
             (:types location direction)
             (:predicates
               (at ?loc - location)
               (connected ?loc1 - location ?loc2 - location ?dir - direction)
               (closed_door ?loc1 - location ?loc2 - location))
             (:action move
               :parameters (?loc1 - location ?loc2 - location ?dir - direction)
               :precondition (and (at ?loc1) (connected ?loc1 ?loc2 ?dir) (not (closed_door ?loc1 ?loc2)))
               :effect (and (not (at ?loc1)) (at ?loc2))))"#,
    )
    .unwrap();
    let pf = parse_problem(
        r#"(define (problem p) (:domain environment)
             (:objects kitchen - location loc2 - location south - direction)
             (:init (at kitchen) (connected kitchen loc2 south) (closed_door kitchen loc2))
             (:goal (at loc2)))"#,
    )
    .unwrap();
    let task = ground(&df, &pf).unwrap();
    assert_eq!(solve(&task, &SolveLimits::default()), SolveResult::Unsolvable);
    assert_eq!(brute_force_shortest(&task), None);
}

#[test]
fn swapped_steps_fail_validation_at_first_step() {
    let df = coin_domain();
    let pf = parse_problem(fixtures::EXAMPLE_PROBLEM).unwrap();
    let task = ground(&df, &pf).unwrap();
    let plan = solve(&task, &SolveLimits::default()).plan().unwrap();
    let swapped = Plan {
        steps: vec![plan.steps[1].clone(), plan.steps[0].clone()],
    };
    match validate_plan(&task, &swapped) {
        PlanCheck::FailureAt { step, reason } => {
            assert_eq!(step, 0);
            assert!(reason.contains("closed_door"));
        }
        PlanCheck::Ok => panic!("swapped plan must not validate"),
    }
}

/// Four rooms in a line: a - b - c - d, all passages open.
fn chain_problem(goal: &str) -> ProblemFile {
    parse_problem(&format!(
        r#"(define (problem chain) (:domain environment)
             (:objects ra - location rb - location rc - location rd - location
                       north - direction south - direction east - direction west - direction)
             (:init (at ra)
                    (connected ra rb east) (connected rb ra west)
                    (connected rb rc east) (connected rc rb west)
                    (connected rc rd east) (connected rd rc west))
             (:goal {goal}))"#
    ))
    .unwrap()
}

#[test]
fn disjunctive_goal_takes_nearer_disjunct() {
    let df = coin_domain();
    let both = ground(&df, &chain_problem("(or (at rb) (at rd))")).unwrap();
    let near = ground(&df, &chain_problem("(at rb)")).unwrap();
    let far = ground(&df, &chain_problem("(at rd)")).unwrap();

    let limits = SolveLimits::default();
    let l_both = solve(&both, &limits).plan().unwrap().len();
    let l_near = solve(&near, &limits).plan().unwrap().len();
    let l_far = solve(&far, &limits).plan().unwrap().len();
    assert_eq!(l_near, 1);
    assert_eq!(l_far, 3);
    assert_eq!(l_both, l_near.min(l_far));
    assert_eq!(brute_force_shortest(&both), Some(l_both));
}

#[test]
fn identical_tasks_give_identical_plan_bytes() {
    let df = coin_domain();
    let pf = chain_problem("(at rd)");
    let a = solve(&ground(&df, &pf).unwrap(), &SolveLimits::default())
        .plan()
        .unwrap()
        .to_text();
    let b = solve(&ground(&df, &pf).unwrap(), &SolveLimits::default())
        .plan()
        .unwrap()
        .to_text();
    assert_eq!(a, b);
}

#[test]
fn expansion_limit_reports_resource_exhausted() {
    let df = coin_domain();
    let task = ground(&df, &chain_problem("(at rd)")).unwrap();
    let result = solve(
        &task,
        &SolveLimits {
            max_expansions: 1,
            timeout: None,
        },
    );
    assert_eq!(result, SolveResult::ResourceExhausted);
}

#[test]
fn random_tasks_match_brute_force() {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    let df = coin_domain();
    let dirs = ["north", "south", "east", "west"];
    let rev = |d: &str| match d {
        "north" => "south",
        "south" => "north",
        "east" => "west",
        _ => "east",
    };
    let mut rng = ChaCha8Rng::seed_from_u64(99);

    for case in 0..40 {
        let rooms = rng.gen_range(2..=5usize);
        let names: Vec<String> = (0..rooms).map(|i| format!("room{i}")).collect();
        let mut init = vec![format!("(at {})", names[0])];
        // random spanning chain plus extra edges, random doors
        for i in 1..rooms {
            let j = rng.gen_range(0..i);
            let d = dirs[rng.gen_range(0..4)];
            init.push(format!("(connected {} {} {})", names[j], names[i], d));
            init.push(format!("(connected {} {} {})", names[i], names[j], rev(d)));
            if rng.gen_bool(0.4) {
                init.push(format!("(closed_door {} {})", names[j], names[i]));
                init.push(format!("(closed_door {} {})", names[i], names[j]));
            }
        }
        // occasionally drop a connection direction to make goals unreachable
        if rng.gen_bool(0.3) && init.len() > 2 {
            let k = rng.gen_range(1..init.len());
            init.remove(k);
        }
        let goal = names[rng.gen_range(0..rooms)].clone();
        let objs = names
            .iter()
            .map(|n| format!("{n} - location"))
            .chain(dirs.iter().map(|d| format!("{d} - direction")))
            .collect::<Vec<_>>()
            .join(" ");
        let pf = parse_problem(&format!(
            "(define (problem r{case}) (:domain environment) (:objects {objs}) (:init {}) (:goal (at {goal})))",
            init.join(" ")
        ))
        .unwrap();
        let task = ground(&df, &pf).unwrap();

        let expected = brute_force_shortest(&task);
        match solve(&task, &SolveLimits::default()) {
            SolveResult::Plan(plan) => {
                assert_eq!(Some(plan.len()), expected, "case {case}: not optimal");
                assert!(validate_plan(&task, &plan).is_ok(), "case {case}: invalid plan");
            }
            SolveResult::Unsolvable => {
                assert_eq!(expected, None, "case {case}: claimed unsolvable but reachable");
            }
            SolveResult::ResourceExhausted => panic!("case {case}: tiny task exhausted resources"),
        }
    }
}
