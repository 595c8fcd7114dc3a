//! Cooking World generator guarantees and mechanics, checked by an
//! omniscient scripted player that reads environment internals to construct
//! a witness trajectory, then replays it through the public surface.

use std::collections::BTreeSet;

use pddlego_envs::{
    gen_cooking_env, Appliance, CookVerb, CookingEnv, Difficulty, Direction, StepStatus, Terminal,
    TextEnv, DIRECTIONS,
};

/// Cheapest command sequence (opens + moves) from `from` to `to`, charging 2
/// for edges whose door is still closed in `doors_open` tracking.
fn route(
    env: &CookingEnv,
    opened: &BTreeSet<(usize, usize)>,
    from: usize,
    to: usize,
) -> Vec<(Direction, usize, bool)> {
    let graph = env.graph();
    let n = graph.len();
    let mut dist = vec![u32::MAX; n];
    let mut prev: Vec<Option<(usize, Direction, bool)>> = vec![None; n];
    dist[from] = 0;
    let mut todo: Vec<usize> = (0..n).collect();
    while !todo.is_empty() {
        todo.sort_by_key(|&r| std::cmp::Reverse(dist[r]));
        let cur = todo.pop().unwrap();
        if dist[cur] == u32::MAX {
            break;
        }
        for dir in DIRECTIONS {
            if let Some(next) = graph.neighbor(cur, dir) {
                let key = (cur.min(next), cur.max(next));
                let needs_open = match graph.door_between(cur, next) {
                    Some(door) => !door.open && !opened.contains(&key),
                    None => false,
                };
                let cost = dist[cur] + 1 + u32::from(needs_open);
                if cost < dist[next] {
                    dist[next] = cost;
                    prev[next] = Some((cur, dir, needs_open));
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (parent, dir, needs_open) = prev[cur].expect("graph is connected");
        path.push((dir, cur, needs_open));
        cur = parent;
    }
    path.reverse();
    path
}

/// Build a full solution command list from ground truth.
fn witness_commands(env: &CookingEnv) -> Vec<String> {
    let recipe = env.recipe().clone();
    let mut commands = Vec::new();
    let mut opened: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut opened_containers: BTreeSet<(usize, String)> = BTreeSet::new();
    let mut at = env.agent_room();

    let mut goto = |commands: &mut Vec<String>,
                    opened: &mut BTreeSet<(usize, usize)>,
                    at: &mut usize,
                    target: usize| {
        for (dir, next, needs_open) in route(env, opened, *at, target) {
            if needs_open {
                commands.push(format!("open door to {}", dir.name()));
                opened.insert(((*at).min(next), (*at).max(next)));
            }
            commands.push(format!("move {}", dir.name()));
            *at = next;
        }
    };

    // gather the knife and every ingredient, nearest first
    let mut wanted: Vec<String> = vec!["knife".to_string()];
    wanted.extend(recipe.entries.iter().map(|e| e.name.clone()));
    while !wanted.is_empty() {
        let located: Vec<(usize, String, bool, String)> = wanted
            .iter()
            .map(|item| {
                let (room, furniture, container) =
                    env.find_item(item).expect("items are placed exactly once");
                (room, furniture, container, item.clone())
            })
            .collect();
        let (room, furniture, container, item) = located
            .into_iter()
            .min_by_key(|(room, _, _, _)| route(env, &opened, at, *room).len())
            .unwrap();
        goto(&mut commands, &mut opened, &mut at, room);
        if container && !opened_containers.contains(&(room, furniture.clone())) {
            commands.push(format!("open {}", furniture));
            opened_containers.insert((room, furniture));
        }
        commands.push(format!("take {}", item));
        wanted.retain(|w| *w != item);
    }

    for e in &recipe.entries {
        if let Some(k) = e.knife {
            commands.push(format!("{} {}", k.verb(), e.name));
        }
    }

    for e in &recipe.entries {
        if let Some(c) = e.cook {
            let appliances: Vec<Appliance> = match c {
                CookVerb::Fry => vec![Appliance::Stove],
                CookVerb::Roast => vec![Appliance::Oven],
                CookVerb::Grill => vec![Appliance::Toaster, Appliance::Barbeque],
            };
            let (room, appliance) = appliances
                .iter()
                .flat_map(|&a| env.appliance_rooms(a).into_iter().map(move |r| (r, a)))
                .min_by_key(|(r, _)| route(env, &opened, at, *r).len())
                .expect("generator guarantees a satisfying appliance");
            goto(&mut commands, &mut opened, &mut at, room);
            commands.push(format!("cook {} in {}", e.name, appliance.name()));
        }
    }

    let kitchen = env.graph().index_of("kitchen").unwrap();
    goto(&mut commands, &mut opened, &mut at, kitchen);
    commands.push("prepare meal".to_string());
    commands.push("eat meal".to_string());
    commands
}

fn assert_solvable(seed: u64, difficulty: Difficulty) {
    let env = gen_cooking_env(seed, difficulty);
    let commands = witness_commands(&env);
    let mut run = env.clone();
    for command in &commands {
        assert!(
            run.terminal().is_ongoing(),
            "seed {seed} {difficulty:?}: episode ended early at `{command}`"
        );
        let (_, status) = run.step(command);
        assert_eq!(
            status,
            StepStatus::Ok,
            "seed {seed} {difficulty:?}: `{command}` rejected"
        );
    }
    assert_eq!(
        run.terminal(),
        Terminal::Success,
        "seed {seed} {difficulty:?}: witness did not finish"
    );
    assert!(
        run.steps_taken() <= run.step_cap(),
        "seed {seed} {difficulty:?}: {} steps over cap {}",
        run.steps_taken(),
        run.step_cap()
    );
}

#[test]
fn easy_games_solvable_within_cap_seeds_0_to_59() {
    for seed in 0..60 {
        assert_solvable(seed, Difficulty::Easy);
    }
}

#[test]
fn hard_games_solvable_within_cap_seeds_0_to_59() {
    for seed in 0..60 {
        assert_solvable(seed, Difficulty::Hard);
    }
}

#[test]
fn generator_invariants() {
    for seed in 0..80 {
        for difficulty in [Difficulty::Easy, Difficulty::Hard] {
            let env = gen_cooking_env(seed, difficulty);
            let kitchen = env.graph().index_of("kitchen").expect("kitchen exists");
            assert_eq!(kitchen, 0);
            assert_eq!(env.agent_room(), kitchen);
            assert!(env.appliance_rooms(Appliance::Stove).contains(&kitchen));
            assert!(env.appliance_rooms(Appliance::Oven).contains(&kitchen));
            assert!(env.find_item("cookbook").is_some());
            assert!(env.find_item("knife").is_some());
            assert_eq!(env.recipe().entries.len(), difficulty.ingredients());
            assert_eq!(env.graph().len(), difficulty.rooms());
            // every ingredient placed exactly once
            assert_eq!(env.ingredient_rooms().len(), difficulty.ingredients());

            if env.recipe().requires_grill() {
                let grills: usize = env.appliance_rooms(Appliance::Toaster).len()
                    + env.appliance_rooms(Appliance::Barbeque).len();
                assert!(grills > 0, "seed {seed}: grill required but unavailable");
            }
            // barbeques only ever stand in the backyard
            for room in env.appliance_rooms(Appliance::Barbeque) {
                assert_eq!(env.graph().room_name(room), "backyard");
            }
        }
    }
}

#[test]
fn hard_games_require_grilling_outside_the_kitchen() {
    for seed in 0..80 {
        let env = gen_cooking_env(seed, Difficulty::Hard);
        assert!(env.recipe().requires_grill(), "seed {seed}");
        let grill_rooms: Vec<usize> = env
            .appliance_rooms(Appliance::Toaster)
            .into_iter()
            .chain(env.appliance_rooms(Appliance::Barbeque))
            .collect();
        assert!(
            grill_rooms.iter().any(|&r| env.graph().room_name(r) != "kitchen"),
            "seed {seed}: no grill appliance outside the kitchen"
        );
    }
}

#[test]
fn hard_generator_produces_the_reference_room_set() {
    let want: BTreeSet<&str> = ["kitchen", "corridor", "pantry", "backyard", "bedroom"]
        .into_iter()
        .collect();
    let found = (0..5000u64).find(|&seed| {
        let env = gen_cooking_env(seed, Difficulty::Hard);
        let rooms: BTreeSet<&str> = env
            .graph()
            .room_names()
            .iter()
            .map(|s| s.as_str())
            .collect();
        rooms == want
    });
    assert!(found.is_some(), "no seed produced the reference room set");
}

#[test]
fn wrong_processing_is_terminal_failure() {
    // find a seed whose recipe has a grill step, then fry that ingredient
    for seed in 0..200 {
        let env = gen_cooking_env(seed, Difficulty::Hard);
        let grilled: Vec<String> = env
            .recipe()
            .entries
            .iter()
            .filter(|e| e.cook == Some(CookVerb::Grill) && e.knife.is_none())
            .map(|e| e.name.clone())
            .collect();
        let Some(ingredient) = grilled.first() else {
            continue;
        };
        // gather it, then cook it on the stove in the kitchen
        let mut commands = Vec::new();
        let mut opened = BTreeSet::new();
        let mut at = env.agent_room();
        let (room, furniture, container) = env.find_item(ingredient).unwrap();
        for (dir, next, needs_open) in route(&env, &opened, at, room) {
            if needs_open {
                commands.push(format!("open door to {}", dir.name()));
            }
            commands.push(format!("move {}", dir.name()));
            opened.insert((at.min(next), at.max(next)));
            at = next;
        }
        if container {
            commands.push(format!("open {}", furniture));
        }
        commands.push(format!("take {}", ingredient));
        for (dir, _, needs_open) in route(&env, &opened, at, 0) {
            if needs_open {
                commands.push(format!("open door to {}", dir.name()));
            }
            commands.push(format!("move {}", dir.name()));
        }
        commands.push(format!("cook {} in stove", ingredient));

        let mut run = env.clone();
        for command in &commands {
            let (_, status) = run.step(command);
            assert_eq!(status, StepStatus::Ok, "seed {seed}: `{command}` rejected");
        }
        match run.terminal() {
            Terminal::Failure(reason) => {
                assert!(reason.contains(ingredient.as_str()));
                return;
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }
    panic!("no seed offered a grill-only ingredient");
}

#[test]
fn cook_before_knife_is_terminal_failure() {
    for seed in 0..300 {
        let env = gen_cooking_env(seed, Difficulty::Easy);
        let candidate = env
            .recipe()
            .entries
            .iter()
            .find(|e| e.knife.is_some() && e.cook == Some(CookVerb::Fry))
            .cloned();
        let Some(entry) = candidate else { continue };
        let (room, _, container) = env.find_item(&entry.name).unwrap();
        if room != 0 || container {
            continue;
        }
        let mut run = env.clone();
        run.step(&format!("take {}", entry.name));
        let (_, status) = run.step(&format!("cook {} in stove", entry.name));
        assert_eq!(status, StepStatus::Ok);
        match run.terminal() {
            Terminal::Failure(reason) => {
                assert!(reason.contains("before being cooked"), "reason: {reason}");
                return;
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }
    panic!("no seed placed a fry+knife ingredient on a kitchen surface");
}

#[test]
fn observation_templates_match_reference_grammar() {
    let env = gen_cooking_env(0, Difficulty::Hard);
    let obs = env.observe();
    assert!(obs.text.starts_with("You are in the kitchen."));
    assert!(obs.text.contains("In one part of the room you see"));
    // exits go on their own line after room contents
    let exits_line = obs.text.lines().last().unwrap();
    assert!(exits_line.starts_with("To the ") || exits_line.starts_with("Through an open "));
    assert!(obs.valid_actions.contains(&"look around".to_string()));
    assert!(obs.valid_actions.contains(&"examine cookbook".to_string()));

    // cookbook page
    let mut run = env.clone();
    let (obs, status) = run.step("examine cookbook");
    assert_eq!(status, StepStatus::Ok);
    assert!(obs.text.starts_with(
        "Gather all following ingredients and follow the directions to prepare this tasty meal."
    ));
    assert!(obs.text.contains("Ingredients:\n  "));
    assert!(obs.text.ends_with("prepare meal"));
}

#[test]
fn opening_containers_reports_contents() {
    // find a seed with an ingredient inside the kitchen fridge
    for seed in 0..2000 {
        let env = gen_cooking_env(seed, Difficulty::Hard);
        let fridge_item = env.recipe().entries.iter().find(|e| {
            matches!(env.find_item(&e.name), Some((0, f, true)) if f == "fridge")
        });
        let Some(entry) = fridge_item else { continue };
        let mut run = env.clone();
        let (obs, status) = run.step("open fridge");
        assert_eq!(status, StepStatus::Ok);
        assert!(
            obs.text.starts_with("You open the fridge. The fridge contains "),
            "text: {}",
            obs.text
        );
        assert!(obs.text.contains(entry.name.as_str()));
        assert!(obs.valid_actions.contains(&format!("take {}", entry.name)));
        // a second open of the same container is rejected
        let before = run.world_fingerprint();
        let (obs, status) = run.step("open fridge");
        assert_eq!(status, StepStatus::Invalid);
        assert_eq!(obs.text, "Nothing happens.");
        assert_eq!(run.world_fingerprint(), before);
        return;
    }
    panic!("no seed put an ingredient in the kitchen fridge");
}

#[test]
fn empty_container_message_matches() {
    for seed in 0..500 {
        let env = gen_cooking_env(seed, Difficulty::Hard);
        // kitchen cupboard exists in hard kitchens; check when empty
        if env
            .recipe()
            .entries
            .iter()
            .any(|e| matches!(env.find_item(&e.name), Some((0, f, true)) if f == "kitchen cupboard"))
        {
            continue;
        }
        let mut run = env.clone();
        let (obs, status) = run.step("open kitchen cupboard");
        assert_eq!(status, StepStatus::Ok);
        assert_eq!(obs.text, "You open the kitchen cupboard. It's empty inside.");
        return;
    }
    panic!("no seed left the kitchen cupboard empty");
}
