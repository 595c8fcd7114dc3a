//! Coin Collector: navigate rooms, open closed doors, find and take the coin.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{COIN_ROOM_POOL, DOOR_ADJECTIVES};
use crate::observation::{Observation, StepStatus, Terminal, INVALID_RESPONSE};
use crate::rooms::{Direction, RoomGraph, DIRECTIONS};
use crate::TextEnv;

pub const COIN_STEP_CAP: usize = 50;
pub const COIN_DEFAULT_ROOMS: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoinEnv {
    graph: RoomGraph,
    agent: usize,
    coin_room: usize,
    coin_taken: bool,
    steps: usize,
    cap: usize,
    terminal: Terminal,
}

/// Deterministic function of (seed, rooms): layout, doors, and coin placement
/// all come from one seeded stream.
pub fn gen_coin_env(seed: u64, rooms: usize) -> CoinEnv {
    assert!(rooms >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<String> = COIN_ROOM_POOL.iter().map(|s| s.to_string()).collect();
    pool.shuffle(&mut rng);
    while pool.len() < rooms {
        let n = pool.len();
        pool.push(format!("room{n}"));
    }
    pool.truncate(rooms);

    let graph = RoomGraph::generate(&mut rng, pool, 0.35, 0.4, DOOR_ADJECTIVES);
    let coin_room = if rooms == 1 { 0 } else { rng.gen_range(1..rooms) };

    CoinEnv {
        graph,
        agent: 0,
        coin_room,
        coin_taken: false,
        steps: 0,
        cap: COIN_STEP_CAP,
        terminal: Terminal::Ongoing,
    }
}

impl CoinEnv {
    pub fn graph(&self) -> &RoomGraph {
        &self.graph
    }

    pub fn agent_room(&self) -> usize {
        self.agent
    }

    pub fn coin_room(&self) -> usize {
        self.coin_room
    }

    fn coin_here(&self) -> bool {
        !self.coin_taken && self.agent == self.coin_room
    }

    fn describe_room(&self) -> String {
        let mut text = format!("You are in the {}.", self.graph.room_name(self.agent));
        if self.coin_here() {
            text.push_str(" In one part of the room you see a coin.");
            text.push('\n');
        } else {
            text.push(' ');
        }
        text.push_str(&exit_clauses(&self.graph, self.agent).join(" "));
        text
    }

    fn menu(&self) -> Vec<String> {
        if !self.terminal.is_ongoing() {
            return Vec::new();
        }
        let mut actions = Vec::new();
        for d in DIRECTIONS {
            actions.push(format!("move {}", d.name()));
        }
        for d in DIRECTIONS {
            actions.push(format!("open door to {}", d.name()));
        }
        if self.coin_here() {
            actions.push("take coin".to_string());
        }
        actions
    }

    fn obs(&self, text: String) -> Observation {
        Observation {
            text,
            valid_actions: self.menu(),
            terminal: self.terminal.clone(),
        }
    }
}

/// Exit sentences in N/S/E/W order, shared with the cooking game.
pub(crate) fn exit_clauses(graph: &RoomGraph, room: usize) -> Vec<String> {
    graph
        .exits(room)
        .into_iter()
        .map(|(dir, target)| match graph.door_between(room, target) {
            Some(door) if !door.open => {
                format!("To the {} you see a closed {} door.", dir.title(), door.adjective)
            }
            Some(door) => format!(
                "Through an open {} door, to the {} you see the {}.",
                door.adjective,
                dir.title(),
                graph.room_name(target)
            ),
            None => format!(
                "To the {} you see the {}.",
                dir.title(),
                graph.room_name(target)
            ),
        })
        .collect()
}

impl TextEnv for CoinEnv {
    fn observe(&self) -> Observation {
        self.obs(self.describe_room())
    }

    fn step(&mut self, command: &str) -> (Observation, StepStatus) {
        if !self.terminal.is_ongoing() {
            return (self.obs(INVALID_RESPONSE.to_string()), StepStatus::Invalid);
        }
        self.steps += 1;

        let (text, status) = self.execute(command);

        if self.terminal.is_ongoing() && self.steps >= self.cap {
            self.terminal = Terminal::Failure("step limit reached".to_string());
        }
        (self.obs(text), status)
    }

    fn steps_taken(&self) -> usize {
        self.steps
    }

    fn step_cap(&self) -> usize {
        self.cap
    }

    fn terminal(&self) -> Terminal {
        self.terminal.clone()
    }

    fn snapshot(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": "coin",
            "graph": self.graph.snapshot(),
            "agent": self.agent,
            "coin_room": self.coin_room,
            "coin_taken": self.coin_taken,
            "steps": self.steps,
            "cap": self.cap,
            "terminal": self.terminal,
        })
    }

    /// World state without step accounting, for no-mutation checks.
    fn world_fingerprint(&self) -> String {
        serde_json::json!({
            "graph": self.graph.snapshot(),
            "agent": self.agent,
            "coin_taken": self.coin_taken,
        })
        .to_string()
    }
}

impl CoinEnv {
    fn execute(&mut self, command: &str) -> (String, StepStatus) {
        if let Some(dir) = command.strip_prefix("move ").and_then(Direction::parse) {
            if let Some(target) = self.graph.neighbor(self.agent, dir) {
                if self.graph.passable(self.agent, target) {
                    self.agent = target;
                    return (self.describe_room(), StepStatus::Ok);
                }
            }
            return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
        }
        if let Some(dir) = command.strip_prefix("open door to ").and_then(Direction::parse) {
            if let Some(target) = self.graph.neighbor(self.agent, dir) {
                if let Some(door) = self.graph.door_between(self.agent, target) {
                    if !door.open {
                        let adjective = door.adjective.clone();
                        self.graph.open_door(self.agent, target);
                        return (
                            format!(
                                "You open the {} door, revealing the {}.",
                                adjective,
                                self.graph.room_name(target)
                            ),
                            StepStatus::Ok,
                        );
                    }
                }
            }
            return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
        }
        if command == "take coin" {
            if self.coin_here() {
                self.coin_taken = true;
                self.terminal = Terminal::Success;
                return ("You take the coin.".to_string(), StepStatus::Ok);
            }
            return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
        }
        (INVALID_RESPONSE.to_string(), StepStatus::Invalid)
    }
}
