//! Room graphs on an implicit grid. Grid placement keeps directions
//! geometrically consistent: moving north then south always returns to the
//! same room, and two rooms are adjacent in at most one direction.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    North,
    South,
    East,
    West,
}

pub const DIRECTIONS: [Direction; 4] = [
    Direction::North,
    Direction::South,
    Direction::East,
    Direction::West,
];

impl Direction {
    pub fn reverse(self) -> Direction {
        match self {
            Direction::North => Direction::South,
            Direction::South => Direction::North,
            Direction::East => Direction::West,
            Direction::West => Direction::East,
        }
    }

    pub fn delta(self) -> (i32, i32) {
        match self {
            Direction::North => (0, 1),
            Direction::South => (0, -1),
            Direction::East => (1, 0),
            Direction::West => (-1, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::North => "north",
            Direction::South => "south",
            Direction::East => "east",
            Direction::West => "west",
        }
    }

    /// Capitalized form used in exit sentences.
    pub fn title(self) -> &'static str {
        match self {
            Direction::North => "North",
            Direction::South => "South",
            Direction::East => "East",
            Direction::West => "West",
        }
    }

    pub fn parse(s: &str) -> Option<Direction> {
        match s {
            "north" => Some(Direction::North),
            "south" => Some(Direction::South),
            "east" => Some(Direction::East),
            "west" => Some(Direction::West),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Door {
    pub adjective: String,
    pub open: bool,
}

/// Connected room graph; every edge is bidirectional with reversed
/// directions, and doors are shared between both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoomGraph {
    rooms: Vec<String>,
    coords: Vec<(i32, i32)>,
    edges: BTreeMap<(usize, Direction), usize>,
    doors: BTreeMap<(usize, usize), Door>,
}

impl RoomGraph {
    /// Grow a spanning layout on the grid, then add extra edges between
    /// adjacent cells and sprinkle closed doors.
    pub fn generate(
        rng: &mut ChaCha8Rng,
        names: Vec<String>,
        extra_edge_rate: f64,
        door_rate: f64,
        door_adjectives: &[&str],
    ) -> Self {
        let n = names.len();
        assert!(n >= 1);
        let mut graph = RoomGraph {
            rooms: names,
            coords: vec![(0, 0)],
            edges: BTreeMap::new(),
            doors: BTreeMap::new(),
        };
        let mut occupied: BTreeMap<(i32, i32), usize> = BTreeMap::new();
        occupied.insert((0, 0), 0);

        let mut undirected: Vec<(usize, usize)> = Vec::new();
        for i in 1..n {
            let mut slots: Vec<(usize, Direction, (i32, i32))> = Vec::new();
            for (&cell, &room) in &occupied {
                for dir in DIRECTIONS {
                    let (dx, dy) = dir.delta();
                    let target = (cell.0 + dx, cell.1 + dy);
                    if !occupied.contains_key(&target) {
                        slots.push((room, dir, target));
                    }
                }
            }
            let (parent, dir, cell) = slots[rng.gen_range(0..slots.len())];
            graph.coords.push(cell);
            occupied.insert(cell, i);
            graph.edges.insert((parent, dir), i);
            graph.edges.insert((i, dir.reverse()), parent);
            undirected.push((parent.min(i), parent.max(i)));
        }

        // extra edges between adjacent cells that are not yet connected
        for (&cell, &room) in &occupied {
            for dir in [Direction::North, Direction::East] {
                let (dx, dy) = dir.delta();
                if let Some(&other) = occupied.get(&(cell.0 + dx, cell.1 + dy)) {
                    if graph.edges.contains_key(&(room, dir)) {
                        continue;
                    }
                    if rng.gen_bool(extra_edge_rate) {
                        graph.edges.insert((room, dir), other);
                        graph.edges.insert((other, dir.reverse()), room);
                        undirected.push((room.min(other), room.max(other)));
                    }
                }
            }
        }

        for pair in undirected {
            if rng.gen_bool(door_rate) {
                let adjective = door_adjectives[rng.gen_range(0..door_adjectives.len())];
                graph.doors.insert(
                    pair,
                    Door {
                        adjective: adjective.to_string(),
                        open: false,
                    },
                );
            }
        }
        graph
    }

    pub fn len(&self) -> usize {
        self.rooms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rooms.is_empty()
    }

    pub fn room_name(&self, idx: usize) -> &str {
        &self.rooms[idx]
    }

    pub fn room_names(&self) -> &[String] {
        &self.rooms
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.rooms.iter().position(|r| r == name)
    }

    pub fn neighbor(&self, room: usize, dir: Direction) -> Option<usize> {
        self.edges.get(&(room, dir)).copied()
    }

    /// Exits of a room in fixed North, South, East, West order.
    pub fn exits(&self, room: usize) -> Vec<(Direction, usize)> {
        DIRECTIONS
            .iter()
            .filter_map(|&d| self.neighbor(room, d).map(|t| (d, t)))
            .collect()
    }

    pub fn door_between(&self, a: usize, b: usize) -> Option<&Door> {
        self.doors.get(&(a.min(b), a.max(b)))
    }

    pub fn open_door(&mut self, a: usize, b: usize) -> bool {
        match self.doors.get_mut(&(a.min(b), a.max(b))) {
            Some(door) if !door.open => {
                door.open = true;
                true
            }
            _ => false,
        }
    }

    /// Passable now: connected and not blocked by a closed door.
    pub fn passable(&self, a: usize, b: usize) -> bool {
        match self.door_between(a, b) {
            Some(door) => door.open,
            None => true,
        }
    }

    pub fn doors(&self) -> impl Iterator<Item = (&(usize, usize), &Door)> {
        self.doors.iter()
    }

    pub fn snapshot(&self) -> serde_json::Value {
        serde_json::json!({
            "rooms": self.rooms,
            "coords": self.coords,
            "edges": self
                .edges
                .iter()
                .map(|((from, dir), to)| {
                    serde_json::json!({ "from": from, "dir": dir.name(), "to": to })
                })
                .collect::<Vec<_>>(),
            "doors": self
                .doors
                .iter()
                .map(|((a, b), door)| {
                    serde_json::json!({
                        "between": [a, b],
                        "adjective": door.adjective,
                        "open": door.open,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(seed: u64, n: usize) -> RoomGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let names = (0..n).map(|i| format!("room{i}")).collect();
        RoomGraph::generate(&mut rng, names, 0.35, 0.4, &["plain", "wood"])
    }

    #[test]
    fn edges_are_symmetric_with_reversed_directions() {
        for seed in 0..30 {
            let g = gen(seed, 11);
            for (&(from, dir), &to) in &g.edges {
                assert_eq!(g.neighbor(to, dir.reverse()), Some(from));
            }
        }
    }

    #[test]
    fn graph_is_connected() {
        for seed in 0..30 {
            let g = gen(seed, 11);
            let mut seen = vec![false; g.len()];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(r) = stack.pop() {
                for (_, t) in g.exits(r) {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
            assert!(seen.iter().all(|&s| s), "seed {seed} disconnected");
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(gen(5, 11), gen(5, 11));
    }

    #[test]
    fn doors_shared_between_sides() {
        for seed in 0..20 {
            let mut g = gen(seed, 8);
            let doored: Vec<(usize, usize)> = g.doors().map(|(&p, _)| p).collect();
            for (a, b) in doored {
                assert!(!g.passable(a, b));
                assert!(!g.passable(b, a));
                assert!(g.open_door(b, a));
                assert!(g.passable(a, b));
                assert!(g.passable(b, a));
            }
        }
    }
}
