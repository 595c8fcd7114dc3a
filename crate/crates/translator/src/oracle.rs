//! Deterministic ground-truth translator. It parses the observation log with
//! the environment's own sentence templates and keeps a dead-reckoned grid
//! map, so a door seen from both sides resolves to one place and a frontier
//! placeholder is renamed the moment its real name is learned.
//!
//! Per call it replays the log against the prior problem file and emits the
//! set difference, which makes retries idempotent: reprocessing the same log
//! against the same problem file yields the same edit.

use std::collections::BTreeMap;

use pddlego_pddl::{
    diff_problems, delta_to_json, parse_problem, print_problem, Atom, Condition, ProblemFile,
};

use crate::chunk::{parse_chunk, ChunkEntry};
use crate::names::{base_item_name, slug};
use crate::request::{
    Mode, Translator, TranslatorError, TranslatorRequest, TranslatorResponse,
};

const DIRECTION_WORDS: [(&str, (i32, i32)); 4] = [
    ("north", (0, 1)),
    ("south", (0, -1)),
    ("east", (1, 0)),
    ("west", (-1, 0)),
];

fn direction_delta(dir: &str) -> Option<(i32, i32)> {
    DIRECTION_WORDS
        .iter()
        .find(|(w, _)| *w == dir)
        .map(|(_, d)| *d)
}

const APPLIANCE_TYPES: [&str; 4] = ["stove", "oven", "toaster", "barbeque"];

/// What the tracker believes sits in a grid cell.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Cell {
    Placeholder(String),
    Room(String),
}

impl Cell {
    fn name(&self) -> &str {
        match self {
            Cell::Placeholder(n) | Cell::Room(n) => n,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleTranslator {
    placeholder_prefix: String,
    counter: usize,
    cells: BTreeMap<(i32, i32), Cell>,
    positions: BTreeMap<String, (i32, i32)>,
}

impl Default for OracleTranslator {
    fn default() -> Self {
        Self::new()
    }
}

impl OracleTranslator {
    pub fn new() -> Self {
        OracleTranslator {
            placeholder_prefix: "unk_".to_string(),
            counter: 0,
            cells: BTreeMap::new(),
            positions: BTreeMap::new(),
        }
    }

    /// Use a different placeholder scheme, e.g. `loc` for `loc1`, `loc2`.
    pub fn with_placeholder_prefix(prefix: &str) -> Self {
        OracleTranslator {
            placeholder_prefix: prefix.to_string(),
            ..Self::new()
        }
    }

    fn fresh_placeholder(&mut self) -> String {
        self.counter += 1;
        format!("{}{}", self.placeholder_prefix, self.counter)
    }

    fn bind_cell(&mut self, cell: (i32, i32), entity: Cell) {
        if let Some(old) = self.cells.get(&cell).map(|c| c.name().to_string()) {
            self.positions.remove(&old);
        }
        self.positions.insert(entity.name().to_string(), cell);
        self.cells.insert(cell, entity);
    }

    /// Replay the log onto a working copy of the problem file.
    fn interpret(
        &mut self,
        prior: &ProblemFile,
        entries: &[ChunkEntry],
    ) -> Result<ProblemFile, TranslatorError> {
        let mut working = prior.clone();
        ensure_directions(&mut working);

        // resume from the problem file's own at-fact when possible
        let mut at = current_room(&working);
        if let Some(room) = &at {
            if !self.positions.contains_key(room) {
                self.bind_cell((0, 0), Cell::Room(room.clone()));
            }
        }

        for entry in entries {
            let obs = entry.observation.as_str();
            if obs == "Nothing happens." {
                continue;
            }
            match entry.command.as_deref() {
                None | Some("look around") => {
                    if let Some(room) = parse_room_name(obs) {
                        if at.is_none() {
                            self.register_room(&mut working, &room, (0, 0));
                            working.init.insert(Atom::new("at", vec![room.clone()]));
                            working.init.insert(Atom::new("visited", vec![room.clone()]));
                            at = Some(room.clone());
                        }
                        self.scan_room(&mut working, &room, obs)?;
                    }
                }
                Some(cmd) if cmd.starts_with("move ") => {
                    let dir = cmd.trim_start_matches("move ").to_string();
                    let room = parse_room_name(obs).ok_or_else(|| {
                        TranslatorError::UnrecognizedObservation(format!(
                            "move response without a room header: {obs}"
                        ))
                    })?;
                    let from = at.clone().ok_or_else(|| {
                        TranslatorError::UnrecognizedObservation("move before any location".into())
                    })?;
                    self.enter_room(&mut working, &from, &dir, &room)?;
                    self.scan_room(&mut working, &room, obs)?;
                    at = Some(room);
                }
                Some(cmd) if cmd.starts_with("open door to ") => {
                    let dir = cmd.trim_start_matches("open door to ").to_string();
                    let from = at.clone().ok_or_else(|| {
                        TranslatorError::UnrecognizedObservation("open before any location".into())
                    })?;
                    self.door_opened(&mut working, &from, &dir)?;
                }
                Some(cmd) if cmd.starts_with("open ") => {
                    let room = at.clone().unwrap_or_default();
                    scan_container_contents(&mut working, &room, obs);
                }
                Some(cmd) if cmd.starts_with("take ") => {
                    let item = cmd.trim_start_matches("take ");
                    if item != "coin" && obs.starts_with("You take the ") {
                        let ident = slug(item);
                        declare_item(&mut working, &ident);
                        working.init.insert(Atom::new("have", vec![ident.clone()]));
                        if let Some(room) = &at {
                            working
                                .init
                                .remove(&Atom::new("obj_at", vec![ident, room.clone()]));
                        }
                    }
                }
                Some(_) => {
                    // knife and cook responses mark processing progress
                    if let Some((verb, ident)) = parse_processing(obs) {
                        working.init.insert(Atom::new(verb, vec![ident]));
                    }
                }
            }
        }
        Ok(working)
    }

    fn register_room(&mut self, working: &mut ProblemFile, room: &str, cell: (i32, i32)) {
        working.objects.insert(room.to_string(), "location".into());
        if !self.positions.contains_key(room) {
            self.bind_cell(cell, Cell::Room(room.to_string()));
        }
    }

    /// The agent moved `dir` from `from` and found itself in `room`.
    fn enter_room(
        &mut self,
        working: &mut ProblemFile,
        from: &str,
        dir: &str,
        room: &str,
    ) -> Result<(), TranslatorError> {
        let delta = direction_delta(dir).ok_or_else(|| {
            TranslatorError::UnrecognizedObservation(format!("unknown direction {dir}"))
        })?;
        let from_cell = self.positions.get(from).copied().unwrap_or((0, 0));
        let cell = (from_cell.0 + delta.0, from_cell.1 + delta.1);

        // what the problem file thinks is over there
        let pf_target = working
            .init
            .iter()
            .find(|a| {
                a.predicate == "connected"
                    && a.args.len() == 3
                    && a.args[0] == from
                    && a.args[2] == dir
            })
            .map(|a| a.args[1].clone());

        match pf_target {
            Some(target) if target == room => {}
            Some(target) => {
                // placeholder (or stale name) resolved: rename or merge
                rename_object(working, &target, room);
            }
            None => {
                working
                    .init
                    .insert(Atom::new("connected", vec![from.into(), room.into(), dir.into()]));
            }
        }
        self.register_room(working, room, cell);
        self.bind_cell(cell, Cell::Room(room.to_string()));

        let at_facts: Vec<Atom> = working
            .init
            .iter()
            .filter(|a| a.predicate == "at")
            .cloned()
            .collect();
        for fact in at_facts {
            working.init.remove(&fact);
        }
        working.init.insert(Atom::new("at", vec![room.to_string()]));
        working.init.insert(Atom::new("visited", vec![room.to_string()]));
        Ok(())
    }

    fn door_opened(
        &mut self,
        working: &mut ProblemFile,
        from: &str,
        dir: &str,
    ) -> Result<(), TranslatorError> {
        let target = working
            .init
            .iter()
            .find(|a| {
                a.predicate == "connected"
                    && a.args.len() == 3
                    && a.args[0] == from
                    && a.args[2] == dir
            })
            .map(|a| a.args[1].clone())
            .ok_or_else(|| {
                TranslatorError::UnrecognizedObservation(format!(
                    "opened a door toward {dir} with no known connection"
                ))
            })?;
        working
            .init
            .remove(&Atom::new("closed_door", vec![from.to_string(), target.clone()]));
        working
            .init
            .remove(&Atom::new("closed_door", vec![target, from.to_string()]));
        Ok(())
    }

    /// Fold a room description into the working file: exits, appliances, and
    /// visible items.
    fn scan_room(
        &mut self,
        working: &mut ProblemFile,
        room: &str,
        obs: &str,
    ) -> Result<(), TranslatorError> {
        let room_cell = *self.positions.get(room).unwrap_or(&(0, 0));
        for sentence in split_sentences(obs) {
            if let Some((dir, kind)) = parse_exit(&sentence) {
                let delta = direction_delta(&dir).unwrap();
                let cell = (room_cell.0 + delta.0, room_cell.1 + delta.1);
                match kind {
                    ExitKind::ClosedDoor => {
                        let target = match self.cells.get(&cell).cloned() {
                            Some(existing) => existing.name().to_string(),
                            None => {
                                let p = self.fresh_placeholder();
                                self.bind_cell(cell, Cell::Placeholder(p.clone()));
                                p
                            }
                        };
                        working.objects.entry(target.clone()).or_insert_with(|| "location".into());
                        working.init.insert(Atom::new(
                            "connected",
                            vec![room.into(), target.clone(), dir.clone()],
                        ));
                        working
                            .init
                            .insert(Atom::new("closed_door", vec![room.into(), target]));
                    }
                    ExitKind::Named(name) => {
                        match self.cells.get(&cell).cloned() {
                            Some(Cell::Placeholder(p)) => {
                                // a placeholder's real name became visible
                                rename_object(working, &p, &name);
                                self.bind_cell(cell, Cell::Room(name.clone()));
                            }
                            Some(Cell::Room(_)) => {}
                            None => self.bind_cell(cell, Cell::Room(name.clone())),
                        }
                        working.objects.entry(name.clone()).or_insert_with(|| "location".into());
                        working.init.insert(Atom::new(
                            "connected",
                            vec![room.into(), name, dir.clone()],
                        ));
                    }
                }
            } else if let Some(appliance) = parse_appliance(&sentence) {
                working.objects.insert(appliance.to_string(), appliance.to_string());
                working.init.insert(Atom::new(
                    "obj_at",
                    vec![appliance.to_string(), room.to_string()],
                ));
            } else if let Some(items) = parse_item_list(&sentence) {
                for item in items {
                    if item == "cookbook" || item == "coin" {
                        continue;
                    }
                    let ident = slug(&item);
                    declare_item(working, &ident);
                    if !working.init.contains(&Atom::new("have", vec![ident.clone()])) {
                        working
                            .init
                            .insert(Atom::new("obj_at", vec![ident, room.to_string()]));
                    }
                }
            }
        }
        Ok(())
    }
}

fn ensure_directions(pf: &mut ProblemFile) {
    for (dir, _) in DIRECTION_WORDS {
        pf.objects.entry(dir.to_string()).or_insert_with(|| "direction".into());
    }
}

fn current_room(pf: &ProblemFile) -> Option<String> {
    pf.init
        .iter()
        .find(|a| a.predicate == "at" && a.args.len() == 1)
        .map(|a| a.args[0].clone())
}

/// Rename `old` to `new` across objects and init; merges when `new` exists.
fn rename_object(pf: &mut ProblemFile, old: &str, new: &str) {
    let typ = pf.objects.remove(old).unwrap_or_else(|| "location".into());
    pf.objects.entry(new.to_string()).or_insert(typ);
    pf.init = pf
        .init
        .iter()
        .map(|a| Atom {
            predicate: a.predicate.clone(),
            args: a
                .args
                .iter()
                .map(|arg| if arg == old { new.to_string() } else { arg.clone() })
                .collect(),
        })
        .collect();
}

fn declare_item(pf: &mut ProblemFile, ident: &str) {
    let typ = if ident == "knife" { "knife" } else { "ingredient" };
    pf.objects.entry(ident.to_string()).or_insert_with(|| typ.into());
}

fn split_sentences(obs: &str) -> Vec<String> {
    obs.split_inclusive('.')
        .map(|s| s.trim().trim_end_matches('.').to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_room_name(obs: &str) -> Option<String> {
    let rest = obs.strip_prefix("You are in the ")?;
    let end = rest.find('.')?;
    Some(rest[..end].to_string())
}

enum ExitKind {
    ClosedDoor,
    Named(String),
}

fn parse_exit(sentence: &str) -> Option<(String, ExitKind)> {
    if let Some(rest) = sentence.strip_prefix("To the ") {
        let (dir_word, tail) = rest.split_once(' ')?;
        let dir = dir_word.to_lowercase();
        direction_delta(&dir)?;
        if let Some(room) = tail.strip_prefix("you see the ") {
            return Some((dir, ExitKind::Named(room.to_string())));
        }
        if tail.starts_with("you see a closed ") && tail.ends_with(" door") {
            return Some((dir, ExitKind::ClosedDoor));
        }
        return None;
    }
    if let Some(rest) = sentence.strip_prefix("Through an open ") {
        // "Through an open wood door, to the South you see the corridor"
        let (_, tail) = rest.split_once("door, to the ")?;
        let (dir_word, tail) = tail.split_once(' ')?;
        let dir = dir_word.to_lowercase();
        direction_delta(&dir)?;
        let room = tail.strip_prefix("you see the ")?;
        return Some((dir, ExitKind::Named(room.to_string())));
    }
    None
}

fn parse_appliance(sentence: &str) -> Option<&'static str> {
    for name in APPLIANCE_TYPES {
        let article = if name == "oven" { "an" } else { "a" };
        if sentence.ends_with(&format!("you see {article} {name}"))
            || sentence.ends_with(&format!("is also {article} {name}"))
        {
            return Some(name);
        }
    }
    None
}

/// Items listed on a surface or in an open container within a room
/// description sentence.
fn parse_item_list(sentence: &str) -> Option<Vec<String>> {
    let start = sentence.find(" that has ")?;
    let rest = &sentence[start + " that has ".len()..];
    let list = rest
        .strip_suffix(" on it")
        .or_else(|| rest.strip_suffix(" in it"))?;
    if list == "nothing" {
        return None;
    }
    Some(split_item_list(list))
}

fn split_item_list(list: &str) -> Vec<String> {
    list.split(", ")
        .map(|part| part.strip_prefix("and ").unwrap_or(part))
        .map(|part| base_item_name(part).to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// "You open the fridge. The fridge contains a block of cheese."
fn scan_container_contents(working: &mut ProblemFile, room: &str, obs: &str) {
    if let Some(idx) = obs.find(" contains ") {
        let rest = &obs[idx + " contains ".len()..];
        let list = rest.trim_end_matches('.');
        for item in split_item_list(list) {
            if item == "cookbook" {
                continue;
            }
            let ident = slug(&item);
            declare_item(working, &ident);
            working
                .init
                .insert(Atom::new("obj_at", vec![ident, room.to_string()]));
        }
    }
}

/// "You slice the block of cheese." / "You grill the yellow potato with the barbeque."
fn parse_processing(obs: &str) -> Option<(&'static str, String)> {
    let rest = obs.strip_prefix("You ")?;
    let (verb, tail) = rest.split_once(" the ")?;
    let predicate = match verb {
        "slice" => "sliced",
        "chop" => "chopped",
        "dice" => "diced",
        "grill" => "grilled",
        "roast" => "roasted",
        "fry" => "fried",
        _ => return None,
    };
    let item = tail
        .split_once(" with the ")
        .map(|(i, _)| i)
        .unwrap_or(tail)
        .trim_end_matches('.');
    Some((predicate, slug(item)))
}

impl Translator for OracleTranslator {
    fn translate(&mut self, req: &TranslatorRequest) -> Result<TranslatorResponse, TranslatorError> {
        req.check()?;
        match req.mode {
            Mode::Action => {
                // the oracle is a parser, not a policy; pick deterministically
                let command = req
                    .valid_actions
                    .iter()
                    .find(|a| a.as_str() == "take coin" || a.as_str() == "eat meal")
                    .or_else(|| req.valid_actions.first())
                    .cloned()
                    .expect("checked nonempty");
                Ok(TranslatorResponse::Action {
                    raw: command.clone(),
                    command,
                })
            }
            Mode::InitProblem | Mode::Delta => {
                let prior = match &req.prior_problem {
                    Some(text) => parse_problem(text).map_err(|e| {
                        TranslatorError::Precondition(format!("prior problem unparseable: {e}"))
                    })?,
                    None => {
                        let mut pf = ProblemFile::new("exploration", "environment");
                        pf.goal = Condition::top();
                        pf
                    }
                };
                let entries = parse_chunk(&req.observation);
                let mut working = self.interpret(&prior, &entries)?;

                if req.mode == Mode::InitProblem {
                    if let Some(room) = current_room(&working) {
                        working.goal =
                            Condition::Atom(Atom::new("at", vec![room]));
                    }
                    let text = print_problem(&working);
                    Ok(TranslatorResponse::Problem {
                        raw: text.clone(),
                        text,
                    })
                } else {
                    working.goal = prior.goal.clone();
                    let delta = diff_problems(&prior, &working);
                    let json = delta_to_json(&delta);
                    Ok(TranslatorResponse::Delta {
                        raw: json.clone(),
                        json,
                    })
                }
            }
        }
    }

    fn label(&self) -> String {
        "oracle".to_string()
    }
}
