//! Cooking World: explore rooms, read the recipe, gather ingredients and the
//! knife, process each ingredient exactly as directed, then prepare and eat
//! the meal in the kitchen. Wrong processing ends the episode in failure.

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    furniture_for, ingredient_article, ingredient_processable, Article, FurnitureKind,
    DOOR_ADJECTIVES, INGREDIENTS, ROOM_POOL,
};
use crate::coin::exit_clauses;
use crate::observation::{contents_sentences, item_list, Observation, StepStatus, Terminal, INVALID_RESPONSE};
use crate::rooms::{Direction, RoomGraph, DIRECTIONS};
use crate::TextEnv;

pub const COOKING_EASY_CAP: usize = 20;
pub const COOKING_HARD_CAP: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Difficulty {
    Easy,
    Hard,
}

impl Difficulty {
    pub fn rooms(self) -> usize {
        match self {
            Difficulty::Easy => 2,
            Difficulty::Hard => 5,
        }
    }

    pub fn ingredients(self) -> usize {
        match self {
            Difficulty::Easy => 2,
            Difficulty::Hard => 5,
        }
    }

    pub fn step_cap(self) -> usize {
        match self {
            Difficulty::Easy => COOKING_EASY_CAP,
            Difficulty::Hard => COOKING_HARD_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KnifeVerb {
    Slice,
    Chop,
    Dice,
}

impl KnifeVerb {
    pub fn verb(self) -> &'static str {
        match self {
            KnifeVerb::Slice => "slice",
            KnifeVerb::Chop => "chop",
            KnifeVerb::Dice => "dice",
        }
    }

    pub fn past(self) -> &'static str {
        match self {
            KnifeVerb::Slice => "sliced",
            KnifeVerb::Chop => "chopped",
            KnifeVerb::Dice => "diced",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "slice" => Some(KnifeVerb::Slice),
            "chop" => Some(KnifeVerb::Chop),
            "dice" => Some(KnifeVerb::Dice),
            _ => None,
        }
    }
}

pub const KNIFE_VERBS: [KnifeVerb; 3] = [KnifeVerb::Slice, KnifeVerb::Chop, KnifeVerb::Dice];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CookVerb {
    Grill,
    Roast,
    Fry,
}

impl CookVerb {
    pub fn verb(self) -> &'static str {
        match self {
            CookVerb::Grill => "grill",
            CookVerb::Roast => "roast",
            CookVerb::Fry => "fry",
        }
    }

    pub fn past(self) -> &'static str {
        match self {
            CookVerb::Grill => "grilled",
            CookVerb::Roast => "roasted",
            CookVerb::Fry => "fried",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Appliance {
    Stove,
    Oven,
    Toaster,
    Barbeque,
}

pub const APPLIANCES: [Appliance; 4] = [
    Appliance::Stove,
    Appliance::Oven,
    Appliance::Toaster,
    Appliance::Barbeque,
];

impl Appliance {
    pub fn name(self) -> &'static str {
        match self {
            Appliance::Stove => "stove",
            Appliance::Oven => "oven",
            Appliance::Toaster => "toaster",
            Appliance::Barbeque => "barbeque",
        }
    }

    pub fn article(self) -> &'static str {
        match self {
            Appliance::Oven => "an",
            _ => "a",
        }
    }

    /// What cooking in this appliance does to an ingredient.
    pub fn process(self) -> CookVerb {
        match self {
            Appliance::Stove => CookVerb::Fry,
            Appliance::Oven => CookVerb::Roast,
            Appliance::Toaster | Appliance::Barbeque => CookVerb::Grill,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "stove" => Some(Appliance::Stove),
            "oven" => Some(Appliance::Oven),
            "toaster" => Some(Appliance::Toaster),
            "barbeque" => Some(Appliance::Barbeque),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeEntry {
    pub name: String,
    pub knife: Option<KnifeVerb>,
    pub cook: Option<CookVerb>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    pub entries: Vec<RecipeEntry>,
}

impl Recipe {
    pub fn entry(&self, name: &str) -> Option<&RecipeEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn requires_grill(&self) -> bool {
        self.entries.iter().any(|e| e.cook == Some(CookVerb::Grill))
    }

    /// The cookbook page: ingredient list, then knife directions, cook
    /// directions, and "prepare meal".
    pub fn cookbook_text(&self) -> String {
        let names: Vec<String> = self.entries.iter().map(|e| e.name.clone()).collect();
        let mut directions: Vec<String> = Vec::new();
        for e in &self.entries {
            if let Some(k) = e.knife {
                directions.push(format!("{} the {}", k.verb(), e.name));
            }
        }
        for e in &self.entries {
            if let Some(c) = e.cook {
                directions.push(format!("{} the {}", c.verb(), e.name));
            }
        }
        directions.push("prepare meal".to_string());
        format!(
            "Gather all following ingredients and follow the directions to prepare this tasty meal.\nIngredients:\n  {}\nDirections:\n  {}",
            names.join(", "),
            directions.join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Furniture {
    name: String,
    is_container: bool,
    open: bool,
    items: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RoomContents {
    appliances: Vec<Appliance>,
    furniture: Vec<Furniture>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CookingEnv {
    graph: RoomGraph,
    recipe: Recipe,
    rooms: Vec<RoomContents>,
    agent: usize,
    inventory: BTreeSet<String>,
    knifed: BTreeMap<String, KnifeVerb>,
    cooked: BTreeMap<String, CookVerb>,
    cookbook_read: bool,
    meal_prepared: bool,
    steps: usize,
    cap: usize,
    terminal: Terminal,
}

/// Deterministic function of (seed, difficulty). The kitchen always exists,
/// is the start room, and holds the cookbook, the knife, a stove, and an
/// oven; every cook step in the recipe has a satisfying appliance somewhere.
/// Hard games require grilling and put the grill appliance outside the
/// kitchen.
pub fn gen_cooking_env(seed: u64, difficulty: Difficulty) -> CookingEnv {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hard = difficulty == Difficulty::Hard;
    let n = difficulty.rooms();

    let mut pool: Vec<String> = ROOM_POOL.iter().map(|s| s.to_string()).collect();
    pool.shuffle(&mut rng);
    let mut names = vec!["kitchen".to_string()];
    names.extend(pool.into_iter().take(n - 1));

    let graph = RoomGraph::generate(&mut rng, names, 0.35, 0.4, DOOR_ADJECTIVES);

    // recipe
    let mut catalog: Vec<usize> = (0..INGREDIENTS.len()).collect();
    catalog.shuffle(&mut rng);
    let mut entries = Vec::new();
    for &idx in catalog.iter().take(difficulty.ingredients()) {
        let (name, _, processable) = INGREDIENTS[idx];
        let (knife, cook) = if processable {
            let knife = [None, Some(KnifeVerb::Slice), Some(KnifeVerb::Chop), Some(KnifeVerb::Dice)]
                [rng.gen_range(0..4)];
            let cook = [None, Some(CookVerb::Grill), Some(CookVerb::Roast), Some(CookVerb::Fry)]
                [rng.gen_range(0..4)];
            (knife, cook)
        } else {
            (None, None)
        };
        entries.push(RecipeEntry {
            name: name.to_string(),
            knife,
            cook,
        });
    }
    if hard && !entries.iter().any(|e| e.cook == Some(CookVerb::Grill)) {
        let target = entries
            .iter_mut()
            .find(|e| ingredient_processable(&e.name))
            .expect("five draws always include a processable ingredient");
        target.cook = Some(CookVerb::Grill);
    }
    let recipe = Recipe { entries };

    // rooms, furniture, appliances
    let mut rooms: Vec<RoomContents> = graph
        .room_names()
        .iter()
        .map(|name| RoomContents {
            appliances: Vec::new(),
            furniture: furniture_for(name, hard)
                .into_iter()
                .map(|(fname, kind)| Furniture {
                    name: fname.to_string(),
                    is_container: kind == FurnitureKind::Container,
                    open: false,
                    items: Vec::new(),
                })
                .collect(),
        })
        .collect();

    rooms[0].appliances.push(Appliance::Stove);
    rooms[0].appliances.push(Appliance::Oven);
    let backyard = graph.index_of("backyard");
    if let Some(b) = backyard {
        rooms[b].appliances.push(Appliance::Barbeque);
    }
    if recipe.requires_grill() && backyard.is_none() {
        let room = if hard {
            rng.gen_range(1..n)
        } else {
            // easy: a second room sweep stays cheap with the toaster at home
            0
        };
        rooms[room].appliances.push(Appliance::Toaster);
    } else if rng.gen_bool(0.3) {
        let room = rng.gen_range(0..n);
        if !rooms[room].appliances.contains(&Appliance::Toaster) {
            rooms[room].appliances.push(Appliance::Toaster);
        }
    }

    // cookbook and knife live on the kitchen counter
    let counter = rooms[0]
        .furniture
        .iter_mut()
        .find(|f| f.name == "counter")
        .expect("kitchen always has a counter");
    counter.items.push("cookbook".to_string());
    counter.items.push("knife".to_string());

    // each ingredient placed exactly once, on a surface or in a container
    for entry in &recipe.entries {
        let room = rng.gen_range(0..n);
        let to_container = rng.gen_bool(0.45);
        let pick = {
            let candidates: Vec<usize> = rooms[room]
                .furniture
                .iter()
                .enumerate()
                .filter(|(_, f)| f.is_container == to_container)
                .map(|(i, _)| i)
                .collect();
            if candidates.is_empty() {
                // no furniture of the preferred kind here; use whatever exists
                0
            } else {
                candidates[rng.gen_range(0..candidates.len())]
            }
        };
        rooms[room].furniture[pick].items.push(entry.name.clone());
    }

    CookingEnv {
        graph,
        recipe,
        rooms,
        agent: 0,
        inventory: BTreeSet::new(),
        knifed: BTreeMap::new(),
        cooked: BTreeMap::new(),
        cookbook_read: false,
        meal_prepared: false,
        steps: 0,
        cap: difficulty.step_cap(),
        terminal: Terminal::Ongoing,
    }
}

impl CookingEnv {
    pub fn graph(&self) -> &RoomGraph {
        &self.graph
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    pub fn agent_room(&self) -> usize {
        self.agent
    }

    pub fn inventory(&self) -> &BTreeSet<String> {
        &self.inventory
    }

    /// Rooms holding each appliance kind, for ground-truth checks in tests.
    pub fn appliance_rooms(&self, appliance: Appliance) -> Vec<usize> {
        self.rooms
            .iter()
            .enumerate()
            .filter(|(_, r)| r.appliances.contains(&appliance))
            .map(|(i, _)| i)
            .collect()
    }

    /// Locate an item still in the world: (room, furniture name, is_container).
    pub fn find_item(&self, item: &str) -> Option<(usize, String, bool)> {
        for (i, room) in self.rooms.iter().enumerate() {
            for f in &room.furniture {
                if f.items.iter().any(|x| x == item) {
                    return Some((i, f.name.clone(), f.is_container));
                }
            }
        }
        None
    }

    /// Where each recipe ingredient starts, for ground-truth checks.
    pub fn ingredient_rooms(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for (i, room) in self.rooms.iter().enumerate() {
            for f in &room.furniture {
                for item in &f.items {
                    if item != "cookbook" && item != "knife" {
                        out.insert(item.clone(), i);
                    }
                }
            }
        }
        out
    }

    fn display_name(&self, item: &str) -> String {
        match item {
            "cookbook" => "a cookbook".to_string(),
            "knife" => "a knife".to_string(),
            name => {
                let article = ingredient_article(name).word();
                let raw = self
                    .recipe
                    .entry(name)
                    .map(|e| e.cook.is_some() && !self.cooked.contains_key(name))
                    .unwrap_or(false);
                if raw {
                    format!("{} raw {}", article, name)
                } else {
                    format!("{} {}", article, name)
                }
            }
        }
    }

    fn describe_room(&self) -> String {
        let contents = &self.rooms[self.agent];
        let mut frags: Vec<String> = Vec::new();
        for a in &contents.appliances {
            frags.push(format!("{} {}", a.article(), a.name()));
        }
        for f in &contents.furniture {
            let frag = if f.is_container {
                if !f.open {
                    format!("a {} that is closed", f.name)
                } else if f.items.is_empty() {
                    format!("a {} that is open, that has nothing in it", f.name)
                } else {
                    let items: Vec<String> =
                        f.items.iter().map(|i| self.display_name(i)).collect();
                    format!("a {} that is open, that has {} in it", f.name, item_list(&items))
                }
            } else if f.items.is_empty() {
                format!("a {}, that has nothing on it", f.name)
            } else {
                let items: Vec<String> = f.items.iter().map(|i| self.display_name(i)).collect();
                format!("a {} that has {} on it", f.name, item_list(&items))
            };
            frags.push(frag);
        }

        let mut text = format!("You are in the {}.", self.graph.room_name(self.agent));
        if !frags.is_empty() {
            text.push(' ');
            text.push_str(&contents_sentences(&frags));
            text.push('\n');
        } else {
            text.push(' ');
        }
        text.push_str(&exit_clauses(&self.graph, self.agent).join(" "));
        text
    }

    fn cookbook_visible(&self) -> bool {
        self.visible_items().iter().any(|i| i == "cookbook")
    }

    /// Items in the current room on surfaces or in open containers.
    fn visible_items(&self) -> Vec<String> {
        let mut out = Vec::new();
        for f in &self.rooms[self.agent].furniture {
            if !f.is_container || f.open {
                out.extend(f.items.iter().cloned());
            }
        }
        out
    }

    fn held_ingredients(&self) -> Vec<String> {
        self.inventory
            .iter()
            .filter(|i| i.as_str() != "knife")
            .cloned()
            .collect()
    }

    fn ready_to_prepare(&self) -> bool {
        self.recipe.entries.iter().all(|e| {
            self.inventory.contains(&e.name)
                && self.knifed.get(&e.name).copied() == e.knife
                && self.cooked.get(&e.name).copied() == e.cook
        })
    }

    fn menu(&self) -> Vec<String> {
        if !self.terminal.is_ongoing() {
            return Vec::new();
        }
        let mut actions = vec!["look around".to_string()];
        if self.cookbook_visible() {
            actions.push("examine cookbook".to_string());
        }
        for d in DIRECTIONS {
            actions.push(format!("move {}", d.name()));
        }
        for d in DIRECTIONS {
            actions.push(format!("open door to {}", d.name()));
        }
        for f in &self.rooms[self.agent].furniture {
            if f.is_container && !f.open {
                actions.push(format!("open {}", f.name));
            }
        }
        for item in self.visible_items() {
            if item != "cookbook" {
                actions.push(format!("take {}", item));
            }
        }
        if self.inventory.contains("knife") {
            for ing in self.held_ingredients() {
                for verb in KNIFE_VERBS {
                    actions.push(format!("{} {}", verb.verb(), ing));
                }
            }
        }
        for ing in self.held_ingredients() {
            for a in &self.rooms[self.agent].appliances {
                actions.push(format!("cook {} in {}", ing, a.name()));
            }
        }
        if self.graph.room_name(self.agent) == "kitchen" && self.ready_to_prepare() && !self.meal_prepared
        {
            actions.push("prepare meal".to_string());
        }
        if self.meal_prepared {
            actions.push("eat meal".to_string());
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

    fn fail(&mut self, text: String, reason: String) -> (String, StepStatus) {
        self.terminal = Terminal::Failure(reason);
        (text, StepStatus::Ok)
    }

    fn execute(&mut self, command: &str) -> (String, StepStatus) {
        if command == "look around" {
            return (self.describe_room(), StepStatus::Ok);
        }
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
        if command == "examine cookbook" {
            if self.cookbook_visible() {
                self.cookbook_read = true;
                return (self.recipe.cookbook_text(), StepStatus::Ok);
            }
            return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
        }
        if let Some(name) = command.strip_prefix("open ") {
            let idx = self.rooms[self.agent]
                .furniture
                .iter()
                .position(|f| f.name == name && f.is_container && !f.open);
            match idx {
                Some(i) => {
                    self.rooms[self.agent].furniture[i].open = true;
                    let items = self.rooms[self.agent].furniture[i].items.clone();
                    let text = if items.is_empty() {
                        format!("You open the {}. It's empty inside.", name)
                    } else {
                        let display: Vec<String> =
                            items.iter().map(|i| self.display_name(i)).collect();
                        format!(
                            "You open the {}. The {} contains {}.",
                            name,
                            name,
                            item_list(&display)
                        )
                    };
                    return (text, StepStatus::Ok);
                }
                None => return (INVALID_RESPONSE.to_string(), StepStatus::Invalid),
            }
        }
        if let Some(item) = command.strip_prefix("take ") {
            if item == "cookbook" {
                return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
            }
            for f in self.rooms[self.agent].furniture.iter_mut() {
                if (!f.is_container || f.open) && f.items.iter().any(|i| i == item) {
                    f.items.retain(|i| i != item);
                    self.inventory.insert(item.to_string());
                    return (format!("You take the {}.", item), StepStatus::Ok);
                }
            }
            return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
        }
        for verb in KNIFE_VERBS {
            if let Some(ing) = command.strip_prefix(&format!("{} ", verb.verb())) {
                return self.apply_knife(verb, ing);
            }
        }
        if let Some(rest) = command.strip_prefix("cook ") {
            if let Some((ing, appliance)) = rest.rsplit_once(" in ") {
                return self.apply_cook(ing, appliance);
            }
            return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
        }
        if command == "prepare meal" {
            if self.graph.room_name(self.agent) == "kitchen"
                && self.ready_to_prepare()
                && !self.meal_prepared
            {
                self.meal_prepared = true;
                return ("Adding the meal to your inventory.".to_string(), StepStatus::Ok);
            }
            return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
        }
        if command == "eat meal" {
            if self.meal_prepared {
                self.terminal = Terminal::Success;
                return ("You eat the meal.  It is delicious.".to_string(), StepStatus::Ok);
            }
            return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
        }
        (INVALID_RESPONSE.to_string(), StepStatus::Invalid)
    }

    fn apply_knife(&mut self, verb: KnifeVerb, ing: &str) -> (String, StepStatus) {
        if !self.inventory.contains(ing) || !self.inventory.contains("knife") {
            return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
        }
        let text = format!("You {} the {}.", verb.verb(), ing);
        let required = self.recipe.entry(ing).and_then(|e| e.knife);
        if self.knifed.contains_key(ing) {
            return self.fail(text, format!("the {} was already processed with a knife", ing));
        }
        match required {
            Some(r) if r == verb => {
                self.knifed.insert(ing.to_string(), verb);
                (text, StepStatus::Ok)
            }
            Some(r) => self.fail(
                text,
                format!("the recipe calls for the {} to be {}", ing, r.past()),
            ),
            None => self.fail(
                text,
                format!("the recipe does not call for the {} to be cut", ing),
            ),
        }
    }

    fn apply_cook(&mut self, ing: &str, appliance_name: &str) -> (String, StepStatus) {
        let appliance = match Appliance::parse(appliance_name) {
            Some(a) if self.rooms[self.agent].appliances.contains(&a) => a,
            _ => return (INVALID_RESPONSE.to_string(), StepStatus::Invalid),
        };
        if !self.inventory.contains(ing) {
            return (INVALID_RESPONSE.to_string(), StepStatus::Invalid);
        }
        let process = appliance.process();
        let text = format!("You {} the {} with the {}.", process.verb(), ing, appliance.name());
        if self.cooked.contains_key(ing) {
            return self.fail(text, format!("the {} was already cooked", ing));
        }
        let entry = self.recipe.entry(ing).cloned();
        let (required_knife, required_cook) = match entry {
            Some(e) => (e.knife, e.cook),
            None => (None, None),
        };
        if let Some(k) = required_knife {
            if !self.knifed.contains_key(ing) {
                return self.fail(
                    text,
                    format!("the {} was not {} before being cooked", ing, k.past()),
                );
            }
        }
        match required_cook {
            Some(r) if r == process => {
                self.cooked.insert(ing.to_string(), process);
                (text, StepStatus::Ok)
            }
            Some(r) => self.fail(
                text,
                format!("the recipe calls for the {} to be {}", ing, r.past()),
            ),
            None => self.fail(
                text,
                format!("the recipe does not call for the {} to be cooked", ing),
            ),
        }
    }
}

impl TextEnv for CookingEnv {
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
            "kind": "cooking",
            "graph": self.graph.snapshot(),
            "recipe": self.recipe,
            "rooms": self.rooms,
            "agent": self.agent,
            "inventory": self.inventory,
            "knifed": self.knifed,
            "cooked": self.cooked,
            "cookbook_read": self.cookbook_read,
            "meal_prepared": self.meal_prepared,
            "steps": self.steps,
            "cap": self.cap,
            "terminal": self.terminal,
        })
    }

    fn world_fingerprint(&self) -> String {
        serde_json::json!({
            "graph": self.graph.snapshot(),
            "rooms": self.rooms,
            "agent": self.agent,
            "inventory": self.inventory,
            "knifed": self.knifed,
            "cooked": self.cooked,
            "meal_prepared": self.meal_prepared,
        })
        .to_string()
    }
}
