//! Deterministic, seeded text-game environments: Coin Collector and Cooking
//! World. Given (seed, configuration, command list), every observation byte
//! is reproducible. Environment instances are single-owner mutable state;
//! distinct instances may run in parallel.

pub mod catalog;
pub mod coin;
pub mod cooking;
pub mod observation;
pub mod rooms;

pub use coin::{gen_coin_env, CoinEnv, COIN_DEFAULT_ROOMS, COIN_STEP_CAP};
pub use cooking::{
    gen_cooking_env, Appliance, CookVerb, CookingEnv, Difficulty, KnifeVerb, Recipe, RecipeEntry,
    COOKING_EASY_CAP, COOKING_HARD_CAP,
};
pub use observation::{Observation, StepStatus, Terminal, INVALID_RESPONSE};
pub use rooms::{Direction, Door, RoomGraph, DIRECTIONS};

/// Common surface of both games: observe, step, and bookkeeping.
pub trait TextEnv {
    fn observe(&self) -> Observation;
    fn step(&mut self, command: &str) -> (Observation, StepStatus);
    fn steps_taken(&self) -> usize;
    fn step_cap(&self) -> usize;
    fn terminal(&self) -> Terminal;
    fn snapshot(&self) -> serde_json::Value;
    /// World state excluding step accounting; invalid steps must not change it.
    fn world_fingerprint(&self) -> String;
}

/// Replay commands on a copy of the environment and render the interleaved
/// `< command` / `> observation` log. An empty command list yields only the
/// initial observation.
pub fn transcript<E: TextEnv + Clone>(env: &E, commands: &[String]) -> String {
    let mut env = env.clone();
    let mut out = String::new();
    render_observation(&mut out, &env.observe().text);
    for command in commands {
        if !env.terminal().is_ongoing() {
            break;
        }
        out.push_str("< ");
        out.push_str(command);
        out.push('\n');
        let (obs, _) = env.step(command);
        render_observation(&mut out, &obs.text);
    }
    out
}

fn render_observation(out: &mut String, text: &str) {
    out.push_str("> ");
    out.push_str(text);
    out.push('\n');
}
