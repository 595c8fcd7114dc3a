//! Seeded random problem-file generation, for round-trip and delta-algebra
//! testing. Not part of the library surface proper; enabled by the `testgen`
//! feature.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::ast::{Atom, Condition, ProblemFile};

const TYPES: &[&str] = &["location", "direction", "ingredient", "gadget"];

/// Predicate pool with arities; a generated atom draws its arguments from the
/// problem's objects without regard to types (round-trip tests do not
/// validate against a domain).
const PREDICATES: &[(&str, usize)] = &[
    ("at", 1),
    ("visited", 1),
    ("have", 1),
    ("closed_door", 2),
    ("obj_at", 2),
    ("connected", 3),
];

pub struct ProblemGen {
    rng: ChaCha8Rng,
}

impl ProblemGen {
    pub fn new(seed: u64) -> Self {
        ProblemGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn problem(&mut self) -> ProblemFile {
        let rng = &mut self.rng;
        let mut pf = ProblemFile::new(format!("gen{}", rng.gen_range(0..1000)), "environment");
        let n_objects = rng.gen_range(1..=9);
        for i in 0..n_objects {
            let typ = TYPES[rng.gen_range(0..TYPES.len())];
            pf.objects.insert(format!("obj{}", i), typ.to_string());
        }
        let names: Vec<String> = pf.objects.keys().cloned().collect();
        let n_facts = rng.gen_range(0..=14);
        for _ in 0..n_facts {
            pf.init.insert(random_atom(rng, &names));
        }
        pf.goal = random_condition(rng, &names, 2);
        pf
    }

    /// A mutated copy of `pf`: objects and facts added and removed at random.
    pub fn mutate(&mut self, pf: &ProblemFile) -> ProblemFile {
        let rng = &mut self.rng;
        let mut out = pf.clone();
        for _ in 0..rng.gen_range(0..=2) {
            let typ = TYPES[rng.gen_range(0..TYPES.len())];
            out.objects
                .insert(format!("new{}", rng.gen_range(0..50)), typ.to_string());
        }
        let keys: Vec<String> = out.objects.keys().cloned().collect();
        for name in &keys {
            if rng.gen_bool(0.15) {
                out.objects.remove(name);
            }
        }
        let names: Vec<String> = out.objects.keys().cloned().collect();
        if names.is_empty() {
            return out;
        }
        let facts: Vec<Atom> = out.init.iter().cloned().collect();
        for fact in &facts {
            if rng.gen_bool(0.3) {
                out.init.remove(fact);
            }
        }
        for _ in 0..rng.gen_range(0..=5) {
            out.init.insert(random_atom(rng, &names));
        }
        out
    }
}

fn random_atom(rng: &mut ChaCha8Rng, names: &[String]) -> Atom {
    let (pred, arity) = PREDICATES[rng.gen_range(0..PREDICATES.len())];
    let args = (0..arity)
        .map(|_| names[rng.gen_range(0..names.len())].clone())
        .collect();
    Atom::new(pred, args)
}

fn random_condition(rng: &mut ChaCha8Rng, names: &[String], depth: usize) -> Condition {
    if depth == 0 || rng.gen_bool(0.4) {
        let atom = random_atom(rng, names);
        if rng.gen_bool(0.2) {
            return Condition::Not(atom);
        }
        return Condition::Atom(atom);
    }
    let children = (0..rng.gen_range(0..=3))
        .map(|_| random_condition(rng, names, depth - 1))
        .collect();
    if rng.gen_bool(0.5) {
        Condition::And(children)
    } else {
        Condition::Or(children)
    }
}
