//! Seeded corruption of oracle output, reproducing the failure classes a
//! model-backed translator exhibits: dropped facts, undeclared objects,
//! unparseable output, and forbidden visited deletions.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use pddlego_pddl::{delta_to_json, parse_delta_json, parse_problem, print_problem, Atom, ProblemFile};

use crate::oracle::OracleTranslator;
use crate::request::{Translator, TranslatorError, TranslatorRequest, TranslatorResponse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaultKind {
    DropFact,
    UndeclaredObject,
    SyntaxError,
    DeleteVisited,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FaultProfile {
    /// Per-request corruption probability in [0, 1].
    pub error_probability: f64,
    pub kinds: Vec<FaultKind>,
    pub seed: u64,
}

impl FaultProfile {
    pub fn new(error_probability: f64, kinds: Vec<FaultKind>, seed: u64) -> Self {
        assert!((0.0..=1.0).contains(&error_probability));
        assert!(!kinds.is_empty());
        FaultProfile {
            error_probability,
            kinds,
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorruptionEvent {
    pub call_index: usize,
    pub kind: FaultKind,
    pub note: String,
}

/// Oracle output, corrupted per profile. With probability zero the stream of
/// responses is byte-identical to the plain oracle's.
pub struct FaultyTranslator {
    inner: OracleTranslator,
    profile: FaultProfile,
    rng: ChaCha8Rng,
    calls: usize,
    last_prior: Option<ProblemFile>,
    pub corruption_log: Vec<CorruptionEvent>,
}

impl FaultyTranslator {
    pub fn new(inner: OracleTranslator, profile: FaultProfile) -> Self {
        let rng = ChaCha8Rng::seed_from_u64(profile.seed);
        FaultyTranslator {
            inner,
            profile,
            rng,
            calls: 0,
            last_prior: None,
            corruption_log: Vec::new(),
        }
    }

    fn corrupt(&mut self, response: TranslatorResponse, kind: FaultKind) -> TranslatorResponse {
        let corrupted: Option<(TranslatorResponse, String)> = match (&response, kind) {
            (TranslatorResponse::Delta { json, .. }, FaultKind::SyntaxError) => {
                let cut = json.len() * 3 / 5;
                let mangled: String = json.chars().take(cut).collect();
                Some((
                    TranslatorResponse::Delta {
                        raw: mangled.clone(),
                        json: mangled,
                    },
                    "truncated delta JSON".to_string(),
                ))
            }
            (TranslatorResponse::Problem { text, .. }, FaultKind::SyntaxError) => {
                let mangled = match text.rfind(')') {
                    Some(i) => format!("{}{}", &text[..i], &text[i + 1..]),
                    None => format!("{text}("),
                };
                Some((
                    TranslatorResponse::Problem {
                        raw: mangled.clone(),
                        text: mangled,
                    },
                    "removed a closing parenthesis".to_string(),
                ))
            }
            (TranslatorResponse::Delta { json, .. }, FaultKind::DropFact) => {
                let mut delta = parse_delta_json(json).expect("oracle output parses");
                if delta.init.add.is_empty() {
                    None
                } else {
                    // prefer dropping a connectivity fact; they cause the
                    // most interesting downstream unsolvability
                    let idx = delta
                        .init
                        .add
                        .iter()
                        .position(|a| a.predicate == "connected")
                        .unwrap_or_else(|| self.rng.gen_range(0..delta.init.add.len()));
                    let dropped = delta.init.add.remove(idx);
                    let json = delta_to_json(&delta);
                    Some((
                        TranslatorResponse::Delta {
                            raw: json.clone(),
                            json,
                        },
                        format!("dropped fact {dropped}"),
                    ))
                }
            }
            (TranslatorResponse::Problem { text, .. }, FaultKind::DropFact) => {
                let mut pf = parse_problem(text).expect("oracle output parses");
                let facts: Vec<Atom> = pf.init.iter().cloned().collect();
                if facts.is_empty() {
                    None
                } else {
                    let victim = facts[self.rng.gen_range(0..facts.len())].clone();
                    pf.init.remove(&victim);
                    let text = print_problem(&pf);
                    Some((
                        TranslatorResponse::Problem {
                            raw: text.clone(),
                            text,
                        },
                        format!("dropped fact {victim}"),
                    ))
                }
            }
            (TranslatorResponse::Delta { json, .. }, FaultKind::UndeclaredObject) => {
                let mut delta = parse_delta_json(json).expect("oracle output parses");
                if delta.objects.add.is_empty() {
                    None
                } else {
                    let idx = self.rng.gen_range(0..delta.objects.add.len());
                    let dropped = delta.objects.add.remove(idx);
                    let json = delta_to_json(&delta);
                    Some((
                        TranslatorResponse::Delta {
                            raw: json.clone(),
                            json,
                        },
                        format!("dropped declaration {dropped}"),
                    ))
                }
            }
            (TranslatorResponse::Problem { text, .. }, FaultKind::UndeclaredObject) => {
                let mut pf = parse_problem(text).expect("oracle output parses");
                let mentioned: Vec<String> = pf
                    .init
                    .iter()
                    .flat_map(|a| a.args.iter().cloned())
                    .collect();
                let victim = pf
                    .objects
                    .keys()
                    .find(|name| mentioned.contains(name))
                    .cloned();
                match victim {
                    None => None,
                    Some(name) => {
                        pf.objects.remove(&name);
                        let text = print_problem(&pf);
                        Some((
                            TranslatorResponse::Problem {
                                raw: text.clone(),
                                text,
                            },
                            format!("removed declaration of {name}"),
                        ))
                    }
                }
            }
            (TranslatorResponse::Delta { json, .. }, FaultKind::DeleteVisited) => {
                let visited = self.visited_room();
                match visited {
                    None => None,
                    Some(room) => {
                        let mut delta = parse_delta_json(json).expect("oracle output parses");
                        delta.init.delete.push(Atom::new("visited", vec![room.clone()]));
                        let json = delta_to_json(&delta);
                        Some((
                            TranslatorResponse::Delta {
                                raw: json.clone(),
                                json,
                            },
                            format!("injected delete of (visited {room})"),
                        ))
                    }
                }
            }
            (TranslatorResponse::Problem { .. }, FaultKind::DeleteVisited) => None,
            (TranslatorResponse::Action { .. }, _) => None,
        };
        match corrupted {
            Some((out, note)) => {
                self.corruption_log.push(CorruptionEvent {
                    call_index: self.calls,
                    kind,
                    note,
                });
                out
            }
            None => response,
        }
    }

    fn visited_room(&mut self) -> Option<String> {
        self.last_prior.as_ref().and_then(|pf| {
            pf.init
                .iter()
                .find(|a| a.predicate == "visited")
                .map(|a| a.args[0].clone())
        })
    }
}

impl Translator for FaultyTranslator {
    fn translate(&mut self, req: &TranslatorRequest) -> Result<TranslatorResponse, TranslatorError> {
        self.calls += 1;
        self.last_prior = req
            .prior_problem
            .as_deref()
            .and_then(|t| parse_problem(t).ok());
        let response = self.inner.translate(req)?;
        if self.profile.error_probability > 0.0 && self.rng.gen_bool(self.profile.error_probability)
        {
            let kind = self.profile.kinds[self.rng.gen_range(0..self.profile.kinds.len())];
            return Ok(self.corrupt(response, kind));
        }
        Ok(response)
    }

    fn label(&self) -> String {
        format!("faulty(p={})", self.profile.error_probability)
    }
}
