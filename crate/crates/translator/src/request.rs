//! Translator boundary types. A translator maps observations to an initial
//! problem file, an edit delta, or a direct action, depending on the mode.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    InitProblem,
    Delta,
    Action,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryTurn {
    pub action: String,
    pub observation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslatorRequest {
    pub mode: Mode,
    /// Interleaved `< command` / `> observation` log since the last call;
    /// for the first call, just the initial observation.
    pub observation: String,
    /// Current problem file text; required in delta mode, optional when
    /// regenerating from scratch.
    pub prior_problem: Option<String>,
    /// Full action/observation history; action mode only.
    pub history: Vec<HistoryTurn>,
    /// Commands currently accepted by the environment; action mode only.
    pub valid_actions: Vec<String>,
}

impl TranslatorRequest {
    pub fn init_problem(observation: impl Into<String>) -> Self {
        TranslatorRequest {
            mode: Mode::InitProblem,
            observation: observation.into(),
            prior_problem: None,
            history: Vec::new(),
            valid_actions: Vec::new(),
        }
    }

    pub fn delta(observation: impl Into<String>, prior_problem: impl Into<String>) -> Self {
        TranslatorRequest {
            mode: Mode::Delta,
            observation: observation.into(),
            prior_problem: Some(prior_problem.into()),
            history: Vec::new(),
            valid_actions: Vec::new(),
        }
    }

    pub fn action(
        observation: impl Into<String>,
        history: Vec<HistoryTurn>,
        valid_actions: Vec<String>,
    ) -> Self {
        TranslatorRequest {
            mode: Mode::Action,
            observation: observation.into(),
            prior_problem: None,
            history,
            valid_actions,
        }
    }

    /// Mode guards, checked before any translation work or network call.
    pub fn check(&self) -> Result<(), TranslatorError> {
        match self.mode {
            Mode::Delta if self.prior_problem.is_none() => Err(TranslatorError::Precondition(
                "delta mode requires a prior problem file".into(),
            )),
            Mode::Action if self.valid_actions.is_empty() => Err(TranslatorError::Precondition(
                "action mode requires a nonempty valid-action list".into(),
            )),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TranslatorResponse {
    /// Full problem-file text.
    Problem { text: String, raw: String },
    /// Edit JSON in the add/replace/delete wire format.
    Delta { json: String, raw: String },
    /// A single environment command.
    Action { command: String, raw: String },
}

impl TranslatorResponse {
    pub fn matches_mode(&self, mode: Mode) -> bool {
        matches!(
            (self, mode),
            (TranslatorResponse::Problem { .. }, Mode::InitProblem)
                | (TranslatorResponse::Delta { .. }, Mode::Delta)
                | (TranslatorResponse::Action { .. }, Mode::Action)
        )
    }

    pub fn raw(&self) -> &str {
        match self {
            TranslatorResponse::Problem { raw, .. }
            | TranslatorResponse::Delta { raw, .. }
            | TranslatorResponse::Action { raw, .. } => raw,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslatorError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The oracle met text it cannot interpret; a template-drift bug, never
    /// expected on observations produced by the bundled environments.
    #[error("unrecognized observation: {0}")]
    UnrecognizedObservation(String),
    #[error("transport error: {0}")]
    Transport(String),
    #[error("model refused or returned no content")]
    ModelRefusal,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("cassette miss: {0}")]
    CassetteMiss(String),
}

impl TranslatorError {
    pub fn is_retryable(&self) -> bool {
        matches!(self, TranslatorError::Transport(_))
    }
}

/// Anything that can stand at the LLM boundary.
pub trait Translator {
    fn translate(&mut self, req: &TranslatorRequest) -> Result<TranslatorResponse, TranslatorError>;

    /// Stable label for traces and result tables.
    fn label(&self) -> String;
}
