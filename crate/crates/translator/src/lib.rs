//! The model boundary: translators that map textual observations to an
//! initial problem file, a structured edit, or a direct action.
//!
//! Three implementations share one interface, so the agent and planner can be
//! exercised hermetically: a remote chat-completions client (with cassette
//! record/replay), a deterministic ground-truth oracle, and a seeded fault
//! injector layered over the oracle.

pub mod cassette;
pub mod chunk;
pub mod fault;
pub mod llm;
pub mod names;
pub mod oracle;
pub mod request;

pub use cassette::{request_hash, Cassette, CassetteMode};
pub use chunk::{parse_chunk, render_chunk, ChunkEntry};
pub use fault::{CorruptionEvent, FaultKind, FaultProfile, FaultyTranslator};
pub use llm::{EnvKind, LlmConfig, LlmTranslator, API_KEY_ENV};
pub use names::{base_item_name, slug, unslug};
pub use oracle::OracleTranslator;
pub use request::{
    HistoryTurn, Mode, Translator, TranslatorError, TranslatorRequest, TranslatorResponse,
};
