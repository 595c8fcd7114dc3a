//! Chat-completions client for any endpoint speaking the common JSON shape:
//! `POST {endpoint}/chat/completions` with model, messages, temperature, and
//! an optional JSON response-format flag. Credentials come from an
//! environment variable, never from configuration files.

use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::json;

use pddlego_pddl::fixtures;

use crate::cassette::{request_hash, Cassette, CassetteMode};
use crate::request::{Mode, Translator, TranslatorError, TranslatorRequest, TranslatorResponse};

pub const API_KEY_ENV: &str = "PDDLEGO_API_KEY";

const PDDL_BASE: &str = include_str!("../prompts/pddl_base.txt");
const EDIT_RULES: &str = include_str!("../prompts/edit_rules.txt");
const ACTION_COIN: &str = include_str!("../prompts/action_coin.txt");
const ACTION_COOKING: &str = include_str!("../prompts/action_cooking.txt");
const COOKING_EXTRAS: &str = include_str!("../prompts/cooking_extras.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnvKind {
    Coin,
    Cooking,
}

#[derive(Debug, Clone)]
pub struct LlmConfig {
    pub endpoint: String,
    pub model: String,
    pub temperature: f64,
    /// Ask the server for a JSON object response in delta mode.
    pub force_json: bool,
    pub api_key_env: String,
    pub request_timeout_secs: u64,
    /// Retries for transport-level failures (connect errors, 429, 5xx).
    pub transport_retries: usize,
    pub max_requests: Option<usize>,
    pub max_total_tokens: Option<u64>,
    /// Global floor between requests across all in-flight episodes.
    pub min_request_interval_ms: u64,
}

impl Default for LlmConfig {
    fn default() -> Self {
        LlmConfig {
            endpoint: "https://api.openai.com/v1".to_string(),
            model: "gpt-4-1106-preview".to_string(),
            temperature: 1.0,
            force_json: true,
            api_key_env: API_KEY_ENV.to_string(),
            request_timeout_secs: 90,
            transport_retries: 2,
            max_requests: None,
            max_total_tokens: None,
            min_request_interval_ms: 0,
        }
    }
}

fn global_last_request() -> &'static Mutex<Option<Instant>> {
    static LAST: OnceLock<Mutex<Option<Instant>>> = OnceLock::new();
    LAST.get_or_init(|| Mutex::new(None))
}

pub struct LlmTranslator {
    cfg: LlmConfig,
    env_kind: EnvKind,
    client: reqwest::blocking::Client,
    api_key: Option<String>,
    cassette: CassetteMode,
    requests_made: usize,
    tokens_used: u64,
}

impl LlmTranslator {
    pub fn new(cfg: LlmConfig, env_kind: EnvKind) -> Result<Self, TranslatorError> {
        Self::with_cassette(cfg, env_kind, CassetteMode::Off)
    }

    pub fn with_cassette(
        cfg: LlmConfig,
        env_kind: EnvKind,
        cassette: CassetteMode,
    ) -> Result<Self, TranslatorError> {
        let api_key = std::env::var(&cfg.api_key_env).ok();
        if api_key.is_none() && !matches!(cassette, CassetteMode::Replay(_)) {
            return Err(TranslatorError::Precondition(format!(
                "credentials required: set {}",
                cfg.api_key_env
            )));
        }
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(cfg.request_timeout_secs))
            .build()
            .map_err(|e| TranslatorError::Transport(e.to_string()))?;
        Ok(LlmTranslator {
            cfg,
            env_kind,
            client,
            api_key,
            cassette,
            requests_made: 0,
            tokens_used: 0,
        })
    }

    fn domain_text(&self) -> &'static str {
        match self.env_kind {
            EnvKind::Coin => fixtures::COIN_DOMAIN,
            EnvKind::Cooking => fixtures::COOKING_DOMAIN,
        }
    }

    fn system_prompt(&self, mode: Mode) -> String {
        match mode {
            Mode::Action => match self.env_kind {
                EnvKind::Coin => ACTION_COIN.to_string(),
                EnvKind::Cooking => ACTION_COOKING.to_string(),
            },
            Mode::InitProblem | Mode::Delta => {
                let mut prompt = PDDL_BASE
                    .replace("{domain}", self.domain_text())
                    .replace("{example_problem}", fixtures::EXAMPLE_PROBLEM.trim());
                if mode == Mode::Delta {
                    prompt.push('\n');
                    prompt.push_str(EDIT_RULES);
                    if self.env_kind == EnvKind::Cooking {
                        prompt.push('\n');
                        prompt.push_str(COOKING_EXTRAS);
                    }
                }
                prompt
            }
        }
    }

    fn user_prompt(&self, req: &TranslatorRequest) -> String {
        match req.mode {
            Mode::InitProblem => format!(
                "Observations so far:\n{}\nOutput only the PDDL problem file.",
                req.observation
            ),
            Mode::Delta => format!(
                "Current problem file:\n{}\nNew observations:\n{}\nOutput only the JSON edit.",
                req.prior_problem.as_deref().unwrap_or(""),
                req.observation
            ),
            Mode::Action => {
                let mut out = String::new();
                for turn in &req.history {
                    out.push_str(&format!("< {}\n> {}\n", turn.action, turn.observation));
                }
                out.push_str(&format!(
                    "> {}\nValid actions: {}\nAnswer with exactly one action.",
                    req.observation,
                    req.valid_actions.join(" | ")
                ));
                out
            }
        }
    }

    fn check_budget(&self) -> Result<(), TranslatorError> {
        if let Some(cap) = self.cfg.max_requests {
            if self.requests_made >= cap {
                return Err(TranslatorError::BudgetExceeded(format!(
                    "request cap {cap} reached"
                )));
            }
        }
        if let Some(cap) = self.cfg.max_total_tokens {
            if self.tokens_used >= cap {
                return Err(TranslatorError::BudgetExceeded(format!(
                    "token cap {cap} reached"
                )));
            }
        }
        Ok(())
    }

    fn rate_limit(&self) {
        if self.cfg.min_request_interval_ms == 0 {
            return;
        }
        let interval = Duration::from_millis(self.cfg.min_request_interval_ms);
        let mut last = global_last_request().lock().unwrap();
        if let Some(t) = *last {
            let elapsed = t.elapsed();
            if elapsed < interval {
                std::thread::sleep(interval - elapsed);
            }
        }
        *last = Some(Instant::now());
    }

    fn send(&mut self, body: &serde_json::Value) -> Result<String, TranslatorError> {
        let body_text = body.to_string();
        let hash = request_hash(&body_text);

        if let CassetteMode::Replay(path) = &self.cassette {
            let cassette = Cassette::load(path)
                .map_err(|e| TranslatorError::CassetteMiss(format!("{}: {e}", path.display())))?;
            return cassette
                .lookup(&hash)
                .map(|s| s.to_string())
                .ok_or_else(|| TranslatorError::CassetteMiss(hash));
        }

        self.check_budget()?;
        let api_key = self
            .api_key
            .clone()
            .ok_or_else(|| TranslatorError::Precondition("missing API key".into()))?;

        let url = format!("{}/chat/completions", self.cfg.endpoint.trim_end_matches('/'));
        let mut attempt = 0;
        let content = loop {
            self.rate_limit();
            self.requests_made += 1;
            let result = self
                .client
                .post(&url)
                .bearer_auth(&api_key)
                .json(body)
                .send();
            match result {
                Ok(resp) if resp.status().is_success() => {
                    let parsed: ChatResponse = resp
                        .json()
                        .map_err(|e| TranslatorError::Transport(e.to_string()))?;
                    if let Some(usage) = parsed.usage {
                        self.tokens_used += usage.total_tokens;
                    }
                    let content = parsed
                        .choices
                        .into_iter()
                        .next()
                        .and_then(|c| c.message.content)
                        .unwrap_or_default();
                    if content.trim().is_empty() {
                        return Err(TranslatorError::ModelRefusal);
                    }
                    break content;
                }
                Ok(resp) => {
                    let status = resp.status();
                    let retryable = status.as_u16() == 429 || status.is_server_error();
                    if retryable && attempt < self.cfg.transport_retries {
                        attempt += 1;
                        std::thread::sleep(Duration::from_millis(200 * attempt as u64));
                        continue;
                    }
                    return Err(TranslatorError::Transport(format!("status {status}")));
                }
                Err(e) => {
                    if attempt < self.cfg.transport_retries {
                        attempt += 1;
                        std::thread::sleep(Duration::from_millis(200 * attempt as u64));
                        continue;
                    }
                    return Err(TranslatorError::Transport(e.to_string()));
                }
            }
        };

        if let CassetteMode::Record(path) = &self.cassette {
            Cassette::append(path, &hash, &content)
                .map_err(|e| TranslatorError::Transport(format!("cassette write: {e}")))?;
        }
        Ok(content)
    }
}

#[derive(Debug, Deserialize)]
struct ChatResponse {
    choices: Vec<Choice>,
    usage: Option<Usage>,
}

#[derive(Debug, Deserialize)]
struct Choice {
    message: ChoiceMessage,
}

#[derive(Debug, Deserialize)]
struct ChoiceMessage {
    content: Option<String>,
}

#[derive(Debug, Deserialize)]
struct Usage {
    total_tokens: u64,
}

/// Strip markdown fences and pull the payload out of a chat reply.
fn extract_block(raw: &str, json: bool) -> String {
    let trimmed = raw.trim();
    let unfenced = if trimmed.starts_with("```") {
        trimmed
            .trim_start_matches("```json")
            .trim_start_matches("```pddl")
            .trim_start_matches("```")
            .trim_end_matches("```")
            .trim()
    } else {
        trimmed
    };
    if json {
        if let (Some(start), Some(end)) = (unfenced.find('{'), unfenced.rfind('}')) {
            if start < end {
                return unfenced[start..=end].to_string();
            }
        }
    }
    unfenced.to_string()
}

impl Translator for LlmTranslator {
    fn translate(&mut self, req: &TranslatorRequest) -> Result<TranslatorResponse, TranslatorError> {
        req.check()?;
        let mut body = json!({
            "model": self.cfg.model,
            "messages": [
                { "role": "system", "content": self.system_prompt(req.mode) },
                { "role": "user", "content": self.user_prompt(req) },
            ],
            "temperature": self.cfg.temperature,
        });
        if self.cfg.force_json && req.mode == Mode::Delta {
            body["response_format"] = json!({ "type": "json_object" });
        }
        let raw = self.send(&body)?;
        Ok(match req.mode {
            Mode::InitProblem => TranslatorResponse::Problem {
                text: extract_block(&raw, false),
                raw,
            },
            Mode::Delta => TranslatorResponse::Delta {
                json: extract_block(&raw, true),
                raw,
            },
            Mode::Action => TranslatorResponse::Action {
                command: raw.trim().trim_matches('"').to_string(),
                raw,
            },
        })
    }

    fn label(&self) -> String {
        match &self.cassette {
            CassetteMode::Replay(_) => format!("cassette({})", self.cfg.model),
            _ => format!("llm({})", self.cfg.model),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prompts_embed_domain_and_rules() {
        std::env::set_var("PDDLEGO_TEST_KEY", "k");
        let cfg = LlmConfig {
            api_key_env: "PDDLEGO_TEST_KEY".into(),
            ..LlmConfig::default()
        };
        let t = LlmTranslator::new(cfg, EnvKind::Coin).unwrap();
        let sys = t.system_prompt(Mode::Delta);
        assert!(sys.contains("(define (domain environment)"));
        assert!(sys.contains("never delete the \"visited\" relations"));
        assert!(sys.contains("\"replace\": {}"));
        let init = t.system_prompt(Mode::InitProblem);
        assert!(init.contains("(define (problem exploration)"));
        assert!(!init.contains("never delete"));
    }

    #[test]
    fn missing_credentials_fail_before_any_network() {
        let cfg = LlmConfig {
            api_key_env: "PDDLEGO_SURELY_UNSET_VAR".into(),
            ..LlmConfig::default()
        };
        assert!(matches!(
            LlmTranslator::new(cfg, EnvKind::Coin),
            Err(TranslatorError::Precondition(_))
        ));
    }

    #[test]
    fn extract_block_handles_fences_and_prose() {
        assert_eq!(extract_block("```json\n{\"a\":1}\n```", true), "{\"a\":1}");
        assert_eq!(extract_block("Sure! {\"a\": 1} Done.", true), "{\"a\": 1}");
        assert_eq!(extract_block("```\n(define)\n```", false), "(define)");
    }
}
