//! Record/replay of chat-completion responses, keyed by a hash of the full
//! request body. Files are JSON-lines of `{"request_hash", "response_text"}`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone)]
pub enum CassetteMode {
    Off,
    Record(PathBuf),
    Replay(PathBuf),
}

#[derive(Debug, Serialize, Deserialize)]
struct CassetteLine {
    request_hash: String,
    response_text: String,
}

#[derive(Debug, Default)]
pub struct Cassette {
    entries: BTreeMap<String, String>,
}

pub fn request_hash(body: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(body.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Cassette {
    pub fn load(path: &Path) -> std::io::Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut entries = BTreeMap::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let parsed: CassetteLine = serde_json::from_str(line)
                .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
            entries.insert(parsed.request_hash, parsed.response_text);
        }
        Ok(Cassette { entries })
    }

    pub fn lookup(&self, hash: &str) -> Option<&str> {
        self.entries.get(hash).map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn append(path: &Path, hash: &str, response: &str) -> std::io::Result<()> {
        let line = serde_json::to_string(&CassetteLine {
            request_hash: hash.to_string(),
            response_text: response.to_string(),
        })?;
        let mut file = fs::OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(file, "{line}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_and_content_sensitive() {
        let a = request_hash("{\"model\":\"x\"}");
        let b = request_hash("{\"model\":\"x\"}");
        let c = request_hash("{\"model\":\"y\"}");
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn append_then_load_round_trips() {
        let dir = std::env::temp_dir().join(format!("cassette-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("log.jsonl");
        let _ = std::fs::remove_file(&path);
        Cassette::append(&path, "h1", "first\nresponse").unwrap();
        Cassette::append(&path, "h2", "second").unwrap();
        let cassette = Cassette::load(&path).unwrap();
        assert_eq!(cassette.len(), 2);
        assert_eq!(cassette.lookup("h1"), Some("first\nresponse"));
        assert_eq!(cassette.lookup("missing"), None);
        std::fs::remove_file(&path).unwrap();
    }
}
