//! The observation payload handed to translators: an interleaved
//! `< command` / `> observation` log segment, same format as transcripts.

/// One command/response pair; the episode's first entry has no command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkEntry {
    pub command: Option<String>,
    pub observation: String,
}

pub fn render_chunk(entries: &[ChunkEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        if let Some(cmd) = &entry.command {
            out.push_str("< ");
            out.push_str(cmd);
            out.push('\n');
        }
        out.push_str("> ");
        out.push_str(&entry.observation);
        out.push('\n');
    }
    out
}

/// Inverse of [`render_chunk`]. Lines that open with neither marker continue
/// the current observation (cookbook pages and room descriptions span lines).
pub fn parse_chunk(text: &str) -> Vec<ChunkEntry> {
    let mut entries: Vec<ChunkEntry> = Vec::new();
    let mut pending_command: Option<String> = None;
    for line in text.lines() {
        if let Some(cmd) = line.strip_prefix("< ") {
            pending_command = Some(cmd.to_string());
        } else if let Some(obs) = line.strip_prefix("> ") {
            entries.push(ChunkEntry {
                command: pending_command.take(),
                observation: obs.to_string(),
            });
        } else if let Some(last) = entries.last_mut() {
            last.observation.push('\n');
            last.observation.push_str(line);
        }
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunk_round_trips() {
        let entries = vec![
            ChunkEntry {
                command: None,
                observation: "You are in the kitchen. To the South you see a closed wooden door."
                    .into(),
            },
            ChunkEntry {
                command: Some("examine cookbook".into()),
                observation: "Gather all following ingredients.\nIngredients:\n  salt".into(),
            },
            ChunkEntry {
                command: Some("move south".into()),
                observation: "You are in the pantry. To the North you see the kitchen.".into(),
            },
        ];
        let text = render_chunk(&entries);
        assert_eq!(parse_chunk(&text), entries);
    }

    #[test]
    fn empty_chunk_parses_empty() {
        assert!(parse_chunk("").is_empty());
    }
}
