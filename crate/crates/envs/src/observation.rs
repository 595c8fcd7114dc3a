//! Observation and step-status types shared by both environments, plus the
//! sentence templates room descriptions are assembled from.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Terminal {
    Ongoing,
    Success,
    Failure(String),
}

impl Terminal {
    pub fn is_ongoing(&self) -> bool {
        matches!(self, Terminal::Ongoing)
    }

    pub fn is_success(&self) -> bool {
        matches!(self, Terminal::Success)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepStatus {
    /// Command executed and changed (or legitimately read) the world.
    Ok,
    /// Command rejected: the step is consumed but the world is unchanged.
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub text: String,
    pub valid_actions: Vec<String>,
    pub terminal: Terminal,
}

/// Response text for rejected commands.
pub const INVALID_RESPONSE: &str = "Nothing happens.";

/// Sentence openers cycled through when describing what a room contains.
const OPENERS: [&str; 4] = [
    "In one part of the room you see",
    "There is also",
    "You also see",
    "In another part of the room you see",
];

/// Assemble description sentences: `things` are fragments like
/// "a stove" or "a fridge that is closed"; each becomes one sentence.
pub fn contents_sentences(things: &[String]) -> String {
    things
        .iter()
        .enumerate()
        .map(|(i, frag)| format!("{} {}.", OPENERS[i % OPENERS.len()], frag))
        .collect::<Vec<_>>()
        .join(" ")
}

/// "a knife", "a red apple, and a cookbook", "some black pepper, and some salt"
pub fn item_list(display_names: &[String]) -> String {
    match display_names.len() {
        0 => String::new(),
        1 => display_names[0].clone(),
        n => {
            let head = display_names[..n - 1].join(", ");
            format!("{}, and {}", head, display_names[n - 1])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn item_lists_use_oxford_and() {
        let one = item_list(&["a knife".into()]);
        assert_eq!(one, "a knife");
        let two = item_list(&["some black pepper".into(), "some salt".into()]);
        assert_eq!(two, "some black pepper, and some salt");
        let four = item_list(&[
            "a knife".into(),
            "a red apple".into(),
            "a raw yellow potato".into(),
            "a cookbook".into(),
        ]);
        assert_eq!(four, "a knife, a red apple, a raw yellow potato, and a cookbook");
    }

    #[test]
    fn openers_cycle() {
        let s = contents_sentences(&[
            "a stove".into(),
            "an oven".into(),
            "a fridge that is closed".into(),
            "a counter that has a knife on it".into(),
            "a dining chair, that has nothing on it".into(),
        ]);
        assert!(s.starts_with("In one part of the room you see a stove. There is also an oven."));
        assert!(s.contains("You also see a fridge that is closed."));
        assert!(s.contains("In another part of the room you see a counter"));
        assert!(s.ends_with("In one part of the room you see a dining chair, that has nothing on it."));
    }
}
