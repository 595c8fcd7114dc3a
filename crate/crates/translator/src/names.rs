//! Mapping between environment surface names and PDDL identifiers.
//! Environment names never contain underscores, so the mapping is invertible.

pub fn slug(name: &str) -> String {
    name.to_lowercase().replace(' ', "_")
}

pub fn unslug(ident: &str) -> String {
    ident.replace('_', " ")
}

/// Strip the article and any "raw" marker from a rendered item name:
/// "a raw yellow potato" -> "yellow potato".
pub fn base_item_name(display: &str) -> &str {
    let rest = display
        .strip_prefix("some ")
        .or_else(|| display.strip_prefix("an "))
        .or_else(|| display.strip_prefix("a "))
        .unwrap_or(display);
    rest.strip_prefix("raw ").unwrap_or(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slug_round_trip() {
        assert_eq!(slug("block of cheese"), "block_of_cheese");
        assert_eq!(unslug("block_of_cheese"), "block of cheese");
        assert_eq!(slug("knife"), "knife");
    }

    #[test]
    fn item_names_lose_articles_and_raw() {
        assert_eq!(base_item_name("a raw yellow potato"), "yellow potato");
        assert_eq!(base_item_name("some black pepper"), "black pepper");
        assert_eq!(base_item_name("an oven"), "oven");
        assert_eq!(base_item_name("a knife"), "knife");
    }
}
