//! Fixed pools the generators draw from: room names, door adjectives,
//! furniture per room, and the ingredient catalog.

/// Rooms other than the kitchen, which always exists in cooking games.
pub const ROOM_POOL: &[&str] = &[
    "corridor",
    "pantry",
    "backyard",
    "bedroom",
    "livingroom",
    "bathroom",
    "laundry",
    "driveway",
];

/// Coin games use a larger pool; the start room is drawn like any other.
pub const COIN_ROOM_POOL: &[&str] = &[
    "kitchen",
    "corridor",
    "pantry",
    "backyard",
    "bedroom",
    "livingroom",
    "bathroom",
    "laundry",
    "driveway",
    "street",
    "supermarket",
    "basement",
    "attic",
    "garage",
];

pub const DOOR_ADJECTIVES: &[&str] = &[
    "wooden",
    "plain",
    "wood",
    "glass",
    "sliding patio",
    "front",
    "screen",
    "fiberglass",
];

/// Article used when listing an item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Article {
    A,
    An,
    Some,
}

impl Article {
    pub fn word(self) -> &'static str {
        match self {
            Article::A => "a",
            Article::An => "an",
            Article::Some => "some",
        }
    }
}

/// (name, article, processable): salt and black pepper never take knife or
/// cook steps; everything else may.
pub const INGREDIENTS: &[(&str, Article, bool)] = &[
    ("salt", Article::Some, false),
    ("black pepper", Article::Some, false),
    ("block of cheese", Article::A, true),
    ("red apple", Article::A, true),
    ("yellow potato", Article::A, true),
    ("red potato", Article::A, true),
    ("white onion", Article::A, true),
    ("red onion", Article::A, true),
    ("carrot", Article::A, true),
    ("red hot pepper", Article::A, true),
    ("banana", Article::A, true),
    ("block of tofu", Article::A, true),
];

pub fn ingredient_article(name: &str) -> Article {
    INGREDIENTS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, a, _)| *a)
        .unwrap_or(Article::A)
}

pub fn ingredient_processable(name: &str) -> bool {
    INGREDIENTS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, p)| *p)
        .unwrap_or(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FurnitureKind {
    Surface,
    Container,
}

/// Furniture by room name: (furniture name, kind). The kitchen counter is
/// always present and holds the cookbook and knife. Container counts are
/// kept small so a full sweep of a room stays cheap in steps.
pub fn furniture_for(room: &str, hard: bool) -> Vec<(&'static str, FurnitureKind)> {
    use FurnitureKind::*;
    match room {
        "kitchen" => {
            if hard {
                vec![
                    ("fridge", Container),
                    ("counter", Surface),
                    ("kitchen cupboard", Container),
                    ("dining chair", Surface),
                ]
            } else {
                vec![("fridge", Container), ("counter", Surface)]
            }
        }
        "corridor" => vec![
            ("key holder", Surface),
            ("shoe cabinet", Container),
            ("umbrella stand", Surface),
            ("coat hanger", Surface),
        ],
        "pantry" => vec![("folding chair", Surface), ("shelf", Surface)],
        "backyard" => vec![
            ("workbench", Surface),
            ("patio chair", Surface),
            ("patio table", Surface),
            ("clothes line", Surface),
        ],
        "bedroom" => vec![
            ("dressing table", Surface),
            ("desk", Surface),
            ("chest of drawers", Container),
            ("bed", Surface),
        ],
        "livingroom" => vec![
            ("sofa", Surface),
            ("coffee table", Surface),
            ("bookcase", Container),
        ],
        "bathroom" => vec![
            ("sink", Surface),
            ("medicine cabinet", Container),
            ("towel rack", Surface),
        ],
        "laundry" => vec![
            ("washing machine", Container),
            ("work table", Surface),
        ],
        "driveway" => vec![("garbage can", Container)],
        _ => vec![("table", Surface)],
    }
}
