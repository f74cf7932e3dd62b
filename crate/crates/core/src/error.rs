use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("tuple {index} has {found} entries, expected {expected}")]
    Arity { index: usize, found: usize, expected: usize },

    #[error("arc label {label} occurs {count} times, expected exactly twice")]
    ArcCount { label: u32, count: usize },

    #[error("arc label {label} outside 1..={max}")]
    ArcRange { label: u32, max: u32 },

    #[error("unknown crossing letter '{0}'")]
    UnknownLetter(String),

    #[error("triple point {0} does not assign T, M, B exactly once")]
    Roles(usize),

    #[error("diagram is disconnected")]
    Disconnected,

    #[error("rotation system is not planar (Euler characteristic {0})")]
    NonPlanar(i64),

    #[error("no natural orientation: {0}")]
    NotOrientable(String),

    #[error("crossing sign disagrees with strand orientation at crossing {0}")]
    SignMismatch(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("diagram has {crossings} crossings, budget is {budget}")]
    Budget { crossings: usize, budget: usize },

    #[error("fingerprint requires a knot, diagram has {0} components")]
    NotAKnot(usize),
}

pub type Result<T, E = DiagramError> = std::result::Result<T, E>;
