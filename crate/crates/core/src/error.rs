use thiserror::Error;

use crate::fst::StateId;
use crate::symbols::Label;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative weight {value} is outside the tropical carrier")]
    NegativeWeight { value: f64 },

    #[error("invalid weight `{text}`")]
    InvalidWeight { text: String },

    #[error("arc weight is the semiring zero; omit the arc instead")]
    InfiniteArcWeight,

    #[error("unknown state {state}")]
    UnknownState { state: StateId },

    #[error("machine has no initial state")]
    NoInitialState,

    #[error(
        "path is broken at arc {index}: arc source does not continue from the previous target"
    )]
    BrokenPath { index: usize },

    #[error("path starts at state {state}, which is not initial")]
    NonInitialPathStart { state: StateId },

    #[error("path ends at state {state}, which is not final")]
    NonAcceptingPath { state: StateId },

    #[error("no accepting path from state {state}")]
    NoAcceptingPath { state: StateId },

    #[error("unknown symbol `{symbol}`")]
    UnknownSymbol { symbol: String },

    #[error("label {label} has no entry in the symbol table")]
    UnknownLabel { label: Label },

    #[error("search did not terminate within {bound} steps")]
    NonTerminating { bound: usize },

    #[error("state {state} has an input-epsilon arc; determinization requires an epsilon-free input side")]
    InputEpsilon { state: StateId },

    #[error("determinization exceeded the budget of {max_states} states")]
    StateBudgetExceeded { max_states: usize },

    #[error("transducer is not sequential: {reason}")]
    NonSequential { reason: String },

    #[error("machine has {count} initial states; normalize to a single initial state first")]
    MultipleInitials { count: usize },

    #[error("initial weight of state {state} is {weight}, expected the semiring one")]
    NonUnitInitial { state: StateId, weight: String },

    #[error("initial state {state} has neither arcs nor a final weight and cannot be written")]
    UnwritableInitial { state: StateId },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate symbol `{symbol}`")]
    DuplicateSymbol { symbol: String },

    #[error("duplicate symbol id {id}")]
    DuplicateId { id: Label },

    #[error("symbol table has no entry for id 0 (epsilon)")]
    MissingEpsilon,

    #[error("contract references undeclared state {state}")]
    DanglingStateRef { state: StateId },

    #[error("contract declares state {state} more than once")]
    DuplicateStateId { state: StateId },

    #[error("invalid contract: {message}")]
    InvalidContract { message: String },

    #[error("line {line} in [{section}]: {message}")]
    ContractParse {
        line: usize,
        section: String,
        message: String,
    },
}
