//! Weighted finite-state transducers over the tropical semiring, and a
//! contract-modeling layer on top of them.
//!
//! * [`semiring`]: the weight algebra ([`TropicalWeight`]).
//! * [`fst`]: the transducer model ([`Wfst`]), path and string weights,
//!   reversal, and the determinism check.
//! * [`algorithms`]: single-source shortest distance, cheapest paths, and
//!   weighted determinization.
//! * [`io`]: AT&T text format, symbol tables, and Graphviz output.
//! * [`contract`]: contract descriptions, their compilation to transducers,
//!   and cost reports. Ships a widget manufacturing agreement as a fixture.
//!
//! ```
//! use contract_fst::contract::{builtin_manufacturing_contract, compile};
//! use contract_fst::algorithms::{shortest_distance, Direction};
//!
//! let fst = compile(&builtin_manufacturing_contract()).unwrap();
//! assert!(fst.is_deterministic());
//! let d = shortest_distance(&fst, Direction::Forward).unwrap();
//! assert_eq!(d[5].value(), 30_000.0);
//! ```

pub mod algorithms;
pub mod contract;
pub mod error;
pub mod fst;
pub mod io;
pub mod semiring;
pub mod symbols;

pub use error::{Error, Result};
pub use fst::{Arc, Diagnostic, Path, StateId, Wfst};
pub use semiring::{DivisibleSemiring, Semiring, TropicalWeight};
pub use symbols::{Label, SymbolTable, EPSILON};
