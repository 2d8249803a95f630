//! Text interchange: AT&T machines, symbol tables, and Graphviz drawings.

mod att;
mod dot;

pub use att::{parse_att, write_att};
pub use dot::{export_dot, DotOptions};

use crate::error::Result;
use crate::symbols::SymbolTable;

/// Parses a `symbol<TAB>id` table. See [`SymbolTable::parse`].
pub fn parse_symbols(text: &str) -> Result<SymbolTable> {
    SymbolTable::parse(text)
}

pub fn write_symbols(table: &SymbolTable) -> String {
    table.to_text()
}
