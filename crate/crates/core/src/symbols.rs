//! Symbol tables mapping text symbols to integer labels.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Integer symbol identifier. Id 0 is epsilon on both tapes.
pub type Label = u32;

pub const EPSILON: Label = 0;
pub const EPSILON_SYMBOL: &str = "<eps>";

/// Bijection between text symbols and labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    by_symbol: BTreeMap<String, Label>,
    by_label: BTreeMap<Label, String>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolTable {
    /// Table containing only `<eps>` at id 0.
    pub fn new() -> Self {
        let mut table = Self::empty();
        table.by_symbol.insert(EPSILON_SYMBOL.to_string(), EPSILON);
        table.by_label.insert(EPSILON, EPSILON_SYMBOL.to_string());
        table
    }

    /// Table with no entries at all, not even epsilon.
    ///
    /// Used for state-name tables, where id 0 names the start state.
    pub fn empty() -> Self {
        SymbolTable {
            by_symbol: BTreeMap::new(),
            by_label: BTreeMap::new(),
        }
    }

    /// Returns the existing label for `symbol`, or assigns the next free id.
    pub fn add_symbol(&mut self, symbol: &str) -> Label {
        if let Some(&label) = self.by_symbol.get(symbol) {
            return label;
        }
        let label = self.by_label.keys().next_back().map_or(0, |&max| max + 1);
        self.by_symbol.insert(symbol.to_string(), label);
        self.by_label.insert(label, symbol.to_string());
        label
    }

    pub fn insert(&mut self, symbol: &str, label: Label) -> Result<()> {
        if self.by_symbol.contains_key(symbol) {
            return Err(Error::DuplicateSymbol {
                symbol: symbol.to_string(),
            });
        }
        if self.by_label.contains_key(&label) {
            return Err(Error::DuplicateId { id: label });
        }
        self.by_symbol.insert(symbol.to_string(), label);
        self.by_label.insert(label, symbol.to_string());
        Ok(())
    }

    pub fn find_label(&self, symbol: &str) -> Option<Label> {
        self.by_symbol.get(symbol).copied()
    }

    pub fn find_symbol(&self, label: Label) -> Option<&str> {
        self.by_label.get(&label).map(String::as_str)
    }

    pub fn contains_label(&self, label: Label) -> bool {
        self.by_label.contains_key(&label)
    }

    pub fn len(&self) -> usize {
        self.by_label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_label.is_empty()
    }

    /// Entries in label order.
    pub fn iter(&self) -> impl Iterator<Item = (Label, &str)> + '_ {
        self.by_label
            .iter()
            .map(|(&label, sym)| (label, sym.as_str()))
    }

    /// Resolves a whitespace-separated symbol string to labels.
    pub fn resolve_str(&self, text: &str) -> Result<Vec<Label>> {
        text.split_whitespace()
            .map(|tok| {
                self.find_label(tok).ok_or_else(|| Error::UnknownSymbol {
                    symbol: tok.to_string(),
                })
            })
            .collect()
    }

    /// Parses `symbol<TAB>id` lines.
    ///
    /// The id is the last whitespace-separated field, so symbols may contain
    /// interior spaces. Blank lines are skipped. An entry for id 0 is required.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = Self::empty();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let (symbol, id) = line
                .rsplit_once(|c: char| c.is_whitespace())
                .ok_or_else(|| Error::Parse {
                    line: idx + 1,
                    message: format!("expected `symbol id`, found `{line}`"),
                })?;
            let symbol = symbol.trim_end();
            let id: Label = id.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("invalid symbol id `{id}`"),
            })?;
            table.insert(symbol, id)?;
        }
        if !table.contains_label(EPSILON) {
            return Err(Error::MissingEpsilon);
        }
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (label, symbol) in self.iter() {
            let _ = writeln!(out, "{symbol}\t{label}");
        }
        out
    }
}
