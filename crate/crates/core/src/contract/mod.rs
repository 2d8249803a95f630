//! Contracts as weighted transducers.
//!
//! A [`ContractSpec`] lists a contract's states, the events that move it
//! between states (input event : output event, with a dollar cost to the
//! analyzing party), its start and end states, and a catalog of breach
//! events that all share one input symbol. [`compile`] turns it into a
//! [`Wfst`] over the tropical semiring; [`cost_report`] runs the distance
//! analyses on it.

mod builtin;
mod format;
mod report;

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::fst::{Arc, StateId, Wfst};
use crate::semiring::{Semiring, TropicalWeight};
use crate::symbols::{Label, SymbolTable, EPSILON, EPSILON_SYMBOL};

pub use builtin::{builtin_contract, builtin_manufacturing_contract, BUILTIN_CONTRACTS};
pub use format::{format_dollars, parse_contract_spec, write_contract_spec};
pub use report::{cost_report, CostReport, CostRow, LITIGATION_NOTE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractState {
    pub id: StateId,
    pub label: String,
    /// Contract sections this state comes from; empty means not applicable.
    pub sections: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractTransition {
    pub source: StateId,
    pub target: StateId,
    pub input: String,
    pub output: String,
    /// Whole dollars.
    pub weight: u64,
    pub sections: Vec<String>,
}

/// Natural-language meaning of an `input : output` event pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventDescription {
    pub input: String,
    pub output: String,
    pub description: String,
}

/// One way of breaching the contract. Every entry is triggered by the same
/// breach input event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreachEvent {
    pub input: String,
    pub description: String,
    pub section: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContractSpec {
    pub name: String,
    pub notes: Vec<String>,
    pub states: Vec<ContractState>,
    pub initial: StateId,
    pub finals: Vec<StateId>,
    pub transitions: Vec<ContractTransition>,
    pub events: Vec<EventDescription>,
    pub breach_catalog: Vec<BreachEvent>,
}

impl ContractSpec {
    pub fn state(&self, id: StateId) -> Option<&ContractState> {
        self.states.iter().find(|s| s.id == id)
    }

    /// The input event shared by every breach catalog entry.
    pub fn breach_input(&self) -> Option<&str> {
        self.breach_catalog.first().map(|b| b.input.as_str())
    }

    /// States entered by the breach input event.
    pub fn breach_states(&self) -> BTreeSet<StateId> {
        match self.breach_input() {
            Some(input) => self
                .transitions
                .iter()
                .filter(|t| t.input == input)
                .map(|t| t.target)
                .collect(),
            None => BTreeSet::new(),
        }
    }

    /// Checks the structural invariants [`compile`] relies on.
    pub fn check(&self) -> Result<()> {
        if self.states.is_empty() {
            return Err(Error::InvalidContract {
                message: "a contract needs at least one state".to_string(),
            });
        }
        let mut seen = HashSet::new();
        for s in &self.states {
            if !seen.insert(s.id) {
                return Err(Error::DuplicateStateId { state: s.id });
            }
        }
        let declared = |q: StateId| -> Result<()> {
            if seen.contains(&q) {
                Ok(())
            } else {
                Err(Error::DanglingStateRef { state: q })
            }
        };
        declared(self.initial)?;
        for &f in &self.finals {
            declared(f)?;
        }
        for t in &self.transitions {
            declared(t.source)?;
            declared(t.target)?;
            for event in [&t.input, &t.output] {
                if event.trim().is_empty() || event.chars().any(char::is_whitespace) {
                    return Err(Error::InvalidContract {
                        message: format!("event symbol `{event}` must be a single non-empty token"),
                    });
                }
            }
        }
        if let Some(input) = self.breach_input() {
            if let Some(other) = self.breach_catalog.iter().find(|b| b.input != input) {
                return Err(Error::InvalidContract {
                    message: format!(
                        "breach events must share one input event; found `{}` and `{input}`",
                        other.input
                    ),
                });
            }
        }
        Ok(())
    }

    fn alphabet(&self, pick: impl Fn(&ContractTransition) -> &str) -> SymbolTable {
        let symbols: BTreeSet<&str> = self
            .transitions
            .iter()
            .map(pick)
            .filter(|s| *s != EPSILON_SYMBOL)
            .collect();
        let mut table = SymbolTable::new();
        for s in symbols {
            table.add_symbol(s);
        }
        table
    }

    /// Input event alphabet: `<eps>` at 0, then events in lexical order.
    pub fn input_symbols(&self) -> SymbolTable {
        self.alphabet(|t| &t.input)
    }

    pub fn output_symbols(&self) -> SymbolTable {
        self.alphabet(|t| &t.output)
    }

    /// State labels keyed by state id.
    pub fn state_names(&self) -> Result<SymbolTable> {
        let mut table = SymbolTable::empty();
        for s in &self.states {
            table.insert(&s.label, s.id as Label)?;
        }
        Ok(table)
    }
}

/// Builds the transducer for `spec`.
///
/// State ids are preserved, one arc per transition in declaration order,
/// λ(initial) and ρ(final) are the tropical one. Input and output symbol
/// tables are attached.
pub fn compile(spec: &ContractSpec) -> Result<Wfst> {
    spec.check()?;
    let isyms = spec.input_symbols();
    let osyms = spec.output_symbols();
    let max_id = spec.states.iter().map(|s| s.id).max().unwrap_or(0);

    let mut fst = Wfst::new();
    fst.ensure_state(max_id);
    for t in &spec.transitions {
        let ilabel = isyms.find_label(&t.input).unwrap_or(EPSILON);
        let olabel = osyms.find_label(&t.output).unwrap_or(EPSILON);
        let weight = TropicalWeight::new(t.weight as f64)?;
        fst.add_arc(Arc::new(t.source, ilabel, olabel, weight, t.target))?;
    }
    fst.set_initial(spec.initial, TropicalWeight::one())?;
    for &f in &spec.finals {
        fst.set_final(f, TropicalWeight::one())?;
    }
    fst.set_isymbols(Some(isyms));
    fst.set_osymbols(Some(osyms));
    Ok(fst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> ContractSpec {
        ContractSpec {
            name: "tiny".into(),
            states: vec![
                ContractState {
                    id: 0,
                    label: "start".into(),
                    sections: vec![],
                },
                ContractState {
                    id: 1,
                    label: "done".into(),
                    sections: vec!["1".into()],
                },
            ],
            initial: 0,
            finals: vec![1],
            transitions: vec![ContractTransition {
                source: 0,
                target: 1,
                input: "pay".into(),
                output: "ship".into(),
                weight: 5,
                sections: vec![],
            }],
            ..ContractSpec::default()
        }
    }

    #[test]
    fn single_state_contract() {
        let spec = ContractSpec {
            states: vec![ContractState {
                id: 0,
                label: "only".into(),
                sections: vec![],
            }],
            initial: 0,
            finals: vec![0],
            ..ContractSpec::default()
        };
        let m = compile(&spec).unwrap();
        assert_eq!(m.num_states(), 1);
        assert_eq!(m.num_arcs(), 0);
        assert_eq!(m.string_weight(&[], &[]).unwrap(), TropicalWeight::one());
    }

    #[test]
    fn compile_tiny() {
        let m = compile(&tiny()).unwrap();
        assert!(m.validate().is_empty());
        assert_eq!(m.string_weight_str("pay", "ship").unwrap().value(), 5.0);
        assert_eq!(m.isymbols().unwrap().find_label("pay"), Some(1));
    }

    #[test]
    fn dangling_and_duplicate_states() {
        let mut spec = tiny();
        spec.transitions[0].target = 9;
        assert_eq!(compile(&spec), Err(Error::DanglingStateRef { state: 9 }));

        let mut spec = tiny();
        spec.finals = vec![4];
        assert_eq!(compile(&spec), Err(Error::DanglingStateRef { state: 4 }));

        let mut spec = tiny();
        spec.states[1].id = 0;
        assert_eq!(compile(&spec), Err(Error::DuplicateStateId { state: 0 }));

        let mut spec = tiny();
        spec.states.clear();
        assert!(matches!(compile(&spec), Err(Error::InvalidContract { .. })));
    }

    #[test]
    fn breach_catalog_must_share_input() {
        let mut spec = tiny();
        spec.breach_catalog = vec![
            BreachEvent {
                input: "pay".into(),
                description: "x".into(),
                section: "1".into(),
            },
            BreachEvent {
                input: "other".into(),
                description: "y".into(),
                section: "2".into(),
            },
        ];
        assert!(matches!(spec.check(), Err(Error::InvalidContract { .. })));
        spec.breach_catalog.pop();
        assert_eq!(
            spec.breach_states().into_iter().collect::<Vec<_>>(),
            vec![1]
        );
    }

    #[test]
    fn shared_source_and_input_is_nondeterministic() {
        let mut spec = tiny();
        spec.states.push(ContractState {
            id: 2,
            label: "elsewhere".into(),
            sections: vec![],
        });
        spec.transitions.push(ContractTransition {
            source: 0,
            target: 2,
            input: "pay".into(),
            output: "refund".into(),
            weight: 0,
            sections: vec![],
        });
        assert!(!compile(&spec).unwrap().is_deterministic());
    }

    #[test]
    fn epsilon_output_event() {
        let mut spec = tiny();
        spec.transitions[0].output = EPSILON_SYMBOL.into();
        let m = compile(&spec).unwrap();
        assert_eq!(m.arcs(0)[0].olabel, EPSILON);
        assert_eq!(m.osymbols().unwrap().len(), 1);
    }
}
