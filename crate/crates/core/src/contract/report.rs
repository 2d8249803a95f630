use std::fmt::Write as _;

use super::{compile, format_dollars, ContractSpec};
use crate::algorithms::{shortest_distance, shortest_path_with, Direction};
use crate::error::{Error, Result};
use crate::fst::StateId;
use crate::semiring::TropicalWeight;

pub const LITIGATION_NOTE: &str = "litigation costs not modeled";

/// Per-state cost summary of a contract.
#[derive(Debug, Clone, PartialEq)]
pub struct CostRow {
    pub state: StateId,
    pub label: String,
    /// Cheapest cost of reaching this state from the start.
    pub cost_from_start: TropicalWeight,
    /// Cheapest cost of ending the deal from this state.
    pub cost_to_final: TropicalWeight,
    /// `input:output` events along the cheapest way to a final state;
    /// `None` when no final state is reachable.
    pub cheapest_completion: Option<Vec<String>>,
    /// Entered by the breach event; its own cost is not part of the model.
    pub breach_sink: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub contract: String,
    pub rows: Vec<CostRow>,
}

pub fn cost_report(spec: &ContractSpec) -> Result<CostReport> {
    let fst = compile(spec)?;
    let forward = shortest_distance(&fst, Direction::Forward)?;
    let reverse = shortest_distance(&fst, Direction::Reverse)?;
    let isyms = spec.input_symbols();
    let osyms = spec.output_symbols();
    let breach_states = spec.breach_states();

    let mut states: Vec<_> = spec.states.iter().collect();
    states.sort_by_key(|s| s.id);

    let mut rows = Vec::with_capacity(states.len());
    for s in states {
        let cheapest_completion = match shortest_path_with(&fst, s.id, &reverse) {
            Ok((path, _)) => Some(
                path.arcs
                    .iter()
                    .map(|a| {
                        format!(
                            "{}:{}",
                            isyms.find_symbol(a.ilabel).unwrap_or("?"),
                            osyms.find_symbol(a.olabel).unwrap_or("?")
                        )
                    })
                    .collect(),
            ),
            Err(Error::NoAcceptingPath { .. }) => None,
            Err(e) => return Err(e),
        };
        rows.push(CostRow {
            state: s.id,
            label: s.label.clone(),
            cost_from_start: forward[s.id],
            cost_to_final: reverse[s.id],
            cheapest_completion,
            breach_sink: breach_states.contains(&s.id),
        });
    }
    Ok(CostReport {
        contract: spec.name.clone(),
        rows,
    })
}

impl CostRow {
    fn completion_text(&self) -> String {
        match &self.cheapest_completion {
            None => "no accepting path".to_string(),
            Some(events) if events.is_empty() => "-".to_string(),
            Some(events) => events.join(" "),
        }
    }

    fn note(&self) -> &'static str {
        if self.breach_sink {
            LITIGATION_NOTE
        } else {
            ""
        }
    }
}

impl CostReport {
    pub fn row(&self, state: StateId) -> Option<&CostRow> {
        self.rows.iter().find(|r| r.state == state)
    }

    /// Tab-separated table with a header line.
    pub fn to_plain(&self) -> String {
        let mut out = String::from(
            "state\tlabel\tcost_from_start\tcost_to_final\tcheapest_completion\tnote\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.state,
                r.label,
                r.cost_from_start,
                r.cost_to_final,
                r.completion_text(),
                r.note()
            );
        }
        out
    }

    /// Space-aligned table with dollar amounts.
    pub fn to_pretty(&self) -> String {
        let header = [
            "state",
            "label",
            "cost from start",
            "cost to final",
            "cheapest completion",
            "note",
        ]
        .map(str::to_string);
        let mut table = vec![header];
        for r in &self.rows {
            table.push([
                r.state.to_string(),
                r.label.clone(),
                dollars(r.cost_from_start),
                dollars(r.cost_to_final),
                r.completion_text(),
                r.note().to_string(),
            ]);
        }
        let mut widths = [0usize; 6];
        for row in &table {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        if !self.contract.is_empty() {
            let _ = writeln!(out, "{}", self.contract);
        }
        for row in &table {
            let mut line = String::new();
            for (i, (cell, w)) in row.iter().zip(widths).enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                let _ = write!(line, "{cell:<w$}");
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }
}

fn dollars(weight: TropicalWeight) -> String {
    let v = weight.value();
    if weight.is_infinite() {
        "Infinity".to_string()
    } else if v.fract() == 0.0 && v < u64::MAX as f64 {
        format_dollars(v as u64)
    } else {
        format!("${v}")
    }
}
