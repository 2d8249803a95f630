//! The `.contract` text format.
//!
//! ```text
//! # comment
//! [contract]
//! name = Manufacturing agreement
//! note = free text, one line per note
//! [states]
//! 0 | START | n/a
//! 2 | litigation | 9, 18-37
//! [initial]
//! 0
//! [finals]
//! 2, 5
//! [transitions]
//! 0 -> 1 | a : b | $15,000 | 4, 5
//! [events]
//! a : b | signed contract : $15,000 payment
//! [breach-events]
//! c | Products insufficient quality and quantity | 1
//! ```
//!
//! Section lists are comma separated; `n/a` stands for an empty list. The
//! `$` and thousands separators in weights are optional. `[contract]`,
//! `[events]` and `[breach-events]` may be omitted.

use std::fmt::Write as _;

use super::{BreachEvent, ContractSpec, ContractState, ContractTransition, EventDescription};
use crate::error::{Error, Result};
use crate::fst::StateId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Contract,
    States,
    Initial,
    Finals,
    Transitions,
    Events,
    BreachEvents,
}

impl Section {
    fn from_header(name: &str) -> Option<Section> {
        Some(match name {
            "contract" => Section::Contract,
            "states" => Section::States,
            "initial" => Section::Initial,
            "finals" => Section::Finals,
            "transitions" => Section::Transitions,
            "events" => Section::Events,
            "breach-events" => Section::BreachEvents,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Section::Contract => "contract",
            Section::States => "states",
            Section::Initial => "initial",
            Section::Finals => "finals",
            Section::Transitions => "transitions",
            Section::Events => "events",
            Section::BreachEvents => "breach-events",
        }
    }
}

struct LineCtx {
    line: usize,
    section: Section,
}

impl LineCtx {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::ContractParse {
            line: self.line,
            section: self.section.name().to_string(),
            message: message.into(),
        }
    }

    fn fields<'a>(&self, text: &'a str, n: usize) -> Result<Vec<&'a str>> {
        let fields: Vec<&str> = text.splitn(n, '|').map(str::trim).collect();
        if fields.len() != n {
            return Err(self.err(format!("expected {n} `|`-separated fields")));
        }
        Ok(fields)
    }

    fn state(&self, text: &str) -> Result<StateId> {
        text.trim()
            .parse()
            .map_err(|_| self.err(format!("invalid state id `{}`", text.trim())))
    }

    fn event_pair(&self, text: &str) -> Result<(String, String)> {
        let (input, output) = text
            .split_once(':')
            .ok_or_else(|| self.err(format!("expected `input : output`, found `{text}`")))?;
        let (input, output) = (input.trim(), output.trim());
        for event in [input, output] {
            if event.is_empty() || event.contains(char::is_whitespace) {
                return Err(self.err(format!("invalid event symbol `{event}`")));
            }
        }
        Ok((input.to_string(), output.to_string()))
    }

    fn dollars(&self, text: &str) -> Result<u64> {
        let cleaned: String = text
            .trim()
            .trim_start_matches('$')
            .chars()
            .filter(|&c| c != ',' && c != '_')
            .collect();
        if cleaned.starts_with('-') {
            return Err(self.err(format!("negative weight `{}`", text.trim())));
        }
        cleaned
            .parse()
            .map_err(|_| self.err(format!("invalid dollar amount `{}`", text.trim())))
    }
}

fn parse_sections(text: &str) -> Vec<String> {
    let text = text.trim();
    if text.is_empty() || text.eq_ignore_ascii_case("n/a") {
        return Vec::new();
    }
    text.split(',').map(|s| s.trim().to_string()).collect()
}

fn render_sections(sections: &[String]) -> String {
    if sections.is_empty() {
        "n/a".to_string()
    } else {
        sections.join(", ")
    }
}

pub fn parse_contract_spec(text: &str) -> Result<ContractSpec> {
    let mut spec = ContractSpec::default();
    let mut section: Option<Section> = None;
    let mut initial: Option<StateId> = None;
    let mut seen_initial = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(header) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let next = Section::from_header(header.trim()).ok_or_else(|| Error::ContractParse {
                line: line_no,
                section: header.trim().to_string(),
                message: "unknown section".to_string(),
            })?;
            if next == Section::Initial {
                seen_initial = true;
            }
            section = Some(next);
            continue;
        }
        let Some(current) = section else {
            return Err(Error::ContractParse {
                line: line_no,
                section: String::new(),
                message: "content before the first section header".to_string(),
            });
        };
        let ctx = LineCtx {
            line: line_no,
            section: current,
        };
        match current {
            Section::Contract => {
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| ctx.err("expected `key = value`"))?;
                match key.trim() {
                    "name" => spec.name = value.trim().to_string(),
                    "note" => spec.notes.push(value.trim().to_string()),
                    other => return Err(ctx.err(format!("unknown key `{other}`"))),
                }
            }
            Section::States => {
                let f = ctx.fields(line, 3)?;
                if f[1].is_empty() {
                    return Err(ctx.err("state label is empty"));
                }
                spec.states.push(ContractState {
                    id: ctx.state(f[0])?,
                    label: f[1].to_string(),
                    sections: parse_sections(f[2]),
                });
            }
            Section::Initial => {
                if initial.is_some() {
                    return Err(ctx.err("only one initial state is allowed"));
                }
                initial = Some(ctx.state(line)?);
            }
            Section::Finals => {
                for tok in line.split(|c: char| c == ',' || c.is_whitespace()) {
                    if !tok.is_empty() {
                        spec.finals.push(ctx.state(tok)?);
                    }
                }
            }
            Section::Transitions => {
                let f = ctx.fields(line, 4)?;
                let (src, dst) = f[0]
                    .split_once("->")
                    .ok_or_else(|| ctx.err("expected `src -> dst`"))?;
                let (input, output) = ctx.event_pair(f[1])?;
                spec.transitions.push(ContractTransition {
                    source: ctx.state(src)?,
                    target: ctx.state(dst)?,
                    input,
                    output,
                    weight: ctx.dollars(f[2])?,
                    sections: parse_sections(f[3]),
                });
            }
            Section::Events => {
                let f = ctx.fields(line, 2)?;
                let (input, output) = ctx.event_pair(f[0])?;
                spec.events.push(EventDescription {
                    input,
                    output,
                    description: f[1].to_string(),
                });
            }
            Section::BreachEvents => {
                let f = ctx.fields(line, 3)?;
                if f[0].is_empty() || f[0].contains(char::is_whitespace) {
                    return Err(ctx.err(format!("invalid breach input event `{}`", f[0])));
                }
                spec.breach_catalog.push(BreachEvent {
                    input: f[0].to_string(),
                    description: f[1].to_string(),
                    section: f[2].to_string(),
                });
            }
        }
    }

    let at_end = |section: Section, message: &str| Error::ContractParse {
        line: last_line,
        section: section.name().to_string(),
        message: message.to_string(),
    };
    if spec.states.is_empty() {
        return Err(at_end(
            Section::States,
            "a contract needs at least one state",
        ));
    }
    if !seen_initial {
        return Err(at_end(Section::Initial, "missing [initial] section"));
    }
    spec.initial = initial.ok_or_else(|| at_end(Section::Initial, "no initial state given"))?;
    Ok(spec)
}

pub fn write_contract_spec(spec: &ContractSpec) -> String {
    let mut out = String::new();
    if !spec.name.is_empty() || !spec.notes.is_empty() {
        out.push_str("[contract]\n");
        if !spec.name.is_empty() {
            let _ = writeln!(out, "name = {}", spec.name);
        }
        for note in &spec.notes {
            let _ = writeln!(out, "note = {note}");
        }
        out.push('\n');
    }

    out.push_str("[states]\n");
    for s in &spec.states {
        let _ = writeln!(
            out,
            "{} | {} | {}",
            s.id,
            s.label,
            render_sections(&s.sections)
        );
    }

    let _ = write!(out, "\n[initial]\n{}\n", spec.initial);

    out.push_str("\n[finals]\n");
    let finals: Vec<String> = spec.finals.iter().map(ToString::to_string).collect();
    if !finals.is_empty() {
        let _ = writeln!(out, "{}", finals.join(", "));
    }

    out.push_str("\n[transitions]\n");
    for t in &spec.transitions {
        let _ = writeln!(
            out,
            "{} -> {} | {} : {} | {} | {}",
            t.source,
            t.target,
            t.input,
            t.output,
            format_dollars(t.weight),
            render_sections(&t.sections)
        );
    }

    if !spec.events.is_empty() {
        out.push_str("\n[events]\n");
        for e in &spec.events {
            let _ = writeln!(out, "{} : {} | {}", e.input, e.output, e.description);
        }
    }

    if !spec.breach_catalog.is_empty() {
        out.push_str("\n[breach-events]\n");
        for b in &spec.breach_catalog {
            let _ = writeln!(out, "{} | {} | {}", b.input, b.description, b.section);
        }
    }
    out
}

/// `15000` → `$15,000`.
pub fn format_dollars(amount: u64) -> String {
    let digits = amount.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3 + 1);
    out.push('$');
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}
