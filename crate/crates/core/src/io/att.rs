//! AT&T / OpenFST text format.
//!
//! Arc lines are `src dst ilabel olabel [weight]`, final lines are
//! `state [weight]`. A missing weight means the semiring one. The source of
//! the first line is the initial state. Fields are written tab-separated;
//! any run of spaces or tabs is accepted on input.

use std::fmt::{Display, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fst::{Arc, StateId, Wfst};
use crate::semiring::Semiring;
use crate::symbols::{Label, SymbolTable};

/// Parses an AT&T text document.
///
/// States are created on first mention. Labels go through `isymbols` /
/// `osymbols` when given (and the tables are attached to the result);
/// otherwise they must be integer ids.
pub fn parse_att<W>(
    text: &str,
    isymbols: Option<&SymbolTable>,
    osymbols: Option<&SymbolTable>,
) -> Result<Wfst<W>>
where
    W: Semiring + FromStr,
    W::Err: Display,
{
    let mut fst = Wfst::new();
    let mut start = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let state = |tok: &str| -> Result<StateId> {
            tok.parse()
                .map_err(|_| parse_err(format!("invalid state id `{tok}`")))
        };
        let weight = |tok: Option<&&str>| -> Result<W> {
            match tok {
                None => Ok(W::one()),
                Some(tok) => tok
                    .parse::<W>()
                    .map_err(|e| parse_err(format!("invalid weight `{tok}`: {e}"))),
            }
        };

        match fields.len() {
            1 | 2 => {
                let q = state(fields[0])?;
                fst.ensure_state(q);
                start.get_or_insert(q);
                let rho = weight(fields.get(1))?;
                fst.set_final(q, rho)?;
            }
            4 | 5 => {
                let src = state(fields[0])?;
                let dst = state(fields[1])?;
                let ilabel = label(fields[2], isymbols, line_no)?;
                let olabel = label(fields[3], osymbols, line_no)?;
                let w = weight(fields.get(4))?;
                fst.ensure_state(src.max(dst));
                start.get_or_insert(src);
                fst.add_arc(Arc::new(src, ilabel, olabel, w, dst))
                    .map_err(|e| parse_err(e.to_string()))?;
            }
            3 => {
                return Err(parse_err(
                    "arc line is missing its output label".to_string(),
                ))
            }
            n => {
                return Err(parse_err(format!(
                    "expected 1, 2, 4 or 5 fields, found {n}"
                )))
            }
        }
    }

    let start = start.ok_or(Error::Parse {
        line: 0,
        message: "empty document".to_string(),
    })?;
    fst.set_initial(start, W::one())?;
    fst.set_isymbols(isymbols.cloned());
    fst.set_osymbols(osymbols.cloned());
    Ok(fst)
}

fn label(tok: &str, table: Option<&SymbolTable>, line: usize) -> Result<Label> {
    match table {
        Some(table) => table.find_label(tok).ok_or_else(|| Error::UnknownSymbol {
            symbol: tok.to_string(),
        }),
        None => tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid label `{tok}` (no symbol table given)"),
        }),
    }
}

/// Writes `fst` in AT&T text form.
///
/// Requires exactly one initial state with weight one; see
/// [`Wfst::normalize_initial`]. The initial state's block comes first, then
/// the remaining states in id order; each block lists the state's arcs in
/// insertion order followed by its final line.
pub fn write_att<W>(fst: &Wfst<W>) -> Result<String>
where
    W: Semiring + Display,
{
    let start = match fst.num_initials() {
        0 => return Err(Error::NoInitialState),
        1 => fst.start().expect("one initial state"),
        count => return Err(Error::MultipleInitials { count }),
    };
    let lambda = fst.initial_weight(start);
    if !lambda.is_one() {
        return Err(Error::NonUnitInitial {
            state: start,
            weight: lambda.to_string(),
        });
    }
    if fst.arcs(start).is_empty() && !fst.is_final(start) {
        return Err(Error::UnwritableInitial { state: start });
    }

    let mut out = String::new();
    let order = std::iter::once(start).chain(fst.states().filter(|&q| q != start));
    for q in order {
        for arc in fst.arcs(q) {
            let isym = symbol(arc.ilabel, fst.isymbols())?;
            let osym = symbol(arc.olabel, fst.osymbols())?;
            let _ = write!(out, "{}\t{}\t{isym}\t{osym}", arc.source, arc.target);
            if !arc.weight.is_one() {
                let _ = write!(out, "\t{}", arc.weight);
            }
            out.push('\n');
        }
        if fst.is_final(q) {
            let rho = fst.final_weight(q);
            if rho.is_one() {
                let _ = writeln!(out, "{q}");
            } else {
                let _ = writeln!(out, "{q}\t{rho}");
            }
        }
    }
    Ok(out)
}

fn symbol(label: Label, table: Option<&SymbolTable>) -> Result<String> {
    match table {
        Some(table) => table
            .find_symbol(label)
            .map(str::to_string)
            .ok_or(Error::UnknownLabel { label }),
        None => Ok(label.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::TropicalWeight;

    fn parse(text: &str) -> Result<Wfst> {
        parse_att(text, None, None)
    }

    #[test]
    fn final_only_document() {
        let m = parse("0\n").unwrap();
        assert_eq!(m.num_states(), 1);
        assert_eq!(m.start(), Some(0));
        assert!(m.final_weight(0).is_one());
        assert_eq!(write_att(&m).unwrap(), "0\n");
    }

    #[test]
    fn missing_output_label() {
        let err = parse("0 1 a").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn empty_document() {
        assert!(matches!(parse(""), Err(Error::Parse { .. })));
        assert!(matches!(parse("\n  \n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn bad_fields() {
        assert!(matches!(
            parse("0 1 1 1\nx 2 1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("0 1 1 1 -3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("0 1 1 1 Infinity\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("0 1 2 3 4 5\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("0 1 a b\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn accepts_spaces_and_explicit_unit_weights() {
        let m = parse("0   1\t3 4 0\n1 0\n").unwrap();
        assert_eq!(m.arcs(0)[0].weight, TropicalWeight::one());
        assert_eq!(write_att(&m).unwrap(), "0\t1\t3\t4\n1\n");
    }

    #[test]
    fn first_line_source_is_initial() {
        let m = parse("2 0 1 1 1.5\n0 3\n").unwrap();
        assert_eq!(m.start(), Some(2));
        assert_eq!(m.num_states(), 3);
        assert_eq!(m.final_weight(0).value(), 3.0);
        assert_eq!(write_att(&m).unwrap(), "2\t0\t1\t1\t1.5\n0\t3\n");
    }

    #[test]
    fn symbols_are_resolved() {
        let mut isyms = SymbolTable::new();
        isyms.add_symbol("a");
        let mut osyms = SymbolTable::new();
        osyms.add_symbol("b");
        let m: Wfst = parse_att("0 1 a b 15000\n1\n", Some(&isyms), Some(&osyms)).unwrap();
        assert_eq!(m.arcs(0)[0].ilabel, 1);
        assert_eq!(write_att(&m).unwrap(), "0\t1\ta\tb\t15000\n1\n");
        let err =
            parse_att::<TropicalWeight>("0 1 zz b\n", Some(&isyms), Some(&osyms)).unwrap_err();
        assert_eq!(
            err,
            Error::UnknownSymbol {
                symbol: "zz".into()
            }
        );
    }

    #[test]
    fn write_requires_single_unit_initial() {
        let mut m = parse("0 1 1 1\n1\n").unwrap();
        m.set_initial(0, TropicalWeight::new(2.0).unwrap()).unwrap();
        assert!(matches!(
            write_att(&m),
            Err(Error::NonUnitInitial { state: 0, .. })
        ));
        m.set_initial(1, TropicalWeight::one()).unwrap();
        assert_eq!(write_att(&m), Err(Error::MultipleInitials { count: 2 }));
        let normalized = m.normalize_initial();
        let text = write_att(&normalized).unwrap();
        assert!(text.starts_with("2\t0\t0\t0\t2\n"), "{text}");
        assert_eq!(parse(&text).unwrap(), normalized);
    }

    #[test]
    fn isolated_start_cannot_be_written() {
        let mut m: Wfst = Wfst::new();
        m.add_state();
        m.set_initial(0, TropicalWeight::one()).unwrap();
        assert_eq!(write_att(&m), Err(Error::UnwritableInitial { state: 0 }));
    }
}
