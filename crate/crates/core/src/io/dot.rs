//! Graphviz rendering.
//!
//! The initial state is drawn bold, final states as double circles, and
//! edges carry `in:out/weight` labels.

use std::fmt::{Display, Write as _};

use crate::fst::Wfst;
use crate::semiring::Semiring;
use crate::symbols::{Label, SymbolTable};

#[derive(Debug, Clone, Default)]
pub struct DotOptions {
    /// Node labels keyed by state id; states without an entry show their id.
    pub state_names: Option<SymbolTable>,
    /// Omit `/weight` on edges whose weight is the semiring one.
    pub suppress_unit_weights: bool,
    /// Also print non-unit final weights inside final nodes.
    pub show_final_weights: bool,
}

pub fn export_dot<W: Semiring + Display>(fst: &Wfst<W>, options: &DotOptions) -> String {
    let mut out = String::new();
    out.push_str("digraph FST {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=circle];\n");

    for q in fst.states() {
        let shape = if fst.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let mut name = options
            .state_names
            .as_ref()
            .and_then(|t| t.find_symbol(q as Label))
            .map_or_else(|| q.to_string(), str::to_string);
        if options.show_final_weights {
            let rho = fst.final_weight(q);
            if fst.is_final(q) && !rho.is_one() {
                name = format!("{name}/{rho}");
            }
        }
        let _ = write!(out, "  {q} [shape={shape}]");
        if fst.is_initial(q) {
            out.push_str(" [style=bold]");
        }
        let _ = writeln!(out, " [label=\"{}\"];", escape(&name));
    }

    for arc in fst.all_arcs() {
        let isym = symbol(arc.ilabel, fst.isymbols());
        let osym = symbol(arc.olabel, fst.osymbols());
        let mut label = format!("{isym}:{osym}");
        if !(options.suppress_unit_weights && arc.weight.is_one()) {
            let _ = write!(label, "/{}", arc.weight);
        }
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            arc.source,
            arc.target,
            escape(&label)
        );
    }
    out.push_str("}\n");
    out
}

fn symbol(label: Label, table: Option<&SymbolTable>) -> String {
    table
        .and_then(|t| t.find_symbol(label))
        .map_or_else(|| label.to_string(), str::to_string)
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::TropicalWeight;

    fn sample() -> Wfst {
        let mut m = Wfst::new();
        m.add_state();
        m.add_state();
        m.set_initial(0, TropicalWeight::one()).unwrap();
        m.add_weighted_arc(0, 5, 6, 0.0, 1).unwrap();
        m.add_weighted_arc(0, 1, 2, 2.5, 1).unwrap();
        m
    }

    #[test]
    fn no_finals_no_doublecircles() {
        let dot = export_dot(&sample(), &DotOptions::default());
        assert!(!dot.contains("doublecircle"));
        assert!(dot.contains("  0 [shape=circle] [style=bold] [label=\"0\"];\n"));
        assert!(dot.contains("  0 -> 1 [label=\"5:6/0\"];\n"));
        assert!(dot.contains("  0 -> 1 [label=\"1:2/2.5\"];\n"));
    }

    #[test]
    fn unit_weights_can_be_hidden() {
        let opts = DotOptions {
            suppress_unit_weights: true,
            ..DotOptions::default()
        };
        let dot = export_dot(&sample(), &opts);
        assert!(dot.contains("[label=\"5:6\"]"));
        assert!(dot.contains("[label=\"1:2/2.5\"]"));
    }

    #[test]
    fn state_names_and_escaping() {
        let mut m = sample();
        m.set_final(1, TropicalWeight::new(3.0).unwrap()).unwrap();
        let mut names = SymbolTable::empty();
        names.insert("START", 0).unwrap();
        names.insert("\"cure period\" has elapsed", 1).unwrap();
        let opts = DotOptions {
            state_names: Some(names),
            show_final_weights: true,
            ..DotOptions::default()
        };
        let dot = export_dot(&m, &opts);
        assert!(
            dot.contains("  1 [shape=doublecircle] [label=\"\\\"cure period\\\" has elapsed/3\"];")
        );
        assert!(dot.contains("[label=\"START\"]"));
    }

    #[test]
    fn output_is_deterministic() {
        let m = sample();
        assert_eq!(
            export_dot(&m, &DotOptions::default()),
            export_dot(&m.clone(), &DotOptions::default())
        );
    }
}
