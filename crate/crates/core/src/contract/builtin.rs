//! Built-in contract fixtures.

use super::{BreachEvent, ContractSpec, ContractState, ContractTransition, EventDescription};

pub const BUILTIN_CONTRACTS: &[&str] = &["manufacturing"];

pub fn builtin_contract(name: &str) -> Option<ContractSpec> {
    match name {
        "manufacturing" => Some(builtin_manufacturing_contract()),
        _ => None,
    }
}

fn sections(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Widget manufacturing agreement, analyzed from the buyer's side.
///
/// The buyer pays $30,000 for one product in two halves, loses $10,000 of
/// profit per month of delay, and loses $30,000 on any breach. Every breach
/// event is lumped into the single input `c` leading to litigation.
pub fn builtin_manufacturing_contract() -> ContractSpec {
    let states = [
        (0, "START", &[][..]),
        (1, "production period has elapsed", &["8"][..]),
        (2, "litigation", &["9", "18-37"][..]),
        (3, "produce shipped", &["4", "7"][..]),
        (
            4,
            "six week production extension period elapses",
            &["8"][..],
        ),
        (5, "TERM/contract complete", &[][..]),
        (6, "\"cure period\" has elapsed", &["8"][..]),
    ]
    .into_iter()
    .map(|(id, label, secs)| ContractState {
        id,
        label: label.to_string(),
        sections: sections(secs),
    })
    .collect();

    let transitions = [
        (0, 1, "a", "b", 15_000, &["4", "5"][..]),
        (0, 2, "c", "d", 30_000, &["18"][..]),
        (1, 3, "e", "f", 15_000, &["4", "8"][..]),
        (1, 4, "g", "h", 15_000, &["8"][..]),
        (1, 2, "c", "d", 30_000, &["18"][..]),
        (3, 5, "i", "j", 0, &["8"][..]),
        (3, 6, "k", "l", 15_000, &["10"][..]),
        (3, 2, "c", "d", 30_000, &["18"][..]),
        (4, 3, "e", "f", 15_000, &["4", "8"][..]),
        (4, 2, "c", "d", 30_000, &["18"][..]),
        (6, 5, "i", "j", 0, &["8"][..]),
        (6, 2, "c", "d", 30_000, &["18"][..]),
    ]
    .into_iter()
    .map(
        |(source, target, input, output, weight, secs)| ContractTransition {
            source,
            target,
            input: input.to_string(),
            output: output.to_string(),
            weight,
            sections: sections(secs),
        },
    )
    .collect();

    let events = [
        ("a", "b", "signed contract : $15,000 payment"),
        (
            "c",
            "d",
            "breach event : non-breaching party waives option to let breaching party cure breach",
        ),
        ("e", "f", "notice of timely completion : buyer remits final 50% payment"),
        ("g", "h", "\"delay\" event : grant of extension"),
        (
            "i",
            "j",
            "buyer inspects product and accepts : manufacturer receives notice of buyer's acceptance",
        ),
        (
            "k",
            "l",
            "buyer rejects product : buyer grants manufacturer opportunity to cure",
        ),
    ]
    .into_iter()
    .map(|(input, output, description)| EventDescription {
        input: input.to_string(),
        output: output.to_string(),
        description: description.to_string(),
    })
    .collect();

    let breach_catalog = BREACH_EVENTS
        .iter()
        .map(|&(description, section)| BreachEvent {
            input: "c".to_string(),
            description: description.to_string(),
            section: section.to_string(),
        })
        .collect();

    ContractSpec {
        name: "Manufacturing agreement".to_string(),
        notes: [
            "Costs are the buyer's, in dollars. Total price $30,000, paid half up front and half on timely completion.",
            "Late delivery costs the buyer $10,000 of profit per month; a six-week extension is weighted $15,000.",
            "A breach at any point costs the buyer $30,000 of lost profit while replacing the manufacturer.",
            "Assumption: the buyer always grants the optional production and cure extensions.",
            "Assumption: nobody offers a chance to cure a breach, so every breach leads to litigation.",
            "Litigation itself carries no weight; its cost varies too much between breaches to model.",
            "e:f is weighted $15,000, the remaining half of the price, rather than the full $30,000.",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        states,
        initial: 0,
        finals: vec![2, 5],
        transitions,
        events,
        breach_catalog,
    }
}

const BREACH_EVENTS: [(&str, &str); 31] = [
    ("Products insufficient quality and quantity", "1"),
    ("Products not in compliance with standards and warranties", "1(a)"),
    ("Manufacturer does not provide parts, labor, or materials", "1(b)"),
    ("Manufacturer does not make its facility and product available for inspection", "1(c)"),
    ("Manufacturer does not provide QC or product information upon request", "1(d)"),
    ("Manufacturer utilizes unauthorized subcontractors and suppliers", "1(e)"),
    ("Manufacturer does not provide batch and lot codes", "1(f)"),
    ("Manufacturer does not provide certificate of analysis", "1(g)"),
    ("Manufacturer does not provide date of manufacturer on products", "1(h)"),
    ("Manufacturer does not maintain manufacturing certifications or GMPs", "2(a)"),
    ("Manufacturer does not maintain emergency action plan", "2(b)"),
    ("Manufacturer does not assist in product enhancement and product development", "2(c)"),
    ("Manufacturer does not provide management supports", "2(d)"),
    ("Manufacturer does not provide assistance with product development in developing markets", "2(e)"),
    ("Manufacturer does not make its facility available for inspection", "2(f)"),
    ("Manufacturer does not comply with price increase/price decease procedures", "3(a), (b)"),
    ("Manufacturer does not remit down payment or final payment", "4"),
    ("Manufacturer does not meet manufacturing requirements (e.g. compliance manufacturing laws)", "6(a)"),
    ("Product does not comply with laws in target market", "6(b)"),
    ("Product does not comply with labeling requirements", "6(c)"),
    ("Breach of delivery terms", "7"),
    ("Delay of delivery of product, including after six week extension period", "8"),
    ("Manufacturer does not provide and maintain an inspection procedure and quality assurance program", "10"),
    ("Buyer or Manufacturer breach of confidentiality program", "11"),
    ("Buyer IP infringement", "12"),
    ("Seller IP infringement", "12"),
    ("Manufacturer failure to notify of inspection event", "13"),
    ("Manufacturer failure to notify of return or recall", "14"),
    ("Manufacturer failure to notify of regulatory action", "15"),
    ("Buyer or seller: bankruptcy, liquidation, government action (including litigation), or material breach", "16"),
    ("Manufacturer failure to maintain insurance", "17"),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contract::compile;

    #[test]
    fn shape() {
        let spec = builtin_manufacturing_contract();
        assert_eq!(spec.states.len(), 7);
        assert_eq!(spec.transitions.len(), 12);
        assert_eq!(spec.breach_catalog.len(), 31);
        assert_eq!(spec.finals, vec![2, 5]);
        let m = compile(&spec).unwrap();
        assert_eq!(m.num_states(), 7);
        assert_eq!(m.num_arcs(), 12);
        assert!(m.validate().is_empty());
        assert!(m.is_deterministic());
    }

    #[test]
    fn e_f_follows_the_remaining_half_of_the_price() {
        let spec = builtin_manufacturing_contract();
        assert!(spec
            .transitions
            .iter()
            .filter(|t| t.input == "e")
            .all(|t| t.weight == 15_000));
    }

    #[test]
    fn breach_events_go_to_litigation() {
        let spec = builtin_manufacturing_contract();
        assert_eq!(spec.breach_input(), Some("c"));
        assert_eq!(
            spec.breach_states().into_iter().collect::<Vec<_>>(),
            vec![2]
        );
        let sources: Vec<usize> = spec
            .transitions
            .iter()
            .filter(|t| t.input == "c")
            .map(|t| t.source)
            .collect();
        assert_eq!(sources, vec![0, 1, 3, 4, 6]);
    }

    #[test]
    fn every_breach_row_is_listed_once() {
        let spec = builtin_manufacturing_contract();
        let mut seen = std::collections::HashSet::new();
        for b in &spec.breach_catalog {
            assert!(seen.insert((&b.description, &b.section)), "{b:?}");
            let head: String = b.section.chars().take_while(char::is_ascii_digit).collect();
            let n: u32 = head.parse().unwrap();
            assert!((1..=17).contains(&n), "{b:?}");
        }
    }

    #[test]
    fn symbol_ids_follow_lexical_order() {
        let spec = builtin_manufacturing_contract();
        let i = spec.input_symbols();
        let o = spec.output_symbols();
        for (k, (a, b)) in ["a", "c", "e", "g", "i", "k"]
            .iter()
            .zip(["b", "d", "f", "h", "j", "l"])
            .enumerate()
        {
            assert_eq!(i.find_label(a), Some(k as u32 + 1));
            assert_eq!(o.find_label(b), Some(k as u32 + 1));
        }
    }
}
