//! Independent reference implementations used by the integration tests.
//!
//! Everything here works on plain `f64` costs and explicit path search, and
//! only reads machines through their public accessors, so it shares no code
//! with the library algorithms it checks.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use contract_fst::{Arc, Label, StateId, TropicalWeight, Wfst};
use rand::Rng;

pub type Relation = BTreeMap<(Vec<Label>, Vec<Label>), f64>;

fn cost(w: &TropicalWeight) -> f64 {
    w.value()
}

/// Cheapest weight of every (input, output) pair accepted by `m` with
/// `|input| <= max_in` and `|output| <= max_out`.
///
/// Costs are non-negative, so a cheapest path never revisits a configuration
/// (state, consumed input, consumed output); the search prunes such repeats.
pub fn relation(m: &Wfst, max_in: usize, max_out: usize) -> Relation {
    let mut out = Relation::new();
    for (q, lambda) in m.initial_states() {
        let mut on_path = HashSet::new();
        explore(
            m,
            q,
            cost(lambda),
            &mut Vec::new(),
            &mut Vec::new(),
            max_in,
            max_out,
            &mut on_path,
            &mut out,
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn explore(
    m: &Wfst,
    q: StateId,
    acc: f64,
    x: &mut Vec<Label>,
    y: &mut Vec<Label>,
    max_in: usize,
    max_out: usize,
    on_path: &mut HashSet<(StateId, usize, usize)>,
    out: &mut Relation,
) {
    if !on_path.insert((q, x.len(), y.len())) {
        return;
    }
    if m.is_final(q) {
        let total = acc + cost(&m.final_weight(q));
        let slot = out.entry((x.clone(), y.clone())).or_insert(f64::INFINITY);
        if total < *slot {
            *slot = total;
        }
    }
    for a in m.arcs(q) {
        let push_x = a.ilabel != 0;
        let push_y = a.olabel != 0;
        if (push_x && x.len() == max_in) || (push_y && y.len() == max_out) {
            continue;
        }
        if push_x {
            x.push(a.ilabel);
        }
        if push_y {
            y.push(a.olabel);
        }
        explore(
            m,
            a.target,
            acc + cost(&a.weight),
            x,
            y,
            max_in,
            max_out,
            on_path,
            out,
        );
        if push_x {
            x.pop();
        }
        if push_y {
            y.pop();
        }
    }
    on_path.remove(&(q, x.len(), y.len()));
}

/// Cheapest weight of one pair, or infinity.
pub fn pair_weight(m: &Wfst, x: &[Label], y: &[Label]) -> f64 {
    relation(m, x.len(), y.len())
        .get(&(x.to_vec(), y.to_vec()))
        .copied()
        .unwrap_or(f64::INFINITY)
}

/// Bellman-Ford over plain costs from the initial states.
pub fn forward_distances(m: &Wfst) -> Vec<f64> {
    let n = m.num_states();
    let mut d = vec![f64::INFINITY; n];
    for (q, w) in m.initial_states() {
        d[q] = d[q].min(cost(w));
    }
    let arcs: Vec<&Arc> = m.all_arcs().collect();
    for _ in 0..n {
        for a in &arcs {
            let via = d[a.source] + cost(&a.weight);
            if via < d[a.target] {
                d[a.target] = via;
            }
        }
    }
    d
}

/// Bellman-Ford over plain costs towards the final states.
pub fn reverse_distances(m: &Wfst) -> Vec<f64> {
    let n = m.num_states();
    let mut d = vec![f64::INFINITY; n];
    for (q, w) in m.final_states() {
        d[q] = d[q].min(cost(w));
    }
    let arcs: Vec<&Arc> = m.all_arcs().collect();
    for _ in 0..n {
        for a in &arcs {
            let via = d[a.target] + cost(&a.weight);
            if via < d[a.source] {
                d[a.source] = via;
            }
        }
    }
    d
}

/// Whether some ε:ε cycle exists anywhere in the machine.
pub fn has_epsilon_cycle(m: &Wfst) -> bool {
    let n = m.num_states();
    // 0 unvisited, 1 on stack, 2 done
    let mut color = vec![0u8; n];
    fn dfs(m: &Wfst, q: StateId, color: &mut [u8]) -> bool {
        color[q] = 1;
        for a in m.arcs(q) {
            if a.ilabel != 0 || a.olabel != 0 {
                continue;
            }
            let c = color[a.target];
            if c == 1 || (c == 0 && dfs(m, a.target, color)) {
                return true;
            }
        }
        color[q] = 2;
        false
    }
    (0..n).any(|q| color[q] == 0 && dfs(m, q, &mut color))
}

/// Shape parameters for random machines.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_states: usize,
    pub max_arcs: usize,
    pub max_weight: u32,
    /// Input labels are drawn from `1..=alphabet` (plus ε when allowed).
    pub alphabet: u32,
    pub input_epsilons: bool,
    pub output_epsilons: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_states: 6,
            max_arcs: 12,
            max_weight: 9,
            alphabet: 2,
            input_epsilons: false,
            output_epsilons: true,
        }
    }
}

pub fn random_wfst<R: Rng>(rng: &mut R, shape: Shape) -> Wfst {
    let mut m = Wfst::new();
    let n = rng.gen_range(1..=shape.max_states);
    for _ in 0..n {
        m.add_state();
    }
    m.set_initial(0, TropicalWeight::ZERO_COST).unwrap();
    let finals = rng.gen_range(1..=n);
    for _ in 0..finals {
        let q = rng.gen_range(0..n);
        let w = rng.gen_range(0..=shape.max_weight);
        m.set_final(q, TropicalWeight::from(w)).unwrap();
    }
    let arcs = rng.gen_range(0..=shape.max_arcs);
    let label = |rng: &mut R, eps: bool| -> Label {
        let low = if eps { 0 } else { 1 };
        rng.gen_range(low..=shape.alphabet)
    };
    for _ in 0..arcs {
        let src = rng.gen_range(0..n);
        let dst = rng.gen_range(0..n);
        let il = label(rng, shape.input_epsilons);
        let ol = label(rng, shape.output_epsilons);
        let w = rng.gen_range(0..=shape.max_weight);
        m.add_weighted_arc(src, il, ol, w as f64, dst).unwrap();
    }
    m
}

/// Every string over `1..=alphabet` of length at most `max_len`.
pub fn all_strings(alphabet: u32, max_len: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for l in 1..=alphabet {
                let mut t: Vec<Label> = s.clone();
                t.push(l);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
