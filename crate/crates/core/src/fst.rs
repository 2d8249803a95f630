//! The weighted transducer data model.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::semiring::{Semiring, TropicalWeight};
use crate::symbols::{Label, SymbolTable, EPSILON};

pub type StateId = usize;

/// One transition: `source --ilabel:olabel/weight--> target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arc<W = TropicalWeight> {
    pub source: StateId,
    pub ilabel: Label,
    pub olabel: Label,
    pub weight: W,
    pub target: StateId,
}

impl<W> Arc<W> {
    pub fn new(source: StateId, ilabel: Label, olabel: Label, weight: W, target: StateId) -> Self {
        Arc {
            source,
            ilabel,
            olabel,
            weight,
            target,
        }
    }
}

/// A sequence of consecutive arcs starting at `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path<W = TropicalWeight> {
    pub start: StateId,
    pub arcs: Vec<Arc<W>>,
}

impl<W> Path<W> {
    pub fn new(start: StateId, arcs: Vec<Arc<W>>) -> Self {
        Path { start, arcs }
    }

    pub fn end(&self) -> StateId {
        self.arcs.last().map_or(self.start, |a| a.target)
    }

    /// State sequence visited, including the start.
    pub fn states(&self) -> Vec<StateId> {
        std::iter::once(self.start)
            .chain(self.arcs.iter().map(|a| a.target))
            .collect()
    }

    pub fn input_labels(&self) -> Vec<Label> {
        self.arcs
            .iter()
            .map(|a| a.ilabel)
            .filter(|&l| l != EPSILON)
            .collect()
    }

    pub fn output_labels(&self) -> Vec<Label> {
        self.arcs
            .iter()
            .map(|a| a.olabel)
            .filter(|&l| l != EPSILON)
            .collect()
    }

    fn check_consecutive(&self) -> Result<()> {
        let mut at = self.start;
        for (index, arc) in self.arcs.iter().enumerate() {
            if arc.source != at {
                return Err(Error::BrokenPath { index });
            }
            at = arc.target;
        }
        Ok(())
    }
}

/// Problems reported by [`Wfst::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    NoInitialState,
    UnknownInputSymbol {
        state: StateId,
        arc: usize,
        label: Label,
    },
    UnknownOutputSymbol {
        state: StateId,
        arc: usize,
        label: Label,
    },
}

/// Default cycle budget for [`Wfst::string_weight`].
pub const DEFAULT_CYCLE_BUDGET: usize = 2;

/// Weighted finite-state transducer.
///
/// States are dense ids `0..num_states()`. Arcs form a multiset grouped by
/// source state, kept in insertion order. Initial weights (λ) and final
/// weights (ρ) live in ordered maps; a state absent from a map has weight
/// zero there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wfst<W: Semiring = TropicalWeight> {
    arcs: Vec<Vec<Arc<W>>>,
    initial: BTreeMap<StateId, W>,
    finals: BTreeMap<StateId, W>,
    isymbols: Option<SymbolTable>,
    osymbols: Option<SymbolTable>,
}

impl<W: Semiring> Default for Wfst<W> {
    fn default() -> Self {
        Self::new()
    }
}

impl<W: Semiring> Wfst<W> {
    pub fn new() -> Self {
        Wfst {
            arcs: Vec::new(),
            initial: BTreeMap::new(),
            finals: BTreeMap::new(),
            isymbols: None,
            osymbols: None,
        }
    }

    pub fn add_state(&mut self) -> StateId {
        self.arcs.push(Vec::new());
        self.arcs.len() - 1
    }

    /// Adds states until `state` exists.
    pub fn ensure_state(&mut self, state: StateId) {
        while self.arcs.len() <= state {
            self.add_state();
        }
    }

    pub fn num_states(&self) -> usize {
        self.arcs.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.arcs.len()
    }

    pub fn has_state(&self, state: StateId) -> bool {
        state < self.arcs.len()
    }

    fn check_state(&self, state: StateId) -> Result<()> {
        if self.has_state(state) {
            Ok(())
        } else {
            Err(Error::UnknownState { state })
        }
    }

    /// Appends an arc. Parallel duplicates are kept.
    pub fn add_arc(&mut self, arc: Arc<W>) -> Result<()> {
        self.check_state(arc.source)?;
        self.check_state(arc.target)?;
        if arc.weight.is_zero() {
            return Err(Error::InfiniteArcWeight);
        }
        self.arcs[arc.source].push(arc);
        Ok(())
    }

    /// Sets λ(state). Setting the semiring zero removes the state from I.
    pub fn set_initial(&mut self, state: StateId, weight: W) -> Result<()> {
        self.check_state(state)?;
        if weight.is_zero() {
            self.initial.remove(&state);
        } else {
            self.initial.insert(state, weight);
        }
        Ok(())
    }

    /// Sets ρ(state). Setting the semiring zero removes the state from F.
    pub fn set_final(&mut self, state: StateId, weight: W) -> Result<()> {
        self.check_state(state)?;
        if weight.is_zero() {
            self.finals.remove(&state);
        } else {
            self.finals.insert(state, weight);
        }
        Ok(())
    }

    pub fn arcs(&self, state: StateId) -> &[Arc<W>] {
        &self.arcs[state]
    }

    pub fn all_arcs(&self) -> impl Iterator<Item = &Arc<W>> + '_ {
        self.arcs.iter().flatten()
    }

    pub fn initial_states(&self) -> impl Iterator<Item = (StateId, &W)> + '_ {
        self.initial.iter().map(|(&q, w)| (q, w))
    }

    pub fn final_states(&self) -> impl Iterator<Item = (StateId, &W)> + '_ {
        self.finals.iter().map(|(&q, w)| (q, w))
    }

    pub fn initial_weight(&self, state: StateId) -> W {
        self.initial.get(&state).cloned().unwrap_or_else(W::zero)
    }

    pub fn final_weight(&self, state: StateId) -> W {
        self.finals.get(&state).cloned().unwrap_or_else(W::zero)
    }

    pub fn is_initial(&self, state: StateId) -> bool {
        self.initial.contains_key(&state)
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals.contains_key(&state)
    }

    pub fn num_initials(&self) -> usize {
        self.initial.len()
    }

    pub fn num_finals(&self) -> usize {
        self.finals.len()
    }

    /// The initial state when there is exactly one.
    pub fn start(&self) -> Option<StateId> {
        if self.initial.len() == 1 {
            self.initial.keys().next().copied()
        } else {
            None
        }
    }

    pub fn isymbols(&self) -> Option<&SymbolTable> {
        self.isymbols.as_ref()
    }

    pub fn osymbols(&self) -> Option<&SymbolTable> {
        self.osymbols.as_ref()
    }

    pub fn set_isymbols(&mut self, table: Option<SymbolTable>) {
        self.isymbols = table;
    }

    pub fn set_osymbols(&mut self, table: Option<SymbolTable>) {
        self.osymbols = table;
    }

    pub fn has_input_epsilons(&self) -> bool {
        self.all_arcs().any(|a| a.ilabel == EPSILON)
    }

    pub fn has_output_epsilons(&self) -> bool {
        self.all_arcs().any(|a| a.olabel == EPSILON)
    }

    /// Lists every violated invariant; empty means the machine is well formed.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.initial.is_empty() {
            out.push(Diagnostic::NoInitialState);
        }
        for state in self.states() {
            for (idx, arc) in self.arcs[state].iter().enumerate() {
                if let Some(table) = &self.isymbols {
                    if !table.contains_label(arc.ilabel) {
                        out.push(Diagnostic::UnknownInputSymbol {
                            state,
                            arc: idx,
                            label: arc.ilabel,
                        });
                    }
                }
                if let Some(table) = &self.osymbols {
                    if !table.contains_label(arc.olabel) {
                        out.push(Diagnostic::UnknownOutputSymbol {
                            state,
                            arc: idx,
                            label: arc.olabel,
                        });
                    }
                }
            }
        }
        out
    }

    /// True iff at most one initial state, no input-ε arcs, and no state with
    /// two arcs sharing an input label.
    pub fn is_deterministic(&self) -> bool {
        if self.initial.len() > 1 {
            return false;
        }
        self.arcs.iter().all(|arcs| {
            let mut labels: Vec<Label> = arcs.iter().map(|a| a.ilabel).collect();
            if labels.contains(&EPSILON) {
                return false;
            }
            labels.sort_unstable();
            labels.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// λ(start) ⊗ w(a₁) ⊗ … ⊗ w(aₙ) ⊗ ρ(end) for an accepting path.
    pub fn path_weight(&self, path: &Path<W>) -> Result<W> {
        path.check_consecutive()?;
        let lambda = self
            .initial
            .get(&path.start)
            .ok_or(Error::NonInitialPathStart { state: path.start })?;
        let end = path.end();
        let rho = self
            .finals
            .get(&end)
            .ok_or(Error::NonAcceptingPath { state: end })?;
        let body = path
            .arcs
            .iter()
            .fold(lambda.clone(), |acc, arc| acc.times(&arc.weight));
        Ok(body.times(rho))
    }

    /// ⊕ over every accepting path whose ε-free input and output projections
    /// equal `input` and `output`; zero when there is none.
    pub fn string_weight(&self, input: &[Label], output: &[Label]) -> Result<W> {
        self.string_weight_with_budget(input, output, DEFAULT_CYCLE_BUDGET)
    }

    /// [`Wfst::string_weight`] with an explicit cycle budget.
    ///
    /// Every arc that consumes a symbol on either tape is bounded by the string
    /// lengths; arcs labeled ε:ε are not, so a path may traverse at most
    /// `num_arcs() × cycle_budget` of them before the search reports
    /// [`Error::NonTerminating`].
    pub fn string_weight_with_budget(
        &self,
        input: &[Label],
        output: &[Label],
        cycle_budget: usize,
    ) -> Result<W> {
        let input: Vec<Label> = input.iter().copied().filter(|&l| l != EPSILON).collect();
        let output: Vec<Label> = output.iter().copied().filter(|&l| l != EPSILON).collect();
        let search = StringSearch {
            fst: self,
            input: &input,
            output: &output,
            bound: self.num_arcs().max(1) * cycle_budget,
        };
        let mut total = W::zero();
        for (&q, lambda) in &self.initial {
            search.visit(q, 0, 0, 0, lambda.clone(), &mut total)?;
        }
        Ok(total)
    }

    /// Resolves space-separated symbols through the attached tables (or as
    /// integer ids when no table is attached) and calls [`Wfst::string_weight`].
    pub fn string_weight_str(&self, input: &str, output: &str) -> Result<W> {
        let x = resolve_labels(self.isymbols.as_ref(), input)?;
        let y = resolve_labels(self.osymbols.as_ref(), output)?;
        self.string_weight(&x, &y)
    }

    /// Reverses every arc and swaps the roles of λ and ρ.
    ///
    /// A fresh super-initial state with id `num_states()` gets one ε:ε arc of
    /// weight ρ(f) to every former final f; every former initial q becomes
    /// final with weight λ(q). Original state ids are preserved.
    pub fn reverse(&self) -> Wfst<W> {
        let n = self.num_states();
        let mut out = Wfst::new();
        for _ in 0..=n {
            out.add_state();
        }
        for (&f, rho) in &self.finals {
            out.arcs[n].push(Arc::new(n, EPSILON, EPSILON, rho.clone(), f));
        }
        for arc in self.all_arcs() {
            out.arcs[arc.target].push(Arc::new(
                arc.target,
                arc.ilabel,
                arc.olabel,
                arc.weight.clone(),
                arc.source,
            ));
        }
        out.initial.insert(n, W::one());
        out.finals = self.initial.clone();
        out.isymbols = self.isymbols.clone();
        out.osymbols = self.osymbols.clone();
        out
    }

    /// Returns an equivalent machine with a single initial state of weight one.
    ///
    /// Machines already in that form are returned unchanged; otherwise a new
    /// state `num_states()` is added with ε:ε arcs of weight λ(q) to each
    /// former initial q.
    pub fn normalize_initial(&self) -> Wfst<W> {
        if self.initial.len() == 1 && self.initial.values().all(W::is_one) {
            return self.clone();
        }
        let mut out = self.clone();
        let root = out.add_state();
        for (&q, lambda) in &self.initial {
            out.arcs[root].push(Arc::new(root, EPSILON, EPSILON, lambda.clone(), q));
        }
        out.initial.clear();
        out.initial.insert(root, W::one());
        out
    }
}

impl<W: Semiring + Ord> Wfst<W> {
    /// Renumbers states in breadth-first discovery order from the initial
    /// states and sorts every arc list by (input, output, weight, target).
    ///
    /// Two deterministic machines are isomorphic iff their canonical forms
    /// are equal; states unreachable from I are appended in original order.
    pub fn canonicalize(&self) -> Wfst<W> {
        let n = self.num_states();
        let mut order: Vec<StateId> = Vec::with_capacity(n);
        let mut new_id: Vec<Option<StateId>> = vec![None; n];
        let mut roots: Vec<(&W, StateId)> = self.initial.iter().map(|(&q, w)| (w, q)).collect();
        roots.sort();
        let mut queue = std::collections::VecDeque::new();
        for (_, q) in roots {
            if new_id[q].is_none() {
                new_id[q] = Some(order.len());
                order.push(q);
                queue.push_back(q);
            }
        }
        let sort_key = |a: &Arc<W>| (a.ilabel, a.olabel, a.weight.clone(), a.target);
        loop {
            while let Some(q) = queue.pop_front() {
                let mut arcs: Vec<&Arc<W>> = self.arcs[q].iter().collect();
                arcs.sort_by_key(|a| sort_key(a));
                for arc in arcs {
                    if new_id[arc.target].is_none() {
                        new_id[arc.target] = Some(order.len());
                        order.push(arc.target);
                        queue.push_back(arc.target);
                    }
                }
            }
            match new_id.iter().position(Option::is_none) {
                Some(q) => {
                    new_id[q] = Some(order.len());
                    order.push(q);
                    queue.push_back(q);
                }
                None => break,
            }
        }
        let renum = |q: StateId| new_id[q].expect("every state is numbered");
        let mut out = Wfst::new();
        for _ in 0..n {
            out.add_state();
        }
        for (new_q, &old_q) in order.iter().enumerate() {
            let mut arcs: Vec<Arc<W>> = self.arcs[old_q]
                .iter()
                .map(|a| Arc::new(new_q, a.ilabel, a.olabel, a.weight.clone(), renum(a.target)))
                .collect();
            arcs.sort_by_key(|a| sort_key(a));
            out.arcs[new_q] = arcs;
        }
        out.initial = self
            .initial
            .iter()
            .map(|(&q, w)| (renum(q), w.clone()))
            .collect();
        out.finals = self
            .finals
            .iter()
            .map(|(&q, w)| (renum(q), w.clone()))
            .collect();
        out.isymbols = self.isymbols.clone();
        out.osymbols = self.osymbols.clone();
        out
    }

    /// Structural isomorphism via [`Wfst::canonicalize`], ignoring symbol
    /// tables. Exact for deterministic machines.
    pub fn is_isomorphic(&self, other: &Wfst<W>) -> bool {
        let mut a = self.canonicalize();
        let mut b = other.canonicalize();
        a.isymbols = None;
        a.osymbols = None;
        b.isymbols = None;
        b.osymbols = None;
        a == b
    }
}

impl Wfst<TropicalWeight> {
    /// Adds an arc from a raw dollar/cost value, rejecting negative and
    /// infinite weights.
    pub fn add_weighted_arc(
        &mut self,
        source: StateId,
        ilabel: Label,
        olabel: Label,
        weight: f64,
        target: StateId,
    ) -> Result<()> {
        let weight = TropicalWeight::new(weight)?;
        self.add_arc(Arc::new(source, ilabel, olabel, weight, target))
    }
}

fn resolve_labels(table: Option<&SymbolTable>, text: &str) -> Result<Vec<Label>> {
    match table {
        Some(table) => table.resolve_str(text),
        None => text
            .split_whitespace()
            .map(|tok| {
                tok.parse().map_err(|_| Error::UnknownSymbol {
                    symbol: tok.to_string(),
                })
            })
            .collect(),
    }
}

struct StringSearch<'a, W: Semiring> {
    fst: &'a Wfst<W>,
    input: &'a [Label],
    output: &'a [Label],
    bound: usize,
}

impl<W: Semiring> StringSearch<'_, W> {
    fn visit(
        &self,
        state: StateId,
        in_pos: usize,
        out_pos: usize,
        free_steps: usize,
        acc: W,
        total: &mut W,
    ) -> Result<()> {
        if in_pos == self.input.len() && out_pos == self.output.len() {
            if let Some(rho) = self.fst.finals.get(&state) {
                *total = total.plus(&acc.times(rho));
            }
        }
        for arc in &self.fst.arcs[state] {
            let next_in = match arc.ilabel {
                EPSILON => in_pos,
                l if self.input.get(in_pos) == Some(&l) => in_pos + 1,
                _ => continue,
            };
            let next_out = match arc.olabel {
                EPSILON => out_pos,
                l if self.output.get(out_pos) == Some(&l) => out_pos + 1,
                _ => continue,
            };
            let free = if arc.ilabel == EPSILON && arc.olabel == EPSILON {
                free_steps + 1
            } else {
                free_steps
            };
            if free > self.bound {
                return Err(Error::NonTerminating { bound: self.bound });
            }
            self.visit(
                arc.target,
                next_in,
                next_out,
                free,
                acc.times(&arc.weight),
                total,
            )?;
        }
        Ok(())
    }
}
