//! Weighted determinization of transducers.
//!
//! Subset construction where each subset element carries the weight and the
//! output string that have been read but not yet emitted. For an input label
//! `a`, the successor is built from every `a`-arc leaving the subset: the new
//! arc takes the ⊕-sum of the accumulated weights and emits the first symbol
//! of the longest common prefix of the accumulated output strings. Whatever
//! is not emitted stays in the successor's residuals, so every generated arc
//! consumes exactly one input symbol and emits at most one output symbol.
//!
//! In the tropical semiring the weight attached to an input string by the
//! result is the minimum over all original paths reading it.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::fst::{Arc, StateId, Wfst};
use crate::semiring::DivisibleSemiring;
use crate::symbols::{Label, EPSILON};

pub const DEFAULT_MAX_STATES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterminizeOptions {
    /// Upper bound on generated subset states.
    pub max_states: usize,
}

impl Default for DeterminizeOptions {
    fn default() -> Self {
        DeterminizeOptions {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// One element of a subset state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residual<W> {
    pub state: StateId,
    /// Output not yet emitted on the way to `state`.
    pub output: Vec<Label>,
    /// Weight not yet emitted on the way to `state`.
    pub weight: W,
}

/// Working state of the determinizer: a canonical residual set.
///
/// Elements are sorted by state id, then output remainder; at least one
/// weight is the semiring one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetState<W> {
    residuals: Vec<Residual<W>>,
}

impl<W> SubsetState<W> {
    pub fn residuals(&self) -> &[Residual<W>] {
        &self.residuals
    }

    /// Distinct original states in this subset, ascending.
    pub fn states(&self) -> Vec<StateId> {
        let mut states: Vec<StateId> = self.residuals.iter().map(|r| r.state).collect();
        states.dedup();
        states
    }
}

/// Result of [`determinize_with_subsets`].
#[derive(Debug, Clone)]
pub struct Determinized<W: DivisibleSemiring + Ord> {
    pub fst: Wfst<W>,
    /// `subsets[q]` is the residual set that output state `q` stands for.
    pub subsets: Vec<SubsetState<W>>,
}

impl<W: DivisibleSemiring + Ord> Determinized<W> {
    /// Output states that merge two or more original states.
    ///
    /// On a machine that was already deterministic this is empty; otherwise
    /// each entry exposes input sequences that lead to more than one place.
    pub fn merged_states(&self) -> Vec<(StateId, Vec<StateId>)> {
        self.subsets
            .iter()
            .enumerate()
            .map(|(q, s)| (q, s.states()))
            .filter(|(_, states)| states.len() > 1)
            .collect()
    }
}

pub fn determinize<W: DivisibleSemiring + Ord>(
    fst: &Wfst<W>,
    options: DeterminizeOptions,
) -> Result<Wfst<W>> {
    determinize_with_subsets(fst, options).map(|d| d.fst)
}

/// Determinizes `fst`, also returning the subset each output state stands for.
///
/// Fails with [`Error::InputEpsilon`] on input-ε arcs, [`Error::NoInitialState`]
/// on machines without initial states, [`Error::StateBudgetExceeded`] when
/// more than `max_states` subsets are generated (the machine may not be
/// determinizable), and [`Error::NonSequential`] when the relation cannot be
/// expressed by a deterministic machine without final outputs.
pub fn determinize_with_subsets<W: DivisibleSemiring + Ord>(
    fst: &Wfst<W>,
    options: DeterminizeOptions,
) -> Result<Determinized<W>> {
    if fst.num_initials() == 0 {
        return Err(Error::NoInitialState);
    }
    if let Some(arc) = fst.all_arcs().find(|a| a.ilabel == EPSILON) {
        return Err(Error::InputEpsilon { state: arc.source });
    }

    let mut builder = Builder {
        fst,
        live: coaccessible(fst),
        max_states: options.max_states,
        out: Wfst::new(),
        subsets: Vec::new(),
        index: HashMap::new(),
        queue: VecDeque::new(),
    };

    let start: Vec<Residual<W>> = fst
        .initial_states()
        .filter(|&(q, _)| builder.live[q])
        .map(|(q, lambda)| Residual {
            state: q,
            output: Vec::new(),
            weight: lambda.clone(),
        })
        .collect();
    let (start_weight, start_output, start_subset) = normalize(start)?;
    debug_assert!(start_output.is_empty());
    let start_id = builder.intern(start_subset)?;
    builder.out.set_initial(start_id, start_weight)?;

    while let Some(q) = builder.queue.pop_front() {
        builder.expand(q)?;
    }

    if let Some(table) = fst.isymbols() {
        builder.out.set_isymbols(Some(table.clone()));
    }
    if let Some(table) = fst.osymbols() {
        builder.out.set_osymbols(Some(table.clone()));
    }
    Ok(Determinized {
        fst: builder.out,
        subsets: builder.subsets,
    })
}

struct Builder<'a, W: DivisibleSemiring + Ord> {
    fst: &'a Wfst<W>,
    /// States from which some final state is reachable; residuals anywhere
    /// else can never contribute and are dropped.
    live: Vec<bool>,
    max_states: usize,
    out: Wfst<W>,
    subsets: Vec<SubsetState<W>>,
    index: HashMap<SubsetState<W>, StateId>,
    queue: VecDeque<StateId>,
}

impl<W: DivisibleSemiring + Ord> Builder<'_, W> {
    fn intern(&mut self, subset: SubsetState<W>) -> Result<StateId> {
        if let Some(&id) = self.index.get(&subset) {
            return Ok(id);
        }
        if self.subsets.len() >= self.max_states {
            return Err(Error::StateBudgetExceeded {
                max_states: self.max_states,
            });
        }
        let id = self.out.add_state();
        self.index.insert(subset.clone(), id);
        self.subsets.push(subset);
        self.queue.push_back(id);
        Ok(id)
    }

    fn expand(&mut self, q: StateId) -> Result<()> {
        let subset = self.subsets[q].clone();
        self.set_final_weight(q, &subset)?;

        let mut by_label: BTreeMap<Label, Vec<Residual<W>>> = BTreeMap::new();
        for element in &subset.residuals {
            for arc in self.fst.arcs(element.state) {
                if !self.live[arc.target] {
                    continue;
                }
                let mut output = element.output.clone();
                if arc.olabel != EPSILON {
                    output.push(arc.olabel);
                }
                by_label.entry(arc.ilabel).or_default().push(Residual {
                    state: arc.target,
                    output,
                    weight: element.weight.times(&arc.weight),
                });
            }
        }

        for (ilabel, gathered) in by_label {
            let (weight, emitted, next) = normalize(gathered)?;
            let target = self.intern(next)?;
            let olabel = emitted.first().copied().unwrap_or(EPSILON);
            self.out
                .add_arc(Arc::new(q, ilabel, olabel, weight, target))?;
        }
        Ok(())
    }

    fn set_final_weight(&mut self, q: StateId, subset: &SubsetState<W>) -> Result<()> {
        let mut rho = W::zero();
        let mut pending: Option<&[Label]> = None;
        for element in &subset.residuals {
            if !self.fst.is_final(element.state) {
                continue;
            }
            let out = element.output.as_slice();
            match pending {
                Some(prev) if prev != out => {
                    return Err(Error::NonSequential {
                        reason: format!(
                            "one input string ends with two different outputs (subset state {q})"
                        ),
                    })
                }
                _ => pending = Some(out),
            }
            rho = rho.plus(&element.weight.times(&self.fst.final_weight(element.state)));
        }
        if let Some(out) = pending {
            if !out.is_empty() {
                return Err(Error::NonSequential {
                    reason: format!(
                        "output {out:?} is still pending when the input ends (subset state {q})"
                    ),
                });
            }
        }
        if !rho.is_zero() {
            self.out.set_final(q, rho)?;
        }
        Ok(())
    }
}

fn coaccessible<W: DivisibleSemiring + Ord>(fst: &Wfst<W>) -> Vec<bool> {
    let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); fst.num_states()];
    for arc in fst.all_arcs() {
        preds[arc.target].push(arc.source);
    }
    let mut live = vec![false; fst.num_states()];
    let mut stack: Vec<StateId> = fst.final_states().map(|(q, _)| q).collect();
    for &q in &stack {
        live[q] = true;
    }
    while let Some(q) = stack.pop() {
        for &p in &preds[q] {
            if !live[p] {
                live[p] = true;
                stack.push(p);
            }
        }
    }
    live
}

/// Factors the common weight and at most one common output symbol out of a
/// gathered residual list, returning `(weight, emitted, canonical subset)`.
fn normalize<W: DivisibleSemiring + Ord>(
    gathered: Vec<Residual<W>>,
) -> Result<(W, Vec<Label>, SubsetState<W>)> {
    let total = gathered
        .iter()
        .fold(W::zero(), |acc, r| acc.plus(&r.weight));

    let first_output = gathered
        .first()
        .map(|r| r.output.clone())
        .unwrap_or_default();
    let prefix_len = gathered.iter().fold(first_output.len(), |len, r| {
        first_output
            .iter()
            .zip(&r.output)
            .take(len)
            .take_while(|(a, b)| a == b)
            .count()
    });
    let emitted: Vec<Label> = first_output
        .iter()
        .copied()
        .take(prefix_len.min(1))
        .collect();

    // Merge elements agreeing on (state, output) with ⊕.
    let mut merged: BTreeMap<(StateId, Vec<Label>), W> = BTreeMap::new();
    for r in gathered {
        let remainder = r.output[emitted.len()..].to_vec();
        let weight = r
            .weight
            .divide(&total)
            .ok_or_else(|| Error::NonSequential {
                reason: "residual weight cannot be normalized".to_string(),
            })?;
        merged
            .entry((r.state, remainder))
            .and_modify(|w| *w = w.plus(&weight))
            .or_insert(weight);
    }
    // Two remainders at one live state means the same input reaches it with
    // two different outputs; every completion keeps them apart.
    if let Some(pair) = merged
        .keys()
        .collect::<Vec<_>>()
        .windows(2)
        .find(|p| p[0].0 == p[1].0)
    {
        return Err(Error::NonSequential {
            reason: format!(
                "state {} is reached by one input with outputs {:?} and {:?}",
                pair[0].0, pair[0].1, pair[1].1
            ),
        });
    }
    let residuals = merged
        .into_iter()
        .map(|((state, output), weight)| Residual {
            state,
            output,
            weight,
        })
        .collect();
    Ok((total, emitted, SubsetState { residuals }))
}
