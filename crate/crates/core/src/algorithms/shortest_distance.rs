//! Single-source shortest distance and cheapest paths.
//!
//! Generic queue-based relaxation: each state keeps its tentative distance
//! `d[q]` and the weight `r[q]` added to it since it was last expanded. A
//! state is re-enqueued (FIFO) whenever its distance improves. For the
//! tropical semiring with non-negative weights this converges to the
//! min-cost distance without needing a topological order.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::fst::{Arc, Path, StateId, Wfst};
use crate::semiring::Semiring;

/// Relaxation count after which [`shortest_distance`] gives up.
pub const DEFAULT_RELAXATION_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Distance from the initial states to each state.
    Forward,
    /// Distance from each state to the final states.
    Reverse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceVector<W> {
    pub direction: Direction,
    distances: Vec<W>,
}

impl<W> DistanceVector<W> {
    pub fn get(&self, state: StateId) -> Option<&W> {
        self.distances.get(state)
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, &W)> + '_ {
        self.distances.iter().enumerate()
    }

    pub fn as_slice(&self) -> &[W] {
        &self.distances
    }
}

impl<W> std::ops::Index<StateId> for DistanceVector<W> {
    type Output = W;

    fn index(&self, state: StateId) -> &W {
        &self.distances[state]
    }
}

pub fn shortest_distance<W: Semiring>(
    fst: &Wfst<W>,
    direction: Direction,
) -> Result<DistanceVector<W>> {
    shortest_distance_bounded(fst, direction, DEFAULT_RELAXATION_BOUND)
}

/// [`shortest_distance`] with an explicit relaxation bound.
///
/// The reverse direction runs the forward relaxation on [`Wfst::reverse`]
/// and drops the super-initial state that reversal introduces.
pub fn shortest_distance_bounded<W: Semiring>(
    fst: &Wfst<W>,
    direction: Direction,
    max_relaxations: usize,
) -> Result<DistanceVector<W>> {
    let distances = match direction {
        Direction::Forward => {
            if fst.num_initials() == 0 {
                return Err(Error::NoInitialState);
            }
            relax(fst, max_relaxations)?
        }
        Direction::Reverse => {
            let reversed = fst.reverse();
            let mut d = relax(&reversed, max_relaxations)?;
            d.truncate(fst.num_states());
            d
        }
    };
    Ok(DistanceVector {
        direction,
        distances,
    })
}

fn relax<W: Semiring>(fst: &Wfst<W>, max_relaxations: usize) -> Result<Vec<W>> {
    let n = fst.num_states();
    let mut dist = vec![W::zero(); n];
    let mut residual = vec![W::zero(); n];
    let mut queued = vec![false; n];
    let mut queue = VecDeque::new();

    for (q, lambda) in fst.initial_states() {
        dist[q] = dist[q].plus(lambda);
        residual[q] = residual[q].plus(lambda);
        if !queued[q] {
            queued[q] = true;
            queue.push_back(q);
        }
    }

    let mut relaxations = 0usize;
    while let Some(q) = queue.pop_front() {
        queued[q] = false;
        let pending = std::mem::replace(&mut residual[q], W::zero());
        for arc in fst.arcs(q) {
            relaxations += 1;
            if relaxations > max_relaxations {
                return Err(Error::NonTerminating {
                    bound: max_relaxations,
                });
            }
            let t = arc.target;
            let candidate = pending.times(&arc.weight);
            let improved = dist[t].plus(&candidate);
            if improved != dist[t] {
                dist[t] = improved;
                residual[t] = residual[t].plus(&candidate);
                if !queued[t] {
                    queued[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    Ok(dist)
}

/// One cheapest accepting path from `from`, with its weight.
///
/// The weight equals the reverse distance of `from`. Among equally cheap
/// continuations, stopping at a final state wins, then arcs are tried in
/// (target id, input label) order.
pub fn shortest_path<W: Semiring>(fst: &Wfst<W>, from: StateId) -> Result<(Path<W>, W)> {
    if !fst.has_state(from) {
        return Err(Error::UnknownState { state: from });
    }
    let to_final = shortest_distance(fst, Direction::Reverse)?;
    shortest_path_with(fst, from, &to_final)
}

/// [`shortest_path`] reusing an already computed reverse distance vector.
pub fn shortest_path_with<W: Semiring>(
    fst: &Wfst<W>,
    from: StateId,
    to_final: &DistanceVector<W>,
) -> Result<(Path<W>, W)> {
    if !fst.has_state(from) {
        return Err(Error::UnknownState { state: from });
    }
    let best = to_final[from].clone();
    if best.is_zero() {
        return Err(Error::NoAcceptingPath { state: from });
    }
    let mut visited = vec![false; fst.num_states()];
    let mut arcs = Vec::new();
    if tight_walk(fst, from, to_final, &mut visited, &mut arcs) {
        Ok((Path::new(from, arcs), best))
    } else {
        // Unreachable for semirings whose distances are realized by simple paths.
        Err(Error::NoAcceptingPath { state: from })
    }
}

/// Depth-first search restricted to arcs that realize the reverse distance.
fn tight_walk<W: Semiring>(
    fst: &Wfst<W>,
    state: StateId,
    to_final: &DistanceVector<W>,
    visited: &mut [bool],
    path: &mut Vec<Arc<W>>,
) -> bool {
    visited[state] = true;
    let here = &to_final[state];
    if fst.is_final(state) && fst.final_weight(state) == *here {
        return true;
    }
    let mut candidates: Vec<&Arc<W>> = fst
        .arcs(state)
        .iter()
        .filter(|a| !visited[a.target] && a.weight.times(&to_final[a.target]) == *here)
        .collect();
    candidates.sort_by_key(|a| (a.target, a.ilabel));
    for arc in candidates {
        if visited[arc.target] {
            continue;
        }
        path.push(arc.clone());
        if tight_walk(fst, arc.target, to_final, visited, path) {
            return true;
        }
        path.pop();
    }
    false
}
