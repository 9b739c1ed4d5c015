use std::cmp::Ordering;

use super::{cmp_opt, prog_into, Measure, MeasureDomain};
use crate::game::{ParityGame, Player, VertexIndex, VertexSet};

/// A measure per vertex, stored as one flat tuple array plus a top flag,
/// together with per-vertex and total counts of effective lifts.
#[derive(Clone, Debug)]
pub struct MeasureMap {
    len: usize,
    values: Vec<u32>,
    top: Vec<bool>,
    lifts: Vec<u64>,
    total_lifts: u64,
}

/// Reusable buffers for [`MeasureMap::lift_within`].
#[derive(Clone, Debug)]
pub(crate) struct LiftScratch {
    best: Vec<u32>,
    candidate: Vec<u32>,
}

impl LiftScratch {
    pub(crate) fn new(len: usize) -> Self {
        LiftScratch {
            best: vec![0; len],
            candidate: vec![0; len],
        }
    }
}

impl MeasureMap {
    /// Every vertex at the zero tuple.
    pub fn new(num_vertices: usize, tuple_len: usize) -> Self {
        MeasureMap {
            len: tuple_len,
            values: vec![0; num_vertices * tuple_len],
            top: vec![false; num_vertices],
            lifts: vec![0; num_vertices],
            total_lifts: 0,
        }
    }

    pub fn for_domain(game: &ParityGame, domain: &MeasureDomain) -> Self {
        MeasureMap::new(game.num_vertices(), domain.tuple_len())
    }

    pub fn num_vertices(&self) -> usize {
        self.top.len()
    }

    pub fn tuple_len(&self) -> usize {
        self.len
    }

    pub fn get(&self, v: VertexIndex) -> Measure {
        match self.slot(v) {
            Some(t) => Measure::Finite(t.to_vec()),
            None => Measure::Top,
        }
    }

    /// Borrowed view of a vertex's value; `None` stands for top.
    pub fn slot(&self, v: VertexIndex) -> Option<&[u32]> {
        if self.top[v] {
            None
        } else {
            Some(&self.values[v * self.len..(v + 1) * self.len])
        }
    }

    pub fn is_top(&self, v: VertexIndex) -> bool {
        self.top[v]
    }

    pub fn set_top(&mut self, v: VertexIndex) {
        self.top[v] = true;
    }

    pub fn set(&mut self, v: VertexIndex, value: &Measure) {
        match value {
            Measure::Top => self.top[v] = true,
            Measure::Finite(t) => {
                assert_eq!(t.len(), self.len, "tuple length mismatch");
                self.top[v] = false;
                self.values[v * self.len..(v + 1) * self.len].copy_from_slice(t);
            }
        }
    }

    /// Effective lifts applied to `v` so far.
    pub fn lift_count(&self, v: VertexIndex) -> u64 {
        self.lifts[v]
    }

    pub fn lift_counts(&self) -> &[u64] {
        &self.lifts
    }

    pub fn total_lifts(&self) -> u64 {
        self.total_lifts
    }

    pub fn values(&self) -> Vec<Measure> {
        (0..self.num_vertices()).map(|v| self.get(v)).collect()
    }

    pub fn top_set(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.num_vertices(),
            (0..self.num_vertices()).filter(|&v| self.top[v]),
        )
    }

    /// Pointwise order: every value of `self` is at most the one in `other`.
    pub fn le(&self, other: &MeasureMap) -> bool {
        (0..self.num_vertices())
            .all(|v| cmp_opt(self.slot(v), other.slot(v), usize::MAX) != Ordering::Greater)
    }

    pub fn same_values(&self, other: &MeasureMap) -> bool {
        self.num_vertices() == other.num_vertices()
            && (0..self.num_vertices()).all(|v| self.slot(v) == other.slot(v))
    }

    /// `prog` along the edge `v -> w` under the current values.
    pub fn prog(&self, domain: &MeasureDomain, game: &ParityGame, v: VertexIndex, w: VertexIndex) -> Measure {
        domain.prog(game.priority(v), &self.get(w))
    }

    /// Applies the lifting operator at `v`, considering every successor.
    /// Returns whether the value of `v` increased.
    pub fn lift(&mut self, domain: &MeasureDomain, game: &ParityGame, v: VertexIndex) -> bool {
        let mut scratch = LiftScratch::new(self.len);
        self.lift_within(domain, game, v, None, &mut scratch)
    }

    /// Lifting restricted to successors inside `within` (all successors when
    /// `None`). Even vertices take the least `prog` over their successors,
    /// odd vertices the greatest; the value only ever grows.
    pub(crate) fn lift_within(
        &mut self,
        domain: &MeasureDomain,
        game: &ParityGame,
        v: VertexIndex,
        within: Option<&VertexSet>,
        scratch: &mut LiftScratch,
    ) -> bool {
        if self.top[v] {
            return false;
        }
        let p = game.priority(v) as usize;
        let caps = domain.caps();
        let minimise = game.owner(v) == Player::Even;

        let mut have = false;
        let mut best_top = false;
        for &w in game.successors(v) {
            if let Some(set) = within {
                if !set.contains(w) {
                    continue;
                }
            }
            let finite = prog_into(caps, p, self.slot(w), &mut scratch.candidate);
            if !have {
                have = true;
                best_top = !finite;
                scratch.best.copy_from_slice(&scratch.candidate);
            } else {
                let cand = finite.then_some(scratch.candidate.as_slice());
                let best = (!best_top).then_some(scratch.best.as_slice());
                let ord = cmp_opt(cand, best, usize::MAX);
                let better = if minimise {
                    ord == Ordering::Less
                } else {
                    ord == Ordering::Greater
                };
                if better {
                    best_top = !finite;
                    scratch.best.copy_from_slice(&scratch.candidate);
                }
            }
            if minimise && !best_top && scratch.best.iter().all(|&x| x == 0) {
                break;
            }
            if !minimise && best_top {
                break;
            }
        }
        if !have {
            return false;
        }

        let best = (!best_top).then_some(scratch.best.as_slice());
        if cmp_opt(best, self.slot(v), usize::MAX) != Ordering::Greater {
            return false;
        }

        if best_top {
            self.top[v] = true;
        } else {
            self.values[v * self.len..(v + 1) * self.len].copy_from_slice(&scratch.best);
        }
        self.lifts[v] += 1;
        self.total_lifts += 1;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::six_vertex_example;

    fn m(t: &[u32]) -> Measure {
        Measure::Finite(t.to_vec())
    }

    #[test]
    fn lift_examples_from_zero() {
        let game = six_vertex_example();
        let dom = MeasureDomain::for_game(&game);
        assert_eq!(dom.caps(), &[0, 1, 0, 2]);
        let mut rho = MeasureMap::for_domain(&game, &dom);

        assert!(rho.lift(&dom, &game, 5));
        assert_eq!(rho.get(5), m(&[0, 1, 0, 0]));
        assert!(!rho.lift(&dom, &game, 5));
        assert!(!rho.lift(&dom, &game, 0));
        assert_eq!(rho.get(0), m(&[0, 0, 0, 0]));
        assert_eq!(rho.total_lifts(), 1);
        assert_eq!(rho.lift_count(5), 1);
    }

    #[test]
    fn prog_along_edge() {
        let game = six_vertex_example();
        let dom = MeasureDomain::for_game(&game);
        let mut rho = MeasureMap::for_domain(&game, &dom);
        rho.set(2, &m(&[0, 0, 0, 2]));
        // v2 has priority 3 and moves to v3.
        assert_eq!(rho.prog(&dom, &game, 1, 2), m(&[0, 1, 0, 0]));
        rho.set_top(2);
        assert_eq!(rho.prog(&dom, &game, 1, 2), Measure::Top);
    }

    #[test]
    fn lift_only_touches_the_lifted_vertex() {
        let game = six_vertex_example();
        let dom = MeasureDomain::for_game(&game);
        let mut rho = MeasureMap::for_domain(&game, &dom);
        rho.set(3, &m(&[0, 1, 0, 1]));
        let before = rho.clone();
        rho.lift(&dom, &game, 5);
        for v in 0..5 {
            assert_eq!(rho.get(v), before.get(v));
        }
        assert!(before.le(&rho));
        assert_eq!(rho.get(5), Measure::Top);
    }
}
