//! Closed walks in the dual fat graph.
//!
//! A walk is a sequence of states `(triangle, in-slot, out-slot)`. The curve
//! enters the triangle through the side `in-slot`, turns right when leaving
//! through the counterclockwise successor `(in + 1) % 3` and left otherwise,
//! then crosses into the glued triangle.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::triangulation::{FlipData, Side, Triangulation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    pub fn out_slot(self, in_slot: usize) -> usize {
        match self {
            Turn::Right => (in_slot + 1) % 3,
            Turn::Left => (in_slot + 2) % 3,
        }
    }

    pub fn from_slots(in_slot: usize, out_slot: usize) -> Option<Turn> {
        if out_slot == (in_slot + 1) % 3 {
            Some(Turn::Right)
        } else if out_slot == (in_slot + 2) % 3 {
            Some(Turn::Left)
        } else {
            None
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Turn::Left => 'L',
            Turn::Right => 'R',
        }
    }
}

/// One step: the edge through which the walk enters a triangle and the turn
/// it takes inside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub edge: usize,
    pub turn: Turn,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurvePath {
    /// Side through which the first step enters its triangle.
    pub start: Side,
    pub steps: Vec<Step>,
}

/// A state of the walk: triangle, entry slot, exit slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkState {
    pub triangle: usize,
    pub in_slot: usize,
    pub out_slot: usize,
}

impl CurvePath {
    /// Builds a walk from a start side and turns, checking that it closes.
    pub fn from_turns(tri: &Triangulation, start: Side, turns: &[Turn]) -> Result<Self> {
        if turns.is_empty() {
            return Err(Error::BadWalk("empty walk".into()));
        }
        if start.0 >= tri.num_triangles() || start.1 >= 3 {
            return Err(Error::BadWalk(format!("start side {start:?} does not exist")));
        }
        let mut cur = start;
        let mut steps = Vec::with_capacity(turns.len());
        for &turn in turns {
            steps.push(Step {
                edge: tri.edge_at(cur),
                turn,
            });
            let out = (cur.0, turn.out_slot(cur.1));
            cur = tri.partner(out);
        }
        if cur != start {
            return Err(Error::BadWalk("walk does not close up".into()));
        }
        Ok(Self { start, steps })
    }

    /// Finds a closed walk crossing the given cyclic edge sequence. The walk
    /// enters through `edges[k-1]` and leaves through `edges[k]` in step `k`.
    /// Both traversal directions and all starting sides are tried; the first
    /// consistent one wins.
    pub fn from_crossings(tri: &Triangulation, edges: &[usize]) -> Result<Self> {
        if edges.len() < 2 {
            return Err(Error::BadWalk("a closed walk crosses at least two edges".into()));
        }
        for &e in edges {
            if e >= tri.num_edges() {
                return Err(Error::EdgeOutOfRange(e));
            }
        }
        let reversed: Vec<usize> = edges.iter().rev().copied().collect();
        for seq in [edges, &reversed[..]] {
            let last = seq[seq.len() - 1];
            for start in tri.sides_of(last) {
                if let Some(p) = Self::try_crossings(tri, start, seq) {
                    return Ok(p);
                }
            }
        }
        Err(Error::BadWalk(format!(
            "no closed walk crosses the edge sequence {edges:?}"
        )))
    }

    fn try_crossings(tri: &Triangulation, start: Side, seq: &[usize]) -> Option<Self> {
        let mut cur = start;
        let mut turns = Vec::with_capacity(seq.len());
        for &next in seq {
            let (t, i) = cur;
            let out = (0..3).find(|&k| k != i && tri.triangles()[t][k] == next)?;
            turns.push(Turn::from_slots(i, out)?);
            cur = tri.partner((t, out));
        }
        if cur != start {
            return None;
        }
        Self::from_turns(tri, start, &turns).ok()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn turns(&self) -> Vec<Turn> {
        self.steps.iter().map(|s| s.turn).collect()
    }

    /// Re-validates the walk against a triangulation and returns its states.
    pub fn states(&self, tri: &Triangulation) -> Result<Vec<WalkState>> {
        let mut cur = self.start;
        let mut out = Vec::with_capacity(self.steps.len());
        for (k, step) in self.steps.iter().enumerate() {
            if cur.0 >= tri.num_triangles() {
                return Err(Error::BadWalk(format!("step {k} leaves the triangulation")));
            }
            if tri.edge_at(cur) != step.edge {
                return Err(Error::BadWalk(format!(
                    "step {k} enters through edge {} but records edge {}",
                    tri.edge_at(cur),
                    step.edge
                )));
            }
            let o = step.turn.out_slot(cur.1);
            out.push(WalkState {
                triangle: cur.0,
                in_slot: cur.1,
                out_slot: o,
            });
            cur = tri.partner((cur.0, o));
        }
        if cur != self.start {
            return Err(Error::BadWalk("walk does not close up".into()));
        }
        Ok(out)
    }

    /// The cyclic sequence of crossed edges, starting with the entry edge.
    pub fn crossings(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    /// Same curve started `k` steps later.
    pub fn rotate(&self, tri: &Triangulation, k: usize) -> Result<Self> {
        let states = self.states(tri)?;
        let k = k % states.len();
        let s = states[k];
        let turns: Vec<Turn> = (0..states.len())
            .map(|i| self.steps[(k + i) % states.len()].turn)
            .collect();
        Self::from_turns(tri, (s.triangle, s.in_slot), &turns)
    }

    /// The same curve traversed backwards.
    pub fn reverse(&self, tri: &Triangulation) -> Result<Self> {
        let states = self.states(tri)?;
        let m = states.len();
        let last = states[m - 1];
        let start = (last.triangle, last.out_slot);
        let turns: Vec<Turn> = (0..m)
            .map(|i| {
                let s = states[m - 1 - i];
                Turn::from_slots(s.out_slot, s.in_slot).expect("distinct slots")
            })
            .collect();
        Self::from_turns(tri, start, &turns)
    }

    /// The walk of the same curve after the flip recorded in `data`.
    pub fn transport(&self, old: &Triangulation, new: &Triangulation, data: &FlipData) -> Result<Self> {
        let states = self.states(old)?;
        let m = states.len();
        let in_q = |t: usize| t == data.t1 || t == data.t2;
        let diagonal = |s: Side| old.edge_at(s) == data.edge && in_q(s.0);
        let map_side = |s: Side| -> Side {
            let k = data
                .old_sides
                .iter()
                .position(|x| *x == s)
                .expect("boundary side of the quadrilateral");
            data.new_sides[k]
        };
        // Start at a state that does not enter through the diagonal.
        let k0 = (0..m)
            .find(|&k| !diagonal((states[k].triangle, states[k].in_slot)))
            .ok_or_else(|| Error::BadWalk("walk only crosses the flipped edge".into()))?;
        let mut emitted: Vec<WalkState> = Vec::with_capacity(m + 2);
        let mut k = 0;
        while k < m {
            let s = states[(k0 + k) % m];
            if !in_q(s.triangle) {
                emitted.push(s);
                k += 1;
                continue;
            }
            let x = (s.triangle, s.in_slot);
            let mut y = (s.triangle, s.out_slot);
            k += 1;
            if diagonal(y) {
                let s2 = states[(k0 + k) % m];
                y = (s2.triangle, s2.out_slot);
                k += 1;
            }
            let (nx, ny) = (map_side(x), map_side(y));
            if nx.0 == ny.0 {
                emitted.push(WalkState {
                    triangle: nx.0,
                    in_slot: nx.1,
                    out_slot: ny.1,
                });
            } else {
                emitted.push(WalkState {
                    triangle: nx.0,
                    in_slot: nx.1,
                    out_slot: 0,
                });
                emitted.push(WalkState {
                    triangle: ny.0,
                    in_slot: 0,
                    out_slot: ny.1,
                });
            }
        }
        let first = emitted[0];
        let turns: Vec<Turn> = emitted
            .iter()
            .map(|s| Turn::from_slots(s.in_slot, s.out_slot).expect("distinct slots"))
            .collect();
        Self::from_turns(new, (first.triangle, first.in_slot), &turns)
    }
}

impl fmt::Display for CurvePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@({},{})", self.start.0, self.start.1)?;
        for s in &self.steps {
            write!(f, " {}{}", s.edge, s.turn.as_char())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Surface;

    fn c11() -> Triangulation {
        Triangulation::new(Surface::c11(), vec![[0, 1, 2], [0, 1, 2]]).unwrap()
    }

    #[test]
    fn crossing_two_edges_closes() {
        let t = c11();
        let p = CurvePath::from_crossings(&t, &[1, 2]).unwrap();
        assert_eq!(p.len(), 2);
        let mut c = p.crossings();
        c.sort();
        assert_eq!(c, vec![1, 2]);
    }

    #[test]
    fn bad_walk_rejected() {
        let t = c11();
        assert!(CurvePath::from_turns(&t, (0, 0), &[Turn::Right]).is_err());
        let p = CurvePath::from_crossings(&t, &[1, 2]).unwrap();
        let mut broken = p.clone();
        broken.steps[0].edge = 0;
        assert!(broken.states(&t).is_err());
    }

    #[test]
    fn rotation_and_reversal_stay_closed() {
        let t = c11();
        let p = CurvePath::from_crossings(&t, &[0, 1, 2, 0, 1, 2]).unwrap();
        for k in 0..p.len() {
            assert!(p.rotate(&t, k).unwrap().states(&t).is_ok());
        }
        let r = p.reverse(&t).unwrap();
        assert_eq!(r.reverse(&t).unwrap().states(&t).unwrap().len(), p.len());
    }

    #[test]
    fn transport_through_flip() {
        let t = c11();
        let p = CurvePath::from_crossings(&t, &[1, 2]).unwrap();
        for e in 0..3 {
            let (f, data) = t.flip_with_data(e).unwrap();
            let q = p.transport(&t, &f, &data).unwrap();
            assert!(q.states(&f).is_ok());
        }
    }
}
