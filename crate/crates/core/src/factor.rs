//! Cycles, 2-factors and factorizations of the coloured multigraphs.
//!
//! These are plain data. Construction does not validate; the checkers in
//! [`crate::verify`] report structural problems alongside the combinatorial
//! conditions so that a malformed factor is diagnosed rather than refused.

use std::collections::HashSet;

use crate::catalog::CycleType;
use crate::model::{Colour, ColouredEdge, Vertex};

/// Edge `i` joins `vertices[i]` to `vertices[i + 1]`, cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<ColouredEdge>,
}

impl Cycle {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<ColouredEdge>) -> Self {
        Cycle { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `(shared vertex, incoming edge, outgoing edge)` for every consecutive
    /// pair of edges. A 2-cycle yields both of its adjacencies.
    pub fn adjacencies(&self) -> impl Iterator<Item = (Vertex, &ColouredEdge, &ColouredEdge)> + '_ {
        let len = self.edges.len();
        (0..len).map(move |i| {
            let j = (i + 1) % len;
            (self.vertices[j], &self.edges[i], &self.edges[j])
        })
    }

    pub fn pink_count(&self) -> usize {
        self.edges.iter().filter(|e| e.colour == Colour::Pink).count()
    }

    pub fn rotate(&self, k: usize, n: usize) -> Cycle {
        Cycle {
            vertices: self
                .vertices
                .iter()
                .map(|&x| crate::model::rotate_vertex(x, k, n))
                .collect(),
            edges: self.edges.iter().map(|e| e.rotate(k, n)).collect(),
        }
    }

    pub fn conjugate(&self) -> Cycle {
        Cycle {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(ColouredEdge::conjugate).collect(),
        }
    }

    pub fn structure_problems(&self, n: usize) -> Vec<String> {
        let mut problems = Vec::new();
        let len = self.vertices.len();
        if len < 2 {
            problems.push(format!("cycle of length {len}"));
            return problems;
        }
        if self.edges.len() != len {
            problems.push(format!("cycle has {len} vertices but {} edges", self.edges.len()));
            return problems;
        }
        let mut seen = HashSet::new();
        for &x in &self.vertices {
            if x >= n {
                problems.push(format!("vertex {x} out of range for n={n}"));
            } else if !seen.insert(x) {
                problems.push(format!("vertex {x} repeated in cycle"));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % len];
            if !e.joins(a, b) {
                problems.push(format!("edge {e} does not join {a} and {b}"));
            }
        }
        if len == 2 && self.edges[0].canonical() == self.edges[1].canonical() {
            problems.push(format!(
                "2-cycle on {{{},{}}} repeats {}",
                self.vertices[0], self.vertices[1], self.edges[0]
            ));
        }
        problems
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactor {
    pub n: usize,
    pub cycles: Vec<Cycle>,
}

impl TwoFactor {
    pub fn new(n: usize, cycles: Vec<Cycle>) -> Self {
        TwoFactor { n, cycles }
    }

    pub fn edges(&self) -> impl Iterator<Item = &ColouredEdge> + '_ {
        self.cycles.iter().flat_map(|c| c.edges.iter())
    }

    pub fn edge_count(&self) -> usize {
        self.cycles.iter().map(|c| c.edges.len()).sum()
    }

    /// Cycle lengths, largest first.
    pub fn lengths(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles.iter().map(Cycle::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn has_type(&self, t: &CycleType) -> bool {
        self.lengths() == t.parts()
    }

    pub fn rotate(&self, k: usize) -> TwoFactor {
        TwoFactor {
            n: self.n,
            cycles: self.cycles.iter().map(|c| c.rotate(k, self.n)).collect(),
        }
    }

    pub fn conjugate(&self) -> TwoFactor {
        TwoFactor {
            n: self.n,
            cycles: self.cycles.iter().map(Cycle::conjugate).collect(),
        }
    }

    /// Whether the cycles are shaped well enough for the colour and orbit
    /// checks to run: every cycle has at least two vertices, one edge per
    /// vertex, and every edge joins two distinct vertices below `n`.
    pub fn is_well_formed(&self) -> bool {
        self.cycles.iter().all(|c| {
            c.len() >= 2
                && c.edges.len() == c.len()
                && c.edges.iter().all(|e| e.u < self.n && e.v < self.n && e.u != e.v)
        })
    }

    pub fn structure_problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let mut seen = vec![0usize; self.n];
        for c in &self.cycles {
            problems.extend(c.structure_problems(self.n));
            let distinct: HashSet<Vertex> = c.vertices.iter().copied().filter(|&x| x < self.n).collect();
            for x in distinct {
                seen[x] += 1;
            }
        }
        for (x, &count) in seen.iter().enumerate() {
            match count {
                1 => {}
                0 => problems.push(format!("vertex {x} not covered")),
                _ => problems.push(format!("vertex {x} lies on {count} cycles")),
            }
        }
        problems
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: usize,
    pub cycle_type: CycleType,
    pub factors: Vec<TwoFactor>,
}

impl Factorization {
    pub fn edge_count(&self) -> usize {
        self.factors.iter().map(TwoFactor::edge_count).sum()
    }
}
