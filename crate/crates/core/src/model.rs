//! Vertices, coloured edges and the rotation `x_i -> x_{i+1}` that fixes the
//! point at infinity.
//!
//! Vertices are plain integers `0..n`; vertex `n - 1` is the fixed point
//! `x_inf` and `0..n-1` are `x_0 .. x_{n-2}`. The order `n` travels alongside
//! the edges rather than inside them.
//!
//! Orbits are always materialized by closure under the rotation. For odd `n`
//! the two orientations of a black arc of difference `(n - 1) / 2` fall into a
//! single orbit, so a `(difference, colour)` pair does not identify an orbit.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{HopError, Result};

pub type Vertex = usize;

pub fn check_order(n: usize) -> Result<()> {
    if n < 4 {
        return Err(HopError::InvalidOrder(n));
    }
    Ok(())
}

#[inline]
pub fn infinity(n: usize) -> Vertex {
    n - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Difference {
    Finite(usize),
    Infinity,
}

impl Difference {
    /// The integer written in starter files: the difference itself, or `n - 1`
    /// for infinity.
    pub fn code(self, n: usize) -> usize {
        match self {
            Difference::Finite(d) => d,
            Difference::Infinity => n - 1,
        }
    }
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Difference::Finite(d) => write!(f, "{d}"),
            Difference::Infinity => f.write_str("inf"),
        }
    }
}

pub fn difference(u: Vertex, v: Vertex, n: usize) -> Result<Difference> {
    for x in [u, v] {
        if x >= n {
            return Err(HopError::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(HopError::DegenerateEdge(u));
    }
    let inf = infinity(n);
    if u == inf || v == inf {
        return Ok(Difference::Infinity);
    }
    let m = n - 1;
    let step = (v + m - u) % m;
    Ok(Difference::Finite(step.min(m - step)))
}

#[inline]
pub fn rotate_vertex(x: Vertex, k: usize, n: usize) -> Vertex {
    if x == infinity(n) {
        x
    } else {
        (x + k) % (n - 1)
    }
}

/// `Arc` is an oriented black edge from `u` (tail) to `v` (head). `Black` is
/// the undirected black edge of the two-fold graph used by one-starters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Pink,
    Blue,
    Arc,
    Black,
}

/// Colour-orientation as written in starter files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColourOrientation {
    Pink,
    Blue,
    BlackForward,
    BlackBackward,
    BlackUndirected,
}

impl ColourOrientation {
    pub fn code(self) -> i8 {
        match self {
            ColourOrientation::Pink => 0,
            ColourOrientation::Blue => 2,
            ColourOrientation::BlackForward | ColourOrientation::BlackUndirected => 1,
            ColourOrientation::BlackBackward => -1,
        }
    }
}

/// Whether the arc `tail -> head` counts as forward.
///
/// Finite arcs `(a, a + d)` are forward when `d < (n - 1) / 2`. At the middle
/// difference of odd `n` the arc with the smaller tail is forward. Arcs into
/// `x_inf` are forward, arcs out of it backward.
pub fn arc_is_forward(tail: Vertex, head: Vertex, n: usize) -> bool {
    let inf = infinity(n);
    if head == inf {
        return true;
    }
    if tail == inf {
        return false;
    }
    let m = n - 1;
    let step = (head + m - tail) % m;
    2 * step < m || (2 * step == m && tail < head)
}

/// Tail and head of the arc on `{a, b}` with the given orientation.
pub fn arc_with_orientation(a: Vertex, b: Vertex, forward: bool, n: usize) -> (Vertex, Vertex) {
    if arc_is_forward(a, b, n) == forward {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColouredEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub colour: Colour,
}

impl ColouredEdge {
    pub const fn new(u: Vertex, v: Vertex, colour: Colour) -> Self {
        ColouredEdge { u, v, colour }
    }

    pub const fn pink(u: Vertex, v: Vertex) -> Self {
        Self::new(u, v, Colour::Pink)
    }

    pub const fn blue(u: Vertex, v: Vertex) -> Self {
        Self::new(u, v, Colour::Blue)
    }

    pub const fn arc(tail: Vertex, head: Vertex) -> Self {
        Self::new(tail, head, Colour::Arc)
    }

    pub const fn black(u: Vertex, v: Vertex) -> Self {
        Self::new(u, v, Colour::Black)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        difference(self.u, self.v, n).map(|_| ())
    }

    pub fn difference(&self, n: usize) -> Difference {
        difference(self.u, self.v, n).expect("edge validated against n")
    }

    pub fn joins(&self, a: Vertex, b: Vertex) -> bool {
        (self.u == a && self.v == b) || (self.u == b && self.v == a)
    }

    pub fn is_oriented(&self) -> bool {
        self.colour != Colour::Black
    }

    /// Same edge with undirected endpoints sorted, so equal edges compare equal.
    pub fn canonical(&self) -> Self {
        match self.colour {
            Colour::Arc => *self,
            _ if self.u > self.v => Self::new(self.v, self.u, self.colour),
            _ => *self,
        }
    }

    pub fn rotate(&self, k: usize, n: usize) -> Self {
        Self::new(rotate_vertex(self.u, k, n), rotate_vertex(self.v, k, n), self.colour)
    }

    /// Pink and blue swapped, arcs reversed.
    pub fn conjugate(&self) -> Self {
        match self.colour {
            Colour::Pink => Self::new(self.u, self.v, Colour::Blue),
            Colour::Blue => Self::new(self.u, self.v, Colour::Pink),
            Colour::Arc => Self::new(self.v, self.u, Colour::Arc),
            Colour::Black => *self,
        }
    }

    pub fn orientation(&self, n: usize) -> ColourOrientation {
        match self.colour {
            Colour::Pink => ColourOrientation::Pink,
            Colour::Blue => ColourOrientation::Blue,
            Colour::Black => ColourOrientation::BlackUndirected,
            Colour::Arc if arc_is_forward(self.u, self.v, n) => ColourOrientation::BlackForward,
            Colour::Arc => ColourOrientation::BlackBackward,
        }
    }
}

impl fmt::Display for ColouredEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.colour {
            Colour::Pink => write!(f, "pink{{{},{}}}", self.u, self.v),
            Colour::Blue => write!(f, "blue{{{},{}}}", self.u, self.v),
            Colour::Black => write!(f, "black{{{},{}}}", self.u, self.v),
            Colour::Arc => write!(f, "arc({}->{})", self.u, self.v),
        }
    }
}

/// Powers of the rotation fixing `x_inf`. Order `n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rotation {
    n: usize,
    power: usize,
}

impl Rotation {
    pub fn new(n: usize, power: usize) -> Self {
        Rotation {
            n,
            power: power % (n - 1),
        }
    }

    pub fn order(&self) -> usize {
        self.n - 1
    }

    pub fn pow(self, k: usize) -> Self {
        Rotation::new(self.n, self.power * k)
    }

    pub fn vertex(&self, x: Vertex) -> Vertex {
        rotate_vertex(x, self.power, self.n)
    }

    pub fn edge(&self, e: &ColouredEdge) -> ColouredEdge {
        e.rotate(self.power, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// One pink and one undirected black edge per pair.
    TwoFold,
    /// One pink edge, one blue edge and two opposite black arcs per pair.
    FourFold,
}

/// Every edge of the two-fold or four-fold complete graph on `n` vertices.
pub fn all_edges(n: usize, kind: GraphKind) -> Vec<ColouredEdge> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match kind {
                GraphKind::TwoFold => {
                    edges.push(ColouredEdge::pink(u, v));
                    edges.push(ColouredEdge::black(u, v));
                }
                GraphKind::FourFold => {
                    edges.push(ColouredEdge::pink(u, v));
                    edges.push(ColouredEdge::blue(u, v));
                    edges.push(ColouredEdge::arc(u, v));
                    edges.push(ColouredEdge::arc(v, u));
                }
            }
        }
    }
    edges
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Least member in edge order.
    pub representative: ColouredEdge,
    /// Canonical members, sorted.
    pub members: Vec<ColouredEdge>,
    pub n: usize,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &ColouredEdge) -> bool {
        self.members.binary_search(&e.canonical()).is_ok()
    }

    /// Difference shared by every member.
    pub fn difference(&self) -> Difference {
        self.representative.difference(self.n)
    }

    pub fn colour(&self) -> Colour {
        self.representative.colour
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.representative;
        write!(
            f,
            "[{},{}]",
            r.difference(self.n).code(self.n),
            r.orientation(self.n).code()
        )
    }
}

pub fn orbit_of(e: &ColouredEdge, n: usize) -> Orbit {
    let members: BTreeSet<ColouredEdge> = (0..n - 1).map(|k| e.rotate(k, n).canonical()).collect();
    let members: Vec<ColouredEdge> = members.into_iter().collect();
    Orbit {
        representative: members[0],
        members,
        n,
    }
}

pub fn all_orbits(n: usize, kind: GraphKind) -> Vec<Orbit> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for e in all_edges(n, kind) {
        if seen.contains(&e) {
            continue;
        }
        let orbit = orbit_of(&e, n);
        seen.extend(orbit.members.iter().copied());
        orbits.push(orbit);
    }
    orbits
}

/// Constant-time edge to orbit lookup, built from [`all_orbits`].
#[derive(Debug, Clone)]
pub struct OrbitIndex {
    n: usize,
    kind: GraphKind,
    orbits: Vec<Orbit>,
    slots: Vec<u32>,
}

const NO_ORBIT: u32 = u32::MAX;

impl OrbitIndex {
    pub fn new(n: usize, kind: GraphKind) -> Self {
        let orbits = all_orbits(n, kind);
        let mut slots = vec![NO_ORBIT; n * n * 4];
        for (id, orbit) in orbits.iter().enumerate() {
            for e in &orbit.members {
                slots[Self::slot(n, e)] = id as u32;
            }
        }
        OrbitIndex { n, kind, orbits, slots }
    }

    fn slot(n: usize, e: &ColouredEdge) -> usize {
        let e = e.canonical();
        let colour = match e.colour {
            Colour::Pink => 0,
            Colour::Blue => 1,
            Colour::Arc => 2,
            Colour::Black => 3,
        };
        (e.u * n + e.v) * 4 + colour
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// `None` when the edge does not belong to this graph (for instance a blue
    /// edge in the two-fold graph, or an out-of-range vertex).
    pub fn id(&self, e: &ColouredEdge) -> Option<usize> {
        if e.u >= self.n || e.v >= self.n || e.u == e.v {
            return None;
        }
        match self.slots[Self::slot(self.n, e)] {
            NO_ORBIT => None,
            id => Some(id as usize),
        }
    }

    pub fn orbit(&self, id: usize) -> &Orbit {
        &self.orbits[id]
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn differences_from_fixture_edges() {
        assert_eq!(difference(6, 2, 10).unwrap(), Difference::Finite(4));
        assert_eq!(difference(0, 8, 10).unwrap(), Difference::Finite(1));
        assert_eq!(difference(7, 9, 10).unwrap(), Difference::Infinity);
        assert!(matches!(difference(3, 3, 10), Err(HopError::DegenerateEdge(3))));
        assert!(matches!(difference(3, 10, 10), Err(HopError::VertexOutOfRange { .. })));
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(ColouredEdge::pink(0, 8).rotate(1, 10), ColouredEdge::pink(1, 0));
        assert_eq!(ColouredEdge::arc(0, 1).rotate(3, 10), ColouredEdge::arc(3, 4));
        let e = ColouredEdge::arc(9, 4);
        assert_eq!(e.rotate(9, 10), e);
        assert_eq!(Rotation::new(10, 1).pow(9).vertex(5), 5);
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_of(&ColouredEdge::pink(0, 1), 10).len(), 9);
        assert_eq!(orbit_of(&ColouredEdge::pink(0, 5), 11).len(), 5);
        let merged = orbit_of(&ColouredEdge::arc(0, 5), 11);
        assert_eq!(merged.len(), 10);
        assert!(merged.contains(&ColouredEdge::arc(5, 0)));
        assert!(merged.contains(&ColouredEdge::arc(0, 5)));
    }

    #[test]
    fn orbit_counts() {
        let two = all_orbits(10, GraphKind::TwoFold);
        assert_eq!(two.len(), 10);
        assert!(two.iter().all(|o| o.len() == 9));
        let four = all_orbits(10, GraphKind::FourFold);
        assert_eq!(four.len(), 20);
        assert_eq!(four.iter().map(Orbit::len).sum::<usize>(), 180);
        let odd = all_orbits(11, GraphKind::FourFold);
        assert_eq!(odd.iter().map(Orbit::len).sum::<usize>(), 220);
    }

    #[test]
    fn orientation_codes() {
        assert_eq!(ColouredEdge::arc(0, 1).orientation(10), ColourOrientation::BlackForward);
        assert_eq!(
            ColouredEdge::arc(1, 0).orientation(10),
            ColourOrientation::BlackBackward
        );
        assert_eq!(ColouredEdge::arc(8, 3).orientation(10).code(), 1);
        assert_eq!(ColouredEdge::arc(3, 9).orientation(10), ColourOrientation::BlackForward);
        assert_eq!(
            ColouredEdge::arc(9, 3).orientation(10),
            ColourOrientation::BlackBackward
        );
        // middle difference of odd n: smaller tail is forward
        assert!(arc_is_forward(2, 7, 11));
        assert!(!arc_is_forward(7, 2, 11));
    }

    #[test]
    fn index_agrees_with_orbit_membership() {
        for n in [6, 7] {
            for kind in [GraphKind::TwoFold, GraphKind::FourFold] {
                let index = OrbitIndex::new(n, kind);
                for e in all_edges(n, kind) {
                    let id = index.id(&e).unwrap();
                    assert!(index.orbit(id).contains(&e));
                }
                assert_eq!(
                    index.id(&ColouredEdge::blue(0, 1)).is_some(),
                    kind == GraphKind::FourFold
                );
            }
        }
    }

    #[test]
    fn rotation_is_a_bijection_of_order_n_minus_1() {
        for n in 4..=12 {
            for kind in [GraphKind::TwoFold, GraphKind::FourFold] {
                let edges = all_edges(n, kind);
                let set: HashSet<_> = edges.iter().copied().collect();
                let image: HashSet<_> = edges.iter().map(|e| e.rotate(1, n).canonical()).collect();
                assert_eq!(set, image);
                for e in &edges {
                    assert_eq!(e.rotate(n - 1, n), *e);
                    assert_eq!(e.rotate(1, n).difference(n), e.difference(n));
                }
            }
        }
    }

    #[test]
    fn even_order_orbits_have_full_length() {
        for n in [10, 12] {
            assert!(all_orbits(n, GraphKind::FourFold).iter().all(|o| o.len() == n - 1));
        }
    }
}
