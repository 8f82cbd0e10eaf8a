use crate::error::{HopError, Result};
use crate::factor::Cycle;
use crate::model::{Colour, ColouredEdge, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjacencyViolation {
    pub vertex: Vertex,
    pub incoming: ColouredEdge,
    pub outgoing: ColouredEdge,
}

/// Vertex-local form of the adjacency rule at `x`, the vertex shared by `a`
/// and `b`:
/// - blue next to pink;
/// - two arcs, one entering and one leaving `x`;
/// - blue next to an arc entering `x`;
/// - pink next to an arc leaving `x`.
pub fn adjacent_pair_ok(x: Vertex, a: &ColouredEdge, b: &ColouredEdge) -> bool {
    use Colour::*;
    match (a.colour, b.colour) {
        (Pink, Blue) | (Blue, Pink) => true,
        (Arc, Arc) => (a.v == x && b.u == x) || (a.u == x && b.v == x),
        (Blue, Arc) => b.v == x,
        (Arc, Blue) => a.v == x,
        (Pink, Arc) => b.u == x,
        (Arc, Pink) => a.u == x,
        _ => false,
    }
}

/// Every adjacency of the cycle that breaks the rule. Both adjacencies of a
/// 2-cycle are checked.
pub fn check_condition_c(c: &Cycle) -> Result<Vec<AdjacencyViolation>> {
    if let Some(e) = c.edges.iter().find(|e| !e.is_oriented()) {
        return Err(HopError::Unoriented(e.to_string()));
    }
    Ok(c.adjacencies()
        .filter(|(x, a, b)| !adjacent_pair_ok(*x, a, b))
        .map(|(vertex, a, b)| AdjacencyViolation {
            vertex,
            incoming: *a,
            outgoing: *b,
        })
        .collect())
}
