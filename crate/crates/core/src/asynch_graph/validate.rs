//! Checking the three axioms: symmetry, determinism and the cube property.

use std::collections::BTreeSet;
use std::fmt;

use super::{AsynchGraph, EdgeId};

/// Number of length-3 paths examined before the cube check gives up.
pub const DEFAULT_CUBE_CEILING: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `p ⋄ q` is declared but `q ⋄ p` is not.
    Symmetry { p: [EdgeId; 2], q: [EdgeId; 2] },
    /// `p ⋄ q1` and `p ⋄ q2` with `q1 ≠ q2`.
    Determinism {
        p: [EdgeId; 2],
        q1: [EdgeId; 2],
        q2: [EdgeId; 2],
    },
    /// One factorisation of the cube from `path` to `other` exists and the other does not.
    /// `left_holds` tells which side was found.
    Cube {
        path: [EdgeId; 3],
        other: [EdgeId; 3],
        left_holds: bool,
    },
    /// The cube check stopped after examining `limit` paths.
    CeilingReached { limit: usize },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Symmetry { .. } => "symmetry",
            Violation::Determinism { .. } => "determinism",
            Violation::Cube { .. } => "cube",
            Violation::CeilingReached { .. } => "ceiling",
        }
    }

    pub fn describe(&self, g: &AsynchGraph) -> String {
        match self {
            Violation::Symmetry { p, q } => format!(
                "symmetry: {} ⋄ {} has no reverse tile",
                g.word(p),
                g.word(q)
            ),
            Violation::Determinism { p, q1, q2 } => format!(
                "determinism: {} is tiled with both {} and {}",
                g.word(p),
                g.word(q1),
                g.word(q2)
            ),
            Violation::Cube {
                path,
                other,
                left_holds,
            } => format!(
                "cube: from {} to {} only the {} factorisation exists",
                g.word(path),
                g.word(other),
                if *left_holds { "first" } else { "second" }
            ),
            Violation::CeilingReached { limit } => {
                format!("cube check stopped after {limit} paths")
            }
        }
    }
}

/// The outcome of [`validate`]: empty iff all three axioms hold.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind() == kind)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let kinds: Vec<_> = self.violations.iter().map(|v| v.kind()).collect();
        write!(f, "{} violation(s): {}", kinds.len(), kinds.join(", "))
    }
}

pub fn validate(g: &AsynchGraph) -> Report {
    validate_with_ceiling(g, DEFAULT_CUBE_CEILING)
}

pub fn validate_with_ceiling(g: &AsynchGraph, ceiling: usize) -> Report {
    let mut violations = Vec::new();
    for &(p, q) in g.tiles() {
        if !g.is_tile(q, p) {
            violations.push(Violation::Symmetry { p, q });
        }
    }
    let mut seen = BTreeSet::new();
    for &(p, _) in g.tiles() {
        if !seen.insert(p) {
            continue;
        }
        let qs = g.partners(p);
        if qs.len() > 1 {
            violations.push(Violation::Determinism {
                p,
                q1: qs[0],
                q2: qs[1],
            });
        }
    }
    cube(g, ceiling, &mut violations);
    Report { violations }
}

/// Paths reachable by the first factorisation: `u2·u3 ⋄ u2'·w3`, `u1·u2' ⋄ v1·v2'`,
/// `v2'·w3 ⋄ v2·v3`.
fn left_side(g: &AsynchGraph, [u1, u2, u3]: [EdgeId; 3]) -> BTreeSet<[EdgeId; 3]> {
    let mut out = BTreeSet::new();
    for &[u2p, w3] in g.partners([u2, u3]) {
        for &[v1, v2p] in g.partners([u1, u2p]) {
            for &[v2, v3] in g.partners([v2p, w3]) {
                out.insert([v1, v2, v3]);
            }
        }
    }
    out
}

/// Paths reachable by the second factorisation: `u1·u2 ⋄ w1·u2''`,
/// `u2''·u3 ⋄ v2''·v3`, `w1·v2'' ⋄ v1·v2`.
fn right_side(g: &AsynchGraph, [u1, u2, u3]: [EdgeId; 3]) -> BTreeSet<[EdgeId; 3]> {
    let mut out = BTreeSet::new();
    for &[w1, u2pp] in g.partners([u1, u2]) {
        for &[v2pp, v3] in g.partners([u2pp, u3]) {
            for &[v1, v2] in g.partners([w1, v2pp]) {
                out.insert([v1, v2, v3]);
            }
        }
    }
    out
}

fn cube(g: &AsynchGraph, ceiling: usize, violations: &mut Vec<Violation>) {
    let mut examined = 0usize;
    for u1 in 0..g.edge_count() {
        for &u2 in g.out_edges(g.edge(u1).tgt) {
            for &u3 in g.out_edges(g.edge(u2).tgt) {
                examined += 1;
                if examined > ceiling {
                    violations.push(Violation::CeilingReached { limit: ceiling });
                    return;
                }
                let path = [u1, u2, u3];
                let left = left_side(g, path);
                let right = right_side(g, path);
                for &other in left.symmetric_difference(&right) {
                    violations.push(Violation::Cube {
                        path,
                        other,
                        left_holds: left.contains(&other),
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asynch_graph::{anchor_of, shuffle, terminal, GraphBuilder};
    use std::sync::Arc;

    fn single_edge(v0: &str, v1: &str, e: &str) -> Arc<AsynchGraph> {
        let mut b = GraphBuilder::new();
        let x = b.vertex(v0).unwrap();
        let y = b.vertex(v1).unwrap();
        b.edge(e, x, y, "O").unwrap();
        Arc::new(b.build())
    }

    #[test]
    fn standard_graphs_are_valid() {
        assert!(validate(&anchor_of(&["O", "P"])).is_ok());
        assert!(validate(&terminal()).is_ok());
        let cube = shuffle(&[
            single_edge("a", "a'", "u"),
            single_edge("b", "b'", "v"),
            single_edge("c", "c'", "w"),
        ]);
        assert!(validate(&cube).is_ok());
    }

    #[test]
    fn missing_reverse_tile_is_a_symmetry_violation() {
        let mut b = GraphBuilder::new();
        let s = b.vertex("*").unwrap();
        let o = b.edge("O", s, s, "O").unwrap();
        let p = b.edge("P", s, s, "P").unwrap();
        b.oriented_tile([o, p], [p, o]).unwrap();
        let r = validate(&b.build());
        assert!(r.has("symmetry"));
    }

    #[test]
    fn two_partners_is_a_determinism_violation() {
        let mut b = GraphBuilder::new();
        let s = b.vertex("*").unwrap();
        let a = b.edge("a", s, s, "").unwrap();
        let c = b.edge("b", s, s, "").unwrap();
        let d = b.edge("c", s, s, "").unwrap();
        b.tile([a, c], [c, a]).unwrap();
        b.tile([a, c], [d, a]).unwrap();
        let r = validate(&b.build());
        assert!(r.has("determinism"));
    }

    #[test]
    fn cube_with_a_missing_face_is_rejected() {
        let full = shuffle(&[
            single_edge("a", "a'", "u"),
            single_edge("b", "b'", "v"),
            single_edge("c", "c'", "w"),
        ]);
        let u_top = full.edge_id("(u,b,c')").unwrap();
        let v_top = full.edge_id("(a',v,c')").unwrap();
        let mut b = GraphBuilder::new();
        for name in full.vertex_names() {
            b.vertex(name.clone()).unwrap();
        }
        for e in full.edges() {
            b.edge(e.name.clone(), e.src, e.tgt, e.label.clone()).unwrap();
        }
        for &(p, q) in full.tiles() {
            if p == [u_top, v_top] || q == [u_top, v_top] {
                continue;
            }
            b.oriented_tile(p, q).unwrap();
        }
        let r = validate(&b.build());
        assert!(r.has("cube"), "{r}");
        assert!(!r.has("symmetry"));
        assert!(!r.has("determinism"));
    }

    #[test]
    fn ceiling_stops_the_cube_check() {
        let r = validate_with_ceiling(&anchor_of(&["O", "P"]), 3);
        assert!(r.has("ceiling"));
    }
}
