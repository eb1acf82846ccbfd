//! L-graphs and property L.
//!
//! The L-graph of a vertex `V` lives on the dimensions outside `V`; it has an
//! arc `(i, j)` whenever exactly one of `V` and `V ∪ {i}` leaves along `j`.
//! An orientation has property L when every L-graph is acyclic.

use std::collections::VecDeque;

use crate::cube::{DimSet, OutMap};
use crate::error::{Result, UsoError};

/// Directed graph on the dimensions `[n] \ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LGraph {
    pub base_vertex: DimSet,
    pub nodes: DimSet,
    /// `succ[i - 1]` holds the heads of the arcs leaving node `i`.
    succ: Vec<DimSet>,
}

impl LGraph {
    pub fn successors(&self, node: usize) -> DimSet {
        self.succ[node - 1]
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.nodes.contains(from) && self.succ[from - 1].contains(to)
    }

    /// Arcs `(i, j)` sorted by tail, then head.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.nodes
            .iter()
            .flat_map(|i| self.succ[i - 1].iter().map(move |j| (i, j)))
            .collect()
    }

    pub fn num_arcs(&self) -> usize {
        self.nodes.iter().map(|i| self.succ[i - 1].len()).sum()
    }

    /// True iff every arc of `self` (restricted to `dims`) is an arc of `other`.
    pub fn is_subgraph_of(&self, other: &LGraph) -> bool {
        self.arcs().into_iter().all(|(i, j)| other.has_arc(i, j))
    }

    pub fn is_acyclic(&self) -> bool {
        // peel off nodes without remaining successors
        let mut alive = self.nodes;
        loop {
            let sinks: Vec<usize> = alive
                .iter()
                .filter(|&i| (self.succ[i - 1] & alive).is_empty())
                .collect();
            if sinks.is_empty() {
                return alive.is_empty();
            }
            for s in sinks {
                alive = alive.without(s);
            }
        }
    }

    /// A shortest directed cycle, rotated to start at its smallest node.
    ///
    /// Ties between equally short cycles go to the smallest start node, then
    /// to the BFS order from it.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for start in self.nodes.iter() {
            if let Some(cyc) = self.shortest_cycle_through(start) {
                if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                    best = Some(cyc);
                }
            }
        }
        best.map(|mut c| {
            let pos = c
                .iter()
                .enumerate()
                .min_by_key(|(_, &d)| d)
                .map(|(k, _)| k)
                .unwrap();
            c.rotate_left(pos);
            c
        })
    }

    fn shortest_cycle_through(&self, start: usize) -> Option<Vec<usize>> {
        let len = self.succ.len();
        let mut parent = vec![0usize; len + 1];
        let mut seen = DimSet::EMPTY.with(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in self.succ[u - 1].iter() {
                if v == start {
                    let mut path = vec![u];
                    let mut cur = u;
                    while cur != start {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen.contains(v) {
                    seen = seen.with(v);
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

/// The L-graph of `v` in `o`.
pub fn lgraph(o: &OutMap, v: DimSet) -> LGraph {
    let n = o.dim();
    let nodes = v.complement(n);
    let base = o.out(v);
    let mut succ = vec![DimSet::EMPTY; n];
    for i in nodes.iter() {
        let diff = base ^ o.out(v.with(i));
        succ[i - 1] = (diff & nodes).without(i);
    }
    LGraph {
        base_vertex: v,
        nodes,
        succ,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyLWitness {
    pub vertex: DimSet,
    /// `i_0 → i_1 → … → i_0`, listed without repeating `i_0`.
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyLReport {
    pub holds: bool,
    pub witness: Option<PropertyLWitness>,
}

/// Decides property L; on failure reports the first vertex (index order) with a cyclic
/// L-graph and a shortest cycle there.
pub fn has_property_l(o: &OutMap) -> PropertyLReport {
    for v in o.vertices() {
        let g = lgraph(o, v);
        if !g.is_acyclic() {
            let cycle = g
                .shortest_cycle()
                .expect("cyclic graph has a shortest cycle");
            return PropertyLReport {
                holds: false,
                witness: Some(PropertyLWitness { vertex: v, cycle }),
            };
        }
    }
    PropertyLReport {
        holds: true,
        witness: None,
    }
}

/// Property L without witness construction.
pub fn property_l_holds(o: &OutMap) -> bool {
    o.vertices().all(|v| lgraph(o, v).is_acyclic())
}

/// Checks that `witness` describes a directed cycle of the L-graph it names.
pub fn validate_property_l_witness(o: &OutMap, witness: &PropertyLWitness) -> bool {
    let c = &witness.cycle;
    if c.len() < 2 || witness.vertex.bits() as usize >= o.num_vertices() {
        return false;
    }
    let g = lgraph(o, witness.vertex);
    (0..c.len()).all(|k| g.has_arc(c[k], c[(k + 1) % c.len()]))
}

/// Largest dimension for which [`property_l_implies_uso_check`] enumerates all orientations.
pub const EXHAUSTIVE_ORIENTATION_DIM: usize = 3;

/// Every orientation of the `n`-cube, built from one direction bit per edge.
///
/// Edge bits are ordered by (lower endpoint index, dimension); bit set = upward.
pub fn all_orientations(n: usize) -> Result<impl Iterator<Item = OutMap>> {
    if n > EXHAUSTIVE_ORIENTATION_DIM {
        return Err(UsoError::DimensionTooLarge {
            n,
            cap: EXHAUSTIVE_ORIENTATION_DIM,
        });
    }
    let edges: Vec<(u32, u32)> = (0u32..1 << n)
        .flat_map(|v| {
            (0..n as u32)
                .filter(move |k| v & (1 << k) == 0)
                .map(move |k| (v, k))
        })
        .collect();
    let count = 1u64 << edges.len();
    Ok((0..count).map(move |code| {
        let mut table = vec![0u32; 1 << n];
        for (e, &(v, k)) in edges.iter().enumerate() {
            let bit = 1u32 << k;
            if code & (1 << e) != 0 {
                table[v as usize] |= bit;
            } else {
                table[(v | bit) as usize] |= bit;
            }
        }
        OutMap::from_table_unchecked(n, table)
    }))
}

/// Exhaustive check that every `n`-cube orientation with property L is a USO.
pub fn property_l_implies_uso_check(n: usize) -> Result<bool> {
    if n > EXHAUSTIVE_ORIENTATION_DIM {
        return Err(UsoError::DimensionTooLarge {
            n,
            cap: EXHAUSTIVE_ORIENTATION_DIM,
        });
    }
    Ok(all_orientations(n)?
        .filter(property_l_holds)
        .all(|o| crate::analysis::is_uso(&o)))
}
