//! Structural predicates on cube orientations.

use std::collections::VecDeque;

use crate::cube::{all_faces, DimSet, Face, OutMap};
use crate::error::{Result, UsoError};

/// First pair `U < V` (index order) violating `(φ(U) ⊕ φ(V)) ∩ (U ⊕ V) ≠ ∅`.
pub fn uso_violation(o: &OutMap) -> Option<(DimSet, DimSet)> {
    let t = o.table();
    for v in 1..t.len() {
        for u in 0..v {
            if (t[u] ^ t[v]) & (u ^ v) as u32 == 0 {
                return Some((DimSet(u as u32), DimSet(v as u32)));
            }
        }
    }
    None
}

/// Pairwise USO criterion over all vertex pairs.
///
/// Implies consistency of the table as an orientation (adjacent pairs).
pub fn is_uso(o: &OutMap) -> bool {
    uso_violation(o).is_none()
}

pub(crate) fn require_uso(o: &OutMap) -> Result<()> {
    if is_uso(o) {
        Ok(())
    } else {
        Err(UsoError::NotAUso)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinkReport {
    pub face: Face,
    pub sinks: Vec<DimSet>,
}

/// Vertices of `face` without an outgoing edge inside the face.
pub fn sinks_in_face(o: &OutMap, face: &Face) -> Result<SinkReport> {
    if !face.lower.is_subset(face.upper) || !face.upper.is_subset(DimSet::full(o.dim())) {
        return Err(UsoError::MalformedFace {
            lower: face.lower,
            upper: face.upper,
        });
    }
    let carrier = face.carrier();
    let sinks = face
        .vertices()
        .filter(|&v| (o.out(v) & carrier).is_empty())
        .collect();
    Ok(SinkReport { face: *face, sinks })
}

fn sink_count(o: &OutMap, face: &Face) -> usize {
    let carrier = face.carrier();
    face.vertices()
        .filter(|&v| (o.out(v) & carrier).is_empty())
        .count()
}

/// Face-by-face definition of a USO: every face has exactly one sink.
pub fn every_face_has_unique_sink(o: &OutMap) -> bool {
    all_faces(o.dim()).all(|f| sink_count(o, &f) == 1)
}

pub fn global_sink(o: &OutMap) -> Result<DimSet> {
    let mut sinks = o.vertices().filter(|&v| o.out(v).is_empty());
    match (sinks.next(), sinks.next()) {
        (Some(s), None) => Ok(s),
        _ => Err(UsoError::NotAUso),
    }
}

/// The unique vertex with all edges outgoing.
pub fn global_source(o: &OutMap) -> Result<DimSet> {
    let full = DimSet::full(o.dim());
    let mut sources = o.vertices().filter(|&v| o.out(v) == full);
    match (sources.next(), sources.next()) {
        (Some(s), None) => Ok(s),
        _ => Err(UsoError::NotAUso),
    }
}

/// No unique global sink, but every proper face has one.
pub fn is_pseudo_uso(o: &OutMap) -> Result<bool> {
    o.require_orientation()?;
    let whole = Face::whole(o.dim());
    if sink_count(o, &whole) == 1 {
        return Ok(false);
    }
    Ok(all_faces(o.dim())
        .filter(|f| *f != whole)
        .all(|f| sink_count(o, &f) == 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutdegreeParity {
    AllEven,
    AllOdd,
    Mixed,
}

pub fn pseudo_outdegree_parity(o: &OutMap) -> OutdegreeParity {
    let mut even = false;
    let mut odd = false;
    for &m in o.table() {
        if m.count_ones() % 2 == 0 {
            even = true;
        } else {
            odd = true;
        }
    }
    match (even, odd) {
        (true, false) => OutdegreeParity::AllEven,
        (false, true) => OutdegreeParity::AllOdd,
        _ => OutdegreeParity::Mixed,
    }
}

/// Directed cycle `V⊕{i_0} → V⊕{i_0,i_1} → V⊕{i_1} → …` back to its first vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoCycleWitness {
    pub base: DimSet,
    /// Vertices along the cycle; the closing edge returns to `cycle[0]`.
    pub cycle: Vec<DimSet>,
}

impl PseudoCycleWitness {
    /// Dimensions `i_0, i_1, …` of the layer-one vertices, in cycle order.
    pub fn dimension_cycle(&self) -> Vec<usize> {
        self.cycle
            .iter()
            .filter(|v| (**v ^ self.base).len() == 1)
            .map(|v| (*v ^ self.base).min_dim().unwrap())
            .collect()
    }
}

/// Checks adjacency, edge directions, closure and the two-layer shape of a witness.
pub fn validate_pseudo_cycle(o: &OutMap, w: &PseudoCycleWitness) -> bool {
    let c = &w.cycle;
    if c.len() < 4 || !c.len().is_multiple_of(2) {
        return false;
    }
    let out_of_range = |v: &DimSet| v.bits() as usize >= o.num_vertices();
    if c.iter().any(out_of_range) {
        return false;
    }
    let layers_ok = c
        .iter()
        .enumerate()
        .all(|(k, v)| (*v ^ w.base).len() == if k % 2 == 0 { 1 } else { 2 });
    let mut distinct = c.clone();
    distinct.sort();
    distinct.dedup();
    layers_ok
        && distinct.len() == c.len()
        && (0..c.len()).all(|k| o.has_edge(c[k], c[(k + 1) % c.len()]))
}

/// Walks the two bottom layers above the global sink `v` of a pseudo-USO until a
/// directed cycle closes.
///
/// From `V⊕{i,j}` the walk steps down along an outgoing edge to some `V⊕{i}`;
/// even outdegrees there force another outgoing edge up to a fresh `V⊕{i,k}`.
/// Ties go to the smallest dimension.
pub fn find_pseudo_cycle(o: &OutMap, v: DimSet) -> Result<PseudoCycleWitness> {
    let m = o.dim();
    if m < 3 {
        return Err(UsoError::PreconditionFailed(format!(
            "pseudo-USO cycle walk needs dimension at least 3, got {m}"
        )));
    }
    if !v.is_subset(DimSet::full(m)) || !o.out(v).is_empty() {
        return Err(UsoError::PreconditionFailed(format!(
            "{v} is not a global sink"
        )));
    }
    if !is_pseudo_uso(o)? {
        return Err(UsoError::PreconditionFailed("not a pseudo-USO".into()));
    }
    if pseudo_outdegree_parity(o) != OutdegreeParity::AllEven {
        return Err(UsoError::Internal(
            "pseudo-USO with a sink must have even outdegrees".into(),
        ));
    }

    let mut path: Vec<DimSet> = Vec::new();
    // start at V⊕{1,2}
    let mut top = v ^ DimSet::from_dims([1, 2]);
    let internal = |msg: &str| UsoError::Internal(format!("pseudo-USO cycle walk: {msg}"));
    loop {
        if let Some(pos) = path.iter().position(|&x| x == top) {
            // closed at an upper-layer vertex; rotate so the cycle starts on layer one
            let mut cycle = path.split_off(pos);
            cycle.rotate_left(1);
            let w = PseudoCycleWitness { base: v, cycle };
            return if validate_pseudo_cycle(o, &w) {
                Ok(w)
            } else {
                Err(internal("produced an invalid cycle"))
            };
        }
        path.push(top);
        // step down: V⊕{i,j} → V⊕{i}
        let pair = top ^ v;
        let down = (o.out(top) & pair)
            .min_dim()
            .ok_or_else(|| internal("upper vertex has no edge into the bottom 2-face"))?;
        let low = top.toggle(down);
        if let Some(pos) = path.iter().position(|&x| x == low) {
            let w = PseudoCycleWitness {
                base: v,
                cycle: path.split_off(pos),
            };
            return if validate_pseudo_cycle(o, &w) {
                Ok(w)
            } else {
                Err(internal("produced an invalid cycle"))
            };
        }
        path.push(low);
        // step up: V⊕{i} → V⊕{i,k}, k ≠ i and k ≠ the dimension we arrived by
        let i = (low ^ v).min_dim().unwrap();
        let up_dims = o.out(low).without(i).without(down);
        let k = up_dims
            .min_dim()
            .ok_or_else(|| internal("no fresh outgoing edge at a layer-one vertex"))?;
        top = low.toggle(k);
    }
}

/// Unit-capacity flow network with vertex splitting; returns a maximum family of
/// internally vertex-disjoint directed paths from `source` to `sink`.
fn disjoint_paths(o: &OutMap, source: DimSet, sink: DimSet) -> Vec<Vec<DimSet>> {
    let n = o.dim();
    let nv = o.num_vertices();
    // node 2v = in(v), 2v+1 = out(v)
    let mut to: Vec<usize> = Vec::new();
    let mut cap: Vec<i32> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * nv];
    let mut add = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize, c: i32| {
        adj[a].push(to.len());
        to.push(b);
        cap.push(c);
        adj[b].push(to.len());
        to.push(a);
        cap.push(0);
    };
    for v in 0..nv {
        add(&mut adj, 2 * v, 2 * v + 1, 1);
        for k in 0..n {
            if o.table()[v] & (1 << k) != 0 {
                add(&mut adj, 2 * v + 1, 2 * (v ^ (1 << k)), 1);
            }
        }
    }
    let s = 2 * source.index() + 1;
    let t = 2 * sink.index();
    loop {
        let mut prev_edge = vec![usize::MAX; 2 * nv];
        let mut seen = vec![false; 2 * nv];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &e in &adj[u] {
                let w = to[e];
                if cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    prev_edge[w] = e;
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            break;
        }
        let mut cur = t;
        while cur != s {
            let e = prev_edge[cur];
            cap[e] -= 1;
            cap[e ^ 1] += 1;
            cur = to[e ^ 1];
        }
    }
    // decompose: saturated cube edges out(u) → in(w)
    let mut next: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for u in 0..nv {
        for &e in &adj[2 * u + 1] {
            let w = to[e];
            if e % 2 == 0 && w.is_multiple_of(2) && w / 2 != u && cap[e] == 0 {
                next[u].push(w / 2);
            }
        }
    }
    let mut paths = Vec::new();
    while let Some(first) = next[source.index()].pop() {
        let mut path = vec![source, DimSet(first as u32)];
        let mut cur = first;
        while cur != sink.index() {
            let nxt = next[cur].pop().expect("flow is conserved");
            path.push(DimSet(nxt as u32));
            cur = nxt;
        }
        paths.push(path);
    }
    paths
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoltKleeReport {
    pub holds: bool,
    pub source: DimSet,
    pub sink: DimSet,
    /// A maximum family of internally disjoint directed source-sink paths.
    pub paths: Vec<Vec<DimSet>>,
}

pub fn holt_klee(o: &OutMap) -> Result<HoltKleeReport> {
    require_uso(o)?;
    let source = global_source(o)?;
    let sink = global_sink(o)?;
    let paths = if o.dim() == 0 {
        Vec::new()
    } else {
        disjoint_paths(o, source, sink)
    };
    Ok(HoltKleeReport {
        holds: paths.len() == o.dim(),
        source,
        sink,
        paths,
    })
}

/// Are there `n` internally vertex-disjoint directed paths from the source to the sink?
pub fn check_holt_klee(o: &OutMap) -> Result<bool> {
    Ok(holt_klee(o)?.holds)
}

/// Independent check of a family of paths: directed, source to sink, internally disjoint.
pub fn validate_disjoint_paths(
    o: &OutMap,
    source: DimSet,
    sink: DimSet,
    paths: &[Vec<DimSet>],
) -> bool {
    let mut used = vec![false; o.num_vertices()];
    for p in paths {
        if p.len() < 2 || p[0] != source || *p.last().unwrap() != sink {
            return false;
        }
        if p.iter().any(|v| v.index() >= o.num_vertices()) {
            return false;
        }
        if !p.windows(2).all(|w| o.has_edge(w[0], w[1])) {
            return false;
        }
        for v in &p[1..p.len() - 1] {
            if used[v.index()] {
                return false;
            }
            used[v.index()] = true;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniformSide {
    /// the face spanned by the incoming higher neighbours
    Incoming,
    /// the face spanned by the outgoing higher neighbours
    Outgoing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalUniformityViolation {
    pub vertex: DimSet,
    pub side: UniformSide,
    /// a vertex of the spanned face with an edge against the required direction
    pub offender: DimSet,
    pub dim: usize,
}

/// First vertex whose maximal all-incoming (or all-outgoing) higher face is not uniform.
pub fn local_uniformity_violation(o: &OutMap) -> Option<LocalUniformityViolation> {
    let n = o.dim();
    for v in o.vertices() {
        let higher = v.complement(n);
        let outgoing = o.out(v) & higher;
        let incoming = higher - outgoing;
        for (side, dims) in [
            (UniformSide::Incoming, incoming),
            (UniformSide::Outgoing, outgoing),
        ] {
            let face = Face {
                lower: v,
                upper: v | dims,
            };
            for u in face.vertices() {
                let rel = u - v;
                // downward face: i ∈ φ(U) ⇔ i ∈ U; upward: i ∈ φ(U) ⇔ i ∉ U
                let expected = match side {
                    UniformSide::Incoming => rel,
                    UniformSide::Outgoing => dims - rel,
                };
                let bad = (o.out(u) & dims) ^ expected;
                if let Some(dim) = bad.min_dim() {
                    return Some(LocalUniformityViolation {
                        vertex: v,
                        side,
                        offender: u,
                        dim,
                    });
                }
            }
        }
    }
    None
}

pub fn check_locally_uniform(o: &OutMap) -> Result<bool> {
    require_uso(o)?;
    Ok(local_uniformity_violation(o).is_none())
}

/// Some directed cycle of the orientation graph, or `None` if it is acyclic.
pub fn directed_cycle(o: &OutMap) -> Option<Vec<DimSet>> {
    // iterative DFS with colours: 0 unvisited, 1 on stack, 2 finished
    let size = o.num_vertices();
    let mut colour = vec![0u8; size];
    let mut parent = vec![usize::MAX; size];
    for root in 0..size {
        if colour[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, o.table()[root])];
        colour[root] = 1;
        while let Some(&mut (v, ref mut rest)) = stack.last_mut() {
            if *rest == 0 {
                colour[v] = 2;
                stack.pop();
                continue;
            }
            let bit = *rest & rest.wrapping_neg();
            *rest ^= bit;
            let w = v ^ bit as usize;
            match colour[w] {
                0 => {
                    colour[w] = 1;
                    parent[w] = v;
                    stack.push((w, o.table()[w]));
                }
                1 => {
                    let mut cyc = vec![DimSet(v as u32)];
                    let mut cur = v;
                    while cur != w {
                        cur = parent[cur];
                        cyc.push(DimSet(cur as u32));
                    }
                    cyc.reverse();
                    return Some(cyc);
                }
                _ => {}
            }
        }
    }
    None
}

pub const DEFAULT_PATH_BUDGET: u64 = 10_000_000;

/// Number of edges on a longest simple directed path, by exhaustive DFS.
pub fn longest_directed_path_length(o: &OutMap) -> Result<usize> {
    longest_directed_path_with_budget(o, DEFAULT_PATH_BUDGET)
}

pub fn longest_directed_path_with_budget(o: &OutMap, budget: u64) -> Result<usize> {
    require_uso(o)?;
    struct Search<'a> {
        table: &'a [u32],
        visited: Vec<bool>,
        expansions: u64,
        budget: u64,
        best: usize,
    }
    impl Search<'_> {
        fn dfs(&mut self, v: usize, depth: usize) -> Result<()> {
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(UsoError::BudgetExceeded(self.budget));
            }
            self.best = self.best.max(depth);
            let mut out = self.table[v];
            while out != 0 {
                let bit = out & out.wrapping_neg();
                out ^= bit;
                let w = v ^ bit as usize;
                if !self.visited[w] {
                    self.visited[w] = true;
                    self.dfs(w, depth + 1)?;
                    self.visited[w] = false;
                }
            }
            Ok(())
        }
    }
    let mut search = Search {
        table: o.table(),
        visited: vec![false; o.num_vertices()],
        expansions: 0,
        budget,
        best: 0,
    };
    for start in 0..o.num_vertices() {
        search.visited[start] = true;
        search.dfs(start, 0)?;
        search.visited[start] = false;
    }
    Ok(search.best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::fixtures::*;
    use crate::lgraph::all_orientations;

    #[test]
    fn two_cube_classification() {
        assert!(is_uso(&eye()));
        assert!(is_uso(&bow()));
        assert!(!is_uso(&twin_peak()));
        assert!(!is_uso(&cycle()));
        assert!(!is_uso(&OutMap::new(1, vec![0, 0]).unwrap()));
    }

    #[test]
    fn sink_examples() {
        let whole = Face::whole(2);
        assert_eq!(
            sinks_in_face(&eye(), &whole).unwrap().sinks,
            vec![DimSet::EMPTY]
        );
        assert_eq!(
            sinks_in_face(&twin_peak(), &whole).unwrap().sinks,
            vec![DimSet::EMPTY, DimSet::full(2)]
        );
        assert!(sinks_in_face(&cycle(), &whole).unwrap().sinks.is_empty());
        assert_eq!(global_sink(&eye()).unwrap(), DimSet::EMPTY);
        assert_eq!(global_sink(&twin_peak()), Err(UsoError::NotAUso));
        assert_eq!(global_source(&eye()).unwrap(), DimSet::full(2));
    }

    #[test]
    fn pseudo_uso_examples() {
        assert!(is_pseudo_uso(&twin_peak()).unwrap());
        assert!(is_pseudo_uso(&cycle()).unwrap());
        assert!(!is_pseudo_uso(&eye()).unwrap());
        assert!(matches!(
            is_pseudo_uso(&OutMap::new(1, vec![0, 0]).unwrap()),
            Err(UsoError::NotAnOrientation { .. })
        ));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(
            pseudo_outdegree_parity(&twin_peak()),
            OutdegreeParity::AllEven
        );
        assert_eq!(pseudo_outdegree_parity(&cycle()), OutdegreeParity::AllOdd);
        assert_eq!(pseudo_outdegree_parity(&eye()), OutdegreeParity::Mixed);
    }

    #[test]
    fn pseudo_cycle_preconditions() {
        assert!(matches!(
            find_pseudo_cycle(&twin_peak(), DimSet::EMPTY),
            Err(UsoError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn pseudo_cycle_walk_on_all_three_cubes() {
        let mut found = 0;
        for o in all_orientations(3).unwrap() {
            if o.out(DimSet::EMPTY).is_empty() && is_pseudo_uso(&o).unwrap() {
                let w = find_pseudo_cycle(&o, DimSet::EMPTY).unwrap();
                assert!(validate_pseudo_cycle(&o, &w));
                found += 1;
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn uso_criteria_agree_on_small_tables() {
        for n in 1..=3 {
            for o in all_orientations(n).unwrap() {
                assert_eq!(is_uso(&o), every_face_has_unique_sink(&o));
            }
        }
    }

    #[test]
    fn holt_klee_eye() {
        let r = holt_klee(&eye()).unwrap();
        assert!(r.holds);
        assert_eq!(r.paths.len(), 2);
        assert!(validate_disjoint_paths(&eye(), r.source, r.sink, &r.paths));
        assert_eq!(holt_klee(&twin_peak()), Err(UsoError::NotAUso));
    }

    #[test]
    fn uniform_paths() {
        let uniform = OutMap::from_fn(3, |v| v).unwrap();
        assert_eq!(longest_directed_path_length(&uniform).unwrap(), 3);
        assert!(check_locally_uniform(&uniform).unwrap());
        assert_eq!(
            longest_directed_path_with_budget(&uniform, 3),
            Err(UsoError::BudgetExceeded(3))
        );
    }

    #[test]
    fn full_reversal_swaps_source_and_sink() {
        let o = bow();
        let r = o.reverse(DimSet::full(2));
        assert!(is_uso(&r));
        assert_eq!(global_sink(&r).unwrap(), global_source(&o).unwrap());
        assert_eq!(global_source(&r).unwrap(), global_sink(&o).unwrap());
    }

    #[test]
    fn directed_cycles() {
        assert_eq!(directed_cycle(&eye()), None);
        let c = directed_cycle(&cycle()).unwrap();
        assert_eq!(c.len(), 4);
        for k in 0..c.len() {
            assert!(cycle().has_edge(c[k], c[(k + 1) % c.len()]));
        }
        assert_eq!(directed_cycle(&twin_peak()), None);
    }
}
