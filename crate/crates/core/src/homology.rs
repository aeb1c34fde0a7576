//! Cycle space of an embedded graph and homology classes of its cycles.
//!
//! The class of a closed curve on the torus is the integer pair
//! `(p, q)` = (longitude winding, meridian winding), with the convention
//! that the longitude is `(1, 0)` and the meridian is `(0, 1)`.

use crate::error::{Error, ScanIncomplete, TreeCapExceeded};
use crate::graph::{EdgeId, TorusGraph, VertexId};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::ControlFlow;

/// Homology class of a closed curve on the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomologyClass {
    pub p: i64,
    pub q: i64,
}

impl HomologyClass {
    pub const ZERO: HomologyClass = HomologyClass { p: 0, q: 0 };

    pub fn new(p: i64, q: i64) -> HomologyClass {
        HomologyClass { p, q }
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    /// A class is essential when it is nonzero: the curve does not bound a
    /// disc in the torus.
    pub fn is_essential(&self) -> bool {
        !self.is_zero()
    }

    pub fn neg(&self) -> HomologyClass {
        HomologyClass::new(-self.p, -self.q)
    }

    pub fn add(&self, other: &HomologyClass) -> HomologyClass {
        HomologyClass::new(self.p + other.p, self.q + other.q)
    }

    pub fn sub(&self, other: &HomologyClass) -> HomologyClass {
        HomologyClass::new(self.p - other.p, self.q - other.q)
    }

    /// Whether gcd(|p|, |q|) = 1.
    pub fn is_primitive(&self) -> bool {
        primitive_reduce(*self).0 == 1
    }
}

impl std::fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// The algebraic intersection number of the torus curves carrying the two
/// classes: `a.p * b.q - a.q * b.p`.
pub fn intersection_det(a: HomologyClass, b: HomologyClass) -> i64 {
    let d = (a.p as i128) * (b.q as i128) - (a.q as i128) * (b.p as i128);
    i64::try_from(d).expect("intersection determinant out of range")
}

/// Factor a class as `g * u` with `g = gcd(|p|, |q|)` (and `gcd(0,0) = 0`)
/// and `u` sign-normalized: `u.p > 0`, or `u.p = 0` and `u.q > 0`.
pub fn primitive_reduce(a: HomologyClass) -> (i64, HomologyClass) {
    let g = num_integer::gcd(a.p.abs(), a.q.abs());
    if g == 0 {
        return (0, HomologyClass::ZERO);
    }
    let mut u = HomologyClass::new(a.p / g, a.q / g);
    if u.p < 0 || (u.p == 0 && u.q < 0) {
        u = u.neg();
    }
    (g, u)
}

/// Traversal direction of an edge within a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }
}

/// A vertex-simple cycle: an edge sequence forming a simple closed curve.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pub base: VertexId,
    pub steps: Vec<(EdgeId, Direction)>,
}

impl Cycle {
    /// The vertices visited, starting at `base`, one per step; validates
    /// that consecutive edges chain and that no vertex repeats.
    pub fn vertex_sequence(&self, g: &TorusGraph) -> Result<Vec<VertexId>, Error> {
        let mut seq = vec![self.base.clone()];
        let mut current = self.base.clone();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        seen.insert(current.clone());
        for (i, (eid, dir)) in self.steps.iter().enumerate() {
            let e = g
                .edge(eid)
                .ok_or_else(|| Error::UnknownEdge(eid.0.clone()))?;
            let (u, v) = e.endpoints();
            let (tail, head) = match dir {
                Direction::Forward => (u, v),
                Direction::Reverse => (v, u),
            };
            if *tail != current {
                return Err(Error::NotACycle { step: i });
            }
            current = head.clone();
            if i + 1 < self.steps.len() {
                if !seen.insert(current.clone()) {
                    return Err(Error::CycleRevisitsVertex(current.0.clone()));
                }
                seq.push(current.clone());
            }
        }
        if current != self.base {
            return Err(Error::NotACycle {
                step: self.steps.len(),
            });
        }
        Ok(seq)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> {
        self.steps.iter().map(|(e, _)| e)
    }
}

/// The signed sum of edge lift vectors along the cycle. Reversing the cycle
/// negates the class; contractible cycles sum to zero.
pub fn cycle_class(g: &TorusGraph, c: &Cycle) -> Result<HomologyClass, Error> {
    c.vertex_sequence(g)?;
    let mut total = HomologyClass::ZERO;
    for (eid, dir) in &c.steps {
        let t = g.edge_class(eid)?;
        total = match dir {
            Direction::Forward => total.add(&t),
            Direction::Reverse => total.sub(&t),
        };
    }
    Ok(total)
}

/// A spanning forest: one tree per connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub edges: BTreeSet<EdgeId>,
}

/// Deterministic spanning tree: breadth-first from the lowest vertex id of
/// each component, ties broken by lowest edge id.
pub fn spanning_tree(g: &TorusGraph) -> SpanningTree {
    let incident = incidence(g);
    let mut in_tree: BTreeSet<EdgeId> = BTreeSet::new();
    let mut visited: BTreeSet<&VertexId> = BTreeSet::new();

    for (start, _) in g.vertices() {
        if visited.contains(start) {
            continue;
        }
        visited.insert(start);
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            if let Some(nbrs) = incident.get(v) {
                for (eid, other) in nbrs {
                    if !visited.contains(other) {
                        visited.insert(other);
                        in_tree.insert((*eid).clone());
                        queue.push_back(other);
                    }
                }
            }
        }
    }
    SpanningTree { edges: in_tree }
}

/// Check that `t` is a spanning forest of `g` covering each component.
pub fn is_spanning_tree(g: &TorusGraph, t: &SpanningTree) -> bool {
    for eid in &t.edges {
        if g.edge(eid).is_none() {
            return false;
        }
    }
    // Acyclic and spanning per component: |tree edges| = |V| - #components,
    // and the tree edges connect every component.
    let comps = components_by_edges(g, |eid| t.edges.contains(eid));
    let full = components_by_edges(g, |_| true);
    comps.len() == full.len() && t.edges.len() + comps.len() == g.vertex_count()
}

fn components_by_edges<F: Fn(&EdgeId) -> bool>(g: &TorusGraph, keep: F) -> Vec<BTreeSet<VertexId>> {
    let mut incident: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
    for (eid, e) in g.edges() {
        if keep(eid) {
            let (u, v) = e.endpoints();
            incident.entry(u).or_default().push(v);
            incident.entry(v).or_default().push(u);
        }
    }
    let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
    let mut out = Vec::new();
    for (start, _) in g.vertices() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::new();
        queue.push_back(start);
        seen.insert(start);
        comp.insert(start.clone());
        while let Some(v) = queue.pop_front() {
            if let Some(nbrs) = incident.get(v) {
                for other in nbrs {
                    if seen.insert(other) {
                        comp.insert((*other).clone());
                        queue.push_back(other);
                    }
                }
            }
        }
        out.push(comp);
    }
    out
}

/// One cycle per non-tree edge: the edge plus the tree path between its
/// endpoints. Returns circuit-rank many cycles, ordered by edge id.
pub fn fundamental_cycles(g: &TorusGraph, t: &SpanningTree) -> Result<Vec<Cycle>, Error> {
    if !is_spanning_tree(g, t) {
        return Err(Error::NotASpanningTree);
    }
    let mut tree_incident: BTreeMap<&VertexId, Vec<(&EdgeId, &VertexId)>> = BTreeMap::new();
    for (eid, e) in g.edges() {
        if t.edges.contains(eid) {
            let (u, v) = e.endpoints();
            tree_incident.entry(u).or_default().push((eid, v));
            tree_incident.entry(v).or_default().push((eid, u));
        }
    }

    let mut cycles = Vec::new();
    for (eid, e) in g.edges() {
        if t.edges.contains(eid) {
            continue;
        }
        let (u, v) = e.endpoints();
        let mut steps = vec![(eid.clone(), Direction::Forward)];
        if u != v {
            // Tree path from v back to u.
            let path = tree_path(&tree_incident, v, u).expect("tree spans the component");
            for (pe, from) in path {
                let (a, _b) = g.edge(&pe).unwrap().endpoints();
                let dir = if *a == from {
                    Direction::Forward
                } else {
                    Direction::Reverse
                };
                steps.push((pe, dir));
            }
        }
        cycles.push(Cycle {
            base: u.clone(),
            steps,
        });
    }
    Ok(cycles)
}

/// BFS path in the tree from `from` to `to`; returns (edge, tail) steps.
fn tree_path(
    incident: &BTreeMap<&VertexId, Vec<(&EdgeId, &VertexId)>>,
    from: &VertexId,
    to: &VertexId,
) -> Option<Vec<(EdgeId, VertexId)>> {
    if from == to {
        return Some(Vec::new());
    }
    let mut prev: BTreeMap<&VertexId, (&EdgeId, &VertexId)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if let Some(nbrs) = incident.get(v) {
            for (eid, other) in nbrs {
                if *other != from && !prev.contains_key(*other) {
                    prev.insert(other, (eid, v));
                    if *other == to {
                        // Reconstruct.
                        let mut rev = Vec::new();
                        let mut cur = to;
                        while cur != from {
                            let (e, p) = prev[cur];
                            rev.push((e.clone(), p.clone()));
                            cur = p;
                        }
                        rev.reverse();
                        return Some(rev);
                    }
                    queue.push_back(other);
                }
            }
        }
    }
    None
}

fn incidence(g: &TorusGraph) -> BTreeMap<&VertexId, Vec<(&EdgeId, &VertexId)>> {
    let mut incident: BTreeMap<&VertexId, Vec<(&EdgeId, &VertexId)>> = BTreeMap::new();
    for (eid, e) in g.edges() {
        let (u, v) = e.endpoints();
        incident.entry(u).or_default().push((eid, v));
        if u != v {
            incident.entry(v).or_default().push((eid, u));
        }
    }
    incident
}

/// How a cycle scan ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanEnd {
    /// Every vertex-simple cycle was visited.
    Complete,
    /// The visitor stopped the scan early.
    Stopped,
    /// The cap was exceeded; the scan is incomplete and any conclusion
    /// drawn from it must be reported indeterminate.
    CapExceeded,
}

/// Visit every vertex-simple cycle of `g` exactly once, up to rotation and
/// reflection, in a deterministic order: bases ascend by vertex id, and the
/// search explores incident edges in edge-id order.
pub fn scan_simple_cycles<F>(g: &TorusGraph, cap: usize, mut visit: F) -> ScanEnd
where
    F: FnMut(&Cycle) -> ControlFlow<()>,
{
    let verts: Vec<&VertexId> = g.vertices().map(|(v, _)| v).collect();
    let vidx: BTreeMap<&VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let edges: Vec<(&EdgeId, usize, usize)> = g
        .edges()
        .map(|(eid, e)| {
            let (u, v) = e.endpoints();
            (eid, vidx[u], vidx[v])
        })
        .collect();

    // Adjacency by edge index, ascending.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); verts.len()];
    for (ei, &(_, u, v)) in edges.iter().enumerate() {
        if u == v {
            continue; // loops are handled as single-edge cycles
        }
        adj[u].push((ei, v));
        adj[v].push((ei, u));
    }

    let mut emitted = 0usize;
    let mut emit = |cycle: Cycle| -> ControlFlow<ScanEnd> {
        emitted += 1;
        if emitted > cap {
            return ControlFlow::Break(ScanEnd::CapExceeded);
        }
        match visit(&cycle) {
            ControlFlow::Continue(()) => ControlFlow::Continue(()),
            ControlFlow::Break(()) => ControlFlow::Break(ScanEnd::Stopped),
        }
    };

    // Loop edges first, in edge order, each a one-edge cycle.
    for &(eid, u, v) in &edges {
        if u == v {
            let c = Cycle {
                base: verts[u].clone(),
                steps: vec![(eid.clone(), Direction::Forward)],
            };
            if let ControlFlow::Break(end) = emit(c) {
                return end;
            }
        }
    }

    // Non-loop cycles: DFS from each base; interior vertices stay above the
    // base so each cycle is found at its minimum vertex; the reflection is
    // fixed by requiring the first edge id below the closing edge id.
    struct Dfs<'a> {
        adj: &'a [Vec<(usize, usize)>],
        edges: &'a [(&'a EdgeId, usize, usize)],
        verts: &'a [&'a VertexId],
    }
    let ctx = Dfs {
        adj: &adj,
        edges: &edges,
        verts: &verts,
    };

    fn explore<E>(
        ctx: &Dfs,
        base: usize,
        current: usize,
        path: &mut Vec<(usize, Direction)>,
        on_path: &mut Vec<bool>,
        emit: &mut E,
    ) -> ControlFlow<ScanEnd>
    where
        E: FnMut(Cycle) -> ControlFlow<ScanEnd>,
    {
        for &(ei, other) in &ctx.adj[current] {
            let first = path[0].0;
            if other == base {
                // Closing edge: emit if it is above the first edge and the
                // cycle has at least two edges.
                if ei > first {
                    let mut steps: Vec<(EdgeId, Direction)> = path
                        .iter()
                        .map(|&(e, d)| (ctx.edges[e].0.clone(), d))
                        .collect();
                    let dir = if ctx.edges[ei].1 == current {
                        Direction::Forward
                    } else {
                        Direction::Reverse
                    };
                    steps.push((ctx.edges[ei].0.clone(), dir));
                    let c = Cycle {
                        base: ctx.verts[base].clone(),
                        steps,
                    };
                    emit(c)?;
                }
                continue;
            }
            if other < base || on_path[other] {
                continue;
            }
            let dir = if ctx.edges[ei].1 == current {
                Direction::Forward
            } else {
                Direction::Reverse
            };
            path.push((ei, dir));
            on_path[other] = true;
            explore(ctx, base, other, path, on_path, emit)?;
            on_path[other] = false;
            path.pop();
        }
        ControlFlow::Continue(())
    }

    for base in 0..verts.len() {
        let mut on_path = vec![false; verts.len()];
        on_path[base] = true;
        for &(ei, other) in &adj[base] {
            if other < base {
                continue;
            }
            let dir = if edges[ei].1 == base {
                Direction::Forward
            } else {
                Direction::Reverse
            };
            let mut path = vec![(ei, dir)];
            on_path[other] = true;
            if let ControlFlow::Break(end) =
                explore(&ctx, base, other, &mut path, &mut on_path, &mut emit)
            {
                return end;
            }
            on_path[other] = false;
        }
    }
    ScanEnd::Complete
}

/// Collect every vertex-simple cycle, or signal an incomplete scan.
pub fn enumerate_simple_cycles(g: &TorusGraph, cap: usize) -> Result<Vec<Cycle>, ScanIncomplete> {
    let mut out = Vec::new();
    match scan_simple_cycles(g, cap, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    }) {
        ScanEnd::CapExceeded => Err(ScanIncomplete { cap }),
        _ => Ok(out),
    }
}

/// Enumerate every spanning tree of a connected graph, deterministically,
/// stopping with an error if more than `cap` trees exist.
pub fn all_spanning_trees(g: &TorusGraph, cap: usize) -> Result<Vec<SpanningTree>, TreeCapExceeded> {
    let verts: Vec<&VertexId> = g.vertices().map(|(v, _)| v).collect();
    let vidx: BTreeMap<&VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let edges: Vec<(&EdgeId, usize, usize)> = g
        .edges()
        .map(|(eid, e)| {
            let (u, v) = e.endpoints();
            (eid, vidx[u], vidx[v])
        })
        .collect();
    let n = verts.len();
    if n == 0 {
        return Ok(vec![]);
    }

    // Union-find over vertex indices.
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    fn connected_with_rest(
        parent: &Vec<usize>,
        edges: &[(&EdgeId, usize, usize)],
        from: usize,
        n: usize,
    ) -> bool {
        let mut p = parent.clone();
        let mut groups = {
            let mut set = BTreeSet::new();
            for i in 0..n {
                set.insert(find(&mut p, i));
            }
            set.len()
        };
        for &(_, u, v) in &edges[from..] {
            let (ru, rv) = (find(&mut p, u), find(&mut p, v));
            if ru != rv {
                p[ru] = rv;
                groups -= 1;
                if groups == 1 {
                    return true;
                }
            }
        }
        groups == 1
    }

    let mut out: Vec<SpanningTree> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();

    fn rec(
        edges: &[(&EdgeId, usize, usize)],
        n: usize,
        cap: usize,
        i: usize,
        parent: Vec<usize>,
        groups: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<SpanningTree>,
    ) -> Result<(), TreeCapExceeded> {
        if groups == 1 {
            if out.len() >= cap {
                return Err(TreeCapExceeded { cap });
            }
            out.push(SpanningTree {
                edges: chosen.iter().map(|&e| edges[e].0.clone()).collect(),
            });
            return Ok(());
        }
        if i == edges.len() {
            return Ok(());
        }
        let (_, u, v) = edges[i];
        let mut p = parent.clone();
        let (ru, rv) = (find(&mut p, u), find(&mut p, v));
        if ru == rv {
            // Loop or chord within the chosen forest; never in a tree from here.
            return rec(edges, n, cap, i + 1, parent, groups, chosen, out);
        }
        // Include edges[i].
        let mut pi = p.clone();
        pi[ru] = rv;
        chosen.push(i);
        rec(edges, n, cap, i + 1, pi, groups - 1, chosen, out)?;
        chosen.pop();
        // Exclude edges[i], if the rest can still connect everything.
        if connected_with_rest(&p, edges, i + 1, n) {
            rec(edges, n, cap, i + 1, p, groups, chosen, out)?;
        }
        Ok(())
    }

    rec(
        &edges,
        n,
        cap,
        0,
        (0..n).collect(),
        n,
        &mut chosen,
        &mut out,
    )?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests_support::{disc_graph, DiscSpec};

    #[test]
    fn det_examples() {
        assert_eq!(
            intersection_det(HomologyClass::new(1, 2), HomologyClass::new(1, 3)),
            1
        );
        assert_eq!(
            intersection_det(HomologyClass::new(0, 1), HomologyClass::new(1, 0)),
            -1
        );
        assert_eq!(
            intersection_det(HomologyClass::new(7, -3), HomologyClass::new(7, -3)),
            0
        );
    }

    #[test]
    fn primitive_reduce_examples() {
        assert_eq!(
            primitive_reduce(HomologyClass::new(4, 6)),
            (2, HomologyClass::new(2, 3))
        );
        assert_eq!(
            primitive_reduce(HomologyClass::new(0, 0)),
            (0, HomologyClass::ZERO)
        );
        assert_eq!(
            primitive_reduce(HomologyClass::new(-1, 2)),
            (1, HomologyClass::new(1, -2))
        );
        assert_eq!(
            primitive_reduce(HomologyClass::new(0, -3)),
            (3, HomologyClass::new(0, 1))
        );
    }

    #[test]
    fn spanning_tree_of_triangle_takes_two_lowest_edges() {
        let g = disc_graph(DiscSpec::Triangle);
        let t = spanning_tree(&g);
        assert_eq!(t.edges.len(), 2);
        assert!(t.edges.contains(&EdgeId::from("e1")));
    }

    #[test]
    fn theta_tree_is_single_lowest_edge() {
        let g = disc_graph(DiscSpec::Theta3);
        let t = spanning_tree(&g);
        assert_eq!(
            t.edges.iter().collect::<Vec<_>>(),
            vec![&EdgeId::from("e1")]
        );
    }

    #[test]
    fn fundamental_cycles_of_theta() {
        let g = disc_graph(DiscSpec::Theta3);
        let t = spanning_tree(&g);
        let cycles = fundamental_cycles(&g, &t).unwrap();
        assert_eq!(cycles.len(), 2);
        for c in &cycles {
            assert_eq!(c.steps.len(), 2);
            assert!(c.edge_ids().any(|e| *e == EdgeId::from("e1")));
        }
    }

    #[test]
    fn fundamental_cycles_of_tree_is_empty() {
        let g = disc_graph(DiscSpec::Path3);
        let t = spanning_tree(&g);
        assert_eq!(t.edges.len(), g.edge_count());
        assert!(fundamental_cycles(&g, &t).unwrap().is_empty());
    }

    #[test]
    fn cycle_counts_for_small_graphs() {
        let tri = disc_graph(DiscSpec::Triangle);
        assert_eq!(enumerate_simple_cycles(&tri, 1000).unwrap().len(), 1);

        let theta = disc_graph(DiscSpec::Theta3);
        assert_eq!(enumerate_simple_cycles(&theta, 1000).unwrap().len(), 3);
    }

    #[test]
    fn cap_exceeded_is_signalled() {
        let theta = disc_graph(DiscSpec::Theta3);
        assert_eq!(
            enumerate_simple_cycles(&theta, 2),
            Err(ScanIncomplete { cap: 2 })
        );
    }

    #[test]
    fn spanning_tree_enumeration_counts() {
        // A triangle has 3 spanning trees; theta-3 has 3 (one per edge).
        let tri = disc_graph(DiscSpec::Triangle);
        assert_eq!(all_spanning_trees(&tri, 100).unwrap().len(), 3);
        let theta = disc_graph(DiscSpec::Theta3);
        assert_eq!(all_spanning_trees(&theta, 100).unwrap().len(), 3);
        assert_eq!(
            all_spanning_trees(&theta, 2),
            Err(TreeCapExceeded { cap: 2 })
        );
    }
}
