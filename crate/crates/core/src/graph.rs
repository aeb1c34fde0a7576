//! Spatial multigraphs drawn on the torus.
//!
//! A [`TorusGraph`] couples an abstract multigraph (loops and parallel edges
//! permitted) with exact geometry: vertices are rational points of the unit
//! fundamental domain, and every edge carries a polyline drawn in the
//! universal cover plane. Validation decides, exactly, whether the drawing is
//! an embedding of the graph in the torus.

use crate::error::Error;
use crate::geom::{
    point_on_segment, segment_intersection, BoundingBox, Point, Rat, SegIntersection,
};
use crate::homology::HomologyClass;
use num_traits::Signed;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Identifier of a vertex; ids are opaque tokens.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub String);

/// Identifier of an edge.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}
impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v`{}`", self.0)
    }
}
impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}
impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e`{}`", self.0)
    }
}
impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}
impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_owned())
    }
}

/// How the carrying torus sits in the 3-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorusKind {
    /// Bounds a solid torus on both sides.
    Standard,
    /// The torus has a nontrivial companion knot. No further companion data
    /// is stored; the classification only ever uses the fact itself.
    NonstandardKnotted,
}

/// A point of the fundamental domain: exact rationals with 0 <= x,y < 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusPoint {
    x: Rat,
    y: Rat,
}

impl TorusPoint {
    pub fn new(x: Rat, y: Rat) -> Option<TorusPoint> {
        let in_range = |v: &Rat| !v.is_negative() && v < &crate::geom::rat_int(1);
        if in_range(&x) && in_range(&y) {
            Some(TorusPoint { x, y })
        } else {
            None
        }
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }
    pub fn y(&self) -> &Rat {
        &self.y
    }

    pub fn to_point(&self) -> Point {
        Point::new(self.x.clone(), self.y.clone())
    }
}

/// Geometry of one edge: its endpoints and its lift to the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGeometry {
    endpoints: (VertexId, VertexId),
    polyline: Vec<Point>,
}

impl EdgeGeometry {
    pub fn endpoints(&self) -> (&VertexId, &VertexId) {
        (&self.endpoints.0, &self.endpoints.1)
    }
    pub fn polyline(&self) -> &[Point] {
        &self.polyline
    }
    pub fn is_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }
}

/// A spatial multigraph on the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusGraph {
    torus: TorusKind,
    vertices: BTreeMap<VertexId, TorusPoint>,
    edges: BTreeMap<EdgeId, EdgeGeometry>,
}

impl TorusGraph {
    pub fn new(torus: TorusKind) -> TorusGraph {
        TorusGraph {
            torus,
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn torus(&self) -> TorusKind {
        self.torus
    }

    pub fn add_vertex(&mut self, id: VertexId, point: TorusPoint) -> Result<(), Error> {
        if self.vertices.contains_key(&id) {
            return Err(Error::DuplicateVertex(id.0));
        }
        self.vertices.insert(id, point);
        Ok(())
    }

    /// Add an edge from `u` to `v` with the given polyline in the universal
    /// cover. The polyline must start exactly at the coordinates of `u` and
    /// end at the coordinates of `v` plus an integer vector.
    pub fn add_edge(
        &mut self,
        id: EdgeId,
        u: VertexId,
        v: VertexId,
        polyline: Vec<Point>,
    ) -> Result<(), Error> {
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateEdge(id.0));
        }
        let pu = self.vertices.get(&u).ok_or_else(|| Error::UnknownVertex {
            edge: id.0.clone(),
            vertex: u.0.clone(),
        })?;
        let pv = self.vertices.get(&v).ok_or_else(|| Error::UnknownVertex {
            edge: id.0.clone(),
            vertex: v.0.clone(),
        })?;
        if polyline.len() < 2 {
            return Err(Error::PolylineTooShort(id.0));
        }
        if polyline[0] != pu.to_point() {
            return Err(Error::StartMismatch {
                edge: id.0,
                vertex: u.0,
            });
        }
        let last = polyline.last().unwrap();
        let dx = &last.x - pv.x();
        let dy = &last.y - pv.y();
        if !dx.is_integer() || !dy.is_integer() {
            return Err(Error::EndMismatch {
                edge: id.0,
                vertex: v.0,
            });
        }
        // Guard the lift against out-of-range integers early.
        crate::geom::bigint_to_i64(&dx.to_integer());
        crate::geom::bigint_to_i64(&dy.to_integer());
        for w in polyline.windows(2) {
            if w[0] == w[1] {
                return Err(Error::RepeatedPoint(id.0));
            }
        }
        self.edges.insert(id, EdgeGeometry {
            endpoints: (u, v),
            polyline,
        });
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&VertexId, &TorusPoint)> {
        self.vertices.iter()
    }
    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &EdgeGeometry)> {
        self.edges.iter()
    }
    pub fn vertex_point(&self, id: &VertexId) -> Option<&TorusPoint> {
        self.vertices.get(id)
    }
    pub fn edge(&self, id: &EdgeId) -> Option<&EdgeGeometry> {
        self.edges.get(id)
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The lift translation vector of an edge: last polyline point minus the
    /// coordinates of the head vertex. Components are integers; reversing the
    /// edge negates the vector.
    pub fn edge_class(&self, id: &EdgeId) -> Result<HomologyClass, Error> {
        let e = self
            .edges
            .get(id)
            .ok_or_else(|| Error::UnknownEdge(id.0.clone()))?;
        let pv = &self.vertices[&e.endpoints.1];
        let last = e.polyline.last().unwrap();
        let dx = &last.x - pv.x();
        let dy = &last.y - pv.y();
        debug_assert!(dx.is_integer() && dy.is_integer());
        Ok(HomologyClass::new(
            crate::geom::bigint_to_i64(&dx.to_integer()),
            crate::geom::bigint_to_i64(&dy.to_integer()),
        ))
    }

    /// Partition into connected components. Isolated vertices form singleton
    /// components. Components are ordered by their lowest vertex id.
    pub fn components(&self) -> Vec<TorusGraph> {
        let mut assignment: BTreeMap<&VertexId, usize> = BTreeMap::new();
        let mut comps: Vec<(BTreeSet<VertexId>, BTreeSet<EdgeId>)> = Vec::new();

        // Incidence map.
        let mut incident: BTreeMap<&VertexId, Vec<(&EdgeId, &VertexId)>> = BTreeMap::new();
        for (eid, e) in &self.edges {
            incident
                .entry(&e.endpoints.0)
                .or_default()
                .push((eid, &e.endpoints.1));
            incident
                .entry(&e.endpoints.1)
                .or_default()
                .push((eid, &e.endpoints.0));
        }

        for start in self.vertices.keys() {
            if assignment.contains_key(start) {
                continue;
            }
            let idx = comps.len();
            let mut verts = BTreeSet::new();
            let mut edges = BTreeSet::new();
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(start);
            assignment.insert(start, idx);
            verts.insert(start.clone());
            while let Some(v) = queue.pop_front() {
                if let Some(nbrs) = incident.get(v) {
                    for (eid, other) in nbrs {
                        edges.insert((*eid).clone());
                        if !assignment.contains_key(*other) {
                            assignment.insert(other, idx);
                            verts.insert((*other).clone());
                            queue.push_back(other);
                        }
                    }
                }
            }
            comps.push((verts, edges));
        }

        comps
            .into_iter()
            .map(|(verts, edges)| TorusGraph {
                torus: self.torus,
                vertices: verts
                    .into_iter()
                    .map(|v| {
                        let p = self.vertices[&v].clone();
                        (v, p)
                    })
                    .collect(),
                edges: edges
                    .into_iter()
                    .map(|e| {
                        let g = self.edges[&e].clone();
                        (e, g)
                    })
                    .collect(),
            })
            .collect()
    }

    /// Decide whether the drawing is an embedding: no two edge polylines may
    /// intersect, under any integer translate, except at common endpoint
    /// vertices, and no edge may pass through a non-endpoint vertex.
    ///
    /// Exact rational arithmetic throughout; no tolerance. Structural
    /// problems (coincident vertices) are errors, not crossing violations.
    pub fn validate_embedding(&self) -> Result<ValidationReport, Error> {
        // Distinct vertices must occupy distinct torus points.
        let mut seen: BTreeMap<(Rat, Rat), &VertexId> = BTreeMap::new();
        for (vid, p) in &self.vertices {
            if let Some(prev) = seen.insert((p.x().clone(), p.y().clone()), vid) {
                return Err(Error::CoincidentVertices(prev.0.clone(), vid.0.clone()));
            }
        }

        let mut violations: Vec<Violation> = Vec::new();
        let ids: Vec<&EdgeId> = self.edges.keys().collect();

        for (i, &aid) in ids.iter().enumerate() {
            let ea = &self.edges[aid];
            let bb_a = BoundingBox::of_points(ea.polyline.iter()).unwrap();

            // Edge against edge (including itself under translates).
            for &bid in ids.iter().skip(i) {
                let eb = &self.edges[bid];
                let bb_b = BoundingBox::of_points(eb.polyline.iter()).unwrap();
                for (tx, ty) in bb_a.overlapping_translates(&bb_b) {
                    if aid == bid {
                        if (tx, ty) == (0, 0) {
                            self.check_self(aid, ea, &mut violations);
                            continue;
                        }
                        // Compare each unordered translate pair once.
                        if (tx, ty) < (0, 0) {
                            continue;
                        }
                    }
                    self.check_pair(aid, ea, bid, eb, (tx, ty), &mut violations);
                }
            }

            // Edge against vertices.
            for (wid, wp) in &self.vertices {
                let w = wp.to_point();
                let wbb = BoundingBox::of_points([&w]).unwrap();
                for (tx, ty) in bb_a.overlapping_translates(&wbb) {
                    let pw = w.translated(tx, ty);
                    if !polyline_contains(&ea.polyline, &pw) {
                        continue;
                    }
                    let at_start = pw == ea.polyline[0] && *wid == ea.endpoints.0;
                    let at_end = pw == *ea.polyline.last().unwrap() && *wid == ea.endpoints.1;
                    if !(at_start || at_end) {
                        violations.push(Violation::EdgeThroughVertex {
                            edge: aid.clone(),
                            vertex: wid.clone(),
                            point: pw,
                            translate: (tx, ty),
                        });
                    }
                }
            }
        }

        violations.sort();
        violations.dedup();
        Ok(ValidationReport {
            ok: violations.is_empty(),
            violations,
        })
    }

    /// Intersections of one polyline with itself at translate zero.
    fn check_self(&self, aid: &EdgeId, ea: &EdgeGeometry, violations: &mut Vec<Violation>) {
        let pl = &ea.polyline;
        let n = pl.len() - 1; // segment count
        for s in 0..n {
            for t in (s + 1)..n {
                let r = segment_intersection(&pl[s], &pl[s + 1], &pl[t], &pl[t + 1]);
                match r {
                    SegIntersection::Empty => {}
                    SegIntersection::At(p) => {
                        if t == s + 1 && p == pl[t] {
                            continue; // adjacent segments share their breakpoint
                        }
                        // A zero-lift loop closes up: first and last segment
                        // meet at the basepoint.
                        if s == 0 && t == n - 1 && ea.is_loop() && pl[0] == pl[n] && p == pl[0] {
                            continue;
                        }
                        violations.push(Violation::EdgeCrossing {
                            edges: (aid.clone(), aid.clone()),
                            point: p,
                            translate: (0, 0),
                        });
                    }
                    SegIntersection::Overlap(p, _) => {
                        violations.push(Violation::EdgeCrossing {
                            edges: (aid.clone(), aid.clone()),
                            point: p,
                            translate: (0, 0),
                        });
                    }
                }
            }
        }
    }

    /// Intersections of polyline `a` with polyline `b` translated by `t`.
    fn check_pair(
        &self,
        aid: &EdgeId,
        ea: &EdgeGeometry,
        bid: &EdgeId,
        eb: &EdgeGeometry,
        (tx, ty): (i64, i64),
        violations: &mut Vec<Violation>,
    ) {
        let pa = &ea.polyline;
        let pb: Vec<Point> = eb.polyline.iter().map(|p| p.translated(tx, ty)).collect();

        // Terminal points and their vertices, for the contact rule.
        let a_terms = [
            (&pa[0], &ea.endpoints.0),
            (pa.last().unwrap(), &ea.endpoints.1),
        ];
        let b_first = pb[0].clone();
        let b_last = pb.last().unwrap().clone();
        let b_terms = [
            (&b_first, &eb.endpoints.0),
            (&b_last, &eb.endpoints.1),
        ];
        let allowed = |p: &Point| {
            a_terms.iter().any(|(tp, tv)| {
                *tp == p
                    && b_terms
                        .iter()
                        .any(|(sp, sv)| *sp == p && sv == tv)
            })
        };

        for s in 0..pa.len() - 1 {
            for t in 0..pb.len() - 1 {
                match segment_intersection(&pa[s], &pa[s + 1], &pb[t], &pb[t + 1]) {
                    SegIntersection::Empty => {}
                    SegIntersection::At(p) => {
                        if !allowed(&p) {
                            violations.push(Violation::EdgeCrossing {
                                edges: (aid.clone(), bid.clone()),
                                point: p,
                                translate: (tx, ty),
                            });
                        }
                    }
                    SegIntersection::Overlap(p, _) => {
                        violations.push(Violation::EdgeCrossing {
                            edges: (aid.clone(), bid.clone()),
                            point: p,
                            translate: (tx, ty),
                        });
                    }
                }
            }
        }
    }
}

fn polyline_contains(pl: &[Point], p: &Point) -> bool {
    pl.windows(2).any(|w| point_on_segment(p, &w[0], &w[1]))
}

/// A single disallowed contact found during validation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Two edge polylines (possibly the same edge under a translate) meet
    /// outside a common endpoint vertex.
    EdgeCrossing {
        edges: (EdgeId, EdgeId),
        point: Point,
        translate: (i64, i64),
    },
    /// An edge passes through a vertex that is not one of its endpoints.
    EdgeThroughVertex {
        edge: EdgeId,
        vertex: VertexId,
        point: Point,
        translate: (i64, i64),
    },
}

/// Outcome of [`TorusGraph::validate_embedding`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl TorusGraph {
    /// Same graph on a torus of different kind.
    pub fn with_torus(mut self, torus: TorusKind) -> TorusGraph {
        self.torus = torus;
        self
    }
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use crate::geom::rat;

    pub enum DiscSpec {
        Triangle,
        Theta3,
        Path3,
    }

    fn tp(xn: i64, xd: i64, yn: i64, yd: i64) -> TorusPoint {
        TorusPoint::new(rat(xn, xd), rat(yn, yd)).unwrap()
    }

    fn pt(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::new(rat(xn, xd), rat(yn, yd))
    }

    /// Small graphs drawn inside a disc of the fundamental domain.
    pub fn disc_graph(spec: DiscSpec) -> TorusGraph {
        let mut g = TorusGraph::new(TorusKind::Standard);
        match spec {
            DiscSpec::Triangle => {
                g.add_vertex("a".into(), tp(1, 4, 1, 4)).unwrap();
                g.add_vertex("b".into(), tp(3, 4, 1, 4)).unwrap();
                g.add_vertex("c".into(), tp(1, 2, 3, 4)).unwrap();
                g.add_edge(
                    "e1".into(),
                    "a".into(),
                    "b".into(),
                    vec![pt(1, 4, 1, 4), pt(3, 4, 1, 4)],
                )
                .unwrap();
                g.add_edge(
                    "e2".into(),
                    "a".into(),
                    "c".into(),
                    vec![pt(1, 4, 1, 4), pt(1, 2, 3, 4)],
                )
                .unwrap();
                g.add_edge(
                    "e3".into(),
                    "b".into(),
                    "c".into(),
                    vec![pt(3, 4, 1, 4), pt(1, 2, 3, 4)],
                )
                .unwrap();
            }
            DiscSpec::Theta3 => {
                g.add_vertex("u".into(), tp(1, 4, 1, 2)).unwrap();
                g.add_vertex("v".into(), tp(3, 4, 1, 2)).unwrap();
                g.add_edge(
                    "e1".into(),
                    "u".into(),
                    "v".into(),
                    vec![pt(1, 4, 1, 2), pt(3, 4, 1, 2)],
                )
                .unwrap();
                g.add_edge(
                    "e2".into(),
                    "u".into(),
                    "v".into(),
                    vec![pt(1, 4, 1, 2), pt(1, 2, 3, 4), pt(3, 4, 1, 2)],
                )
                .unwrap();
                g.add_edge(
                    "e3".into(),
                    "u".into(),
                    "v".into(),
                    vec![pt(1, 4, 1, 2), pt(1, 2, 1, 4), pt(3, 4, 1, 2)],
                )
                .unwrap();
            }
            DiscSpec::Path3 => {
                g.add_vertex("a".into(), tp(1, 4, 1, 4)).unwrap();
                g.add_vertex("b".into(), tp(1, 2, 1, 2)).unwrap();
                g.add_vertex("c".into(), tp(3, 4, 1, 4)).unwrap();
                g.add_edge(
                    "e1".into(),
                    "a".into(),
                    "b".into(),
                    vec![pt(1, 4, 1, 4), pt(1, 2, 1, 2)],
                )
                .unwrap();
                g.add_edge(
                    "e2".into(),
                    "b".into(),
                    "c".into(),
                    vec![pt(1, 2, 1, 2), pt(3, 4, 1, 4)],
                )
                .unwrap();
            }
        }
        g
    }

    /// A one-vertex bouquet whose loops have the given lift vectors.
    /// Zero-lift loops are drawn as small squares; nonzero lifts as straight
    /// lines to the translated basepoint.
    pub fn bouquet_graph(lifts: &[(i64, i64)]) -> TorusGraph {
        let mut g = TorusGraph::new(TorusKind::Standard);
        g.add_vertex("b".into(), tp(1, 2, 1, 2)).unwrap();
        let base = pt(1, 2, 1, 2);
        for (i, &(p, q)) in lifts.iter().enumerate() {
            let id = EdgeId(format!("l{i}"));
            let polyline = if (p, q) == (0, 0) {
                let d = (i as i64) + 1;
                vec![
                    base.clone(),
                    pt(8 + d, 16, 8, 16),
                    pt(8 + d, 16, 8 + d, 16),
                    pt(8, 16, 8 + d, 16),
                    base.clone(),
                ]
            } else {
                vec![base.clone(), base.translated(p, q)]
            };
            g.add_edge(id, "b".into(), "b".into(), polyline).unwrap();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, rat_int};
    use tests_support::{bouquet_graph, disc_graph, DiscSpec};

    fn tp(xn: i64, xd: i64, yn: i64, yd: i64) -> TorusPoint {
        TorusPoint::new(rat(xn, xd), rat(yn, yd)).unwrap()
    }

    fn pt(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::new(rat(xn, xd), rat(yn, yd))
    }

    #[test]
    fn torus_point_rejects_out_of_range() {
        assert!(TorusPoint::new(rat_int(1), rat_int(0)).is_none());
        assert!(TorusPoint::new(rat(-1, 2), rat_int(0)).is_none());
        assert!(TorusPoint::new(rat(99, 100), rat(0, 1)).is_some());
    }

    #[test]
    fn theta_in_disc_validates() {
        let g = disc_graph(DiscSpec::Theta3);
        let report = g.validate_embedding().unwrap();
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn crossing_edges_are_flagged() {
        let mut g = TorusGraph::new(TorusKind::Standard);
        g.add_vertex("a".into(), tp(1, 8, 1, 8)).unwrap();
        g.add_vertex("b".into(), tp(7, 8, 7, 8)).unwrap();
        g.add_vertex("c".into(), tp(1, 8, 7, 8)).unwrap();
        g.add_vertex("d".into(), tp(7, 8, 1, 8)).unwrap();
        g.add_edge(
            "e1".into(),
            "a".into(),
            "b".into(),
            vec![pt(1, 8, 1, 8), pt(7, 8, 7, 8)],
        )
        .unwrap();
        g.add_edge(
            "e2".into(),
            "c".into(),
            "d".into(),
            vec![pt(1, 8, 7, 8), pt(7, 8, 1, 8)],
        )
        .unwrap();
        let report = g.validate_embedding().unwrap();
        assert!(!report.ok);
        assert_eq!(report.violations.len(), 1);
        match &report.violations[0] {
            Violation::EdgeCrossing { edges, point, translate } => {
                assert_eq!(edges.0, EdgeId::from("e1"));
                assert_eq!(edges.1, EdgeId::from("e2"));
                assert_eq!(*translate, (0, 0));
                assert_eq!(*point, pt(1, 2, 1, 2));
            }
            other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn crossing_only_after_translation_is_found() {
        // Two edges disjoint in the fundamental domain; the second wraps
        // through the x=1 seam and crosses the first after translation.
        let mut g = TorusGraph::new(TorusKind::Standard);
        g.add_vertex("a".into(), tp(1, 16, 1, 4)).unwrap();
        g.add_vertex("b".into(), tp(1, 16, 3, 4)).unwrap();
        g.add_vertex("c".into(), tp(7, 8, 1, 2)).unwrap();
        g.add_vertex("d".into(), tp(1, 8, 1, 2)).unwrap();
        g.add_edge(
            "e1".into(),
            "a".into(),
            "b".into(),
            vec![pt(1, 16, 1, 4), pt(1, 16, 3, 4)],
        )
        .unwrap();
        g.add_edge(
            "e2".into(),
            "c".into(),
            "d".into(),
            vec![pt(7, 8, 1, 2), pt(9, 8, 1, 2)],
        )
        .unwrap();
        let report = g.validate_embedding().unwrap();
        assert!(!report.ok);
        let found = report.violations.iter().any(|v| match v {
            Violation::EdgeCrossing { point, translate, .. } => {
                *point == pt(1, 16, 1, 2) && *translate != (0, 0)
            }
            _ => false,
        });
        assert!(found, "{:?}", report.violations);
    }

    #[test]
    fn edge_through_vertex_is_flagged() {
        let mut g = TorusGraph::new(TorusKind::Standard);
        g.add_vertex("a".into(), tp(1, 8, 1, 2)).unwrap();
        g.add_vertex("b".into(), tp(7, 8, 1, 2)).unwrap();
        g.add_vertex("m".into(), tp(1, 2, 1, 2)).unwrap();
        g.add_edge(
            "e1".into(),
            "a".into(),
            "b".into(),
            vec![pt(1, 8, 1, 2), pt(7, 8, 1, 2)],
        )
        .unwrap();
        let report = g.validate_embedding().unwrap();
        assert!(!report.ok);
        assert!(matches!(
            &report.violations[0],
            Violation::EdgeThroughVertex { edge, vertex, .. }
                if *edge == EdgeId::from("e1") && *vertex == VertexId::from("m")
        ));
    }

    #[test]
    fn straight_torus_knot_loop_validates() {
        let g = bouquet_graph(&[(2, 3)]);
        let report = g.validate_embedding().unwrap();
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn meridian_longitude_wedge_validates() {
        let g = bouquet_graph(&[(0, 1), (1, 0)]);
        let report = g.validate_embedding().unwrap();
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn self_crossing_loop_is_flagged() {
        // A loop that crosses its own translate: straight line of lift
        // (0,2) passes through its own image shifted by (0,1)? No: parallel.
        // Use a (2,0) line plus a bump that hits the translate.
        let mut g = TorusGraph::new(TorusKind::Standard);
        g.add_vertex("v".into(), tp(0, 1, 1, 2)).unwrap();
        g.add_edge(
            "l".into(),
            "v".into(),
            "v".into(),
            vec![
                pt(0, 1, 1, 2),
                pt(1, 1, 3, 4),
                pt(2, 1, 1, 2),
            ],
        )
        .unwrap();
        // The polyline spans x in [0,2]; its translate by (1,0) overlaps
        // and crosses it.
        let report = g.validate_embedding().unwrap();
        assert!(!report.ok);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::EdgeCrossing { edges, .. } if edges.0 == edges.1)));
    }

    #[test]
    fn edge_class_examples() {
        let mut g = TorusGraph::new(TorusKind::Standard);
        g.add_vertex("v".into(), tp(0, 1, 0, 1)).unwrap();
        g.add_vertex("w".into(), tp(1, 2, 1, 2)).unwrap();
        g.add_edge(
            "l".into(),
            "v".into(),
            "v".into(),
            vec![pt(0, 1, 0, 1), pt(1, 1, 1, 1)],
        )
        .unwrap();
        g.add_edge(
            "s".into(),
            "v".into(),
            "w".into(),
            vec![pt(0, 1, 0, 1), pt(1, 2, 1, 2)],
        )
        .unwrap();
        g.add_edge(
            "big".into(),
            "v".into(),
            "v".into(),
            vec![pt(0, 1, 0, 1), pt(2, 1, 3, 1)],
        )
        .unwrap();
        assert_eq!(g.edge_class(&"l".into()).unwrap().p, 1);
        assert_eq!(g.edge_class(&"l".into()).unwrap().q, 1);
        let s = g.edge_class(&"s".into()).unwrap();
        assert!(s.is_zero());
        let big = g.edge_class(&"big".into()).unwrap();
        assert_eq!((big.p, big.q), (2, 3));
    }

    #[test]
    fn components_split_and_cover() {
        let mut g = disc_graph(DiscSpec::Triangle);
        g.add_vertex("iso".into(), tp(1, 16, 15, 16)).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        let total_edges: usize = comps.iter().map(|c| c.edge_count()).sum();
        let total_verts: usize = comps.iter().map(|c| c.vertex_count()).sum();
        assert_eq!(total_edges, g.edge_count());
        assert_eq!(total_verts, g.vertex_count());
    }

    #[test]
    fn coincident_vertices_are_structural_errors() {
        let mut g = TorusGraph::new(TorusKind::Standard);
        g.add_vertex("a".into(), tp(1, 2, 1, 2)).unwrap();
        g.add_vertex("b".into(), tp(1, 2, 1, 2)).unwrap();
        assert!(matches!(
            g.validate_embedding(),
            Err(Error::CoincidentVertices(_, _))
        ));
    }

    #[test]
    fn malformed_polylines_rejected_at_construction() {
        let mut g = TorusGraph::new(TorusKind::Standard);
        g.add_vertex("a".into(), tp(0, 1, 0, 1)).unwrap();
        g.add_vertex("b".into(), tp(1, 2, 0, 1)).unwrap();
        assert_eq!(
            g.add_edge("e".into(), "a".into(), "b".into(), vec![pt(0, 1, 0, 1)]),
            Err(Error::PolylineTooShort("e".into()))
        );
        assert!(matches!(
            g.add_edge(
                "e".into(),
                "a".into(),
                "b".into(),
                vec![pt(1, 4, 0, 1), pt(1, 2, 0, 1)]
            ),
            Err(Error::StartMismatch { .. })
        ));
        assert!(matches!(
            g.add_edge(
                "e".into(),
                "a".into(),
                "b".into(),
                vec![pt(0, 1, 0, 1), pt(1, 3, 0, 1)]
            ),
            Err(Error::EndMismatch { .. })
        ));
    }
}
