//! Grid embeddings on the n-by-n torus grid, moves on them, and the
//! reduction search that certifies triviality independently of the
//! classifier.
//!
//! A [`GridEmbedding`] places graph vertices on grid sites and draws each
//! edge as a lattice path; validity means the curves are disjoint except at
//! shared endpoint vertices. Embeddings convert losslessly to validated
//! [`TorusGraph`]s with coordinates of denominator n.
//!
//! Moves come in four families, each realizable by an ambient isotopy of the
//! 3-sphere carrying the torus-drawn graph to the new drawing:
//!
//! * cell slides (corner flips, bulges, collapses) and vertex slides are
//!   surface isotopies and preserve every cycle's homology class;
//! * torus twists shear the whole grid; a twist extends to a homeomorphism
//!   of the 3-sphere isotopic to the identity and acts on classes by
//!   `(p,q) -> (p, q±p)` or `(p±q, q)`;
//! * disc slides reroute one edge so that the difference cycle of the old
//!   and new routes is a meridian or longitude class; that cycle bounds a
//!   disc inside (or outside) the solid torus whose interior misses the
//!   torus, hence the rest of the graph, so the slide is an isotopy.
//!
//! A configuration whose image misses a full meridian or longitude circle of
//! the grid lies in an annulus that caps off to a sphere, so reaching one
//! certifies triviality.

use crate::error::Error;
use crate::geom::{rat, Point};
use crate::graph::{TorusGraph, TorusKind, TorusPoint};
use crate::planarity::AbstractGraph;
use rustc_hash::{FxHashMap, FxHashSet};
use std::collections::VecDeque;
use thiserror::Error as ThisError;

/// A grid site `(x, y)` with coordinates modulo the grid size.
pub type Site = (u8, u8);

/// Unit step directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    E,
    N,
    W,
    S,
}

pub const DIRS: [Dir; 4] = [Dir::E, Dir::N, Dir::W, Dir::S];

impl Dir {
    pub fn delta(self) -> (i64, i64) {
        match self {
            Dir::E => (1, 0),
            Dir::N => (0, 1),
            Dir::W => (-1, 0),
            Dir::S => (0, -1),
        }
    }
    pub fn opposite(self) -> Dir {
        match self {
            Dir::E => Dir::W,
            Dir::N => Dir::S,
            Dir::W => Dir::E,
            Dir::S => Dir::N,
        }
    }
    pub fn perp(self) -> [Dir; 2] {
        match self {
            Dir::E | Dir::W => [Dir::N, Dir::S],
            Dir::N | Dir::S => [Dir::E, Dir::W],
        }
    }
    fn code(self) -> u8 {
        match self {
            Dir::E => 0,
            Dir::N => 1,
            Dir::W => 2,
            Dir::S => 3,
        }
    }
}

fn step(site: Site, d: Dir, n: u8) -> Site {
    let (dx, dy) = d.delta();
    let m = n as i64;
    (
        ((site.0 as i64 + dx).rem_euclid(m)) as u8,
        ((site.1 as i64 + dy).rem_euclid(m)) as u8,
    )
}

/// An edge drawn as a lattice path: the step sequence from the tail vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridPath {
    pub steps: Vec<Dir>,
}

impl GridPath {
    /// Net displacement in grid units (a lift, not reduced modulo n).
    pub fn displacement(&self) -> (i64, i64) {
        let mut d = (0, 0);
        for s in &self.steps {
            let (dx, dy) = s.delta();
            d = (d.0 + dx, d.1 + dy);
        }
        d
    }

    /// Sites visited, starting from `start`.
    pub fn sites(&self, start: Site, n: u8) -> Vec<Site> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = start;
        out.push(cur);
        for &d in &self.steps {
            cur = step(cur, d, n);
            out.push(cur);
        }
        out
    }
}

/// A multigraph with compact integer labels, the enumerator's input shape.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbstractMultigraph {
    pub vertex_count: usize,
    /// Endpoint pairs, loops permitted.
    pub edges: Vec<(usize, usize)>,
}

impl AbstractMultigraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Translate to the id-labelled abstract graph used by the planarity
    /// module: vertices `v00..`, edges `e00..`.
    pub fn to_abstract_graph(&self) -> AbstractGraph {
        let mut g = AbstractGraph::new();
        for v in 0..self.vertex_count {
            g.add_vertex(format!("v{v:02}").as_str().into());
        }
        for (i, (a, b)) in self.edges.iter().enumerate() {
            g.add_edge(
                format!("e{i:02}").as_str().into(),
                format!("v{a:02}").as_str().into(),
                format!("v{b:02}").as_str().into(),
            );
        }
        g
    }
}

/// A drawing of an abstract multigraph on the n-by-n torus grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridEmbedding {
    pub n: u8,
    pub graph: AbstractMultigraph,
    pub vertex_sites: Vec<Site>,
    pub paths: Vec<GridPath>,
}

/// How a grid site is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiteUse {
    Free,
    Vertex(u16),
    Interior(u16),
}

/// Site and segment occupancy of a valid embedding.
pub struct Occupancy {
    pub n: u8,
    pub sites: Vec<SiteUse>,
    pub segs: Vec<bool>,
}

impl Occupancy {
    pub fn site(&self, s: Site) -> SiteUse {
        self.sites[site_index(s, self.n)]
    }
    pub fn seg_used(&self, from: Site, d: Dir) -> bool {
        self.segs[seg_index(from, d, self.n)]
    }
}

fn site_index(s: Site, n: u8) -> usize {
    s.1 as usize * n as usize + s.0 as usize
}

/// Undirected segment id: horizontal segments first, then vertical.
fn seg_index(from: Site, d: Dir, n: u8) -> usize {
    let nn = n as usize * n as usize;
    match d {
        Dir::E => site_index(from, n),
        Dir::W => site_index(step(from, Dir::W, n), n),
        Dir::N => nn + site_index(from, n),
        Dir::S => nn + site_index(step(from, Dir::S, n), n),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum GridError {
    #[error("not a valid grid embedding: {0}")]
    Invalid(&'static str),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(&'static str),
}

type ApplyResult = Result<GridEmbedding, &'static str>;

impl GridEmbedding {
    /// Check all validity invariants and return the occupancy tables.
    pub fn occupancy(&self) -> Result<Occupancy, &'static str> {
        let n = self.n;
        let nn = n as usize * n as usize;
        if self.graph.vertex_count != self.vertex_sites.len()
            || self.graph.edges.len() != self.paths.len()
        {
            return Err("field lengths disagree");
        }
        let mut sites = vec![SiteUse::Free; nn];
        let mut segs = vec![false; 2 * nn];
        for (vi, &s) in self.vertex_sites.iter().enumerate() {
            if s.0 >= n || s.1 >= n {
                return Err("vertex off grid");
            }
            let idx = site_index(s, n);
            if sites[idx] != SiteUse::Free {
                return Err("two vertices share a site");
            }
            sites[idx] = SiteUse::Vertex(vi as u16);
        }
        for (ei, path) in self.paths.iter().enumerate() {
            let (u, v) = self.graph.edges[ei];
            if path.steps.is_empty() {
                return Err("empty edge path");
            }
            let visited = path.sites(self.vertex_sites[u], n);
            if *visited.last().unwrap() != self.vertex_sites[v] {
                return Err("edge path misses its head vertex");
            }
            let mut cur = self.vertex_sites[u];
            for &d in &path.steps {
                let si = seg_index(cur, d, n);
                if segs[si] {
                    return Err("segment used twice");
                }
                segs[si] = true;
                cur = step(cur, d, n);
            }
            for &s in &visited[1..visited.len() - 1] {
                let idx = site_index(s, n);
                if sites[idx] != SiteUse::Free {
                    return Err("interior site clash");
                }
                sites[idx] = SiteUse::Interior(ei as u16);
            }
        }
        Ok(Occupancy { n, sites, segs })
    }

    pub fn is_valid(&self) -> bool {
        self.occupancy().is_ok()
    }

    /// The wrap vector of an edge: how many times the path winds around
    /// each direction of the torus, relative to the fundamental-domain
    /// positions of its endpoints.
    pub fn edge_wrap(&self, ei: usize) -> (i64, i64) {
        let (u, v) = self.graph.edges[ei];
        let su = self.vertex_sites[u];
        let sv = self.vertex_sites[v];
        let (dx, dy) = self.paths[ei].displacement();
        let n = self.n as i64;
        debug_assert_eq!((su.0 as i64 + dx - sv.0 as i64).rem_euclid(n), 0);
        debug_assert_eq!((su.1 as i64 + dy - sv.1 as i64).rem_euclid(n), 0);
        (
            (su.0 as i64 + dx - sv.0 as i64) / n,
            (su.1 as i64 + dy - sv.1 as i64) / n,
        )
    }

    /// Lossless conversion to a torus graph with denominator-n coordinates.
    pub fn to_torus_graph(&self) -> Result<TorusGraph, Error> {
        let n = self.n as i64;
        let mut g = TorusGraph::new(TorusKind::Standard);
        for (vi, &(x, y)) in self.vertex_sites.iter().enumerate() {
            let p = TorusPoint::new(rat(x as i64, n), rat(y as i64, n))
                .expect("grid sites lie in the fundamental domain");
            g.add_vertex(format!("v{vi:02}").as_str().into(), p)?;
        }
        for (ei, path) in self.paths.iter().enumerate() {
            let (u, v) = self.graph.edges[ei];
            let su = self.vertex_sites[u];
            let mut cur = (su.0 as i64, su.1 as i64);
            let mut polyline = vec![Point::new(rat(cur.0, n), rat(cur.1, n))];
            for &d in &path.steps {
                let (dx, dy) = d.delta();
                cur = (cur.0 + dx, cur.1 + dy);
                polyline.push(Point::new(rat(cur.0, n), rat(cur.1, n)));
            }
            g.add_edge(
                format!("e{ei:02}").as_str().into(),
                format!("v{u:02}").as_str().into(),
                format!("v{v:02}").as_str().into(),
                polyline,
            )?;
        }
        Ok(g)
    }

    /// Canonical byte encoding, minimized over all grid translations.
    /// Translation moves only the vertex sites; step sequences are
    /// translation-invariant.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let n = self.n;
        let mut best_sites: Option<Vec<u8>> = None;
        for tx in 0..n {
            for ty in 0..n {
                let mut sites = Vec::with_capacity(self.vertex_sites.len() * 2);
                for &(x, y) in &self.vertex_sites {
                    sites.push((x + tx) % n);
                    sites.push((y + ty) % n);
                }
                if best_sites.as_ref().map_or(true, |b| sites < *b) {
                    best_sites = Some(sites);
                }
            }
        }
        let mut out = best_sites.expect("at least one translate");
        for p in &self.paths {
            out.push(p.steps.len() as u8);
            out.extend(p.steps.iter().map(|d| d.code()));
        }
        out
    }

    /// Whether the image misses some meridian circle `{x=c}` or longitude
    /// circle `{y=c}` of the grid, at integer or half-integer position.
    /// Such an image lies in an annulus whose boundary class bounds a disc
    /// on one side of the torus, so the configuration is trivial.
    pub fn is_reduced(&self) -> bool {
        let occ = match self.occupancy() {
            Ok(o) => o,
            Err(_) => return false,
        };
        let n = self.n;
        'col: for c in 0..n {
            for y in 0..n {
                if occ.site((c, y)) != SiteUse::Free {
                    continue 'col;
                }
            }
            return true;
        }
        'row: for c in 0..n {
            for x in 0..n {
                if occ.site((x, c)) != SiteUse::Free {
                    continue 'row;
                }
            }
            return true;
        }
        'colx: for c in 0..n {
            for y in 0..n {
                if occ.seg_used((c, y), Dir::E) {
                    continue 'colx;
                }
            }
            return true;
        }
        'rowx: for c in 0..n {
            for x in 0..n {
                if occ.seg_used((x, c), Dir::N) {
                    continue 'rowx;
                }
            }
            return true;
        }
        false
    }
}

/// A move on a grid embedding. Cell and vertex slides are surface isotopies
/// and preserve all cycle classes. Torus twists and disc slides realize
/// ambient isotopies of the 3-sphere that keep the graph on the torus but
/// change homology classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    CellSlide(CellSlide),
    VertexSlide(VertexSlide),
    /// Global shear: meridian twist `(x,y) -> (x, y + sign*x)` or longitude
    /// twist `(x,y) -> (x + sign*y, y)`.
    TorusTwist { meridian: bool, sign: i8 },
    /// Reroute one edge; the difference cycle of old and new routes must be
    /// a meridian or longitude class.
    DiscSlide { edge: usize, path: GridPath },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellSlide {
    /// Swap two perpendicular consecutive steps, moving the corner site
    /// across its cell.
    CornerFlip { edge: usize, at: usize },
    /// Replace one step by a three-step detour around an empty cell.
    Expand { edge: usize, at: usize, left: bool },
    /// Collapse a three-step U-turn into one step.
    Contract { edge: usize, at: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexSlide {
    /// Stretch the edge at a degree-1 vertex onto an adjacent free site.
    LeafExtend { vertex: usize, dir: Dir },
    /// Retract the edge at a degree-1 vertex by one step.
    LeafRetract { vertex: usize },
    /// Slide a degree-2 vertex one step along its curve (or rotate the
    /// basepoint of a lone loop). The image is unchanged.
    MarkSlide { vertex: usize, forward: bool },
}

/// Apply a move, checking applicability. The result is a valid embedding of
/// the same abstract multigraph.
pub fn apply_move(e: &GridEmbedding, m: &Move) -> Result<GridEmbedding, GridError> {
    let occ = e.occupancy().map_err(GridError::Invalid)?;
    let applied = match m {
        Move::CellSlide(cs) => apply_cell_slide(e, &occ, cs),
        Move::VertexSlide(vs) => apply_vertex_slide(e, &occ, vs),
        Move::TorusTwist { meridian, sign } => apply_twist(e, *meridian, *sign),
        Move::DiscSlide { edge, path } => apply_disc_slide(e, &occ, *edge, path),
    };
    let next = applied.map_err(GridError::MoveNotApplicable)?;
    debug_assert!(next.is_valid());
    Ok(next)
}

fn apply_cell_slide(e: &GridEmbedding, occ: &Occupancy, cs: &CellSlide) -> ApplyResult {
    let n = e.n;
    match *cs {
        CellSlide::CornerFlip { edge, at } => {
            let path = &e.paths[edge];
            if at == 0 || at >= path.steps.len() {
                return Err("corner index out of range");
            }
            let d0 = path.steps[at - 1];
            let d1 = path.steps[at];
            if d0 == d1 || d0 == d1.opposite() {
                return Err("not a corner");
            }
            let start = e.vertex_sites[e.graph.edges[edge].0];
            let sites = path.sites(start, n);
            let prev = sites[at - 1];
            let new_corner = step(prev, d1, n);
            if occ.site(new_corner) != SiteUse::Free {
                return Err("target corner occupied");
            }
            if occ.seg_used(prev, d1) || occ.seg_used(new_corner, d0) {
                return Err("target segments occupied");
            }
            let mut out = e.clone();
            out.paths[edge].steps.swap(at - 1, at);
            Ok(out)
        }
        CellSlide::Expand { edge, at, left } => {
            let path = &e.paths[edge];
            if at >= path.steps.len() {
                return Err("segment index out of range");
            }
            let d = path.steps[at];
            let p = if left { d.perp()[0] } else { d.perp()[1] };
            let start = e.vertex_sites[e.graph.edges[edge].0];
            let sites = path.sites(start, n);
            let s0 = sites[at];
            let s1 = sites[at + 1];
            let a = step(s0, p, n);
            let b = step(s1, p, n);
            if a == b || occ.site(a) != SiteUse::Free || occ.site(b) != SiteUse::Free {
                return Err("bulge sites occupied");
            }
            if occ.seg_used(s0, p) || occ.seg_used(a, d) || occ.seg_used(b, p.opposite()) {
                return Err("bulge segments occupied");
            }
            let mut out = e.clone();
            out.paths[edge].steps.splice(at..=at, [p, d, p.opposite()]);
            Ok(out)
        }
        CellSlide::Contract { edge, at } => {
            let path = &e.paths[edge];
            if at + 3 > path.steps.len() {
                return Err("u-turn index out of range");
            }
            let p = path.steps[at];
            let d = path.steps[at + 1];
            let q = path.steps[at + 2];
            if q != p.opposite() || d == p || d == p.opposite() {
                return Err("not a u-turn");
            }
            let start = e.vertex_sites[e.graph.edges[edge].0];
            let sites = path.sites(start, n);
            if occ.seg_used(sites[at], d) {
                return Err("shortcut segment occupied");
            }
            let mut out = e.clone();
            out.paths[edge].steps.splice(at..at + 3, [d]);
            Ok(out)
        }
    }
}

fn incident_edge_ends(g: &AbstractMultigraph, v: usize) -> Vec<(usize, bool)> {
    // (edge index, end is tail); loops contribute both ends.
    let mut out = Vec::new();
    for (ei, &(a, b)) in g.edges.iter().enumerate() {
        if a == v {
            out.push((ei, true));
        }
        if b == v {
            out.push((ei, false));
        }
    }
    out
}

fn apply_vertex_slide(e: &GridEmbedding, occ: &Occupancy, vs: &VertexSlide) -> ApplyResult {
    let n = e.n;
    match *vs {
        VertexSlide::LeafExtend { vertex, dir } => {
            let ends = incident_edge_ends(&e.graph, vertex);
            if ends.len() != 1 {
                return Err("not a degree-1 vertex");
            }
            let (ei, is_tail) = ends[0];
            let s = e.vertex_sites[vertex];
            let target = step(s, dir, n);
            if occ.site(target) != SiteUse::Free || occ.seg_used(s, dir) {
                return Err("target occupied");
            }
            let mut out = e.clone();
            out.vertex_sites[vertex] = target;
            if is_tail {
                out.paths[ei].steps.insert(0, dir.opposite());
            } else {
                out.paths[ei].steps.push(dir);
            }
            Ok(out)
        }
        VertexSlide::LeafRetract { vertex } => {
            let ends = incident_edge_ends(&e.graph, vertex);
            if ends.len() != 1 {
                return Err("not a degree-1 vertex");
            }
            let (ei, is_tail) = ends[0];
            if e.paths[ei].steps.len() < 2 {
                return Err("edge too short to retract");
            }
            let mut out = e.clone();
            let s = e.vertex_sites[vertex];
            if is_tail {
                let d = out.paths[ei].steps.remove(0);
                out.vertex_sites[vertex] = step(s, d, n);
            } else {
                let d = out.paths[ei].steps.pop().unwrap();
                out.vertex_sites[vertex] = step(s, d.opposite(), n);
            }
            Ok(out)
        }
        VertexSlide::MarkSlide { vertex, forward } => {
            let ends = incident_edge_ends(&e.graph, vertex);
            if ends.len() != 2 {
                return Err("not a degree-2 vertex");
            }
            let mut out = e.clone();
            let s = e.vertex_sites[vertex];
            if ends[0].0 == ends[1].0 {
                // Lone loop: rotate the basepoint along the loop.
                let ei = ends[0].0;
                let steps = &mut out.paths[ei].steps;
                if steps.len() < 2 {
                    return Err("loop too short");
                }
                if forward {
                    let d = steps.remove(0);
                    steps.push(d);
                    out.vertex_sites[vertex] = step(s, d, n);
                } else {
                    let d = steps.pop().unwrap();
                    steps.insert(0, d);
                    out.vertex_sites[vertex] = step(s, d.opposite(), n);
                }
                return Ok(out);
            }
            let (into, other) = if forward {
                (ends[1], ends[0])
            } else {
                (ends[0], ends[1])
            };
            let (bi, b_tail) = into;
            let (ai, a_tail) = other;
            if e.paths[bi].steps.len() < 2 {
                return Err("target edge too short");
            }
            // The vertex moves one step along edge b's curve; edge a gains
            // that step at its end. The image is unchanged.
            let d = if b_tail {
                out.paths[bi].steps.remove(0)
            } else {
                out.paths[bi].steps.pop().unwrap().opposite()
            };
            out.vertex_sites[vertex] = step(s, d, n);
            if a_tail {
                out.paths[ai].steps.insert(0, d.opposite());
            } else {
                out.paths[ai].steps.push(d);
            }
            Ok(out)
        }
    }
}

fn apply_twist(e: &GridEmbedding, meridian: bool, sign: i8) -> ApplyResult {
    if sign != 1 && sign != -1 {
        return Err("twist sign must be 1 or -1");
    }
    let n = e.n;
    let m = n as i64;
    let shear = |(x, y): Site| -> Site {
        if meridian {
            (x, ((y as i64 + sign as i64 * x as i64).rem_euclid(m)) as u8)
        } else {
            (((x as i64 + sign as i64 * y as i64).rem_euclid(m)) as u8, y)
        }
    };
    // Each horizontal (resp. vertical) step picks up one vertical (resp.
    // horizontal) step under the shear.
    let ins = |d: Dir| -> Option<Dir> {
        match (meridian, d) {
            (true, Dir::E) => Some(if sign > 0 { Dir::N } else { Dir::S }),
            (true, Dir::W) => Some(if sign > 0 { Dir::S } else { Dir::N }),
            (false, Dir::N) => Some(if sign > 0 { Dir::E } else { Dir::W }),
            (false, Dir::S) => Some(if sign > 0 { Dir::W } else { Dir::E }),
            _ => None,
        }
    };
    let mut out = e.clone();
    out.vertex_sites = e.vertex_sites.iter().map(|&s| shear(s)).collect();
    for (ei, path) in e.paths.iter().enumerate() {
        let mut steps = Vec::with_capacity(path.steps.len() * 2);
        for &d in &path.steps {
            steps.push(d);
            if let Some(extra) = ins(d) {
                steps.push(extra);
            }
        }
        out.paths[ei] = GridPath { steps };
    }
    if !out.is_valid() {
        return Err("sheared image is not an embedding");
    }
    Ok(out)
}

fn apply_disc_slide(
    e: &GridEmbedding,
    occ: &Occupancy,
    edge: usize,
    new_path: &GridPath,
) -> ApplyResult {
    let n = e.n;
    if edge >= e.paths.len() {
        return Err("edge index out of range");
    }
    if new_path.steps.is_empty() {
        return Err("empty path");
    }
    let (u, v) = e.graph.edges[edge];
    let su = e.vertex_sites[u];
    let sv = e.vertex_sites[v];
    let new_sites = new_path.sites(su, n);
    if *new_sites.last().unwrap() != sv {
        return Err("path does not reach the head vertex");
    }

    // The difference cycle of the two routes must wind exactly once around
    // one direction of the torus.
    let (odx, ody) = e.paths[edge].displacement();
    let (ndx, ndy) = new_path.displacement();
    if (odx - ndx).rem_euclid(n as i64) != 0 || (ody - ndy).rem_euclid(n as i64) != 0 {
        return Err("route difference is not closed");
    }
    let wx = (odx - ndx) / n as i64;
    let wy = (ody - ndy) / n as i64;
    if !matches!((wx.abs(), wy.abs()), (1, 0) | (0, 1)) {
        return Err("route difference is not a meridian or longitude");
    }

    let old_sites: FxHashSet<Site> = e.paths[edge].sites(su, n).into_iter().collect();
    let mut seen: FxHashSet<Site> = FxHashSet::default();
    for &s in &new_sites[1..new_sites.len() - 1] {
        if occ.site(s) != SiteUse::Free {
            return Err("new route crosses the graph");
        }
        if old_sites.contains(&s) {
            return Err("new route touches the old route");
        }
        if !seen.insert(s) {
            return Err("new route is not simple");
        }
    }

    let mut old_segs: FxHashSet<usize> = FxHashSet::default();
    {
        let mut cur = su;
        for &d in &e.paths[edge].steps {
            old_segs.insert(seg_index(cur, d, n));
            cur = step(cur, d, n);
        }
    }
    let mut cur = su;
    let mut new_segs: FxHashSet<usize> = FxHashSet::default();
    for &d in &new_path.steps {
        let si = seg_index(cur, d, n);
        if old_segs.contains(&si) {
            return Err("new route shares a segment with the old route");
        }
        if occ.segs[si] {
            return Err("new route crosses another edge");
        }
        if !new_segs.insert(si) {
            return Err("new route repeats a segment");
        }
        cur = step(cur, d, n);
    }

    // A rerouted loop shares only its basepoint with the old loop, so the
    // union is a wedge, not an embedded cycle. Restricting the target to a
    // small free rectangle keeps the slide an isotopy: the contracted loop
    // passes through the solid torus and lands around cells that contain
    // nothing.
    if u == v && !is_rectangle_loop(new_path) {
        return Err("loop reroutes must target a free rectangle");
    }

    let mut out = e.clone();
    out.paths[edge] = new_path.clone();
    if !out.is_valid() {
        return Err("result is not an embedding");
    }
    Ok(out)
}

/// Whether a closed path traces an axis-aligned rectangle: four maximal
/// straight runs in alternating perpendicular directions.
fn is_rectangle_loop(p: &GridPath) -> bool {
    let (dx, dy) = p.displacement();
    if dx != 0 || dy != 0 {
        return false;
    }
    let mut runs: Vec<Dir> = Vec::new();
    for &d in &p.steps {
        if runs.last() != Some(&d) {
            runs.push(d);
        }
    }
    runs.len() == 4
        && runs[0] != runs[1]
        && runs[1] != runs[0].opposite()
        && runs[2] == runs[0].opposite()
        && runs[3] == runs[1].opposite()
}

/// All applicable moves from `e`, in a fixed deterministic order, paired
/// with their results.
pub fn successors(e: &GridEmbedding) -> Vec<(Move, GridEmbedding)> {
    let mut out = Vec::new();
    let occ = match e.occupancy() {
        Ok(o) => o,
        Err(_) => return out,
    };
    for ei in 0..e.paths.len() {
        let len = e.paths[ei].steps.len();
        for at in 0..len {
            if at + 3 <= len {
                let cs = CellSlide::Contract { edge: ei, at };
                if let Ok(next) = apply_cell_slide(e, &occ, &cs) {
                    out.push((Move::CellSlide(cs), next));
                }
            }
            if at >= 1 {
                let cs = CellSlide::CornerFlip { edge: ei, at };
                if let Ok(next) = apply_cell_slide(e, &occ, &cs) {
                    out.push((Move::CellSlide(cs), next));
                }
            }
            for left in [true, false] {
                let cs = CellSlide::Expand { edge: ei, at, left };
                if let Ok(next) = apply_cell_slide(e, &occ, &cs) {
                    out.push((Move::CellSlide(cs), next));
                }
            }
        }
    }
    for vi in 0..e.vertex_sites.len() {
        let vs = VertexSlide::LeafRetract { vertex: vi };
        if let Ok(next) = apply_vertex_slide(e, &occ, &vs) {
            out.push((Move::VertexSlide(vs), next));
        }
        for dir in DIRS {
            let vs = VertexSlide::LeafExtend { vertex: vi, dir };
            if let Ok(next) = apply_vertex_slide(e, &occ, &vs) {
                out.push((Move::VertexSlide(vs), next));
            }
        }
        for forward in [true, false] {
            let vs = VertexSlide::MarkSlide {
                vertex: vi,
                forward,
            };
            if let Ok(next) = apply_vertex_slide(e, &occ, &vs) {
                out.push((Move::VertexSlide(vs), next));
            }
        }
    }
    for meridian in [true, false] {
        for sign in [1i8, -1] {
            if let Ok(next) = apply_twist(e, meridian, sign) {
                out.push((Move::TorusTwist { meridian, sign }, next));
            }
        }
    }
    for ei in 0..e.paths.len() {
        for path in disc_slide_candidates(e, &occ, ei) {
            if let Ok(next) = apply_disc_slide(e, &occ, ei, &path) {
                out.push((Move::DiscSlide { edge: ei, path }, next));
            }
        }
    }
    out
}

/// Candidate reroutes for `edge` whose difference cycle is a meridian or
/// longitude class: free rectangles at the basepoint for loops, bounded
/// path searches toward the four unit wraps otherwise.
fn disc_slide_candidates(e: &GridEmbedding, occ: &Occupancy, edge: usize) -> Vec<GridPath> {
    let n = e.n;
    let (u, v) = e.graph.edges[edge];
    let mut out = Vec::new();
    if u == v {
        let (wx, wy) = e.edge_wrap(edge);
        if !matches!((wx.abs(), wy.abs()), (1, 0) | (0, 1)) {
            return out;
        }
        let su = e.vertex_sites[u];
        let old_sites: FxHashSet<Site> = e.paths[edge].sites(su, n).into_iter().collect();
        for (w, h) in [(1u8, 1u8), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)] {
            for ox in 0..=w {
                for oy in 0..=h {
                    if ox != 0 && ox != w && oy != 0 && oy != h {
                        continue;
                    }
                    if let Some(path) = rectangle_loop(e, occ, &old_sites, su, w, h, ox, oy) {
                        out.push(path);
                    }
                }
            }
        }
    } else {
        let (odx, ody) = e.paths[edge].displacement();
        for (wxt, wyt) in [(0i64, 1i64), (0, -1), (1, 0), (-1, 0)] {
            let target = (odx - wxt * n as i64, ody - wyt * n as i64);
            search_paths(e, occ, edge, target, &mut out);
        }
    }
    out
}

/// The boundary cycle of a w-by-h rectangle of cells whose walk starts at
/// the loop basepoint, if every non-base boundary site and every boundary
/// segment is available. `ox`, `oy` locate the basepoint on the boundary,
/// offset from the rectangle's lower-left corner.
fn rectangle_loop(
    e: &GridEmbedding,
    occ: &Occupancy,
    old_sites: &FxHashSet<Site>,
    base: Site,
    w: u8,
    h: u8,
    ox: u8,
    oy: u8,
) -> Option<GridPath> {
    let n = e.n;
    if w >= n || h >= n {
        return None;
    }
    let m = n as i64;
    let corner = (
        ((base.0 as i64 - ox as i64).rem_euclid(m)) as u8,
        ((base.1 as i64 - oy as i64).rem_euclid(m)) as u8,
    );
    let mut corner_steps = Vec::new();
    corner_steps.extend(std::iter::repeat(Dir::E).take(w as usize));
    corner_steps.extend(std::iter::repeat(Dir::N).take(h as usize));
    corner_steps.extend(std::iter::repeat(Dir::W).take(w as usize));
    corner_steps.extend(std::iter::repeat(Dir::S).take(h as usize));
    let all = GridPath {
        steps: corner_steps.clone(),
    };
    let sites = all.sites(corner, n);
    let pos = sites[..sites.len() - 1].iter().position(|&s| s == base)?;
    let mut steps = corner_steps[pos..].to_vec();
    steps.extend_from_slice(&corner_steps[..pos]);
    let path = GridPath { steps };

    let psites = path.sites(base, n);
    let mut distinct: FxHashSet<Site> = FxHashSet::default();
    for &s in &psites[..psites.len() - 1] {
        if !distinct.insert(s) {
            return None; // the rectangle wraps onto itself on a small grid
        }
    }
    for &s in &psites[1..psites.len() - 1] {
        if occ.site(s) != SiteUse::Free || old_sites.contains(&s) {
            return None;
        }
    }
    let mut cur = base;
    for &d in &path.steps {
        if occ.seg_used(cur, d) {
            return None;
        }
        cur = step(cur, d, n);
    }
    Some(path)
}

/// Bounded search for simple free routes from the edge's tail to its head
/// with the exact lift displacement `target`.
fn search_paths(
    e: &GridEmbedding,
    occ: &Occupancy,
    edge: usize,
    target: (i64, i64),
    out: &mut Vec<GridPath>,
) {
    let n = e.n;
    let (u, v) = e.graph.edges[edge];
    let su = e.vertex_sites[u];
    let sv = e.vertex_sites[v];
    let budget = (target.0.abs() + target.1.abs()) as usize + 4;
    if budget > 4 * n as usize {
        return;
    }
    let old_sites: FxHashSet<Site> = e.paths[edge].sites(su, n).into_iter().collect();

    struct Search<'a> {
        e: &'a GridEmbedding,
        occ: &'a Occupancy,
        old_sites: &'a FxHashSet<Site>,
        sv: Site,
        target: (i64, i64),
    }

    fn rec(
        s: &Search,
        cur: Site,
        acc: (i64, i64),
        budget: usize,
        steps: &mut Vec<Dir>,
        visited: &mut FxHashSet<Site>,
        out: &mut Vec<GridPath>,
    ) {
        if acc == s.target && !steps.is_empty() {
            out.push(GridPath {
                steps: steps.clone(),
            });
            return;
        }
        let remaining = (s.target.0 - acc.0).abs() + (s.target.1 - acc.1).abs();
        if remaining as usize > budget || budget == 0 {
            return;
        }
        let n = s.e.n;
        for d in DIRS {
            if s.occ.seg_used(cur, d) {
                continue;
            }
            let next = step(cur, d, n);
            let (dx, dy) = d.delta();
            let nacc = (acc.0 + dx, acc.1 + dy);
            if nacc == s.target {
                if next != s.sv {
                    continue;
                }
            } else if s.occ.site(next) != SiteUse::Free
                || s.old_sites.contains(&next)
                || visited.contains(&next)
            {
                continue;
            }
            steps.push(d);
            visited.insert(next);
            rec(s, next, nacc, budget - 1, steps, visited, out);
            visited.remove(&next);
            steps.pop();
        }
    }

    let search = Search {
        e,
        occ,
        old_sites: &old_sites,
        sv,
        target,
    };
    let mut steps = Vec::new();
    let mut visited: FxHashSet<Site> = FxHashSet::default();
    visited.insert(su);
    rec(
        &search,
        su,
        (0, 0),
        budget,
        &mut steps,
        &mut visited,
        out,
    );
}

/// Outcome of the reduction search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// A configuration missing a meridian or longitude circle was reached:
    /// a sound certificate of triviality.
    Reduced,
    /// No such configuration was reached before the budget ran out (or the
    /// whole component was explored); inconclusive.
    Exhausted,
}

/// Statistics of one reduction search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReductionStats {
    pub states_visited: usize,
    pub component_complete: bool,
}

/// Breadth-first search over moves from `e`, with a canonical-form visited
/// set, until a reduced configuration is reached or `budget` states have
/// been visited.
pub fn reduction_oracle(e: &GridEmbedding, budget: usize) -> (ReductionOutcome, ReductionStats) {
    assert!(budget >= 1);
    let mut stats = ReductionStats::default();
    stats.states_visited = 1;
    if e.is_reduced() {
        return (ReductionOutcome::Reduced, stats);
    }
    let mut visited: FxHashSet<Vec<u8>> = FxHashSet::default();
    let mut queue: VecDeque<GridEmbedding> = VecDeque::new();
    visited.insert(e.canonical_bytes());
    queue.push_back(e.clone());

    while let Some(state) = queue.pop_front() {
        for (_, next) in successors(&state) {
            let key = next.canonical_bytes();
            if visited.contains(&key) {
                continue;
            }
            if stats.states_visited >= budget {
                return (ReductionOutcome::Exhausted, stats);
            }
            stats.states_visited += 1;
            if next.is_reduced() {
                return (ReductionOutcome::Reduced, stats);
            }
            visited.insert(key);
            queue.push_back(next);
        }
    }
    stats.component_complete = true;
    (ReductionOutcome::Exhausted, stats)
}

/// Signal that embedding enumeration stopped at its limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ThisError)]
#[error("embedding enumeration truncated at limit {limit}")]
pub struct EnumTruncated {
    pub limit: usize,
}

/// Enumerate every valid grid embedding of `g` on the n-by-n torus grid,
/// deduplicated under grid translations by anchoring the first vertex at
/// the origin. Deterministic order; errors with a truncation signal if more
/// than `limit` embeddings exist.
pub fn enumerate_grid_embeddings(
    g: &AbstractMultigraph,
    n: u8,
    limit: usize,
) -> Result<Vec<GridEmbedding>, EnumTruncated> {
    let mut out = Vec::new();
    if visit_grid_embeddings(g, n, limit, &mut |e| out.push(e.clone())) {
        Ok(out)
    } else {
        Err(EnumTruncated { limit })
    }
}

/// Visitor-based enumeration; returns false when truncated at `limit`.
pub fn visit_grid_embeddings(
    g: &AbstractMultigraph,
    n: u8,
    limit: usize,
    visit: &mut dyn FnMut(&GridEmbedding),
) -> bool {
    assert!(n >= 2, "grid size must be at least 2");
    let k = g.vertex_count;
    if k == 0 {
        return true;
    }

    // Order edges so each edge has a placed endpoint when routed; remember
    // the root of every component.
    let mut edge_order: Vec<(usize, bool)> = Vec::new();
    let mut comp_roots: Vec<usize> = Vec::new();
    {
        let mut placed = vec![false; k];
        let mut edge_used = vec![false; g.edges.len()];
        for root in 0..k {
            if placed[root] {
                continue;
            }
            comp_roots.push(root);
            placed[root] = true;
            loop {
                let mut took = None;
                for (ei, &(a, b)) in g.edges.iter().enumerate() {
                    if edge_used[ei] {
                        continue;
                    }
                    if placed[a] {
                        took = Some((ei, false));
                        break;
                    }
                    if placed[b] {
                        took = Some((ei, true));
                        break;
                    }
                }
                match took {
                    None => break,
                    Some((ei, rev)) => {
                        edge_used[ei] = true;
                        let (a, b) = g.edges[ei];
                        let head = if rev { a } else { b };
                        placed[head] = true;
                        edge_order.push((ei, rev));
                    }
                }
            }
        }
    }

    let nn = n as usize * n as usize;
    let mut state = EnumState {
        g,
        n,
        limit,
        edge_order,
        comp_roots,
        emitted: 0,
        truncated: false,
        sites: vec![SiteUse::Free; nn],
        segs: vec![false; 2 * nn],
        vertex_sites: vec![None; k],
        paths: vec![None; g.edges.len()],
    };
    state.place_component(0, visit);
    !state.truncated
}

struct EnumState<'a> {
    g: &'a AbstractMultigraph,
    n: u8,
    limit: usize,
    edge_order: Vec<(usize, bool)>,
    comp_roots: Vec<usize>,
    emitted: usize,
    truncated: bool,
    sites: Vec<SiteUse>,
    segs: Vec<bool>,
    vertex_sites: Vec<Option<Site>>,
    paths: Vec<Option<GridPath>>,
}

impl<'a> EnumState<'a> {
    fn place_component(&mut self, ci: usize, visit: &mut dyn FnMut(&GridEmbedding)) {
        if self.truncated {
            return;
        }
        if ci == self.comp_roots.len() {
            self.route_edge(0, visit);
            return;
        }
        let root = self.comp_roots[ci];
        let n = self.n;
        let positions: Vec<Site> = if ci == 0 {
            vec![(0, 0)]
        } else {
            let mut v = Vec::with_capacity(n as usize * n as usize);
            for y in 0..n {
                for x in 0..n {
                    v.push((x, y));
                }
            }
            v
        };
        for pos in positions {
            if self.truncated {
                return;
            }
            let idx = site_index(pos, n);
            if self.sites[idx] != SiteUse::Free {
                continue;
            }
            self.sites[idx] = SiteUse::Vertex(root as u16);
            self.vertex_sites[root] = Some(pos);
            self.place_component(ci + 1, visit);
            self.vertex_sites[root] = None;
            self.sites[idx] = SiteUse::Free;
        }
    }

    fn route_edge(&mut self, oi: usize, visit: &mut dyn FnMut(&GridEmbedding)) {
        if self.truncated {
            return;
        }
        if oi == self.edge_order.len() {
            if self.emitted >= self.limit {
                self.truncated = true;
                return;
            }
            self.emitted += 1;
            let e = GridEmbedding {
                n: self.n,
                graph: self.g.clone(),
                vertex_sites: self.vertex_sites.iter().map(|s| s.unwrap()).collect(),
                paths: self
                    .paths
                    .iter()
                    .map(|p| p.as_ref().unwrap().clone())
                    .collect(),
            };
            debug_assert!(e.is_valid());
            visit(&e);
            return;
        }
        let (ei, rev) = self.edge_order[oi];
        let (a, b) = self.g.edges[ei];
        let (tail, head) = if rev { (b, a) } else { (a, b) };
        let start = self.vertex_sites[tail].expect("tail placed before routing");
        let mut steps = Vec::new();
        self.extend_route(oi, ei, rev, head, start, &mut steps, visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_route(
        &mut self,
        oi: usize,
        ei: usize,
        rev: bool,
        head: usize,
        cur: Site,
        steps: &mut Vec<Dir>,
        visit: &mut dyn FnMut(&GridEmbedding),
    ) {
        if self.truncated {
            return;
        }
        let n = self.n;
        for d in DIRS {
            let si = seg_index(cur, d, n);
            if self.segs[si] {
                continue;
            }
            let next = step(cur, d, n);
            let nidx = site_index(next, n);
            let occ_next = self.sites[nidx];

            // Close onto the placed head vertex.
            if self.vertex_sites[head] == Some(next) {
                self.segs[si] = true;
                steps.push(d);
                let forward: Vec<Dir> = if rev {
                    steps.iter().rev().map(|x| x.opposite()).collect()
                } else {
                    steps.clone()
                };
                self.paths[ei] = Some(GridPath { steps: forward });
                self.route_edge(oi + 1, visit);
                self.paths[ei] = None;
                steps.pop();
                self.segs[si] = false;
            }

            if occ_next == SiteUse::Free {
                // Bind an unplaced head vertex here.
                if self.vertex_sites[head].is_none() {
                    self.segs[si] = true;
                    self.sites[nidx] = SiteUse::Vertex(head as u16);
                    self.vertex_sites[head] = Some(next);
                    steps.push(d);
                    let forward: Vec<Dir> = if rev {
                        steps.iter().rev().map(|x| x.opposite()).collect()
                    } else {
                        steps.clone()
                    };
                    self.paths[ei] = Some(GridPath { steps: forward });
                    self.route_edge(oi + 1, visit);
                    self.paths[ei] = None;
                    steps.pop();
                    self.vertex_sites[head] = None;
                    self.sites[nidx] = SiteUse::Free;
                    self.segs[si] = false;
                }

                // Continue through a free interior site.
                self.segs[si] = true;
                self.sites[nidx] = SiteUse::Interior(ei as u16);
                steps.push(d);
                self.extend_route(oi, ei, rev, head, next, steps, visit);
                steps.pop();
                self.sites[nidx] = SiteUse::Free;
                self.segs[si] = false;
            }
        }
    }
}

/// Per-graph oracle registry used by sweeps. Every explored canonical state
/// maps to a component; a component either contains a reduced state (then
/// every member reduces, because moves are reversible) or, when fully
/// explored, provably contains none.
pub struct OutcomeRegistry {
    state_component: FxHashMap<Vec<u8>, u32>,
    outcomes: Vec<(ReductionOutcome, bool)>,
    pub states_explored: usize,
}

impl OutcomeRegistry {
    pub fn new() -> OutcomeRegistry {
        OutcomeRegistry {
            state_component: FxHashMap::default(),
            outcomes: Vec::new(),
            states_explored: 0,
        }
    }

    /// Oracle outcome for `e`, sharing component knowledge across calls.
    pub fn evaluate(&mut self, e: &GridEmbedding, budget: usize) -> ReductionOutcome {
        let key = e.canonical_bytes();
        if let Some(&cid) = self.state_component.get(&key) {
            let (outcome, complete) = self.outcomes[cid as usize];
            if outcome == ReductionOutcome::Reduced || complete {
                return outcome;
            }
        }

        let cid = self.outcomes.len() as u32;
        self.outcomes.push((ReductionOutcome::Exhausted, false));
        let mut visited: FxHashSet<Vec<u8>> = FxHashSet::default();
        let mut queue: VecDeque<GridEmbedding> = VecDeque::new();

        let mut outcome = ReductionOutcome::Exhausted;
        let mut complete = false;

        if e.is_reduced() {
            outcome = ReductionOutcome::Reduced;
            visited.insert(key);
        } else {
            visited.insert(key);
            queue.push_back(e.clone());
            let mut seen = 1usize;
            'bfs: loop {
                let state = match queue.pop_front() {
                    Some(s) => s,
                    None => {
                        complete = true;
                        break 'bfs;
                    }
                };
                for (_, next) in successors(&state) {
                    let k = next.canonical_bytes();
                    if visited.contains(&k) {
                        continue;
                    }
                    if let Some(&other) = self.state_component.get(&k) {
                        // Reachability is symmetric, so a certified
                        // neighbouring component settles this one.
                        let (o, c) = self.outcomes[other as usize];
                        if o == ReductionOutcome::Reduced {
                            outcome = ReductionOutcome::Reduced;
                            break 'bfs;
                        }
                        if c {
                            outcome = ReductionOutcome::Exhausted;
                            complete = true;
                            break 'bfs;
                        }
                    }
                    if seen >= budget {
                        break 'bfs;
                    }
                    seen += 1;
                    if next.is_reduced() {
                        visited.insert(k);
                        outcome = ReductionOutcome::Reduced;
                        break 'bfs;
                    }
                    visited.insert(k);
                    queue.push_back(next);
                }
            }
        }

        self.outcomes[cid as usize] = (outcome, complete);
        self.states_explored += visited.len();
        for k in visited {
            self.state_component.insert(k, cid);
        }
        outcome
    }
}

impl Default for OutcomeRegistry {
    fn default() -> Self {
        Self::new()
    }
}
