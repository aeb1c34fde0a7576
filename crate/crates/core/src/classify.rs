//! The triviality decision chain for spatial graphs on the torus.
//!
//! A validated graph is trivial exactly when it is abstractly planar and
//! carries neither a knotted cycle nor a nonsplit link. Knot detection works
//! through homology classes of simple cycles; link detection scans
//! vertex-disjoint cycle pairs; primitivity contracts every spanning tree of
//! every component and checks the resulting bouquets.

use crate::error::{Error, ScanIncomplete, TreeCapExceeded};
use crate::graph::{TorusGraph, TorusKind, VertexId};
use crate::homology::{
    all_spanning_trees, cycle_class, fundamental_cycles, intersection_det, primitive_reduce,
    scan_simple_cycles, Cycle, HomologyClass, ScanEnd, SpanningTree,
};
use crate::planarity::{is_planar, AbstractGraph, KuratowskiWitness};
use std::ops::ControlFlow;

/// Default cap on enumerated simple cycles.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;
/// Default cap on enumerated spanning trees per component.
pub const DEFAULT_TREE_CAP: usize = 100_000;

/// Knot classification of a single cycle class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnotStatus {
    Unknot,
    NontrivialTorusKnot,
    /// Only on a knotted torus: the cycle follows the companion knot.
    NontrivialSatellite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnotVerdict {
    pub status: KnotStatus,
    pub class: HomologyClass,
}

impl KnotVerdict {
    pub fn is_nontrivial(&self) -> bool {
        self.status != KnotStatus::Unknot
    }
}

/// Classify the knot type of a simple closed curve of class `a` on a torus
/// of kind `k`.
///
/// On the standard torus the unknots are exactly the zero class, the
/// meridians and longitudes, and the `(±1, n)` / `(n, ±1)` families;
/// anything else is a nontrivial torus knot. On a knotted torus any cycle
/// with longitudinal winding follows the companion knot and is knotted;
/// meridional cycles are unknots.
///
/// Nonzero non-primitive classes are rejected: simple embedded cycles never
/// produce them.
pub fn knot_type(a: HomologyClass, k: TorusKind) -> Result<KnotVerdict, Error> {
    if !a.is_zero() && primitive_reduce(a).0 != 1 {
        return Err(Error::NonPrimitiveClass(a.p, a.q));
    }
    let status = match k {
        TorusKind::Standard => {
            if a.p.abs().min(a.q.abs()) <= 1 {
                KnotStatus::Unknot
            } else {
                KnotStatus::NontrivialTorusKnot
            }
        }
        TorusKind::NonstandardKnotted => {
            if a.p == 0 {
                KnotStatus::Unknot
            } else {
                KnotStatus::NontrivialSatellite
            }
        }
    };
    Ok(KnotVerdict { status, class: a })
}

/// Outcome of a capped witness scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanOutcome<T> {
    /// A witness was found (scan exited early).
    Found(T),
    /// The scan completed with no witness.
    CleanSweep,
    /// The cap was hit before the scan finished; no conclusion.
    Incomplete(ScanIncomplete),
}

impl<T> ScanOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            ScanOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
    pub fn is_incomplete(&self) -> bool {
        matches!(self, ScanOutcome::Incomplete(_))
    }
}

/// First enumerated simple cycle whose knot type is nontrivial.
pub fn find_knotted_cycle(
    g: &TorusGraph,
    cap: usize,
) -> Result<ScanOutcome<(Cycle, KnotVerdict)>, Error> {
    let kind = g.torus();
    let mut witness: Option<(Cycle, KnotVerdict)> = None;
    let mut structural: Option<Error> = None;
    let end = scan_simple_cycles(g, cap, |c| {
        let class = match cycle_class(g, c) {
            Ok(cl) => cl,
            Err(e) => {
                structural = Some(e);
                return ControlFlow::Break(());
            }
        };
        match knot_type(class, kind) {
            Ok(kv) if kv.is_nontrivial() => {
                witness = Some((c.clone(), kv));
                ControlFlow::Break(())
            }
            Ok(_) => ControlFlow::Continue(()),
            Err(e) => {
                structural = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    if let Some(e) = structural {
        return Err(e);
    }
    Ok(match (witness, end) {
        (Some(w), _) => ScanOutcome::Found(w),
        (None, ScanEnd::CapExceeded) => ScanOutcome::Incomplete(ScanIncomplete { cap }),
        (None, _) => ScanOutcome::CleanSweep,
    })
}

/// A pair of vertex-disjoint cycles witnessing a nonsplit link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkWitness {
    pub cycles: (Cycle, Cycle),
    pub classes: (HomologyClass, HomologyClass),
}

/// Scan vertex-disjoint pairs of simple cycles for a nonsplit link: both
/// classes essential and neither a meridian `±(0,1)` nor a longitude
/// `±(1,0)`. Disjoint essential curves on the torus are parallel, so the two
/// classes agree up to sign.
///
/// On a knotted torus the scan is skipped: any candidate pair already
/// carries a knot witness through its longitudinal winding.
pub fn find_nonsplit_link(g: &TorusGraph, cap: usize) -> Result<ScanOutcome<LinkWitness>, Error> {
    if g.torus() == TorusKind::NonstandardKnotted {
        return Ok(ScanOutcome::CleanSweep);
    }
    let mut cycles: Vec<(Cycle, HomologyClass, Vec<VertexId>)> = Vec::new();
    let mut structural: Option<Error> = None;
    let end = scan_simple_cycles(g, cap, |c| {
        match cycle_class(g, c).and_then(|cl| c.vertex_sequence(g).map(|vs| (cl, vs))) {
            Ok((cl, vs)) => {
                cycles.push((c.clone(), cl, vs));
                ControlFlow::Continue(())
            }
            Err(e) => {
                structural = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    if let Some(e) = structural {
        return Err(e);
    }
    if end == ScanEnd::CapExceeded {
        return Ok(ScanOutcome::Incomplete(ScanIncomplete { cap }));
    }

    let linkable = |cl: &HomologyClass| {
        cl.is_essential() && !matches!((cl.p.abs(), cl.q.abs()), (0, 1) | (1, 0))
    };
    for i in 0..cycles.len() {
        if !linkable(&cycles[i].1) {
            continue;
        }
        for j in (i + 1)..cycles.len() {
            if !linkable(&cycles[j].1) {
                continue;
            }
            let disjoint = cycles[i].2.iter().all(|v| !cycles[j].2.contains(v));
            if disjoint {
                return Ok(ScanOutcome::Found(LinkWitness {
                    cycles: (cycles[i].0.clone(), cycles[j].0.clone()),
                    classes: (cycles[i].1, cycles[j].1),
                }));
            }
        }
    }
    Ok(ScanOutcome::CleanSweep)
}

/// A one-vertex spatial graph: the base and the classes of its loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bouquet {
    pub base: VertexId,
    pub loop_classes: Vec<HomologyClass>,
}

/// Contract a spanning tree of a connected graph; the loops of the bouquet
/// are the fundamental cycles, and their classes survive contraction.
pub fn contract_to_bouquet(g: &TorusGraph, t: &SpanningTree) -> Result<Bouquet, Error> {
    if g.components().len() != 1 {
        return Err(Error::Disconnected);
    }
    let cycles = fundamental_cycles(g, t)?;
    let mut loop_classes = Vec::with_capacity(cycles.len());
    for c in &cycles {
        loop_classes.push(cycle_class(g, c)?);
    }
    let base = g
        .vertices()
        .next()
        .map(|(v, _)| v.clone())
        .expect("connected graph has a vertex");
    Ok(Bouquet { base, loop_classes })
}

/// Whether every loop of the bouquet is an unknot under the given torus
/// kind. Knot-freeness of a torus bouquet already implies triviality, so no
/// further check is needed. A nonzero non-primitive class is never realized
/// by an embedded bouquet; such input is conservatively not trivial.
pub fn is_bouquet_trivial(b: &Bouquet, k: TorusKind) -> bool {
    b.loop_classes
        .iter()
        .all(|&cl| matches!(knot_type(cl, k), Ok(kv) if !kv.is_nontrivial()))
}

/// Whether, for every component and every spanning tree of it, the
/// contracted bouquet is trivial. Exhaustive over spanning trees, with a
/// cap; exceeding the cap yields a distinct indeterminate outcome.
pub fn is_primitive(g: &TorusGraph, tree_cap: usize) -> Result<bool, TreeCapExceeded> {
    let kind = g.torus();
    for comp in g.components() {
        for tree in all_spanning_trees(&comp, tree_cap)? {
            let b = contract_to_bouquet(&comp, &tree)
                .expect("component is connected and the tree spans it");
            if !is_bouquet_trivial(&b, kind) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the complement of the graph has free fundamental group for every
/// connected subgraph. Decided indirectly: it holds exactly when the
/// embedding is primitive, so this delegates to [`is_primitive`].
pub fn is_free_family(g: &TorusGraph, tree_cap: usize) -> Result<bool, TreeCapExceeded> {
    is_primitive(g, tree_cap)
}

/// Classification outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictResult {
    Trivial,
    Nontrivial,
    Indeterminate,
}

/// Why an embedding is nontrivial (or indeterminate).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Reason {
    NonplanarAbstractGraph,
    KnottedCycle,
    NonsplitLink,
    ScanIncomplete,
}

/// Witnesses backing the reasons of a verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witnesses {
    pub knot: Option<(Cycle, KnotVerdict)>,
    pub link: Option<LinkWitness>,
    pub nonplanar: Option<KuratowskiWitness>,
}

/// Scan bookkeeping carried on a verdict.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanStats {
    pub cycle_cap: usize,
    pub knot_scan_complete: bool,
    pub link_scan_complete: bool,
}

/// Outcome of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub result: VerdictResult,
    pub reasons: Vec<Reason>,
    pub witnesses: Witnesses,
    pub stats: ScanStats,
}

/// Classify a validated embedding.
///
/// Reasons are gathered in order: planarity, then knots, then links; all
/// applicable reasons are collected. The verdict is `Trivial` exactly when
/// the abstract graph is planar and both scans complete with no witness;
/// `Indeterminate` occurs only when a scan hits its cap without a witness.
pub fn classify(g: &TorusGraph, cap: usize) -> Result<Verdict, Error> {
    let report = g.validate_embedding()?;
    if !report.ok {
        return Err(Error::NotAnEmbedding);
    }
    classify_validated(g, cap)
}

/// Classification without re-running geometric validation. The caller
/// asserts that `g` is a valid embedding (for example, constructed on the
/// grid where validity holds by construction).
pub fn classify_validated(g: &TorusGraph, cap: usize) -> Result<Verdict, Error> {
    let mut reasons = Vec::new();
    let mut witnesses = Witnesses::default();
    let mut stats = ScanStats {
        cycle_cap: cap,
        knot_scan_complete: true,
        link_scan_complete: true,
    };

    let (planar, kuratowski) = is_planar(&AbstractGraph::from(g));
    if !planar {
        reasons.push(Reason::NonplanarAbstractGraph);
        witnesses.nonplanar = kuratowski;
    }

    match find_knotted_cycle(g, cap)? {
        ScanOutcome::Found(w) => {
            reasons.push(Reason::KnottedCycle);
            witnesses.knot = Some(w);
        }
        ScanOutcome::CleanSweep => {}
        ScanOutcome::Incomplete(_) => stats.knot_scan_complete = false,
    }

    match find_nonsplit_link(g, cap)? {
        ScanOutcome::Found(w) => {
            reasons.push(Reason::NonsplitLink);
            witnesses.link = Some(w);
        }
        ScanOutcome::CleanSweep => {}
        ScanOutcome::Incomplete(_) => stats.link_scan_complete = false,
    }

    let result = if !reasons.is_empty() {
        VerdictResult::Nontrivial
    } else if !stats.knot_scan_complete || !stats.link_scan_complete {
        reasons.push(Reason::ScanIncomplete);
        VerdictResult::Indeterminate
    } else {
        VerdictResult::Trivial
    };

    Ok(Verdict {
        result,
        reasons,
        witnesses,
        stats,
    })
}

/// Pairwise intersection determinants of a set of classes, for checks that
/// simultaneously embeddable loop families stay within the unknot families.
pub fn pairwise_dets(classes: &[HomologyClass]) -> Vec<i64> {
    let mut out = Vec::new();
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            out.push(intersection_det(classes[i], classes[j]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests_support::{bouquet_graph, disc_graph, DiscSpec};

    fn hc(p: i64, q: i64) -> HomologyClass {
        HomologyClass::new(p, q)
    }

    #[test]
    fn knot_type_standard_unknot_families() {
        for cl in [
            hc(0, 0),
            hc(0, 1),
            hc(0, -1),
            hc(1, 0),
            hc(1, 5),
            hc(-1, 5),
            hc(5, 1),
            hc(7, -1),
        ] {
            let kv = knot_type(cl, TorusKind::Standard).unwrap();
            assert_eq!(kv.status, KnotStatus::Unknot, "{cl}");
        }
    }

    #[test]
    fn knot_type_standard_torus_knots() {
        for cl in [hc(2, 3), hc(3, 2), hc(-2, 3), hc(2, -5), hc(3, -4)] {
            let kv = knot_type(cl, TorusKind::Standard).unwrap();
            assert_eq!(kv.status, KnotStatus::NontrivialTorusKnot, "{cl}");
        }
    }

    #[test]
    fn knot_type_knotted_torus() {
        let kv = knot_type(hc(1, 0), TorusKind::NonstandardKnotted).unwrap();
        assert_eq!(kv.status, KnotStatus::NontrivialSatellite);
        let kv = knot_type(hc(1, 5), TorusKind::NonstandardKnotted).unwrap();
        assert_eq!(kv.status, KnotStatus::NontrivialSatellite);
        let kv = knot_type(hc(0, 1), TorusKind::NonstandardKnotted).unwrap();
        assert_eq!(kv.status, KnotStatus::Unknot);
        let kv = knot_type(hc(0, 0), TorusKind::NonstandardKnotted).unwrap();
        assert_eq!(kv.status, KnotStatus::Unknot);
    }

    #[test]
    fn knot_type_rejects_non_primitive() {
        assert_eq!(
            knot_type(hc(2, 4), TorusKind::Standard),
            Err(Error::NonPrimitiveClass(2, 4))
        );
        assert_eq!(
            knot_type(hc(0, 2), TorusKind::NonstandardKnotted),
            Err(Error::NonPrimitiveClass(0, 2))
        );
    }

    #[test]
    fn knot_type_orientation_invariant() {
        for cl in [hc(2, 3), hc(1, 4), hc(0, 1), hc(5, 1)] {
            let a = knot_type(cl, TorusKind::Standard).unwrap();
            let b = knot_type(cl.neg(), TorusKind::Standard).unwrap();
            assert_eq!(a.status, b.status);
        }
    }

    #[test]
    fn bouquet_triviality_families() {
        let base = VertexId::from("b");
        let trivial = Bouquet {
            base: base.clone(),
            loop_classes: vec![hc(0, 1), hc(1, 2), hc(1, 3)],
        };
        assert!(is_bouquet_trivial(&trivial, TorusKind::Standard));

        let frame = Bouquet {
            base: base.clone(),
            loop_classes: vec![hc(0, 1), hc(1, 0)],
        };
        assert!(is_bouquet_trivial(&frame, TorusKind::Standard));

        let knotted = Bouquet {
            base,
            loop_classes: vec![hc(2, 3)],
        };
        assert!(!is_bouquet_trivial(&knotted, TorusKind::Standard));
    }

    #[test]
    fn zero_loops_never_change_triviality() {
        let base = VertexId::from("b");
        let mut classes = vec![hc(0, 1), hc(1, 0)];
        for _ in 0..3 {
            classes.push(hc(0, 0));
            let b = Bouquet {
                base: base.clone(),
                loop_classes: classes.clone(),
            };
            assert!(is_bouquet_trivial(&b, TorusKind::Standard));
        }
    }

    #[test]
    fn theta_in_disc_is_trivial() {
        let g = disc_graph(DiscSpec::Theta3);
        let v = classify(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(v.result, VerdictResult::Trivial);
        assert!(v.reasons.is_empty());
    }

    #[test]
    fn trefoil_loop_is_knotted() {
        // A single loop of class (2,3); geometry is synthetic but the
        // classifier only consumes classes.
        let g = bouquet_graph(&[(2, 3)]);
        let v = classify_validated(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(v.result, VerdictResult::Nontrivial);
        assert_eq!(v.reasons, vec![Reason::KnottedCycle]);
        let (_, kv) = v.witnesses.knot.unwrap();
        assert_eq!(kv.class, hc(2, 3));
    }

    #[test]
    fn meridian_longitude_bouquet_is_trivial() {
        let g = bouquet_graph(&[(0, 1), (1, 0)]);
        let v = classify(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(v.result, VerdictResult::Trivial);
    }

    #[test]
    fn primitivity_of_disc_theta_and_synthetic_trefoil() {
        let theta = disc_graph(DiscSpec::Theta3);
        assert_eq!(is_primitive(&theta, DEFAULT_TREE_CAP), Ok(true));
        assert_eq!(is_free_family(&theta, DEFAULT_TREE_CAP), Ok(true));

        let trefoil = bouquet_graph(&[(2, 3)]);
        assert_eq!(is_primitive(&trefoil, DEFAULT_TREE_CAP), Ok(false));
        assert_eq!(is_free_family(&trefoil, DEFAULT_TREE_CAP), Ok(false));
    }

    #[test]
    fn satellite_detected_on_knotted_torus() {
        let mut g = bouquet_graph(&[(1, 0)]);
        g = g.with_torus(TorusKind::NonstandardKnotted);
        let v = classify_validated(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(v.result, VerdictResult::Nontrivial);
        assert_eq!(v.reasons, vec![Reason::KnottedCycle]);
        let (_, kv) = v.witnesses.knot.unwrap();
        assert_eq!(kv.status, KnotStatus::NontrivialSatellite);
    }

    #[test]
    fn meridian_on_knotted_torus_is_trivial() {
        let g = bouquet_graph(&[(0, 1)]).with_torus(TorusKind::NonstandardKnotted);
        let v = classify_validated(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(v.result, VerdictResult::Trivial);
    }

    #[test]
    fn indeterminate_on_tiny_cap() {
        let g = disc_graph(DiscSpec::Theta3);
        let v = classify_validated(&g, 1).unwrap();
        assert_eq!(v.result, VerdictResult::Indeterminate);
        assert_eq!(v.reasons, vec![Reason::ScanIncomplete]);
    }
}
