//! Exact rational plane geometry used by embedding validation.
//!
//! All predicates are exact: coordinates are arbitrary-precision rationals
//! and there is no tolerance anywhere. A point is on a segment or it is not.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact coordinate type.
pub type Rat = BigRational;

/// Build a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    BigRational::from_integer(BigInt::from(num))
}

/// A point of the universal cover plane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    /// Translate by an integer vector.
    pub fn translated(&self, tx: i64, ty: i64) -> Point {
        Point {
            x: &self.x + rat_int(tx),
            y: &self.y + rat_int(ty),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the orientation determinant of the triangle `a`, `b`, `c`.
/// Positive for counter-clockwise, zero for collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    let d = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

/// Result of intersecting two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegIntersection {
    /// Disjoint segments.
    Empty,
    /// A single shared point.
    At(Point),
    /// A collinear overlap of positive length, reported by its endpoints.
    Overlap(Point, Point),
}

/// Exact intersection of the closed segments `[a1,a2]` and `[b1,b2]`.
pub fn segment_intersection(a1: &Point, a2: &Point, b1: &Point, b2: &Point) -> SegIntersection {
    let o1 = orient(a1, a2, b1);
    let o2 = orient(a1, a2, b2);
    let o3 = orient(b1, b2, a1);
    let o4 = orient(b1, b2, a2);

    if o1 == 0 && o2 == 0 {
        // Both endpoints of b on line(a): collinear case.
        return collinear_overlap(a1, a2, b1, b2);
    }

    if o1 * o2 <= 0 && o3 * o4 <= 0 {
        // Exactly one common point; solve the line-line system exactly.
        let rx = &a2.x - &a1.x;
        let ry = &a2.y - &a1.y;
        let sx = &b2.x - &b1.x;
        let sy = &b2.y - &b1.y;
        let denom = &rx * &sy - &ry * &sx;
        debug_assert!(!denom.is_zero());
        let qpx = &b1.x - &a1.x;
        let qpy = &b1.y - &a1.y;
        let t = (&qpx * &sy - &qpy * &sx) / &denom;
        let point = Point {
            x: &a1.x + &t * &rx,
            y: &a1.y + &t * &ry,
        };
        return SegIntersection::At(point);
    }

    SegIntersection::Empty
}

fn collinear_overlap(a1: &Point, a2: &Point, b1: &Point, b2: &Point) -> SegIntersection {
    // Order along the dominant axis of the shared line.
    let use_x = a1.x != a2.x;
    let key = |p: &Point| if use_x { p.x.clone() } else { p.y.clone() };

    let (alo, ahi) = minmax(a1, a2, &key);
    let (blo, bhi) = minmax(b1, b2, &key);

    let lo = if key(alo) >= key(blo) { alo } else { blo };
    let hi = if key(ahi) <= key(bhi) { ahi } else { bhi };
    match key(lo).cmp(&key(hi)) {
        std::cmp::Ordering::Greater => SegIntersection::Empty,
        std::cmp::Ordering::Equal => SegIntersection::At(lo.clone()),
        std::cmp::Ordering::Less => SegIntersection::Overlap(lo.clone(), hi.clone()),
    }
}

fn minmax<'a, F: Fn(&Point) -> Rat>(p: &'a Point, q: &'a Point, key: &F) -> (&'a Point, &'a Point) {
    if key(p) <= key(q) {
        (p, q)
    } else {
        (q, p)
    }
}

/// Whether `p` lies on the closed segment `[a,b]`.
pub fn point_on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let within = |v: &Rat, lo: &Rat, hi: &Rat| {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        lo <= v && v <= hi
    };
    within(&p.x, &a.x, &b.x) && within(&p.y, &a.y, &b.y)
}

/// Axis-aligned rational bounding box.
#[derive(Clone, Debug)]
pub struct BoundingBox {
    pub min_x: Rat,
    pub max_x: Rat,
    pub min_y: Rat,
    pub max_y: Rat,
}

impl BoundingBox {
    pub fn of_points<'a, I: IntoIterator<Item = &'a Point>>(points: I) -> Option<BoundingBox> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut bb = BoundingBox {
            min_x: first.x.clone(),
            max_x: first.x.clone(),
            min_y: first.y.clone(),
            max_y: first.y.clone(),
        };
        for p in it {
            if p.x < bb.min_x {
                bb.min_x = p.x.clone();
            }
            if p.x > bb.max_x {
                bb.max_x = p.x.clone();
            }
            if p.y < bb.min_y {
                bb.min_y = p.y.clone();
            }
            if p.y > bb.max_y {
                bb.max_y = p.y.clone();
            }
        }
        Some(bb)
    }

    /// Integer translates `t` for which `other + t` overlaps (closed) this
    /// box. Finite because both boxes are bounded.
    pub fn overlapping_translates(&self, other: &BoundingBox) -> Vec<(i64, i64)> {
        let txs = integer_range(&(&self.min_x - &other.max_x), &(&self.max_x - &other.min_x));
        let tys = integer_range(&(&self.min_y - &other.max_y), &(&self.max_y - &other.min_y));
        let mut out = Vec::with_capacity(txs.len() * tys.len());
        for &tx in &txs {
            for &ty in &tys {
                out.push((tx, ty));
            }
        }
        out
    }
}

/// All integers in the closed rational interval `[lo, hi]`.
fn integer_range(lo: &Rat, hi: &Rat) -> Vec<i64> {
    let lo = lo.ceil().to_integer();
    let hi = hi.floor().to_integer();
    let mut out = Vec::new();
    let mut v = lo;
    while v <= hi {
        out.push(bigint_to_i64(&v));
        v += BigInt::one();
    }
    out
}

pub(crate) fn bigint_to_i64(v: &BigInt) -> i64 {
    use num_traits::ToPrimitive;
    v.to_i64().expect("integer out of supported range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(rat_int(x), rat_int(y))
    }

    fn ph(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::new(rat(xn, xd), rat(yn, yd))
    }

    #[test]
    fn transversal_crossing_has_exact_midpoint() {
        let r = segment_intersection(&p(0, 0), &p(1, 1), &p(0, 1), &p(1, 0));
        assert_eq!(r, SegIntersection::At(ph(1, 2, 1, 2)));
    }

    #[test]
    fn disjoint_segments() {
        let r = segment_intersection(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1));
        assert_eq!(r, SegIntersection::Empty);
    }

    #[test]
    fn shared_endpoint_is_single_point() {
        let r = segment_intersection(&p(0, 0), &p(1, 0), &p(1, 0), &p(1, 1));
        assert_eq!(r, SegIntersection::At(p(1, 0)));
    }

    #[test]
    fn endpoint_touching_interior() {
        let r = segment_intersection(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 5));
        assert_eq!(r, SegIntersection::At(p(1, 0)));
    }

    #[test]
    fn collinear_overlap_reported() {
        let r = segment_intersection(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0));
        assert_eq!(r, SegIntersection::Overlap(p(1, 0), p(2, 0)));
    }

    #[test]
    fn collinear_touching_at_point() {
        let r = segment_intersection(&p(0, 0), &p(1, 0), &p(1, 0), &p(2, 0));
        assert_eq!(r, SegIntersection::At(p(1, 0)));
    }

    #[test]
    fn collinear_disjoint() {
        let r = segment_intersection(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0));
        assert_eq!(r, SegIntersection::Empty);
    }

    #[test]
    fn parallel_distinct_lines() {
        let r = segment_intersection(&p(0, 0), &p(2, 2), &p(0, 1), &p(2, 3));
        assert_eq!(r, SegIntersection::Empty);
    }

    #[test]
    fn vertical_overlap() {
        let r = segment_intersection(&p(0, 0), &p(0, 3), &p(0, 2), &p(0, 5));
        assert_eq!(r, SegIntersection::Overlap(p(0, 2), p(0, 3)));
    }

    #[test]
    fn point_on_segment_checks() {
        assert!(point_on_segment(&ph(1, 2, 1, 2), &p(0, 0), &p(1, 1)));
        assert!(point_on_segment(&p(1, 1), &p(0, 0), &p(1, 1)));
        assert!(!point_on_segment(&p(2, 2), &p(0, 0), &p(1, 1)));
        assert!(!point_on_segment(&p(1, 0), &p(0, 0), &p(1, 1)));
    }

    #[test]
    fn translate_enumeration_covers_unit_shift() {
        let a = BoundingBox::of_points([&p(0, 0), &p(1, 0)]).unwrap();
        let b = BoundingBox::of_points([&ph(-3, 4, 0, 1), &ph(-1, 4, 0, 1)]).unwrap();
        let ts = a.overlapping_translates(&b);
        assert_eq!(ts, vec![(1, 0)]);
    }
}
