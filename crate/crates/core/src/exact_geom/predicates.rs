//! Exact geometric predicates over rational coordinates.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::angle::AngleSpec;
use super::rational::{floor_dyadic, int, pow2_neg, serde_rational, Rational};
use super::GeomError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2 {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
}

pub type Vector2 = Point2;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point3 {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
    #[serde(with = "serde_rational")]
    pub z: Rational,
}

pub type Vector3 = Point3;

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2 { x: int(x), y: int(y) }
    }

    pub fn sub(&self, o: &Point2) -> Vector2 {
        Point2::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point2) -> Point2 {
        Point2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &Rational) -> Point2 {
        Point2::new(&self.x * k, &self.y * k)
    }

    pub fn neg(&self) -> Vector2 {
        Point2::new(-&self.x, -&self.y)
    }

    pub fn cross(&self, o: &Vector2) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3 { x: int(x), y: int(y), z: int(z) }
    }

    pub fn sub(&self, o: &Point3) -> Vector3 {
        Point3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn add(&self, o: &Point3) -> Point3 {
        Point3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    pub fn scale(&self, k: &Rational) -> Point3 {
        Point3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn cross(&self, o: &Vector3) -> Vector3 {
        Point3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            &self.x * &o.y - &self.y * &o.x,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }
}

/// Vectors with an exact inner product.
pub trait Dot {
    fn dot(&self, other: &Self) -> Rational;

    fn norm2(&self) -> Rational {
        self.dot(self)
    }

    fn is_zero_vec(&self) -> bool;
}

impl Dot for Point2 {
    fn dot(&self, o: &Self) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    fn is_zero_vec(&self) -> bool {
        self.is_zero()
    }
}

impl Dot for Point3 {
    fn dot(&self, o: &Self) -> Rational {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    fn is_zero_vec(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment2 {
    pub a: Point2,
    pub b: Point2,
}

impl Segment2 {
    pub fn new(a: Point2, b: Point2) -> Result<Self, GeomError> {
        if a == b {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Segment2 { a, b })
    }

    pub fn from_ints(ax: i64, ay: i64, bx: i64, by: i64) -> Self {
        Segment2::new(Point2::from_ints(ax, ay), Point2::from_ints(bx, by))
            .expect("distinct endpoints")
    }

    pub fn dir(&self) -> Vector2 {
        self.b.sub(&self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    pub fn from_sign(s: Ordering) -> Self {
        match s {
            Ordering::Greater => Orientation::Left,
            Ordering::Less => Orientation::Right,
            Ordering::Equal => Orientation::Collinear,
        }
    }
}

pub fn orient2d(p: &Point2, q: &Point2, r: &Point2) -> Orientation {
    let det = q.sub(p).cross(&r.sub(p));
    Orientation::from_sign(det.cmp(&Rational::zero()))
}

/// Whether the open interiors of the segments meet in exactly one point.
///
/// Touching at an endpoint is not a crossing. Collinear segments sharing a
/// sub-segment of positive length are reported as
/// [`GeomError::CollinearOverlap`].
pub fn properly_cross(s1: &Segment2, s2: &Segment2) -> Result<bool, GeomError> {
    let o1 = orient2d(&s1.a, &s1.b, &s2.a);
    let o2 = orient2d(&s1.a, &s1.b, &s2.b);
    let o3 = orient2d(&s2.a, &s2.b, &s1.a);
    let o4 = orient2d(&s2.a, &s2.b, &s1.b);
    use Orientation::*;
    if o1 == Collinear && o2 == Collinear {
        return if collinear_overlap_length_positive(s1, s2) {
            Err(GeomError::CollinearOverlap)
        } else {
            Ok(false)
        };
    }
    Ok(o1 != Collinear && o2 != Collinear && o3 != Collinear && o4 != Collinear && o1 != o2 && o3 != o4)
}

fn collinear_overlap_length_positive(s1: &Segment2, s2: &Segment2) -> bool {
    // project onto the dominant axis of s1
    let d = s1.dir();
    let key = |p: &Point2| if d.x.abs() >= d.y.abs() { p.x.clone() } else { p.y.clone() };
    let (a1, b1) = minmax(key(&s1.a), key(&s1.b));
    let (a2, b2) = minmax(key(&s2.a), key(&s2.b));
    a1.max(a2) < b1.min(b2)
}

fn minmax(a: Rational, b: Rational) -> (Rational, Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Exact intersection point of two properly crossing segments.
pub fn crossing_point(s1: &Segment2, s2: &Segment2) -> Result<Point2, GeomError> {
    if !properly_cross(s1, s2)? {
        return Err(GeomError::NoProperCrossing);
    }
    let d1 = s1.dir();
    let d2 = s2.dir();
    let denom = d1.cross(&d2);
    let t = s2.a.sub(&s1.a).cross(&d2) / denom;
    Ok(s1.a.add(&d1.scale(&t)))
}

/// Acute angle between the supporting lines is at least the threshold angle.
///
/// Evaluated as `(d1·d2)² <= c² |d1|² |d2|²` with `c` the threshold's cosine
/// bound. With a lower-bound threshold (`c <= cos α`) acceptance implies
/// the true angle is at least α, so the test can only err toward rejection.
pub fn crossing_angle_at_least<V: Dot>(
    d1: &V,
    d2: &V,
    threshold: &CosThreshold,
) -> Result<bool, GeomError> {
    if d1.is_zero_vec() || d2.is_zero_vec() {
        return Err(GeomError::ZeroVector);
    }
    let dot = d1.dot(d2);
    let lhs = &dot * &dot;
    let c2 = &threshold.cos_bound * &threshold.cos_bound;
    Ok(lhs <= c2 * d1.norm2() * d2.norm2())
}

/// Squared cosine of the angle between two nonzero vectors.
pub fn cos2_between<V: Dot>(d1: &V, d2: &V) -> Rational {
    let dot = d1.dot(d2);
    &dot * &dot / (d1.norm2() * d2.norm2())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdSide {
    /// The stored value is at most the true cosine of the target angle.
    LowerBoundOfCos,
    Exact,
}

/// Rational stand-in for the cosine of a target crossing angle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosThreshold {
    pub alpha_label: String,
    #[serde(with = "serde_rational")]
    pub cos_bound: Rational,
    pub side: ThresholdSide,
}

impl CosThreshold {
    pub fn exact(label: impl Into<String>, cos: Rational) -> Self {
        CosThreshold { alpha_label: label.into(), cos_bound: cos, side: ThresholdSide::Exact }
    }

    /// `cos²` of the threshold (what squared-cosine scans compare against).
    pub fn cos2(&self) -> Rational {
        &self.cos_bound * &self.cos_bound
    }
}

/// Precision ceiling for threshold construction.
pub const MAX_THRESHOLD_BITS: u32 = 4096;

/// A rational `q <= cos(angle)` within `2^-bits` of it.
///
/// Angles with a rational cosine (π/2, π/3) yield the exact value.
pub fn rational_cos_bound(angle: &AngleSpec, bits: u32) -> Result<CosThreshold, GeomError> {
    if bits == 0 || bits > MAX_THRESHOLD_BITS {
        return Err(GeomError::Precision(bits));
    }
    let label = angle.to_string();
    let zero = AngleSpec::radians(Rational::zero());
    let right = AngleSpec::pi_over(2);
    let positive = angle.cmp_certified(&zero, 512) == Some(Ordering::Greater);
    let at_most_right = matches!(
        angle.cmp_certified(&right, 512),
        Some(Ordering::Less) | Some(Ordering::Equal)
    );
    if !positive || !at_most_right {
        return Err(GeomError::AngleOutOfRange(label));
    }
    if let Some(c) = angle.exact_cos() {
        return Ok(CosThreshold::exact(label, c));
    }
    let cos = angle.cos_interval(bits + 4);
    debug_assert!(cos.width() <= pow2_neg(bits + 1));
    // cos is nonnegative on (0, π/2]; a negative bound would square badly
    let q = floor_dyadic(&cos.lo, bits + 1).max(Rational::zero());
    Ok(CosThreshold { alpha_label: label, cos_bound: q, side: ThresholdSide::LowerBoundOfCos })
}

/// Canonical representative of the edge's direction class in `[0, π)`:
/// the primitive integer vector pointing into the upper half-plane
/// (`y > 0`, or `y = 0` and `x > 0`).
pub fn direction_of(edge: &Segment2) -> Vector2 {
    canonical_direction(&edge.dir())
}

pub fn canonical_direction(v: &Vector2) -> Vector2 {
    assert!(!v.is_zero(), "direction of a zero vector");
    let v = if v.y.is_negative() || (v.y.is_zero() && v.x.is_negative()) {
        v.neg()
    } else {
        v.clone()
    };
    primitive(&v)
}

/// Scale a nonzero rational vector to a coprime integer vector, same sense.
pub fn primitive(v: &Vector2) -> Vector2 {
    let den = v.x.denom().lcm(v.y.denom());
    let xi = v.x.numer() * (&den / v.x.denom());
    let yi = v.y.numer() * (&den / v.y.denom());
    let g = xi.gcd(&yi);
    let g = if g.is_zero() { BigInt::one() } else { g };
    Point2::new(Rational::from_integer(xi / &g), Rational::from_integer(yi / &g))
}

/// Total order of nonzero vectors by polar angle in `[0, 2π)`.
pub fn cmp_polar(a: &Vector2, b: &Vector2) -> Ordering {
    let half = |v: &Vector2| -> u8 {
        if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| Rational::zero().cmp(&a.cross(b)))
}
