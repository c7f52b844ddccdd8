//! Splitting the edge set into direction buckets of angular width α.
//!
//! Directions are measured in `[0, π)`. Bucket `i` (0-based) holds the
//! directions in `[iα, (i+1)α)` for `i < k = ⌊π/α⌋`; one more bucket holds the
//! remainder `[kα, π)`, which is empty when α divides π.
//!
//! A coplanar 3D graph is read in the in-plane frame `u0 = n × e`,
//! `w = n × u0`. With `X = d·u0` and `Y = d·w` the in-plane direction is
//! proportional to `(X, Y/|n|)`, so it is rational exactly when `|n|²` is a
//! rational square (always the case for 2D input).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{check_alpha, is_alpha_ac, pi_over_alpha, VerifyError};
use crate::exact_geom::rational::{int, rat, rational_sqrt, serde_rational, to_f64};
use crate::exact_geom::{
    canonical_direction, rational_cos_bound, AngleSpec, Dot, Interval, Point2, Rational, Vector3,
};
use crate::graph_model::{Chart, Embedding, GeometricGraph, GraphError};

const START_BITS: u32 = 64;
const MAX_BITS: u32 = 1024;

/// A rational point `(cos θ, sin θ)` on the unit circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rotation {
    #[serde(with = "serde_rational")]
    pub cos: Rational,
    #[serde(with = "serde_rational")]
    pub sin: Rational,
}

impl Rotation {
    pub fn identity() -> Self {
        Rotation { cos: int(1), sin: int(0) }
    }

    /// Rotation whose half-angle tangent is `t`.
    pub fn from_tan_half(t: &Rational) -> Self {
        let t2 = t * t;
        let den = &t2 + int(1);
        Rotation { cos: (int(1) - &t2) / &den, sin: (t * int(2)) / den }
    }

    /// Rational rotation close to `theta` radians. Only direction classes
    /// matter, so the angle is first reduced into `[-π/2, π/2)`.
    pub fn approximating(theta: f64) -> Self {
        let pi = std::f64::consts::PI;
        let mut th = theta.rem_euclid(pi);
        if th >= pi / 2.0 {
            th -= pi;
        }
        let t = (th / 2.0).tan();
        let scale = 1i64 << 40;
        Rotation::from_tan_half(&rat((t * scale as f64).round() as i64, scale))
    }

    pub fn approx_radians(&self) -> f64 {
        to_f64(&self.sin).atan2(to_f64(&self.cos))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionPartition {
    pub rotation: Rotation,
    pub alpha: AngleSpec,
    /// `⌈π/α⌉`.
    pub bucket_count: usize,
    /// `⌊π/α⌋` full buckets followed by the remainder bucket.
    pub buckets: Vec<Vec<usize>>,
    pub last_bucket_size: usize,
}

impl DirectionPartition {
    pub fn full_buckets(&self) -> &[Vec<usize>] {
        &self.buckets[..self.buckets.len() - 1]
    }

    pub fn remainder(&self) -> &[usize] {
        self.buckets.last().unwrap()
    }
}

/// In-plane edge directions, grouped into parallel classes.
struct Frame {
    /// Squared length of the normal, `1` for 2D.
    norm2: Rational,
    sqrt_norm2: Option<Rational>,
    /// Canonical `(X, Y)` per class.
    classes: Vec<Point2>,
    /// Class index per edge.
    class_of: Vec<usize>,
}

impl Frame {
    fn new(g: &GeometricGraph) -> Result<Frame, GraphError> {
        let (raw, norm2): (Vec<Point2>, Rational) = match &g.embedding {
            Embedding::Planar(p) => (g.edges.iter().map(|&(a, b)| p[b].sub(&p[a])).collect(), int(1)),
            Embedding::Spatial { points, plane_normal: Some(n) } => {
                let axis = (0..3).min_by_key(|&i| n.coords()[i].abs()).unwrap();
                let mut e = [int(0), int(0), int(0)];
                e[axis] = int(1);
                let e = Vector3::new(e[0].clone(), e[1].clone(), e[2].clone());
                let u0 = n.cross(&e);
                let w = n.cross(&u0);
                let raw = g
                    .edges
                    .iter()
                    .map(|&(a, b)| {
                        let d = points[b].sub(&points[a]);
                        Point2::new(d.dot(&u0), d.dot(&w))
                    })
                    .collect();
                (raw, n.norm2())
            }
            Embedding::Spatial { plane_normal: None, .. } => return Err(GraphError::NotPlanar),
        };
        let mut index: HashMap<Point2, usize> = HashMap::new();
        let mut classes = Vec::new();
        let mut class_of = Vec::with_capacity(raw.len());
        for v in &raw {
            let key = canonical_direction(v);
            let next = classes.len();
            let id = *index.entry(key.clone()).or_insert(next);
            if id == next {
                classes.push(key);
            }
            class_of.push(id);
        }
        let sqrt_norm2 = rational_sqrt(&norm2);
        Ok(Frame { norm2, sqrt_norm2, classes, class_of })
    }

    /// Unrotated direction angle of a class, for candidate generation only.
    fn approx_angle(&self, c: usize) -> f64 {
        let v = &self.classes[c];
        let y = to_f64(&v.y) / to_f64(&self.norm2).sqrt();
        let a = y.atan2(to_f64(&v.x));
        a.rem_euclid(std::f64::consts::PI)
    }
}

/// Boundary `jα`, with its cosine known exactly when it is a square root of
/// a rational (multiples of π/4 and π/6).
struct Boundary {
    angle: AngleSpec,
    exact: Option<(Ordering, Rational)>,
    cache: RefCell<BTreeMap<u32, Interval>>,
}

impl Boundary {
    fn new(angle: AngleSpec) -> Self {
        let exact = signed_cos2(&angle);
        Boundary { angle, exact, cache: RefCell::new(BTreeMap::new()) }
    }

    fn cos(&self, prec: u32) -> Interval {
        self.cache
            .borrow_mut()
            .entry(prec)
            .or_insert_with(|| self.angle.cos_interval(prec))
            .clone()
    }
}

fn signed_cos2(a: &AngleSpec) -> Option<(Ordering, Rational)> {
    if let Some(c) = a.exact_cos() {
        return Some((c.cmp(&Rational::zero()), &c * &c));
    }
    if !a.offset.is_zero() {
        return None;
    }
    let two = int(2);
    let mut k = &a.pi_coeff % &two;
    if k.is_negative() {
        k += &two;
    }
    let table = [
        (rat(1, 4), Ordering::Greater, rat(1, 2)),
        (rat(3, 4), Ordering::Less, rat(1, 2)),
        (rat(5, 4), Ordering::Less, rat(1, 2)),
        (rat(7, 4), Ordering::Greater, rat(1, 2)),
        (rat(1, 6), Ordering::Greater, rat(3, 4)),
        (rat(5, 6), Ordering::Less, rat(3, 4)),
        (rat(7, 6), Ordering::Less, rat(3, 4)),
        (rat(11, 6), Ordering::Greater, rat(3, 4)),
    ];
    table.into_iter().find(|(c, _, _)| *c == k).map(|(_, s, c2)| (s, c2))
}

/// `⌊π/α⌋`, exact when α = π/t.
fn full_bucket_count(alpha: &AngleSpec) -> Result<usize, VerifyError> {
    if let Some(t) = alpha.divides_pi() {
        return Ok(t as usize);
    }
    let mut prec = START_BITS;
    loop {
        let q = pi_over_alpha(alpha, prec);
        let (lo, hi) = (q.lo.floor(), q.hi.floor());
        if lo == hi {
            return Ok(lo.to_integer().to_usize().expect("bucket count fits"));
        }
        if prec >= MAX_BITS {
            return Err(VerifyError::AngleRange(alpha.to_string()));
        }
        prec *= 2;
    }
}

/// Compare `a·√(a2)` against `b·√(b2)`, given signs and squares.
fn cmp_signed_roots(sa: Ordering, a2: &Rational, sb: Ordering, b2: &Rational) -> Ordering {
    use Ordering::*;
    match (sa, sb) {
        (Equal, Equal) => Equal,
        (x, y) if x != y => x.cmp(&y),
        (Greater, _) => a2.cmp(b2),
        _ => b2.cmp(a2),
    }
}

fn sign(r: &Rational) -> Ordering {
    r.cmp(&Rational::zero())
}

struct Partitioner<'a> {
    frame: &'a Frame,
    boundaries: Vec<Boundary>,
}

impl<'a> Partitioner<'a> {
    fn new(frame: &'a Frame, alpha: &AngleSpec, k: usize) -> Self {
        // jα = π (α divides π) is never reached by a direction in [0, π)
        let top = if alpha.divides_pi().is_some() { k - 1 } else { k };
        let boundaries = (1..=top)
            .map(|j| Boundary::new(alpha.times(&int(j as i64))))
            .collect();
        Partitioner { frame, boundaries }
    }

    /// Bucket index of a class under the rotation.
    fn bucket(&self, class: usize, rot: &Rotation) -> Result<usize, u32> {
        match &self.frame.sqrt_norm2 {
            Some(q) => self.bucket_exact(class, rot, q),
            None => self.bucket_interval(class, rot),
        }
    }

    fn bucket_exact(&self, class: usize, rot: &Rotation, q: &Rational) -> Result<usize, u32> {
        let v = &self.frame.classes[class];
        let (x, y) = (v.x.clone(), &v.y / q);
        let rx = &rot.cos * &x - &rot.sin * &y;
        let ry = &rot.sin * &x + &rot.cos * &y;
        let d = canonical_direction(&Point2::new(rx, ry));
        let len2 = d.norm2();
        let cos2 = &d.x * &d.x / &len2;
        let sx = sign(&d.x);
        let mut count = 0;
        for b in &self.boundaries {
            // ψ >= β  ⟺  cos ψ <= cos β
            let ge = match &b.exact {
                Some((sb, c2)) => cmp_signed_roots(sx, &cos2, *sb, c2) != Ordering::Greater,
                None => {
                    let mut prec = START_BITS;
                    loop {
                        let mag = Interval::point(cos2.clone()).sqrt(prec);
                        let c = if sx == Ordering::Less { mag.neg() } else { mag };
                        let cb = b.cos(prec);
                        if c.hi < cb.lo {
                            break true;
                        }
                        if c.lo > cb.hi {
                            break false;
                        }
                        if prec >= MAX_BITS {
                            return Err(prec);
                        }
                        prec *= 2;
                    }
                }
            };
            if !ge {
                break;
            }
            count += 1;
        }
        Ok(count)
    }

    fn bucket_interval(&self, class: usize, rot: &Rotation) -> Result<usize, u32> {
        let v = &self.frame.classes[class];
        let mut prec = START_BITS;
        'escalate: loop {
            let inv = Interval::point(self.frame.norm2.clone()).sqrt(prec + 8);
            let y = Interval::point(v.y.clone()).div(&inv).expect("normal is nonzero");
            let x = Interval::point(v.x.clone());
            let rx = x.scale(&rot.cos).sub(&y.scale(&rot.sin));
            let ry = x.scale(&rot.sin).add(&y.scale(&rot.cos));
            let flip = match (ry.sign(), rx.sign()) {
                (Some(Ordering::Less), _) => true,
                (Some(_), _) => false,
                (None, _) if prec < MAX_BITS => {
                    prec *= 2;
                    continue;
                }
                _ => return Err(prec),
            };
            let len2 = &v.x * &v.x + &v.y * &v.y / &self.frame.norm2;
            let len = Interval::point(len2).sqrt(prec + 8);
            let rx = if flip { rx.neg() } else { rx };
            let c = rx.div(&len).expect("direction is nonzero");
            let mut count = 0;
            for b in &self.boundaries {
                let cb = b.cos(prec);
                if c.hi < cb.lo {
                    count += 1;
                } else if c.lo > cb.hi {
                    break;
                } else if prec < MAX_BITS {
                    prec *= 2;
                    continue 'escalate;
                } else {
                    return Err(prec);
                }
            }
            return Ok(count);
        }
    }

    fn class_buckets(&self, rot: &Rotation) -> Result<Vec<usize>, (usize, u32)> {
        (0..self.frame.classes.len())
            .map(|c| self.bucket(c, rot).map_err(|bits| (c, bits)))
            .collect()
    }
}

fn assemble(
    frame: &Frame,
    class_bucket: &[usize],
    alpha: &AngleSpec,
    k: usize,
    rotation: Rotation,
) -> DirectionPartition {
    let mut buckets = vec![Vec::new(); k + 1];
    for (e, &c) in frame.class_of.iter().enumerate() {
        buckets[class_bucket[c]].push(e);
    }
    let bucket_count = if alpha.divides_pi().is_some() { k } else { k + 1 };
    let last_bucket_size = buckets[k].len();
    DirectionPartition { rotation, alpha: alpha.clone(), bucket_count, buckets, last_bucket_size }
}

fn undecidable(frame: &Frame, (class, bits): (usize, u32)) -> VerifyError {
    let edge = frame.class_of.iter().position(|&c| c == class).unwrap_or(0);
    VerifyError::BoundaryUndecidable { edge, bits }
}

/// Assign every edge to its direction bucket after rotating by `rotation`.
pub fn direction_partition(
    g: &GeometricGraph,
    alpha: &AngleSpec,
    rotation: &Rotation,
) -> Result<DirectionPartition, VerifyError> {
    check_alpha(alpha)?;
    let frame = Frame::new(g)?;
    let k = full_bucket_count(alpha)?;
    let p = Partitioner::new(&frame, alpha, k);
    let cb = p.class_buckets(rotation).map_err(|e| undecidable(&frame, e))?;
    Ok(assemble(&frame, &cb, alpha, k, rotation.clone()))
}

/// Candidate rotations: one inside every arc between consecutive angles
/// at which some direction meets a bucket boundary.
fn candidate_angles(frame: &Frame, alpha: f64, k: usize) -> Vec<f64> {
    let pi = std::f64::consts::PI;
    let mut crit: Vec<f64> = Vec::new();
    for c in 0..frame.classes.len() {
        let phi = frame.approx_angle(c);
        for j in 0..=k {
            crit.push((j as f64 * alpha - phi).rem_euclid(pi));
        }
    }
    crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
    crit.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if crit.is_empty() {
        return vec![0.0];
    }
    let mut out = Vec::with_capacity(crit.len());
    for i in 0..crit.len() {
        let next = if i + 1 < crit.len() { crit[i + 1] } else { crit[0] + pi };
        out.push((crit[i] + next) / 2.0);
    }
    out
}

/// Sweep the rotation cells and keep the one with the fewest remainder
/// edges (first found on ties).
pub fn find_good_rotation(
    g: &GeometricGraph,
    alpha: &AngleSpec,
) -> Result<DirectionPartition, VerifyError> {
    check_alpha(alpha)?;
    let frame = Frame::new(g)?;
    let k = full_bucket_count(alpha)?;
    let p = Partitioner::new(&frame, alpha, k);
    let mult: Vec<usize> = {
        let mut m = vec![0; frame.classes.len()];
        for &c in &frame.class_of {
            m[c] += 1;
        }
        m
    };
    let alpha_f = to_f64(&alpha.interval(64).mid());
    let mut best: Option<(usize, Rotation, Vec<usize>)> = None;
    for theta in candidate_angles(&frame, alpha_f, k) {
        let rot = Rotation::approximating(theta);
        // a cell too thin for the rational approximation is skipped
        let Ok(cb) = p.class_buckets(&rot) else { continue };
        let last: usize = cb.iter().zip(&mult).filter(|(b, _)| **b == k).map(|(_, m)| m).sum();
        if best.as_ref().map_or(true, |(b, _, _)| last < *b) {
            best = Some((last, rot, cb));
        }
        if last == 0 {
            break;
        }
    }
    let (_, rot, cb) = match best {
        Some(b) => b,
        None => {
            let rot = Rotation::identity();
            let cb = p.class_buckets(&rot).map_err(|e| undecidable(&frame, e))?;
            (0, rot, cb)
        }
    };
    Ok(assemble(&frame, &cb, alpha, k, rot))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformBoundReport {
    pub alpha: AngleSpec,
    pub n: usize,
    pub m: usize,
    /// Certified enclosure of π/α.
    #[serde(with = "serde_rational")]
    pub pi_over_alpha_lo: Rational,
    #[serde(with = "serde_rational")]
    pub pi_over_alpha_hi: Rational,
    /// `lower(π/α)·(3n − 6)`; the asserted inequality uses this side.
    #[serde(with = "serde_rational")]
    pub bound: Rational,
    #[serde(with = "serde_rational")]
    pub slack: Rational,
    pub bound_holds: bool,
    pub partition: DirectionPartition,
    pub bucket_sizes: Vec<usize>,
    pub buckets_crossing_free: bool,
    pub buckets_within_planar_cap: bool,
    /// `⌊(π mod α)/π · m⌋`, from a certified lower enclosure.
    pub last_bucket_cap: u64,
    pub last_bucket_ok: bool,
    pub holds: bool,
}

/// Check `m <= (π/α)(3n − 6)` and the bucket certificate behind it.
pub fn uniform_bound_check(
    g: &GeometricGraph,
    alpha: &AngleSpec,
    bits: u32,
) -> Result<UniformBoundReport, VerifyError> {
    check_alpha(alpha)?;
    let threshold = rational_cos_bound(alpha, bits)?;
    if !is_alpha_ac(g, &threshold)?.verdict {
        return Err(VerifyError::NotAlphaAc(alpha.to_string()));
    }
    let (n, m) = (g.n(), g.m());
    let ratio = pi_over_alpha(alpha, 128);
    let planar = 3 * n as i64 - 6;
    let bound = &ratio.lo * int(planar);
    let bound_holds = int(m as i64) <= bound;
    let partition = find_good_rotation(g, alpha)?;
    let chart = Chart::new(g)?;
    let mut crossing_free = true;
    for b in &partition.buckets {
        crossing_free &= chart.crossing_pairs_among(b)?.is_empty();
    }
    let cap = if n >= 3 { planar as usize } else { n.saturating_sub(1) };
    let within_cap = partition.buckets.iter().all(|b| b.len() <= cap);
    let k = partition.buckets.len() - 1;
    let last_bucket_cap = if alpha.divides_pi().is_some() {
        0
    } else {
        // (π − kα)/π · m, rounded down from its certified lower end
        let pi = Interval::pi(136);
        let rem = pi.sub(&alpha.interval(136).scale(&int(k as i64)));
        let x = rem.div(&pi).expect("pi is positive").scale(&int(m as i64));
        x.lo.floor().to_integer().to_u64().unwrap_or(0)
    };
    let last_bucket_ok = partition.last_bucket_size as u64 <= last_bucket_cap;
    let bucket_sizes = partition.buckets.iter().map(Vec::len).collect();
    Ok(UniformBoundReport {
        alpha: alpha.clone(),
        n,
        m,
        slack: &bound - int(m as i64),
        pi_over_alpha_lo: ratio.lo,
        pi_over_alpha_hi: ratio.hi,
        bound,
        bound_holds,
        holds: bound_holds && crossing_free && within_cap && last_bucket_ok,
        partition,
        bucket_sizes,
        buckets_crossing_free: crossing_free,
        buckets_within_planar_cap: within_cap,
        last_bucket_cap,
        last_bucket_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> GeometricGraph {
        GeometricGraph::from_int_points(
            &[(0, 0), (1, 0), (1, 1), (0, 1)],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)],
        )
    }

    #[test]
    fn pythagorean_rotation_is_on_the_circle() {
        let r = Rotation::approximating(0.7);
        assert_eq!(&r.cos * &r.cos + &r.sin * &r.sin, int(1));
        assert!((r.approx_radians() - 0.7).abs() < 1e-9);
    }

    #[test]
    fn k4_right_angle_identity() {
        let p = direction_partition(&k4(), &AngleSpec::pi_over(2), &Rotation::identity()).unwrap();
        assert_eq!(p.bucket_count, 2);
        assert_eq!(p.buckets, vec![vec![0, 2, 4], vec![1, 3, 5], vec![]]);
        assert_eq!(p.last_bucket_size, 0);
    }

    #[test]
    fn grid_axes_split() {
        let g = GeometricGraph::from_int_points(
            &[(0, 0), (1, 0), (0, 1), (1, 1)],
            &[(0, 1), (2, 3), (0, 2), (1, 3)],
        );
        let p = direction_partition(&g, &AngleSpec::pi_over(2), &Rotation::identity()).unwrap();
        assert_eq!(p.buckets[0], vec![0, 1]);
        assert_eq!(p.buckets[1], vec![2, 3]);
    }

    #[test]
    fn single_direction_lands_in_a_full_bucket() {
        let g = GeometricGraph::from_int_points(&[(0, 0), (2, 1), (0, 3), (2, 4)], &[(0, 1), (2, 3)]);
        let p = find_good_rotation(&g, &AngleSpec::pi_over(3)).unwrap();
        assert_eq!(p.last_bucket_size, 0);
        assert_eq!(p.buckets.len(), 4);
    }

    #[test]
    fn irrational_boundaries_are_certified() {
        // α = 2/3 rad: four full buckets and a remainder of width π − 8/3
        let alpha = AngleSpec::radians(rat(2, 3));
        let g = GeometricGraph::from_int_points(
            &[(0, 0), (10, 0), (0, 1), (10, 8), (0, 2), (-3, 9)],
            &[(0, 1), (2, 3), (4, 5)],
        );
        let p = direction_partition(&g, &alpha, &Rotation::identity()).unwrap();
        // angles 0, atan(0.7) ≈ 0.611, π − atan(7/3) ≈ 1.976
        assert_eq!(p.buckets, vec![vec![0, 1], vec![], vec![2], vec![], vec![]]);
        assert_eq!(p.bucket_count, 5);
    }

    #[test]
    fn k4_uniform_bound() {
        let r = uniform_bound_check(&k4(), &AngleSpec::pi_over(2), 64).unwrap();
        assert!(r.holds);
        assert_eq!(r.bound, int(12));
        assert_eq!(r.last_bucket_cap, 0);
    }
}
