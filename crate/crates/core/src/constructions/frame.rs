//! t-frames: `t` lattice lines through the origin at nearly equal angles.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{CoveredArrangement, Line2};
use super::ConstructionError;
use crate::exact_geom::{
    canonical_direction, crossing_angle_at_least, int, primitive, rat, rational_cos_bound, AngleSpec,
    Interval, Point2, Rational,
};

const START_BITS: u32 = 64;
const MAX_BITS: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub t: usize,
    #[serde(with = "crate::exact_geom::rational::serde_rational")]
    pub delta: Rational,
    /// Primitive lattice direction of each line, in order of target angle.
    pub directions: Vec<(i64, i64)>,
    /// `max(|a|, |b|)` over the directions.
    pub q: i64,
}

impl Frame {
    pub fn lines(&self) -> Vec<Line2> {
        self.directions
            .iter()
            .map(|&(a, b)| Line2::new(Point2::from_ints(0, 0), &Point2::from_ints(a, b)))
            .collect()
    }
}

fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("frame coordinates fit in i64")
}

/// Lattice point nearest to the ideal point `R·(cos φ, sin φ)`, with ties
/// (undecided after escalation) broken by smaller `|a|`, then `|b|`, then
/// positive `a`.
fn nearest_lattice_point(phi: &AngleSpec, radius: impl Fn(u32) -> Interval) -> (i64, i64) {
    let mut prec = START_BITS;
    loop {
        let r = radius(prec);
        let c = r.mul(&phi.cos_interval(prec));
        let s = r.mul(&phi.interval(prec + 8).sin(prec));
        let (cx, cy) = (floor_i64(&c.mid()), floor_i64(&s.mid()));
        let cands: Vec<((i64, i64), Interval)> = (cx - 1..=cx + 2)
            .flat_map(|a| (cy - 1..=cy + 2).map(move |b| (a, b)))
            .filter(|&p| p != (0, 0))
            .map(|(a, b)| {
                let d = c.sub(&Interval::point(int(a))).square().add(&s.sub(&Interval::point(int(b))).square());
                ((a, b), d)
            })
            .collect();
        let best_hi = cands.iter().map(|(_, d)| d.hi.clone()).min().unwrap();
        let mut close: Vec<(i64, i64)> =
            cands.iter().filter(|(_, d)| d.lo <= best_hi).map(|(p, _)| *p).collect();
        if close.len() == 1 || prec >= MAX_BITS {
            close.sort_by(|p, q| {
                p.0.abs()
                    .cmp(&q.0.abs())
                    .then(p.1.abs().cmp(&q.1.abs()))
                    .then(q.0.cmp(&p.0))
            });
            return close[0];
        }
        prec *= 2;
    }
}

/// Build the frame for `t` and `delta` and certify its properties.
pub fn t_frame(t: usize, delta: &Rational) -> Result<Frame, ConstructionError> {
    if t < 2 {
        return Err(ConstructionError::InvalidParameter(format!("t = {t} must be at least 2")));
    }
    let step = AngleSpec::pi_over(t as i64);
    let delta_angle = AngleSpec::radians(delta.clone());
    if !delta.is_positive() || step.cmp_certified(&delta_angle, MAX_BITS) != Some(Ordering::Greater) {
        return Err(ConstructionError::InvalidParameter(format!("delta {delta} must lie in (0, pi/{t})")));
    }
    let half = delta / int(2);
    // R = 1 / (√2 · sin(δ/2))
    let radius = |prec: u32| {
        let s = Interval::point(half.clone()).sin(prec + 8);
        let root2 = Interval::point(int(2)).sqrt(prec + 8);
        Interval::point(int(1)).div(&root2.mul(&s)).expect("sin(δ/2) > 0").round_out(prec)
    };
    let cos_half = Interval::point(half.clone()).cos(START_BITS);
    let mut directions = Vec::with_capacity(t);
    for i in 0..t {
        let phi = AngleSpec::new(rat(i as i64, t as i64), Rational::zero());
        let (a, b) = nearest_lattice_point(&phi, radius);
        let p = primitive(&Point2::from_ints(a, b));
        let (a, b) = (floor_i64(&p.x), floor_i64(&p.y));
        // deviation from iπ/t at most δ/2: cos(dev) >= cos(δ/2)
        let len = Interval::point(int(a * a + b * b)).sqrt(START_BITS);
        let dot = phi
            .cos_interval(START_BITS)
            .scale(&int(a))
            .add(&phi.interval(START_BITS + 8).sin(START_BITS).scale(&int(b)));
        let cos_dev = dot.div(&len).expect("nonzero direction");
        if cos_dev.lo <= cos_half.hi {
            return Err(ConstructionError::Frame(format!(
                "line {i} through ({a}, {b}) is not certified within delta/2 of {phi}"
            )));
        }
        directions.push((a, b));
    }
    let thr = rational_cos_bound(&step.minus(delta), 64)?;
    for i in 0..t {
        for j in i + 1..t {
            let (d1, d2) = (directions[i], directions[j]);
            let ok = crossing_angle_at_least(
                &Point2::from_ints(d1.0, d1.1),
                &Point2::from_ints(d2.0, d2.1),
                &thr,
            )?;
            if !ok {
                return Err(ConstructionError::Frame(format!("lines {i} and {j} meet below pi/{t} - delta")));
            }
        }
    }
    let q = directions.iter().map(|&(a, b)| a.abs().max(b.abs())).max().unwrap();
    // q <= 2√2π/δ + 1/√2 < ⌈2√2π/δ⌉ + 1
    let bound = Interval::pi(START_BITS)
        .mul(&Interval::point(int(8)).sqrt(START_BITS))
        .scale(&delta.recip());
    if int(q - 1) > bound.hi.ceil() {
        return Err(ConstructionError::Frame(format!("q = {q} exceeds the radius bound")));
    }
    Ok(Frame { t, delta: delta.clone(), directions, q })
}

/// Lines of `t_frame(t, delta)` translated over the `r × r` grid.
pub fn frame_cover(t: usize, delta: &Rational, r: usize) -> Result<CoveredArrangement, ConstructionError> {
    cover_with_frame(&t_frame(t, delta)?, r)
}

/// Translate the frame to every point of the boundary bands of width `q+1`
/// of the `r × r` grid and certify that each grid point lies on `t` lines.
pub fn cover_with_frame(frame: &Frame, r: usize) -> Result<CoveredArrangement, ConstructionError> {
    if r < 1 {
        return Err(ConstructionError::InvalidParameter("r must be positive".into()));
    }
    let r = r as i64;
    let q = frame.q;
    let in_band = |i: i64, j: i64| i <= q || j <= q || i >= r - 1 - q || j >= r - 1 - q;
    let dirs: Vec<(i64, i64)> = frame
        .directions
        .iter()
        .map(|&(a, b)| {
            let c = canonical_direction(&Point2::from_ints(a, b));
            (floor_i64(&c.x), floor_i64(&c.y))
        })
        .collect();
    // a line is identified by its direction and `a·y − b·x`
    let mut keys: BTreeSet<(usize, i64)> = BTreeSet::new();
    let mut lines = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if !in_band(i, j) {
                continue;
            }
            for (d, &(a, b)) in dirs.iter().enumerate() {
                if keys.insert((d, a * j - b * i)) {
                    lines.push(Line2::new(Point2::from_ints(i, j), &Point2::from_ints(a, b)));
                }
            }
        }
    }
    let mut points = Vec::with_capacity((r * r) as usize);
    for i in 0..r {
        for j in 0..r {
            let on = dirs.iter().enumerate().filter(|(d, &(a, b))| keys.contains(&(*d, a * j - b * i))).count();
            if on < frame.t {
                return Err(ConstructionError::Coverage { x: i, y: j, lines: on });
            }
            points.push(Point2::from_ints(i, j));
        }
    }
    let arr = CoveredArrangement::assemble(frame.t, lines, points);
    if arr.min_incidence() < frame.t {
        return Err(ConstructionError::Internal("exact incidence disagrees with the line keys".into()));
    }
    Ok(arr)
}
