//! Integer-lifted view of a flat graph for exhaustive crossing scans.
//!
//! All coordinates are multiplied by the common denominator, which preserves
//! orientation signs and cosines. Coplanar 3D graphs are charted by dropping
//! the coordinate along which the plane normal is largest; this affine chart
//! preserves incidences while angles are still measured on the 3D vectors.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Embedding, GeometricGraph, GraphError};
use crate::exact_geom::rational::common_denominator;
use crate::exact_geom::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingPair {
    pub e1: usize,
    pub e2: usize,
}

pub struct Chart {
    xy: Vec<[BigInt; 2]>,
    metric: Vec<Vec<BigInt>>,
    edges: Vec<(usize, usize)>,
}

impl Chart {
    pub fn new(g: &GeometricGraph) -> Result<Chart, GraphError> {
        match &g.embedding {
            Embedding::Planar(points) => {
                let den = common_denominator(points.iter().flat_map(|p| [&p.x, &p.y]));
                let lift = |r: &Rational| lift(r, &den);
                let xy: Vec<[BigInt; 2]> = points.iter().map(|p| [lift(&p.x), lift(&p.y)]).collect();
                let metric = xy.iter().map(|c| c.to_vec()).collect();
                Ok(Chart { xy, metric, edges: g.edges.clone() })
            }
            Embedding::Spatial { points, plane_normal: Some(n) } => {
                let axis = [&n.x, &n.y, &n.z]
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.abs().cmp(&b.1.abs()))
                    .map(|(i, _)| i)
                    .unwrap();
                if n.coords()[axis].is_zero() {
                    return Err(GraphError::NotPlanar);
                }
                let keep: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
                let den = common_denominator(points.iter().flat_map(|p| p.coords()));
                let metric: Vec<Vec<BigInt>> = points
                    .iter()
                    .map(|p| p.coords().iter().map(|c| lift(c, &den)).collect())
                    .collect();
                let xy = metric
                    .iter()
                    .map(|c: &Vec<BigInt>| [c[keep[0]].clone(), c[keep[1]].clone()])
                    .collect();
                Ok(Chart { xy, metric, edges: g.edges.clone() })
            }
            Embedding::Spatial { plane_normal: None, .. } => Err(GraphError::NotPlanar),
        }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Every unordered pair of edges whose interiors cross in exactly one
    /// point, sorted. A collinear overlap is an error.
    pub fn crossing_pairs(&self) -> Result<Vec<CrossingPair>, GraphError> {
        self.crossing_pairs_among(&(0..self.edges.len()).collect::<Vec<_>>())
    }

    /// Crossing pairs restricted to a subset of edges.
    pub fn crossing_pairs_among(&self, subset: &[usize]) -> Result<Vec<CrossingPair>, GraphError> {
        let boxes: Vec<([&BigInt; 2], [&BigInt; 2])> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (p, q) = (&self.xy[a], &self.xy[b]);
                let minx = (&p[0]).min(&q[0]);
                let maxx = (&p[0]).max(&q[0]);
                let miny = (&p[1]).min(&q[1]);
                let maxy = (&p[1]).max(&q[1]);
                ([minx, miny], [maxx, maxy])
            })
            .collect();
        let mut order: Vec<usize> = subset.to_vec();
        order.sort_by(|&a, &b| boxes[a].0[0].cmp(boxes[b].0[0]).then(a.cmp(&b)));
        let mut out = Vec::new();
        for (k, &e) in order.iter().enumerate() {
            let (lo, hi) = &boxes[e];
            for &f in &order[k + 1..] {
                let (flo, fhi) = &boxes[f];
                if flo[0] > hi[0] {
                    break;
                }
                if flo[1] > hi[1] || fhi[1] < lo[1] {
                    continue;
                }
                if self.edges_cross(e, f)? {
                    out.push(CrossingPair { e1: e.min(f), e2: e.max(f) });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn orient(&self, a: usize, b: usize, c: usize) -> Ordering {
        let (pa, pb, pc) = (&self.xy[a], &self.xy[b], &self.xy[c]);
        let det = (&pb[0] - &pa[0]) * (&pc[1] - &pa[1]) - (&pb[1] - &pa[1]) * (&pc[0] - &pa[0]);
        det.sign_ordering()
    }

    /// Proper crossing test on chart coordinates.
    pub fn edges_cross(&self, e: usize, f: usize) -> Result<bool, GraphError> {
        let (a1, b1) = self.edges[e];
        let (a2, b2) = self.edges[f];
        let o1 = self.orient(a1, b1, a2);
        let o2 = self.orient(a1, b1, b2);
        if o1 == Ordering::Equal && o2 == Ordering::Equal {
            // collinear: overlap iff the projections share a positive-length piece
            let axis = if self.xy[a1][0] != self.xy[b1][0] { 0 } else { 1 };
            let (s1, t1) = sorted(&self.xy[a1][axis], &self.xy[b1][axis]);
            let (s2, t2) = sorted(&self.xy[a2][axis], &self.xy[b2][axis]);
            if s1.max(s2) < t1.min(t2) {
                return Err(GraphError::CollinearOverlap(e.min(f), e.max(f)));
            }
            return Ok(false);
        }
        if o1 == Ordering::Equal || o2 == Ordering::Equal || o1 == o2 {
            return Ok(false);
        }
        let o3 = self.orient(a2, b2, a1);
        let o4 = self.orient(a2, b2, b1);
        Ok(o3 != Ordering::Equal && o4 != Ordering::Equal && o3 != o4)
    }

    fn direction(&self, e: usize) -> Vec<BigInt> {
        let (a, b) = self.edges[e];
        self.metric[b].iter().zip(&self.metric[a]).map(|(x, y)| x - y).collect()
    }

    fn dot_and_norms(&self, e: usize, f: usize) -> (BigInt, BigInt, BigInt) {
        let d1 = self.direction(e);
        let d2 = self.direction(f);
        let dot = d1.iter().zip(&d2).map(|(a, b)| a * b).sum::<BigInt>();
        let n1 = d1.iter().map(|a| a * a).sum::<BigInt>();
        let n2 = d2.iter().map(|a| a * a).sum::<BigInt>();
        (dot, n1, n2)
    }

    /// Squared cosine of the angle between the two edges.
    pub fn cos2(&self, e: usize, f: usize) -> Rational {
        let (dot, n1, n2) = self.dot_and_norms(e, f);
        Rational::new(&dot * &dot, n1 * n2)
    }

    /// `cos²(angle) <= bound`, evaluated without building rationals.
    pub fn cos2_at_most(&self, e: usize, f: usize, bound: &Rational) -> bool {
        let (dot, n1, n2) = self.dot_and_norms(e, f);
        &dot * &dot * bound.denom() <= bound.numer() * n1 * n2
    }
}

fn lift(r: &Rational, den: &BigInt) -> BigInt {
    r.numer() * (den / r.denom())
}

fn sorted<'a>(a: &'a BigInt, b: &'a BigInt) -> (&'a BigInt, &'a BigInt) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}
