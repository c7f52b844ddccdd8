use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Embedding, GeometricGraph};
use crate::exact_geom::rational::common_denominator;
use crate::exact_geom::Dot;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    IndexOutOfRange { edge: usize, index: usize },
    SelfLoop { edge: usize },
    DuplicateEdge { first: usize, second: usize },
    DuplicatePoint { first: usize, second: usize },
    VertexOnEdge { vertex: usize, edge: usize },
    EdgeOverlap { first: usize, second: usize },
    ZeroPlaneNormal,
    OffPlane { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange { edge, index } => {
                write!(f, "edge {edge} references missing vertex {index}")
            }
            Violation::SelfLoop { edge } => write!(f, "edge {edge} is a self-loop"),
            Violation::DuplicateEdge { first, second } => {
                write!(f, "edges {first} and {second} join the same vertices")
            }
            Violation::DuplicatePoint { first, second } => {
                write!(f, "vertices {first} and {second} coincide")
            }
            Violation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies inside edge {edge}")
            }
            Violation::EdgeOverlap { first, second } => {
                write!(f, "edges {first} and {second} overlap")
            }
            Violation::ZeroPlaneNormal => write!(f, "plane normal is zero"),
            Violation::OffPlane { vertex } => write!(f, "vertex {vertex} is off the stored plane"),
        }
    }
}

/// All invariant violations, empty for a valid graph.
pub fn validate(g: &GeometricGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = g.n();

    // structural checks first; geometry needs in-range indices
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut usable = Vec::new();
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        let mut ok = true;
        for idx in [a, b] {
            if idx >= n {
                out.push(Violation::IndexOutOfRange { edge: e, index: idx });
                ok = false;
            }
        }
        if a == b {
            out.push(Violation::SelfLoop { edge: e });
            ok = false;
        }
        let key = (a.min(b), a.max(b));
        if let Some(&first) = seen.get(&key) {
            out.push(Violation::DuplicateEdge { first, second: e });
            ok = false;
        } else {
            seen.insert(key, e);
        }
        if ok {
            usable.push(e);
        }
    }

    if let Embedding::Spatial { points, plane_normal: Some(nv) } = &g.embedding {
        if nv.is_zero() {
            out.push(Violation::ZeroPlaneNormal);
        } else {
            for (i, p) in points.iter().enumerate() {
                if !p.dot(nv).is_zero() {
                    out.push(Violation::OffPlane { vertex: i });
                }
            }
        }
    }

    let pts = lift_points(g);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]).then(a.cmp(&b)));
    for w in order.windows(2) {
        if pts[w[0]] == pts[w[1]] {
            out.push(Violation::DuplicatePoint { first: w[0].min(w[1]), second: w[0].max(w[1]) });
        }
    }

    // vertex strictly inside an edge, bounding boxes first
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&a, &b| pts[a][0].cmp(&pts[b][0]));
    for &e in &usable {
        let (a, b) = g.edges[e];
        let (pa, pb) = (&pts[a], &pts[b]);
        let lo: Vec<&BigInt> = (0..3).map(|k| (&pa[k]).min(&pb[k])).collect();
        let hi: Vec<&BigInt> = (0..3).map(|k| (&pa[k]).max(&pb[k])).collect();
        let start = by_x.partition_point(|&v| &pts[v][0] < lo[0]);
        for &v in &by_x[start..] {
            let p = &pts[v];
            if &p[0] > hi[0] {
                break;
            }
            if v == a || v == b || (1..3).any(|k| &p[k] < lo[k] || &p[k] > hi[k]) {
                continue;
            }
            if strictly_inside(p, pa, pb) {
                out.push(Violation::VertexOnEdge { vertex: v, edge: e });
            }
        }
    }

    // collinear overlaps: only edges on a common line can overlap
    let mut lines: HashMap<([BigInt; 3], [BigInt; 3]), Vec<usize>> = HashMap::new();
    for &e in &usable {
        let (a, b) = g.edges[e];
        let dir = primitive3(&sub(&pts[b], &pts[a]));
        let moment = cross(&dir, &pts[a]);
        lines.entry((dir, moment)).or_default().push(e);
    }
    let mut groups: Vec<Vec<usize>> = lines.into_values().filter(|v| v.len() > 1).collect();
    groups.sort();
    for group in groups {
        for (i, &e) in group.iter().enumerate() {
            for &f in &group[i + 1..] {
                let (a1, b1) = g.edges[e];
                let (a2, b2) = g.edges[f];
                let dir = sub(&pts[b1], &pts[a1]);
                let t = |p: &[BigInt; 3]| dot(&sub(p, &pts[a1]), &dir);
                let (s1, t1) = (BigInt::zero(), dot(&dir, &dir));
                let (u, w) = (t(&pts[a2]), t(&pts[b2]));
                let (s2, t2) = if u <= w { (u, w) } else { (w, u) };
                if s1.max(s2) < t1.min(t2) {
                    out.push(Violation::EdgeOverlap { first: e.min(f), second: e.max(f) });
                }
            }
        }
    }
    out
}

fn lift_points(g: &GeometricGraph) -> Vec<[BigInt; 3]> {
    let pts = g.points3();
    let den = common_denominator(pts.iter().flat_map(|p| p.coords()));
    pts.iter()
        .map(|p| {
            let c = p.coords();
            [0, 1, 2].map(|k| c[k].numer() * (&den / c[k].denom()))
        })
        .collect()
}

fn sub(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn dot(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Primitive integer direction with the first nonzero component positive.
fn primitive3(v: &[BigInt; 3]) -> [BigInt; 3] {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    let mut out = v.clone().map(|c| c / &g);
    if let Some(first) = out.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            out = out.map(|c| -c);
        }
    }
    out
}

fn strictly_inside(p: &[BigInt; 3], a: &[BigInt; 3], b: &[BigInt; 3]) -> bool {
    let ab = sub(b, a);
    let ap = sub(p, a);
    if cross(&ab, &ap).iter().any(|c| !c.is_zero()) {
        return false;
    }
    let t = dot(&ap, &ab);
    t.is_positive() && t < dot(&ab, &ab)
}
