//! Half-edge mesh of a planarization.
//!
//! Arc `i` yields half-edges `2i` (a → b) and `2i + 1` (b → a), so the twin
//! of `h` is `h ^ 1`. Faces lie to the left of their half-edges: bounded
//! faces are walked counter-clockwise.

use serde::{Deserialize, Serialize};

use super::planarize::{Node, Planarization};
use super::{shape_label, ArrangementError};
use crate::exact_geom::{cmp_polar, Point2};

#[derive(Debug, Clone, PartialEq)]
pub struct HalfEdgeMesh {
    pub nodes: Vec<Node>,
    /// Origin node per half-edge.
    pub origin: Vec<usize>,
    pub next: Vec<usize>,
    pub prev: Vec<usize>,
    pub face_of: Vec<usize>,
    /// A half-edge on each face; `None` only for the face of an edgeless
    /// single-vertex graph.
    pub face_rep: Vec<Option<usize>>,
    pub outer: usize,
    /// Source edge of each arc.
    pub arc_source: Vec<usize>,
    /// Outgoing half-edges per node in counter-clockwise order.
    pub around: Vec<Vec<usize>>,
}

impl HalfEdgeMesh {
    pub fn twin(h: usize) -> usize {
        h ^ 1
    }

    pub fn dest(&self, h: usize) -> usize {
        self.origin[h ^ 1]
    }

    pub fn arc_of(h: usize) -> usize {
        h / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.origin.len()
    }

    pub fn face_count(&self) -> usize {
        self.face_rep.len()
    }

    pub fn point(&self, node: usize) -> &Point2 {
        &self.nodes[node].point
    }

    pub fn vector(&self, h: usize) -> Point2 {
        self.point(self.dest(h)).sub(self.point(self.origin[h]))
    }

    /// Half-edges of a face in walk order.
    pub fn face_walk(&self, f: usize) -> Vec<usize> {
        let Some(start) = self.face_rep[f] else { return Vec::new() };
        let mut out = vec![start];
        let mut h = self.next[start];
        while h != start {
            out.push(h);
            h = self.next[h];
        }
        out
    }
}

pub fn build_mesh(p: &Planarization) -> Result<HalfEdgeMesh, ArrangementError> {
    let components = count_components(p.nodes.len(), p.arcs.iter().map(|a| (a.a, a.b)));
    if components > 1 {
        return Err(ArrangementError::Disconnected { components });
    }
    Ok(build_mesh_unchecked(p))
}

/// Number of connected components of the planarization.
pub fn component_count(p: &Planarization) -> usize {
    count_components(p.nodes.len(), p.arcs.iter().map(|a| (a.a, a.b)))
}

/// Face orbits without the connectivity check. For disconnected input each
/// component contributes its own orbits and the components are not nested,
/// so only the orbit lengths are meaningful.
pub fn build_mesh_unchecked(p: &Planarization) -> HalfEdgeMesh {
    let nn = p.nodes.len();
    let mut origin = Vec::with_capacity(2 * p.arcs.len());
    for a in &p.arcs {
        origin.push(a.a);
        origin.push(a.b);
    }
    let hcount = origin.len();
    let dest = |h: usize| origin[h ^ 1];
    let vec_of = |h: usize| p.nodes[dest(h)].point.sub(&p.nodes[origin[h]].point);
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); nn];
    for h in 0..hcount {
        around[origin[h]].push(h);
    }
    let mut pos = vec![0usize; hcount];
    for list in around.iter_mut() {
        let mut keyed: Vec<(Point2, usize)> = list.iter().map(|&h| (vec_of(h), h)).collect();
        keyed.sort_by(|a, b| cmp_polar(&a.0, &b.0));
        *list = keyed.into_iter().map(|(_, h)| h).collect();
        for (i, &h) in list.iter().enumerate() {
            pos[h] = i;
        }
    }
    // next(h) is the out-edge at dest(h) just clockwise of twin(h)
    let mut next = vec![0usize; hcount];
    let mut prev = vec![0usize; hcount];
    for h in 0..hcount {
        let t = h ^ 1;
        let list = &around[origin[t]];
        let k = pos[t];
        let n = list[(k + list.len() - 1) % list.len()];
        next[h] = n;
        prev[n] = h;
    }
    let mut face_of = vec![usize::MAX; hcount];
    let mut face_rep = Vec::new();
    for h in 0..hcount {
        if face_of[h] != usize::MAX {
            continue;
        }
        let f = face_rep.len();
        face_rep.push(Some(h));
        let mut g = h;
        loop {
            face_of[g] = f;
            g = next[g];
            if g == h {
                break;
            }
        }
    }
    let outer = if hcount == 0 {
        face_rep.push(None);
        0
    } else {
        // topmost, then rightmost node: nothing leaves it upward or to the
        // right, so the upward ray sits in the wedge after its last out-edge
        let top = (0..nn)
            .filter(|&v| !around[v].is_empty())
            .max_by(|&a, &b| {
                let (pa, pb) = (&p.nodes[a].point, &p.nodes[b].point);
                pa.y.cmp(&pb.y).then(pa.x.cmp(&pb.x))
            })
            .unwrap();
        face_of[*around[top].last().unwrap()]
    };
    HalfEdgeMesh {
        nodes: p.nodes.clone(),
        origin,
        next,
        prev,
        face_of,
        face_rep,
        outer,
        arc_source: p.arcs.iter().map(|a| a.source_edge).collect(),
        around,
    }
}

fn count_components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = n;
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            comps -= 1;
        }
    }
    comps
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceMetrics {
    pub face: usize,
    /// `|f|`: half-edges in the facial walk.
    pub walk_length: usize,
    /// `v(f)`: walk steps that start at an original vertex.
    pub original_vertex_steps: usize,
    pub is_outer: bool,
    pub shape_label: String,
}

pub fn face_metrics(mesh: &HalfEdgeMesh) -> Vec<FaceMetrics> {
    (0..mesh.face_count())
        .map(|f| {
            let walk = mesh.face_walk(f);
            let v = walk.iter().filter(|&&h| mesh.nodes[mesh.origin[h]].is_original()).count();
            FaceMetrics {
                face: f,
                walk_length: walk.len(),
                original_vertex_steps: v,
                is_outer: f == mesh.outer,
                shape_label: shape_label(walk.len(), v),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub characteristic: i64,
    pub walk_length_sum: usize,
    pub holds: bool,
}

/// `V − E + F = 2` and `Σ|f| = 2E`.
pub fn euler_check(mesh: &HalfEdgeMesh) -> EulerReport {
    let vertices = mesh.nodes.len();
    let edges = mesh.half_edge_count() / 2;
    let faces = mesh.face_count();
    let characteristic = vertices as i64 - edges as i64 + faces as i64;
    let walk_length_sum: usize = (0..faces).map(|f| mesh.face_walk(f).len()).sum();
    EulerReport {
        vertices,
        edges,
        faces,
        characteristic,
        walk_length_sum,
        holds: characteristic == 2 && walk_length_sum == 2 * edges,
    }
}
