//! Deterministic SVG drawings of graphs, planarizations and transfers.
//!
//! Coordinates pass through `f64` for display only; nothing here feeds back
//! into a verification path. Numbers are printed with fixed precision so
//! identical inputs give byte-identical output.

use std::fmt::Write as _;
use std::path::Path;

use crate::arrangement::Planarization;
use crate::charging::{Arrangement, ChargeLedger};
use crate::exact_geom::rational::to_f64;
use crate::graph_model::{Embedding, GeometricGraph};

/// Canvas size and stroke styles per element class.
#[derive(Debug, Clone, PartialEq)]
pub struct SvgScene {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub edge_style: String,
    pub arc_style: String,
    pub transfer_style: String,
    pub vertex_radius: f64,
}

impl Default for SvgScene {
    fn default() -> Self {
        SvgScene {
            width: 640.0,
            height: 640.0,
            margin: 24.0,
            edge_style: "stroke:#222;stroke-width:1.2".into(),
            arc_style: "stroke:#345;stroke-width:1.2".into(),
            transfer_style: "stroke:#c22;stroke-width:1.4".into(),
            vertex_radius: 3.0,
        }
    }
}

/// Fits the drawing into the canvas, y pointing up.
struct View {
    scale: f64,
    min_x: f64,
    max_y: f64,
    margin: f64,
}

impl View {
    fn fit(scene: &SvgScene, pts: &[(f64, f64)]) -> View {
        let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in pts {
            lo_x = lo_x.min(x);
            hi_x = hi_x.max(x);
            lo_y = lo_y.min(y);
            hi_y = hi_y.max(y);
        }
        if pts.is_empty() {
            (lo_x, hi_x, lo_y, hi_y) = (0.0, 1.0, 0.0, 1.0);
        }
        let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
        let usable = (scene.width.min(scene.height) - 2.0 * scene.margin).max(1.0);
        View { scale: usable / span, min_x: lo_x, max_y: hi_y, margin: scene.margin }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (self.margin + (x - self.min_x) * self.scale, self.margin + (self.max_y - y) * self.scale)
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn header(out: &mut String, scene: &SvgScene, with_arrow: bool) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(scene.width),
        num(scene.height),
        num(scene.width),
        num(scene.height)
    );
    if with_arrow {
        let _ = writeln!(
            out,
            r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#c22"/></marker></defs>"##
        );
    }
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn line(out: &mut String, class: &str, style: &str, a: (f64, f64), b: (f64, f64), extra: &str) {
    let _ = writeln!(
        out,
        r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" style="{style}"{extra}/>"#,
        num(a.0),
        num(a.1),
        num(b.0),
        num(b.1)
    );
}

fn circle(out: &mut String, class: &str, c: (f64, f64), r: f64, filled: bool) {
    let fill = if filled { "#111" } else { "white" };
    let _ = writeln!(
        out,
        r##"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}" stroke="#111"/>"##,
        num(c.0),
        num(c.1),
        num(r)
    );
}

/// Display coordinates; spatial drawings use an oblique view.
fn display_points(g: &GeometricGraph) -> Vec<(f64, f64)> {
    match &g.embedding {
        Embedding::Planar(p) => p.iter().map(|q| (to_f64(&q.x), to_f64(&q.y))).collect(),
        Embedding::Spatial { points, .. } => points
            .iter()
            .map(|q| {
                let (x, y, z) = (to_f64(&q.x), to_f64(&q.y), to_f64(&q.z));
                (x + 0.5 * y, z + 0.35 * y)
            })
            .collect(),
    }
}

/// Edges as lines, vertices as filled circles.
pub fn render_graph(g: &GeometricGraph, scene: &SvgScene) -> String {
    let pts = display_points(g);
    let view = View::fit(scene, &pts);
    let mut out = String::new();
    header(&mut out, scene, false);
    for &(a, b) in &g.edges {
        line(&mut out, "edge", &scene.edge_style, view.map(pts[a]), view.map(pts[b]), "");
    }
    for &p in &pts {
        circle(&mut out, "original", view.map(p), scene.vertex_radius, true);
    }
    out.push_str("</svg>\n");
    out
}

fn node_points(nodes: &[crate::arrangement::Node]) -> Vec<(f64, f64)> {
    nodes.iter().map(|n| (to_f64(&n.point.x), to_f64(&n.point.y))).collect()
}

fn arrangement_body(out: &mut String, p: &Planarization, scene: &SvgScene, view: &View, pts: &[(f64, f64)]) {
    for a in &p.arcs {
        line(out, "arc", &scene.arc_style, view.map(pts[a.a]), view.map(pts[a.b]), "");
    }
    for (i, n) in p.nodes.iter().enumerate() {
        let class = if n.is_original() { "original" } else { "crossing" };
        circle(out, class, view.map(pts[i]), scene.vertex_radius, n.is_original());
    }
}

/// Arcs of G′; original vertices filled, crossing vertices hollow.
pub fn render_planarization(p: &Planarization, scene: &SvgScene) -> String {
    let pts = node_points(&p.nodes);
    let view = View::fit(scene, &pts);
    let mut out = String::new();
    header(&mut out, scene, false);
    arrangement_body(&mut out, p, scene, &view, &pts);
    out.push_str("</svg>\n");
    out
}

/// The arrangement with one arrow per transfer, from the midpoint of its
/// exit arc to the centroid of the receiving 1-triangle.
pub fn render_discharge(arr: &Arrangement, ledger: &ChargeLedger, scene: &SvgScene) -> String {
    let p = &arr.planarization;
    let mesh = &arr.mesh;
    let pts = node_points(&p.nodes);
    let view = View::fit(scene, &pts);
    let mut out = String::new();
    header(&mut out, scene, true);
    arrangement_body(&mut out, p, scene, &view, &pts);
    for t in &ledger.transfers {
        let h = 2 * t.exit_arc;
        let (a, b) = (pts[mesh.origin[h]], pts[mesh.dest(h)]);
        let from = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
        let walk = mesh.face_walk(t.to_face);
        let k = walk.len().max(1) as f64;
        let to = walk.iter().fold((0.0, 0.0), |acc, &h| {
            let q = pts[mesh.origin[h]];
            (acc.0 + q.0 / k, acc.1 + q.1 / k)
        });
        line(&mut out, "transfer", &scene.transfer_style, view.map(from), view.map(to), r#" marker-end="url(#arrow)""#);
    }
    out.push_str("</svg>\n");
    out
}

/// Write an SVG document.
pub fn emit_svg(svg: &str, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::planarize;
    use crate::charging::discharge_six_n;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn triangle_elements() {
        let g = GeometricGraph::from_int_points(&[(0, 0), (4, 0), (0, 4)], &[(0, 1), (1, 2), (2, 0)]);
        let svg = render_graph(&g, &SvgScene::default());
        assert_eq!(count(&svg, "<line "), 3);
        assert_eq!(count(&svg, r##"fill="#111""##), 3);
    }

    #[test]
    fn x_planarization_elements() {
        let g = GeometricGraph::from_int_points(&[(0, 0), (2, 2), (0, 2), (2, 0)], &[(0, 1), (2, 3)]);
        let svg = render_planarization(&planarize(&g).unwrap(), &SvgScene::default());
        assert_eq!(count(&svg, r#"class="arc""#), 4);
        assert_eq!(count(&svg, r#"class="crossing""#), 1);
        assert_eq!(count(&svg, r#"fill="white" stroke"#), 1);
    }

    #[test]
    fn wedge_has_one_arrow() {
        let g = GeometricGraph::from_int_points(&[(0, 0), (4, 0), (4, 2), (3, -1), (3, 3)], &[(0, 1), (0, 2), (3, 4)]);
        let arr = Arrangement::of(&g).unwrap();
        let ledger = discharge_six_n(&arr).unwrap();
        let svg = render_discharge(&arr, &ledger, &SvgScene::default());
        assert_eq!(count(&svg, r#"class="transfer""#), 1);
        assert_eq!(svg, render_discharge(&arr, &ledger, &SvgScene::default()));
    }
}
