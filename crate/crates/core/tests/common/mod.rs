//! Seeded random drawings shared by the integration tests.
#![allow(dead_code)]

use acgraph::arrangement::{component_count, planarize};
use acgraph::exact_geom::{rational_cos_bound, AngleSpec, CosThreshold};
use acgraph::graph_model::{validate, GeometricGraph};
use acgraph::verify::is_alpha_ac;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Which crossings a generated drawing may contain.
pub enum Crossings<'a> {
    /// Any proper crossing, as long as no three edges meet at one point.
    Simple,
    /// Only crossings meeting the threshold.
    AtLeast(&'a CosThreshold),
}

fn distinct_points(rng: &mut ChaCha8Rng, n: usize, side: i64) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = (rng.gen_range(0..side), rng.gen_range(0..side));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

fn acceptable(g: &GeometricGraph, rule: &Crossings) -> bool {
    if !validate(g).is_empty() {
        return false;
    }
    match rule {
        Crossings::Simple => planarize(g).map(|p| p.is_simple()).unwrap_or(false),
        Crossings::AtLeast(th) => {
            is_alpha_ac(g, th).map(|c| c.verdict).unwrap_or(false)
                && planarize(g).map(|p| p.is_simple()).unwrap_or(false)
        }
    }
}

/// Greedy drawing: candidate edges in random order, each kept when the
/// drawing stays valid under `rule`. `None` when the result is disconnected
/// and `connected` was asked for.
pub fn greedy_drawing(seed: u64, n: usize, side: i64, rule: &Crossings, connected: bool) -> Option<GeometricGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = distinct_points(&mut rng, n, side);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for e in pairs {
        edges.push(e);
        if !acceptable(&GeometricGraph::from_int_points(&pts, &edges), rule) {
            edges.pop();
        }
    }
    let g = GeometricGraph::from_int_points(&pts, &edges);
    (!connected || planarize(&g).map(|p| component_count(&p) == 1).unwrap_or(false)).then_some(g)
}

/// The first `count` connected drawings found from consecutive seeds.
pub fn drawings(base_seed: u64, count: usize, n_range: (usize, usize), rule: &Crossings) -> Vec<GeometricGraph> {
    let mut out = Vec::new();
    let mut seed = base_seed;
    while out.len() < count {
        let n = n_range.0 + (seed as usize % (n_range.1 - n_range.0 + 1));
        if let Some(g) = greedy_drawing(seed, n, 9, rule, true) {
            out.push(g);
        }
        seed += 1;
    }
    out
}

pub fn right_angle() -> CosThreshold {
    CosThreshold::exact("pi/2", acgraph::exact_geom::int(0))
}

pub fn threshold(angle: &str) -> CosThreshold {
    rational_cos_bound(&angle.parse::<AngleSpec>().unwrap(), 64).unwrap()
}
