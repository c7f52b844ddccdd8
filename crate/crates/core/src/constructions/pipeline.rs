//! The full route from `(t, ε, r)` to a certified coplanar graph.

use serde::{Deserialize, Serialize};

use super::{choose_gamma, cover_with_frame, lemma_convert_build, project, t_frame, ConstructionError};
use crate::exact_geom::rational::serde_rational;
use crate::exact_geom::{int, rational_cos_bound, AngleSpec, CosThreshold, Rational};
use crate::graph_model::GeometricGraph;
use crate::verify::is_alpha_ac;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub t: usize,
    #[serde(with = "serde_rational")]
    pub eps: Rational,
    pub r: usize,
    /// Frame coordinate bound; `q >= r/2` means the boundary bands cover
    /// the whole grid.
    pub q: i64,
    pub frame_lines: usize,
    pub n: usize,
    pub m: usize,
    #[serde(with = "serde_rational")]
    pub density: Rational,
    #[serde(with = "serde_rational")]
    pub gamma: Rational,
    pub threshold: CosThreshold,
    pub verdict: bool,
    pub crossing_pairs: usize,
}

/// `δ = ε/2` → t-frame → cover of the `r × r` grid → planes of height `r`
/// → projection certified at `π/t − ε`.
pub fn construct_alpha_ac(
    t: usize,
    eps: &Rational,
    r: usize,
    bits: u32,
    max_halvings: u32,
) -> Result<(GeometricGraph, ConstructionCertificate), ConstructionError> {
    let delta = eps / int(2);
    let frame = t_frame(t, &delta).map_err(ConstructionError::at("t_frame"))?;
    let arr = cover_with_frame(&frame, r).map_err(ConstructionError::at("frame_cover"))?;
    let g3 = lemma_convert_build(&arr, t, r).map_err(ConstructionError::at("lemma_convert_build"))?;
    let alpha = AngleSpec::pi_over(t as i64).minus(eps);
    let threshold = rational_cos_bound(&alpha, bits)
        .map_err(|e| ConstructionError::at("threshold")(e.into()))?;
    let gamma =
        choose_gamma(&g3, &threshold, max_halvings).map_err(ConstructionError::at("choose_gamma"))?;
    let g = project(&g3, &gamma).map_err(ConstructionError::at("project"))?;
    let cert = is_alpha_ac(&g, &threshold).map_err(|e| ConstructionError::at("verify")(e.into()))?;
    let (n, m) = (g.n(), g.m());
    let g = g
        .with_meta("construction", "full")
        .with_meta("t", t)
        .with_meta("eps", crate::exact_geom::format_rational(eps))
        .with_meta("r", r);
    let certificate = ConstructionCertificate {
        t,
        eps: eps.clone(),
        r,
        q: frame.q,
        frame_lines: arr.lines.len(),
        n,
        m,
        density: Rational::new((m as i64).into(), (n.max(1) as i64).into()),
        gamma,
        threshold,
        verdict: cert.verdict,
        crossing_pairs: cert.pair_count,
    };
    Ok((g, certificate))
}
