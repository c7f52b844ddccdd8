//! Angle certificates, the direction-bucket partition and bound tables.

mod bounds;
mod partition;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_geom::rational::serde_rational;
use crate::exact_geom::{AngleSpec, CosThreshold, GeomError, Interval, Rational};
use crate::graph_model::{Chart, GeometricGraph, GraphError};

pub use bounds::{bound_table, BoundKind, BoundRow, BoundsTable};
pub use partition::{
    direction_partition, find_good_rotation, uniform_bound_check, DirectionPartition, Rotation,
    UniformBoundReport,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("angle {0} must lie in (0, pi/2]")]
    AngleRange(String),
    #[error("edge {edge} lies on a bucket boundary that could not be decided at {bits} bits")]
    BoundaryUndecidable { edge: usize, bits: u32 },
    #[error("precondition failed: graph is not certified {0}AC")]
    NotAlphaAc(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingWitness {
    pub e1: usize,
    pub e2: usize,
    #[serde(with = "serde_rational")]
    pub cos2: Rational,
}

/// Outcome of checking every crossing pair against a threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ACCertificate {
    pub threshold: CosThreshold,
    pub verdict: bool,
    /// Sharpest crossing, present when the verdict is false.
    pub witness: Option<CrossingWitness>,
    pub pair_count: usize,
}

/// Exhaustive exact check that every proper crossing meets the threshold.
pub fn is_alpha_ac(g: &GeometricGraph, threshold: &CosThreshold) -> Result<ACCertificate, GraphError> {
    g.ensure_valid()?;
    let chart = Chart::new(g)?;
    let pairs = chart.crossing_pairs()?;
    let bound = threshold.cos2();
    let verdict = pairs.iter().all(|p| chart.cos2_at_most(p.e1, p.e2, &bound));
    let witness = if verdict {
        None
    } else {
        pairs
            .iter()
            .map(|p| (chart.cos2(p.e1, p.e2), p))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(a.1)))
            .map(|(cos2, p)| CrossingWitness { e1: p.e1, e2: p.e2, cos2 })
    };
    Ok(ACCertificate { threshold: threshold.clone(), verdict, witness, pair_count: pairs.len() })
}

/// Enclosure of π/α; a point when α is a rational multiple of π.
pub(crate) fn pi_over_alpha(alpha: &AngleSpec, prec: u32) -> Interval {
    use num_traits::Zero;
    if alpha.offset.is_zero() {
        return Interval::point(alpha.pi_coeff.recip());
    }
    Interval::pi(prec + 8)
        .div(&alpha.interval(prec + 8))
        .expect("alpha is positive")
        .round_out(prec)
}

/// Parses and checks `0 < α <= π/2`.
pub(crate) fn check_alpha(alpha: &AngleSpec) -> Result<(), VerifyError> {
    use std::cmp::Ordering::*;
    let zero = AngleSpec::radians(Rational::from_integer(0.into()));
    let ok = alpha.cmp_certified(&zero, 1024) == Some(Greater)
        && matches!(alpha.cmp_certified(&AngleSpec::pi_over(2), 1024), Some(Less) | Some(Equal));
    if ok {
        Ok(())
    } else {
        Err(VerifyError::AngleRange(alpha.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::rational_cos_bound;

    fn k4() -> GeometricGraph {
        GeometricGraph::from_int_points(
            &[(0, 0), (1, 0), (1, 1), (0, 1)],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)],
        )
    }

    #[test]
    fn crossing_free_passes_anything() {
        let tri = GeometricGraph::from_int_points(&[(0, 0), (4, 0), (0, 4)], &[(0, 1), (1, 2), (2, 0)]);
        let t = rational_cos_bound(&AngleSpec::pi_over(2), 64).unwrap();
        let c = is_alpha_ac(&tri, &t).unwrap();
        assert!(c.verdict);
        assert_eq!(c.pair_count, 0);
    }

    #[test]
    fn square_with_diagonals_is_rac() {
        let t = rational_cos_bound(&AngleSpec::pi_over(2), 64).unwrap();
        let c = is_alpha_ac(&k4(), &t).unwrap();
        assert!(c.verdict);
        assert_eq!(c.pair_count, 1);
    }

    #[test]
    fn shallow_crossing_fails_with_witness() {
        // directions (1,0) and (2,1): cos² = 4/5 > 1/4
        let g = GeometricGraph::from_int_points(&[(0, 0), (4, 0), (0, -1), (4, 1)], &[(0, 1), (2, 3)]);
        let t = rational_cos_bound(&AngleSpec::pi_over(3), 64).unwrap();
        let c = is_alpha_ac(&g, &t).unwrap();
        assert!(!c.verdict);
        let w = c.witness.unwrap();
        assert_eq!((w.e1, w.e2), (0, 1));
        assert_eq!(w.cos2, Rational::new(4.into(), 5.into()));
    }

    #[test]
    fn monotone_in_threshold() {
        let g = GeometricGraph::from_int_points(&[(0, 0), (4, 0), (0, -2), (4, 2)], &[(0, 1), (2, 3)]);
        // crossing angle atan(1) = π/4
        let mut passed = false;
        for denom in [2, 3, 4, 5, 6, 8] {
            let t = rational_cos_bound(&AngleSpec::pi_over(denom), 64).unwrap();
            let ok = is_alpha_ac(&g, &t).unwrap().verdict;
            assert!(!passed || ok, "passing a larger angle must imply passing smaller ones");
            passed |= ok;
        }
        assert!(passed);
    }
}
