//! Line families with many concurrences on a point lattice.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::exact_geom::rational::floor_dyadic;
use crate::exact_geom::{
    canonical_direction, crossing_angle_at_least, int, rat, rational_cos_bound, AngleSpec, Interval,
    Point2, Rational, Vector2,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line2 {
    pub base: Point2,
    /// Canonical primitive direction.
    pub dir: Vector2,
}

impl Line2 {
    pub fn new(base: Point2, dir: &Vector2) -> Self {
        Line2 { base, dir: canonical_direction(dir) }
    }

    pub fn contains(&self, p: &Point2) -> bool {
        p.sub(&self.base).cross(&self.dir) == int(0)
    }

    /// Position of a point along the line (monotone in the line parameter).
    pub fn param(&self, p: &Point2) -> Rational {
        use crate::exact_geom::Dot;
        p.sub(&self.base).dot(&self.dir)
    }

    /// Identity of the line: direction and `dir × base`.
    fn key(&self) -> (Vector2, Rational) {
        (self.dir.clone(), self.dir.cross(&self.base))
    }
}

/// Lines with a set of points each lying on at least `t` of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveredArrangement {
    pub t: usize,
    pub lines: Vec<Line2>,
    pub cover_points: Vec<Point2>,
    /// Indices of the lines through each cover point, ascending.
    pub incidence: Vec<Vec<usize>>,
}

impl CoveredArrangement {
    /// Build from generated lines (duplicates removed) and candidate points,
    /// computing incidences exactly.
    pub(crate) fn assemble(
        t: usize,
        lines: impl IntoIterator<Item = Line2>,
        mut points: Vec<Point2>,
    ) -> Self {
        let mut unique: BTreeMap<(Vector2, Rational), Line2> = BTreeMap::new();
        for l in lines {
            unique.entry(l.key()).or_insert(l);
        }
        let lines: Vec<Line2> = unique.into_values().collect();
        points.sort();
        points.dedup();
        let by_key: BTreeMap<(Vector2, Rational), usize> =
            lines.iter().enumerate().map(|(i, l)| (l.key(), i)).collect();
        let dirs: Vec<Vector2> = {
            let mut d: Vec<Vector2> = lines.iter().map(|l| l.dir.clone()).collect();
            d.sort();
            d.dedup();
            d
        };
        let incidence = points
            .iter()
            .map(|p| {
                let mut inc: Vec<usize> =
                    dirs.iter().filter_map(|d| by_key.get(&(d.clone(), d.cross(p))).copied()).collect();
                inc.sort_unstable();
                inc
            })
            .collect();
        CoveredArrangement { t, lines, cover_points: points, incidence }
    }

    /// Cover points on each line, ordered along it.
    pub fn points_on_lines(&self) -> Vec<Vec<usize>> {
        let mut on: Vec<Vec<usize>> = vec![Vec::new(); self.lines.len()];
        for (p, inc) in self.incidence.iter().enumerate() {
            for &l in inc {
                on[l].push(p);
            }
        }
        for (l, pts) in on.iter_mut().enumerate() {
            let line = &self.lines[l];
            pts.sort_by_cached_key(|&p| line.param(&self.cover_points[p]));
        }
        on
    }

    pub fn min_incidence(&self) -> usize {
        self.incidence.iter().map(Vec::len).min().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    Axes,
    AxesDiagonals,
    Triangular,
    TriangularRefined,
}

impl std::str::FromStr for LatticeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "axes" => Ok(LatticeKind::Axes),
            "axes+diagonals" | "axes-diagonals" => Ok(LatticeKind::AxesDiagonals),
            "triangular" => Ok(LatticeKind::Triangular),
            "triangular-refined" => Ok(LatticeKind::TriangularRefined),
            other => Err(format!("unknown lattice kind `{other}`")),
        }
    }
}

/// Lines through every point of an `r × r` lattice patch in each of the
/// kind's directions.
///
/// The triangular lattice uses the basis `u = (1, 0)`, `w = (1/2, s)` where
/// `s` is `√3/2` rounded down to `bits` fractional bits, so all concurrences
/// stay exact. The family angles are then certified to be at least the
/// ideal angle less `2^-(bits-2)`.
pub fn lattice_lines(kind: LatticeKind, r: usize, bits: u32) -> Result<CoveredArrangement, ConstructionError> {
    if r < 2 {
        return Err(ConstructionError::InvalidParameter(format!("r = {r} must be at least 2")));
    }
    let (u, w) = match kind {
        LatticeKind::Axes | LatticeKind::AxesDiagonals => (Point2::from_ints(1, 0), Point2::from_ints(0, 1)),
        LatticeKind::Triangular | LatticeKind::TriangularRefined => {
            if !(4..=crate::exact_geom::predicates::MAX_THRESHOLD_BITS).contains(&bits) {
                return Err(ConstructionError::LatticePrecision(bits));
            }
            let s = floor_dyadic(&Interval::point(rat(3, 4)).sqrt(bits + 2).lo, bits);
            (Point2::from_ints(1, 0), Point2::new(rat(1, 2), s))
        }
    };
    let comb = |a: i64, b: i64| u.scale(&int(a)).add(&w.scale(&int(b)));
    let (dirs, t, ideal) = match kind {
        LatticeKind::Axes => (vec![comb(1, 0), comb(0, 1)], 2, None),
        LatticeKind::AxesDiagonals => (vec![comb(1, 0), comb(0, 1), comb(1, 1), comb(1, -1)], 4, None),
        LatticeKind::Triangular => (vec![comb(1, 0), comb(0, 1), comb(-1, 1)], 3, Some(3)),
        LatticeKind::TriangularRefined => (
            vec![comb(1, 0), comb(1, 1), comb(0, 1), comb(-1, 2), comb(-1, 1), comb(-2, 1)],
            6,
            Some(6),
        ),
    };
    let points: Vec<Point2> = (0..r as i64)
        .flat_map(|a| (0..r as i64).map(move |b| (a, b)))
        .map(|(a, b)| comb(a, b))
        .collect();
    if let Some(fam) = ideal {
        let slack = crate::exact_geom::rational::pow2_neg(bits - 2);
        let angle = AngleSpec::pi_over(fam).minus(&slack);
        let thr = rational_cos_bound(&angle, bits + 8)?;
        for (i, a) in dirs.iter().enumerate() {
            for b in &dirs[i + 1..] {
                if !crossing_angle_at_least(a, b, &thr)? {
                    return Err(ConstructionError::LatticePrecision(bits));
                }
            }
        }
    }
    let lines = points
        .iter()
        .flat_map(|p| dirs.iter().map(move |d| Line2::new(p.clone(), d)));
    Ok(CoveredArrangement::assemble(t, lines, points.clone()))
}
