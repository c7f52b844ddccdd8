//! Known edge-count bounds for angle-constrained drawings, evaluated at `n`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{check_alpha, pi_over_alpha, VerifyError};
use crate::exact_geom::rational::{format_rational, int, rat, serde_rational, to_f64};
use crate::exact_geom::{AngleSpec, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Upper,
    /// Asymptotic upper bound with an unknown constant; never evaluated.
    Citation,
    /// Density achieved by a construction.
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub kind: BoundKind,
    pub condition: String,
    pub formula: String,
    pub source: String,
    /// Certified enclosure of the value; equal ends when exact.
    #[serde(with = "serde_rational::option", default)]
    pub value_lo: Option<Rational>,
    #[serde(with = "serde_rational::option", default)]
    pub value_hi: Option<Rational>,
    /// Leading edge density `c` in `cn − o(n)` for lower-bound rows.
    pub density: Option<u64>,
    pub is_min: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsTable {
    pub alpha: AngleSpec,
    pub n: u64,
    pub rows: Vec<BoundRow>,
    /// Index of the smallest evaluated upper bound (by its upper end).
    pub min_row: Option<usize>,
}

impl BoundsTable {
    pub fn min_value(&self) -> Option<&Rational> {
        self.min_row.and_then(|i| self.rows[i].value_hi.as_ref())
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("Bounds at alpha = {}, n = {}\n\n", self.alpha, self.n);
        s.push_str("| kind | condition | formula | value | source |\n");
        s.push_str("|---|---|---|---|---|\n");
        for r in &self.rows {
            let value = match (&r.value_lo, &r.value_hi, r.density) {
                (Some(lo), Some(hi), _) if lo == hi => format_rational(lo),
                (Some(lo), Some(hi), _) => format!("[{:.3}, {:.3}]", to_f64(lo), to_f64(hi)),
                (_, _, Some(d)) => format!("density {d}"),
                _ => "-".to_string(),
            };
            let mark = if r.is_min { " **min**" } else { "" };
            let kind = match r.kind {
                BoundKind::Upper => "upper",
                BoundKind::Citation => "upper (asymptotic)",
                BoundKind::Lower => "lower",
            };
            let _ = writeln!(
                s,
                "| {kind} | {} | {} | {value}{mark} | {} |",
                r.condition, r.formula, r.source
            );
        }
        s
    }
}

fn exact_row(condition: &str, formula: &str, source: &str, value: Rational) -> BoundRow {
    BoundRow {
        kind: BoundKind::Upper,
        condition: condition.into(),
        formula: formula.into(),
        source: source.into(),
        value_lo: Some(value.clone()),
        value_hi: Some(value),
        density: None,
        is_min: false,
    }
}

fn greater(a: &AngleSpec, b: &AngleSpec) -> bool {
    a.cmp_certified(b, 1024) == Some(Ordering::Greater)
}

/// Every bound whose angle condition holds at `alpha`, evaluated at `n`.
pub fn bound_table(alpha: &AngleSpec, n: u64) -> Result<BoundsTable, VerifyError> {
    check_alpha(alpha)?;
    let nr = int(n as i64);
    let mut rows = Vec::new();
    let right = AngleSpec::pi_over(2);
    if alpha.cmp_certified(&right, 1024) == Some(Ordering::Equal) {
        rows.push(exact_row("alpha = pi/2", "4n - 10", "RAC graphs (Didimo, Eades, Liotta)", &nr * int(4) - int(10)));
    }
    if greater(alpha, &AngleSpec::new(rat(2, 5), int(0))) {
        rows.push(exact_row("alpha > 2pi/5", "6n - 12", "1/3-discharging of face charges", &nr * int(6) - int(12)));
    }
    if greater(alpha, &AngleSpec::pi_over(3)) {
        rows.push(exact_row("alpha > pi/3", "6.5n - 20", "quasiplanar graphs (Ackerman, Tardos)", &nr * rat(13, 2) - int(20)));
    }
    if greater(alpha, &AngleSpec::pi_over(4)) {
        rows.push(exact_row("alpha > pi/4", "36n - 72", "4-quasiplanar graphs (Ackerman)", &nr * int(36) - int(72)));
    }
    let ratio = pi_over_alpha(alpha, 128);
    let planar = &nr * int(3) - int(6);
    rows.push(BoundRow {
        kind: BoundKind::Upper,
        condition: "any alpha".into(),
        formula: "(pi/alpha)(3n - 6)".into(),
        source: "direction buckets are plane graphs".into(),
        value_lo: Some(&ratio.lo * &planar),
        value_hi: Some(&ratio.hi * &planar),
        density: None,
        is_min: false,
    });
    rows.push(BoundRow {
        kind: BoundKind::Citation,
        condition: "any alpha".into(),
        formula: "O(n log n)".into(),
        source: "k-quasiplanar graphs, k = floor(pi/alpha) + 1 (Valtr)".into(),
        value_lo: None,
        value_hi: None,
        density: None,
        is_min: false,
    });
    // largest t with α < π/t
    let t = {
        let k = if let Some(t) = alpha.divides_pi() {
            t
        } else {
            let mut prec = 64;
            loop {
                let q = pi_over_alpha(alpha, prec);
                if q.lo.floor() == q.hi.floor() {
                    break q.lo.floor().to_integer().try_into().unwrap_or(u64::MAX);
                }
                prec *= 2;
            }
        };
        if alpha.divides_pi().is_some() {
            k - 1
        } else {
            k
        }
    };
    if t >= 2 {
        rows.push(BoundRow {
            kind: BoundKind::Lower,
            condition: format!("alpha < pi/{t}"),
            formula: "3tn - O(tn^(2/3)/eps)".into(),
            source: "t-frame grid construction".into(),
            value_lo: None,
            value_hi: None,
            density: Some(3 * t),
            is_min: false,
        });
    }
    let min_row = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.kind == BoundKind::Upper)
        .min_by(|a, b| a.1.value_hi.cmp(&b.1.value_hi).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i);
    if let Some(i) = min_row {
        rows[i].is_min = true;
    }
    Ok(BoundsTable { alpha: alpha.clone(), n, rows, min_row })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formulas(t: &BoundsTable) -> Vec<&str> {
        t.rows.iter().map(|r| r.formula.as_str()).collect()
    }

    #[test]
    fn right_angle_at_ten() {
        let t = bound_table(&AngleSpec::pi_over(2), 10).unwrap();
        let by = |f: &str| t.rows.iter().find(|r| r.formula == f).unwrap().value_hi.clone().unwrap();
        assert_eq!(by("4n - 10"), int(30));
        assert_eq!(by("6n - 12"), int(48));
        assert_eq!(by("(pi/alpha)(3n - 6)"), int(48));
        assert_eq!(t.min_value(), Some(&int(30)));
        assert!(!formulas(&t).contains(&"3tn - O(tn^(2/3)/eps)"));
    }

    #[test]
    fn just_above_two_fifths_pi() {
        let a: AngleSpec = "2pi/5 + 1/100".parse().unwrap();
        let t = bound_table(&a, 100).unwrap();
        assert!(!formulas(&t).contains(&"4n - 10"));
        assert_eq!(t.min_value(), Some(&int(588)));
        let six_half = t.rows.iter().find(|r| r.formula == "6.5n - 20").unwrap();
        assert_eq!(six_half.value_hi, Some(int(630)));
        let lower = t.rows.iter().find(|r| r.kind == BoundKind::Lower).unwrap();
        assert_eq!(lower.density, Some(6));
    }

    #[test]
    fn just_above_quarter_pi() {
        let a: AngleSpec = "pi/4 + 1/100".parse().unwrap();
        let t = bound_table(&a, 100).unwrap();
        let row = &t.rows[t.min_row.unwrap()];
        assert_eq!(row.formula, "(pi/alpha)(3n - 6)");
        let v = to_f64(row.value_hi.as_ref().unwrap());
        let want = std::f64::consts::PI / (std::f64::consts::PI / 4.0 + 0.01) * 294.0;
        assert!((v - want).abs() < 1e-6);
        assert!(t.rows.iter().any(|r| r.formula == "36n - 72" && r.value_hi == Some(int(3528))));
        assert!(t.to_markdown().contains("**min**"));
    }
}
