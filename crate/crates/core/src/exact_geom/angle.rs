//! Symbolic angles of the form `a·π + b` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::interval::Interval;
use super::rational::{format_rational, int, parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AngleSpec {
    /// Coefficient of π.
    pub pi_coeff: Rational,
    /// Rational offset in radians.
    pub offset: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse angle `{text}`: {reason}")]
pub struct ParseAngleError {
    pub text: String,
    pub reason: String,
}

impl AngleSpec {
    pub fn new(pi_coeff: Rational, offset: Rational) -> Self {
        AngleSpec { pi_coeff, offset }
    }

    /// `π / t`.
    pub fn pi_over(t: i64) -> Self {
        AngleSpec::new(rat(1, t), Rational::zero())
    }

    pub fn radians(r: Rational) -> Self {
        AngleSpec::new(Rational::zero(), r)
    }

    pub fn minus(&self, r: &Rational) -> Self {
        AngleSpec::new(self.pi_coeff.clone(), &self.offset - r)
    }

    pub fn plus(&self, r: &Rational) -> Self {
        AngleSpec::new(self.pi_coeff.clone(), &self.offset + r)
    }

    pub fn times(&self, k: &Rational) -> Self {
        AngleSpec::new(&self.pi_coeff * k, &self.offset * k)
    }

    pub fn is_pure_pi_multiple(&self) -> bool {
        self.offset.is_zero()
    }

    pub fn interval(&self, prec: u32) -> Interval {
        let pi = Interval::pi(prec + 4);
        let iv = pi.scale(&self.pi_coeff).add(&Interval::point(self.offset.clone()));
        iv.round_out(prec)
    }

    /// Exact cosine when it is rational (multiples of π/3 and π/2).
    pub fn exact_cos(&self) -> Option<Rational> {
        if !self.offset.is_zero() {
            return None;
        }
        // reduce the coefficient modulo 2
        let two = int(2);
        let mut a = &self.pi_coeff % &two;
        if a.is_negative() {
            a += &two;
        }
        let table: [(Rational, Rational); 8] = [
            (int(0), int(1)),
            (rat(1, 3), rat(1, 2)),
            (rat(1, 2), int(0)),
            (rat(2, 3), rat(-1, 2)),
            (int(1), int(-1)),
            (rat(4, 3), rat(-1, 2)),
            (rat(3, 2), int(0)),
            (rat(5, 3), rat(1, 2)),
        ];
        table.into_iter().find(|(k, _)| *k == a).map(|(_, c)| c)
    }

    /// Cosine enclosure, exact when [`exact_cos`](Self::exact_cos) applies.
    pub fn cos_interval(&self, prec: u32) -> Interval {
        match self.exact_cos() {
            Some(c) => Interval::point(c),
            None => self.interval(prec + 8).cos(prec),
        }
    }

    /// `Some(t)` when the angle is exactly `π / t` for a positive integer t.
    pub fn divides_pi(&self) -> Option<u64> {
        if !self.offset.is_zero() || !self.pi_coeff.is_positive() || !self.pi_coeff.numer().is_one()
        {
            return None;
        }
        u64::try_from(self.pi_coeff.denom().clone()).ok()
    }

    /// Exact or interval-escalated comparison against another angle.
    /// `None` only if the two are equal or indistinguishable at `max_prec`.
    pub fn cmp_certified(&self, other: &AngleSpec, max_prec: u32) -> Option<Ordering> {
        if self == other {
            return Some(Ordering::Equal);
        }
        let dpi = &self.pi_coeff - &other.pi_coeff;
        let doff = &self.offset - &other.offset;
        if dpi.is_zero() {
            return Some(doff.cmp(&Rational::zero()));
        }
        // dpi·π + doff with dpi ≠ 0 is never zero (π is irrational)
        let diff = AngleSpec::new(dpi, doff);
        let mut prec = 32;
        loop {
            if let Some(s) = diff.interval(prec).sign() {
                return Some(s);
            }
            if prec >= max_prec {
                return None;
            }
            prec *= 2;
        }
    }
}

impl fmt::Display for AngleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.pi_coeff.is_zero() {
            let n = self.pi_coeff.numer();
            let d = self.pi_coeff.denom();
            let num = if n.is_one() {
                "pi".to_string()
            } else if *n == -BigInt::one() {
                "-pi".to_string()
            } else {
                format!("{n}pi")
            };
            if d.is_one() {
                write!(f, "{num}")?;
            } else {
                write!(f, "{num}/{d}")?;
            }
            wrote = true;
        }
        if !self.offset.is_zero() || !wrote {
            if wrote {
                if self.offset.is_negative() {
                    write!(f, " - {}", format_rational(&-&self.offset))?;
                } else {
                    write!(f, " + {}", format_rational(&self.offset))?;
                }
            } else {
                write!(f, "{}", format_rational(&self.offset))?;
            }
        }
        Ok(())
    }
}

impl FromStr for AngleSpec {
    type Err = ParseAngleError;

    /// Accepts sums of terms such as `pi/2`, `2pi/5 + 1/100`, `pi/3-1/5`,
    /// `2*pi/5`, `π/4` or a bare rational number of radians.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseAngleError {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let cleaned: String = s
            .replace('π', "pi")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if cleaned.is_empty() {
            return Err(err("empty"));
        }
        // split into signed terms at top-level + / - (not inside a leading sign)
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for c in cleaned.chars() {
            if (c == '+' || c == '-') && !current.is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
                negative = c == '-';
            } else if c == '+' || c == '-' {
                negative ^= c == '-';
            } else {
                current.push(c);
            }
        }
        if current.is_empty() {
            return Err(err("trailing operator"));
        }
        terms.push((negative, current));

        let mut spec = AngleSpec::new(Rational::zero(), Rational::zero());
        for (neg, term) in terms {
            let sign = if neg { int(-1) } else { int(1) };
            if let Some(pos) = term.find("pi") {
                let coeff_text = term[..pos].trim_end_matches('*');
                let rest = &term[pos + 2..];
                let mut coeff = if coeff_text.is_empty() {
                    int(1)
                } else {
                    parse_rational(coeff_text).map_err(|e| err(&e.to_string()))?
                };
                if let Some(den) = rest.strip_prefix('/') {
                    let d = parse_rational(den).map_err(|e| err(&e.to_string()))?;
                    if d.is_zero() {
                        return Err(err("division by zero"));
                    }
                    coeff /= d;
                } else if !rest.is_empty() {
                    return Err(err("unexpected text after pi"));
                }
                spec.pi_coeff += sign * coeff;
            } else {
                let r = parse_rational(&term).map_err(|e| err(&e.to_string()))?;
                spec.offset += sign * r;
            }
        }
        Ok(spec)
    }
}

impl Serialize for AngleSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AngleSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_symbolic_forms() {
        let a: AngleSpec = "pi/2".parse().unwrap();
        assert_eq!(a, AngleSpec::pi_over(2));
        let b: AngleSpec = "2pi/5 + 1/100".parse().unwrap();
        assert_eq!(b, AngleSpec::new(rat(2, 5), rat(1, 100)));
        let c: AngleSpec = "π/3-1/5".parse().unwrap();
        assert_eq!(c, AngleSpec::new(rat(1, 3), rat(-1, 5)));
        let d: AngleSpec = "2/3".parse().unwrap();
        assert_eq!(d, AngleSpec::radians(rat(2, 3)));
        let e: AngleSpec = "2*pi/5".parse().unwrap();
        assert_eq!(e.pi_coeff, rat(2, 5));
        assert!("pi/0".parse::<AngleSpec>().is_err());
        assert!("pi/2-".parse::<AngleSpec>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["pi/2", "2pi/5 + 1/100", "pi/3 - 1/5", "2/3", "pi"] {
            let a: AngleSpec = text.parse().unwrap();
            assert_eq!(a.to_string(), text);
            assert_eq!(a.to_string().parse::<AngleSpec>().unwrap(), a);
        }
    }

    #[test]
    fn exact_cosines() {
        assert_eq!(AngleSpec::pi_over(2).exact_cos(), Some(int(0)));
        assert_eq!(AngleSpec::pi_over(3).exact_cos(), Some(rat(1, 2)));
        assert_eq!(AngleSpec::pi_over(4).exact_cos(), None);
        assert_eq!("2pi/3".parse::<AngleSpec>().unwrap().exact_cos(), Some(rat(-1, 2)));
        assert_eq!(AngleSpec::pi_over(3).minus(&rat(1, 5)).exact_cos(), None);
    }

    #[test]
    fn certified_comparison() {
        let a = AngleSpec::pi_over(3);
        let b = AngleSpec::radians(rat(104_719, 100_000)); // just below π/3
        assert_eq!(a.cmp_certified(&b, 256), Some(Ordering::Greater));
        assert_eq!(b.cmp_certified(&a, 256), Some(Ordering::Less));
        assert_eq!(a.divides_pi(), Some(3));
        assert_eq!(b.divides_pi(), None);
    }
}
