//! Closed intervals with rational endpoints, rounded outward to a dyadic grid.
//!
//! Used to bracket transcendental quantities (π, cosines, square roots)
//! between exact rationals. Every operation returns an interval that is
//! guaranteed to contain the true result; `prec` is the number of fractional
//! bits kept after outward rounding.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{ceil_dyadic, floor_dyadic, int, pow2_neg, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn sign(&self) -> Option<std::cmp::Ordering> {
        if self.lo.is_positive() {
            Some(std::cmp::Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(std::cmp::Ordering::Less)
        } else {
            None
        }
    }

    pub fn round_out(&self, prec: u32) -> Self {
        Interval {
            lo: floor_dyadic(&self.lo, prec),
            hi: ceil_dyadic(&self.hi, prec),
        }
    }

    pub fn add(&self, o: &Interval) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Self {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Self {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// `None` when the divisor straddles zero.
    pub fn div(&self, o: &Interval) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let inv = Interval {
            lo: o.hi.recip(),
            hi: o.lo.recip(),
        };
        Some(self.mul(&inv))
    }

    pub fn square(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            Interval { lo: Rational::zero(), hi: a.max(b) }
        } else if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Square root of the nonnegative part of the interval.
    pub fn sqrt(&self, prec: u32) -> Self {
        let scale = Rational::from_integer(BigInt::one() << (2 * prec as usize));
        let den = BigInt::one() << prec as usize;
        let lo = if self.lo.is_positive() {
            let floor = (&self.lo * &scale).floor().to_integer();
            Rational::new(floor.sqrt(), den.clone())
        } else {
            Rational::zero()
        };
        let hi = if self.hi.is_positive() {
            let ceil = (&self.hi * &scale).ceil().to_integer();
            Rational::new(ceil.sqrt() + BigInt::one(), den)
        } else {
            Rational::zero()
        };
        Interval { lo, hi }
    }

    pub fn clamp_unit(&self) -> Self {
        let one = int(1);
        let lo = self.lo.clone().max(-&one).min(one.clone());
        let hi = self.hi.clone().min(one.clone()).max(-one);
        Interval { lo, hi }
    }

    /// Enclosure of π (Machin's formula).
    pub fn pi(prec: u32) -> Self {
        let work = prec + 8;
        let a5 = atan_inv(5, work);
        let a239 = atan_inv(239, work);
        a5.scale(&int(16)).sub(&a239.scale(&int(4))).round_out(prec)
    }

    /// Enclosure of cos over the interval.
    pub fn cos(&self, prec: u32) -> Self {
        let (c, _) = self.cos_sin(prec);
        c
    }

    pub fn sin(&self, prec: u32) -> Self {
        let (_, s) = self.cos_sin(prec);
        s
    }

    /// Taylor expansion at the midpoint, widened by the half-width
    /// (cos and sin are 1-Lipschitz).
    fn cos_sin(&self, prec: u32) -> (Self, Self) {
        let work = prec + 16;
        let m = {
            let mid = self.mid();
            // keep the expansion point dyadic so terms stay small
            floor_dyadic(&mid, work)
        };
        let spread = {
            let d1 = (&m - &self.lo).abs();
            let d2 = (&self.hi - &m).abs();
            d1.max(d2)
        };
        let m2 = Interval::point(&m * &m);
        let cos = taylor(&m2, Interval::point(int(1)), 0, work);
        let sin = taylor(&m2, Interval::point(m.clone()), 1, work);
        let widen = |iv: Interval| {
            Interval {
                lo: &iv.lo - &spread,
                hi: &iv.hi + &spread,
            }
            .round_out(prec)
            .clamp_unit()
        };
        (widen(cos), widen(sin))
    }
}

/// Sum of the alternating series `t0 - t0 x²/((k+1)(k+2)) + ...` where
/// `start` is the exponent of the first term (0 for cos, 1 for sin).
fn taylor(x2: &Interval, first: Interval, start: u32, work: u32) -> Interval {
    let eps = pow2_neg(work + 2);
    let mut sum = first.clone();
    let mut term = first;
    let mut k = start;
    loop {
        let factor = Rational::from_integer(BigInt::from((k + 1) * (k + 2)));
        term = term.mul(x2).scale(&factor.recip()).neg().round_out(work + 8);
        k += 2;
        sum = sum.add(&term).round_out(work + 4);
        let mag = term.lo.abs().max(term.hi.abs());
        // Lagrange bound on the tail: |next term| <= |term| * x² / ((k+1)(k+2))
        let next = &mag * &x2.hi / Rational::from_integer(BigInt::from((k + 1) * (k + 2)));
        if next < eps && Rational::from_integer(BigInt::from((k + 1) * (k + 2))) > x2.hi {
            let tail = Interval::new(-&next, next);
            return sum.add(&tail);
        }
    }
}

/// Enclosure of atan(1/k) from its alternating series.
fn atan_inv(k: u64, work: u32) -> Interval {
    let eps = pow2_neg(work + 2);
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = k.clone();
    let mut sum = Rational::zero();
    let mut j: u64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), &power * BigInt::from(2 * j + 1));
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &k2;
        j += 1;
        let next = Rational::new(BigInt::one(), &power * BigInt::from(2 * j + 1));
        if next < eps {
            // alternating with decreasing terms: error below the next term
            let iv = Interval::new(&sum - &next, &sum + &next);
            return iv.round_out(work);
        }
    }
}
