//! Exact real points: rationals and quadratic irrationals `(a + b√d) / c`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::Rat;
use crate::error::AlgebraError;

/// `(a + b√d) / c` with `c > 0`, `b ≠ 0` and `d > 1` not a perfect square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadIrrational {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadIrrational {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, AlgebraError> {
        let describe = || format!("({a} + {b}√{d})/{c}");
        if c.is_zero() || b.is_zero() || d <= BigInt::one() {
            return Err(AlgebraError::BadIrrational(describe()));
        }
        let root = d.sqrt();
        if &root * &root == d {
            return Err(AlgebraError::BadIrrational(describe()));
        }
        let (a, b, c) = if c.is_negative() { (-a, -b, -c) } else { (a, b, c) };
        Ok(QuadIrrational { a, b, c, d })
    }

    /// `√2 / 2`.
    pub fn half_sqrt2() -> Self {
        QuadIrrational::new(0.into(), 1.into(), 2.into(), 2.into()).expect("valid")
    }

    /// Order against a rational, decided by sign analysis after squaring.
    pub fn cmp_rational(&self, q: &Rat) -> Ordering {
        // (a + b√d)/c - n/m = (m·a - n·c + m·b·√d) / (c·m), with c, m > 0.
        let n = q.numer();
        let m = q.denom();
        let lhs = m * &self.a - n * &self.c;
        let rhs = m * &self.b;
        sign_of_sum(&lhs, &rhs, &self.d)
    }

    /// Order against another irrational with the same radicand.
    pub fn cmp_same_radicand(&self, other: &QuadIrrational) -> Option<Ordering> {
        if self.d != other.d {
            return None;
        }
        // a/c - a'/c' + (b/c - b'/c')√d over the common denominator c·c'.
        let lhs = &self.a * &other.c - &other.a * &self.c;
        let rhs = &self.b * &other.c - &other.b * &self.c;
        Some(sign_of_sum(&lhs, &rhs, &self.d))
    }
}

/// Sign of `x + y·√d` for integers `x, y` and a non-square `d > 1`.
fn sign_of_sum(x: &BigInt, y: &BigInt, d: &BigInt) -> Ordering {
    let zero = BigInt::zero();
    let sx = x.cmp(&zero);
    let sy = y.cmp(&zero);
    match (sx, sy) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (a, b) if a == b => a,
        // opposite signs: compare magnitudes of x² and y²·d
        (sx, _) => {
            let xx = x * x;
            let yyd = y * y * d;
            match xx.cmp(&yyd) {
                Ordering::Greater => sx,
                Ordering::Less => sx.reverse(),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

impl fmt::Display for QuadIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√{})/{}", self.a, self.b, self.d, self.c)
    }
}

/// A point of the real line, as used for completion descriptions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RealPoint {
    Rational(Rat),
    Quadratic(QuadIrrational),
}

impl RealPoint {
    pub fn rational(q: Rat) -> Self {
        RealPoint::Rational(q)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealPoint::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            RealPoint::Rational(q) => Some(q),
            RealPoint::Quadratic(_) => None,
        }
    }

    pub fn cmp_rational(&self, q: &Rat) -> Ordering {
        match self {
            RealPoint::Rational(p) => p.cmp(q),
            RealPoint::Quadratic(p) => p.cmp_rational(q),
        }
    }

    /// Total where it is decidable here: rationals, and irrationals sharing a radicand.
    pub fn partial_cmp_point(&self, other: &RealPoint) -> Option<Ordering> {
        match (self, other) {
            (RealPoint::Rational(p), RealPoint::Rational(q)) => Some(p.cmp(q)),
            (p, RealPoint::Rational(q)) => Some(p.cmp_rational(q)),
            (RealPoint::Rational(p), q) => Some(q.cmp_rational(p).reverse()),
            (RealPoint::Quadratic(p), RealPoint::Quadratic(q)) => p.cmp_same_radicand(q),
        }
    }

    /// Largest `k / scale` (integer `k`) not above this point.
    pub fn floor_at_scale(&self, scale: &BigInt) -> BigInt {
        let at = |k: &BigInt| Rat::new(k.clone(), scale.clone());
        // exponential search for a bracket, then bisection
        let mut lo = BigInt::zero();
        let mut step = BigInt::one();
        if self.cmp_rational(&at(&lo)) == Ordering::Less {
            while self.cmp_rational(&at(&(&lo - &step))) == Ordering::Less {
                step *= 2;
            }
            lo -= &step;
        }
        let mut hi = &lo + BigInt::one();
        step = BigInt::one();
        while self.cmp_rational(&at(&hi)) != Ordering::Less {
            lo = hi.clone();
            step *= 2;
            hi = &lo + &step;
        }
        // invariant: at(lo) <= self < at(hi)
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) / 2;
            if self.cmp_rational(&at(&mid)) == Ordering::Less {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }

    /// The dyadic rational `⌊p·2^k⌋ / 2^k`.
    pub fn dyadic_floor(&self, k: u32) -> Rat {
        let scale = BigInt::one() << k;
        Rat::new(self.floor_at_scale(&scale), scale)
    }
}

impl fmt::Display for RealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealPoint::Rational(q) => write!(f, "{q}"),
            RealPoint::Quadratic(p) => write!(f, "{p}"),
        }
    }
}
