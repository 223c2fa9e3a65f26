//! An order isomorphism `h: (0,1) ∩ ℚ → (p,1) ∩ ℚ` for an irrational `p`.
//!
//! Both sides are walked in Stern–Brocot order. A node of the source tree
//! with bounds `lo < q < hi` is sent to the simplest rational strictly between
//! `h(lo)` and `h(hi)`, starting from `h(0) = p` and `h(1) = 1`. Each image
//! rational is eventually chosen because only finitely many rationals in
//! `(p,1)` have a smaller denominator, so `h` is onto.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::interval::cmp_rat;
use crate::algebra::{Rat, RealPoint};

/// A fraction `n/d` with `d >= 0`; `1/0` stands for `+∞`.
#[derive(Clone, Debug)]
struct Frac {
    n: BigInt,
    d: BigInt,
}

impl Frac {
    fn new(n: i64, d: i64) -> Self {
        Frac {
            n: n.into(),
            d: d.into(),
        }
    }

    /// `self + k · other` on numerators and denominators.
    fn plus_times(&self, k: &BigInt, other: &Frac) -> Frac {
        Frac {
            n: &self.n + k * &other.n,
            d: &self.d + k * &other.d,
        }
    }

    fn rat(&self) -> Rat {
        Rat::new(self.n.clone(), self.d.clone())
    }

    /// Compared with a real point; `+∞` is above everything.
    fn cmp_point(&self, x: &RealPoint) -> Ordering {
        if self.d.is_zero() {
            return Ordering::Greater;
        }
        x.cmp_rational(&self.rat()).reverse()
    }
}

/// Largest `k >= 1` with `pred(k)`, given `pred(1)` and that `pred` is
/// downward closed.
fn largest_run(pred: impl Fn(&BigInt) -> bool) -> BigInt {
    let mut lo = BigInt::one();
    let mut hi = BigInt::from(2);
    while pred(&hi) {
        lo = hi.clone();
        hi *= 2;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if pred(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// The rational with least denominator in the open interval `(lo, hi)`,
/// `0 <= lo < hi`. Runs of equal Stern–Brocot moves are taken in one step.
pub fn simplest_between(lo: &RealPoint, hi: &RealPoint) -> Rat {
    let mut left = Frac::new(0, 1);
    let mut right = Frac::new(1, 0);
    if lo.cmp_rational(&Rat::zero()) == Ordering::Less {
        panic!("simplest_between needs a non-negative lower bound");
    }
    loop {
        let m = left.plus_times(&BigInt::one(), &right);
        if m.cmp_point(lo) != Ordering::Greater {
            // move right while the mediant stays at or below lo
            let k = largest_run(|k| left.plus_times(k, &right).cmp_point(lo) != Ordering::Greater);
            left = left.plus_times(&k, &right);
        } else if m.cmp_point(hi) != Ordering::Less {
            let k = largest_run(|k| right.plus_times(k, &left).cmp_point(hi) != Ordering::Less);
            right = right.plus_times(&k, &left);
        } else {
            return m.rat();
        }
    }
}

/// The memoized isomorphism. The memo is the only mutable state; every
/// insertion is checked against its neighbours.
///
/// Images of Stern–Brocot neighbours are Farey neighbours, so below the
/// left spine `1/n` every image is the mediant of the images of its bounds,
/// and runs of equal moves are replayed in one step. The spine images
/// `h(1/n)` are the successive nodes above `p` on the Stern–Brocot path of `p`.
pub struct BackAndForth {
    p: RealPoint,
    memo: Mutex<Memo>,
}

struct Memo {
    values: BTreeMap<Rat, Rat>,
    /// `spine[n - 1] = h(1/n)`.
    spine: Vec<Frac>,
    /// Bounds of the descent towards `p` after the last spine node.
    walk: (Frac, Frac),
}

impl Memo {
    fn spine(&mut self, p: &RealPoint, n: usize) -> Frac {
        while self.spine.len() < n {
            let (left, right) = &mut self.walk;
            let m = left.plus_times(&BigInt::one(), right);
            if m.cmp_point(p) == Ordering::Greater {
                *right = m.clone();
                self.spine.push(m);
            } else {
                *left = m;
            }
        }
        self.spine[n - 1].clone()
    }
}

/// `floor(num / den)` for `den > 0`.
fn floor_div(num: &BigInt, den: &BigInt) -> BigInt {
    num.div_floor(den)
}

impl BackAndForth {
    /// `p` must lie strictly between 0 and 1 and be irrational.
    pub fn new(p: RealPoint) -> Option<Self> {
        let inside = p.cmp_rational(&Rat::zero()) == Ordering::Greater
            && p.cmp_rational(&Rat::one()) == Ordering::Less;
        (inside && !p.is_rational()).then(|| BackAndForth {
            p,
            memo: Mutex::new(Memo {
                values: BTreeMap::new(),
                spine: Vec::new(),
                walk: (Frac::new(0, 1), Frac::new(1, 0)),
            }),
        })
    }

    pub fn p(&self) -> &RealPoint {
        &self.p
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().expect("memo poisoned").values.len()
    }

    /// `h(q)` for `0 < q < 1`; extended by `h(1) = 1`. `None` outside `(0, 1]`.
    pub fn h(&self, q: &Rat) -> Option<Rat> {
        if *q <= Rat::zero() || *q > Rat::one() {
            return None;
        }
        let mut memo = self.memo.lock().expect("memo poisoned");
        if let Some(v) = memo.values.get(q) {
            return Some(v.clone());
        }
        let v = self.compute(&mut memo, q);
        insert_checked(&mut memo.values, q.clone(), v.clone());
        Some(v)
    }

    fn compute(&self, memo: &mut Memo, q: &Rat) -> Rat {
        let (x, y) = (q.numer(), q.denom());
        // q lies in (1/(n+1), 1/n]
        let n = floor_div(y, x);
        let n_idx: usize = n.clone().try_into().expect("spine index fits in usize");
        if x.is_one() {
            return memo.spine(&self.p, n_idx).rat();
        }
        let mut left = Frac { n: BigInt::one(), d: &n + 1 };
        let mut right = Frac { n: BigInt::one(), d: n };
        let mut img_left = memo.spine(&self.p, n_idx + 1);
        let mut img_right = memo.spine(&self.p, n_idx);
        loop {
            let m = left.plus_times(&BigInt::one(), &right);
            if &m.n * y == x * &m.d {
                return img_left.plus_times(&BigInt::one(), &img_right).rat();
            }
            if &m.n * y < x * &m.d {
                // right run: left + j·right <= q
                let j = floor_div(&(x * &left.d - &left.n * y), &(&right.n * y - x * &right.d));
                left = left.plus_times(&j, &right);
                img_left = img_left.plus_times(&j, &img_right);
                if &left.n * y == x * &left.d {
                    return img_left.rat();
                }
            } else {
                // left run: right + j·left >= q
                let j = floor_div(&(&right.n * y - x * &right.d), &(x * &left.d - &left.n * y));
                right = right.plus_times(&j, &left);
                img_right = img_right.plus_times(&j, &img_left);
                if &right.n * y == x * &right.d {
                    return img_right.rat();
                }
            }
        }
    }
}

fn insert_checked(memo: &mut BTreeMap<Rat, Rat>, q: Rat, v: Rat) {
    if let Some((k, w)) = memo.range(..q.clone()).next_back() {
        assert!(cmp_rat(w, &v) == Ordering::Less, "back-and-forth not increasing: h({k}) = {w}, h({q}) = {v}");
    }
    if let Some((k, w)) = memo.range(q.clone()..).next() {
        assert!(cmp_rat(&v, w) == Ordering::Less, "back-and-forth not increasing: h({q}) = {v}, h({k}) = {w}");
    }
    memo.insert(q, v);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::interval::rat;
    use crate::algebra::QuadIrrational;

    fn p() -> RealPoint {
        RealPoint::Quadratic(QuadIrrational::half_sqrt2())
    }

    /// Least denominator by scanning denominators upwards.
    fn simplest_oracle(lo: &Rat, hi: &Rat) -> Rat {
        for d in 1i64.. {
            let n = (lo * Rat::from_integer(d.into())).floor().to_integer() + 1;
            let q = Rat::new(n, d.into());
            if &q < hi {
                return q;
            }
        }
        unreachable!()
    }

    #[test]
    fn simplest_matches_the_scan() {
        let pts = [rat(0, 1), rat(1, 3), rat(2, 5), rat(5, 7), rat(7, 10), rat(99, 100), rat(1, 1)];
        for a in &pts {
            for b in &pts {
                if a < b {
                    let got = simplest_between(&RealPoint::Rational(a.clone()), &RealPoint::Rational(b.clone()));
                    assert_eq!(got, simplest_oracle(a, b), "({a}, {b})");
                }
            }
        }
        assert_eq!(simplest_between(&p(), &RealPoint::Rational(rat(1, 1))), rat(3, 4));
        assert_eq!(simplest_between(&p(), &RealPoint::Rational(rat(3, 4))), rat(5, 7));
        assert_eq!(simplest_between(&RealPoint::Rational(rat(0, 1)), &RealPoint::Rational(rat(1, 1000))), rat(1, 1001));
    }

    /// `h` by its definition: walk the source tree node by node and take the
    /// simplest rational between the images of the bounds.
    fn h_by_definition(q: &Rat) -> Rat {
        let (mut lo, mut hi) = (rat(0, 1), rat(1, 1));
        let (mut lo_img, mut hi_img) = (p(), RealPoint::Rational(rat(1, 1)));
        loop {
            let m = Rat::new(lo.numer() + hi.numer(), lo.denom() + hi.denom());
            let img = simplest_between(&lo_img, &hi_img);
            match m.cmp(q) {
                Ordering::Equal => return img,
                Ordering::Less => (lo, lo_img) = (m, RealPoint::Rational(img)),
                Ordering::Greater => (hi, hi_img) = (m, RealPoint::Rational(img)),
            }
        }
    }

    #[test]
    fn fast_path_matches_the_definition() {
        let h = BackAndForth::new(p()).unwrap();
        for d in 2..30i64 {
            for n in 1..d {
                let q = rat(n, d);
                assert_eq!(h.h(&q).unwrap(), h_by_definition(&q), "{q}");
            }
        }
    }

    #[test]
    fn deep_nodes_are_cheap() {
        let h = BackAndForth::new(p()).unwrap();
        let tiny = h.h(&rat(1, 4096)).unwrap();
        let near = h.h(&rat(4095, 4096)).unwrap();
        assert_eq!(p().cmp_rational(&tiny), Ordering::Less);
        assert_eq!(cmp_rat(&tiny, &h.h(&rat(1, 4095)).unwrap()), Ordering::Less);
        assert_eq!(cmp_rat(&near, &rat(1, 1)), Ordering::Less);
    }

    #[test]
    fn first_nodes() {
        let h = BackAndForth::new(p()).unwrap();
        assert_eq!(h.h(&rat(1, 2)), Some(rat(3, 4)));
        assert_eq!(h.h(&rat(1, 3)), Some(rat(5, 7)));
        assert_eq!(h.h(&rat(2, 3)), Some(rat(4, 5)));
        assert_eq!(h.h(&rat(1, 1)), Some(rat(1, 1)));
        assert_eq!(h.h(&rat(0, 1)), None);
        assert!(BackAndForth::new(RealPoint::Rational(rat(1, 2))).is_none());
    }

    #[test]
    fn increasing_and_above_p() {
        let h = BackAndForth::new(p()).unwrap();
        let mut qs: Vec<Rat> = (1..40).flat_map(|d| (1..d).map(move |n| rat(n, d))).collect();
        qs.sort();
        qs.dedup();
        let imgs: Vec<Rat> = qs.iter().map(|q| h.h(q).unwrap()).collect();
        assert!(imgs.windows(2).all(|w| w[0] < w[1]));
        assert!(imgs.iter().all(|v| p().cmp_rational(v) == Ordering::Less && *v < rat(1, 1)));
    }

    #[test]
    fn small_denominators_are_hit() {
        // every rational in (p, 1) with denominator <= 12 is an image of a node
        // of depth <= 20
        let h = BackAndForth::new(p()).unwrap();
        let mut imgs = Vec::new();
        let mut frontier = vec![(rat(0, 1), rat(1, 1))];
        for _ in 0..20 {
            let mut next = Vec::new();
            for (a, b) in frontier {
                let m = Rat::new(a.numer() + b.numer(), a.denom() + b.denom());
                imgs.push(h.h(&m).unwrap());
                next.push((a, m.clone()));
                next.push((m, b));
            }
            frontier = next;
            if frontier.len() > 4096 {
                break;
            }
        }
        for d in 1..=12i64 {
            for n in 1..d {
                let q = rat(n, d);
                if p().cmp_rational(&q) == Ordering::Less {
                    assert!(imgs.contains(&q), "{q} missing");
                }
            }
        }
    }
}
