//! Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
//!
//! Used where f64 rounding would contaminate a certificate: the Nystrom
//! kernel matrix and its factorization, and the Airy ODE march feeding
//! them. Not a general arbitrary-precision facility.

#[derive(Clone, Copy, Debug)]
pub(crate) struct TwoFloat {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl TwoFloat {
    #[inline]
    pub fn new(v: f64) -> Self {
        TwoFloat { hi: v, lo: 0.0 }
    }

    #[inline]
    pub fn parts(hi: f64, lo: f64) -> Self {
        TwoFloat { hi, lo }
    }

    /// Exact difference of two doubles.
    #[inline]
    pub fn from_sub(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, -b);
        TwoFloat { hi, lo }
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        TwoFloat { hi, lo }
    }

    #[inline]
    pub fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        TwoFloat { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Self) -> Self {
        self.add(TwoFloat {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    #[inline]
    pub fn mul(self, other: Self) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        TwoFloat { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Self) -> Self {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(TwoFloat::new(q1)));
        let q2 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        TwoFloat { hi, lo }
    }

    /// Double-double square root.
    #[inline]
    pub fn sqrt_dd(self) -> Self {
        let y = self.hi.sqrt();
        if y == 0.0 {
            return TwoFloat::new(0.0);
        }
        let r = self.sub(TwoFloat::from_prod(y, y));
        let e = r.hi / (2.0 * y);
        let (hi, lo) = quick_two_sum(y, e);
        TwoFloat { hi, lo }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    /// ln |x| carried to f64 with the low word folded in.
    #[inline]
    pub fn ln_abs(self) -> f64 {
        self.hi.abs().ln() + (self.lo / self.hi).ln_1p()
    }
}
