use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Piecewise-linear membership function with corners `a <= b <= c <= d`.
///
/// Membership rises on `[a, b]`, is 1 on `[b, c]` and falls on `[c, d]`.
/// Equal corners are allowed: `a == b` or `c == d` turns the ramp into a
/// step, `b == c` gives a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 4]", try_from = "[f64; 4]")]
pub struct Trapezoid {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Trapezoid {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::config(format!(
                "trapezoid corners must be finite, got ({a}, {b}, {c}, {d})"
            )));
        }
        if !(a <= b && b <= c && c <= d) {
            return Err(Error::config(format!(
                "trapezoid corners must be ordered a <= b <= c <= d, got ({a}, {b}, {c}, {d})"
            )));
        }
        Ok(Trapezoid { a, b, c, d })
    }

    /// Builds a trapezoid from corners in any order.
    pub fn sorted(mut corners: [f64; 4]) -> Result<Self> {
        corners.sort_by(f64::total_cmp);
        let [a, b, c, d] = corners;
        Trapezoid::new(a, b, c, d)
    }

    pub fn corners(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Support `[a, d]`.
    pub fn support(&self) -> (f64, f64) {
        (self.a, self.d)
    }

    /// Core `[b, c]`, where membership is exactly 1.
    pub fn core(&self) -> (f64, f64) {
        (self.b, self.c)
    }

    pub fn membership(&self, x: f64) -> f64 {
        if x < self.a || x > self.d {
            0.0
        } else if x < self.b {
            // a <= x < b implies a < b
            (x - self.a) / (self.b - self.a)
        } else if x <= self.c {
            1.0
        } else {
            // c < x <= d implies c < d
            (self.d - x) / (self.d - self.c)
        }
    }

    /// Mirror image about `pivot`.
    pub fn reflect(&self, pivot: f64) -> Self {
        let r = |v: f64| 2.0 * pivot - v;
        Trapezoid {
            a: r(self.d),
            b: r(self.c),
            c: r(self.b),
            d: r(self.a),
        }
    }

    /// Image under `x -> scale * x + offset`, `scale > 0`.
    pub fn affine(&self, scale: f64, offset: f64) -> Result<Self> {
        let m = |v: f64| scale * v + offset;
        Trapezoid::new(m(self.a), m(self.b), m(self.c), m(self.d))
    }
}

impl From<Trapezoid> for [f64; 4] {
    fn from(t: Trapezoid) -> Self {
        t.corners()
    }
}

impl TryFrom<[f64; 4]> for Trapezoid {
    type Error = Error;

    fn try_from(c: [f64; 4]) -> Result<Self> {
        Trapezoid::new(c[0], c[1], c[2], c[3])
    }
}
