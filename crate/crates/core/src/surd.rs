//! Exact numbers of the form `a + b * sqrt(m)` with rational `a`, `b`.
//!
//! Enough arithmetic to compare `alpha * d < D` for integer `d`, `D` without
//! floating point, which is all the preset checks need.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub type Q = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surd {
    pub a: Q,
    pub b: Q,
    /// Square-free radicand; 1 when `b` is zero.
    pub m: i128,
}

impl Surd {
    pub fn rational(a: Q) -> Self {
        Surd {
            a,
            b: Q::zero(),
            m: 1,
        }
    }

    pub fn int(a: i128) -> Self {
        Surd::rational(Q::from_integer(a))
    }

    /// `a + b * sqrt(m)`.
    pub fn new(a: Q, b: Q, m: i128) -> Self {
        assert!(m >= 1, "radicand must be positive");
        if b.is_zero() || m == 1 {
            return Surd::rational(a + b);
        }
        Surd { a, b, m }
    }

    /// Best rational for a decimal like `0.1` (exactly 1/10 rather than the
    /// binary expansion).
    pub fn from_f64(x: f64) -> Option<Self> {
        Q::approximate_float(x).map(Surd::rational)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add_rational(self, q: Q) -> Self {
        Surd {
            a: self.a + q,
            ..self
        }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: Q| q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap();
        f(self.a) + f(self.b) * (self.m as f64).sqrt()
    }

    /// Sign of `self * d - rhs`, exactly.
    pub fn cmp_scaled(&self, d: i128, rhs: i128) -> Ordering {
        // self*d - rhs = b*d*sqrt(m) - (rhs - a*d) = L*sqrt(m) - R
        let l = self.b * d;
        let r = Q::from_integer(rhs) - self.a * d;
        sign_of_diff(l, self.m, r)
    }

    /// `self * d < rhs`, exactly.
    pub fn lt_scaled(&self, d: i128, rhs: i128) -> bool {
        self.cmp_scaled(d, rhs) == Ordering::Less
    }

    /// `floor(self * t)` for `t >= 0`.
    pub fn floor_times(&self, t: i128) -> i128 {
        assert!(t >= 0);
        // Largest integer z with z <= self*t, i.e. cmp_scaled(t, z) != Less.
        let guess = (self.to_f64() * t as f64).floor() as i128;
        let mut z = guess;
        while self.cmp_scaled(t, z) == Ordering::Less {
            z -= 1;
        }
        while self.cmp_scaled(t, z + 1) != Ordering::Less {
            z += 1;
        }
        z
    }
}

/// Sign of `l * sqrt(m) - r`.
fn sign_of_diff(l: Q, m: i128, r: Q) -> Ordering {
    let l_neg = l.is_negative();
    let r_neg = r.is_negative();
    match (l_neg, r_neg) {
        (false, true) => Ordering::Greater,
        (true, false) => Ordering::Less,
        (false, false) => (l * l * m).cmp(&(r * r)),
        (true, true) => (r * r).cmp(&(l * l * m)),
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            let root = if self.b == Q::from_integer(1) {
                format!("sqrt({})", self.m)
            } else {
                format!("{}*sqrt({})", self.b, self.m)
            };
            if self.a == Q::from_integer(0) {
                f.write_str(&root)
            } else {
                write!(f, "{} + {root}", self.a)
            }
        }
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Surd", 2)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("value", &self.to_f64())?;
        st.end()
    }
}

/// Serializes a rational as `"p/q"` (or `"p"` when integral).
pub fn ser_q<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}
