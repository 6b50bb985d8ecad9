use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A signed real stored as `sign · exp(log_abs)`.
///
/// Eigenvalues of the Toeplitz operators decay like `ϱ^k / k!`, far below the
/// smallest positive `f64`; every such quantity is carried in this form.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LogScalar {
    sign: i8,
    log_abs: f64,
}

impl LogScalar {
    pub const ZERO: LogScalar = LogScalar {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
    };
    pub const ONE: LogScalar = LogScalar { sign: 1, log_abs: 0.0 };

    /// Builds `sign · e^{log_abs}`. A zero sign or `log_abs = −∞` gives zero.
    pub fn new(sign: i8, log_abs: f64) -> Self {
        if sign == 0 || log_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            debug_assert!(!log_abs.is_nan(), "NaN logarithm");
            LogScalar {
                sign: sign.signum(),
                log_abs,
            }
        }
    }

    /// Positive value `e^{ln}`.
    pub fn from_ln(ln: f64) -> Self {
        Self::new(1, ln)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::new(if x > 0.0 { 1 } else { -1 }, x.abs().ln())
        }
    }

    /// Plain value; underflows to zero or overflows to ±∞ outside the `f64` range.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_abs.exp()
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// `ln|v|`; `−∞` for zero.
    pub fn ln_abs(self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        Self::new(self.sign.abs(), self.log_abs)
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero");
        Self::new(self.sign, -self.log_abs)
    }

    /// `|v|^p` for positive `p`, keeping the sign of `v` only when `p = 1`.
    pub fn powf(self, p: f64) -> Self {
        if self.sign == 0 {
            return Self::ZERO;
        }
        Self::new(1, self.log_abs * p)
    }

    /// Multiplies by the plain real `x`.
    pub fn scale(self, x: f64) -> Self {
        self * Self::from_f64(x)
    }

    /// Relative distance `|a − b| / max(|a|, |b|)`; zero when both vanish.
    pub fn rel_diff(self, other: Self) -> f64 {
        if self.sign == 0 && other.sign == 0 {
            return 0.0;
        }
        let big = self.log_abs.max(other.log_abs);
        let d = self - other;
        if d.is_zero() {
            0.0
        } else {
            (d.log_abs - big).exp()
        }
    }

    /// Total order consistent with the real values.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Ordering::Equal,
                1 => self.log_abs.total_cmp(&other.log_abs),
                _ => other.log_abs.total_cmp(&self.log_abs),
            },
            ord => ord,
        }
    }
}

impl PartialEq for LogScalar {
    fn eq(&self, other: &Self) -> bool {
        self.total_cmp(other) == Ordering::Equal
    }
}

impl PartialOrd for LogScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl Mul for LogScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.sign * rhs.sign, self.log_abs + rhs.log_abs)
    }
}

impl Div for LogScalar {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl Neg for LogScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.sign, self.log_abs)
    }
}

impl Add for LogScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_abs >= rhs.log_abs {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let d = small.log_abs - big.log_abs;
        if big.sign == small.sign {
            Self::new(big.sign, big.log_abs + d.exp().ln_1p())
        } else if d == 0.0 {
            Self::ZERO
        } else {
            Self::new(big.sign, big.log_abs + (-d.exp_m1()).ln())
        }
    }
}

impl Sub for LogScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Sum for LogScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for LogScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            1 => write!(f, "exp({})", self.log_abs),
            _ => write!(f, "-exp({})", self.log_abs),
        }
    }
}
