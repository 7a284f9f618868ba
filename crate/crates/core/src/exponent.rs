//! Exponents on the lattice (1/24)ℤ.
//!
//! Every series in this crate lives on a single exponent lattice with fixed
//! denominator 24. This covers the q^{1/24} prefactor of η(τ), the q^{a/24}
//! valuations of η(aτ), the q^{n/8} = q^{3n/24} grading of the moonshine
//! module, and the q^{m j²/8} supports of the parity functions.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::rational::Ratio;
use num::Integer;

/// Fixed lattice denominator: exponents are integer multiples of 1/24.
pub const LATTICE_DEN: i64 = 24;

/// An exponent e = num24/24 of the formal variable q.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exponent {
    num24: i64,
}

impl Exponent {
    /// Exponent num24/24.
    pub const fn from_num24(num24: i64) -> Self {
        Exponent { num24 }
    }

    /// The integer exponent n (= 24n/24).
    pub const fn from_int(n: i64) -> Self {
        Exponent {
            num24: n * LATTICE_DEN,
        }
    }

    /// Exponent n/8 in the grading used by the moonshine module.
    pub const fn from_eighths(n: i64) -> Self {
        Exponent { num24: 3 * n }
    }

    /// Exponent p/q. Returns `None` when p/q is not on the (1/24)ℤ lattice.
    pub fn from_ratio(p: i64, q: i64) -> Option<Self> {
        assert!(q != 0, "exponent denominator must be nonzero");
        let num = p.checked_mul(LATTICE_DEN)?;
        if num % q != 0 {
            return None;
        }
        Some(Exponent { num24: num / q })
    }

    pub const fn num24(self) -> i64 {
        self.num24
    }

    pub const fn zero() -> Self {
        Exponent { num24: 0 }
    }

    pub fn is_integer(self) -> bool {
        self.num24 % LATTICE_DEN == 0
    }

    /// The integer n with self = n/8, when the exponent is on the 1/8 sublattice.
    pub fn as_eighths(self) -> Option<i64> {
        if self.num24 % 3 == 0 {
            Some(self.num24 / 3)
        } else {
            None
        }
    }

    /// The integer n with self = n, when the exponent is an integer.
    pub fn as_int(self) -> Option<i64> {
        if self.num24 % LATTICE_DEN == 0 {
            Some(self.num24 / LATTICE_DEN)
        } else {
            None
        }
    }

    /// Exact value as a rational number.
    pub fn as_ratio(self) -> Ratio<i64> {
        Ratio::new(self.num24, LATTICE_DEN)
    }

    /// Scales the exponent by a positive rational r, requiring the result to
    /// stay on the lattice.
    pub fn scale(self, r: Ratio<i64>) -> Option<Self> {
        let num = self.num24.checked_mul(*r.numer())?;
        if num % r.denom() != 0 {
            return None;
        }
        Some(Exponent {
            num24: num / r.denom(),
        })
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent {
            num24: self.num24 + rhs.num24,
        }
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent {
            num24: self.num24 - rhs.num24,
        }
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent { num24: -self.num24 }
    }
}

impl fmt::Display for Exponent {
    /// Renders as a reduced fraction, e.g. `-1/8`, `7/8`, `3`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.num24.gcd(&LATTICE_DEN);
        let (n, d) = (self.num24 / g, LATTICE_DEN / g);
        if d == 1 {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}
