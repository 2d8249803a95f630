//! Semiring weights.
//!
//! A semiring `(S, ⊕, ⊗, 0̄, 1̄)` supplies the path algebra for every machine
//! in this crate: weights multiply (`⊗`) along a path and alternative paths
//! sum (`⊕`). Only the tropical semiring `(ℝ₊ ∪ {∞}, min, +, ∞, 0)` is
//! shipped, but machines and algorithms are written against the traits here.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Weight set with the two monoid operations.
///
/// Implementations must satisfy the usual laws: `plus` is associative and
/// commutative with identity `zero`; `times` is associative with identity
/// `one`; `times` distributes over `plus`; and `zero` annihilates `times`.
pub trait Semiring: Clone + fmt::Debug + Eq + Hash {
    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Semirings where a weight can be factored out of another.
///
/// `a.divide(b)` returns `c` with `b ⊗ c = a`, or `None` when no such
/// element exists. The determinizer uses it to normalize residual weights.
pub trait DivisibleSemiring: Semiring {
    fn divide(&self, rhs: &Self) -> Option<Self>;
}

/// Element of the tropical semiring.
///
/// The carrier is the non-negative reals plus `∞`. Construction rejects
/// negative and NaN values, so every value in circulation is valid.
#[derive(Clone, Copy)]
pub struct TropicalWeight(f64);

impl TropicalWeight {
    pub const INFINITY: TropicalWeight = TropicalWeight(f64::INFINITY);
    pub const ZERO_COST: TropicalWeight = TropicalWeight(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(Error::InvalidWeight {
                text: value.to_string(),
            });
        }
        if value < 0.0 {
            return Err(Error::NegativeWeight { value });
        }
        // -0.0 passes the check above; fold it into +0.0 so bitwise hashing agrees with ==.
        Ok(TropicalWeight(value + 0.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl Semiring for TropicalWeight {
    fn zero() -> Self {
        Self::INFINITY
    }

    fn one() -> Self {
        Self::ZERO_COST
    }

    fn plus(&self, rhs: &Self) -> Self {
        if rhs.0 < self.0 {
            *rhs
        } else {
            *self
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        if self.is_infinite() || rhs.is_infinite() {
            Self::INFINITY
        } else {
            TropicalWeight(self.0 + rhs.0)
        }
    }
}

impl DivisibleSemiring for TropicalWeight {
    fn divide(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_infinite() {
            return None;
        }
        if self.is_infinite() {
            return Some(Self::INFINITY);
        }
        let diff = self.0 - rhs.0;
        (diff >= 0.0).then_some(TropicalWeight(diff + 0.0))
    }
}

impl PartialEq for TropicalWeight {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for TropicalWeight {}

impl Hash for TropicalWeight {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl PartialOrd for TropicalWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order, `∞` greatest. `plus` always returns the lesser operand.
impl Ord for TropicalWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Debug for TropicalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TropicalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("Infinity")
        } else {
            // Rust prints the shortest decimal that parses back to the same f64.
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for TropicalWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let value: f64 = text.parse().map_err(|_| Error::InvalidWeight {
            text: text.to_string(),
        })?;
        if value == f64::NEG_INFINITY {
            return Err(Error::NegativeWeight { value });
        }
        TropicalWeight::new(value).map_err(|err| match err {
            Error::InvalidWeight { .. } => Error::InvalidWeight {
                text: text.to_string(),
            },
            other => other,
        })
    }
}

impl TryFrom<f64> for TropicalWeight {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        TropicalWeight::new(value)
    }
}

impl From<u32> for TropicalWeight {
    fn from(value: u32) -> Self {
        TropicalWeight(f64::from(value))
    }
}
