//! The real quadratic field `Q(sqrt(13))`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{format_rat_list, parse_rat_list, Rat, RingError};

/// An element `a + b sqrt(13)` of `Q(sqrt(13))`; arithmetic reduces with
/// `t^2 = 13`. Coefficient field of the externally supplied elliptic curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadNum {
    coords: [Rat; 2],
}

impl QuadNum {
    pub fn zero() -> Self {
        QuadNum {
            coords: [Rat::zero(), Rat::zero()],
        }
    }

    pub fn one() -> Self {
        QuadNum {
            coords: [Rat::one(), Rat::zero()],
        }
    }

    pub fn sqrt13() -> Self {
        QuadNum {
            coords: [Rat::zero(), Rat::one()],
        }
    }

    pub fn from_coords(coords: [Rat; 2]) -> Self {
        QuadNum { coords }
    }

    pub fn from_integers(coords: [i64; 2]) -> Self {
        QuadNum {
            coords: [super::rat(coords[0]), super::rat(coords[1])],
        }
    }

    pub fn from_rational(r: Rat) -> Self {
        QuadNum {
            coords: [r, Rat::zero()],
        }
    }

    pub fn coords(&self) -> &[Rat; 2] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    /// `a - b sqrt(13)`.
    pub fn conjugate(&self) -> Self {
        QuadNum {
            coords: [self.coords[0].clone(), -&self.coords[1]],
        }
    }

    /// `a^2 - 13 b^2`.
    pub fn norm(&self) -> Rat {
        &(&self.coords[0] * &self.coords[0])
            - &(&(&self.coords[1] * &self.coords[1]) * &super::rat(13))
    }

    pub fn inverse(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroDivision("quadratic inverse"));
        }
        Ok(self.conjugate().scale(&self.norm().recip()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        QuadNum {
            coords: [&self.coords[0] * s, &self.coords[1] * s],
        }
    }
}

impl Add for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        QuadNum {
            coords: [
                &self.coords[0] + &rhs.coords[0],
                &self.coords[1] + &rhs.coords[1],
            ],
        }
    }
}

impl Sub for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        QuadNum {
            coords: [
                &self.coords[0] - &rhs.coords[0],
                &self.coords[1] - &rhs.coords[1],
            ],
        }
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            coords: [-&self.coords[0], -&self.coords[1]],
        }
    }
}

impl Mul for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        let (a, b) = (&self.coords[0], &self.coords[1]);
        let (c, d) = (&rhs.coords[0], &rhs.coords[1]);
        QuadNum {
            coords: [
                &(a * c) + &(&(b * d) * &super::rat(13)),
                &(a * d) + &(b * c),
            ],
        }
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rat_list(&self.coords))
    }
}

impl FromStr for QuadNum {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, RingError> {
        let v = parse_rat_list(s, 2)?;
        Ok(QuadNum {
            coords: [v[0].clone(), v[1].clone()],
        })
    }
}
