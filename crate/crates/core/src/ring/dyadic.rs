//! Arbitrary-precision dyadic floats for the logarithmic embeddings.
//!
//! A value is `mantissa * 2^exp` with a `BigInt` mantissa. Only the handful
//! of operations the unit decomposition needs are provided; results are
//! truncated to a working precision, and nothing here is trusted for final
//! answers — exponents proposed from these approximations are always
//! certified by exact arithmetic afterwards.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub(crate) struct Dyadic {
    mantissa: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exp: i64) -> Self {
        Dyadic { mantissa, exp }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Dyadic {
            mantissa: n.clone(),
            exp: 0,
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic {
            mantissa: BigInt::from(n),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Drops mantissa bits beyond `prec`, adjusting the exponent.
    pub fn truncate(mut self, prec: u64) -> Self {
        let bits = self.mantissa.bits();
        if bits > prec {
            let shift = bits - prec;
            self.mantissa >>= shift;
            self.exp += shift as i64;
        }
        self
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (lo, hi) = if self.exp <= rhs.exp {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let shift = (hi.exp - lo.exp) as u64;
        Dyadic {
            mantissa: (&hi.mantissa << shift) + &lo.mantissa,
            exp: lo.exp,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&Dyadic {
            mantissa: -&rhs.mantissa,
            exp: rhs.exp,
        })
    }

    pub fn mul(&self, rhs: &Self, prec: u64) -> Self {
        Dyadic {
            mantissa: &self.mantissa * &rhs.mantissa,
            exp: self.exp + rhs.exp,
        }
        .truncate(prec)
    }

    /// `log2 |self|` as an `f64`; caller must ensure the value is nonzero.
    pub fn log2_abs(&self) -> f64 {
        let m = self.mantissa.abs();
        let bits = m.bits();
        if bits <= 53 {
            m.to_f64().expect("small mantissa fits f64").log2() + self.exp as f64
        } else {
            let shift = bits - 53;
            let top = (m >> shift).to_f64().expect("53-bit value fits f64");
            top.log2() + (shift as i64 + self.exp) as f64
        }
    }
}

/// Sign of `t^3 + t^2 - 4t + 1` at the dyadic point `m * 2^-k`, computed
/// exactly by clearing denominators.
fn minpoly_sign_at(m: &BigInt, k: u64) -> i32 {
    let p1 = BigInt::from(1) << k;
    let p2 = &p1 * &p1;
    let p3 = &p2 * &p1;
    let v = m * m * m + m * m * &p1 - BigInt::from(4) * m * &p2 + &p3;
    match v.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// The three real roots of `t^3 + t^2 - 4t + 1`, ascending
/// (approximately -2.651, 0.274, 1.377), isolated by exact-sign bisection
/// to `prec` bits after the point.
pub(crate) fn cubic_real_roots(prec: u64) -> [Dyadic; 3] {
    // Bracketing integer intervals with a sign change each.
    let brackets: [(i64, i64); 3] = [(-3, -2), (0, 1), (1, 2)];
    brackets.map(|(lo0, hi0)| {
        let mut lo = BigInt::from(lo0);
        let mut hi = BigInt::from(hi0);
        let mut k: u64 = 0;
        let lo_sign = minpoly_sign_at(&lo, 0);
        debug_assert_ne!(lo_sign, 0);
        debug_assert_eq!(minpoly_sign_at(&hi, 0), -lo_sign);
        for _ in 0..prec {
            lo <<= 1;
            hi <<= 1;
            k += 1;
            let mid = (&lo + &hi) >> 1;
            // The polynomial is irreducible over Q, so no dyadic point is a
            // root and the sign is never zero.
            if minpoly_sign_at(&mid, k) == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Dyadic::new(lo, -(k as i64))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_match_known_decimals() {
        let roots = cubic_real_roots(80);
        let approx: Vec<f64> = roots
            .iter()
            .map(|r| {
                let sign = if r.mantissa.is_negative() { -1.0 } else { 1.0 };
                sign * r.log2_abs().exp2()
            })
            .collect();
        let expect = [-2.6511, 0.2739, 1.3772];
        for (a, e) in approx.iter().zip(expect.iter()) {
            assert!((a - e).abs() < 1e-3, "root {a} vs {e}");
        }
        // Roots sum to -(t^2 coefficient).
        let sum: f64 = approx.iter().sum();
        assert!((sum + 1.0).abs() < 1e-9);
    }

    #[test]
    fn arithmetic_basics() {
        let a = Dyadic::from_i64(3);
        let b = Dyadic::new(BigInt::from(5), -2); // 1.25
        let s = a.add(&b);
        assert!((s.log2_abs() - (4.25f64).log2()).abs() < 1e-12);
        let p = a.mul(&b, 128);
        assert!((p.log2_abs() - (3.75f64).log2()).abs() < 1e-12);
        assert!(a.sub(&Dyadic::from_i64(3)).is_zero());
    }
}
