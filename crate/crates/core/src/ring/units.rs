//! Decomposition of units of `Z[rho]` over the fundamental system
//! `rho`, `1 - rho`.
//!
//! The unit group is `{+-1} x <rho> x <1 - rho>` (the field is totally real
//! cubic, so the unit rank is 2). Candidate exponents are proposed from two
//! real logarithmic embeddings and then certified by exact multiplication;
//! a failed certification retries at doubled precision up to a cap, so
//! floating-point error can cost time but never correctness.

use super::dyadic::{cubic_real_roots, Dyadic};
use super::{CubicNum, RingError};
use num_traits::One;

/// `u = sign * rho^rho_exp * (1 - rho)^one_minus_rho_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitDecomposition {
    pub sign: i8,
    pub rho_exp: i64,
    pub one_minus_rho_exp: i64,
}

const PRECISION_LADDER: [u64; 5] = [128, 256, 512, 1024, 2048];

/// Writes a unit of `Z[rho]` in the form `+- rho^i (1 - rho)^j`.
pub fn unit_decompose(u: &CubicNum) -> Result<UnitDecomposition, RingError> {
    if !u.is_integral() {
        return Err(RingError::NotAUnit(format!("{u} is not integral")));
    }
    let n = u.norm();
    if !(n.is_one() || (-&n).is_one()) {
        return Err(RingError::NotAUnit(format!("{u} has norm {n}")));
    }

    'ladder: for &prec in &PRECISION_LADDER {
        let roots = cubic_real_roots(prec);
        // Two embeddings suffice to pin the two exponents; the system below
        // has determinant about 1.37, comfortably far from singular.
        let mut a = [[0f64; 2]; 2];
        let mut b = [0f64; 2];
        for (row, r) in roots.iter().take(2).enumerate() {
            let val = eval_at(u, r, prec);
            if val.is_zero() {
                // Catastrophic cancellation at this precision.
                continue 'ladder;
            }
            let one_minus = Dyadic::from_i64(1).sub(r);
            a[row] = [r.log2_abs(), one_minus.log2_abs()];
            b[row] = val.log2_abs();
        }
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        let i = ((b[0] * a[1][1] - b[1] * a[0][1]) / det).round();
        let j = ((a[0][0] * b[1] - a[1][0] * b[0]) / det).round();
        if !i.is_finite() || !j.is_finite() || i.abs() > 1e6 || j.abs() > 1e6 {
            continue;
        }
        let (i, j) = (i as i64, j as i64);
        let candidate = &CubicNum::rho().pow(i)? * &CubicNum::one_minus_rho().pow(j)?;
        if &candidate == u {
            return Ok(UnitDecomposition {
                sign: 1,
                rho_exp: i,
                one_minus_rho_exp: j,
            });
        }
        if &-&candidate == u {
            return Ok(UnitDecomposition {
                sign: -1,
                rho_exp: i,
                one_minus_rho_exp: j,
            });
        }
    }
    Err(RingError::DecompositionFailure)
}

pub fn unit_recompose(d: &UnitDecomposition) -> CubicNum {
    let unit = &CubicNum::rho().pow(d.rho_exp).expect("rho is invertible")
        * &CubicNum::one_minus_rho()
            .pow(d.one_minus_rho_exp)
            .expect("1 - rho is invertible");
    if d.sign < 0 {
        -&unit
    } else {
        unit
    }
}

/// Horner evaluation of the coordinates of `u` at a real root of the
/// minimal polynomial — the image of `u` under that real embedding.
fn eval_at(u: &CubicNum, root: &Dyadic, prec: u64) -> Dyadic {
    let c = u.coords();
    let mut acc = Dyadic::from_bigint(c[2].numer());
    acc = acc.mul(root, prec).add(&Dyadic::from_bigint(c[1].numer()));
    acc.mul(root, prec).add(&Dyadic::from_bigint(c[0].numer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decomp(sign: i8, i: i64, j: i64) -> UnitDecomposition {
        UnitDecomposition {
            sign,
            rho_exp: i,
            one_minus_rho_exp: j,
        }
    }

    #[test]
    fn generators_and_signs() {
        assert_eq!(unit_decompose(&CubicNum::rho()).unwrap(), decomp(1, 1, 0));
        assert_eq!(
            unit_decompose(&CubicNum::one_minus_rho()).unwrap(),
            decomp(1, 0, 1)
        );
        assert_eq!(unit_decompose(&CubicNum::one()).unwrap(), decomp(1, 0, 0));
        assert_eq!(
            unit_decompose(&-&CubicNum::one()).unwrap(),
            decomp(-1, 0, 0)
        );
    }

    #[test]
    fn round_trips_on_a_grid() {
        for i in [-20, -7, -1, 0, 3, 20] {
            for j in [-20, -2, 0, 1, 20] {
                for sign in [1i8, -1] {
                    let d = decomp(sign, i, j);
                    let u = unit_recompose(&d);
                    assert_eq!(unit_decompose(&u).unwrap(), d, "at {sign} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn large_exponents_need_the_ladder_but_still_certify() {
        let d = decomp(-1, -344, 215);
        let u = unit_recompose(&d);
        assert_eq!(unit_decompose(&u).unwrap(), d);
    }

    #[test]
    fn rejects_non_units() {
        assert!(matches!(
            unit_decompose(&CubicNum::from_integers([2, 0, 0])),
            Err(RingError::NotAUnit(_))
        ));
        assert!(matches!(
            unit_decompose(&CubicNum::from_coords([
                super::super::Rat::new(1.into(), 2.into()),
                super::super::rat(0),
                super::super::rat(0),
            ])),
            Err(RingError::NotAUnit(_))
        ));
    }
}
