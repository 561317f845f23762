//! Elements of `Q(zeta)` for a primitive 13th root of unity `zeta`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::galois::CUBIC_STABILIZER;
use super::{format_rat_list, parse_rat_list, CubicNum, GaloisElement, Rat, RingError};

/// An element of `Q(zeta)`, stored as exact rational coordinates in the
/// power basis `zeta^0, .., zeta^11`.
///
/// Multiplication is cyclic convolution modulo `t^13 - 1` followed by the
/// reduction `zeta^12 = -(1 + zeta + .. + zeta^11)`: the 13th coefficient is
/// subtracted from each of the first twelve. Equality of coordinates is
/// equality in the field, since the power basis is a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloNum {
    coords: [Rat; 12],
}

impl CycloNum {
    pub fn zero() -> Self {
        CycloNum {
            coords: std::array::from_fn(|_| Rat::zero()),
        }
    }

    pub fn one() -> Self {
        Self::zeta_pow(0)
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// `zeta^k` for any integer `k` (negative exponents allowed).
    pub fn zeta_pow(k: i64) -> Self {
        let r = k.rem_euclid(13) as usize;
        let mut coords: [Rat; 12] = std::array::from_fn(|_| Rat::zero());
        if r == 12 {
            for c in coords.iter_mut() {
                *c = -Rat::one();
            }
        } else {
            coords[r] = Rat::one();
        }
        CycloNum { coords }
    }

    pub fn from_coords(coords: [Rat; 12]) -> Self {
        CycloNum { coords }
    }

    pub fn from_integers(coords: [i64; 12]) -> Self {
        CycloNum {
            coords: std::array::from_fn(|i| super::rat(coords[i])),
        }
    }

    pub fn from_rational(r: Rat) -> Self {
        let mut out = Self::zero();
        out.coords[0] = r;
        out
    }

    /// `1 - zeta^a`, the building block of the cyclotomic units.
    pub fn one_minus_zeta_pow(a: i64) -> Self {
        &Self::one() - &Self::zeta_pow(a)
    }

    pub fn coords(&self) -> &[Rat; 12] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Rat::is_zero)
    }

    /// True when the element lies in `Q` (only the `zeta^0` coordinate set).
    pub fn rational_part(&self) -> Option<Rat> {
        if self.coords[1..].iter().all(Rat::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// True when all coordinates are rational integers, i.e. the element
    /// lies in `Z[zeta]`, the full ring of integers.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        CycloNum {
            coords: std::array::from_fn(|i| &self.coords[i] * s),
        }
    }

    /// Applies `sigma_c : zeta -> zeta^c` by permuting exponents mod 13.
    pub fn galois(&self, sigma: GaloisElement) -> Self {
        let c = usize::from(sigma.index());
        let mut wide: [Rat; 13] = std::array::from_fn(|_| Rat::zero());
        for (i, a) in self.coords.iter().enumerate() {
            wide[c * i % 13] += a;
        }
        reduce_wide(wide)
    }

    /// The relative norm down to the cubic subfield `Q(rho)`: the product of
    /// the four conjugates under the stabilizer `{sigma_1, sigma_5, sigma_8,
    /// sigma_12}`, re-expressed in the `1, rho, rho^2` basis.
    pub fn norm_to_cubic(&self) -> Result<CubicNum, RingError> {
        let mut prod = CycloNum::one();
        for &c in &CUBIC_STABILIZER {
            prod = &prod * &self.galois(GaloisElement::new(u32::from(c))?);
        }
        super::retract_to_cubic(&prod)
    }

    /// The absolute norm `N_{Q(zeta)/Q}`, the product of all twelve
    /// conjugates.
    pub fn full_norm(&self) -> Rat {
        let mut prod = CycloNum::one();
        for sigma in GaloisElement::all() {
            prod = &prod * &self.galois(sigma);
        }
        prod.rational_part()
            .expect("product of all conjugates is Galois-stable, hence rational")
    }

    /// True for units of `Z[zeta]`: integral with norm `+-1`.
    pub fn is_unit(&self) -> bool {
        if !self.is_integral() {
            return false;
        }
        let n = self.full_norm();
        n.is_one() || (-n).is_one()
    }

    pub fn inverse(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroDivision("cyclotomic inverse"));
        }
        // Product of the eleven non-trivial conjugates; then
        // self * cofactor = norm, a nonzero rational.
        let mut cofactor = CycloNum::one();
        for sigma in GaloisElement::all().filter(|s| !s.is_identity()) {
            cofactor = &cofactor * &self.galois(sigma);
        }
        let norm = (self * &cofactor)
            .rational_part()
            .expect("element times its cofactor is the rational norm");
        Ok(cofactor.scale(&norm.recip()))
    }

    /// `self^e` for any integer `e`; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, RingError> {
        let (mut base, mut e) = if e < 0 {
            (self.inverse()?, e.unsigned_abs())
        } else {
            (self.clone(), e as u64)
        };
        let mut acc = CycloNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }
}

/// Reduces a 13-coordinate vector (coefficients of `zeta^0..zeta^12`) to the
/// 12-dimensional power basis using `zeta^12 = -(zeta^0 + .. + zeta^11)`.
fn reduce_wide(wide: [Rat; 13]) -> CycloNum {
    let top = wide[12].clone();
    CycloNum {
        coords: std::array::from_fn(|i| &wide[i] - &top),
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        CycloNum {
            coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]),
        }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        CycloNum {
            coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]),
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            coords: std::array::from_fn(|i| -&self.coords[i]),
        }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        let mut wide: [Rat; 13] = std::array::from_fn(|_| Rat::zero());
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                wide[(i + j) % 13] += a * b;
            }
        }
        reduce_wide(wide)
    }
}

impl fmt::Display for CycloNum {
    /// Comma-joined slash-form rationals, `zeta^0` coordinate first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rat_list(&self.coords))
    }
}

impl FromStr for CycloNum {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, RingError> {
        let v = parse_rat_list(s, 12)?;
        Ok(CycloNum {
            coords: std::array::from_fn(|i| v[i].clone()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_has_order_thirteen() {
        let z = CycloNum::zeta();
        let mut acc = CycloNum::one();
        for k in 1..13 {
            acc = &acc * &z;
            assert_eq!(acc, CycloNum::zeta_pow(k));
            assert!(!acc.is_one(), "zeta^{k} must not be 1");
        }
        assert!((&acc * &z).is_one());
    }

    #[test]
    fn geometric_sum_vanishes() {
        let mut sum = CycloNum::zero();
        for k in 0..13 {
            sum = &sum + &CycloNum::zeta_pow(k);
        }
        assert!(sum.is_zero());
    }

    #[test]
    fn inverse_round_trips() {
        let x = CycloNum::from_integers([3, -1, 0, 2, 0, 0, 5, 0, -4, 1, 1, 7]);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn galois_is_multiplicative() {
        let x = CycloNum::from_integers([1, 2, 0, -3, 1, 0, 0, 4, 0, 0, -1, 2]);
        let y = CycloNum::from_integers([0, 1, 1, 0, -2, 3, 0, 0, 1, -1, 0, 5]);
        for sigma in GaloisElement::all() {
            assert_eq!((&x * &y).galois(sigma), &x.galois(sigma) * &y.galois(sigma));
        }
    }

    #[test]
    fn norm_of_one_minus_zeta_is_thirteen() {
        // 13 is totally ramified: N(1 - zeta) = Phi_13(1) = 13.
        let x = CycloNum::one_minus_zeta_pow(1);
        assert_eq!(x.full_norm(), super::super::rat(13));
    }

    #[test]
    fn encoding_round_trips() {
        let x = CycloNum::from_coords(std::array::from_fn(|i| {
            Rat::new((i as i64 - 5).into(), (i as i64 + 2).into())
        }));
        let s = x.to_string();
        assert_eq!(s.parse::<CycloNum>().unwrap(), x);
    }
}
