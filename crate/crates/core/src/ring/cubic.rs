//! The totally real cubic subfield `K = Q(rho)` of `Q(zeta)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::{format_rat_list, parse_rat_list, CycloNum, GaloisElement, Rat, RingError};

/// An element of `K = Q(rho)` in the basis `1, rho, rho^2`, where
/// `rho = zeta + zeta^-1 + zeta^5 + zeta^-5` has minimal polynomial
/// `t^3 + t^2 - 4t + 1`.
///
/// `Z[rho]` is the full ring of integers of `K` (the discriminant of the
/// minimal polynomial is `169`, the field discriminant), so integrality of
/// the coordinates tests integrality of the element. The unit group of
/// `Z[rho]` is generated by `-1`, `rho`, `1 - rho`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicNum {
    coords: [Rat; 3],
}

impl CubicNum {
    pub fn zero() -> Self {
        CubicNum {
            coords: std::array::from_fn(|_| Rat::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_integers([1, 0, 0])
    }

    pub fn rho() -> Self {
        Self::from_integers([0, 1, 0])
    }

    /// The fundamental unit `1 - rho`.
    pub fn one_minus_rho() -> Self {
        Self::from_integers([1, -1, 0])
    }

    pub fn from_coords(coords: [Rat; 3]) -> Self {
        CubicNum { coords }
    }

    pub fn from_integers(coords: [i64; 3]) -> Self {
        CubicNum {
            coords: std::array::from_fn(|i| super::rat(coords[i])),
        }
    }

    pub fn from_rational(r: Rat) -> Self {
        let mut out = Self::zero();
        out.coords[0] = r;
        out
    }

    pub fn coords(&self) -> &[Rat; 3] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1].is_zero() && self.coords[2].is_zero()
    }

    pub fn rational_part(&self) -> Option<Rat> {
        if self.coords[1].is_zero() && self.coords[2].is_zero() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        CubicNum {
            coords: std::array::from_fn(|i| &self.coords[i] * s),
        }
    }

    /// The inclusion `K -> Q(zeta)` sending `rho` to
    /// `zeta + zeta^-1 + zeta^5 + zeta^-5`.
    pub fn embed(&self) -> CycloNum {
        let rho = rho_in_cyclo();
        let rho2 = &rho * &rho;
        let mut out = CycloNum::from_rational(self.coords[0].clone());
        out = &out + &rho.scale(&self.coords[1]);
        &out + &rho2.scale(&self.coords[2])
    }

    /// The non-trivial automorphism of `K/Q` induced by `zeta -> zeta^2`
    /// (any generator of `Gal(L/Q)` induces the same 3-cycle on the roots of
    /// the minimal polynomial; applying it once or twice reaches both
    /// non-trivial conjugates).
    pub fn conjugate(&self) -> Self {
        let (sr, sr2) = conjugated_basis();
        let mut out = Self::from_rational(self.coords[0].clone());
        out = &out + &sr.scale(&self.coords[1]);
        &out + &sr2.scale(&self.coords[2])
    }

    /// The norm `N_{K/Q}(x) = x * sigma(x) * sigma^2(x)`.
    pub fn norm(&self) -> Rat {
        let s = self.conjugate();
        let ss = s.conjugate();
        (&(self * &s) * &ss)
            .rational_part()
            .expect("product of all three conjugates is rational")
    }

    /// True for units of `Z[rho]`: integral with norm `+-1`.
    pub fn is_unit(&self) -> bool {
        if !self.is_integral() {
            return false;
        }
        let n = self.norm();
        n.is_one() || (-n).is_one()
    }

    pub fn inverse(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroDivision("cubic inverse"));
        }
        let s = self.conjugate();
        let ss = s.conjugate();
        let cofactor = &s * &ss;
        let norm = (self * &cofactor)
            .rational_part()
            .expect("element times its cofactor is the rational norm");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn pow(&self, e: i64) -> Result<Self, RingError> {
        let (mut base, mut e) = if e < 0 {
            (self.inverse()?, e.unsigned_abs())
        } else {
            (self.clone(), e as u64)
        };
        let mut acc = CubicNum::one();
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

fn rho_in_cyclo() -> CycloNum {
    let mut rho = CycloNum::zero();
    for k in [1, -1, 5, -5] {
        rho = &rho + &CycloNum::zeta_pow(k);
    }
    rho
}

/// Images of `rho` and `rho^2` under the conjugation, computed once by
/// pushing through the big field and retracting.
fn conjugated_basis() -> &'static (CubicNum, CubicNum) {
    static CACHE: OnceLock<(CubicNum, CubicNum)> = OnceLock::new();
    CACHE.get_or_init(|| {
        let sigma = GaloisElement::new(2).expect("2 is a valid index");
        let sr_l = rho_in_cyclo().galois(sigma);
        let sr = retract_to_cubic(&sr_l).expect("conjugate of rho lies in the subfield");
        let sr2 = &sr * &sr;
        (sr, sr2)
    })
}

/// Re-expresses an element of the big field in the `1, rho, rho^2` basis,
/// failing with [`RingError::Retraction`] when it does not lie in the cubic
/// subfield. Solves the exact 12x3 linear system by elimination and verifies
/// the candidate by embedding it back.
pub fn retract_to_cubic(x: &CycloNum) -> Result<CubicNum, RingError> {
    let basis = [CubicNum::one().embed(), CubicNum::rho().embed(), {
        let r = rho_in_cyclo();
        &r * &r
    }];
    // Augmented rows [b0_i, b1_i, b2_i | x_i], eliminated in place.
    let mut rows: Vec<[Rat; 4]> = (0..12)
        .map(|i| {
            [
                basis[0].coord(i).clone(),
                basis[1].coord(i).clone(),
                basis[2].coord(i).clone(),
                x.coord(i).clone(),
            ]
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(3);
    for col in 0..3 {
        let start = pivot_rows.len();
        let Some(p) = (start..12).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(start, p);
        let inv = rows[start][col].recip();
        for c in col..4 {
            rows[start][c] = &rows[start][c] * &inv;
        }
        for r in 0..12 {
            if r != start && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..4 {
                    rows[r][c] = &rows[r][c] - &(&f * &rows[start][c]);
                }
            }
        }
        pivot_rows.push(col);
    }
    debug_assert_eq!(pivot_rows.len(), 3, "basis columns are independent");
    let candidate =
        CubicNum::from_coords([rows[0][3].clone(), rows[1][3].clone(), rows[2][3].clone()]);
    if &candidate.embed() == x {
        Ok(candidate)
    } else {
        Err(RingError::Retraction)
    }
}

impl Add for &CubicNum {
    type Output = CubicNum;
    fn add(self, rhs: &CubicNum) -> CubicNum {
        CubicNum {
            coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]),
        }
    }
}

impl Sub for &CubicNum {
    type Output = CubicNum;
    fn sub(self, rhs: &CubicNum) -> CubicNum {
        CubicNum {
            coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]),
        }
    }
}

impl Neg for &CubicNum {
    type Output = CubicNum;
    fn neg(self) -> CubicNum {
        CubicNum {
            coords: std::array::from_fn(|i| -&self.coords[i]),
        }
    }
}

impl Mul for &CubicNum {
    type Output = CubicNum;
    fn mul(self, rhs: &CubicNum) -> CubicNum {
        // Plain polynomial product c0..c4, then rho^3 = -rho^2 + 4 rho - 1
        // and rho^4 = 5 rho^2 - 5 rho + 1.
        let mut c: [Rat; 5] = std::array::from_fn(|_| Rat::zero());
        for (i, a) in self.coords.iter().enumerate() {
            for (j, b) in rhs.coords.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        CubicNum {
            coords: [
                &(&c[0] - &c[3]) + &c[4],
                &c[1] + &(&(&c[3] * &super::rat(4)) - &(&c[4] * &super::rat(5))),
                &(&c[2] - &c[3]) + &(&c[4] * &super::rat(5)),
            ],
        }
    }
}

impl fmt::Display for CubicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rat_list(&self.coords))
    }
}

impl FromStr for CubicNum {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, RingError> {
        let v = parse_rat_list(s, 3)?;
        Ok(CubicNum {
            coords: [v[0].clone(), v[1].clone(), v[2].clone()],
        })
    }
}
