//! Exact arithmetic in the number fields of the pipeline.
//!
//! Three concrete fields appear:
//!
//! - `L = Q(zeta)` for a primitive 13th root of unity `zeta`, with ring of
//!   integers `Z[zeta]` ([`CycloNum`], dense coordinates in the power basis
//!   `zeta^0 .. zeta^11`),
//! - its totally real cubic subfield `K = Q(rho)` where
//!   `rho = zeta + zeta^-1 + zeta^5 + zeta^-5` satisfies
//!   `rho^3 + rho^2 - 4 rho + 1 = 0` ([`CubicNum`]),
//! - `Q(sqrt(13))`, the coefficient field of the external Frey curves
//!   ([`QuadNum`]).
//!
//! All coordinates are exact rationals; every operation is a pure function
//! on immutable values, so values can be shared freely across threads.
//!
//! `Gal(L/Q) = (Z/13)^*` acts through [`GaloisElement`]; the subgroup
//! generated by 5, of order 4, fixes `K`, which gives the relative norm
//! `N_{L/K}(x) = prod_{c in {1,5,8,12}} sigma_c(x)`.

mod cubic;
mod cyclo;
mod dyadic;
mod galois;
mod quad;
mod units;

pub use cubic::{retract_to_cubic, CubicNum};
pub use cyclo::CycloNum;
pub use galois::GaloisElement;
pub use quad::QuadNum;
pub use units::{unit_decompose, unit_recompose, UnitDecomposition};

use num_bigint::BigInt;
use thiserror::Error;

/// Exact rational scalar used for all field coordinates.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero in {0}")]
    ZeroDivision(&'static str),
    #[error("element is not expressible in the 1, rho, rho^2 basis")]
    Retraction,
    #[error("not a unit of the ring of integers: {0}")]
    NotAUnit(String),
    #[error("unit decomposition failed to certify at the precision cap")]
    DecompositionFailure,
    #[error("invalid Galois index {0}, want 1..=12")]
    BadGaloisIndex(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Parses a comma-joined list of `n` slash-form rationals (`"a/b"` or `"a"`).
pub(crate) fn parse_rat_list(s: &str, n: usize) -> Result<Vec<Rat>, RingError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(RingError::Parse(format!(
            "expected {n} comma-separated rationals, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<Rat>()
                .map_err(|e| RingError::Parse(format!("bad rational {p:?}: {e}")))
        })
        .collect()
}

pub(crate) fn format_rat_list(coords: &[Rat]) -> String {
    coords
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
