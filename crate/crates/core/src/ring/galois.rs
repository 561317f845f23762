//! The Galois group of `Q(zeta_13)/Q`, identified with `(Z/13)^*`.

use super::RingError;

/// An automorphism `sigma_c : zeta -> zeta^c` of `Q(zeta_13)`, `c` in `1..=12`.
///
/// The group is cyclic of order 12 (2 is a generator); composition is
/// multiplication of the indices mod 13.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaloisElement(u8);

/// Indices of the subgroup `<5> = {1, 5, 12, 8}` fixing the cubic subfield,
/// in cyclic order. The relative norm to the cubic subfield is the product
/// of these four automorphisms.
pub const CUBIC_STABILIZER: [u8; 4] = [1, 5, 12, 8];

impl GaloisElement {
    pub fn new(c: u32) -> Result<Self, RingError> {
        if (1..=12).contains(&c) {
            Ok(GaloisElement(c as u8))
        } else {
            Err(RingError::BadGaloisIndex(c))
        }
    }

    pub fn identity() -> Self {
        GaloisElement(1)
    }

    /// The exponent `c` with `sigma(zeta) = zeta^c`.
    pub fn index(self) -> u8 {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 1
    }

    /// `self` after `other`: `(self * other)(zeta) = self(other(zeta))`.
    pub fn compose(self, other: Self) -> Self {
        GaloisElement((u32::from(self.0) * u32::from(other.0) % 13) as u8)
    }

    pub fn inverse(self) -> Self {
        // c^11 = c^-1 in the group of order 12.
        let mut inv = 1u32;
        for _ in 0..11 {
            inv = inv * u32::from(self.0) % 13;
        }
        GaloisElement(inv as u8)
    }

    /// All twelve automorphisms, by ascending index.
    pub fn all() -> impl Iterator<Item = GaloisElement> {
        (1..=12).map(GaloisElement)
    }
}
