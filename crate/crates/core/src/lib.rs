//! Exact-arithmetic machinery for the generalized Fermat equation
//! `x^13 + y^13 = z^p`.
//!
//! The library is organized around the computational pipeline used to
//! attack the equation:
//!
//! - [`ring`] — exact arithmetic in the cyclotomic field `L = Q(zeta_13)`,
//!   its cubic subfield `K = Q(rho)`, and `Q(sqrt(13))`: Galois action,
//!   relative norms, the `K -> L` embedding, and decomposition of units
//!   of `O_K` over the fundamental system `{rho, 1 - rho}`.
//! - [`residue`] — residue rings `(O_L / p_i^2)^*` and `(O_L / q)^*`
//!   together with p-th-power class vectors, the sieve's target objects.
//! - [`sieve`] — the unit sieve: candidate-pair enumeration, the unit
//!   class group map, surviving-unit extraction, and the extraneous unit
//!   `13^k / (1 - zeta)^{12k}`.
//! - [`frey`] — the modular enhancement: mod-q pair lists and elimination
//!   by traces of Frobenius of externally supplied elliptic curves.
//! - [`curves`] — binary forms, descent identities, and the hyperelliptic
//!   curve models with point-to-solution verification.
//! - [`oracle`] — desk-scale exhaustive search and 13-adic divisibility
//!   cross-checks, independent of everything above.
//! - [`cli`] — the command-line pipeline and machine-readable reports.

pub mod cli;
pub mod curves;
pub mod frey;
mod num_util;
pub mod oracle;
pub mod report;
pub mod residue;
pub mod ring;
pub mod sieve;
