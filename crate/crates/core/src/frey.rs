//! Modular enhancement of the unit sieve.
//!
//! The plain sieve leaves one extraneous unit class `mu` alive in Case I.
//! For an auxiliary prime `q`, a solution `(a, b, c)` descending to `mu`
//! forces the class of `a + b zeta` in `prod (O_L/q_i)* / p-th powers` to
//! match the class of `mu`; [`mod_q_pair_list`] computes the matching
//! residue pairs. Each such pair also carries an elliptic curve `E_{a,b}`
//! over `Q(sqrt 13)` whose trace of Frobenius at `q` must satisfy fixed
//! congruences mod `p`; [`eliminate_extraneous`] counts points on the
//! reduced curves ([`reduce_curve_and_trace`]) and reports whether every
//! matching pair violates every target congruence.
//!
//! The Weierstrass coefficients of `E_{a,b}` are published elsewhere and
//! are deliberately not hardcoded: they are read from a JSON data file
//! ([`FreyData`]) and their absence downgrades the elimination to an
//! explicit `Skipped` status, never a silent pass.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::residue::{inv_mod, poly_mulmod, poly_powmod, ResidueError, ResidueSystem};
use crate::ring::{CubicNum, CycloNum, QuadNum, Rat, RingError};
use crate::sieve::{extraneous_unit, is_small_prime, SieveError};

/// The exponent/auxiliary-prime pairs with a nontrivial sieve: `p`
/// divides the unit-group order of at least one residue field above `q`.
pub const AUXILIARY_PAIRS: [(u64, u64); 9] = [
    (5, 19),
    (7, 19),
    (11, 23),
    (17, 103),
    (19, 7),
    (23, 139),
    (29, 233),
    (31, 37),
    (37, 11),
];

/// Exhaustive point counting is refused beyond this field size.
pub const FIELD_SIZE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("auxiliary prime q = {q} unusable for p = {p}")]
    BadAuxiliary { p: u64, q: u64 },
    #[error("matching target is not a unit")]
    TargetNotAUnit,
    #[error("no Frey curve coefficients are configured")]
    MissingFreyData,
    #[error("no trace targets configured for q = {0}")]
    MissingTargets(u64),
    #[error("curve is singular over its base field")]
    SingularCurve,
    #[error("curve has bad reduction at {0}")]
    BadReduction(u64),
    #[error("coefficient denominator divisible by {0}")]
    NonIntegral(u64),
    #[error("{q} is not inert in the configured base field")]
    NotInert { q: u64 },
    #[error("residue field of size {size} exceeds the counting budget")]
    FieldTooLarge { size: u64 },
    #[error("bad Frey data: {0}")]
    Data(String),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Residue pairs mod `q` whose class matches the target unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairList {
    pub p: u64,
    pub q: u64,
    /// True when `p` divides no residue-field unit-group order above `q`,
    /// so every pair matches vacuously.
    pub trivial_sieve: bool,
    pub pairs: Vec<(u64, u64)>,
}

/// Pairs `(a, b) != (0, 0)` with `0 <= a <= b <= q-1` whose class of
/// `a + b zeta` in the product of `(O_L/q_i)*` mod p-th powers equals the
/// target's. When `p | q - 1` the pair set is pre-restricted to `a + b` a
/// p-th power mod `q` (the `G = a + b = z^p` branch condition).
pub fn mod_q_pair_list(p: u64, q: u64, target: &CycloNum) -> Result<PairList, FreyError> {
    if !is_small_prime(p) {
        return Err(FreyError::NotPrime(p));
    }
    if !is_small_prime(q) {
        return Err(FreyError::NotPrime(q));
    }
    if q == 13 || q == p {
        return Err(FreyError::BadAuxiliary { p, q });
    }
    if !target.is_unit() {
        return Err(FreyError::TargetNotAUnit);
    }
    let system = ResidueSystem::for_auxiliary(q)?;
    let target_class = system.class_vector(target, p)?.flatten();
    let trivial_sieve = target_class.is_empty();
    let pth_power: Option<Vec<bool>> = if (q - 1) % p == 0 {
        let mut table = vec![false; q as usize];
        table[0] = true;
        for x in 1..q {
            table[pow_mod(x, p, q) as usize] = true;
        }
        Some(table)
    } else {
        None
    };
    let candidates: Vec<(u64, u64)> = (0..q)
        .flat_map(|a| (a..q).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .filter(|&(a, b)| {
            pth_power
                .as_ref()
                .map_or(true, |t| t[((a + b) % q) as usize])
        })
        .collect();
    let pairs = candidates
        .into_par_iter()
        .map(|(a, b)| {
            let mut coords = [0i64; 12];
            coords[0] = a as i64;
            coords[1] = b as i64;
            let cls = system
                .class_vector(&CycloNum::from_integers(coords), p)?
                .flatten();
            Ok(if cls == target_class {
                Some((a, b))
            } else {
                None
            })
        })
        .collect::<Result<Vec<_>, FreyError>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(PairList {
        p,
        q,
        trivial_sieve,
        pairs,
    })
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        e >>= 1;
    }
    acc as u64
}

/// Coefficient field of externally supplied curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum BaseField {
    #[serde(rename = "Q(sqrt13)")]
    QuadSqrt13,
    #[serde(rename = "K")]
    Cubic,
}

/// One element of the configured base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NfElement {
    Quad(QuadNum),
    Cubic(CubicNum),
}

/// An elliptic curve in long Weierstrass form over the base field, with
/// nonzero discriminant checked exactly at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurveNF {
    pub a1: NfElement,
    pub a2: NfElement,
    pub a3: NfElement,
    pub a4: NfElement,
    pub a6: NfElement,
    pub label: String,
}

macro_rules! weierstrass_disc {
    ($a1:expr, $a2:expr, $a3:expr, $a4:expr, $a6:expr, $rat:expr) => {{
        // All five inputs are references to the same coefficient type.
        let (a1, a2, a3, a4, a6) = ($a1, $a2, $a3, $a4, $a6);
        let b2 = &(a1 * a1) + &a2.scale(&$rat(4));
        let b4 = &a4.scale(&$rat(2)) + &(a1 * a3);
        let b6 = &(a3 * a3) + &a6.scale(&$rat(4));
        let b8 = &(&(&(&(a1 * a1) * a6) + &(a2 * a6).scale(&$rat(4))) - &(&(a1 * a3) * a4))
            + &(&(a2 * &(a3 * a3)) - &(a4 * a4));
        &(&(&(&b2 * &b2) * &b8).scale(&$rat(-1)) - &(&(&b4 * &b4) * &b4).scale(&$rat(8)))
            + &(&(&b6 * &b6).scale(&$rat(-27)) + &(&(&b2 * &b4) * &b6).scale(&$rat(9)))
    }};
}

impl EllipticCurveNF {
    pub fn new(
        a1: NfElement,
        a2: NfElement,
        a3: NfElement,
        a4: NfElement,
        a6: NfElement,
        label: String,
    ) -> Result<Self, FreyError> {
        let singular = match (&a1, &a2, &a3, &a4, &a6) {
            (
                NfElement::Quad(a1),
                NfElement::Quad(a2),
                NfElement::Quad(a3),
                NfElement::Quad(a4),
                NfElement::Quad(a6),
            ) => weierstrass_disc!(a1, a2, a3, a4, a6, |n: i64| Rat::from_integer(n.into()))
                .is_zero(),
            (
                NfElement::Cubic(a1),
                NfElement::Cubic(a2),
                NfElement::Cubic(a3),
                NfElement::Cubic(a4),
                NfElement::Cubic(a6),
            ) => weierstrass_disc!(a1, a2, a3, a4, a6, |n: i64| Rat::from_integer(n.into()))
                .is_zero(),
            _ => return Err(FreyError::Data("mixed coefficient fields".into())),
        };
        if singular {
            return Err(FreyError::SingularCurve);
        }
        Ok(EllipticCurveNF {
            a1,
            a2,
            a3,
            a4,
            a6,
            label,
        })
    }

    fn base_field(&self) -> BaseField {
        match self.a1 {
            NfElement::Quad(_) => BaseField::QuadSqrt13,
            NfElement::Cubic(_) => BaseField::Cubic,
        }
    }
}

/// `F_{q^m}` as polynomials modulo a monic irreducible, small enough for
/// exhaustive enumeration.
struct SmallField {
    q: u64,
    minpoly: Vec<u64>,
}

impl SmallField {
    fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    fn size(&self) -> u64 {
        self.q.pow(self.degree() as u32)
    }

    fn element(&self, mut idx: u64) -> Vec<u64> {
        let mut coeffs = vec![0; self.degree()];
        for c in coeffs.iter_mut() {
            *c = idx % self.q;
            idx /= self.q;
        }
        coeffs
    }

    fn index(&self, el: &[u64]) -> usize {
        el.iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.q + (c % self.q)) as usize
    }

    fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        (0..self.degree())
            .map(|i| (x.get(i).copied().unwrap_or(0) + y.get(i).copied().unwrap_or(0)) % self.q)
            .collect()
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut v = poly_mulmod(x, y, &self.minpoly, self.q);
        v.resize(self.degree(), 0);
        v
    }

    fn scale(&self, x: &[u64], s: u64) -> Vec<u64> {
        x.iter().map(|&c| c * (s % self.q) % self.q).collect()
    }

    fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&c| c % self.q == 0)
    }

    fn pow(&self, x: &[u64], e: u128) -> Vec<u64> {
        let mut v = poly_powmod(x, e, &self.minpoly, self.q);
        v.resize(self.degree(), 0);
        v
    }
}

/// The inert residue field of `q` for the given base field, or `NotInert`.
fn residue_field(base: BaseField, q: u64) -> Result<SmallField, FreyError> {
    if !is_small_prime(q) {
        return Err(FreyError::NotPrime(q));
    }
    if q == 2 || q == 13 {
        return Err(FreyError::NotInert { q });
    }
    let minpoly: Vec<u64> = match base {
        // t^2 - 13: irreducible iff 13 is a non-square mod q.
        BaseField::QuadSqrt13 => vec![(q - 13 % q) % q, 0, 1],
        // t^3 + t^2 - 4t + 1: irreducible iff it has no root mod q.
        BaseField::Cubic => vec![1, q - 4 % q, 1, 1],
    };
    let has_root = (0..q).any(|x| {
        minpoly
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % q as u128)
            == 0
    });
    if has_root {
        return Err(FreyError::NotInert { q });
    }
    Ok(SmallField { q, minpoly })
}

fn reduce_nf(el: &NfElement, field: &SmallField) -> Result<Vec<u64>, FreyError> {
    let q = field.q;
    let reduce_rat = |r: &Rat| -> Result<u64, FreyError> {
        let num = r.numer().mod_floor(&q.into());
        let den = r.denom().mod_floor(&q.into());
        let num: u64 = num.try_into().expect("mod_floor result fits");
        let den: u64 = den.try_into().expect("mod_floor result fits");
        let inv = inv_mod(den, q).ok_or(FreyError::NonIntegral(q))?;
        Ok(num * inv % q)
    };
    let coords: Vec<u64> = match el {
        NfElement::Quad(x) => x
            .coords()
            .iter()
            .map(reduce_rat)
            .collect::<Result<_, _>>()?,
        NfElement::Cubic(x) => x
            .coords()
            .iter()
            .map(reduce_rat)
            .collect::<Result<_, _>>()?,
    };
    let mut out = vec![0; field.degree()];
    out[..coords.len()].copy_from_slice(&coords);
    Ok(out)
}

/// Trace of Frobenius of `E` at the inert prime `q`: reduces the
/// coefficients into `F_{q^deg}`, counts points exhaustively through the
/// completed square and a precomputed square table, and returns
/// `a_q = |F| + 1 - #E(F)`. The Hasse bound is asserted on every result.
pub fn reduce_curve_and_trace(curve: &EllipticCurveNF, q: u64) -> Result<i64, FreyError> {
    let field = residue_field(curve.base_field(), q)?;
    let n = field.size();
    if n > FIELD_SIZE_BUDGET {
        return Err(FreyError::FieldTooLarge { size: n });
    }
    let [a1, a2, a3, a4, a6] =
        [&curve.a1, &curve.a2, &curve.a3, &curve.a4, &curve.a6].map(|c| reduce_nf(c, &field));
    let (a1, a2, a3, a4, a6) = (a1?, a2?, a3?, a4?, a6?);
    // b-invariants of the completed square (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    let b2 = field.add(&field.mul(&a1, &a1), &field.scale(&a2, 4));
    let b4 = field.add(&field.scale(&a4, 2), &field.mul(&a1, &a3));
    let b6 = field.add(&field.mul(&a3, &a3), &field.scale(&a6, 4));
    let b8 = {
        let t1 = field.mul(&field.mul(&a1, &a1), &a6);
        let t2 = field.scale(&field.mul(&a2, &a6), 4);
        let t3 = field.scale(&field.mul(&field.mul(&a1, &a3), &a4), field.q - 1);
        let t4 = field.mul(&a2, &field.mul(&a3, &a3));
        let t5 = field.scale(&field.mul(&a4, &a4), field.q - 1);
        [t2, t3, t4, t5]
            .iter()
            .fold(t1, |acc, t| field.add(&acc, t))
    };
    let disc = {
        let m = field.q - 1;
        let t1 = field.scale(&field.mul(&field.mul(&b2, &b2), &b8), m);
        let t2 = field.scale(&field.mul(&field.mul(&b4, &b4), &b4), 8 * m % field.q);
        let t3 = field.scale(&field.mul(&b6, &b6), 27 * m % field.q);
        let t4 = field.scale(&field.mul(&field.mul(&b2, &b4), &b6), 9);
        [t2, t3, t4].iter().fold(t1, |acc, t| field.add(&acc, t))
    };
    if field.is_zero(&disc) {
        return Err(FreyError::BadReduction(q));
    }
    let mut is_square = vec![false; n as usize];
    for idx in 1..n {
        let z = field.element(idx);
        is_square[field.index(&field.mul(&z, &z))] = true;
    }
    let mut affine: u64 = 0;
    for idx in 0..n {
        let x = field.element(idx);
        // g(x) = ((4x + b2) x + 2 b4) x + b6.
        let mut g = field.add(&field.scale(&x, 4), &b2);
        g = field.add(&field.mul(&g, &x), &field.scale(&b4, 2));
        g = field.add(&field.mul(&g, &x), &b6);
        if field.is_zero(&g) {
            affine += 1;
        } else if is_square[field.index(&g)] {
            affine += 2;
        }
    }
    let a = n as i64 + 1 - (affine as i64 + 1);
    assert!(
        (a as i128) * (a as i128) <= 4 * n as i128,
        "trace outside the Hasse interval"
    );
    Ok(a)
}

/// Independent per-`x` counter: quadratic character of the `y`-discriminant
/// via exponentiation, no square table. Only for cross-checking small
/// fields.
pub fn trace_by_character_sum(curve: &EllipticCurveNF, q: u64) -> Result<i64, FreyError> {
    let field = residue_field(curve.base_field(), q)?;
    let n = field.size();
    let [a1, a2, a3, a4, a6] =
        [&curve.a1, &curve.a2, &curve.a3, &curve.a4, &curve.a6].map(|c| reduce_nf(c, &field));
    let (a1, a2, a3, a4, a6) = (a1?, a2?, a3?, a4?, a6?);
    let mut sum: i64 = 0;
    for idx in 0..n {
        let x = field.element(idx);
        // r(x) = ((x + a2) x + a4) x + a6 and c1 = a1 x + a3.
        let mut r = field.add(&x, &a2);
        r = field.add(&field.mul(&r, &x), &a4);
        r = field.add(&field.mul(&r, &x), &a6);
        let c1 = field.add(&field.mul(&a1, &x), &a3);
        let d = field.add(&field.mul(&c1, &c1), &field.scale(&r, 4));
        if field.is_zero(&d) {
            continue;
        }
        let chi = field.pow(&d, ((n - 1) / 2) as u128);
        let mut unit = vec![0; field.degree()];
        unit[0] = 1;
        sum += if chi == unit { 1 } else { -1 };
    }
    Ok(-sum)
}

/// One trace-congruence target: residues mod `p` that a true solution's
/// trace at `q` must satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct TraceTarget {
    pub q: u64,
    pub residues: Vec<i64>,
}

/// One monomial `coeff * a^i * b^j` of a Weierstrass coefficient.
#[derive(Debug, Clone, Deserialize)]
pub struct Monomial {
    /// Base-field element in the standard text encoding.
    pub coeff: String,
    #[serde(default)]
    pub a: u32,
    #[serde(default)]
    pub b: u32,
}

pub type CoefficientExpr = Vec<Monomial>;

/// Omitted coefficients default to the empty expression, i.e. zero.
#[derive(Debug, Clone, Deserialize)]
pub struct CurveExprs {
    #[serde(default)]
    pub a1: CoefficientExpr,
    #[serde(default)]
    pub a2: CoefficientExpr,
    #[serde(default)]
    pub a3: CoefficientExpr,
    #[serde(default)]
    pub a4: CoefficientExpr,
    #[serde(default)]
    pub a6: CoefficientExpr,
}

/// External curve data: base field, coefficient expressions in `(a, b)`,
/// and trace targets per auxiliary prime.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FreyData {
    pub base_field: BaseField,
    pub curves: Option<CurveExprs>,
    #[serde(default)]
    pub targets: Vec<TraceTarget>,
}

impl FreyData {
    pub fn from_json(text: &str) -> Result<Self, FreyError> {
        serde_json::from_str(text).map_err(|e| FreyError::Data(e.to_string()))
    }

    fn eval_expr(&self, expr: &CoefficientExpr, a: i64, b: i64) -> Result<NfElement, FreyError> {
        // a^i b^j can exceed machine range for high-degree expressions.
        let monomial = |m: &Monomial| {
            Rat::from_integer(
                num_bigint::BigInt::from(a).pow(m.a) * num_bigint::BigInt::from(b).pow(m.b),
            )
        };
        match self.base_field {
            BaseField::QuadSqrt13 => {
                let mut acc = QuadNum::zero();
                for m in expr {
                    let c: QuadNum = m.coeff.parse()?;
                    acc = &acc + &c.scale(&monomial(m));
                }
                Ok(NfElement::Quad(acc))
            }
            BaseField::Cubic => {
                let mut acc = CubicNum::zero();
                for m in expr {
                    let c: CubicNum = m.coeff.parse()?;
                    acc = &acc + &c.scale(&monomial(m));
                }
                Ok(NfElement::Cubic(acc))
            }
        }
    }

    /// Instantiates `E_{a,b}` from the coefficient expressions.
    pub fn curve_at(&self, a: i64, b: i64) -> Result<EllipticCurveNF, FreyError> {
        let exprs = self.curves.as_ref().ok_or(FreyError::MissingFreyData)?;
        EllipticCurveNF::new(
            self.eval_expr(&exprs.a1, a, b)?,
            self.eval_expr(&exprs.a2, a, b)?,
            self.eval_expr(&exprs.a3, a, b)?,
            self.eval_expr(&exprs.a4, a, b)?,
            self.eval_expr(&exprs.a6, a, b)?,
            format!("E_{a},{b}"),
        )
    }
}

/// Outcome of the modular elimination at one `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EliminationStatus {
    /// Every matching pair's trace violates every target congruence.
    Eliminated,
    /// No curve data or no targets for this `q`; nothing was decided.
    Skipped { reason: String },
    /// Some pairs satisfy a target congruence; listed for inspection.
    Unresolved { pairs: Vec<(u64, u64)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTrace {
    pub a: u64,
    pub b: u64,
    pub trace: i64,
    pub trace_mod_p: u64,
    pub matches_target: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationReport {
    pub p: u64,
    pub q: u64,
    pub pair_list: PairList,
    pub traces: Vec<PairTrace>,
    pub status: EliminationStatus,
}

/// Runs the full modular step for one `(p, q)`: pair list against the
/// extraneous unit, then trace congruences for every matching pair.
pub fn eliminate_extraneous(
    p: u64,
    q: u64,
    data: Option<&FreyData>,
) -> Result<EliminationReport, FreyError> {
    let mu = extraneous_unit(p)?.mu;
    let pair_list = mod_q_pair_list(p, q, &mu)?;
    let skipped = |reason: &str, pair_list: PairList| EliminationReport {
        p,
        q,
        pair_list,
        traces: Vec::new(),
        status: EliminationStatus::Skipped {
            reason: reason.into(),
        },
    };
    let Some(data) = data else {
        return Ok(skipped("no Frey curve data supplied", pair_list));
    };
    if data.curves.is_none() {
        return Ok(skipped(
            "curve coefficients absent from data file",
            pair_list,
        ));
    }
    let Some(target) = data.targets.iter().find(|t| t.q == q) else {
        return Ok(skipped(
            &format!("no trace targets configured for q = {q}"),
            pair_list,
        ));
    };
    let traces = pair_list
        .pairs
        .par_iter()
        .map(|&(a, b)| {
            let curve = data.curve_at(a as i64, b as i64)?;
            let trace = reduce_curve_and_trace(&curve, q)?;
            let trace_mod_p = trace.mod_floor(&(p as i64)) as u64;
            let matches_target = target
                .residues
                .iter()
                .any(|r| r.mod_floor(&(p as i64)) as u64 == trace_mod_p);
            Ok(PairTrace {
                a,
                b,
                trace,
                trace_mod_p,
                matches_target,
            })
        })
        .collect::<Result<Vec<_>, FreyError>>()?;
    let unresolved: Vec<(u64, u64)> = traces
        .iter()
        .filter(|t| t.matches_target)
        .map(|t| (t.a, t.b))
        .collect();
    let status = if unresolved.is_empty() {
        EliminationStatus::Eliminated
    } else {
        EliminationStatus::Unresolved { pairs: unresolved }
    };
    Ok(EliminationReport {
        p,
        q,
        pair_list,
        traces,
        status,
    })
}
