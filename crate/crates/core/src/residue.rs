//! Residue rings of `Z[zeta]` at small rational primes, and p-th-power
//! class vectors inside them.
//!
//! An odd prime `p != 13` factors in `Z[zeta]` as `p1 .. ps` with common
//! residue degree `f` = multiplicative order of `p` mod 13 and `f s = 12`.
//! Concretely `Z[zeta]/pi^2 = (Z/p^2)[t]/(G_i)` where `G_i` is the Hensel
//! lift to modulus `p^2` of an irreducible factor `g_i` of `Phi_13` mod `p`
//! ([`factor_13th_cyclotomic_mod`]); `zeta` maps to the class of `t`.
//!
//! The sieve needs, for a unit `u` of such a quotient, its class in
//! `M/M^p` where `M` is the unit group:
//!
//! - modulo `p^2` ([`RingKind::QuotP2`]): `M` has order `p^f (p^f - 1)`,
//!   and `u^(p^f - 1) = 1 + p w` for a unique `w` in `F_{p^f}`; the class
//!   is the coefficient vector of `w`, an `F_p`-vector of length `f`.
//!   Working modulo `pi` alone would make every unit a p-th power, which is
//!   why the squared modulus is used.
//! - modulo an auxiliary prime `q` ([`RingKind::QuotQ`]): the quotient is
//!   the field `F_{q^f}`, whose unit group is cyclic; when `p | q^f - 1`
//!   the class is a length-1 discrete logarithm in the order-`p` quotient,
//!   otherwise every unit is a p-th power and the class is empty.
//!
//! All coefficient arithmetic is `u64` (moduli are at most `47^2`), with
//! `u128` exponents (`41^12 - 1` overflows `u64`). Factor lists are sorted
//! by coefficient tuple and the auxiliary-field generator is the first
//! primitive element in a fixed enumeration, so class vectors are
//! reproducible across runs and implementations.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::ring::CycloNum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("modulus {0} is not admissible (need an odd prime different from 13)")]
    BadPrime(u64),
    #[error("denominator {denom} is not invertible modulo {modulus}")]
    NonIntegralDenominator { denom: String, modulus: u64 },
    #[error("{0:?} is not a unit of the residue ring")]
    NotAUnit(Vec<u64>),
}

// ---------------------------------------------------------------------------
// Dense little-endian polynomials over Z/m. The zero polynomial is the
// empty vector; every routine returns trimmed output.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn poly_trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn poly_deg(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

#[cfg(test)]
pub(crate) fn poly_add(a: &[u64], b: &[u64], m: u64) -> Poly {
    let n = a.len().max(b.len());
    poly_trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % m)
            .collect(),
    )
}

pub(crate) fn poly_sub(a: &[u64], b: &[u64], m: u64) -> Poly {
    let n = a.len().max(b.len());
    poly_trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + m - b.get(i).unwrap_or(&0) % m) % m)
            .collect(),
    )
}

pub(crate) fn poly_mul(a: &[u64], b: &[u64], m: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            // x, y, moduli < 2^17, so x*y + carry stays far below 2^64.
            out[i + j] = (out[i + j] + x * y) % m;
        }
    }
    poly_trim(out)
}

/// Division with remainder by a monic divisor; valid over Z/m for any m.
pub(crate) fn poly_divrem(a: &[u64], d: &[u64], m: u64) -> (Poly, Poly) {
    let dd = d.len() - 1;
    debug_assert_eq!(d[dd], 1, "divisor must be monic");
    let mut r: Poly = a.to_vec();
    if r.len() <= dd {
        return (Vec::new(), poly_trim(r));
    }
    let mut q = vec![0u64; r.len() - dd];
    for k in (dd..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        q[k - dd] = c;
        for (j, &dj) in d.iter().enumerate() {
            r[k - dd + j] = (r[k - dd + j] + m - c * dj % m) % m;
        }
    }
    (poly_trim(q), poly_trim(r))
}

pub(crate) fn poly_rem(a: &[u64], d: &[u64], m: u64) -> Poly {
    poly_divrem(a, d, m).1
}

pub(crate) fn poly_mulmod(a: &[u64], b: &[u64], d: &[u64], m: u64) -> Poly {
    poly_rem(&poly_mul(a, b, m), d, m)
}

pub(crate) fn poly_powmod(base: &[u64], mut e: u128, d: &[u64], m: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = poly_rem(base, d, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, d, m);
        }
        b = poly_mulmod(&b, &b, d, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 == 1 {
        Some(t0.rem_euclid(m as i128) as u64)
    } else {
        None
    }
}

/// Scales to leading coefficient 1; `m` must be prime.
fn poly_make_monic(a: &[u64], m: u64) -> Poly {
    match a.last() {
        None | Some(1) => a.to_vec(),
        Some(&lead) => {
            let s = inv_mod(lead, m).expect("leading coefficient invertible mod prime");
            a.iter().map(|&c| c * s % m).collect()
        }
    }
}

/// Monic gcd over F_m, `m` prime.
pub(crate) fn poly_gcd(a: &[u64], b: &[u64], m: u64) -> Poly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(&x, &poly_make_monic(&y, m), m);
        x = y;
        y = r;
    }
    poly_make_monic(&x, m)
}

/// Extended gcd over F_m (`m` prime): returns `(g, u, v)` with
/// `u a + v b = g` and `g` monic.
fn poly_ext_gcd(a: &[u64], b: &[u64], m: u64) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut u0, mut u1): (Poly, Poly) = (vec![1], Vec::new());
    let (mut v0, mut v1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let lead = *r1.last().unwrap();
        let s = inv_mod(lead, m).expect("nonzero leading coefficient mod prime");
        let monic: Poly = r1.iter().map(|&c| c * s % m).collect();
        let (q_m, r) = poly_divrem(&r0, &monic, m);
        // True quotient of r0 by r1 is q_m scaled by s.
        let q: Poly = q_m.iter().map(|&c| c * s % m).collect();
        let new_u = poly_sub(&u0, &poly_mul(&q, &u1, m), m);
        let new_v = poly_sub(&v0, &poly_mul(&q, &v1, m), m);
        (r0, r1) = (r1, r);
        (u0, u1) = (u1, new_u);
        (v0, v1) = (v1, new_v);
    }
    let lead = *r0.last().expect("gcd of nonzero input is nonzero");
    let s = inv_mod(lead, m).expect("leading coefficient invertible");
    let scale = |p: &[u64]| p.iter().map(|&c| c * s % m).collect::<Poly>();
    (scale(&r0), scale(&u0), scale(&v0))
}

/// `Phi_13 = t^12 + t^11 + .. + 1` with coefficients mod `m`.
fn phi13(m: u64) -> Poly {
    vec![1 % m; 13]
}

fn pow_u128(b: u64, e: usize) -> u128 {
    (0..e).fold(1u128, |a, _| a * b as u128)
}

fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of `p` modulo 13.
pub fn residue_degree(p: u64) -> usize {
    let mut acc = p % 13;
    for k in 1..=12 {
        if acc == 1 {
            return k;
        }
        acc = acc * p % 13;
    }
    unreachable!("p coprime to 13 has order dividing 12")
}

// ---------------------------------------------------------------------------
// Factoring Phi_13 modulo p and lifting to p^2.

/// The shape of `p Z[zeta] = p1 .. ps` together with defining polynomials:
/// `factors[i]` is the monic irreducible factor of `Phi_13` mod `p` cutting
/// out `pi`, and `lifts[i]` its Hensel lift modulo `p^2`.
#[derive(Debug, Clone)]
pub struct PrimeFactorization {
    pub p: u64,
    /// Residue degree: each factor has degree `f`.
    pub f: usize,
    /// Number of primes above `p`; `f * s = 12`.
    pub s: usize,
    /// Monic factors mod `p`, sorted by coefficient tuple.
    pub factors: Vec<Poly>,
    /// Monic lifts mod `p^2`, aligned with `factors`.
    pub lifts: Vec<Poly>,
}

/// Deterministic sequence of small polynomials over F_p used to hunt for
/// splitters: `counter` written in base `p`, digits as coefficients.
fn poly_from_counter(counter: u64, p: u64) -> Poly {
    let mut c = counter;
    let mut out = Vec::new();
    while c > 0 {
        out.push(c % p);
        c /= p;
    }
    out
}

/// Equal-degree splitting: every irreducible factor of `h` has degree `f`.
/// Gcds with `a^((p^f - 1)/2) - 1` for successive test polynomials `a`
/// split `h`; the search sequence is fixed, so the run is deterministic.
fn equal_degree_split(h: Poly, f: usize, p: u64) -> Vec<Poly> {
    let degree = poly_deg(&h).expect("nonzero input");
    if degree == f {
        return vec![poly_make_monic(&h, p)];
    }
    let e = (pow_u128(p, f) - 1) / 2;
    for counter in p..1_000_000 {
        let a = poly_from_counter(counter, p);
        let b = poly_powmod(&a, e, &h, p);
        let g = poly_gcd(&poly_sub(&b, &[1], p), &h, p);
        if let Some(d) = poly_deg(&g) {
            if d > 0 && d < degree {
                let (rest, r) = poly_divrem(&h, &g, p);
                debug_assert!(r.is_empty());
                let mut out = equal_degree_split(g, f, p);
                out.extend(equal_degree_split(rest, f, p));
                return out;
            }
        }
    }
    unreachable!("splitter search is exhaustive over F_p[t]")
}

/// One quadratic Hensel step: given monic `fem = g h (mod p)` with `fem`
/// known mod `p^2` and `gcd(g, h) = 1` in `F_p[t]`, returns monic
/// `(G, H)` mod `p^2` with `fem = G H (mod p^2)`, `G = g`, `H = h` mod `p`.
fn hensel_step(fem: &[u64], g: &[u64], h: &[u64], p: u64) -> (Poly, Poly) {
    let m2 = p * p;
    let (one, _a, b) = poly_ext_gcd(g, h, p);
    assert_eq!(one, vec![1], "factors must be coprime mod p");
    // e = (fem - g h)/p, a polynomial over F_p.
    let diff = poly_sub(fem, &poly_mul(g, h, m2), m2);
    let e: Poly = poly_trim(
        diff.iter()
            .map(|&c| {
                debug_assert_eq!(c % p, 0);
                c / p % p
            })
            .collect(),
    );
    // Corrections: u h + v g = e with deg u < deg g, deg v < deg h.
    let u = poly_rem(&poly_mul(&b, &e, p), g, p);
    let (v, r) = poly_divrem(&poly_sub(&e, &poly_mul(&u, h, p), p), g, p);
    debug_assert!(r.is_empty(), "correction divides exactly");
    let lift = |base: &[u64], delta: &[u64]| -> Poly {
        let n = base.len().max(delta.len());
        poly_trim(
            (0..n)
                .map(|i| (base.get(i).unwrap_or(&0) + p * delta.get(i).unwrap_or(&0)) % m2)
                .collect(),
        )
    };
    let g2 = lift(g, &u);
    let h2 = lift(h, &v);
    assert_eq!(
        poly_mul(&g2, &h2, m2),
        poly_trim(fem.to_vec()),
        "lifted factors must multiply back"
    );
    (g2, h2)
}

/// Factors `Phi_13` modulo an odd prime `p != 13` and lifts the
/// factorization to modulus `p^2`.
pub fn factor_13th_cyclotomic_mod(p: u64) -> Result<PrimeFactorization, ResidueError> {
    if p == 13 || p == 2 || !is_small_prime(p) {
        return Err(ResidueError::BadPrime(p));
    }
    let f = residue_degree(p);
    let s = 12 / f;
    let mut factors = equal_degree_split(phi13(p), f, p);
    factors.sort();
    assert_eq!(factors.len(), s);
    let product = factors
        .iter()
        .fold(vec![1u64], |acc, g| poly_mul(&acc, g, p));
    assert_eq!(product, phi13(p), "factors must multiply to Phi_13 mod p");
    for (i, g) in factors.iter().enumerate() {
        assert_eq!(poly_deg(g), Some(f));
        for h in &factors[i + 1..] {
            assert_eq!(poly_gcd(g, h, p), vec![1], "factors must be coprime");
        }
    }

    // Peel lifts off one at a time: split fem = g_i * (rest), lift both,
    // recurse on the lifted rest.
    let m2 = p * p;
    let mut fem = phi13(m2);
    let mut lifts = Vec::with_capacity(s);
    for i in 0..s - 1 {
        let rest = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, g| poly_mul(&acc, g, p));
        let (g2, h2) = hensel_step(&fem, &factors[i], &rest, p);
        lifts.push(g2);
        fem = h2;
    }
    lifts.push(fem);
    let product = lifts
        .iter()
        .fold(vec![1u64], |acc, g| poly_mul(&acc, g, m2));
    assert_eq!(product, phi13(m2), "lifts must multiply to Phi_13 mod p^2");
    for (g, l) in factors.iter().zip(&lifts) {
        let reduced: Poly = poly_trim(l.iter().map(|&c| c % p).collect());
        assert_eq!(&reduced, g, "each lift must reduce to its factor");
    }
    Ok(PrimeFactorization {
        p,
        f,
        s,
        factors,
        lifts,
    })
}

// ---------------------------------------------------------------------------
// Residue rings and class vectors.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    /// `(Z/p^2)[t]/(G)`, the quotient by the square of a prime above `p`.
    QuotP2,
    /// `F_{q^f} = (Z/q)[t]/(g)`, the residue field at a prime above `q`.
    QuotQ,
}

/// One local quotient of `Z[zeta]`, with just enough structure to reduce
/// global elements into it and measure p-th-power classes.
#[derive(Debug, Clone)]
pub struct ResidueRing {
    kind: RingKind,
    /// Residue characteristic (`p` or `q`).
    characteristic: u64,
    /// Coefficient modulus (`p^2` or `q`).
    modulus: u64,
    /// Monic defining polynomial of degree `f` over `Z/modulus`.
    poly: Poly,
    f: usize,
    unit_group_order: BigUint,
    /// For `QuotQ`: the fixed primitive element (first one in the counter
    /// enumeration), giving reproducible discrete logarithms.
    generator: Option<Poly>,
}

impl ResidueRing {
    fn quot_p2(p: u64, lift: Poly) -> Self {
        let f = lift.len() - 1;
        let pf = BigUint::from(p).pow(f as u32);
        ResidueRing {
            kind: RingKind::QuotP2,
            characteristic: p,
            modulus: p * p,
            unit_group_order: &pf * (&pf - 1u32),
            poly: lift,
            f,
            generator: None,
        }
    }

    fn quot_q(q: u64, factor: Poly) -> Self {
        let f = factor.len() - 1;
        let mut ring = ResidueRing {
            kind: RingKind::QuotQ,
            characteristic: q,
            modulus: q,
            unit_group_order: BigUint::from(q).pow(f as u32) - 1u32,
            poly: factor,
            f,
            generator: None,
        };
        ring.generator = Some(ring.find_generator());
        ring
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn unit_group_order(&self) -> &BigUint {
        &self.unit_group_order
    }

    pub fn one(&self) -> Poly {
        vec![1]
    }

    pub fn generator(&self) -> Option<&[u64]> {
        self.generator.as_deref()
    }

    /// Image of a global element under `Z[zeta] -> self`, `zeta -> t`.
    /// Rational coordinates are allowed when their denominators are prime
    /// to the characteristic.
    pub fn reduce(&self, x: &CycloNum) -> Result<Poly, ResidueError> {
        let m = self.modulus;
        let big_m = BigInt::from(m);
        let mut acc = vec![0u64; 12];
        for (i, c) in x.coords().iter().enumerate() {
            let num = c
                .numer()
                .mod_floor(&big_m)
                .to_u64()
                .expect("residue fits u64");
            let den = c
                .denom()
                .mod_floor(&big_m)
                .to_u64()
                .expect("residue fits u64");
            let inv = inv_mod(den, m).ok_or_else(|| ResidueError::NonIntegralDenominator {
                denom: c.denom().to_string(),
                modulus: m,
            })?;
            acc[i] = num * inv % m;
        }
        Ok(poly_rem(&poly_trim(acc), &self.poly, m))
    }

    /// Units are elements nonzero modulo the underlying prime.
    pub fn is_unit(&self, el: &[u64]) -> bool {
        el.iter().any(|&c| c % self.characteristic != 0)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Poly {
        poly_mulmod(a, b, &self.poly, self.modulus)
    }

    pub fn pow(&self, a: &[u64], e: u128) -> Poly {
        poly_powmod(a, e, &self.poly, self.modulus)
    }

    pub fn invert(&self, a: &[u64]) -> Result<Poly, ResidueError> {
        if !self.is_unit(a) {
            return Err(ResidueError::NotAUnit(a.to_vec()));
        }
        match self.kind {
            RingKind::QuotQ => {
                let (g, u, _) = poly_ext_gcd(a, &self.poly, self.modulus);
                debug_assert_eq!(g, vec![1], "unit is coprime to the modulus");
                Ok(poly_rem(&u, &self.poly, self.modulus))
            }
            RingKind::QuotP2 => {
                // Invert in the residue field, then one Newton step
                // v -> v(2 - a v) lifts the inverse from p to p^2.
                let p = self.characteristic;
                let a_p = poly_trim(a.iter().map(|&c| c % p).collect());
                let g_p = poly_trim(self.poly.iter().map(|&c| c % p).collect());
                let (g, u, _) = poly_ext_gcd(&a_p, &g_p, p);
                debug_assert_eq!(g, vec![1]);
                let v0 = poly_rem(&u, &g_p, p);
                let av0 = self.mul(a, &v0);
                let v1 = self.mul(&v0, &poly_sub(&[2], &av0, self.modulus));
                debug_assert_eq!(self.mul(a, &v1), vec![1]);
                Ok(v1)
            }
        }
    }

    /// The class of a unit `u` in `M/M^p` (`M` the unit group), as an
    /// `F_p`-vector. Zero exactly when `u` is a p-th power in the ring.
    pub fn pth_power_class(&self, u: &[u64], p: u64) -> Result<Vec<u64>, ResidueError> {
        if !self.is_unit(u) {
            return Err(ResidueError::NotAUnit(u.to_vec()));
        }
        match self.kind {
            RingKind::QuotP2 => {
                assert_eq!(
                    self.characteristic, p,
                    "squared-modulus classes only make sense at the sieve exponent"
                );
                // u^(p^f - 1) kills the prime-to-p part, landing in the
                // kernel of reduction to the residue field: 1 + p w. The
                // map u -> w is a homomorphism onto (F_{p^f}, +) with
                // kernel M^p.
                let z = self.pow(u, pow_u128(p, self.f) - 1);
                let mut w = vec![0u64; self.f];
                for (i, wi) in w.iter_mut().enumerate() {
                    let zi = *z.get(i).unwrap_or(&0);
                    let delta = if i == 0 {
                        (zi + self.modulus - 1) % self.modulus
                    } else {
                        zi
                    };
                    debug_assert_eq!(delta % p, 0, "u^(p^f-1) = 1 mod p");
                    *wi = delta / p;
                }
                Ok(w)
            }
            RingKind::QuotQ => {
                let n = self.unit_group_order.to_u128().expect("q^f - 1 fits u128");
                if n % u128::from(p) != 0 {
                    // Raising to the p-th power is a bijection: no condition.
                    return Ok(Vec::new());
                }
                let e = n / u128::from(p);
                let y = self.pow(u, e);
                let h = self.pow(self.generator.as_ref().expect("QuotQ has a generator"), e);
                let mut acc = self.one();
                for k in 0..p {
                    if acc == y {
                        return Ok(vec![k]);
                    }
                    acc = self.mul(&acc, &h);
                }
                unreachable!("y lies in the cyclic subgroup of order p")
            }
        }
    }

    /// All `modulus^f` elements, coefficient tuples in counter order.
    /// Meant for exhaustive checks on small rings.
    pub fn enumerate_elements(&self) -> impl Iterator<Item = Poly> + '_ {
        let m = self.modulus;
        let total = (0..self.f).fold(1u64, |acc, _| acc * m);
        (0..total).map(move |mut v| {
            let mut c = vec![0u64; self.f];
            for ci in c.iter_mut() {
                *ci = v % m;
                v /= m;
            }
            poly_trim(c)
        })
    }

    /// First primitive element in the counter enumeration. Primitivity is
    /// checked against the prime factors of `q^f - 1`, obtained from its
    /// cyclotomic-value factorization.
    fn find_generator(&self) -> Poly {
        let q = self.characteristic;
        let n = pow_u128(q, self.f) - 1;
        let primes = prime_factors_via_cyclotomic_values(q, self.f);
        for counter in 1.. {
            let cand = poly_from_counter(counter, q);
            if cand.len() > self.f {
                break;
            }
            if primes
                .iter()
                .all(|&r| poly_powmod(&cand, n / r, &self.poly, q) != vec![1])
            {
                return cand;
            }
        }
        unreachable!("a finite field has a primitive element")
    }
}

/// Value of the d-th cyclotomic polynomial at `q`, for the divisors of 12.
fn cyclotomic_value(d: usize, q: u128) -> u128 {
    match d {
        1 => q - 1,
        2 => q + 1,
        3 => q * q + q + 1,
        4 => q * q + 1,
        6 => q * q - q + 1,
        12 => q * q * q * q - q * q + 1,
        _ => unreachable!("residue degrees divide 12"),
    }
}

/// Prime factors of `q^f - 1` via `q^f - 1 = prod_{d | f} Phi_d(q)`; each
/// cyclotomic value is small enough for trial division.
fn prime_factors_via_cyclotomic_values(q: u64, f: usize) -> Vec<u128> {
    let mut primes = Vec::new();
    let mut check = 1u128;
    for d in [1usize, 2, 3, 4, 6, 12].into_iter().filter(|d| f % d == 0) {
        let mut v = cyclotomic_value(d, u128::from(q));
        check *= v;
        let mut t = 2u128;
        while t * t <= v {
            if v % t == 0 {
                if !primes.contains(&t) {
                    primes.push(t);
                }
                while v % t == 0 {
                    v /= t;
                }
            }
            t += 1;
        }
        if v > 1 && !primes.contains(&v) {
            primes.push(v);
        }
    }
    debug_assert_eq!(check, pow_u128(q, f) - 1);
    primes
}

/// The full set of local quotients above one rational prime, in the sorted
/// factor order, with the class-vector concatenation the sieve consumes.
#[derive(Debug, Clone)]
pub struct ResidueSystem {
    rings: Vec<ResidueRing>,
}

impl ResidueSystem {
    /// Quotients `Z[zeta]/pi^2` for all primes above the sieve exponent.
    pub fn for_exponent(p: u64) -> Result<Self, ResidueError> {
        let fac = factor_13th_cyclotomic_mod(p)?;
        Ok(ResidueSystem {
            rings: fac
                .lifts
                .into_iter()
                .map(|l| ResidueRing::quot_p2(p, l))
                .collect(),
        })
    }

    /// Residue fields `F_{q^f}` for all primes above an auxiliary prime.
    pub fn for_auxiliary(q: u64) -> Result<Self, ResidueError> {
        let fac = factor_13th_cyclotomic_mod(q)?;
        Ok(ResidueSystem {
            rings: fac
                .factors
                .into_iter()
                .map(|g| ResidueRing::quot_q(q, g))
                .collect(),
        })
    }

    pub fn rings(&self) -> &[ResidueRing] {
        &self.rings
    }

    /// Concatenated per-prime class of `x`; fails on non-units.
    pub fn class_vector(&self, x: &CycloNum, p: u64) -> Result<ClassVector, ResidueError> {
        let components = self
            .rings
            .iter()
            .map(|r| r.pth_power_class(&r.reduce(x)?, p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ClassVector { p, components })
    }
}

/// Per-prime p-th-power classes of one global element; addition mirrors
/// multiplication of elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVector {
    pub p: u64,
    pub components: Vec<Vec<u64>>,
}

impl ClassVector {
    pub fn flatten(&self) -> Vec<u64> {
        self.components.concat()
    }

    pub fn dim(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(|&c| c == 0)
    }

    pub fn add(&self, rhs: &ClassVector) -> ClassVector {
        assert_eq!(self.p, rhs.p);
        let components = self
            .components
            .iter()
            .zip(&rhs.components)
            .map(|(a, b)| {
                assert_eq!(a.len(), b.len());
                a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
            })
            .collect();
        ClassVector {
            p: self.p,
            components,
        }
    }
}

/// One-shot form of [`ResidueSystem::class_vector`]: classes of `x` over
/// all primes above `modulus`, squared local rings when `modulus == p`.
pub fn class_vector(x: &CycloNum, p: u64, modulus: u64) -> Result<ClassVector, ResidueError> {
    let sys = if modulus == p {
        ResidueSystem::for_exponent(p)?
    } else {
        ResidueSystem::for_auxiliary(modulus)?
    };
    sys.class_vector(x, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use std::collections::HashSet;

    #[test]
    fn splitting_shapes() {
        for (p, f, s) in [
            (5, 4, 3),
            (7, 12, 1),
            (19, 12, 1),
            (17, 6, 2),
            (29, 3, 4),
            (47, 4, 3),
        ] {
            let fac = factor_13th_cyclotomic_mod(p).unwrap();
            assert_eq!((fac.f, fac.s), (f, s), "at p = {p}");
            assert_eq!(fac.factors.len(), s);
            assert_eq!(fac.lifts.len(), s);
        }
        assert!(matches!(
            factor_13th_cyclotomic_mod(13),
            Err(ResidueError::BadPrime(13))
        ));
        assert!(matches!(
            factor_13th_cyclotomic_mod(15),
            Err(ResidueError::BadPrime(15))
        ));
    }

    #[test]
    fn image_of_zeta_is_a_root_of_phi13() {
        for p in [5u64, 7, 17] {
            for ring in ResidueSystem::for_exponent(p).unwrap().rings() {
                let z = ring.reduce(&CycloNum::zeta()).unwrap();
                let mut sum: Poly = Vec::new();
                for k in 0..13u128 {
                    sum = poly_add(&sum, &ring.pow(&z, k), ring.modulus());
                }
                assert!(sum.is_empty(), "Phi_13(t) = 0 in the quotient at p = {p}");
            }
        }
    }

    #[test]
    fn reduce_constants_and_denominators() {
        let sys = ResidueSystem::for_exponent(5).unwrap();
        let ring = &sys.rings()[0];
        assert_eq!(
            ring.reduce(&CycloNum::from_rational(rat(13))).unwrap(),
            vec![13]
        );
        // 1/7 is fine mod 25, 1/5 is not.
        let x = CycloNum::from_rational(crate::ring::Rat::new(1.into(), 7.into()));
        let inv7 = ring.reduce(&x).unwrap();
        assert_eq!(
            poly_trim(inv7.iter().map(|&c| c * 7 % 25).collect()),
            vec![1]
        );
        let bad = CycloNum::from_rational(crate::ring::Rat::new(1.into(), 5.into()));
        assert!(matches!(
            ring.reduce(&bad),
            Err(ResidueError::NonIntegralDenominator { .. })
        ));
    }

    #[test]
    fn extraneous_unit_is_invertible_in_every_local_ring() {
        // 13/(1-zeta)^12 is a global unit; its reductions must be units.
        let mu0 = CycloNum::one_minus_zeta_pow(1)
            .pow(-12)
            .unwrap()
            .scale(&rat(13));
        assert!(mu0.is_unit());
        for ring in ResidueSystem::for_exponent(5).unwrap().rings() {
            let el = ring.reduce(&mu0).unwrap();
            assert!(ring.is_unit(&el));
            let inv = ring.invert(&el).unwrap();
            assert_eq!(ring.mul(&el, &inv), vec![1]);
        }
    }

    #[test]
    fn classes_are_homomorphic_and_kill_pth_powers() {
        for p in [5u64, 7] {
            let sys = ResidueSystem::for_exponent(p).unwrap();
            for ring in sys.rings() {
                assert_eq!(
                    ring.unit_group_order(),
                    &(BigUint::from(p).pow(ring.degree() as u32)
                        * (BigUint::from(p).pow(ring.degree() as u32) - 1u32))
                );
                let one_class = ring.pth_power_class(&ring.one(), p).unwrap();
                assert!(one_class.iter().all(|&c| c == 0));
                // A couple of deterministic "random" units.
                let u = ring
                    .reduce(&CycloNum::from_integers([
                        3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8,
                    ]))
                    .unwrap();
                let v = ring
                    .reduce(&CycloNum::from_integers([
                        2, 7, 1, 8, 2, 8, 1, 8, 2, 8, 4, 5,
                    ]))
                    .unwrap();
                assert!(ring.is_unit(&u) && ring.is_unit(&v));
                let cu = ring.pth_power_class(&u, p).unwrap();
                let cv = ring.pth_power_class(&v, p).unwrap();
                let cuv = ring.pth_power_class(&ring.mul(&u, &v), p).unwrap();
                let sum: Vec<u64> = cu.iter().zip(&cv).map(|(a, b)| (a + b) % p).collect();
                assert_eq!(cuv, sum);
                let up = ring.pow(&u, u128::from(p));
                assert!(ring
                    .pth_power_class(&up, p)
                    .unwrap()
                    .iter()
                    .all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn class_vector_of_zeta_and_minus_one_vanish() {
        // zeta = (zeta^k)^p for pk = 1 mod 13, and -1 = (-1)^p for odd p.
        let z = class_vector(&CycloNum::zeta(), 5, 5).unwrap();
        assert_eq!(z.dim(), 12);
        assert!(z.is_zero());
        let m = class_vector(&-&CycloNum::one(), 7, 7).unwrap();
        assert_eq!(m.dim(), 12);
        assert!(m.is_zero());
    }

    /// The heart of the local theory: the class map has kernel exactly the
    /// p-th powers. Checked exhaustively in one ring for p = 5 (unit group
    /// order 5^4 * 624): the set of p-th powers of all units must coincide
    /// with the set of units of zero class.
    #[test]
    fn kernel_is_exactly_the_pth_powers_exhaustively() {
        let sys = ResidueSystem::for_exponent(5).unwrap();
        let ring = &sys.rings()[0];
        let mut fifth_powers: HashSet<Poly> = HashSet::new();
        let mut kernel: HashSet<Poly> = HashSet::new();
        let mut units = 0u64;
        for el in ring.enumerate_elements() {
            if !ring.is_unit(&el) {
                continue;
            }
            units += 1;
            fifth_powers.insert(ring.pow(&el, 5));
            if ring
                .pth_power_class(&el, 5)
                .unwrap()
                .iter()
                .all(|&c| c == 0)
            {
                kernel.insert(el);
            }
        }
        assert_eq!(units, 390_000, "5^4 (5^4 - 1) units");
        assert_eq!(fifth_powers.len(), 624, "index 5^4 subgroup");
        assert_eq!(kernel, fifth_powers);
    }

    #[test]
    fn auxiliary_field_dlog_classes() {
        // 19 is inert; 5 divides 19^12 - 1, so classes are length-1 dlogs.
        let sys = ResidueSystem::for_auxiliary(19).unwrap();
        assert_eq!(sys.rings().len(), 1);
        let ring = &sys.rings()[0];
        assert_eq!(ring.degree(), 12);
        assert_eq!(ring.kind(), RingKind::QuotQ);
        let g = ring.generator().unwrap().to_vec();
        assert_eq!(ring.pth_power_class(&g, 5).unwrap(), vec![1]);
        let u = ring
            .reduce(&CycloNum::from_integers([
                1, 1, 2, 0, 0, 3, 0, 1, 0, 0, 0, 4,
            ]))
            .unwrap();
        let cu = ring.pth_power_class(&u, 5).unwrap();
        let cg = ring.pth_power_class(&g, 5).unwrap();
        let prod = ring.pth_power_class(&ring.mul(&u, &g), 5).unwrap();
        assert_eq!(prod[0], (cu[0] + cg[0]) % 5);
        assert!(ring
            .pth_power_class(&ring.pow(&u, 5), 5)
            .unwrap()
            .iter()
            .all(|&c| c == 0));
        // 5 does not divide 23^6 - 1: classes are empty.
        let sys23 = ResidueSystem::for_auxiliary(23).unwrap();
        let r23 = &sys23.rings()[0];
        let w = r23.reduce(&CycloNum::zeta()).unwrap();
        assert_eq!(r23.pth_power_class(&w, 5).unwrap(), Vec::<u64>::new());
    }
}
