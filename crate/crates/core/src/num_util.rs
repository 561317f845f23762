//! Big-integer helpers: probabilistic primality, factorization with a
//! work budget, capped divisor enumeration and exact k-th roots.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Miller–Rabin over a fixed base set; deterministic far beyond u64 and
/// overwhelmingly reliable above that.
pub(crate) fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    if BASES.iter().any(|&b| n == &BigUint::from(b)) {
        return true;
    }
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    'bases: for &b in &BASES {
        let b = BigUint::from(b);
        if &b % n == BigUint::zero() {
            continue;
        }
        let mut x = b.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho bounded by `budget` iterations; `None` means
/// the budget ran out before a factor appeared.
fn pollard_rho(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let mut c = BigUint::one();
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return Some(d);
        }
        c += 1u32;
        if *budget == 0 {
            return None;
        }
    }
}

const TRIAL_BOUND: u32 = 100_000;
const RHO_BUDGET: u64 = 2_000_000;

/// Sorted `(prime, multiplicity)` pairs, or `None` when a cofactor resists
/// the rho budget. The product of the returned powers is checked to equal
/// the input.
pub(crate) fn factorize(n: &BigUint) -> Option<Vec<(BigUint, u32)>> {
    assert!(!n.is_zero(), "zero has no factorization");
    let mut remaining = n.clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let push = |fs: &mut Vec<(BigUint, u32)>, p: BigUint, k: u32| {
        if let Some(entry) = fs.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += k;
        } else {
            fs.push((p, k));
        }
    };
    for p in 2..=TRIAL_BOUND {
        let p = BigUint::from(p);
        if &p * &p > remaining {
            break;
        }
        let mut k = 0;
        while (&remaining % &p).is_zero() {
            remaining /= &p;
            k += 1;
        }
        if k > 0 {
            push(&mut factors, p, k);
        }
    }
    let mut budget = RHO_BUDGET;
    let mut stack = vec![remaining];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(&mut factors, m, 1);
            continue;
        }
        let d = pollard_rho(&m, &mut budget)?;
        stack.push(&m / &d);
        stack.push(d);
    }
    factors.sort();
    let product = factors
        .iter()
        .fold(BigUint::one(), |acc, (p, k)| acc * p.pow(*k));
    assert_eq!(&product, n, "factorization must multiply back");
    Some(factors)
}

/// All positive divisors of `n`, or `None` if there are more than `cap`
/// or the factorization budget runs out.
pub(crate) fn divisors_capped(n: &BigUint, cap: usize) -> Option<Vec<BigUint>> {
    let factors = factorize(n)?;
    let mut divisors = vec![BigUint::one()];
    for (p, k) in &factors {
        let count = divisors.len().checked_mul(*k as usize + 1)?;
        if count > cap {
            return None;
        }
        let mut next = Vec::with_capacity(count);
        for d in &divisors {
            let mut v = d.clone();
            next.push(v.clone());
            for _ in 0..*k {
                v *= p;
                next.push(v.clone());
            }
        }
        divisors = next;
    }
    divisors.sort();
    Some(divisors)
}

/// The exact `k`-th root of `n` when it exists. Negative `n` is accepted
/// for odd `k`.
pub(crate) fn perfect_kth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return perfect_kth_root(&-n, k).map(|r| -r);
    }
    let root = n.magnitude().nth_root(k);
    if root.pow(k) == *n.magnitude() {
        Some(BigInt::from(root))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_spot_checks() {
        assert!(is_probable_prime(&BigUint::from(2731u32)));
        assert!(!is_probable_prime(&BigUint::from(8193u32)));
        // 2^127 - 1 is a Mersenne prime.
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&(m127 + 2u32)));
    }

    #[test]
    fn factorization_multiplies_back() {
        let n = BigUint::from(8193u32);
        assert_eq!(
            factorize(&n).unwrap(),
            vec![(BigUint::from(3u32), 1), (BigUint::from(2731u32), 1)]
        );
        // 13! has the primes up to 13.
        let fact13 = (2u32..=13).fold(BigUint::one(), |a, k| a * k);
        let primes: Vec<u32> = factorize(&fact13)
            .unwrap()
            .iter()
            .map(|(p, _)| p.try_into().unwrap())
            .collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13]);
    }

    #[test]
    fn divisor_enumeration_and_cap() {
        let divs = divisors_capped(&BigUint::from(60u32), 100).unwrap();
        assert_eq!(divs.len(), 12);
        assert_eq!(divs[0], BigUint::one());
        assert_eq!(divs[11], BigUint::from(60u32));
        assert!(divisors_capped(&BigUint::from(60u32), 5).is_none());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(
            perfect_kth_root(&BigInt::from(-243), 5),
            Some(BigInt::from(-3))
        );
        assert_eq!(
            perfect_kth_root(&BigInt::from(1i64 << 26), 13),
            Some(BigInt::from(4))
        );
        assert_eq!(perfect_kth_root(&BigInt::from(50), 2), None);
        assert_eq!(perfect_kth_root(&BigInt::from(-16), 4), None);
    }
}
