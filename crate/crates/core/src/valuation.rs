//! p-adic valuations, machine-word primality, and prime discovery.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// A verified prime in machine-word range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(value: u64) -> Result<Self> {
        if is_prime(value) {
            Ok(Prime(value))
        } else {
            Err(Error::NotPrime(value))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Prime::new(value)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `ν_p(a)`: a non-negative exponent, or `Infinity` exactly for `a = 0`.
///
/// Variant order makes `Finite(_) < Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => v.fmt(f),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Exponent of `p` in `a`.
pub fn nu_p(a: &BigInt, p: Prime) -> Valuation {
    if a.is_zero() {
        return Valuation::Infinity;
    }
    let mag = a.magnitude();
    if p.0 == 2 {
        return Valuation::Finite(mag.trailing_zeros().expect("nonzero"));
    }
    let mut rest: BigUint = mag.clone();
    let pb = BigUint::from(p.0);
    // Divide by p^(2^k) while possible, then walk the powers back down.
    let mut powers = vec![pb];
    let mut v = 0u64;
    loop {
        let top = powers.last().unwrap();
        let (q, r) = rest.div_rem(top);
        if !r.is_zero() {
            break;
        }
        rest = q;
        v += 1 << (powers.len() - 1);
        let sq = top * top;
        if sq > rest {
            break;
        }
        powers.push(sq);
    }
    for (k, pw) in powers.iter().enumerate().rev() {
        loop {
            let (q, r) = rest.div_rem(pw);
            if !r.is_zero() {
                break;
            }
            rest = q;
            v += 1 << k;
        }
    }
    Valuation::Finite(v)
}

/// `ν_p` for a machine integer; `None` for zero.
pub fn nu_p_u64(mut a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let mut v = 0;
    while a.is_multiple_of(p) {
        a /= p;
        v += 1;
    }
    Some(v)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all of `u64`.
///
/// The first twelve primes as witnesses are sufficient below 3.3 * 10^24.
pub fn is_prime(m: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if m < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if m == w {
            return true;
        }
        if m.is_multiple_of(w) {
            return false;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Which coefficients prime discovery scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscoveryMode {
    /// Only `a_0` and `a_n`.
    #[default]
    Endpoints,
    /// Every nonzero coefficient.
    AllCoeffs,
}

/// Primes up to `bound` (inclusive), by sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn divides(p: u64, a: &BigInt) -> bool {
    (a.magnitude() % p).is_zero()
}

/// Every prime `<= bound` dividing `a_0` or `a_n` (endpoints mode) or some
/// nonzero coefficient (all-coefficients mode), ascending.
pub fn candidate_primes(f: &IntPoly, bound: u64, mode: DiscoveryMode) -> Result<Vec<Prime>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let scanned: Vec<&BigInt> = match mode {
        DiscoveryMode::Endpoints => vec![f.constant_term(), f.leading()],
        DiscoveryMode::AllCoeffs => f.coeffs().iter().filter(|c| !c.is_zero()).collect(),
    };
    let small: Vec<Option<u64>> = scanned.iter().map(|c| c.magnitude().to_u64()).collect();
    Ok(primes_up_to(bound)
        .into_iter()
        .filter(|&p| {
            scanned.iter().zip(&small).any(|(c, s)| match s {
                Some(v) => v % p == 0,
                None => divides(p, c),
            })
        })
        .map(Prime)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn trial_division_is_prime(m: u64) -> bool {
        m >= 2
            && (2..)
                .take_while(|d| d * d <= m)
                .all(|d| !m.is_multiple_of(d))
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(nu_p(&32.into(), pr(2)), Valuation::Finite(5));
        assert_eq!(nu_p(&0.into(), pr(7)), Valuation::Infinity);
        assert_eq!(nu_p(&(-12).into(), pr(2)), Valuation::Finite(2));
        assert_eq!(
            nu_p(&BigInt::from(3u64).pow(200), pr(3)),
            Valuation::Finite(200)
        );
        assert_eq!(
            nu_p(&(BigInt::from(5u64).pow(37) * 7), pr(5)),
            Valuation::Finite(37)
        );
        assert_eq!(nu_p(&7.into(), pr(5)), Valuation::Finite(0));
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(trial_division_is_prime(1_000_003));
        assert!(is_prime(1_000_003));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_615));
        // strong pseudoprime to bases 2..=37 would need > 3.3e24; check a few
        // classic base-2 pseudoprimes
        for m in [
            341u64,
            561,
            645,
            1105,
            3_215_031_751,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_prime(m), "{m}");
        }
    }

    #[test]
    fn primality_matches_trial_division() {
        for m in 0..20_000u64 {
            assert_eq!(is_prime(m), trial_division_is_prime(m), "{m}");
        }
    }

    #[test]
    fn discovery_examples() {
        let f = IntPoly::from_i64s(&[3, 2, 6]);
        let got: Vec<u64> = candidate_primes(&f, 100, DiscoveryMode::AllCoeffs)
            .unwrap()
            .into_iter()
            .map(Prime::get)
            .collect();
        assert_eq!(got, vec![2, 3]);

        let f = IntPoly::from_i64s(&[1, 0, 1]);
        assert!(candidate_primes(&f, 100, DiscoveryMode::Endpoints)
            .unwrap()
            .is_empty());

        let f = IntPoly::from_i64s(&[27, 108, 108, 108, 108, 108, 4]);
        let got: Vec<u64> = candidate_primes(&f, 100, DiscoveryMode::Endpoints)
            .unwrap()
            .into_iter()
            .map(Prime::get)
            .collect();
        assert_eq!(got, vec![2, 3]);

        assert_eq!(
            candidate_primes(&IntPoly::from_i64s(&[0, 1]), 10, DiscoveryMode::Endpoints),
            Err(Error::ZeroConstantTerm)
        );
        assert_eq!(
            candidate_primes(&IntPoly::zero(), 10, DiscoveryMode::Endpoints),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn prime_newtype_rejects_composites() {
        assert_eq!(Prime::new(4), Err(Error::NotPrime(4)));
        assert_eq!(serde_json::from_str::<Prime>("7").unwrap(), pr(7));
        assert!(serde_json::from_str::<Prime>("9").is_err());
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in 1i64..1_000_000, b in 1i64..1_000_000, pi in 0usize..4) {
            let p = pr([2, 3, 5, 7][pi]);
            let va = nu_p(&a.into(), p).finite().unwrap();
            let vb = nu_p(&b.into(), p).finite().unwrap();
            prop_assert_eq!(nu_p(&(BigInt::from(a) * b), p), Valuation::Finite(va + vb));
        }

        #[test]
        fn valuation_of_sum(a in -100_000i64..100_000, b in -100_000i64..100_000, pi in 0usize..4) {
            let p = pr([2, 3, 5, 7][pi]);
            let va = nu_p(&a.into(), p);
            let vb = nu_p(&b.into(), p);
            let vs = nu_p(&BigInt::from(a + b), p);
            prop_assert!(vs >= va.min(vb));
            if va != vb {
                prop_assert_eq!(vs, va.min(vb));
            }
        }

        #[test]
        fn discovery_matches_trial_division(c in proptest::collection::vec(-5000i64..5000, 2..6)) {
            let mut c = c;
            if c[0] == 0 { c[0] = 1; }
            let f = IntPoly::from_i64s(&c);
            prop_assume!(f.degree().unwrap_or(0) >= 1);
            let found: Vec<u64> = candidate_primes(&f, 200, DiscoveryMode::AllCoeffs)
                .unwrap().into_iter().map(Prime::get).collect();
            let expected: Vec<u64> = (2..=200u64)
                .filter(|&d| trial_division_is_prime(d))
                .filter(|&d| c.iter().any(|&x| x != 0 && x % d as i64 == 0))
                .collect();
            prop_assert_eq!(found, expected);
        }
    }
}
