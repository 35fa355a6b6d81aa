//! Irreducibility engines driven by Newton polygons at one or more primes.
//!
//! Every proper factor of `f` has a degree that is a sum of segment widths
//! of the polygon at each prime (each segment used at most once). Two
//! consequences are implemented here:
//!
//! * the subset-sum test: intersect, over all primes, the achievable sums in
//!   `(0, ⌊n/2⌋]`; an empty intersection leaves no room for a factor;
//! * the width-gcd test: every factor degree is a multiple of each `d_p`,
//!   the gcd of the widths, hence of their lcm, which equals
//!   `n / gcd(n/d_1, ..., n/d_k)`; when that is `n` there is no proper factor.
//!
//! The classical single-prime criteria of Eisenstein and Dumas are provided
//! as literal condition checks.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::polygon::{build_polygon, NewtonPolygon};
use crate::valuation::{nu_p, Prime, Valuation};

/// Membership over `1..=cap`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSet {
    cap: usize,
    members: Vec<bool>,
}

impl DegreeSet {
    pub fn empty(cap: usize) -> Self {
        DegreeSet {
            cap,
            members: vec![false; cap + 1],
        }
    }

    /// `{1, ..., cap}`.
    pub fn full(cap: usize) -> Self {
        let mut members = vec![true; cap + 1];
        members[0] = false;
        DegreeSet { cap, members }
    }

    pub fn from_degrees(cap: usize, degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(cap);
        for d in degrees {
            if (1..=cap).contains(&d) {
                set.members[d] = true;
            }
        }
        set
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn contains(&self, d: usize) -> bool {
        self.members.get(d).copied().unwrap_or(false)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(d, &m)| m.then_some(d))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn is_subset(&self, other: &DegreeSet) -> bool {
        self.iter().all(|d| other.contains(d))
    }

    pub fn intersect(&self, other: &DegreeSet) -> DegreeSet {
        let cap = self.cap.min(other.cap);
        DegreeSet::from_degrees(cap, self.iter().filter(|&d| other.contains(d)))
    }
}

impl Serialize for DegreeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Irreducible,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Irreducible => "Irreducible",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

/// Sums of sub-multisets of `widths` lying in `[1, cap]`.
pub fn subset_sum_degrees(widths: &[usize], cap: usize) -> DegreeSet {
    let mut reach = vec![false; cap + 1];
    reach[0] = true;
    for &w in widths {
        if w == 0 || w > cap {
            continue;
        }
        for s in (w..=cap).rev() {
            if reach[s - w] {
                reach[s] = true;
            }
        }
    }
    reach[0] = false;
    DegreeSet {
        cap,
        members: reach,
    }
}

fn require_degree(f: &IntPoly, min: usize) -> Result<usize> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n < min {
        return Err(Error::DegreeTooSmall {
            degree: n,
            required: min,
        });
    }
    Ok(n)
}

fn require_distinct(primes: &[Prime]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for p in primes {
        if !seen.insert(*p) {
            return Err(Error::DuplicatePrime(p.get()));
        }
    }
    Ok(())
}

/// `S_p` of an already-built polygon.
pub fn s_p_of(poly: &NewtonPolygon) -> DegreeSet {
    subset_sum_degrees(&poly.segment_widths(), poly.degree() / 2)
}

/// Candidate degrees `<= ⌊n/2⌋` for a proper factor, as seen from `p`.
pub fn s_p(f: &IntPoly, p: Prime) -> Result<DegreeSet> {
    require_degree(f, 2)?;
    Ok(s_p_of(&build_polygon(f, p)?))
}

/// Intersects `S_p` over `primes`. The verdict is `Irreducible` exactly when
/// the intersection is empty; otherwise it lists every degree `<= ⌊n/2⌋`
/// that a proper factor could still have.
pub fn theorem_a_verdict(f: &IntPoly, primes: &[Prime]) -> Result<(Verdict, DegreeSet)> {
    let n = require_degree(f, 2)?;
    if primes.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one prime is required".into(),
        ));
    }
    require_distinct(primes)?;
    let mut residual = DegreeSet::full(n / 2);
    for &p in primes {
        residual = residual.intersect(&s_p(f, p)?);
    }
    Ok((verdict_of(residual.is_empty()), residual))
}

fn verdict_of(irreducible: bool) -> Verdict {
    if irreducible {
        Verdict::Irreducible
    } else {
        Verdict::Inconclusive
    }
}

/// gcd of the segment widths of an already-built polygon.
pub fn d_p_of(poly: &NewtonPolygon) -> usize {
    poly.segment_widths().into_iter().fold(0, |g, w| g.gcd(&w))
}

pub fn d_p(f: &IntPoly, p: Prime) -> Result<usize> {
    Ok(d_p_of(&build_polygon(f, p)?))
}

/// `n / gcd(n/d_1, ..., n/d_k)` for divisors `d_i` of `n`, cross-checked
/// against `lcm(d_1, ..., d_k)`. Returns 1 for an empty list.
pub fn lcm_of_divisors(n: usize, divisors: &[usize]) -> usize {
    if divisors.is_empty() {
        return 1;
    }
    assert!(
        divisors.iter().all(|&d| d > 0 && n.is_multiple_of(d)),
        "every d must divide n = {n}: {divisors:?}"
    );
    let via_gcd = n / divisors.iter().fold(0, |g, &d| g.gcd(&(n / d)));
    let via_lcm = divisors.iter().fold(1, |l, &d| l.lcm(&d));
    assert_eq!(
        via_gcd, via_lcm,
        "lcm identity failed for n = {n}, d = {divisors:?}"
    );
    via_gcd
}

/// A number dividing the degree of every factor of `f`.
pub fn factor_degree_multiple(f: &IntPoly, primes: &[Prime]) -> Result<usize> {
    let n = require_degree(f, 1)?;
    require_distinct(primes)?;
    let ds = primes
        .iter()
        .map(|&p| d_p(f, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(lcm_of_divisors(n, &ds))
}

/// `Irreducible` when the factor-degree multiple equals the degree.
pub fn theorem_b_verdict(f: &IntPoly, primes: &[Prime]) -> Result<Verdict> {
    let n = require_degree(f, 2)?;
    Ok(verdict_of(factor_degree_multiple(f, primes)? == n))
}

/// Dumas' conditions on `f` read left to right: `ν(a_0) = 0`,
/// `gcd(ν(a_n), n) = 1`, and `ν(a_i)/i > ν(a_n)/n` for `0 < i < n`.
fn dumas_oriented(f: &IntPoly, p: Prime) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let vals: Vec<Valuation> = f.coeffs().iter().map(|a| nu_p(a, p)).collect();
    if vals[0] != Valuation::Finite(0) {
        return false;
    }
    let Some(top) = vals[n].finite() else {
        return false;
    };
    if top.gcd(&(n as u64)) != 1 {
        return false;
    }
    (1..n).all(|i| match vals[i] {
        Valuation::Infinity => true,
        Valuation::Finite(v) => v as u128 * n as u128 > top as u128 * i as u128,
    })
}

/// Dumas' criterion for `f` or its reciprocal.
pub fn dumas_single_prime(f: &IntPoly, p: Prime) -> bool {
    if f.is_zero() || f.constant_term() == &num_bigint::BigInt::ZERO {
        return false;
    }
    dumas_oriented(f, p) || dumas_oriented(&f.reciprocal(), p)
}

/// Schönemann–Eisenstein, literally: `p ∤ a_n`, `p | a_i` for `i < n`,
/// `p² ∤ a_0`.
pub fn eisenstein(f: &IntPoly, p: Prime) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let v = |i: usize| nu_p(f.coeff(i), p);
    v(n) == Valuation::Finite(0)
        && (0..n).all(|i| v(i) >= Valuation::Finite(1))
        && v(0) == Valuation::Finite(1)
}
