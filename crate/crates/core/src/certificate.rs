//! End-to-end checking and self-contained certificates.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::criteria::{
    d_p_of, dumas_single_prime, eisenstein, lcm_of_divisors, s_p_of, subset_sum_degrees, DegreeSet,
    Verdict,
};
use crate::error::{Error, Result};
use crate::poly::{parse_poly, IntPoly};
use crate::polygon::{build_polygon, verify_vertex_conditions};
use crate::valuation::{candidate_primes, nu_p, DiscoveryMode, Prime, Valuation};

pub const DEFAULT_DISCOVERY_BOUND: u64 = 10_000;

/// The rule that certified irreducibility, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// Degree one; nothing to check.
    Linear,
    Eisenstein,
    DumasSinglePrime,
    TheoremB,
    TheoremA,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOptions {
    pub primes: Vec<Prime>,
    /// Add discovered primes to the given ones. Discovery also runs when no
    /// primes are given.
    pub discover: bool,
    pub bound: u64,
    pub mode: DiscoveryMode,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            primes: Vec::new(),
            discover: false,
            bound: DEFAULT_DISCOVERY_BOUND,
            mode: DiscoveryMode::Endpoints,
        }
    }
}

impl CheckOptions {
    pub fn with_primes(primes: &[Prime]) -> Self {
        CheckOptions {
            primes: primes.to_vec(),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEvidence {
    pub prime: Prime,
    pub vertices: Vec<(usize, u64)>,
    pub segment_widths: Vec<usize>,
    pub d_p: usize,
    pub s_p: Vec<usize>,
}

impl PrimeEvidence {
    /// A prime whose `S_p` is all of `{1, ..., ⌊n/2⌋}` rules nothing out.
    pub fn is_informative(&self) -> bool {
        let n: usize = self.segment_widths.iter().sum();
        self.s_p.len() < n / 2
    }
}

/// Verdict plus the evidence behind it. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Input, canonical coefficient list.
    pub polynomial: String,
    /// `None` for the zero polynomial.
    pub degree: Option<usize>,
    pub content: String,
    pub x_power: usize,
    pub primes: Vec<Prime>,
    pub per_prime: Vec<PrimeEvidence>,
    pub verdict: Verdict,
    pub fired_rule: Rule,
    pub factor_degree_multiple: usize,
    pub residual_degrees: Vec<usize>,
}

impl Certificate {
    fn trivial(f: &IntPoly, content: BigInt, x_power: usize, verdict: Verdict, rule: Rule) -> Self {
        let residual = match (verdict, f.degree()) {
            (Verdict::Inconclusive, Some(n)) if n >= 2 => vec![1],
            _ => Vec::new(),
        };
        Certificate {
            polynomial: f.to_coeff_list(),
            degree: f.degree(),
            content: content.to_string(),
            x_power,
            primes: Vec::new(),
            per_prime: Vec::new(),
            verdict,
            fired_rule: rule,
            factor_degree_multiple: 1,
            residual_degrees: residual,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// Degree of the part the polygons were built for.
    pub fn core_degree(&self) -> Option<usize> {
        self.degree.map(|d| d - self.x_power)
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "polynomial: {}", self.polynomial);
        match self.degree {
            Some(d) => {
                let _ = writeln!(out, "degree: {d}");
            }
            None => {
                let _ = writeln!(out, "degree: none (zero polynomial)");
            }
        }
        if self.content != "1" {
            let _ = writeln!(out, "content: {}", self.content);
        }
        if self.x_power > 0 {
            let _ = writeln!(out, "x-power: {} (x divides the polynomial)", self.x_power);
        }
        for ev in &self.per_prime {
            let verts: Vec<String> = ev
                .vertices
                .iter()
                .map(|(i, v)| format!("({i},{v})"))
                .collect();
            let _ = writeln!(
                out,
                "p = {}: vertices {} widths {:?} d_p = {} S_p = {:?}{}",
                ev.prime,
                verts.join(" "),
                ev.segment_widths,
                ev.d_p,
                ev.s_p,
                if ev.is_informative() {
                    ""
                } else {
                    " (non-informative)"
                }
            );
        }
        let _ = writeln!(
            out,
            "factor degree multiple: {}",
            self.factor_degree_multiple
        );
        let _ = writeln!(out, "residual degrees: {:?}", self.residual_degrees);
        let _ = writeln!(out, "verdict: {} ({:?})", self.verdict, self.fired_rule);
        out
    }

    /// Re-verifies the certificate from its own fields. Hull vertices are
    /// checked with [`verify_vertex_conditions`] rather than recomputed.
    pub fn recheck(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::CertificateMismatch(msg));
        let f = parse_poly(&self.polynomial)?;
        if f.degree() != self.degree {
            return fail("degree".into());
        }
        if f.is_zero() {
            return if self.verdict == Verdict::Inconclusive {
                Ok(())
            } else {
                fail("zero polynomial cannot be irreducible".into())
            };
        }
        let (content, primitive) = f.content_and_primitive()?;
        let (x_power, core) = primitive.factor_out_x()?;
        if content.to_string() != self.content || x_power != self.x_power {
            return fail("content or x-power".into());
        }
        let n = f.degree().unwrap();
        if n <= 1 || x_power > 0 {
            let expected = if n == 1 {
                (Verdict::Irreducible, Rule::Linear)
            } else {
                (Verdict::Inconclusive, Rule::None)
            };
            return if (self.verdict, self.fired_rule) == expected {
                Ok(())
            } else {
                fail("trivial-case verdict".into())
            };
        }

        let primes: Vec<Prime> = self.per_prime.iter().map(|e| e.prime).collect();
        if primes != self.primes || primes.windows(2).any(|w| w[0] >= w[1]) {
            return fail("prime list".into());
        }
        let mut residual = DegreeSet::full(n / 2);
        let mut ds = Vec::new();
        for ev in &self.per_prime {
            let p = ev.prime;
            for &(i, v) in &ev.vertices {
                if i > n || nu_p(core.coeff(i), p) != Valuation::Finite(v) {
                    return fail(format!("vertex ({i},{v}) at p = {p}"));
                }
            }
            let abscissae: Vec<usize> = ev.vertices.iter().map(|&(i, _)| i).collect();
            if !verify_vertex_conditions(&abscissae, &core, p)? {
                return fail(format!("vertices at p = {p} are not the hull"));
            }
            let mut widths = Vec::new();
            for w in ev.vertices.windows(2) {
                let (di, dv) = (w[1].0 - w[0].0, w[1].1.abs_diff(w[0].1) as usize);
                let m = dv.gcd(&di);
                widths.extend(std::iter::repeat_n(di / m, m));
            }
            if widths != ev.segment_widths {
                return fail(format!("segment widths at p = {p}"));
            }
            let d = widths.iter().fold(0, |g, w| g.gcd(w));
            let s = subset_sum_degrees(&widths, n / 2);
            if d != ev.d_p || s.to_vec() != ev.s_p {
                return fail(format!("d_p or S_p at p = {p}"));
            }
            residual = residual.intersect(&s);
            ds.push(d);
        }
        let multiple = lcm_of_divisors(n, &ds);
        if multiple != self.factor_degree_multiple || residual.to_vec() != self.residual_degrees {
            return fail("factor degree multiple or residual".into());
        }
        let rule = first_rule(&core, &primes, multiple, residual.is_empty());
        let verdict = if rule == Rule::None {
            Verdict::Inconclusive
        } else {
            Verdict::Irreducible
        };
        if (verdict, rule) != (self.verdict, self.fired_rule) {
            return fail(format!("verdict {verdict} via {rule:?}"));
        }
        Ok(())
    }
}

fn first_rule(core: &IntPoly, primes: &[Prime], multiple: usize, residual_empty: bool) -> Rule {
    let n = core.degree().unwrap_or(0);
    if primes.iter().any(|&p| eisenstein(core, p)) {
        Rule::Eisenstein
    } else if primes.iter().any(|&p| dumas_single_prime(core, p)) {
        Rule::DumasSinglePrime
    } else if !primes.is_empty() && multiple == n {
        Rule::TheoremB
    } else if !primes.is_empty() && residual_empty {
        Rule::TheoremA
    } else {
        Rule::None
    }
}

/// Runs every criterion on `f` and assembles a certificate.
///
/// Content and powers of `x` are stripped and reported first. Degree-one
/// input is trivially irreducible; constants and multiples of `x` of
/// degree at least two are reported as inconclusive.
pub fn auto_check(f: &IntPoly, opts: &CheckOptions) -> Certificate {
    if f.is_zero() {
        return Certificate::trivial(f, BigInt::zero(), 0, Verdict::Inconclusive, Rule::None);
    }
    let (content, primitive) = f.content_and_primitive().expect("nonzero");
    let (x_power, core) = primitive.factor_out_x().expect("nonzero");
    let n = f.degree().expect("nonzero");
    match n {
        0 => return Certificate::trivial(f, content, x_power, Verdict::Inconclusive, Rule::None),
        1 => return Certificate::trivial(f, content, x_power, Verdict::Irreducible, Rule::Linear),
        _ if x_power > 0 => {
            return Certificate::trivial(f, content, x_power, Verdict::Inconclusive, Rule::None)
        }
        _ => {}
    }

    let mut primes = opts.primes.clone();
    if opts.discover || primes.is_empty() {
        primes.extend(candidate_primes(&core, opts.bound, opts.mode).expect("core has a_0 != 0"));
    }
    primes.sort();
    primes.dedup();

    let mut per_prime = Vec::with_capacity(primes.len());
    let mut residual = DegreeSet::full(n / 2);
    let mut ds = Vec::with_capacity(primes.len());
    for &p in &primes {
        let poly = build_polygon(&core, p).expect("core has a_0 != 0 and degree >= 2");
        let s = s_p_of(&poly);
        let d = d_p_of(&poly);
        residual = residual.intersect(&s);
        ds.push(d);
        per_prime.push(PrimeEvidence {
            prime: p,
            vertices: poly.vertices().iter().map(|v| (v.i, v.v)).collect(),
            segment_widths: poly.segment_widths(),
            d_p: d,
            s_p: s.to_vec(),
        });
    }
    let multiple = lcm_of_divisors(n, &ds);
    let rule = first_rule(&core, &primes, multiple, residual.is_empty());
    let verdict = if rule == Rule::None {
        Verdict::Inconclusive
    } else {
        Verdict::Irreducible
    };
    Certificate {
        polynomial: f.to_coeff_list(),
        degree: Some(n),
        content: content.to_string(),
        x_power,
        primes,
        per_prime,
        verdict,
        fired_rule: rule,
        factor_degree_multiple: multiple,
        residual_degrees: residual.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn check(text: &str, primes: &[u64]) -> Certificate {
        let primes: Vec<Prime> = primes.iter().map(|&p| pr(p)).collect();
        auto_check(
            &parse_poly(text).unwrap(),
            &CheckOptions::with_primes(&primes),
        )
    }

    #[test]
    fn family_one_certified() {
        let cert = check("27,108,108,108,108,108,4", &[2, 3]);
        assert_eq!(cert.verdict, Verdict::Irreducible);
        assert_eq!(cert.fired_rule, Rule::TheoremB);
        assert_eq!(cert.factor_degree_multiple, 6);
        assert!(cert.residual_degrees.is_empty());
        cert.recheck().unwrap();
    }

    #[test]
    fn discovered_primes_suffice() {
        let cert = check("27,108,108,108,108,108,4", &[]);
        assert_eq!(cert.primes, vec![pr(2), pr(3)]);
        assert_eq!(cert.verdict, Verdict::Irreducible);
    }

    #[test]
    fn difference_of_squares_inconclusive() {
        let cert = check("-4,0,1", &[]);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert_eq!(cert.fired_rule, Rule::None);
        assert_eq!(cert.residual_degrees, vec![1]);
        cert.recheck().unwrap();
    }

    #[test]
    fn eisenstein_takes_priority() {
        let cert = check("2,2,1", &[2]);
        assert_eq!(cert.verdict, Verdict::Irreducible);
        assert_eq!(cert.fired_rule, Rule::Eisenstein);
        // reciprocal orientation only: Dumas
        let cert = check("1,2,2", &[2]);
        assert_eq!(cert.fired_rule, Rule::DumasSinglePrime);
        cert.recheck().unwrap();
    }

    #[test]
    fn trivial_inputs() {
        let cert = check("0", &[]);
        assert_eq!((cert.verdict, cert.degree), (Verdict::Inconclusive, None));
        cert.recheck().unwrap();
        let cert = check("6", &[]);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        let cert = check("-6,3", &[]);
        assert_eq!(
            (cert.verdict, cert.fired_rule),
            (Verdict::Irreducible, Rule::Linear)
        );
        assert_eq!(cert.content, "3");
        let cert = check("0,0,2,2", &[]);
        assert_eq!((cert.verdict, cert.x_power), (Verdict::Inconclusive, 2));
        assert_eq!(cert.content, "2");
        cert.recheck().unwrap();
    }

    #[test]
    fn content_is_stripped() {
        let a = check("27,108,108,108,108,108,4", &[2, 3]);
        let b = check("135,540,540,540,540,540,20", &[2, 3]);
        assert_eq!(a.per_prime, b.per_prime);
        assert_eq!(b.content, "5");
        assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn json_round_trip_and_key_order() {
        let cert = check("2,2,1", &[2]);
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(
            json,
            r#"{"polynomial":"2,2,1","degree":2,"content":"1","x_power":0,"primes":[2],"per_prime":[{"prime":2,"vertices":[[0,1],[2,0]],"segment_widths":[2],"d_p":2,"s_p":[]}],"verdict":"Irreducible","fired_rule":"Eisenstein","factor_degree_multiple":2,"residual_degrees":[]}"#
        );
        assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
    }

    #[test]
    fn tampered_certificates_fail() {
        let cert = check("27,108,108,108,108,108,4", &[2, 3]);
        let mut bad = cert.clone();
        bad.per_prime[0].segment_widths = vec![2, 2, 2];
        assert!(bad.recheck().is_err());
        let mut bad = cert.clone();
        bad.per_prime[1].vertices = vec![(0, 3), (3, 0), (6, 0)];
        assert!(bad.recheck().is_err());
        let mut bad = check("-1,0,1", &[2, 3]);
        bad.verdict = Verdict::Irreducible;
        bad.fired_rule = Rule::TheoremA;
        assert!(bad.recheck().is_err());
    }
}
