//! The acceptance suite as library code, shared by `irredcert selftest` and
//! the `acceptance` test target. Every randomized check draws from a
//! ChaCha stream seeded per criterion, so a seed fixes the whole run.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::{auto_check, CheckOptions};
use crate::criteria::{
    dumas_single_prime, eisenstein, factor_degree_multiple, lcm_of_divisors, s_p,
    theorem_a_verdict, theorem_b_verdict, Verdict,
};
use crate::families::{self, FAMILY_COUNT};
use crate::oracle::{kronecker_factorize, merge_polygons, Factorization, Limits};
use crate::poly::IntPoly;
use crate::polygon::{build_polygon, valuations, verify_vertex_conditions};
use crate::valuation::{candidate_primes, DiscoveryMode, Prime};

pub const DEFAULT_SEED: u64 = 20_130_101;

pub const FAMILY_PRIME_PAIRS: [(u64, u64); 4] = [(2, 3), (3, 2), (2, 5), (5, 7)];
pub const FAMILY_EXPONENTS: [u32; 4] = [0, 1, 2, 5];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

fn timed(
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    body: impl FnOnce() -> (bool, String),
) -> Outcome {
    let start = Instant::now();
    let (ok, mut detail) = body();
    let elapsed = start.elapsed();
    let mut passed = ok;
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!("; over the {}s budget", limit.as_secs()));
        }
    }
    Outcome {
        id,
        name,
        passed,
        detail,
        elapsed,
    }
}

fn rng_for(seed: u64, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ u64::from(id))
}

fn pr(p: u64) -> Prime {
    Prime::new(p).expect("fixed primes")
}

/// Degree exactly `deg`, coefficients in `[-bound, bound]`, nonzero
/// leading and constant terms.
pub fn random_poly(rng: &mut impl Rng, deg: usize, bound: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    for idx in [0, deg] {
        while c[idx] == 0 {
            c[idx] = rng.gen_range(-bound..=bound);
        }
    }
    IntPoly::from_i64s(&c)
}

/// Every family instantiation swept by the suite, labelled.
pub fn family_instances() -> Vec<(String, IntPoly, Prime, Prime)> {
    let mut out = Vec::new();
    for fam in 1..=FAMILY_COUNT {
        for &(p, q) in &FAMILY_PRIME_PAIRS {
            let ms: Vec<Option<u32>> = if families::takes_exponent(fam) {
                FAMILY_EXPONENTS.iter().map(|&m| Some(m)).collect()
            } else {
                vec![None]
            };
            for m in ms {
                let f = families::generate(fam, pr(p), pr(q), m).expect("valid family arguments");
                let label = match m {
                    Some(m) => format!("family {fam} (p={p}, q={q}, m={m})"),
                    None => format!("family {fam} (p={p}, q={q})"),
                };
                out.push((label, f, pr(p), pr(q)));
            }
        }
    }
    out
}

pub fn families_certified() -> Outcome {
    timed(
        1,
        "example families certified",
        Some(Duration::from_secs(1)),
        || {
            let mut failures = Vec::new();
            let instances = family_instances();
            for (label, f, p, q) in &instances {
                let cert = auto_check(f, &CheckOptions::with_primes(&[*p, *q]));
                if cert.verdict != Verdict::Irreducible {
                    failures.push(label.clone());
                }
            }
            (
                failures.is_empty(),
                format!(
                    "{}/{} instantiations Irreducible{}",
                    instances.len() - failures.len(),
                    instances.len(),
                    listing(&failures)
                ),
            )
        },
    )
}

pub fn families_oracle() -> Outcome {
    timed(2, "oracle agrees on example families", None, || {
        let limits = Limits::default();
        let mut confirmed = 0;
        let mut skipped = 0;
        let mut failures = Vec::new();
        for (label, f, _, _) in family_instances() {
            match kronecker_factorize(&f, &limits) {
                Factorization::Irreducible => confirmed += 1,
                Factorization::LimitExceeded(_) => skipped += 1,
                Factorization::Factored { .. } => failures.push(label),
            }
        }
        (
            failures.is_empty(),
            format!(
                "{confirmed} confirmed, {skipped} over budget, {} disagreements{}",
                failures.len(),
                listing(&failures)
            ),
        )
    })
}

/// The polynomial whose 2-adic polygon has vertices (0,4) (1,2) (5,0)
/// (8,0) (10,2) (11,5).
pub fn five_edge_polynomial() -> IntPoly {
    IntPoly::from_i64s(&[16, 4, -4, 2, -2, 1, 2, -1, -1, 16, 4, 32])
}

/// Lower-hull vertex sets found by trying every subset of abscissae: a
/// subset qualifies when it starts at 0, ends at n, has strictly
/// increasing slopes, and no point lies below its polyline.
pub fn brute_force_hull(points: &[(usize, u64)]) -> Vec<Vec<(usize, u64)>> {
    let k = points.len();
    let mut found = Vec::new();
    for mask in 0u64..(1 << k) {
        if mask & 1 == 0 || mask >> (k - 1) & 1 == 0 {
            continue;
        }
        let chosen: Vec<(usize, u64)> = (0..k)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| points[b])
            .collect();
        let strictly_convex = chosen.windows(3).all(|w| {
            let (a, b, c) = (w[0], w[1], w[2]);
            // slope(a,b) < slope(b,c)
            (b.1 as i128 - a.1 as i128) * (c.0 as i128 - b.0 as i128)
                < (c.1 as i128 - b.1 as i128) * (b.0 as i128 - a.0 as i128)
        });
        if !strictly_convex {
            continue;
        }
        let below = points.iter().any(|&(i, v)| {
            chosen.windows(2).any(|w| {
                let ((i1, v1), (i2, v2)) = (w[0], w[1]);
                i1 < i && i < i2 && {
                    let (i, i1, i2) = (i as i128, i1 as i128, i2 as i128);
                    (v as i128) * (i2 - i1) < v1 as i128 * (i2 - i) + v2 as i128 * (i - i1)
                }
            })
        });
        if !below {
            found.push(chosen);
        }
    }
    found
}

pub fn five_edge_polygon() -> Outcome {
    timed(3, "five-edge polygon vertices and widths", None, || {
        let f = five_edge_polynomial();
        let p = pr(2);
        let expected = vec![(0, 4), (1, 2), (5, 0), (8, 0), (10, 2), (11, 5)];
        let poly = match build_polygon(&f, p) {
            Ok(poly) => poly,
            Err(e) => return (false, format!("build failed: {e}")),
        };
        let got: Vec<(usize, u64)> = poly.vertices().iter().map(|v| (v.i, v.v)).collect();
        let points: Vec<(usize, u64)> = valuations(&f, p)
            .into_iter()
            .enumerate()
            .filter_map(|(i, v)| v.finite().map(|v| (i, v)))
            .collect();
        let brute = brute_force_hull(&points);
        let abscissae: Vec<usize> = got.iter().map(|&(i, _)| i).collect();
        let characterized = verify_vertex_conditions(&abscissae, &f, p).unwrap_or(false);
        let mut widths = poly.segment_widths();
        widths.sort_unstable();
        let ok = got == expected
            && brute == vec![expected.clone()]
            && characterized
            && widths == vec![1, 1, 1, 1, 1, 1, 1, 2, 2];
        (
            ok,
            format!(
                "vertices {}, brute-force hulls {}, widths {:?}",
                got.iter()
                    .map(|(i, v)| format!("({i},{v})"))
                    .collect::<Vec<_>>()
                    .join(" "),
                brute.len(),
                widths
            ),
        )
    })
}

pub const MERGE_TRIALS: usize = 1000;

pub fn merge_law(seed: u64) -> Outcome {
    timed(
        4,
        "polygon of a product merges its factors",
        Some(Duration::from_secs(10)),
        || {
            let mut rng = rng_for(seed, 4);
            let primes = [2, 3, 5, 7];
            let mut failures = Vec::new();
            for _ in 0..MERGE_TRIALS {
                let deg = rng.gen_range(1..=6);
                let g = random_poly(&mut rng, deg, 100);
                let deg = rng.gen_range(1..=6);
                let h = random_poly(&mut rng, deg, 100);
                let p = pr(primes[rng.gen_range(0..primes.len())]);
                let product = &g * &h;
                let direct = build_polygon(&product, p).expect("nonzero constant term");
                let merged = merge_polygons(
                    &build_polygon(&g, p).expect("valid factor"),
                    &build_polygon(&h, p).expect("valid factor"),
                )
                .expect("same prime");
                if direct != merged {
                    failures.push(format!("({g})*({h}) at {p}"));
                }
            }
            (
                failures.is_empty(),
                format!(
                    "{MERGE_TRIALS} trials, {} failures{}",
                    failures.len(),
                    listing(&failures)
                ),
            )
        },
    )
}

pub const SOUNDNESS_TRIALS: usize = 10_000;

pub fn soundness(seed: u64) -> Outcome {
    timed(
        5,
        "every Irreducible verdict confirmed by the oracle",
        Some(Duration::from_secs(300)),
        || {
            let mut rng = rng_for(seed, 5);
            let limits = Limits::default();
            let opts = CheckOptions::default();
            let mut certified = 0;
            let mut failures = Vec::new();
            for _ in 0..SOUNDNESS_TRIALS {
                let deg = rng.gen_range(1..=8);
                let f = random_poly(&mut rng, deg, 50);
                let cert = auto_check(&f, &opts);
                if cert.verdict != Verdict::Irreducible {
                    continue;
                }
                certified += 1;
                match kronecker_factorize(&f, &limits) {
                    Factorization::Irreducible => {}
                    other => failures.push(format!("{f}: {other}")),
                }
            }
            (
                failures.is_empty(),
                format!(
                    "{SOUNDNESS_TRIALS} polynomials, {certified} certified, {} counterexamples{}",
                    failures.len(),
                    listing(&failures)
                ),
            )
        },
    )
}

pub const PRODUCT_TRIALS: usize = 1000;

pub fn factor_degree_law(seed: u64) -> Outcome {
    timed(
        6,
        "factor degrees respect S_p and the degree multiple",
        None,
        || {
            let mut rng = rng_for(seed, 6);
            let mut failures = Vec::new();
            let mut subsets_tried = 0usize;
            for _ in 0..PRODUCT_TRIALS {
                let dg = rng.gen_range(1..=4);
                let dh = rng.gen_range(1..=4);
                let g = random_poly(&mut rng, dg, 30);
                let h = random_poly(&mut rng, dh, 30);
                let f = &g * &h;
                let n = dg + dh;
                let primes =
                    candidate_primes(&f, 200, DiscoveryMode::AllCoeffs).expect("valid product");
                for &p in &primes {
                    let s = s_p(&f, p).expect("degree >= 2");
                    if !s.contains(dg.min(dh)) {
                        failures.push(format!("({g})*({h}): S_{p} = {s}"));
                    }
                }
                let small = &primes[..primes.len().min(4)];
                for mask in 1u32..(1 << small.len()) {
                    let subset: Vec<Prime> = (0..small.len())
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| small[b])
                        .collect();
                    subsets_tried += 1;
                    let m = factor_degree_multiple(&f, &subset).expect("degree >= 2");
                    if dg % m != 0 || dh % m != 0 || n % m != 0 {
                        failures.push(format!("({g})*({h}): multiple {m} over {subset:?}"));
                    }
                }
            }
            (
                failures.is_empty(),
                format!(
                    "{PRODUCT_TRIALS} products, {subsets_tried} prime subsets, {} failures{}",
                    failures.len(),
                    listing(&failures)
                ),
            )
        },
    )
}

fn lcm_by_gcd(values: &[usize]) -> usize {
    values.iter().fold(1, |acc, &d| acc / acc.gcd(&d) * d)
}

pub fn lcm_identity() -> Outcome {
    timed(
        7,
        "lcm of divisors equals n over gcd of cofactors",
        None,
        || {
            let mut checked = 0usize;
            let mut failures = Vec::new();
            for n in 1..=60usize {
                let divs: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
                let mut tuples: Vec<Vec<usize>> = Vec::new();
                for &a in &divs {
                    tuples.push(vec![a]);
                    for &b in &divs {
                        tuples.push(vec![a, b]);
                        for &c in &divs {
                            tuples.push(vec![a, b, c]);
                        }
                    }
                }
                for t in tuples {
                    checked += 1;
                    let cofactor_gcd = t.iter().fold(0usize, |acc, &d| acc.gcd(&(n / d)));
                    let by_quotient = n / cofactor_gcd;
                    let direct = lcm_by_gcd(&t);
                    if by_quotient != direct || lcm_of_divisors(n, &t) != direct {
                        failures.push(format!("n={n} {t:?}"));
                    }
                }
            }
            (
                failures.is_empty(),
                format!(
                    "{checked} tuples, {} mismatches{}",
                    failures.len(),
                    listing(&failures)
                ),
            )
        },
    )
}

pub const EISENSTEIN_TRIALS: usize = 200;

/// Random polynomial satisfying Eisenstein's conditions at `p`.
pub fn random_eisenstein(rng: &mut impl Rng, p: u64, deg: usize) -> IntPoly {
    let p = p as i64;
    let unit = |rng: &mut dyn rand::RngCore| loop {
        let u = rng.gen_range(-20i64..=20);
        if u % p != 0 {
            return u;
        }
    };
    let mut c = Vec::with_capacity(deg + 1);
    c.push(p * unit(rng));
    for _ in 1..deg {
        c.push(p * rng.gen_range(-20i64..=20));
    }
    c.push(unit(rng));
    IntPoly::from_i64s(&c)
}

pub fn classical_specialization(seed: u64) -> Outcome {
    timed(8, "Eisenstein inputs pass every criterion", None, || {
        let mut rng = rng_for(seed, 8);
        let primes = [2u64, 3, 5, 7, 11, 13];
        let mut failures = Vec::new();
        for _ in 0..EISENSTEIN_TRIALS {
            let p = primes[rng.gen_range(0..primes.len())];
            let deg = rng.gen_range(2..=10);
            let f = random_eisenstein(&mut rng, p, deg);
            let pp = pr(p);
            let ok = eisenstein(&f, pp)
                && dumas_single_prime(&f, pp)
                && theorem_b_verdict(&f, &[pp]).ok() == Some(Verdict::Irreducible)
                && theorem_a_verdict(&f, &[pp]).ok().map(|r| r.0) == Some(Verdict::Irreducible);
            if !ok {
                failures.push(format!("{f} at {p}"));
            }
        }
        (
            failures.is_empty(),
            format!(
                "{EISENSTEIN_TRIALS} polynomials, {} broken chains{}",
                failures.len(),
                listing(&failures)
            ),
        )
    })
}

pub fn negative_controls() -> Outcome {
    timed(9, "reducible controls stay inconclusive", None, || {
        let cases = [
            (
                IntPoly::from_i64s(&[4, 0, 0, 0, 1]),
                vec![
                    IntPoly::from_i64s(&[2, -2, 1]),
                    IntPoly::from_i64s(&[2, 2, 1]),
                ],
            ),
            (
                IntPoly::from_i64s(&[-1, 0, 1]),
                vec![IntPoly::from_i64s(&[-1, 1]), IntPoly::from_i64s(&[1, 1])],
            ),
        ];
        let primes: Vec<Prime> = [2, 3, 5, 7].into_iter().map(pr).collect();
        let mut failures = Vec::new();
        for (f, factors) in &cases {
            let any_single = primes
                .iter()
                .any(|&p| eisenstein(f, p) || dumas_single_prime(f, p));
            let a = theorem_a_verdict(f, &primes).map(|r| r.0);
            let b = theorem_b_verdict(f, &primes);
            let auto = auto_check(f, &CheckOptions::with_primes(&primes)).verdict;
            let discovered = auto_check(f, &CheckOptions::default()).verdict;
            if any_single
                || a != Ok(Verdict::Inconclusive)
                || b != Ok(Verdict::Inconclusive)
                || auto != Verdict::Inconclusive
                || discovered != Verdict::Inconclusive
            {
                failures.push(format!("{f}: a criterion fired"));
            }
            let expected = Factorization::Factored {
                content: BigInt::from(1),
                factors: factors.iter().map(|g| (g.clone(), 1)).collect(),
            };
            let got = kronecker_factorize(f, &Limits::default());
            if got != expected {
                failures.push(format!("{f}: oracle gave {got}"));
            }
        }
        (
            failures.is_empty(),
            if failures.is_empty() {
                "x^4+4 = (x^2-2x+2)(x^2+2x+2), x^2-1 = (x-1)(x+1), no criterion fired".into()
            } else {
                failures.join("; ")
            },
        )
    })
}

fn listing(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        let shown: Vec<&str> = items.iter().take(5).map(String::as_str).collect();
        format!(": {}", shown.join("; "))
    }
}

/// Runs all nine checks in order.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    vec![
        families_certified(),
        families_oracle(),
        five_edge_polygon(),
        merge_law(seed),
        soundness(seed),
        factor_degree_law(seed),
        lcm_identity(),
        classical_specialization(seed),
        negative_controls(),
    ]
}
