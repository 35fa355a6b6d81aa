//! Independent ground truth: the polygon merge law for products and an
//! exhaustive Kronecker factorizer over the integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::polygon::NewtonPolygon;
use crate::valuation::is_prime;

/// Polygon of a product from the polygons of its factors: the segment
/// systems are pooled and re-sorted by slope, starting from the sum of the
/// two left endpoints.
pub fn merge_polygons(a: &NewtonPolygon, b: &NewtonPolygon) -> Result<NewtonPolygon> {
    if a.prime() != b.prime() {
        return Err(Error::PrimeMismatch(a.prime().get(), b.prime().get()));
    }
    let mut segments: Vec<_> = a.segments().iter().chain(b.segments()).copied().collect();
    segments.sort_by_key(|x| x.slope());
    let start = a.vertices()[0].v + b.vertices()[0].v;
    NewtonPolygon::from_segments(a.prime(), start, &segments)
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Prime factorization of `m > 0` by trial division, or `None` when a
/// cofactor is too large to classify.
fn factor_magnitude(m: &BigUint) -> Option<Vec<(BigUint, u32)>> {
    let mut rest = m.clone();
    let mut out = Vec::new();
    if let Some(mut r) = rest.to_u64() {
        let mut d = 2u64;
        while d * d <= r && d <= TRIAL_DIVISION_LIMIT {
            if r % d == 0 {
                let mut e = 0;
                while r % d == 0 {
                    r /= d;
                    e += 1;
                }
                out.push((BigUint::from(d), e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if r > 1 {
            if d * d <= r && !is_prime(r) {
                return None;
            }
            out.push((BigUint::from(r), 1));
        }
        return Some(out);
    }
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        if (&rest % d).is_zero() {
            let mut e = 0;
            while (&rest % d).is_zero() {
                rest /= d;
                e += 1;
            }
            out.push((BigUint::from(d), e));
            if let Some(small) = rest.to_u64() {
                let mut tail = factor_magnitude(&BigUint::from(small))?;
                out.append(&mut tail);
                return Some(out);
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    None
}

fn positive_divisors(m: &BigUint) -> Option<Vec<BigUint>> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factor_magnitude(m)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = d.clone();
            next.push(pw.clone());
            for _ in 0..e {
                pw *= &p;
                next.push(pw.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// All divisors of `m`, both signs, ascending by absolute value
/// (`1, -1, 2, -2, ...`).
pub fn integer_divisors(m: &BigInt) -> Result<Vec<BigInt>> {
    if m.is_zero() {
        return Err(Error::InvalidArgument(
            "zero has infinitely many divisors".into(),
        ));
    }
    let divs = positive_divisors(m.magnitude())
        .ok_or_else(|| Error::InvalidArgument(format!("{m} is too large to factor")))?;
    Ok(divs
        .into_iter()
        .flat_map(|d| {
            let d = BigInt::from(d);
            [d.clone(), -d]
        })
        .collect())
}

/// The unique polynomial of degree below `points.len()` through `points`,
/// computed over the rationals. `Ok(None)` when some coefficient is not an
/// integer.
pub fn exact_interpolate(points: &[(BigInt, BigInt)]) -> Result<Option<IntPoly>> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("no interpolation points".into()));
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::DuplicateNode(xi.to_string()));
        }
    }
    let k = points.len();
    let mut acc = vec![BigRational::zero(); k];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis numerator: prod_{j != i} (x - x_j)
        let mut basis = vec![BigInt::one()];
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![BigInt::zero(); basis.len() + 1];
            for (e, c) in basis.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = BigRational::new(yi.clone(), denom);
        for (e, c) in basis.into_iter().enumerate() {
            acc[e] += &scale * BigRational::from_integer(c);
        }
    }
    if acc.iter().any(|c| !c.is_integer()) {
        return Ok(None);
    }
    Ok(Some(IntPoly::new(
        acc.into_iter().map(|c| c.to_integer()).collect(),
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
    /// Cap on candidate value assignments examined per factor degree.
    pub max_divisor_candidates: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 8,
            max_divisor_candidates: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "limit", rename_all = "snake_case")]
pub enum LimitKind {
    Degree {
        degree: usize,
        max: usize,
    },
    Candidates {
        factor_degree: usize,
        max: u64,
    },
    /// An evaluation was too large to factor by trial division.
    Unfactorable {
        value: String,
    },
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitKind::Degree { degree, max } => {
                write!(f, "degree {degree} exceeds max_degree {max}")
            }
            LimitKind::Candidates { factor_degree, max } => write!(
                f,
                "more than {max} candidates while searching for a degree-{factor_degree} factor"
            ),
            LimitKind::Unfactorable { value } => write!(f, "cannot factor evaluation {value}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    /// Irreducible over the rationals (content aside).
    Irreducible,
    /// `content * prod factor^multiplicity` equals the input exactly. Factors
    /// are primitive, irreducible, with positive leading coefficient, sorted
    /// by degree then coefficients.
    Factored {
        content: BigInt,
        factors: Vec<(IntPoly, u32)>,
    },
    LimitExceeded(LimitKind),
}

impl Factorization {
    /// Multiplies a `Factored` result back out.
    pub fn expand(&self) -> Option<IntPoly> {
        match self {
            Factorization::Factored { content, factors } => {
                let mut acc = IntPoly::constant(content.clone());
                for (g, e) in factors {
                    for _ in 0..*e {
                        acc = &acc * g;
                    }
                }
                Some(acc)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factorization::Irreducible => f.write_str("Irreducible"),
            Factorization::LimitExceeded(kind) => write!(f, "LimitExceeded: {kind}"),
            Factorization::Factored { content, factors } => {
                if factors.is_empty() || !content.is_one() {
                    if content == &-BigInt::one() && !factors.is_empty() {
                        f.write_str("-")?;
                    } else {
                        write!(f, "{content}")?;
                    }
                }
                for (g, e) in factors {
                    write!(f, "({g})")?;
                    if *e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

fn canonical_order(a: &IntPoly, b: &IntPoly) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Evaluation points `0, 1, -1, 2, -2, ...`.
fn evaluation_points() -> impl Iterator<Item = BigInt> {
    (0i64..).flat_map(|k| {
        if k == 0 {
            vec![BigInt::zero()]
        } else {
            vec![BigInt::from(k), BigInt::from(-k)]
        }
    })
}

struct Search<'a> {
    limits: &'a Limits,
}

impl Search<'_> {
    /// Splits a primitive `g` with `g(0) != 0` into irreducible factors,
    /// knowing it has no factor of degree below `min_degree`.
    fn split(
        &self,
        g: IntPoly,
        min_degree: usize,
        out: &mut Vec<IntPoly>,
    ) -> std::result::Result<(), LimitKind> {
        let n = g.degree().expect("nonzero");
        if n == 0 {
            debug_assert!(g.is_one_constant());
            return Ok(());
        }
        if n == 1 {
            out.push(g);
            return Ok(());
        }
        // Integer roots among the evaluation points come off first.
        for t in evaluation_points().take(n + 2) {
            if g.eval(&t).is_zero() {
                let linear = IntPoly::new(vec![-t, BigInt::one()]);
                let rest = g.div_exact(&linear).expect("root gives exact division");
                out.push(linear);
                return self.split(rest, 1, out);
            }
        }
        for d in min_degree.max(1)..=n / 2 {
            if let Some(h) = self.factor_of_degree(&g, d)? {
                let rest = g.div_exact(&h).expect("candidate divides");
                out.push(h);
                return self.split(rest, d, out);
            }
        }
        out.push(g);
        Ok(())
    }

    fn factor_of_degree(
        &self,
        g: &IntPoly,
        d: usize,
    ) -> std::result::Result<Option<IntPoly>, LimitKind> {
        let nodes: Vec<BigInt> = evaluation_points()
            .filter(|t| !g.eval(t).is_zero())
            .take(d + 1)
            .collect();
        let mut choices = Vec::with_capacity(d + 1);
        for (k, t) in nodes.iter().enumerate() {
            let v = g.eval(t);
            let divs = positive_divisors(v.magnitude()).ok_or(LimitKind::Unfactorable {
                value: v.to_string(),
            })?;
            let signed: Vec<BigInt> = if k == 0 {
                // h and -h are the same factor
                divs.into_iter().map(BigInt::from).collect()
            } else {
                divs.into_iter()
                    .flat_map(|x| {
                        let x = BigInt::from(x);
                        [x.clone(), -x]
                    })
                    .collect()
            };
            choices.push(signed);
        }
        let mut dfs = Dfs {
            g,
            nodes: &nodes,
            choices: &choices,
            lead: g.leading().clone(),
            table: vec![Vec::new(); d + 1],
            values: vec![BigInt::zero(); d + 1],
            visited: 0,
            max: self.limits.max_divisor_candidates,
        };
        match dfs.descend(0) {
            Err(()) => Err(LimitKind::Candidates {
                factor_degree: d,
                max: self.limits.max_divisor_candidates,
            }),
            Ok(found) => Ok(found),
        }
    }
}

/// Depth-first assignment of candidate values `h(t_k)`, maintaining Newton
/// divided differences. An integer polynomial has integer divided
/// differences at integer nodes, so any fractional entry prunes the branch.
struct Dfs<'a> {
    g: &'a IntPoly,
    nodes: &'a [BigInt],
    choices: &'a [Vec<BigInt>],
    lead: BigInt,
    /// `table[k][j]` = divided difference over nodes `k-j ..= k`.
    table: Vec<Vec<BigInt>>,
    values: Vec<BigInt>,
    visited: u64,
    max: u64,
}

impl Dfs<'_> {
    fn descend(&mut self, k: usize) -> std::result::Result<Option<IntPoly>, ()> {
        let d = self.nodes.len() - 1;
        for y in &self.choices[k] {
            self.visited += 1;
            if self.visited > self.max {
                return Err(());
            }
            let mut row = Vec::with_capacity(k + 1);
            row.push(y.clone());
            let mut integral = true;
            for j in 1..=k {
                let num = &row[j - 1] - &self.table[k - 1][j - 1];
                let den = &self.nodes[k] - &self.nodes[k - j];
                let (q, r) = num.div_rem(&den);
                if !r.is_zero() {
                    integral = false;
                    break;
                }
                row.push(q);
            }
            if !integral {
                continue;
            }
            self.values[k] = y.clone();
            if k < d {
                self.table[k] = row;
                if let Some(h) = self.descend(k + 1)? {
                    return Ok(Some(h));
                }
                continue;
            }
            let top = &row[d];
            if top.is_zero() || !(&self.lead % top).is_zero() {
                continue;
            }
            self.table[k] = row;
            let h = self.newton_to_coeffs();
            if let Some(_rest) = self.g.div_exact(&h) {
                debug_assert_eq!(
                    exact_interpolate(
                        &self
                            .nodes
                            .iter()
                            .cloned()
                            .zip(self.values.iter().cloned())
                            .collect::<Vec<_>>()
                    )
                    .ok()
                    .flatten()
                    .as_ref(),
                    Some(&h)
                );
                let h = if h.leading().is_negative() { -&h } else { h };
                return Ok(Some(h));
            }
        }
        Ok(None)
    }

    /// Expands `sum_k c_k prod_{i<k} (x - t_i)` with `c_k = table[k][k]`.
    fn newton_to_coeffs(&self) -> IntPoly {
        let d = self.nodes.len() - 1;
        let mut acc = vec![self.table[d][d].clone()];
        for k in (0..d).rev() {
            // acc = acc * (x - t_k) + c_k
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (e, c) in acc.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * &self.nodes[k];
            }
            next[0] += &self.table[k][k];
            acc = next;
        }
        IntPoly::new(acc)
    }
}

impl IntPoly {
    fn is_one_constant(&self) -> bool {
        self.degree() == Some(0) && self.constant_term().is_one()
    }
}

/// Factors `f` over the integers by Kronecker's method.
pub fn kronecker_factorize(f: &IntPoly, limits: &Limits) -> Factorization {
    let Some(n) = f.degree() else {
        return Factorization::Factored {
            content: BigInt::zero(),
            factors: Vec::new(),
        };
    };
    if n > limits.max_degree {
        return Factorization::LimitExceeded(LimitKind::Degree {
            degree: n,
            max: limits.max_degree,
        });
    }
    let (content, primitive) = f.content_and_primitive().expect("nonzero");
    let content = if f.leading().is_negative() {
        -content
    } else {
        content
    };
    let (x_power, core) = primitive.factor_out_x().expect("nonzero");

    let mut found: Vec<IntPoly> = vec![IntPoly::from_i64s(&[0, 1]); x_power];
    let search = Search { limits };
    if let Err(kind) = search.split(core, 1, &mut found) {
        return Factorization::LimitExceeded(kind);
    }
    if n >= 1 && found.len() == 1 {
        return Factorization::Irreducible;
    }
    found.sort_by(canonical_order);
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for g in found {
        match factors.last_mut() {
            Some((last, e)) if *last == g => *e += 1,
            _ => factors.push((g, 1)),
        }
    }
    Factorization::Factored { content, factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::build_polygon;
    use crate::valuation::Prime;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn pts(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(x, y)| (x.into(), y.into())).collect()
    }

    #[test]
    fn merge_example() {
        let p = Prime::new(2).unwrap();
        let a = build_polygon(&poly(&[2, 1]), p).unwrap();
        let b = build_polygon(&poly(&[2, 2, 1]), p).unwrap();
        let merged = merge_polygons(&a, &b).unwrap();
        let direct = build_polygon(&poly(&[4, 6, 4, 1]), p).unwrap();
        assert_eq!(merged, direct);
        let verts: Vec<(usize, u64)> = merged.vertices().iter().map(|v| (v.i, v.v)).collect();
        assert_eq!(verts, vec![(0, 2), (1, 1), (3, 0)]);
        assert_eq!(merge_polygons(&b, &a).unwrap(), merged);
    }

    #[test]
    fn merge_with_constant_shifts() {
        let p = Prime::new(3).unwrap();
        let a = build_polygon(&poly(&[3, 1, 9]), p).unwrap();
        let c = NewtonPolygon::constant(p, 2);
        let merged = merge_polygons(&a, &c).unwrap();
        assert_eq!(merged, build_polygon(&poly(&[27, 9, 81]), p).unwrap());
    }

    #[test]
    fn merge_rejects_prime_mismatch() {
        let a = build_polygon(&poly(&[2, 1]), Prime::new(2).unwrap()).unwrap();
        let b = build_polygon(&poly(&[2, 1]), Prime::new(3).unwrap()).unwrap();
        assert_eq!(merge_polygons(&a, &b), Err(Error::PrimeMismatch(2, 3)));
    }

    #[test]
    fn divisors() {
        assert_eq!(
            integer_divisors(&6.into()).unwrap(),
            ints(&[1, -1, 2, -2, 3, -3, 6, -6])
        );
        assert_eq!(integer_divisors(&1.into()).unwrap(), ints(&[1, -1]));
        assert_eq!(
            integer_divisors(&(-4).into()).unwrap(),
            ints(&[1, -1, 2, -2, 4, -4])
        );
        assert!(integer_divisors(&0.into()).is_err());
        let big = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        assert_eq!(integer_divisors(&big).unwrap().len(), 8);
    }

    #[test]
    fn interpolation() {
        assert_eq!(
            exact_interpolate(&pts(&[(0, 2), (1, 5), (-1, 1)])).unwrap(),
            Some(poly(&[2, 2, 1]))
        );
        assert_eq!(
            exact_interpolate(&pts(&[(0, 1), (1, 1)])).unwrap(),
            Some(poly(&[1]))
        );
        assert_eq!(
            exact_interpolate(&pts(&[(0, 0), (1, 1), (2, 3)])).unwrap(),
            None
        );
        assert_eq!(
            exact_interpolate(&pts(&[(1, 0), (1, 2)])),
            Err(Error::DuplicateNode("1".into()))
        );
        assert!(exact_interpolate(&[]).is_err());
    }

    #[test]
    fn factor_examples() {
        let lim = Limits::default();
        assert_eq!(
            kronecker_factorize(&poly(&[-1, 0, 1]), &lim),
            Factorization::Factored {
                content: 1.into(),
                factors: vec![(poly(&[-1, 1]), 1), (poly(&[1, 1]), 1)]
            }
        );
        assert_eq!(
            kronecker_factorize(&poly(&[1, 1, 1]), &lim),
            Factorization::Irreducible
        );
        let product = kronecker_factorize(&poly(&[4, 6, 4, 1]), &lim);
        assert_eq!(
            product,
            Factorization::Factored {
                content: 1.into(),
                factors: vec![(poly(&[2, 1]), 1), (poly(&[2, 2, 1]), 1)]
            }
        );
        assert_eq!(product.to_string(), "(x+2)(x^2+2x+2)");
    }

    #[test]
    fn factors_without_rational_roots() {
        let lim = Limits::default();
        let f = poly(&[4, 0, 0, 0, 1]);
        assert_eq!(
            kronecker_factorize(&f, &lim),
            Factorization::Factored {
                content: 1.into(),
                factors: vec![(poly(&[2, -2, 1]), 1), (poly(&[2, 2, 1]), 1)]
            }
        );
        // (2x + 3)(3x^2 - x + 5), a non-integer rational root
        let f = &poly(&[3, 2]) * &poly(&[5, -1, 3]);
        let got = kronecker_factorize(&f, &lim);
        assert_eq!(got.expand(), Some(f));
    }

    #[test]
    fn content_sign_and_multiplicity() {
        let lim = Limits::default();
        // -2 x^2 (x + 1)^2
        let f = poly(&[0, 0, -2, -4, -2]);
        let got = kronecker_factorize(&f, &lim);
        assert_eq!(
            got,
            Factorization::Factored {
                content: (-2).into(),
                factors: vec![(poly(&[0, 1]), 2), (poly(&[1, 1]), 2)]
            }
        );
        assert_eq!(got.expand(), Some(f));
        assert_eq!(
            kronecker_factorize(&poly(&[2, 0, 2]), &lim),
            Factorization::Irreducible
        );
        assert_eq!(
            kronecker_factorize(&poly(&[0, 5]), &lim),
            Factorization::Irreducible
        );
        assert_eq!(
            kronecker_factorize(&poly(&[-7]), &lim),
            Factorization::Factored {
                content: (-7).into(),
                factors: vec![]
            }
        );
    }

    #[test]
    fn degree_limit() {
        let mut c = vec![0i64; 21];
        c[0] = 1;
        c[20] = 1;
        assert_eq!(
            kronecker_factorize(&poly(&c), &Limits::default()),
            Factorization::LimitExceeded(LimitKind::Degree { degree: 20, max: 8 })
        );
        let tight = Limits {
            max_degree: 8,
            max_divisor_candidates: 3,
        };
        assert!(matches!(
            kronecker_factorize(&poly(&[720, 1, 1, 1, 720]), &tight),
            Factorization::LimitExceeded(LimitKind::Candidates { .. })
        ));
    }
}
