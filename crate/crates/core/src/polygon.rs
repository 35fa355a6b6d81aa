//! Newton polygons of integer polynomials with respect to a prime.
//!
//! The polygon is the lower convex hull of the points `(i, ν_p(a_i))` over
//! the nonzero coefficients. Construction runs in two phases: a monotone
//! scan with a back-tracking stack finds the vertices (collinear points are
//! dropped, so every edge is maximal), then each edge is cut at its interior
//! lattice points into segments. All geometry is exact integer arithmetic.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::valuation::{nu_p, Prime, Valuation};

/// A plotted point `(i, ν)` with finite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub i: usize,
    pub v: u64,
}

impl LatticePoint {
    pub fn new(i: usize, v: u64) -> Self {
        LatticePoint { i, v }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.v)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.i)?;
        seq.serialize_element(&self.v)?;
        seq.end()
    }
}

/// A lattice-free piece of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub width: usize,
    pub height: i64,
}

impl Segment {
    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new(self.height, self.width as i64)
    }

    /// No lattice points strictly inside.
    pub fn is_primitive(&self) -> bool {
        self.width > 0 && self.height.unsigned_abs().gcd(&(self.width as u64)) == 1
    }
}

/// A maximal side of the hull between two consecutive vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub start: LatticePoint,
    pub end: LatticePoint,
    pub slope: Ratio<i64>,
    pub width: usize,
    pub height: i64,
    /// Number of segments on the edge, `gcd(|height|, width)` (with
    /// `gcd(0, w) = w`).
    pub multiplicity: usize,
    /// Width of each segment, `width / multiplicity`.
    pub segment_width: usize,
}

impl Edge {
    fn between(start: LatticePoint, end: LatticePoint) -> Edge {
        let width = end.i - start.i;
        let height = end.v as i64 - start.v as i64;
        let multiplicity = height.unsigned_abs().gcd(&(width as u64)) as usize;
        Edge {
            start,
            end,
            slope: Ratio::new(height, width as i64),
            width,
            height,
            multiplicity,
            segment_width: width / multiplicity,
        }
    }

    fn segment(&self) -> Segment {
        Segment {
            width: self.segment_width,
            height: self.height / self.multiplicity as i64,
        }
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Edge", 7)?;
        st.serialize_field("start", &self.start)?;
        st.serialize_field("end", &self.end)?;
        st.serialize_field("slope", &[*self.slope.numer(), *self.slope.denom()])?;
        st.serialize_field("width", &self.width)?;
        st.serialize_field("height", &self.height)?;
        st.serialize_field("m", &self.multiplicity)?;
        st.serialize_field("x", &self.segment_width)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    prime: Prime,
    degree: usize,
    vertices: Vec<LatticePoint>,
    edges: Vec<Edge>,
    segments: Vec<Segment>,
}

/// `ν_p(a_i)` for every coefficient index `0..=deg f`.
pub fn valuations(f: &IntPoly, p: Prime) -> Vec<Valuation> {
    f.coeffs().iter().map(|a| nu_p(a, p)).collect()
}

fn check_polygon_input(f: &IntPoly) -> Result<usize> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if f.constant_term() == &num_bigint::BigInt::ZERO {
        return Err(Error::ZeroConstantTerm);
    }
    if n == 0 {
        return Err(Error::DegreeTooSmall {
            degree: 0,
            required: 1,
        });
    }
    Ok(n)
}

/// Sign of the turn `o -> a -> b`; positive for a strict left turn.
fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (ox, oy) = (o.i as i128, o.v as i128);
    (a.i as i128 - ox) * (b.v as i128 - oy) - (a.v as i128 - oy) * (b.i as i128 - ox)
}

/// Newton polygon of `f` at `p`. Requires `f(0) != 0` and `deg f >= 1`.
pub fn build_polygon(f: &IntPoly, p: Prime) -> Result<NewtonPolygon> {
    let n = check_polygon_input(f)?;
    let points = valuations(f, p)
        .into_iter()
        .enumerate()
        .filter_map(|(i, v)| v.finite().map(|v| LatticePoint::new(i, v)));

    let mut hull: Vec<LatticePoint> = Vec::with_capacity(n + 1);
    for pt in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    Ok(NewtonPolygon::from_vertices(p, n, hull))
}

impl NewtonPolygon {
    fn from_vertices(prime: Prime, degree: usize, vertices: Vec<LatticePoint>) -> Self {
        let edges: Vec<Edge> = vertices
            .windows(2)
            .map(|w| Edge::between(w[0], w[1]))
            .collect();
        let segments = edges
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.segment(), e.multiplicity))
            .collect();
        NewtonPolygon {
            prime,
            degree,
            vertices,
            edges,
            segments,
        }
    }

    /// The one-point polygon of a nonzero constant.
    pub fn constant(prime: Prime, valuation: u64) -> Self {
        NewtonPolygon {
            prime,
            degree: 0,
            vertices: vec![LatticePoint::new(0, valuation)],
            edges: Vec::new(),
            segments: Vec::new(),
        }
    }

    /// Reassembles a polygon from its segment system, starting at
    /// `(0, start)`. Segments must be primitive and ordered by non-decreasing
    /// slope; runs of equal slope coalesce into one edge.
    pub fn from_segments(prime: Prime, start: u64, segments: &[Segment]) -> Result<Self> {
        if let Some(bad) = segments.iter().find(|s| !s.is_primitive()) {
            return Err(Error::InvalidArgument(format!(
                "segment of width {} and height {} is not lattice-free",
                bad.width, bad.height
            )));
        }
        if segments.windows(2).any(|w| w[0].slope() > w[1].slope()) {
            return Err(Error::InvalidArgument(
                "segment slopes must be non-decreasing".into(),
            ));
        }
        let mut vertices = vec![LatticePoint::new(0, start)];
        let mut cursor = (0usize, start as i64);
        for (k, s) in segments.iter().enumerate() {
            cursor = (cursor.0 + s.width, cursor.1 + s.height);
            if cursor.1 < 0 {
                return Err(Error::InvalidArgument(
                    "segment chain drops below valuation zero".into(),
                ));
            }
            let corner = segments
                .get(k + 1)
                .is_none_or(|next| next.slope() != s.slope());
            if corner {
                vertices.push(LatticePoint::new(cursor.0, cursor.1 as u64));
            }
        }
        Ok(Self::from_vertices(prime, cursor.0, vertices))
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Widths of all segments, left to right; they sum to the degree.
    pub fn segment_widths(&self) -> Vec<usize> {
        self.segments.iter().map(|s| s.width).collect()
    }

    pub fn vertex_abscissae(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.i).collect()
    }

    /// Every segment is horizontal.
    pub fn is_flat(&self) -> bool {
        self.segments.iter().all(|s| s.height == 0)
    }

    /// Vertices, edges with exact slopes, and segment widths, one item per
    /// line.
    pub fn to_text(&self) -> String {
        let mut out = format!("p = {}\n", self.prime);
        let verts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("({},{})", v.i, v.v))
            .collect();
        out.push_str(&format!("vertices: {}\n", verts.join(" ")));
        out.push_str("edges:\n");
        for e in &self.edges {
            out.push_str(&format!(
                "  ({},{})-({},{}) slope {} width {} height {} m {} x {}\n",
                e.start.i,
                e.start.v,
                e.end.i,
                e.end.v,
                e.slope,
                e.width,
                e.height,
                e.multiplicity,
                e.segment_width
            ));
        }
        let widths: Vec<String> = self
            .segment_widths()
            .iter()
            .map(ToString::to_string)
            .collect();
        out.push_str(&format!("segment widths: {}\n", widths.join(" ")));
        out
    }

    pub fn classify(&self) -> ShapeClass {
        classify_shape(self)
    }
}

impl Serialize for NewtonPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NewtonPolygon", 5)?;
        st.serialize_field("prime", &self.prime)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("edges", &self.edges)?;
        st.serialize_field("segment_widths", &self.segment_widths())?;
        st.end()
    }
}

/// Widths of all segments of the polygon of `f` at `p`.
pub fn segment_widths(poly: &NewtonPolygon) -> Vec<usize> {
    poly.segment_widths()
}

/// Checks whether `abscissae` are exactly the vertex abscissae of the polygon
/// of `f` at `p`, without building the hull: consecutive chord slopes must
/// strictly increase and no interior point may lie below its chord.
pub fn verify_vertex_conditions(abscissae: &[usize], f: &IntPoly, p: Prime) -> Result<bool> {
    let n = check_polygon_input(f)?;
    let vals = valuations(f, p);
    let mut pts = Vec::with_capacity(abscissae.len());
    for &j in abscissae {
        if j > n {
            return Err(Error::AbscissaOutOfRange {
                abscissa: j,
                degree: n,
            });
        }
        let v = vals[j].finite().ok_or(Error::ZeroCoefficientAtVertex(j))?;
        pts.push((j as i128, v as i128));
    }
    if pts.first().map(|p| p.0) != Some(0) || pts.last().map(|p| p.0) != Some(n as i128) {
        return Ok(false);
    }
    if pts.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Ok(false);
    }
    // i) strictly increasing slopes: dv1/dj1 < dv2/dj2
    let increasing = pts.windows(3).all(|w| {
        let (a, b, c) = (w[0], w[1], w[2]);
        (b.1 - a.1) * (c.0 - b.0) < (c.1 - b.1) * (b.0 - a.0)
    });
    if !increasing {
        return Ok(false);
    }
    // ii) (j2 - j1) ν(a_k) >= (j2 - k) ν(a_j1) + (k - j1) ν(a_j2)
    for w in pts.windows(2) {
        let ((j1, v1), (j2, v2)) = (w[0], w[1]);
        for k in (j1 + 1)..j2 {
            if let Some(vk) = vals[k as usize].finite() {
                if (j2 - j1) * (vk as i128) < (j2 - k) * v1 + (k - j1) * v2 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ShapeTag {
    SingleEdgeNeg,
    SingleEdgePos,
    SingleEdgeZero,
    NegThenPos,
    ZeroThenPos,
    NegThenZero,
    PosThenPos,
    NegThenNeg,
    ThreeOrMoreEdges,
}

/// Shape of a polygon with at most two edges, by slope signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ShapeClass {
    pub tag: ShapeTag,
    /// Abscissa of the middle vertex of a two-edge polygon.
    pub corner: Option<usize>,
}

pub fn classify_shape(poly: &NewtonPolygon) -> ShapeClass {
    use std::cmp::Ordering::*;
    let sign = |e: &Edge| e.height.cmp(&0);
    match poly.edges() {
        [e] => ShapeClass {
            tag: match sign(e) {
                Less => ShapeTag::SingleEdgeNeg,
                Equal => ShapeTag::SingleEdgeZero,
                Greater => ShapeTag::SingleEdgePos,
            },
            corner: None,
        },
        [a, b] => {
            let tag = match (sign(a), sign(b)) {
                (Less, Greater) => ShapeTag::NegThenPos,
                (Equal, Greater) => ShapeTag::ZeroThenPos,
                (Less, Equal) => ShapeTag::NegThenZero,
                (Greater, Greater) => ShapeTag::PosThenPos,
                (Less, Less) => ShapeTag::NegThenNeg,
                _ => unreachable!("edge slopes strictly increase"),
            };
            ShapeClass {
                tag,
                corner: Some(a.end.i),
            }
        }
        _ => ShapeClass {
            tag: ShapeTag::ThreeOrMoreEdges,
            corner: None,
        },
    }
}
