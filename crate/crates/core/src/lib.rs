//! Irreducibility certificates for integer polynomials from Newton polygons
//! at several primes, with a Kronecker factorizer as an independent check.

pub mod certificate;
pub mod criteria;
pub mod error;
pub mod families;
pub mod oracle;
pub mod poly;
pub mod polygon;
pub mod selftest;
pub mod svg;
pub mod valuation;

pub use certificate::{auto_check, Certificate, CheckOptions, PrimeEvidence, Rule};
pub use criteria::{DegreeSet, Verdict};
pub use error::{Error, Result};
pub use oracle::{kronecker_factorize, Factorization, Limits};
pub use poly::{parse_poly, IntPoly};
pub use polygon::{build_polygon, NewtonPolygon};
pub use valuation::{DiscoveryMode, Prime};
