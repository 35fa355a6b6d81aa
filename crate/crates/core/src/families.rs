//! Two-prime families of degree six that no single-prime criterion settles
//! but the multi-prime degree arguments do.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::valuation::Prime;

pub const FAMILY_COUNT: u8 = 8;

/// Families 3 and 4 carry a free exponent `m >= 0`.
pub fn takes_exponent(family: u8) -> bool {
    matches!(family, 3 | 4)
}

/// Coefficients `a_0..a_6` of `family` at `(p, q[, m])`.
pub fn generate(family: u8, p: Prime, q: Prime, m: Option<u32>) -> Result<IntPoly> {
    if !(1..=FAMILY_COUNT).contains(&family) {
        return Err(Error::InvalidArgument(format!(
            "family must be 1..={FAMILY_COUNT}, got {family}"
        )));
    }
    if p == q {
        return Err(Error::InvalidArgument(format!(
            "family primes must differ, got p = q = {p}"
        )));
    }
    let m = match (takes_exponent(family), m) {
        (true, Some(m)) => m,
        (true, None) => {
            return Err(Error::InvalidArgument(format!(
                "family {family} needs the exponent m"
            )))
        }
        (false, Some(_)) => {
            return Err(Error::InvalidArgument(format!(
                "family {family} takes no exponent"
            )))
        }
        (false, None) => 0,
    };
    let p = BigInt::from(p.get());
    let q = BigInt::from(q.get());
    let one = BigInt::one();
    let q2 = &q * &q;
    let pq = &p * &q;
    let pq2 = &p * &q2;
    let p2q3 = &p * &p * &q2 * &q;
    let pm = Pow::pow(&p, m);
    let coeffs: Vec<BigInt> = match family {
        1 => vec![
            &q2 * &q,
            p2q3.clone(),
            p2q3.clone(),
            p2q3.clone(),
            p2q3.clone(),
            p2q3,
            &p * &p,
        ],
        2 => vec![
            p,
            pq2.clone(),
            pq2.clone(),
            pq2.clone(),
            q2,
            pq2.clone(),
            pq2,
        ],
        3 => vec![
            pm,
            q2,
            pq2.clone(),
            pq2.clone(),
            pq2.clone(),
            pq2.clone(),
            pq2,
        ],
        4 => vec![
            p,
            pq2.clone(),
            pq2.clone(),
            pq2.clone(),
            pq2,
            q2.clone(),
            pm * q2,
        ],
        5 => vec![
            one,
            q2.clone(),
            q2,
            pq2.clone(),
            pq2.clone(),
            pq2.clone(),
            pq2,
        ],
        6 => vec![p, pq2.clone(), pq2.clone(), pq2, q2.clone(), q2.clone(), q2],
        7 => vec![pq.clone(), pq.clone(), pq.clone(), q, p, pq.clone(), pq],
        8 => vec![q.clone(), q.clone(), q, p, pq.clone(), pq.clone(), pq],
        _ => unreachable!(),
    };
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn list(f: &IntPoly) -> String {
        f.to_coeff_list()
    }

    #[test]
    fn instantiations() {
        assert_eq!(
            list(&generate(1, pr(2), pr(3), None).unwrap()),
            "27,108,108,108,108,108,4"
        );
        assert_eq!(
            list(&generate(5, pr(2), pr(3), None).unwrap()),
            "1,9,9,18,18,18,18"
        );
        assert_eq!(
            list(&generate(3, pr(2), pr(3), Some(0)).unwrap()),
            "1,9,18,18,18,18,18"
        );
        assert_eq!(
            list(&generate(4, pr(2), pr(3), Some(2)).unwrap()),
            "2,18,18,18,18,9,36"
        );
        assert_eq!(
            list(&generate(7, pr(5), pr(7), None).unwrap()),
            "35,35,35,7,5,35,35"
        );
        assert_eq!(
            list(&generate(8, pr(3), pr(2), None).unwrap()),
            "2,2,2,3,6,6,6"
        );
    }

    #[test]
    fn every_family_has_degree_six() {
        for fam in 1..=FAMILY_COUNT {
            let m = takes_exponent(fam).then_some(3);
            let f = generate(fam, pr(5), pr(7), m).unwrap();
            assert_eq!(f.degree(), Some(6), "family {fam}");
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(generate(0, pr(2), pr(3), None).is_err());
        assert!(generate(9, pr(2), pr(3), None).is_err());
        assert!(generate(1, pr(3), pr(3), None).is_err());
        assert!(generate(3, pr(2), pr(3), None).is_err());
        assert!(generate(2, pr(2), pr(3), Some(1)).is_err());
    }
}
