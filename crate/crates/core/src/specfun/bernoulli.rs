//! Even-index Bernoulli numbers B₂ … B₃₂.
//!
//! Every numerator is below 2⁵³, so each pair is exact in binary64; only the
//! final division rounds. The table is checked against the defining
//! recurrence `Σ_{j=0}^{m} C(m+1, j) B_j = 0` in exact rational arithmetic by
//! the unit tests.

/// `(numerator, denominator)` of `B_{2j}` for `j = 1..=16`.
pub const BERNOULLI_EVEN: [(f64, f64); 16] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
    (-7709321041217.0, 510.0),
];

/// `B_{2j}` as a float, `1 ≤ j ≤ 16`.
#[inline]
pub fn b2j(j: usize) -> f64 {
    let (n, d) = BERNOULLI_EVEN[j - 1];
    n / d
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn binom(n: usize, k: usize) -> BigInt {
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        acc
    }

    #[test]
    fn table_matches_recurrence() {
        // B_0 .. B_32 from Σ_{j=0}^{m} C(m+1, j) B_j = 0.
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..=32usize {
            let mut acc = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom(m + 1, j)) * bj;
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        for j in 1..=16 {
            let (n, d) = BERNOULLI_EVEN[j - 1];
            let table = BigRational::new(BigInt::from(n as i64), BigInt::from(d as i64));
            assert_eq!(table, b[2 * j], "B_{}", 2 * j);
        }
        // Odd Bernoulli numbers beyond B_1 vanish.
        for m in (3..=31).step_by(2) {
            assert!(b[m].is_zero());
        }
    }
}
