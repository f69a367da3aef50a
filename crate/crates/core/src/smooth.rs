//! Counting `h`-smooth monic polynomials.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factor, pi_q, FactorTable};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::sieve::SieveCache;

/// Whether every irreducible factor of `g` has degree at most `h`.
pub fn is_smooth(g: &Poly, h: usize, cache: &SieveCache) -> Result<bool> {
    Ok(factor(g, cache)?.is_smooth(h))
}

/// `|S_{h,N}|`: the coefficient of `x^N` in `prod_{d <= h} (1 - x^d)^{-pi_q(d)}`.
pub fn count_smooth_exact(q: u32, h: usize, n: usize) -> Result<BigUint> {
    let mut series = vec![BigUint::zero(); n + 1];
    series[0] = BigUint::one();
    for d in 1..=h.min(n) {
        let pi = BigUint::from(pi_q(q, d)?);
        // (1 - x^d)^{-pi} = sum_j C(pi + j - 1, j) x^{dj}
        let mut binom = vec![BigUint::one()];
        for j in 1..=n / d {
            let next = &binom[j - 1] * (&pi + BigUint::from(j - 1)) / BigUint::from(j);
            binom.push(next);
        }
        let mut out = vec![BigUint::zero(); n + 1];
        for (i, s) in series.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (j, b) in binom.iter().enumerate() {
                let e = i + d * j;
                if e > n {
                    break;
                }
                out[e] += s * b;
            }
        }
        series = out;
    }
    Ok(series.swap_remove(n))
}

/// `|S_{h,N}|` by scanning the factor table.
pub fn count_smooth_enumerated(table: &FactorTable, h: usize, n: usize) -> Result<u64> {
    table.require_degree(n)?;
    Ok(table
        .max_factor_degree_slice(n)
        .iter()
        .filter(|&&d| usize::from(d) <= h)
        .count() as u64)
}

/// `(|S_{h,N}| / (q^N exp(-(N/h) ln(N/h))), |S_{h,N}| / q^{N-h})`.
pub fn smooth_asymptotic_ratio(q: u32, h: usize, n: usize) -> Result<(f64, f64)> {
    if h == 0 || h > n {
        return Err(Error::Precondition(format!("need 1 <= h <= N, got h={h}, N={n}")));
    }
    let count = BigInt::from(count_smooth_exact(q, h, n)?);
    let qb = BigInt::from(q);
    let over = |e: usize| -> Result<f64> {
        BigRational::new(count.clone(), qb.pow(e as u32))
            .to_f64()
            .ok_or(Error::Overflow("smooth ratio"))
    };
    let u = n as f64 / h as f64;
    // exp(u ln u) is exactly 1 at h = N.
    let first = over(n)? * (u * u.ln()).exp();
    let second = over(n - h)?;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Budget;
    use crate::field::make_field;
    use crate::sieve::sieve_irreducibles;

    #[test]
    fn examples() {
        assert_eq!(count_smooth_exact(2, 1, 3).unwrap(), BigUint::from(4u32));
        assert_eq!(count_smooth_exact(2, 2, 4).unwrap(), BigUint::from(9u32));
        assert_eq!(count_smooth_exact(3, 7, 5).unwrap(), BigUint::from(243u32));
        assert_eq!(count_smooth_exact(2, 1, 0).unwrap(), BigUint::one());
    }

    #[test]
    fn big_parameters_do_not_overflow() {
        let c = count_smooth_exact(5, 20, 20).unwrap();
        assert_eq!(c, BigUint::from(5u32).pow(20));
        assert!(count_smooth_exact(5, 3, 20).unwrap() < c);
    }

    #[test]
    fn ratios() {
        let (a, _) = smooth_asymptotic_ratio(2, 4, 4).unwrap();
        assert_eq!(a, 1.0);
        let (a, _) = smooth_asymptotic_ratio(2, 2, 4).unwrap();
        assert!((a - 2.25).abs() < 1e-12);
        let (_, b) = smooth_asymptotic_ratio(2, 1, 3).unwrap();
        assert!((b - 1.0).abs() < 1e-12);
        assert!(smooth_asymptotic_ratio(2, 0, 3).is_err());
    }

    #[test]
    fn is_smooth_examples() {
        let f2 = make_field(2, 1).unwrap();
        let c = sieve_irreducibles(&f2, 4, Budget::DEFAULT).unwrap();
        assert!(is_smooth(&Poly::new(vec![0, 0, 1, 0, 1]), 1, &c).unwrap());
        assert!(!is_smooth(&Poly::new(vec![0, 1, 1, 1]), 1, &c).unwrap());
    }
}
