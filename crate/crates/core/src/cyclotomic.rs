//! Exact sums of roots of unity.
//!
//! `sum_k n_k e^{2 pi i k / E}` vanishes iff `sum_k n_k x^k` is divisible by
//! the cyclotomic polynomial `Phi_E`, which makes the test exact over the
//! integers.

use num_complex::Complex64;

/// Coefficients of the `n`-th cyclotomic polynomial, ascending degree.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = exact_div(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    // b is monic
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![0i64; a.len() - db];
    for top in (db..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        quot[top - db] = c;
        for (i, &bi) in b.iter().enumerate() {
            rem[top - db + i] -= c * bi;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// A multiset of `E`-th roots of unity with integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSum {
    order: u64,
    counts: Vec<i64>,
}

impl RootSum {
    pub fn new(order: u64) -> RootSum {
        assert!(order >= 1);
        RootSum {
            order,
            counts: vec![0; order as usize],
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Adds `mult * e^{2 pi i k / E}`.
    pub fn add(&mut self, k: u64, mult: i64) {
        self.counts[(k % self.order) as usize] += mult;
    }

    pub fn is_zero(&self) -> bool {
        let phi = cyclotomic_polynomial(self.order);
        let dp = phi.len() - 1;
        let mut rem: Vec<i128> = self.counts.iter().map(|&c| i128::from(c)).collect();
        for top in (dp..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            for (i, &pi) in phi.iter().enumerate() {
                rem[top - dp + i] -= c * i128::from(pi);
            }
        }
        rem.iter().all(|&c| c == 0)
    }

    pub fn to_complex(&self) -> Complex64 {
        let step = std::f64::consts::TAU / self.order as f64;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| Complex64::from_polar(c as f64, step * k as f64))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Phi_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).iter().any(|&c| c == -2));
    }

    #[test]
    fn vanishing_sums() {
        let mut s = RootSum::new(6);
        for k in 0..6 {
            s.add(k, 1);
        }
        assert!(s.is_zero());
        // 1 + w^2 + w^4 = 0 for a primitive 6th root w
        let mut s = RootSum::new(6);
        s.add(0, 1);
        s.add(2, 1);
        s.add(4, 1);
        assert!(s.is_zero());
        let mut s = RootSum::new(6);
        s.add(0, 1);
        s.add(3, 1);
        s.add(1, 1);
        assert!(!s.is_zero());
        assert!((s.to_complex().norm() - 1.0).abs() < 1e-12);
        // i + (-i) = 0 but i + i != 0
        let mut s = RootSum::new(4);
        s.add(1, 1);
        s.add(3, 1);
        assert!(s.is_zero());
        s.add(3, -1);
        s.add(1, 1);
        assert!(!s.is_zero());
    }
}
