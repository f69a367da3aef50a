//! Variance of arithmetic functions over short intervals `I_h(G_0)`, `G_0 in M_N`.
//!
//! [`variance_direct`] accumulates interval sums in one pass over `M_N`.
//! [`variance_charside`] evaluates the even-character expansion modulo
//! `t^{N-h}`. The two share nothing beyond the factor table.
//!
//! The module also carries the exact identity checks used to split off
//! polynomials with a large irreducible factor.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{factor, FactorTable, Factorization};
use crate::characters::{unit_group_basis, DirichletChar, UnitGroupBasis};
use crate::cyclotomic::RootSum;
use crate::error::{Budget, Error, Result};
use crate::poly::{checked_qpow, MonicIter, Poly};
use crate::sieve::SieveCache;

/// Selects the function whose variance is computed. All three are even;
/// Liouville and Moebius are also symmetric and multiplicative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithmeticFunction {
    Liouville,
    Moebius,
    Unit,
}

impl ArithmeticFunction {
    pub fn name(self) -> &'static str {
        match self {
            ArithmeticFunction::Liouville => "liouville",
            ArithmeticFunction::Moebius => "moebius",
            ArithmeticFunction::Unit => "unit",
        }
    }

    /// Values on `M_d`, indexed by monic code.
    pub fn values(self, table: &FactorTable, d: usize) -> Cow<'_, [i8]> {
        match self {
            ArithmeticFunction::Liouville => Cow::Borrowed(table.liouville_slice(d)),
            ArithmeticFunction::Moebius => Cow::Borrowed(table.moebius_slice(d)),
            ArithmeticFunction::Unit => Cow::Owned(vec![1; table.liouville_slice(d).len()]),
        }
    }

    /// `f(t^n)`.
    pub fn at_t_power(self, n: usize) -> i64 {
        match self {
            ArithmeticFunction::Liouville => {
                if n % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            ArithmeticFunction::Moebius => match n {
                0 => 1,
                1 => -1,
                _ => 0,
            },
            ArithmeticFunction::Unit => 1,
        }
    }
}

impl fmt::Display for ArithmeticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ArithmeticFunction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "liouville" | "lambda" => Ok(ArithmeticFunction::Liouville),
            "moebius" | "mobius" | "mu" => Ok(ArithmeticFunction::Moebius),
            "unit" | "one" => Ok(ArithmeticFunction::Unit),
            _ => Err(format!("unknown function {s:?} (liouville | moebius | unit)")),
        }
    }
}

/// Interval sums for a block of `M_N`. Blocks covering disjoint code ranges
/// merge by addition, so any split of the enumeration gives the same total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalAccumulator {
    q: u32,
    n: usize,
    h: usize,
    width: u64,
    sums: Vec<i64>,
}

impl IntervalAccumulator {
    pub fn new(q: u32, n: usize, h: usize) -> Result<IntervalAccumulator> {
        if h >= n {
            return Err(Error::Precondition(format!("need h < N, got h={h}, N={n}")));
        }
        let classes = checked_qpow(q, n - h - 1)?;
        Ok(IntervalAccumulator {
            q,
            n,
            h,
            width: checked_qpow(q, h + 1)?,
            sums: vec![0; classes as usize],
        })
    }

    /// Adds `f(G)` for every `G` in the block; `values` is indexed by monic code.
    pub fn absorb(&mut self, block: &MonicIter, values: &[i8]) {
        for code in block.codes() {
            self.sums[(code / self.width) as usize] += i64::from(values[code as usize]);
        }
    }

    pub fn merge(mut self, other: &IntervalAccumulator) -> IntervalAccumulator {
        assert_eq!((self.q, self.n, self.h), (other.q, other.n, other.h));
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            *a += b;
        }
        self
    }

    pub fn interval_sums(&self) -> &[i64] {
        &self.sums
    }

    /// `(1/q^N) sum_{G_0} |S(G_0)|^2 = (q^{h+1}/q^N) sum_I S_I^2`.
    pub fn variance(&self) -> BigRational {
        let sq: i128 = self.sums.iter().map(|&s| i128::from(s) * i128::from(s)).sum();
        let numer = BigInt::from(sq) * BigInt::from(self.width);
        BigRational::new(numer, BigInt::from(self.q).pow(self.n as u32))
    }
}

/// Exact `Var(f_{N,h})` by a single pass over `M_N`, split into prefix blocks
/// that are processed in parallel and merged.
pub fn variance_direct(table: &FactorTable, f: ArithmeticFunction, n: usize, h: usize) -> Result<BigRational> {
    table.require_degree(n)?;
    let field = table.field();
    let empty = IntervalAccumulator::new(field.q(), n, h)?;
    let values = f.values(table, n);
    // Prefixes never reach below t^{h+1}, so each block touches its own keys.
    let blocks = MonicIter::prefix_blocks(field, n, (n - h - 1).min(3));
    let parts: Vec<IntervalAccumulator> = blocks
        .par_iter()
        .map(|b| {
            let mut acc = empty.clone();
            acc.absorb(b, &values);
            acc
        })
        .collect();
    let total = parts.iter().fold(empty.clone(), |acc, p| acc.merge(p));
    Ok(total.variance())
}

fn modulus_t_power(m: usize) -> Poly {
    Poly::monomial(1, m)
}

/// Basis for characters modulo `t^m`.
pub fn t_power_basis(table: &FactorTable, m: usize, budget: Budget) -> Result<UnitGroupBasis> {
    unit_group_basis(table.field(), &modulus_t_power(m), budget)
}

fn weighted_sum(
    table: &FactorTable,
    f: ArithmeticFunction,
    chi: &DirichletChar<'_>,
    n_max: usize,
    weight: impl Fn(usize) -> i64,
) -> Result<Complex64> {
    table.require_degree(n_max)?;
    let basis = chi.basis();
    let ring = basis.ring();
    let mut acc = RootSum::new(basis.exponent());
    for n in 0..=n_max {
        let w = weight(n);
        if w == 0 {
            continue;
        }
        let values = f.values(table, n);
        for (code, &v) in values.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if let Some(k) = chi.rotation_index(ring.reduce_monic_code(n, code as u64)) {
                acc.add(k, w * i64::from(v));
            }
        }
    }
    Ok(acc.to_complex())
}

/// `sum_{n=0}^{N} f(t^n) sum_{G in M_n} f(G) chi(G)`, with the weights
/// `f(t^n)` exactly as they appear in the variance expansion.
pub fn weighted_char_sum(
    table: &FactorTable,
    f: ArithmeticFunction,
    chi: &DirichletChar<'_>,
    n: usize,
) -> Result<Complex64> {
    weighted_sum(table, f, chi, n, |k| f.at_t_power(k))
}

/// `sum_{n=0}^{N} f(t^{N-n}) sum_{G in M_n} f(G) chi(G)`: the twisted sum that
/// the interval sums actually expand into. A polynomial `G in M_N` with
/// `t`-valuation `v` reverses to degree `N - v` and keeps the factor `f(t^v)`.
/// For Liouville this differs from [`weighted_char_sum`] by the sign `(-1)^N`.
pub fn interval_char_sum(
    table: &FactorTable,
    f: ArithmeticFunction,
    chi: &DirichletChar<'_>,
    n: usize,
) -> Result<Complex64> {
    weighted_sum(table, f, chi, n, |k| f.at_t_power(n - k))
}

/// `Var(f_{N,h})` from `(1/Phi_ev(t^{N-h})^2) sum_{chi even} |interval_char_sum|^2`.
pub fn variance_charside(table: &FactorTable, f: ArithmeticFunction, n: usize, h: usize) -> Result<f64> {
    variance_charside_with_budget(table, f, n, h, Budget::DEFAULT)
}

pub fn variance_charside_with_budget(
    table: &FactorTable,
    f: ArithmeticFunction,
    n: usize,
    h: usize,
    budget: Budget,
) -> Result<f64> {
    if n < 2 || h > n - 2 {
        return Err(Error::Precondition(format!(
            "character formula needs 0 <= h <= N-2, got h={h}, N={n}"
        )));
    }
    table.require_degree(n)?;
    let m = n - h;
    let basis = t_power_basis(table, m, budget)?;
    let ring = basis.ring();

    // Integer histogram over units of the weighted polynomial counts.
    let mut hist = vec![0i64; basis.phi() as usize];
    for d in 0..=n {
        let w = f.at_t_power(n - d);
        if w == 0 {
            continue;
        }
        for (code, &v) in f.values(table, d).iter().enumerate() {
            if v == 0 {
                continue;
            }
            if let Some(idx) = basis.log_index(ring.reduce_monic_code(d, code as u64)) {
                hist[idx] += w * i64::from(v);
            }
        }
    }

    let even: Vec<DirichletChar<'_>> = basis.even_characters().collect();
    let roots = basis.root_table();
    let e = basis.exponent() as usize;
    let squares: Vec<f64> = even
        .par_iter()
        .map(|chi| {
            let mut counts = vec![0i64; e];
            for (idx, &c) in hist.iter().enumerate() {
                if c != 0 {
                    counts[chi.rotation_at(idx) as usize] += c;
                }
            }
            let s: Complex64 = counts
                .iter()
                .zip(&roots)
                .filter(|(&c, _)| c != 0)
                .map(|(&c, r)| r * c as f64)
                .sum();
            s.norm_sqr()
        })
        .collect();
    let phi_ev = even.len() as f64;
    Ok(squares.iter().sum::<f64>() / (phi_ev * phi_ev))
}

/// Which engines [`variance_report`] runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Direct,
    Character,
    Both,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "direct" => Ok(Mode::Direct),
            "character" | "char" => Ok(Mode::Character),
            "both" => Ok(Mode::Both),
            _ => Err(format!("unknown mode {s:?} (direct | character | both)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarianceReport {
    pub q: u32,
    pub n: usize,
    pub h: usize,
    pub function: ArithmeticFunction,
    pub direct: Option<BigRational>,
    pub charside: Option<f64>,
    pub abs_gap: Option<f64>,
    /// `direct * h^2 / (N^5 q^h)`.
    pub theorem_ratio: Option<f64>,
}

pub fn theorem_ratio(direct: &BigRational, q: u32, n: usize, h: usize) -> f64 {
    let denom = BigInt::from(n).pow(5) * BigInt::from(q).pow(h as u32);
    let r = direct * BigRational::from_integer(BigInt::from(h * h)) / BigRational::from_integer(denom);
    r.to_f64().unwrap_or(f64::INFINITY)
}

pub fn variance_report(
    table: &FactorTable,
    f: ArithmeticFunction,
    n: usize,
    h: usize,
    mode: Mode,
    budget: Budget,
) -> Result<VarianceReport> {
    let q = table.field().q();
    let direct = match mode {
        Mode::Direct | Mode::Both => Some(variance_direct(table, f, n, h)?),
        Mode::Character => None,
    };
    let charside = match mode {
        Mode::Character | Mode::Both => Some(variance_charside_with_budget(table, f, n, h, budget)?),
        Mode::Direct => None,
    };
    let abs_gap = match (&direct, charside) {
        (Some(d), Some(c)) => Some((d.to_f64().unwrap_or(f64::INFINITY) - c).abs()),
        _ => None,
    };
    let theorem_ratio = direct.as_ref().map(|d| theorem_ratio(d, q, n, h));
    Ok(VarianceReport {
        q,
        n,
        h,
        function: f,
        direct,
        charside,
        abs_gap,
        theorem_ratio,
    })
}

/// `|direct - charside| <= tol * max(1, direct)`.
pub fn within_tolerance(direct: f64, charside: f64, tol: f64) -> bool {
    (direct - charside).abs() <= tol * direct.max(1.0)
}

fn rational(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Evaluates the factor-splitting identity for `lambda` at `G in M_n`:
/// `sum_{RM = G, R prime, deg R in (h, n]} lambda(RM) / (1_{(R,M)=1} + omega_{(h,n]}(M))`
/// and returns its difference from `lambda(G)`.
pub fn ramare_identity_check(cache: &SieveCache, g: &Poly, h: usize, n: usize) -> Result<Rational64> {
    if !g.is_monic() || g.degree() != Some(n) {
        return Err(Error::Precondition(format!("{g} is not in M_{n}")));
    }
    if h == 0 || h >= n {
        return Err(Error::Precondition(format!("need 1 <= h < n, got h={h}, n={n}")));
    }
    let fz = factor(g, cache)?;
    let in_range = |p: &Poly| p.degree().is_some_and(|d| h < d && d <= n);
    let mut total = Rational64::zero();
    let mut any = false;
    for (i, (r, _)) in fz.factors.iter().enumerate() {
        if !in_range(r) {
            continue;
        }
        any = true;
        // M = G / R
        let mut m_factors = fz.factors.clone();
        m_factors[i].1 -= 1;
        let coprime = m_factors[i].1 == 0;
        m_factors.retain(|(_, e)| *e > 0);
        let m = Factorization {
            unit: 1,
            factors: m_factors,
        };
        let lambda_rm = -i64::from(m.liouville());
        let denom = i64::from(coprime) + i64::from(m.omega_in_range(h, n));
        total += rational(lambda_rm, denom);
    }
    if !any {
        return Err(Error::NotApplicable { lo: h, hi: n });
    }
    Ok(total - Rational64::from_integer(i64::from(fz.liouville())))
}

/// `a_M = -lambda(M) / (omega_{(h,n]}(M) + 1)`
fn coeff_a(table: &FactorTable, idx: usize, h: usize, n: usize) -> Rational64 {
    let w = i64::from(table.omega_in_range_at(idx, h, n));
    rational(-i64::from(table.liouville_at(idx)), w + 1)
}

/// `b_M = -lambda(M) / (omega(M) (omega(M) + 1))`; only used where `omega(M) >= 1`.
fn coeff_b(table: &FactorTable, idx: usize, h: usize, n: usize) -> Rational64 {
    let w = i64::from(table.omega_in_range_at(idx, h, n));
    debug_assert!(w >= 1);
    rational(-i64::from(table.liouville_at(idx)), w * (w + 1))
}

fn require_cache(cache: &SieveCache, n: usize) -> Result<()> {
    if cache.max_degree() < n {
        return Err(Error::InsufficientDepth {
            have: cache.max_degree(),
            need: n,
        });
    }
    Ok(())
}

fn product_index(table: &FactorTable, factors: &[&Poly]) -> usize {
    let f = table.field();
    let g = factors.iter().fold(Poly::one(), |acc, p| acc.mul(p, f));
    table.index_of(&g).expect("product lies within the table")
}

/// Scatters the weights
/// `sum_{h<x<=n} [ sum_{P in P_x, M in M_{n-x}} a_M at PM + sum_{P in P_x, M in M_{n-2x}} b_{MP} at P^2 M ]`
/// over `M_n` and returns them, indexed by monic code.
pub fn decomposition_weights(table: &FactorTable, cache: &SieveCache, n: usize, h: usize) -> Result<Vec<Rational64>> {
    table.require_degree(n)?;
    require_cache(cache, n)?;
    let f = table.field();
    let q = f.q();
    let size = checked_qpow(q, n)? as usize;
    let mut weights = vec![Rational64::zero(); size];
    let base = table.index(n, 0);
    for x in h + 1..=n {
        for p in cache.irreducibles(x) {
            for mcode in 0..checked_qpow(q, n - x)? {
                let m = Poly::from_monic_code(n - x, mcode, q);
                let a = coeff_a(table, table.index(n - x, mcode), h, n);
                weights[product_index(table, &[&p, &m]) - base] += a;
            }
            if 2 * x <= n {
                for mcode in 0..checked_qpow(q, n - 2 * x)? {
                    let m = Poly::from_monic_code(n - 2 * x, mcode, q);
                    let b = coeff_b(table, product_index(table, &[&m, &p]), h, n);
                    weights[product_index(table, &[&p, &p, &m]) - base] += b;
                }
            }
        }
    }
    Ok(weights)
}

/// Largest `|weight(G) - lambda(G) 1{G not h-smooth}|` over `G in M_n`. The
/// modulus degree `N - h` plays no role at this level; it is kept so the
/// signature matches [`decomposition_twisted_gap`].
pub fn decomposition_check(table: &FactorTable, cache: &SieveCache, n: usize, big_n: usize, h: usize) -> Result<Rational64> {
    if n <= h {
        return Ok(Rational64::zero());
    }
    if h == 0 || n > big_n {
        return Err(Error::Precondition(format!("need 1 <= h < n <= N, got h={h}, n={n}, N={big_n}")));
    }
    let weights = decomposition_weights(table, cache, n, h)?;
    let lambda = table.liouville_slice(n);
    let maxdeg = table.max_factor_degree_slice(n);
    let mut worst = Rational64::zero();
    for (code, w) in weights.iter().enumerate() {
        let target = if usize::from(maxdeg[code]) > h {
            i64::from(lambda[code])
        } else {
            0
        };
        let defect = (w - Rational64::from_integer(target)).abs();
        if defect > worst {
            worst = defect;
        }
    }
    Ok(worst)
}

/// Same decomposition after twisting by every even character mod `t^{N-h}`:
/// the largest gap between `sum_{G not smooth} lambda(G) chi(G)` and the
/// prime-extracted form. Floating point.
pub fn decomposition_twisted_gap(table: &FactorTable, cache: &SieveCache, n: usize, big_n: usize, h: usize) -> Result<f64> {
    if h == 0 || h >= n || n > big_n || h + 2 > big_n {
        return Err(Error::Precondition(format!("need 1 <= h < n <= N, h <= N-2; got h={h}, n={n}, N={big_n}")));
    }
    table.require_degree(n)?;
    require_cache(cache, n)?;
    let basis = t_power_basis(table, big_n - h, Budget::DEFAULT)?;
    let q = table.field().q();
    let lambda = table.liouville_slice(n);
    let maxdeg = table.max_factor_degree_slice(n);
    let to_f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
    let mut worst: f64 = 0.0;
    for chi in basis.even_characters() {
        let mut lhs = Complex64::zero();
        for (code, g) in crate::poly::enumerate_monic(table.field(), n).enumerate() {
            if usize::from(maxdeg[code]) > h {
                lhs += chi.value(&g) * f64::from(lambda[code]);
            }
        }
        let mut rhs = Complex64::zero();
        for x in h + 1..=n {
            let mut a_sum = Complex64::zero();
            for mcode in 0..checked_qpow(q, n - x)? {
                let m = Poly::from_monic_code(n - x, mcode, q);
                a_sum += chi.value(&m) * to_f(coeff_a(table, table.index(n - x, mcode), h, n));
            }
            for p in cache.irreducibles(x) {
                let chi_p = chi.value(&p);
                rhs += chi_p * a_sum;
                if 2 * x <= n {
                    let mut b_sum = Complex64::zero();
                    for mcode in 0..checked_qpow(q, n - 2 * x)? {
                        let m = Poly::from_monic_code(n - 2 * x, mcode, q);
                        let b = coeff_b(table, product_index(table, &[&m, &p]), h, n);
                        b_sum += chi.value(&m) * to_f(b);
                    }
                    rhs += chi_p * chi_p * b_sum;
                }
            }
        }
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::sieve::sieve_irreducibles;
    use num_traits::One;

    fn setup(p: u32, n: usize) -> (SieveCache, FactorTable) {
        let f = make_field(p, 1).unwrap();
        let c = sieve_irreducibles(&f, n, Budget::DEFAULT).unwrap();
        let t = FactorTable::build(&c, n, Budget::DEFAULT).unwrap();
        (c, t)
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    /// Brute force over every centre, counting each interval from scratch.
    fn variance_by_centres(t: &FactorTable, f: ArithmeticFunction, n: usize, h: usize) -> BigRational {
        let field = t.field();
        let vals = f.values(t, n);
        let all: Vec<Poly> = crate::poly::enumerate_monic(field, n).collect();
        let mut total = BigInt::zero();
        for g0 in &all {
            let s: i64 = all
                .iter()
                .enumerate()
                .filter(|(_, g)| g.sub(g0, field).degree().map_or(true, |d| d <= h))
                .map(|(c, _)| i64::from(vals[c]))
                .sum();
            total += BigInt::from(s * s);
        }
        BigRational::new(total, BigInt::from(field.q()).pow(n as u32))
    }

    #[test]
    fn direct_examples() {
        let (_, t) = setup(2, 3);
        assert_eq!(variance_direct(&t, ArithmeticFunction::Liouville, 3, 1).unwrap(), int(4));
        assert_eq!(variance_direct(&t, ArithmeticFunction::Liouville, 2, 0).unwrap(), int(2));
        assert_eq!(variance_direct(&t, ArithmeticFunction::Unit, 3, 1).unwrap(), int(16));
        assert!(variance_direct(&t, ArithmeticFunction::Liouville, 3, 3).is_err());
    }

    #[test]
    fn direct_matches_centre_enumeration() {
        for (p, n) in [(2, 6), (3, 4)] {
            let (_, t) = setup(p, n);
            for h in 0..n {
                for f in [ArithmeticFunction::Liouville, ArithmeticFunction::Moebius] {
                    assert_eq!(
                        variance_direct(&t, f, n, h).unwrap(),
                        variance_by_centres(&t, f, n, h),
                        "q={p} N={n} h={h} {f}"
                    );
                }
            }
        }
    }

    #[test]
    fn unit_function_is_trivial_bound() {
        let (_, t) = setup(3, 4);
        for h in 0..4 {
            let expect = BigInt::from(3).pow(2 * (h as u32 + 1));
            assert_eq!(
                variance_direct(&t, ArithmeticFunction::Unit, 4, h).unwrap(),
                BigRational::from_integer(expect)
            );
        }
    }

    #[test]
    fn accumulator_split_invariance() {
        let (_, t) = setup(3, 5);
        let f = t.field();
        let vals = t.liouville_slice(5);
        let mut whole = IntervalAccumulator::new(3, 5, 1).unwrap();
        whole.absorb(&crate::poly::enumerate_monic(f, 5), vals);
        for len in 0..=3 {
            let merged = MonicIter::prefix_blocks(f, 5, len)
                .iter()
                .rev()
                .map(|b| {
                    let mut a = IntervalAccumulator::new(3, 5, 1).unwrap();
                    a.absorb(b, vals);
                    a
                })
                .fold(IntervalAccumulator::new(3, 5, 1).unwrap(), |acc, a| acc.merge(&a));
            assert_eq!(merged, whole);
        }
    }

    #[test]
    fn weighted_sum_examples() {
        let (_, t) = setup(2, 3);
        let b = t_power_basis(&t, 2, Budget::DEFAULT).unwrap();
        let chars: Vec<_> = b.characters().collect();
        let f = ArithmeticFunction::Liouville;
        let s0 = weighted_char_sum(&t, f, &chars[0], 3).unwrap();
        assert!((s0 - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        let s1 = weighted_char_sum(&t, f, &chars[1], 3).unwrap();
        assert!(s1.norm() < 1e-12);
        let one = weighted_char_sum(&t, f, &chars[1], 0).unwrap();
        assert!((one - Complex64::one()).norm() < 1e-12);
        // Reversed weights differ by (-1)^N for Liouville.
        let r0 = interval_char_sum(&t, f, &chars[0], 3).unwrap();
        assert!((r0 + s0).norm() < 1e-12);
    }

    #[test]
    fn charside_examples() {
        let (_, t) = setup(2, 3);
        let v = variance_charside(&t, ArithmeticFunction::Liouville, 3, 1).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let v = variance_charside(&t, ArithmeticFunction::Unit, 3, 1).unwrap();
        assert!((v - 16.0).abs() < 1e-9);
        assert!(matches!(
            variance_charside(&t, ArithmeticFunction::Liouville, 3, 2),
            Err(Error::Precondition(_))
        ));
        let (_, t3) = setup(3, 4);
        let d = variance_direct(&t3, ArithmeticFunction::Liouville, 4, 2).unwrap().to_f64().unwrap();
        let c = variance_charside(&t3, ArithmeticFunction::Liouville, 4, 2).unwrap();
        assert!(within_tolerance(d, c, 1e-6), "{d} vs {c}");
    }

    #[test]
    fn moebius_needs_reversed_weights() {
        // Direct variance of mu at q=2, N=3, h=1 is 0 (both interval sums vanish).
        let (_, t) = setup(2, 3);
        let f = ArithmeticFunction::Moebius;
        assert!(variance_direct(&t, f, 3, 1).unwrap().is_zero());
        assert!(variance_charside(&t, f, 3, 1).unwrap().abs() < 1e-12);
        // With f(t^n) weights the same expansion gives (|2|^2 + 0)/4 = 1.
        let b = t_power_basis(&t, 2, Budget::DEFAULT).unwrap();
        let literal: f64 = b
            .even_characters()
            .map(|chi| weighted_char_sum(&t, f, &chi, 3).unwrap().norm_sqr())
            .sum::<f64>()
            / 4.0;
        assert!((literal - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ramare_examples() {
        let f2 = make_field(2, 1).unwrap();
        let c = sieve_irreducibles(&f2, 5, Budget::DEFAULT).unwrap();
        let p2 = Poly::new(vec![1, 1, 1]);
        let p3 = Poly::new(vec![1, 1, 0, 1]);
        let g = Poly::t().mul(&p2, &f2);
        assert!(ramare_identity_check(&c, &g, 1, 3).unwrap().is_zero());
        assert!(ramare_identity_check(&c, &p2.mul(&p2, &f2), 1, 4).unwrap().is_zero());
        assert!(ramare_identity_check(&c, &p2.mul(&p3, &f2), 1, 5).unwrap().is_zero());
        let smooth = Poly::new(vec![0, 1, 0, 1]); // t (t+1)^2
        assert!(matches!(
            ramare_identity_check(&c, &smooth, 1, 3),
            Err(Error::NotApplicable { .. })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let (c, t) = setup(2, 4);
        assert!(decomposition_check(&t, &c, 3, 4, 1).unwrap().is_zero());
        assert!(decomposition_check(&t, &c, 2, 4, 1).unwrap().is_zero());
        assert!(decomposition_check(&t, &c, 2, 4, 3).unwrap().is_zero());
        let w = decomposition_weights(&t, &c, 2, 1).unwrap();
        // Only x = 2 contributes: weight lands on t^2+t+1 alone.
        assert_eq!(w[3], Rational64::from_integer(-1));
        assert!(w[..3].iter().all(|r| r.is_zero()));
    }

    #[test]
    fn decomposition_survives_twisting() {
        let (c, t) = setup(3, 5);
        for (n, big_n, h) in [(4, 5, 1), (5, 5, 2), (3, 4, 1)] {
            let gap = decomposition_twisted_gap(&t, &c, n, big_n, h).unwrap();
            assert!(gap < 1e-9, "n={n} N={big_n} h={h}: {gap}");
        }
    }

    #[test]
    fn report_fields() {
        let (_, t) = setup(2, 3);
        let r = variance_report(&t, ArithmeticFunction::Liouville, 3, 1, Mode::Both, Budget::DEFAULT).unwrap();
        assert_eq!(r.direct, Some(int(4)));
        assert!(r.abs_gap.unwrap() < 1e-9);
        assert!((r.theorem_ratio.unwrap() - 4.0 / 486.0).abs() < 1e-15);
    }
}
