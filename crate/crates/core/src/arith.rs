//! Factorization and the classical arithmetic functions on `F_q[t]`.
//!
//! Two paths exist. [`factor`] does trial division of a single polynomial by
//! the cached irreducibles. [`FactorTable`] sieves smallest-prime-factor
//! links for every monic polynomial up to a degree bound, which is what the
//! enumeration engines read from.

use crate::error::{Budget, Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::sieve::SieveCache;

/// `pi_q(n)`, the number of monic irreducibles of degree `n`, from the
/// necklace formula `(1/n) sum_{d | n} mu(d) q^{n/d}`.
pub fn pi_q(q: u32, n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::Precondition("pi_q needs n >= 1".into()));
    }
    let mut acc: i128 = 0;
    for d in (1..=n).filter(|d| n % d == 0) {
        let mu = integer_moebius(d as u64);
        if mu == 0 {
            continue;
        }
        let term = i128::from(q)
            .checked_pow((n / d) as u32)
            .ok_or(Error::Overflow("pi_q"))?;
        acc += i128::from(mu) * term;
    }
    debug_assert!(acc % n as i128 == 0);
    Ok((acc / n as i128) as u128)
}

fn integer_moebius(mut n: u64) -> i8 {
    let mut sign = 1i8;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `(-1)^n q^{ceil(n/2)}`, the value of `sum_{G in M_n} lambda(G)`.
pub fn liouville_closed_form(q: u32, n: usize) -> i128 {
    let mag = i128::from(q).pow(n.div_ceil(2) as u32);
    if n % 2 == 0 {
        mag
    } else {
        -mag
    }
}

/// `unit * prod P_i^{e_i}` with the `P_i` monic irreducible, sorted by degree
/// and then enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn liouville(&self) -> i8 {
        if self.big_omega() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn moebius(&self) -> i8 {
        if self.factors.iter().any(|(_, e)| *e > 1) {
            0
        } else if self.omega() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `|(F_q[t]/F)^*| = prod q^{d(e-1)} (q^d - 1)`.
    pub fn euler_phi(&self, q: u32) -> Result<u128> {
        let q = u128::from(q);
        self.factors.iter().try_fold(1u128, |acc, (p, e)| {
            let d = p.degree().expect("irreducible factors are nonzero") as u32;
            let qd = q.checked_pow(d).ok_or(Error::Overflow("euler_phi"))?;
            let head = q.checked_pow(d * (e - 1)).ok_or(Error::Overflow("euler_phi"))?;
            acc.checked_mul(head)
                .and_then(|x| x.checked_mul(qd - 1))
                .ok_or(Error::Overflow("euler_phi"))
        })
    }

    pub fn von_mangoldt(&self) -> u32 {
        match self.factors.as_slice() {
            [(p, _)] => p.degree().unwrap_or(0) as u32,
            _ => 0,
        }
    }

    /// Number of distinct irreducible factors with degree in `(lo, hi]`.
    pub fn omega_in_range(&self, lo: usize, hi: usize) -> u32 {
        self.factors
            .iter()
            .filter(|(p, _)| p.degree().is_some_and(|d| lo < d && d <= hi))
            .count() as u32
    }

    pub fn is_smooth(&self, h: usize) -> bool {
        self.factors.iter().all(|(p, _)| p.degree().is_some_and(|d| d <= h))
    }

    pub fn product(&self, f: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (p, e)| acc.mul(&p.pow(*e, f), f))
    }
}

/// Trial division by the cached irreducibles in increasing degree. Whatever
/// is left once `2d` exceeds the remaining degree is irreducible.
pub fn factor(g: &Poly, cache: &SieveCache) -> Result<Factorization> {
    let f = cache.field();
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    if cache.max_degree() < n / 2 {
        return Err(Error::InsufficientDepth {
            have: cache.max_degree(),
            need: n / 2,
        });
    }
    let unit = g.leading().expect("nonzero");
    let mut rest = g.make_monic(f);
    let mut factors = Vec::new();
    let mut d = 1;
    while 2 * d <= rest.degree().unwrap_or(0) {
        for p in cache.irreducibles(d) {
            let mut e = 0;
            loop {
                let (s, r) = rest.div_rem(&p, f)?;
                if !r.is_zero() {
                    break;
                }
                rest = s;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { unit, factors })
}

pub fn liouville(g: &Poly, cache: &SieveCache) -> Result<i8> {
    Ok(factor(g, cache)?.liouville())
}

pub fn moebius(g: &Poly, cache: &SieveCache) -> Result<i8> {
    Ok(factor(g, cache)?.moebius())
}

pub fn omega(g: &Poly, cache: &SieveCache) -> Result<u32> {
    Ok(factor(g, cache)?.omega())
}

pub fn big_omega(g: &Poly, cache: &SieveCache) -> Result<u32> {
    Ok(factor(g, cache)?.big_omega())
}

pub fn euler_phi(g: &Poly, cache: &SieveCache) -> Result<u128> {
    factor(g, cache)?.euler_phi(cache.field().q())
}

pub fn von_mangoldt(g: &Poly, cache: &SieveCache) -> Result<u32> {
    Ok(factor(g, cache)?.von_mangoldt())
}

pub fn omega_in_range(g: &Poly, lo: usize, hi: usize, cache: &SieveCache) -> Result<u32> {
    if lo > hi {
        return Err(Error::Precondition(format!("empty degree range ({lo}, {hi}]")));
    }
    Ok(factor(g, cache)?.omega_in_range(lo, hi))
}

const UNSET: u32 = u32::MAX;

/// Smallest-prime-factor table over every monic polynomial of degree at most
/// `max_degree`, with the common arithmetic functions precomputed.
///
/// Polynomials are addressed by a global index: `offset(d) + code`, where
/// `code` is the monic code within `M_d`. The index of `G / spf(G)` is always
/// smaller than that of `G`.
#[derive(Clone, Debug)]
pub struct FactorTable {
    field: Field,
    max_degree: usize,
    offsets: Vec<usize>,
    spf: Vec<u32>,
    cof: Vec<u32>,
    spf_deg: Vec<u8>,
    lambda: Vec<i8>,
    mu: Vec<i8>,
    omega: Vec<u8>,
    max_factor_deg: Vec<u8>,
    mangoldt: Vec<u8>,
}

impl FactorTable {
    pub fn build(cache: &SieveCache, max_degree: usize, budget: Budget) -> Result<FactorTable> {
        if cache.max_degree() < max_degree {
            return Err(Error::InsufficientDepth {
                have: cache.max_degree(),
                need: max_degree,
            });
        }
        let field = cache.field().clone();
        let q = field.q() as usize;
        let mut offsets = Vec::with_capacity(max_degree + 2);
        let mut total: u128 = 0;
        for d in 0..=max_degree + 1 {
            offsets.push(total as usize);
            if d <= max_degree {
                total += (q as u128).pow(d as u32);
            }
        }
        budget.check(total)?;
        if total >= u128::from(UNSET) {
            return Err(Error::Overflow("factor table index"));
        }
        let total = total as usize;

        let mut spf = vec![UNSET; total];
        let mut cof = vec![UNSET; total];
        let mut buf_p = Vec::new();
        let mut buf_m = Vec::new();
        let mut buf_g = Vec::new();
        for d in 1..=max_degree {
            for &pcode in cache.codes(d) {
                let pidx = offsets[d] + pcode as usize;
                decode(pcode, d, q, &mut buf_p);
                for e in 0..=max_degree - d {
                    for mcode in 0..q.pow(e as u32) {
                        decode(mcode as u64, e, q, &mut buf_m);
                        mul_into(&buf_p, &buf_m, &field, &mut buf_g);
                        let gidx = offsets[d + e] + encode(&buf_g, q);
                        if spf[gidx] == UNSET {
                            spf[gidx] = pidx as u32;
                            cof[gidx] = (offsets[e] + mcode) as u32;
                        }
                    }
                }
            }
        }

        let mut deg_of = vec![0u8; total];
        for d in 0..=max_degree {
            deg_of[offsets[d]..offsets[d + 1]].fill(d as u8);
        }
        let mut spf_deg = vec![0u8; total];
        let mut lambda = vec![1i8; total];
        let mut mu = vec![1i8; total];
        let mut omega = vec![0u8; total];
        let mut max_factor_deg = vec![0u8; total];
        let mut mangoldt = vec![0u8; total];
        for g in 1..total {
            let p = spf[g] as usize;
            let c = cof[g] as usize;
            debug_assert!(p != UNSET as usize && c < g);
            let pd = deg_of[p];
            let repeated = c != 0 && spf[c] as usize == p;
            spf_deg[g] = pd;
            lambda[g] = -lambda[c];
            mu[g] = if repeated || mu[c] == 0 { 0 } else { -mu[c] };
            omega[g] = omega[c] + u8::from(!repeated);
            max_factor_deg[g] = max_factor_deg[c].max(pd);
            mangoldt[g] = if c == 0 || (repeated && mangoldt[c] != 0) { pd } else { 0 };
        }
        Ok(FactorTable {
            field,
            max_degree,
            offsets,
            spf,
            cof,
            spf_deg,
            lambda,
            mu,
            omega,
            max_factor_deg,
            mangoldt,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn require_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            Err(Error::InsufficientDepth {
                have: self.max_degree,
                need: n,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn index(&self, d: usize, code: u64) -> usize {
        self.offsets[d] + code as usize
    }

    /// Global index of a monic polynomial within the table.
    pub fn index_of(&self, g: &Poly) -> Option<usize> {
        let d = g.degree()?;
        (g.is_monic() && d <= self.max_degree).then(|| self.index(d, g.monic_code(self.field.q())))
    }

    fn range(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d]..self.offsets[d + 1]
    }

    /// `lambda` over `M_d`, indexed by monic code.
    pub fn liouville_slice(&self, d: usize) -> &[i8] {
        &self.lambda[self.range(d)]
    }

    pub fn moebius_slice(&self, d: usize) -> &[i8] {
        &self.mu[self.range(d)]
    }

    pub fn omega_slice(&self, d: usize) -> &[u8] {
        &self.omega[self.range(d)]
    }

    pub fn von_mangoldt_slice(&self, d: usize) -> &[u8] {
        &self.mangoldt[self.range(d)]
    }

    /// Largest degree of an irreducible factor (0 for the constant 1).
    pub fn max_factor_degree_slice(&self, d: usize) -> &[u8] {
        &self.max_factor_deg[self.range(d)]
    }

    /// Negates the stored `lambda` at one index. Exists so the verification
    /// harness can confirm that it detects a corrupted table.
    #[doc(hidden)]
    pub fn inject_liouville_fault(&mut self, idx: usize) {
        self.lambda[idx] = -self.lambda[idx];
    }

    #[inline]
    pub fn liouville_at(&self, idx: usize) -> i8 {
        self.lambda[idx]
    }

    #[inline]
    pub fn moebius_at(&self, idx: usize) -> i8 {
        self.mu[idx]
    }

    /// Irreducible factors of the indexed polynomial, as `(index, degree)`
    /// pairs with repetition, smallest first.
    pub fn prime_factors(&self, mut idx: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        std::iter::from_fn(move || {
            if idx == 0 {
                return None;
            }
            let p = self.spf[idx] as usize;
            let d = self.spf_deg[idx] as usize;
            idx = self.cof[idx] as usize;
            Some((p, d))
        })
    }

    /// Distinct irreducible factors with degree in `(lo, hi]`.
    pub fn omega_in_range_at(&self, idx: usize, lo: usize, hi: usize) -> u32 {
        let mut count = 0;
        let mut last = usize::MAX;
        for (p, d) in self.prime_factors(idx) {
            if p != last && lo < d && d <= hi {
                count += 1;
            }
            last = p;
        }
        count
    }

    pub fn poly_at(&self, idx: usize) -> Poly {
        let d = self.offsets.partition_point(|&o| o <= idx) - 1;
        Poly::from_monic_code(d, (idx - self.offsets[d]) as u64, self.field.q())
    }

    pub fn factorization_at(&self, idx: usize) -> Factorization {
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        let mut last = usize::MAX;
        for (p, _) in self.prime_factors(idx) {
            if p == last {
                factors.last_mut().expect("repeat follows a factor").1 += 1;
            } else {
                factors.push((self.poly_at(p), 1));
            }
            last = p;
        }
        Factorization { unit: 1, factors }
    }
}

fn decode(mut code: u64, n: usize, q: usize, out: &mut Vec<Elem>) {
    out.clear();
    for _ in 0..n {
        out.push((code % q as u64) as Elem);
        code /= q as u64;
    }
    out.push(1);
}

fn encode(c: &[Elem], q: usize) -> usize {
    let n = c.len() - 1;
    c[..n].iter().rev().fold(0, |acc, &x| acc * q + x as usize)
}

fn mul_into(a: &[Elem], b: &[Elem], f: &Field, out: &mut Vec<Elem>) {
    out.clear();
    out.resize(a.len() + b.len() - 1, 0);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
}

/// `sum_{G in M_n} lambda(G)` by enumeration.
pub fn liouville_full_sum(table: &FactorTable, n: usize) -> Result<i64> {
    table.require_degree(n)?;
    Ok(table.liouville_slice(n).iter().map(|&v| i64::from(v)).sum())
}
