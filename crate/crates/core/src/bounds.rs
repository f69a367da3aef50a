//! Numeric checks of the character-sum inequalities behind the variance bound.
//!
//! Reports come in two kinds. Hard checks have an explicit constant and a
//! pass/fail verdict. Observations only record `lhs / rhs`, because the
//! inequality they monitor has an unspecified implied constant.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::FactorTable;
use crate::characters::{unit_group_basis, UnitGroupBasis};
use crate::cyclotomic::RootSum;
use crate::error::{Budget, Error, Result};
use crate::field::Field;
use crate::poly::{checked_qpow, Poly};
use crate::sieve::SieveCache;
use crate::variance::{variance_direct, ArithmeticFunction};

/// Slack allowed on hard checks.
pub const HARD_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    Mvt,
    PrimeCharSum,
    VonMangoldt,
    LargeFactor,
    SmoothFactor,
    Theorem,
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundId::Mvt => "mvt",
            BoundId::PrimeCharSum => "prime_char_sum",
            BoundId::VonMangoldt => "von_mangoldt",
            BoundId::LargeFactor => "large_factor",
            BoundId::SmoothFactor => "smooth_factor",
            BoundId::Theorem => "theorem",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound: BoundId,
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    /// Second right-hand side where the inequality is stated in two forms.
    pub alt_rhs: Option<f64>,
    pub alt_ratio: Option<f64>,
    /// `Some` for hard checks, `None` for observations.
    pub pass: Option<bool>,
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 {
        0.0
    } else {
        lhs / rhs
    }
}

impl BoundReport {
    fn hard(bound: BoundId, params: String, lhs: f64, rhs: f64) -> BoundReport {
        let r = ratio(lhs, rhs);
        BoundReport {
            bound,
            params,
            lhs,
            rhs,
            ratio: r,
            alt_rhs: None,
            alt_ratio: None,
            pass: Some(r <= 1.0 + HARD_SLACK),
        }
    }

    fn observe(bound: BoundId, params: String, lhs: f64, rhs: f64) -> BoundReport {
        BoundReport {
            bound,
            params,
            lhs,
            rhs,
            ratio: ratio(lhs, rhs),
            alt_rhs: None,
            alt_ratio: None,
            pass: None,
        }
    }

    fn with_alt(mut self, alt: f64) -> BoundReport {
        self.alt_rhs = Some(alt);
        self.alt_ratio = Some(ratio(self.lhs, alt));
        self
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// Independent uniform signs.
    PlusMinusOne,
    /// Independent uniform points on the unit circle.
    UnitPhase,
}

/// Random trial settings. The generator is ChaCha8 seeded from `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: usize,
    pub coefficients: Coefficients,
}

impl TrialConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// `sum_chi |sum_r a_r chi(r)|^2` over every character, with `a` given per
/// unit log index. Summation order is fixed.
fn all_character_energy(basis: &UnitGroupBasis, a: &[Complex64]) -> f64 {
    let roots = basis.root_table();
    basis
        .characters()
        .map(|chi| {
            a.iter()
                .enumerate()
                .map(|(idx, &v)| v * roots[chi.rotation_at(idx) as usize])
                .sum::<Complex64>()
                .norm_sqr()
        })
        .sum()
}

/// Large sieve mean value inequality with random coefficients on `M_n`:
/// `sum_{chi mod Q} |sum_G a_G chi(G)|^2 <= 2 Phi(Q) (q^{n - deg Q} + 1) sum_{(G,Q)=1} |a_G|^2`.
pub fn mvt_trial(field: &Field, modulus: &Poly, n: usize, cfg: &TrialConfig, budget: Budget) -> Result<Vec<BoundReport>> {
    let basis = unit_group_basis(field, modulus, budget)?;
    let size = checked_qpow(field.q(), n)?;
    budget.check(u128::from(size))?;
    budget.check(u128::from(basis.phi()) * u128::from(basis.phi()))?;
    let ring = basis.ring();
    let logs: Vec<Option<usize>> = (0..size)
        .map(|code| basis.log_index(ring.reduce_monic_code(n, code)))
        .collect();
    let deg_q = modulus.degree().expect("modulus is nonzero");
    let phi = basis.phi() as f64;
    let lead = if n >= deg_q {
        f64::from(field.q()).powi((n - deg_q) as i32)
    } else {
        f64::from(field.q()).powf(n as f64 - deg_q as f64)
    };
    let mut rng = cfg.rng();
    let mut out = Vec::with_capacity(cfg.trials);
    for trial in 0..cfg.trials {
        let mut a = vec![Complex64::new(0.0, 0.0); basis.phi() as usize];
        let mut mass = 0.0;
        for log in &logs {
            let v = match cfg.coefficients {
                Coefficients::PlusMinusOne => Complex64::new(if rng.gen::<bool>() { 1.0 } else { -1.0 }, 0.0),
                Coefficients::UnitPhase => Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU),
            };
            if let Some(idx) = log {
                a[*idx] += v;
                mass += v.norm_sqr();
            }
        }
        let lhs = all_character_energy(&basis, &a);
        let rhs = 2.0 * phi * (lead + 1.0) * mass;
        out.push(BoundReport::hard(
            BoundId::Mvt,
            format!("q={} Q={} n={} seed={} trial={}", field.q(), modulus, n, cfg.seed, trial),
            lhs,
            rhs,
        ));
    }
    Ok(out)
}

/// The same inequality for explicit coefficients, indexed by monic code.
pub fn mvt_with_coefficients(field: &Field, modulus: &Poly, n: usize, coeffs: &[Complex64], budget: Budget) -> Result<BoundReport> {
    let basis = unit_group_basis(field, modulus, budget)?;
    let size = checked_qpow(field.q(), n)?;
    if coeffs.len() as u64 != size {
        return Err(Error::Precondition(format!("expected {size} coefficients, got {}", coeffs.len())));
    }
    let ring = basis.ring();
    let mut a = vec![Complex64::new(0.0, 0.0); basis.phi() as usize];
    let mut mass = 0.0;
    for (code, &v) in coeffs.iter().enumerate() {
        if let Some(idx) = basis.log_index(ring.reduce_monic_code(n, code as u64)) {
            a[idx] += v;
            mass += v.norm_sqr();
        }
    }
    let deg_q = modulus.degree().expect("modulus is nonzero") as f64;
    let lead = f64::from(field.q()).powf(n as f64 - deg_q);
    let rhs = 2.0 * basis.phi() as f64 * (lead + 1.0) * mass;
    Ok(BoundReport::hard(
        BoundId::Mvt,
        format!("q={} Q={} n={}", field.q(), modulus, n),
        all_character_energy(&basis, &a),
        rhs,
    ))
}

/// Largest `|sum_r H[r] chi(r)|` over non-principal `chi`, for an integer
/// histogram `H` over unit log indices. Exact per character.
fn max_nonprincipal(basis: &UnitGroupBasis, hist: &[i64]) -> Result<f64> {
    let e = basis.exponent();
    let mut best: Option<f64> = None;
    for chi in basis.characters().filter(|c| !c.is_principal()) {
        let mut s = RootSum::new(e);
        for (idx, &c) in hist.iter().enumerate() {
            if c != 0 {
                s.add(chi.rotation_at(idx), c);
            }
        }
        let v = s.to_complex().norm();
        best = Some(best.map_or(v, |b: f64| b.max(v)));
    }
    best.ok_or(Error::NoNonPrincipal)
}

fn require_cache(cache: &SieveCache, d: usize) -> Result<()> {
    if cache.max_degree() < d {
        return Err(Error::InsufficientDepth {
            have: cache.max_degree(),
            need: d,
        });
    }
    Ok(())
}

/// `max_{chi != chi_0 mod t^m} |sum_{P in P_x} chi(P)|` against `(m/x) q^{x/2}`.
pub fn prime_char_sum_ratio(cache: &SieveCache, m: usize, x: usize, budget: Budget) -> Result<BoundReport> {
    if m < 2 || x < 1 {
        return Err(Error::Precondition(format!("need m >= 2 and x >= 1, got m={m}, x={x}")));
    }
    require_cache(cache, x)?;
    let field = cache.field();
    let basis = unit_group_basis(field, &Poly::monomial(1, m), budget)?;
    let ring = basis.ring();
    let mut hist = vec![0i64; basis.phi() as usize];
    for &code in cache.codes(x) {
        if let Some(idx) = basis.log_index(ring.reduce_monic_code(x, code)) {
            hist[idx] += 1;
        }
    }
    let lhs = max_nonprincipal(&basis, &hist)?;
    let q = f64::from(field.q());
    let rhs = m as f64 / x as f64 * q.powf(x as f64 / 2.0);
    Ok(BoundReport::observe(
        BoundId::PrimeCharSum,
        format!("q={} m={m} x={x}", field.q()),
        lhs,
        rhs,
    ))
}

/// `max_{chi != chi_0 mod Q} |sum_{G in M_N} Lambda(G) chi(G)|` against `deg Q q^{N/2}`.
/// Prime powers `P^{N/d}` come from the sieve; their log is `N/d` times the
/// log of `P`.
pub fn von_mangoldt_char_sum_ratio(cache: &SieveCache, modulus: &Poly, n: usize, budget: Budget) -> Result<BoundReport> {
    if n < 1 {
        return Err(Error::Precondition("need N >= 1".into()));
    }
    require_cache(cache, n)?;
    let field = cache.field();
    let basis = unit_group_basis(field, modulus, budget)?;
    von_mangoldt_with_basis(cache, &basis, n)
}

/// As [`von_mangoldt_char_sum_ratio`], reusing a prebuilt basis.
pub fn von_mangoldt_with_basis(cache: &SieveCache, basis: &UnitGroupBasis, n: usize) -> Result<BoundReport> {
    Ok(von_mangoldt_profile(cache, basis, n..=n)?.swap_remove(0))
}

/// Reports for every `N` in `ns`, reducing each irreducible modulo `Q` once.
pub fn von_mangoldt_profile(
    cache: &SieveCache,
    basis: &UnitGroupBasis,
    ns: std::ops::RangeInclusive<usize>,
) -> Result<Vec<BoundReport>> {
    let top = *ns.end();
    if *ns.start() < 1 {
        return Err(Error::Precondition("need N >= 1".into()));
    }
    require_cache(cache, top)?;
    if basis.phi() < 2 {
        return Err(Error::NoNonPrincipal);
    }
    let field = cache.field();
    let ring = basis.ring();
    let logs: Vec<Vec<Option<usize>>> = (0..=top)
        .map(|d| {
            cache
                .codes(d)
                .iter()
                .map(|&code| basis.log_index(ring.reduce_monic_code(d, code)))
                .collect()
        })
        .collect();
    let orders = basis.orders();
    let deg_q = basis.modulus().degree().expect("modulus is nonzero");
    let mut exps = vec![0u64; basis.rank()];
    let mut out = Vec::new();
    for n in ns {
        let mut hist = vec![0i64; basis.phi() as usize];
        for d in (1..=n).filter(|d| n % d == 0) {
            let k = (n / d) as u64;
            for idx in logs[d].iter().flatten() {
                for ((slot, &x), &o) in exps.iter_mut().zip(basis.exponents(*idx)).zip(orders) {
                    *slot = (u64::from(x) * k) % o;
                }
                let power = basis.log_index(basis.element(&exps)).expect("powers of units are units");
                hist[power] += d as i64;
            }
        }
        let lhs = max_nonprincipal(basis, &hist)?;
        let rhs = deg_q as f64 * f64::from(field.q()).powf(n as f64 / 2.0);
        out.push(BoundReport::hard(
            BoundId::VonMangoldt,
            format!("q={} Q={} N={n}", field.q(), basis.modulus()),
            lhs,
            rhs,
        ));
    }
    Ok(out)
}

/// Class of a unit residue mod `t^m` in `(F_q[t]/t^m)^* / F_q^*`, or `None`
/// for non-units. Classes are indexed by the coefficients of degree `1..m`
/// after scaling the constant term to 1.
fn even_class(field: &Field, m: usize, residue: u64) -> Option<u64> {
    let q = u64::from(field.q());
    let c0 = (residue % q) as u8;
    let inv = field.inv(c0)?;
    let mut rest = residue / q;
    let mut key = 0u64;
    let mut scale = 1u64;
    for _ in 1..m {
        let c = (rest % q) as u8;
        rest /= q;
        key += u64::from(field.mul(c, inv)) * scale;
        scale *= q;
    }
    Some(key)
}

/// `sum_{chi even mod t^m} |sum_{G in M_n} w(G) chi(G)|^2`, exactly, from
/// orthogonality on `(F_q[t]/t^m)^* / F_q^*`: `Phi_ev` times the sum of the
/// squared class totals.
pub fn even_character_energy(field: &Field, m: usize, n: usize, weight: impl Fn(u64) -> i64) -> Result<u128> {
    if m < 1 {
        return Err(Error::Precondition("modulus degree must be >= 1".into()));
    }
    let q = field.q();
    let classes = checked_qpow(q, m - 1)?;
    let size = checked_qpow(q, n)?;
    let modulus = checked_qpow(q, m)?;
    let mut totals = vec![0i64; classes as usize];
    for code in 0..size {
        let w = weight(code);
        if w == 0 {
            continue;
        }
        let residue = if n >= m {
            code % modulus
        } else {
            code + u64::from(q).pow(n as u32)
        };
        if let Some(k) = even_class(field, m, residue) {
            totals[k as usize] += w;
        }
    }
    let squares: u128 = totals.iter().map(|&t| (i128::from(t) * i128::from(t)) as u128).sum();
    Ok(squares * u128::from(classes))
}

fn check_split_params(table: &FactorTable, big_n: usize, n: usize, h: usize) -> Result<()> {
    if n > big_n || big_n < 2 || h > big_n - 2 {
        return Err(Error::Precondition(format!(
            "need n <= N and h <= N-2, got N={big_n}, n={n}, h={h}"
        )));
    }
    table.require_degree(n)
}

/// Even-character energy of `lambda` restricted to `M_n` minus the
/// `h`-smooth polynomials, modulo `t^{N-h}`. Reported against
/// `(N^3/h^2) q^{N+n-h}`, with `(n-h)(N/h)^2 q^{N+n-h}` as the second column.
pub fn large_factor_sum_ratio(table: &FactorTable, big_n: usize, n: usize, h: usize) -> Result<BoundReport> {
    check_split_params(table, big_n, n, h)?;
    if h == 0 {
        return Err(Error::Precondition("need h >= 1".into()));
    }
    let field = table.field();
    let lambda = table.liouville_slice(n);
    let maxdeg = table.max_factor_degree_slice(n);
    let lhs = even_character_energy(field, big_n - h, n, |c| {
        if usize::from(maxdeg[c as usize]) > h {
            i64::from(lambda[c as usize])
        } else {
            0
        }
    })? as f64;
    let q = f64::from(field.q());
    let (nf, hf) = (big_n as f64, h as f64);
    let scale = q.powi((big_n + n) as i32 - h as i32);
    let rhs = nf.powi(3) / (hf * hf) * scale;
    let alt = n.saturating_sub(h) as f64 * (nf / hf).powi(2) * scale;
    Ok(BoundReport::observe(
        BoundId::LargeFactor,
        format!("q={} N={big_n} n={n} h={h}", field.q()),
        lhs,
        rhs,
    )
    .with_alt(alt))
}

/// Even-character energy of `lambda` on the `h`-smooth part of `M_n`, modulo
/// `t^{N-h}`, against `q^{n+N-h} + q^{2(N-h)}`.
pub fn smooth_sum_ratio(table: &FactorTable, big_n: usize, n: usize, h: usize) -> Result<BoundReport> {
    check_split_params(table, big_n, n, h)?;
    let field = table.field();
    let lambda = table.liouville_slice(n);
    let maxdeg = table.max_factor_degree_slice(n);
    let lhs = even_character_energy(field, big_n - h, n, |c| {
        if usize::from(maxdeg[c as usize]) <= h {
            i64::from(lambda[c as usize])
        } else {
            0
        }
    })? as f64;
    let q = f64::from(field.q());
    let rhs = q.powi((n + big_n - h) as i32) + q.powi(2 * (big_n - h) as i32);
    Ok(BoundReport::observe(
        BoundId::SmoothFactor,
        format!("q={} N={big_n} n={n} h={h}", field.q()),
        lhs,
        rhs,
    ))
}

/// `Var(lambda_{N,h}) h^2 / (N^5 q^h)` for every `N` in `ns` and every `h`
/// produced by `hs(N)`; `h = 0` is skipped.
pub fn theorem_ratio_sweep(
    table: &FactorTable,
    ns: impl IntoIterator<Item = usize>,
    hs: impl Fn(usize) -> Vec<usize>,
) -> Result<Vec<BoundReport>> {
    let q = table.field().q();
    let mut out = Vec::new();
    for n in ns {
        for h in hs(n).into_iter().filter(|&h| h >= 1 && h < n) {
            let var = variance_direct(table, ArithmeticFunction::Liouville, n, h)?;
            let lhs = num_traits::ToPrimitive::to_f64(&var).unwrap_or(f64::INFINITY);
            let rhs = (n as f64).powi(5) * f64::from(q).powi(h as i32) / (h * h) as f64;
            out.push(BoundReport::observe(BoundId::Theorem, format!("q={q} N={n} h={h}"), lhs, rhs));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::sieve::sieve_irreducibles;

    fn f2() -> Field {
        make_field(2, 1).unwrap()
    }

    fn cfg(seed: u64, trials: usize) -> TrialConfig {
        TrialConfig {
            seed,
            trials,
            coefficients: Coefficients::PlusMinusOne,
        }
    }

    #[test]
    fn mvt_examples() {
        let f = f2();
        let q3 = Poly::monomial(1, 3);
        let zero = vec![Complex64::new(0.0, 0.0); 32];
        let r = mvt_with_coefficients(&f, &q3, 5, &zero, Budget::DEFAULT).unwrap();
        assert_eq!((r.lhs, r.rhs, r.pass), (0.0, 0.0, Some(true)));
        let mut single = zero.clone();
        single[1] = Complex64::new(1.0, 0.0); // t^5 + 1
        let r = mvt_with_coefficients(&f, &q3, 5, &single, Budget::DEFAULT).unwrap();
        assert!((r.lhs - 4.0).abs() < 1e-12);
        assert!((r.rhs - 2.0 * 4.0 * 5.0).abs() < 1e-12);
        let reports = mvt_trial(&f, &q3, 5, &cfg(1, 100), Budget::DEFAULT).unwrap();
        assert_eq!(reports.len(), 100);
        assert!(reports.iter().all(|r| r.pass == Some(true)));
    }

    #[test]
    fn mvt_is_reproducible() {
        let f = make_field(3, 1).unwrap();
        let q = Poly::new(vec![1, 0, 1]);
        let c = TrialConfig {
            seed: 7,
            trials: 5,
            coefficients: Coefficients::UnitPhase,
        };
        let a = mvt_trial(&f, &q, 4, &c, Budget::DEFAULT).unwrap();
        let b = mvt_trial(&f, &q, 4, &c, Budget::DEFAULT).unwrap();
        assert_eq!(a, b);
        let other = mvt_trial(&f, &q, 4, &TrialConfig { seed: 8, ..c }, Budget::DEFAULT).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn prime_sum_examples() {
        let c = sieve_irreducibles(&f2(), 4, Budget::DEFAULT).unwrap();
        let r = prime_char_sum_ratio(&c, 2, 1, Budget::DEFAULT).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12);
        assert!((r.rhs - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(r.pass.is_none());
        let r = prime_char_sum_ratio(&c, 2, 2, Budget::DEFAULT).unwrap();
        assert!((r.ratio - 0.5).abs() < 1e-12);
        assert!(prime_char_sum_ratio(&c, 1, 1, Budget::DEFAULT).is_err());
    }

    #[test]
    fn von_mangoldt_examples() {
        let c = sieve_irreducibles(&f2(), 4, Budget::DEFAULT).unwrap();
        let t2 = Poly::monomial(1, 2);
        let r = von_mangoldt_char_sum_ratio(&c, &t2, 2, Budget::DEFAULT).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12);
        assert!((r.ratio - 0.25).abs() < 1e-12);
        assert_eq!(r.pass, Some(true));
        let r = von_mangoldt_char_sum_ratio(&c, &t2, 1, Budget::DEFAULT).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12);
        assert!((r.rhs - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            von_mangoldt_char_sum_ratio(&c, &Poly::t(), 2, Budget::DEFAULT),
            Err(Error::NoNonPrincipal)
        ));
    }

    fn energy_by_characters(table: &FactorTable, m: usize, n: usize, keep: impl Fn(usize) -> bool) -> f64 {
        let basis = unit_group_basis(table.field(), &Poly::monomial(1, m), Budget::DEFAULT).unwrap();
        let lambda = table.liouville_slice(n);
        let ring = basis.ring();
        basis
            .even_characters()
            .map(|chi| {
                let mut s = RootSum::new(basis.exponent());
                for (code, &l) in lambda.iter().enumerate() {
                    if keep(code) {
                        if let Some(k) = chi.rotation_index(ring.reduce_monic_code(n, code as u64)) {
                            s.add(k, i64::from(l));
                        }
                    }
                }
                s.to_complex().norm_sqr()
            })
            .sum()
    }

    #[test]
    fn parseval_matches_character_loop() {
        for p in [2, 3] {
            let f = make_field(p, 1).unwrap();
            let c = sieve_irreducibles(&f, 6, Budget::DEFAULT).unwrap();
            let t = FactorTable::build(&c, 6, Budget::DEFAULT).unwrap();
            for (big_n, n, h) in [(4, 3, 1), (6, 5, 2), (6, 6, 1), (5, 2, 3)] {
                let md = t.max_factor_degree_slice(n);
                let large = large_factor_sum_ratio(&t, big_n, n, h).unwrap();
                let expect = energy_by_characters(&t, big_n - h, n, |c| usize::from(md[c]) > h);
                assert!((large.lhs - expect).abs() < 1e-6 * expect.max(1.0), "{large:?} vs {expect}");
                let smooth = smooth_sum_ratio(&t, big_n, n, h).unwrap();
                let expect = energy_by_characters(&t, big_n - h, n, |c| usize::from(md[c]) <= h);
                assert!((smooth.lhs - expect).abs() < 1e-6 * expect.max(1.0));
            }
        }
    }

    #[test]
    fn split_examples() {
        let f = f2();
        let c = sieve_irreducibles(&f, 4, Budget::DEFAULT).unwrap();
        let t = FactorTable::build(&c, 4, Budget::DEFAULT).unwrap();
        let r = large_factor_sum_ratio(&t, 4, 3, 1).unwrap();
        assert!(r.ratio > 0.0 && r.ratio.is_finite());
        assert!(r.alt_ratio.unwrap() > 0.0);
        let r = large_factor_sum_ratio(&t, 3, 3, 1).unwrap();
        assert!(r.ratio.is_finite());
        assert_eq!(large_factor_sum_ratio(&t, 4, 1, 2).unwrap().lhs, 0.0);
        // h >= n: the smooth part is all of M_n.
        let all = even_character_energy(&f, 2, 2, |c| i64::from(t.liouville_slice(2)[c as usize])).unwrap();
        assert_eq!(smooth_sum_ratio(&t, 4, 2, 2).unwrap().lhs, all as f64);
        // n = 0: Phi_ev(t^{N-h})
        assert_eq!(smooth_sum_ratio(&t, 4, 0, 1).unwrap().lhs, 4.0);
    }

    #[test]
    fn theorem_sweep_examples() {
        let f = f2();
        let c = sieve_irreducibles(&f, 8, Budget::DEFAULT).unwrap();
        let t = FactorTable::build(&c, 8, Budget::DEFAULT).unwrap();
        let rows = theorem_ratio_sweep(&t, [3], |_| vec![0, 1]).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].ratio - 4.0 / 486.0).abs() < 1e-15);
        let rows = theorem_ratio_sweep(&t, [8], |_| vec![2]).unwrap();
        assert!(rows[0].ratio.is_finite() && rows[0].ratio > 0.0);
    }
}
