//! Verification suites run by `ffvar verify`. Each suite stops at its first
//! counterexample.

use std::fmt;

use clap::ValueEnum;

use super::Workspace;
use crate::arith::{liouville_closed_form, liouville_full_sum, pi_q, FactorTable};
use crate::bounds::{mvt_trial, von_mangoldt_profile, Coefficients, TrialConfig};
use crate::characters::unit_group_basis;
use crate::cyclotomic::RootSum;
use crate::error::{Error, Result};
use crate::poly::{checked_qpow, enumerate_monic, Poly};
use crate::smooth::{count_smooth_enumerated, count_smooth_exact, smooth_asymptotic_ratio};
use crate::variance::{
    decomposition_check, ramare_identity_check, variance_charside_with_budget, variance_direct, within_tolerance,
    ArithmeticFunction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Field,
    Symmetry,
    LiouvilleSum,
    PiQ,
    Smooth,
    Characters,
    Ramare,
    Decomposition,
    Mvt,
    VonMangoldt,
    Variance,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Field,
        Suite::Symmetry,
        Suite::LiouvilleSum,
        Suite::PiQ,
        Suite::Smooth,
        Suite::Characters,
        Suite::Ramare,
        Suite::Decomposition,
        Suite::Mvt,
        Suite::VonMangoldt,
        Suite::Variance,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuiteOutcome {
    /// Summary of what was checked.
    Pass(String),
    /// First counterexample.
    Fail(String),
}

pub struct VerifyConfig {
    pub n_max: usize,
    pub seed: u64,
    pub trials: usize,
}

fn show(g: &Poly) -> String {
    format!("{g} {}", g.coeff_list())
}

/// Flips `lambda` at `t^d + t + 1`, `d` the table depth. That polynomial
/// differs from its reversal once `d >= 3`.
pub fn inject_fault(table: &mut FactorTable) -> Result<()> {
    let d = table.max_degree();
    if d < 3 {
        return Err(Error::Precondition("fault injection needs --n-max >= 3".into()));
    }
    let q = u64::from(table.field().q());
    let idx = table.index(d, 1 + q);
    table.inject_liouville_fault(idx);
    Ok(())
}

type Check = std::result::Result<u64, String>;

pub fn run_suite(suite: Suite, fields: &[Workspace], cfg: &VerifyConfig) -> Result<SuiteOutcome> {
    let mut cases = 0u64;
    for ws in fields {
        let result = match suite {
            Suite::Field => field_axioms(ws),
            Suite::Symmetry => symmetry(ws, cfg),
            Suite::LiouvilleSum => liouville_sum(ws, cfg),
            Suite::PiQ => pi_q_counts(ws, cfg),
            Suite::Smooth => smooth_counts(ws, cfg)?,
            Suite::Characters => orthogonality(ws, cfg)?,
            Suite::Ramare => ramare(ws, cfg)?,
            Suite::Decomposition => decomposition(ws, cfg)?,
            Suite::Mvt => mvt(ws, cfg)?,
            Suite::VonMangoldt => von_mangoldt(ws, cfg)?,
            Suite::Variance => variance(ws, cfg)?,
        };
        match result {
            Ok(n) => cases += n,
            Err(example) => return Ok(SuiteOutcome::Fail(format!("q={}: {example}", ws.field.q()))),
        }
    }
    let qs: Vec<String> = fields.iter().map(|w| w.field.q().to_string()).collect();
    Ok(SuiteOutcome::Pass(format!("q={} cases={cases}", qs.join(","))))
}

fn field_axioms(ws: &Workspace) -> Check {
    ws.field.check_axioms().map(|()| 1)
}

fn symmetry(ws: &Workspace, cfg: &VerifyConfig) -> Check {
    let f = &ws.field;
    let t = &ws.table;
    let mut cases = 0;
    for d in 1..=cfg.n_max {
        for g in enumerate_monic(f, d) {
            if g.coeff(0) == 0 {
                continue;
            }
            let s = g.star().map_err(|e| e.to_string())?;
            if s.star().map_err(|e| e.to_string())? != g {
                return Err(format!("star(star(F)) != F for F={}", show(&g)));
            }
            let a = t.liouville_at(t.index_of(&g).expect("within table"));
            let b = t.liouville_at(t.index_of(&s.make_monic(f)).expect("within table"));
            if a != b {
                return Err(format!("lambda(F)={a} but lambda(F*)={b} for F={}, F*={}", show(&g), show(&s)));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn liouville_sum(ws: &Workspace, cfg: &VerifyConfig) -> Check {
    let q = ws.field.q();
    for n in 0..=cfg.n_max {
        let got = liouville_full_sum(&ws.table, n).map_err(|e| e.to_string())?;
        let want = liouville_closed_form(q, n);
        if i128::from(got) != want {
            return Err(format!("sum of lambda over M_{n} is {got}, expected {want}"));
        }
    }
    Ok(cfg.n_max as u64 + 1)
}

fn pi_q_counts(ws: &Workspace, cfg: &VerifyConfig) -> Check {
    let q = ws.field.q();
    for d in 1..=cfg.n_max {
        let want = pi_q(q, d).map_err(|e| e.to_string())?;
        let got = ws.cache.count(d) as u128;
        if got != want {
            return Err(format!("sieve has {got} irreducibles of degree {d}, pi_q gives {want}"));
        }
    }
    Ok(cfg.n_max as u64)
}

fn smooth_counts(ws: &Workspace, cfg: &VerifyConfig) -> Result<Check> {
    let q = ws.field.q();
    let mut cases = 0;
    for n in 0..=cfg.n_max {
        for h in 0..=n {
            let exact = count_smooth_exact(q, h, n)?;
            let seen = count_smooth_enumerated(&ws.table, h, n)?;
            if exact != seen.into() {
                return Ok(Err(format!("N={n} h={h}: series gives {exact}, enumeration {seen}")));
            }
            if h >= 1 {
                let (a, b) = smooth_asymptotic_ratio(q, h, n)?;
                if !a.is_finite() || !b.is_finite() || (h == n && a != 1.0) {
                    return Ok(Err(format!("N={n} h={h}: asymptotic ratios ({a}, {b})")));
                }
            }
            cases += 1;
        }
    }
    Ok(Ok(cases))
}

fn orthogonality(ws: &Workspace, cfg: &VerifyConfig) -> Result<Check> {
    let q = u64::from(ws.field.q());
    let mut cases = 0;
    for m in 1..=cfg.n_max.min(5) {
        let basis = unit_group_basis(&ws.field, &Poly::monomial(1, m), ws.budget)?;
        let phi = q.pow(m as u32 - 1) * (q - 1);
        if basis.phi() != phi || basis.count_even() != q.pow(m as u32 - 1) {
            return Ok(Err(format!(
                "t^{m}: Phi={} Phi_ev={}, expected {phi} and {}",
                basis.phi(),
                basis.count_even(),
                q.pow(m as u32 - 1)
            )));
        }
        let chars: Vec<_> = basis.characters().collect();
        for chi in chars.iter().filter(|c| !c.is_principal()) {
            let mut s = RootSum::new(basis.exponent());
            for idx in 0..basis.phi() as usize {
                s.add(chi.rotation_at(idx), 1);
            }
            if !s.is_zero() {
                return Ok(Err(format!("t^{m}: character {:?} does not sum to zero", chi.dual())));
            }
            cases += 1;
        }
        for idx in 1..basis.phi() as usize {
            let mut s = RootSum::new(basis.exponent());
            for chi in &chars {
                s.add(chi.rotation_at(idx), 1);
            }
            if !s.is_zero() {
                let u = basis.ring().decode(basis.units()[idx]);
                return Ok(Err(format!("t^{m}: characters do not sum to zero at {}", show(&u))));
            }
            cases += 1;
        }
    }
    Ok(Ok(cases))
}

fn ramare(ws: &Workspace, cfg: &VerifyConfig) -> Result<Check> {
    let mut cases = 0;
    for n in 2..=cfg.n_max {
        for g in enumerate_monic(&ws.field, n) {
            for h in 1..n {
                match ramare_identity_check(&ws.cache, &g, h, n) {
                    Ok(d) if d == 0.into() => cases += 1,
                    Ok(d) => return Ok(Err(format!("G={} h={h}: defect {d}", show(&g)))),
                    Err(Error::NotApplicable { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(Ok(cases))
}

fn decomposition(ws: &Workspace, cfg: &VerifyConfig) -> Result<Check> {
    let mut cases = 0;
    for n in 2..=cfg.n_max {
        for h in 1..n {
            let d = decomposition_check(&ws.table, &ws.cache, n, n, h)?;
            if d != 0.into() {
                return Ok(Err(format!("n={n} h={h}: max defect {d}")));
            }
            cases += 1;
        }
    }
    Ok(Ok(cases))
}

/// `t^2, t^3, t^4, t^2+t+1, t(t+1)^2`.
pub fn mvt_moduli(field: &crate::field::Field) -> Vec<Poly> {
    let t = Poly::t();
    let t1 = Poly::new(vec![1, 1]);
    vec![
        Poly::monomial(1, 2),
        Poly::monomial(1, 3),
        Poly::monomial(1, 4),
        Poly::new(vec![1, 1, 1]),
        t.mul(&t1.mul(&t1, field), field),
    ]
}

fn mvt(ws: &Workspace, cfg: &VerifyConfig) -> Result<Check> {
    let mut cases = 0;
    for (i, modulus) in mvt_moduli(&ws.field).iter().enumerate() {
        for n in (1..=cfg.n_max).step_by(3).chain([cfg.n_max]) {
            let trial = TrialConfig {
                seed: cfg.seed.wrapping_add((i * 1000 + n) as u64),
                trials: cfg.trials,
                coefficients: if n % 2 == 0 {
                    Coefficients::PlusMinusOne
                } else {
                    Coefficients::UnitPhase
                },
            };
            for r in mvt_trial(&ws.field, modulus, n, &trial, ws.budget)? {
                if r.failed() {
                    return Ok(Err(format!("{}: lhs {} > rhs {}", r.params, r.lhs, r.rhs)));
                }
                cases += 1;
            }
        }
    }
    Ok(Ok(cases))
}

fn von_mangoldt(ws: &Workspace, cfg: &VerifyConfig) -> Result<Check> {
    let q = ws.field.q();
    let mut cases = 0;
    for deg in 1..=3.min(cfg.n_max) {
        for code in 0..checked_qpow(q, deg)? {
            let modulus = Poly::from_monic_code(deg, code, q);
            let basis = unit_group_basis(&ws.field, &modulus, ws.budget)?;
            if basis.phi() < 2 {
                continue;
            }
            for r in von_mangoldt_profile(&ws.cache, &basis, 1..=cfg.n_max)? {
                if r.failed() {
                    return Ok(Err(format!("{}: lhs {} > rhs {}", r.params, r.lhs, r.rhs)));
                }
                cases += 1;
            }
        }
    }
    Ok(Ok(cases))
}

fn variance(ws: &Workspace, cfg: &VerifyConfig) -> Result<Check> {
    let mut cases = 0;
    for n in 2..=cfg.n_max {
        for h in 0..=n - 2 {
            for f in [ArithmeticFunction::Liouville, ArithmeticFunction::Moebius] {
                let d = variance_direct(&ws.table, f, n, h)?;
                let d = num_traits::ToPrimitive::to_f64(&d).unwrap_or(f64::INFINITY);
                let c = variance_charside_with_budget(&ws.table, f, n, h, ws.budget)?;
                if !within_tolerance(d, c, 1e-6) {
                    return Ok(Err(format!("{f} N={n} h={h}: direct {d}, character side {c}")));
                }
                cases += 1;
            }
        }
    }
    Ok(Ok(cases))
}
