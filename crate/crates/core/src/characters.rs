//! Dirichlet characters modulo a monic `Q` in `F_q[t]`.
//!
//! The unit group of `F_q[t]/Q` is decomposed into cyclic factors by a
//! generic greedy basis extraction, and every unit's exponent vector is
//! tabulated. A character is a dual vector against that basis; its values
//! are exact [`RotationNumber`]s.

use num_complex::Complex64;

use crate::error::{Budget, Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

/// The root of unity `e^{2 pi i num/den}`, with `0 <= num < den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RotationNumber {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl RotationNumber {
    pub const ZERO: RotationNumber = RotationNumber { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> RotationNumber {
        assert!(den > 0);
        let num = num % den;
        let g = gcd(num, den);
        RotationNumber {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Multiplication of the underlying roots of unity.
    pub fn add(self, other: RotationNumber) -> RotationNumber {
        let den = lcm(self.den, other.den);
        RotationNumber::new(self.num * (den / self.den) + other.num * (den / other.den), den)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.num as f64 / self.den as f64)
    }
}

/// Arithmetic on residues mod `Q`, each encoded as `sum c_i q^i` over its
/// coefficients of degree `< deg Q`.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    field: Field,
    modulus: Poly,
    deg: usize,
    size: u64,
    /// `Q = t^deg`, where reduction is truncation.
    pure_power: bool,
}

impl ResidueRing {
    pub fn new(field: &Field, modulus: &Poly) -> Result<ResidueRing> {
        let deg = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 || !modulus.is_monic() {
            return Err(Error::Precondition(format!("modulus {modulus} must be monic of degree >= 1")));
        }
        let size = crate::poly::checked_qpow(field.q(), deg)?;
        Ok(ResidueRing {
            field: field.clone(),
            modulus: modulus.clone(),
            deg,
            size,
            pure_power: modulus.t_valuation() == Some(deg),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn decode(&self, code: u64) -> Poly {
        Poly::from_residue_code(code, self.field.q())
    }

    pub fn reduce(&self, g: &Poly) -> u64 {
        if self.pure_power {
            let q = u64::from(self.field.q());
            g.coeffs()
                .iter()
                .take(self.deg)
                .rev()
                .fold(0u64, |acc, &c| acc * q + u64::from(c))
        } else {
            g.rem(&self.modulus, &self.field)
                .expect("modulus is nonzero")
                .residue_code(self.field.q())
        }
    }

    /// Residue of the monic polynomial of degree `n` with monic code `code`.
    pub fn reduce_monic_code(&self, n: usize, code: u64) -> u64 {
        if self.pure_power {
            if n >= self.deg {
                code % self.size
            } else {
                code + u64::from(self.field.q()).pow(n as u32)
            }
        } else {
            self.reduce(&Poly::from_monic_code(n, code, self.field.q()))
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(&self.decode(a).mul(&self.decode(b), &self.field))
    }

    pub fn is_unit(&self, a: u64) -> bool {
        let r = self.decode(a);
        !r.is_zero() && r.gcd(&self.modulus, &self.field).expect("nonzero modulus").is_one()
    }
}

const NON_UNIT: u32 = u32::MAX;

/// Decomposition of `(F_q[t]/Q)^*` as a direct product of cyclic groups,
/// with a discrete-log table for every unit.
#[derive(Clone, Debug)]
pub struct UnitGroupBasis {
    ring: ResidueRing,
    generators: Vec<u64>,
    orders: Vec<u64>,
    strides: Vec<u64>,
    exponent: u64,
    /// Per residue code: mixed-radix index of the exponent vector, or `NON_UNIT`.
    log: Vec<u32>,
    /// Exponent vectors of all units, flattened, in log-index order.
    exps: Vec<u32>,
    /// Residue code of each log index.
    elements: Vec<u64>,
}

/// Greedy basis extraction. At each step the subgroup `H` built so far is a
/// direct summand; among the units whose order in `G/H` is the largest
/// possible, the first one whose cyclic group meets `H` trivially becomes
/// the next generator.
pub fn unit_group_basis(field: &Field, modulus: &Poly, budget: Budget) -> Result<UnitGroupBasis> {
    let ring = ResidueRing::new(field, modulus)?;
    budget.check(u128::from(ring.size()))?;
    let size = ring.size() as usize;
    let units: Vec<u64> = (1..ring.size()).filter(|&a| ring.is_unit(a)).collect();
    let one = 1u64;

    let mut log = vec![NON_UNIT; size];
    log[one as usize] = 0;
    let mut elements = vec![one];
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    let mut strides = Vec::new();

    while elements.len() < units.len() {
        let mut best: Option<(u64, u64)> = None; // (quotient order, generator)
        let mut max_quot = 0;
        let mut quot_orders = Vec::with_capacity(units.len());
        for &u in &units {
            if log[u as usize] != NON_UNIT {
                continue;
            }
            let (mut x, mut k) = (u, 1u64);
            while log[x as usize] == NON_UNIT {
                x = ring.mul(x, u);
                k += 1;
            }
            max_quot = max_quot.max(k);
            quot_orders.push((u, k, x == one));
        }
        for (u, k, trivial) in quot_orders {
            if k == max_quot && trivial {
                best = Some((k, u));
                break;
            }
        }
        let (k, g) = best.expect("a complement generator of maximal quotient order exists");
        let stride = elements.len() as u64;
        let base: Vec<u64> = elements.clone();
        let mut power = one;
        for i in 1..k {
            power = ring.mul(power, g);
            for (j, &h) in base.iter().enumerate() {
                let e = ring.mul(h, power);
                debug_assert_eq!(log[e as usize], NON_UNIT);
                log[e as usize] = (j as u64 + i * stride) as u32;
                elements.push(e);
            }
        }
        generators.push(g);
        orders.push(k);
        strides.push(stride);
    }

    let rank = orders.len();
    let mut exps = vec![0u32; elements.len() * rank];
    for idx in 0..elements.len() {
        for i in 0..rank {
            exps[idx * rank + i] = ((idx as u64 / strides[i]) % orders[i]) as u32;
        }
    }
    let exponent = orders.iter().fold(1, |acc, &e| lcm(acc, e));
    Ok(UnitGroupBasis {
        ring,
        generators,
        orders,
        strides,
        exponent,
        log,
        exps,
        elements,
    })
}

impl UnitGroupBasis {
    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn modulus(&self) -> &Poly {
        self.ring.modulus()
    }

    pub fn generators(&self) -> Vec<Poly> {
        self.generators.iter().map(|&g| self.ring.decode(g)).collect()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `Phi(Q)`, the order of the unit group and the number of characters.
    pub fn phi(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Least common multiple of the generator orders: every character value
    /// is an `exponent()`-th root of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Residue codes of all units, in log-index order.
    pub fn units(&self) -> &[u64] {
        &self.elements
    }

    /// Log index of a residue code, `None` for non-units.
    #[inline]
    pub fn log_index(&self, residue: u64) -> Option<usize> {
        match self.log[residue as usize] {
            NON_UNIT => None,
            i => Some(i as usize),
        }
    }

    /// Exponent vector of a residue against the generators.
    pub fn discrete_log(&self, g: &Poly) -> Option<Vec<u64>> {
        let idx = self.log_index(self.ring.reduce(g))?;
        Some(self.exponents(idx).iter().map(|&x| u64::from(x)).collect())
    }

    #[inline]
    pub fn exponents(&self, idx: usize) -> &[u32] {
        let r = self.rank();
        &self.exps[idx * r..(idx + 1) * r]
    }

    /// Residue code of `prod g_i^{x_i}`.
    pub fn element(&self, exps: &[u64]) -> u64 {
        let idx: u64 = exps
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&x, &e), &s)| (x % e) * s)
            .sum();
        self.elements[idx as usize]
    }

    /// `e^{2 pi i k / exponent}` for `k < exponent`.
    pub fn root_table(&self) -> Vec<Complex64> {
        (0..self.exponent)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / self.exponent as f64))
            .collect()
    }

    fn character(&self, dual: Vec<u64>) -> DirichletChar<'_> {
        let weights: Vec<u64> = dual
            .iter()
            .zip(&self.orders)
            .map(|(&c, &e)| c * (self.exponent / e))
            .collect();
        let principal = dual.iter().all(|&c| c == 0);
        let mut chi = DirichletChar {
            basis: self,
            dual,
            weights,
            principal,
            even: false,
        };
        let q = self.ring.field().q();
        chi.even = (1..q as u64).all(|c| chi.rotation_index(c) == Some(0));
        chi
    }

    /// Every character, dual vectors in mixed-radix order with the first
    /// coordinate varying fastest. The principal character comes first.
    pub fn characters(&self) -> impl Iterator<Item = DirichletChar<'_>> + '_ {
        (0..self.phi()).map(move |i| {
            let dual = self
                .orders
                .iter()
                .zip(&self.strides)
                .map(|(&e, &s)| (i / s) % e)
                .collect();
            self.character(dual)
        })
    }

    pub fn even_characters(&self) -> impl Iterator<Item = DirichletChar<'_>> + '_ {
        self.characters().filter(|c| c.is_even())
    }

    /// Character with the given dual exponents.
    pub fn character_from_dual(&self, dual: &[u64]) -> Result<DirichletChar<'_>> {
        if dual.len() != self.rank() || dual.iter().zip(&self.orders).any(|(&c, &e)| c >= e) {
            return Err(Error::Precondition("dual vector does not match the basis".into()));
        }
        Ok(self.character(dual.to_vec()))
    }

    /// `Phi_ev(Q)`: characters trivial on the nonzero constants.
    pub fn count_even(&self) -> u64 {
        self.even_characters().count() as u64
    }
}

pub fn enumerate_characters(basis: &UnitGroupBasis) -> impl Iterator<Item = DirichletChar<'_>> + '_ {
    basis.characters()
}

#[derive(Clone, Debug)]
pub struct DirichletChar<'a> {
    basis: &'a UnitGroupBasis,
    dual: Vec<u64>,
    /// `dual_i * exponent / order_i`: the rotation contributed per unit of
    /// each generator exponent, over the basis exponent.
    weights: Vec<u64>,
    principal: bool,
    even: bool,
}

impl<'a> DirichletChar<'a> {
    pub fn basis(&self) -> &'a UnitGroupBasis {
        self.basis
    }

    pub fn dual(&self) -> &[u64] {
        &self.dual
    }

    pub fn is_principal(&self) -> bool {
        self.principal
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    /// Value at a unit with the given log index, as `k` in `e^{2 pi i k/E}`.
    #[inline]
    pub fn rotation_at(&self, log_idx: usize) -> u64 {
        let e = self.basis.exponent;
        self.basis
            .exponents(log_idx)
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| u64::from(x) * w)
            .sum::<u64>()
            % e
    }

    /// Value at a residue code; `None` when it is not a unit.
    #[inline]
    pub fn rotation_index(&self, residue: u64) -> Option<u64> {
        self.basis.log_index(residue).map(|i| self.rotation_at(i))
    }

    /// `chi(F)`: `None` (the value zero) iff `gcd(F, Q) != 1`.
    pub fn evaluate(&self, g: &Poly) -> Option<RotationNumber> {
        let k = self.rotation_index(self.basis.ring.reduce(g))?;
        Some(RotationNumber::new(k, self.basis.exponent))
    }

    pub fn value(&self, g: &Poly) -> Complex64 {
        self.evaluate(g).map_or(Complex64::new(0.0, 0.0), RotationNumber::to_complex)
    }
}

pub fn evaluate(chi: &DirichletChar<'_>, g: &Poly) -> Option<RotationNumber> {
    chi.evaluate(g)
}

pub fn is_even(chi: &DirichletChar<'_>) -> bool {
    chi.is_even()
}

pub fn is_principal(chi: &DirichletChar<'_>) -> bool {
    chi.is_principal()
}

pub fn count_even(basis: &UnitGroupBasis) -> u64 {
    basis.count_even()
}

/// Nonzero constants as residue codes, for modulus degree >= 1.
pub fn constant_residues(field: &Field) -> impl Iterator<Item = u64> {
    field.nonzero().map(|c: Elem| u64::from(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::enumerate_monic;

    fn basis(p: u32, k: u32, q: &[Elem]) -> UnitGroupBasis {
        let f = make_field(p, k).unwrap();
        unit_group_basis(&f, &Poly::new(q.to_vec()), Budget::DEFAULT).unwrap()
    }

    #[test]
    fn rotation_numbers() {
        let a = RotationNumber::new(1, 2);
        assert_eq!(a.add(a), RotationNumber::ZERO);
        assert_eq!(RotationNumber::new(2, 4), a);
        assert_eq!(RotationNumber::new(1, 3).add(RotationNumber::new(1, 6)), a);
        assert!((a.to_complex() - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn basis_examples() {
        let b = basis(3, 1, &[0, 1]);
        assert_eq!(b.orders(), &[2]);
        assert_eq!(b.phi(), 2);

        let b = basis(2, 1, &[0, 0, 1]);
        assert_eq!(b.orders(), &[2]);
        assert_eq!(b.generators(), vec![Poly::new(vec![1, 1])]);

        // (1+t)^2 = 1+t^2 != 1 mod t^3, so the group is cyclic of order 4.
        let b = basis(2, 1, &[0, 0, 0, 1]);
        assert_eq!(b.phi(), 4);
        assert_eq!(b.orders(), &[4]);
    }

    #[test]
    fn basis_is_a_bijection() {
        for (p, k, q) in [
            (2, 1, vec![0, 0, 0, 0, 0, 1]),
            (3, 1, vec![0, 0, 0, 1]),
            (2, 1, vec![1, 1, 1]),
            (2, 1, vec![0, 1, 0, 1]),
            (2, 2, vec![0, 0, 0, 1]),
            (5, 1, vec![1, 0, 1]),
        ] {
            let b = basis(p, k, &q);
            let ring = b.ring();
            let units: Vec<u64> = (0..ring.size()).filter(|&a| ring.is_unit(a)).collect();
            assert_eq!(b.phi(), units.len() as u64);
            assert_eq!(b.orders().iter().product::<u64>(), b.phi());
            // Rebuild each unit from its exponent vector.
            for &u in &units {
                let idx = b.log_index(u).unwrap();
                let exps: Vec<u64> = b.exponents(idx).iter().map(|&x| x.into()).collect();
                let mut acc = 1u64;
                for (g, &x) in b.generators.iter().zip(&exps) {
                    for _ in 0..x {
                        acc = ring.mul(acc, *g);
                    }
                }
                assert_eq!(acc, u);
            }
        }
    }

    #[test]
    fn character_counts() {
        let b = basis(2, 1, &[0, 0, 1]);
        assert_eq!(b.characters().count(), 2);
        let b = basis(3, 1, &[0, 0, 0, 1]);
        assert_eq!(b.characters().count(), 18);
        let chars: Vec<_> = b.characters().collect();
        assert!(chars[0].is_principal());
        assert_eq!(chars.iter().filter(|c| c.is_principal()).count(), 1);
        let b = basis(3, 1, &[0, 0, 1]);
        assert_eq!(b.count_even(), 3);
        assert_eq!(b.phi(), 6);
    }

    #[test]
    fn evaluation_examples() {
        let f2 = make_field(2, 1).unwrap();
        let b = basis(2, 1, &[0, 0, 1]);
        let chars: Vec<_> = b.characters().collect();
        let g = Poly::new(vec![1, 1]);
        assert_eq!(chars[0].evaluate(&g), Some(RotationNumber::ZERO));
        assert_eq!(chars[1].evaluate(&g), Some(RotationNumber::new(1, 2)));
        let tg = Poly::t().mul(&Poly::new(vec![1, 1, 1]), &f2);
        assert!(chars.iter().all(|c| c.evaluate(&tg).is_none()));
        assert!(chars.iter().all(|c| c.is_even()));
        assert!(chars[1].evaluate(&Poly::zero()).is_none());
    }

    #[test]
    fn multiplicative_and_periodic() {
        let f3 = make_field(3, 1).unwrap();
        let q = Poly::new(vec![0, 0, 0, 1]);
        let b = unit_group_basis(&f3, &q, Budget::DEFAULT).unwrap();
        let polys: Vec<Poly> = (0..=3).flat_map(|d| enumerate_monic(&f3, d)).collect();
        for chi in b.characters().step_by(5) {
            for a in polys.iter().step_by(3) {
                for c in polys.iter().step_by(7) {
                    let ab = a.mul(c, &f3);
                    match (chi.evaluate(a), chi.evaluate(c)) {
                        (Some(x), Some(y)) => assert_eq!(chi.evaluate(&ab), Some(x.add(y))),
                        _ => assert_eq!(chi.evaluate(&ab), None),
                    }
                }
                assert_eq!(chi.evaluate(&a.add(&q, &f3)), chi.evaluate(a));
            }
        }
    }

    #[test]
    fn even_means_trivial_on_constants() {
        let b = basis(5, 1, &[0, 0, 1]);
        for chi in b.characters() {
            let on_consts = (1..5u8).all(|c| chi.evaluate(&Poly::constant(c)).unwrap().is_zero());
            assert_eq!(chi.is_even(), on_consts);
        }
        assert_eq!(b.count_even(), 5);
    }

    #[test]
    fn budget_and_bad_modulus() {
        let f2 = make_field(2, 1).unwrap();
        assert!(unit_group_basis(&f2, &Poly::one(), Budget::DEFAULT).is_err());
        assert!(unit_group_basis(&f2, &Poly::monomial(1, 30), Budget::DEFAULT).is_err());
    }
}
