//! Polynomials over `F_q`, monic enumeration and short-interval keys.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Polynomial with coefficients in the element encoding of some [`Field`],
/// lowest degree first. Never carries trailing zeros; the zero polynomial has
/// no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    /// The monomial `t`.
    pub fn t() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::new(vec![c])
    }

    /// `c * t^n`
    pub fn monomial(c: Elem, n: usize) -> Poly {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c;
        Poly::new(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    /// `|F| = q^deg F`; `None` for the zero polynomial or on overflow.
    pub fn norm(&self, field: &Field) -> Option<u128> {
        let d = self.degree()?;
        u128::from(field.q()).checked_pow(d as u32)
    }

    /// Multiplicity of `t` as a factor.
    pub fn t_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32, f: &Field) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// Euclidean division: `(s, r)` with `self = s * divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.coeffs[dd]).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[top - dd] = factor;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(factor, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly, f: &Field) -> Result<Poly> {
        Ok(self.div_rem(divisor, f)?.1)
    }

    /// Whether `divisor` divides `self`.
    pub fn divisible_by(&self, divisor: &Poly, f: &Field) -> Result<bool> {
        Ok(self.rem(divisor, f)?.is_zero())
    }

    /// Scales to leading coefficient one. The zero polynomial stays zero.
    pub fn make_monic(&self, f: &Field) -> Poly {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(f.inv(c).expect("nonzero leading coefficient"), f),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly, f: &Field) -> Result<Poly> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic(f))
    }

    /// The involution `F* = t^deg F * F(1/t)`: coefficient reversal, after
    /// which the trailing zeros coming from powers of `t` are dropped.
    pub fn star(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Poly::new(self.coeffs.iter().rev().copied().collect()))
    }

    /// Integer code of a monic polynomial: `sum c_i q^i` over `i < deg`.
    /// Codes of `M_n` are exactly `0..q^n`, in enumeration order.
    pub fn monic_code(&self, q: u32) -> u64 {
        let n = self.coeffs.len().saturating_sub(1);
        self.coeffs[..n]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * u64::from(q) + u64::from(c))
    }

    /// Inverse of [`Poly::monic_code`] for degree `n`.
    pub fn from_monic_code(n: usize, mut code: u64, q: u32) -> Poly {
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push((code % u64::from(q)) as Elem);
            code /= u64::from(q);
        }
        coeffs.push(1);
        Poly { coeffs }
    }

    /// Code of an arbitrary polynomial of degree `< len` as a residue:
    /// `sum c_i q^i` over all coefficients.
    pub fn residue_code(&self, q: u32) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * u64::from(q) + u64::from(c))
    }

    pub fn from_residue_code(mut code: u64, q: u32) -> Poly {
        let mut coeffs = Vec::new();
        while code > 0 {
            coeffs.push((code % u64::from(q)) as Elem);
            code /= u64::from(q);
        }
        Poly { coeffs }
    }

    /// Machine notation: ascending coefficient list, e.g. `[1,1,0,1]`.
    pub fn coeff_list(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for Poly {
    /// Human notation, e.g. `t^3+2t+1`, with coefficients in element encoding.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// `q^n` with overflow reported as an error.
pub fn checked_qpow(q: u32, n: usize) -> Result<u64> {
    u64::from(q)
        .checked_pow(n as u32)
        .ok_or(Error::Overflow("q^n"))
}

/// Stream over a contiguous block of `M_n` in enumeration order (constant
/// term varies fastest).
#[derive(Clone, Debug)]
pub struct MonicIter {
    q: u32,
    n: usize,
    next: u64,
    end: u64,
}

/// All of `M_n`, in lexicographic order of coefficient tuples.
pub fn enumerate_monic(field: &Field, n: usize) -> MonicIter {
    let q = field.q();
    let end = u64::from(q).pow(n as u32);
    MonicIter { q, n, next: 0, end }
}

impl MonicIter {
    /// Restricts `M_n` to the polynomials whose coefficients of
    /// `t^{n-1}, t^{n-2}, ...` equal `prefix` (highest first).
    pub fn with_prefix(field: &Field, n: usize, prefix: &[Elem]) -> Result<MonicIter> {
        if prefix.len() > n {
            return Err(Error::Precondition(format!(
                "prefix of length {} longer than degree {n}",
                prefix.len()
            )));
        }
        let q = u64::from(field.q());
        let block = q.pow((n - prefix.len()) as u32);
        let lead = prefix.iter().fold(0u64, |acc, &c| acc * q + u64::from(c));
        Ok(MonicIter {
            q: field.q(),
            n,
            next: lead * block,
            end: (lead + 1) * block,
        })
    }

    /// Splits `M_n` into `q^len` prefix blocks, in enumeration order.
    pub fn prefix_blocks(field: &Field, n: usize, len: usize) -> Vec<MonicIter> {
        let len = len.min(n);
        let q = u64::from(field.q());
        let block = q.pow((n - len) as u32);
        (0..q.pow(len as u32))
            .map(|lead| MonicIter {
                q: field.q(),
                n,
                next: lead * block,
                end: (lead + 1) * block,
            })
            .collect()
    }

    /// Remaining codes, as a half-open range.
    pub fn codes(&self) -> std::ops::Range<u64> {
        self.next..self.end
    }
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.end {
            return None;
        }
        let p = Poly::from_monic_code(self.n, self.next, self.q);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for MonicIter {}

/// Identifies the short interval `I_h(G)` containing a monic `G`: the packed
/// coefficients of `t^{h+1}, ..., t^{N-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalKey {
    pub key: u64,
    pub degree: usize,
    pub h: usize,
}

pub fn interval_key(g: &Poly, h: usize, field: &Field) -> Result<IntervalKey> {
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    if !g.is_monic() {
        return Err(Error::Precondition("interval keys are defined for monic polynomials".into()));
    }
    if h >= n {
        return Err(Error::Precondition(format!("h = {h} must be below deg G = {n}")));
    }
    let q = u64::from(field.q());
    let key = g.coeffs()[h + 1..n]
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * q + u64::from(c));
    Ok(IntervalKey { key, degree: n, h })
}

/// Interval key read straight off a monic code of degree `n`.
#[inline]
pub fn interval_key_of_code(code: u64, q: u32, h: usize) -> u64 {
    code / u64::from(q).pow(h as u32 + 1)
}
