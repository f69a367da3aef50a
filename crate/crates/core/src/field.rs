//! Finite fields `F_q`, `q = p^k`, with table-driven arithmetic.
//!
//! Elements are encoded as integers in `[0, q)`. The base-`p` digits of an
//! element (least significant first) are its coordinates in the power basis
//! `1, a, a^2, ...` where `a` is a root of the defining modulus.

use crate::error::{Error, Result};

/// Default upper limit on `q`.
pub const DEFAULT_FIELD_LIMIT: u32 = 16;

/// Element of a finite field in its integer encoding.
pub type Elem = u8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Base-`p` coefficients of the defining modulus, ascending degree, monic.
    /// `None` for prime fields.
    modulus: Option<Vec<u32>>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds `F_{p^k}` with the default size limit.
pub fn make_field(p: u32, k: u32) -> Result<Field> {
    Field::with_limit(p, k, DEFAULT_FIELD_LIMIT)
}

impl Field {
    pub fn with_limit(p: u32, k: u32, limit: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        // Elements are stored as u8.
        let limit = limit.min(256);
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= limit)
            .ok_or(Error::FieldTooLarge { p, k, limit })?;
        let modulus = if k == 1 {
            None
        } else {
            Some(smallest_irreducible_over_prime(p, k as usize))
        };

        let qs = q as usize;
        let to_digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut x = x;
            for _ in 0..k {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let from_digits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = to_digits(a);
            for b in 0..q {
                let db = to_digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_digits(&sum) as Elem;
                let prod = match &modulus {
                    None => vec![(da[0] * db[0]) % p],
                    Some(m) => prime_poly_mulmod(&da, &db, m, p),
                };
                mul[(a * q + b) as usize] = from_digits(&prod) as Elem;
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as Elem;
                }
                if a != 0 && mul[a * qs + b] == 1 {
                    inv[a] = b as Elem;
                }
            }
        }
        Ok(Field {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.q as Elem
    }

    /// Exhaustive check of the field axioms. Returns the first violated law.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let els: Vec<Elem> = self.elements().collect();
        for &a in &els {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("additive inverse fails at {a}"));
            }
            if a != 0 && self.mul(a, self.inv[a as usize]) != 1 {
                return Err(format!("multiplicative inverse fails at {a}"));
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a}, {b})"));
                }
                if a != 0 && b != 0 && self.mul(a, b) == 0 {
                    return Err(format!("zero divisor ({a}, {b})"));
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn prime_poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let k = m.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // m is monic, so reduction only needs subtraction of multiples.
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - k + i;
            prod[idx] = (prod[idx] + (p - c) * mi % p) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn prime_poly_divides(d: &[u32], f: &[u32], p: u32) -> bool {
    // d monic
    let mut r = f.to_vec();
    let dd = d.len() - 1;
    for top in (dd..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (i, &di) in d.iter().enumerate() {
            let idx = top - dd + i;
            r[idx] = (r[idx] + (p - c) * di % p) % p;
        }
    }
    r[..dd].iter().all(|&c| c == 0)
}

fn is_irreducible_over_prime(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                div.push(x % p);
                x /= p;
            }
            div.push(1);
            if prime_poly_divides(&div, f, p) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `k` over `F_p`, comparing
/// coefficient tuples lexicographically from the constant term upward.
fn smallest_irreducible_over_prime(p: u32, k: usize) -> Vec<u32> {
    let count = p.pow(k as u32);
    for x in 0..count {
        // Constant term is the most significant digit.
        let mut f = vec![0u32; k + 1];
        let mut y = x;
        for i in (0..k).rev() {
            f[i] = y % p;
            y /= p;
        }
        f[k] = 1;
        if is_irreducible_over_prime(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![0, 1]);
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.inv(2), Some(2));
        assert_eq!(f3.inv(0), None);
    }

    #[test]
    fn f4_modulus_is_t2_t_1() {
        // Brute force: the only degree-2 polynomial over F_2 without a root.
        let roots_free: Vec<[u32; 3]> = (0..4u32)
            .map(|c| [c & 1, c >> 1, 1])
            .filter(|f| (0..2u32).all(|x| (f[0] + f[1] * x + f[2] * x * x) % 2 != 0))
            .collect();
        assert_eq!(roots_free, vec![[1, 1, 1]]);
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), Some(&[1, 1, 1][..]));
    }

    #[test]
    fn extension_modulus_uses_constant_first_order() {
        // t^3+t^2+1 = (1,0,1,1) precedes t^3+t+1 = (1,1,0,1).
        let f8 = Field::with_limit(2, 3, 16).unwrap();
        assert_eq!(f8.modulus(), Some(&[1, 0, 1, 1][..]));
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.modulus(), Some(&[1, 0, 1][..]));
        let f16 = make_field(2, 4).unwrap();
        assert_eq!(f16.modulus(), Some(&[1, 0, 0, 1, 1][..]));
    }

    #[test]
    fn axioms_hold_up_to_16() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
            let f = make_field(p, k).unwrap();
            f.check_axioms().unwrap_or_else(|e| panic!("F_{}: {e}", f.q()));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(make_field(2, 5), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(make_field(17, 1), Err(Error::FieldTooLarge { .. })));
        assert!(make_field(2, 0).is_err());
        assert!(Field::with_limit(17, 1, 32).is_ok());
    }
}
