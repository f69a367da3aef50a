//! Monic irreducibles by an Eratosthenes-style product sieve, plus the
//! `FFSIEVE` text cache.
//!
//! File layout:
//!
//! ```text
//! FFSIEVE 1 p=2 k=1 mod=- maxdeg=3 count=5
//! 1 0 1
//! 1 1 1
//! 2 1 1 1
//! 3 1 1 0 1
//! 3 1 0 1 1
//! END 5
//! ```
//!
//! Irreducibles are listed by ascending degree, then in enumeration order
//! (constant term varies fastest). Coefficients are element encodings,
//! ascending degree, leading one included.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::arith::pi_q;
use crate::error::{Budget, Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveCache {
    field: Field,
    max_degree: usize,
    /// `by_degree[d]` holds the monic codes of `P_d`, ascending.
    by_degree: Vec<Vec<u64>>,
}

/// Outcome of [`SieveCache::load_or_build`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Loaded,
    Built,
    /// The file existed but was unusable; it was rebuilt and rewritten.
    Rebuilt(String),
}

pub fn sieve_irreducibles(field: &Field, max_degree: usize, budget: Budget) -> Result<SieveCache> {
    if max_degree == 0 {
        return Err(Error::Precondition("sieve needs max_degree >= 1".into()));
    }
    let q = u64::from(field.q());
    let qw = u128::from(q);
    let work: u128 = (1..=max_degree as u32).map(|d| qw.pow(d)).sum();
    budget.check(work)?;

    let mut by_degree: Vec<Vec<u64>> = vec![Vec::new(); max_degree + 1];
    let mut prod = Vec::with_capacity(max_degree + 1);
    let mut m_buf = Vec::with_capacity(max_degree + 1);
    for d in 1..=max_degree {
        let size = q.pow(d as u32) as usize;
        let mut composite = vec![false; size];
        for e in 1..=d / 2 {
            for &pc in &by_degree[e] {
                let pcoeffs = Poly::from_monic_code(e, pc, field.q());
                let pcoeffs = pcoeffs.coeffs();
                for mc in 0..q.pow((d - e) as u32) {
                    decode_monic(mc, d - e, q, &mut m_buf);
                    mul_into(pcoeffs, &m_buf, field, &mut prod);
                    composite[encode_monic(&prod, q) as usize] = true;
                }
            }
        }
        by_degree[d] = (0..size as u64).filter(|&c| !composite[c as usize]).collect();
    }
    Ok(SieveCache {
        field: field.clone(),
        max_degree,
        by_degree,
    })
}

fn decode_monic(mut code: u64, n: usize, q: u64, out: &mut Vec<Elem>) {
    out.clear();
    for _ in 0..n {
        out.push((code % q) as Elem);
        code /= q;
    }
    out.push(1);
}

fn encode_monic(c: &[Elem], q: u64) -> u64 {
    let n = c.len() - 1;
    c[..n].iter().rev().fold(0, |acc, &x| acc * q + u64::from(x))
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

impl SieveCache {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Monic codes of the irreducibles of degree `d` (empty beyond the cache).
    pub fn codes(&self, d: usize) -> &[u64] {
        self.by_degree.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn irreducibles(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = self.field.q();
        self.codes(d).iter().map(move |&c| Poly::from_monic_code(d, c, q))
    }

    pub fn count(&self, d: usize) -> usize {
        self.codes(d).len()
    }

    pub fn total(&self) -> usize {
        self.by_degree.iter().map(Vec::len).sum()
    }

    /// Whether a monic polynomial is in the cache. `None` if its degree is
    /// out of range.
    pub fn contains(&self, g: &Poly) -> Option<bool> {
        let d = g.degree()?;
        if d == 0 || d > self.max_degree || !g.is_monic() {
            return None;
        }
        Some(self.codes(d).binary_search(&g.monic_code(self.field.q())).is_ok())
    }

    pub fn file_name(field: &Field) -> String {
        match field.modulus() {
            None => format!("ffsieve-p{}-k{}.txt", field.p(), field.k()),
            Some(m) => {
                let digits: String = m.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("_");
                format!("ffsieve-p{}-k{}-m{}.txt", field.p(), field.k(), digits)
            }
        }
    }

    fn header(&self) -> String {
        let modulus = match self.field.modulus() {
            None => "-".to_string(),
            Some(m) => m.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
        };
        format!(
            "FFSIEVE 1 p={} k={} mod={} maxdeg={} count={}",
            self.field.p(),
            self.field.k(),
            modulus,
            self.max_degree,
            self.total()
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = self.header();
        s.push('\n');
        for d in 1..=self.max_degree {
            for p in self.irreducibles(d) {
                let _ = write!(s, "{d}");
                for c in p.coeffs() {
                    let _ = write!(s, " {c}");
                }
                s.push('\n');
            }
        }
        let _ = writeln!(s, "END {}", self.total());
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.to_text().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(tmp, path)?;
        Ok(())
    }

    /// Parses and validates a cache file for `field`: header, monicity,
    /// ordering, per-degree counts against `pi_q`, and the `END` total.
    pub fn load(field: &Field, path: &Path) -> Result<SieveCache> {
        let text = fs::read_to_string(path)?;
        Self::parse(field, &text).map_err(|(line, reason)| Error::CorruptCache {
            path: path.to_path_buf(),
            line,
            reason,
        })
    }

    fn parse(field: &Field, text: &str) -> std::result::Result<SieveCache, (usize, String)> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or((1, "empty file".to_string()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 7 || fields[0] != "FFSIEVE" || fields[1] != "1" {
            return Err((1, "bad header".into()));
        }
        let get = |key: &str, tok: &str| -> std::result::Result<String, (usize, String)> {
            tok.strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .map(str::to_string)
                .ok_or((1, format!("expected {key}=...")))
        };
        let num = |s: String| -> std::result::Result<usize, (usize, String)> {
            s.parse::<usize>().map_err(|_| (1, format!("bad number {s:?}")))
        };
        let p = num(get("p", fields[2])?)?;
        let k = num(get("k", fields[3])?)?;
        let modulus = get("mod", fields[4])?;
        let max_degree = num(get("maxdeg", fields[5])?)?;
        let count = num(get("count", fields[6])?)?;
        let expected_mod = match field.modulus() {
            None => "-".to_string(),
            Some(m) => m.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
        };
        if p != field.p() as usize || k != field.k() as usize || modulus != expected_mod {
            return Err((1, "field parameters do not match".into()));
        }
        if max_degree == 0 {
            return Err((1, "maxdeg must be positive".into()));
        }

        let q = u64::from(field.q());
        let mut by_degree: Vec<Vec<u64>> = vec![Vec::new(); max_degree + 1];
        let mut last: Option<(usize, u64)> = None;
        let mut total = 0usize;
        let mut last_line = 1;
        for (lineno, line) in lines.by_ref() {
            last_line = lineno;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.first() == Some(&"END") {
                let end_total: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or((lineno, "bad END line".to_string()))?;
                if end_total != total || total != count {
                    return Err((lineno, format!("count mismatch: header {count}, END {end_total}, entries {total}")));
                }
                for (d, codes) in by_degree.iter().enumerate().skip(1) {
                    let expect = pi_q(q as u32, d).map_err(|e| (lineno, e.to_string()))?;
                    if codes.len() as u128 != expect {
                        return Err((lineno, format!("degree {d} has {} entries, expected {expect}", codes.len())));
                    }
                }
                if let Some((extra, _)) = lines.next() {
                    return Err((extra, "data after END".into()));
                }
                return Ok(SieveCache {
                    field: field.clone(),
                    max_degree,
                    by_degree,
                });
            }
            let vals: Vec<u64> = toks
                .iter()
                .map(|t| t.parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| (lineno, "non-numeric entry".to_string()))?;
            let (&d, coeffs) = vals.split_first().ok_or((lineno, "empty line".to_string()))?;
            let d = d as usize;
            if d == 0 || d > max_degree || coeffs.len() != d + 1 {
                return Err((lineno, "degree does not match coefficient count".into()));
            }
            if coeffs.iter().any(|&c| c >= q) {
                return Err((lineno, "coefficient out of range".into()));
            }
            if coeffs[d] != 1 {
                return Err((lineno, "polynomial is not monic".into()));
            }
            let code = coeffs[..d].iter().rev().fold(0u64, |acc, &c| acc * q + c);
            if let Some(prev) = last {
                if prev >= (d, code) {
                    return Err((lineno, "entries out of order".into()));
                }
            }
            last = Some((d, code));
            by_degree[d].push(code);
            total += 1;
        }
        Err((last_line + 1, "missing END line (truncated file?)".into()))
    }

    /// Loads the cache for `field` from `dir` if it is valid and deep enough,
    /// otherwise sieves and rewrites it.
    pub fn load_or_build(
        field: &Field,
        max_degree: usize,
        dir: &Path,
        budget: Budget,
    ) -> Result<(SieveCache, CacheStatus, PathBuf)> {
        let path = dir.join(Self::file_name(field));
        let status = if path.exists() {
            match Self::load(field, &path) {
                Ok(cache) if cache.max_degree >= max_degree => return Ok((cache, CacheStatus::Loaded, path)),
                Ok(cache) => CacheStatus::Rebuilt(format!(
                    "cached depth {} below requested {max_degree}",
                    cache.max_degree
                )),
                Err(e) => CacheStatus::Rebuilt(e.to_string()),
            }
        } else {
            CacheStatus::Built
        };
        let cache = sieve_irreducibles(field, max_degree, budget)?;
        cache.save(&path)?;
        Ok((cache, status, path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    /// Irreducibility by trial division over every monic polynomial of degree
    /// up to half: independent of the product sieve.
    fn brute_irreducible(g: &Poly, f: &Field) -> bool {
        let n = g.degree().unwrap();
        (1..=n / 2).all(|d| crate::poly::enumerate_monic(f, d).all(|m| !g.divisible_by(&m, f).unwrap()))
    }

    #[test]
    fn small_f2() {
        let f2 = make_field(2, 1).unwrap();
        let s = sieve_irreducibles(&f2, 2, Budget::DEFAULT).unwrap();
        let d1: Vec<_> = s.irreducibles(1).collect();
        assert_eq!(d1, vec![Poly::t(), Poly::new(vec![1, 1])]);
        let d2: Vec<_> = s.irreducibles(2).collect();
        assert_eq!(d2, vec![Poly::new(vec![1, 1, 1])]);
        let s4 = sieve_irreducibles(&f2, 4, Budget::DEFAULT).unwrap();
        assert_eq!(s4.count(4), 3);
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(sieve_irreducibles(&f3, 1, Budget::DEFAULT).unwrap().count(1), 3);
    }

    #[test]
    fn matches_trial_division() {
        for (p, k, n) in [(2, 1, 7), (3, 1, 4), (2, 2, 3), (5, 1, 3)] {
            let f = make_field(p, k).unwrap();
            let s = sieve_irreducibles(&f, n, Budget::DEFAULT).unwrap();
            for d in 1..=n {
                let brute: Vec<_> = crate::poly::enumerate_monic(&f, d).filter(|g| brute_irreducible(g, &f)).collect();
                let sieved: Vec<_> = s.irreducibles(d).collect();
                assert_eq!(brute, sieved, "q={} d={d}", f.q());
            }
        }
    }

    #[test]
    fn text_round_trip_and_corruption() {
        let f4 = make_field(2, 2).unwrap();
        let s = sieve_irreducibles(&f4, 3, Budget::DEFAULT).unwrap();
        let text = s.to_text();
        assert!(text.starts_with("FFSIEVE 1 p=2 k=2 mod=1,1,1 maxdeg=3 count="));
        assert_eq!(SieveCache::parse(&f4, &text).unwrap(), s);

        let truncated: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        let (line, _) = SieveCache::parse(&f4, &truncated).unwrap_err();
        assert_eq!(line, 6);

        let not_monic = text.replacen("1 0 1\n", "1 0 2\n", 1);
        assert!(SieveCache::parse(&f4, &not_monic).is_err());

        let f2 = make_field(2, 1).unwrap();
        assert!(SieveCache::parse(&f2, &text).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = make_field(2, 1).unwrap();
        assert!(matches!(
            sieve_irreducibles(&f2, 20, Budget(1000)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn load_or_build_recovers_from_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let f2 = make_field(2, 1).unwrap();
        let (a, st, path) = SieveCache::load_or_build(&f2, 6, dir.path(), Budget::DEFAULT).unwrap();
        assert_eq!(st, CacheStatus::Built);
        let (b, st, _) = SieveCache::load_or_build(&f2, 5, dir.path(), Budget::DEFAULT).unwrap();
        assert_eq!(st, CacheStatus::Loaded);
        assert_eq!(a, b);
        fs::write(&path, "FFSIEVE 1 p=2 k=1 mod=- maxdeg=6 count=3\n1 0 1\n").unwrap();
        let (c, st, _) = SieveCache::load_or_build(&f2, 6, dir.path(), Budget::DEFAULT).unwrap();
        assert!(matches!(st, CacheStatus::Rebuilt(_)));
        assert_eq!(a, c);
    }
}
