//! On-disk cache of exact polynomials, one text file per colour:
//!
//! ```text
//! jones figure-eight N=<n> v1
//! <exponent> <coefficient>
//! ...
//! ```
//!
//! Lines are sorted by exponent. A sidecar `<file>.sha256` holds the digest
//! of the file; entries whose digest does not match are rebuilt.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use fig8_core::jones::habiro_exact;
use fig8_core::LaurentPolynomial;
use num_bigint::BigInt;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    Rebuilt,
}

fn header(n: u32) -> String {
    format!("jones figure-eight N={n} v1")
}

pub fn serialize(n: u32, poly: &LaurentPolynomial) -> String {
    let mut s = header(n);
    s.push('\n');
    for (e, c) in poly.terms() {
        s.push_str(&format!("{e} {c}\n"));
    }
    s
}

pub fn parse(n: u32, text: &str) -> Result<LaurentPolynomial> {
    let mut lines = text.lines();
    if lines.next() != Some(header(n).as_str()) {
        bail!("unexpected header in cache entry for N={n}");
    }
    let mut terms = Vec::new();
    let mut last = None;
    for line in lines {
        let (e, c) = line.split_once(' ').context("malformed cache line")?;
        let e: i64 = e.parse()?;
        if last.is_some_and(|l| l >= e) {
            bail!("cache entry for N={n} is not sorted by exponent");
        }
        last = Some(e);
        terms.push((e, c.parse::<BigInt>()?));
    }
    Ok(LaurentPolynomial::from_terms(terms))
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
        Ok(Cache { dir: dir.to_owned() })
    }

    fn path(&self, n: u32) -> PathBuf {
        self.dir.join(format!("jones_fig8_N{n}.txt"))
    }

    fn read_valid(&self, n: u32) -> Option<LaurentPolynomial> {
        let path = self.path(n);
        let text = fs::read_to_string(&path).ok()?;
        let sum = fs::read_to_string(path.with_extension("txt.sha256")).ok()?;
        if sum.trim() != digest(&text) {
            return None;
        }
        parse(n, &text).ok()
    }

    /// `J_N` from the cache, computing and storing it on a miss.
    pub fn get(&self, n: u32) -> Result<(LaurentPolynomial, Lookup)> {
        let existed = self.path(n).exists();
        if let Some(p) = self.read_valid(n) {
            return Ok((p, Lookup::Hit));
        }
        let poly = habiro_exact(n as i64)?.poly;
        let text = serialize(n, &poly);
        let path = self.path(n);
        fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
        fs::write(path.with_extension("txt.sha256"), digest(&text) + "\n")
            .with_context(|| format!("writing checksum for {}", path.display()))?;
        Ok((poly, if existed { Lookup::Rebuilt } else { Lookup::Miss }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_text() {
        let p = habiro_exact(4).unwrap().poly;
        let text = serialize(4, &p);
        assert!(text.starts_with("jones figure-eight N=4 v1\n"));
        assert_eq!(parse(4, &text).unwrap(), p);
        assert!(parse(5, &text).is_err());
    }

    #[test]
    fn hit_matches_fresh_and_corruption_rebuilds() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(&dir.path().join("nested")).unwrap();
        let (first, how) = cache.get(7).unwrap();
        assert_eq!(how, Lookup::Miss);
        let (second, how) = cache.get(7).unwrap();
        assert_eq!(how, Lookup::Hit);
        assert_eq!(first, second);
        assert_eq!(second, habiro_exact(7).unwrap().poly);

        let path = cache.path(7);
        let text = fs::read_to_string(&path).unwrap().replacen(" 1\n", " 2\n", 1);
        fs::write(&path, text).unwrap();
        let (third, how) = cache.get(7).unwrap();
        assert_eq!(how, Lookup::Rebuilt);
        assert_eq!(third, first);
    }
}
