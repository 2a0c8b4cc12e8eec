//! Permutations in one-line notation, reduced words, rank tables and
//! essential sets.
//!
//! All interfaces are 1-indexed: `images[k-1] = w(k)`.

mod rank;
mod words;

pub use rank::{essential_cells, essential_set, rank_table, single_condition_permutation, RankTable};
pub use words::{all_reduced_words, reduced_word, word_product, ReducedWord, MAX_WORDS_N};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("not a permutation of 1..{n}: {images:?}")]
    NotBijection { n: usize, images: Vec<usize> },
    #[error("size mismatch: S_{0} vs S_{1}")]
    SizeMismatch(usize, usize),
    #[error("cannot embed S_{from} into S_{to}")]
    EmbedTooSmall { from: usize, to: usize },
    #[error("simple transposition s_{i} does not exist in S_{n}")]
    BadIndex { i: usize, n: usize },
    #[error("word {word:?} is not a reduced word for {target}")]
    NotReduced { word: Vec<usize>, target: String },
    #[error("need l <= min(e, f), got e={e}, f={f}, l={l}")]
    BadRankCondition { e: usize, f: usize, l: usize },
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// An element of S_n in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation, PermError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotBijection { n, images });
            }
            seen[v] = true;
        }
        if n == 0 {
            return Err(PermError::NotBijection { n, images });
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (1..=n).collect() }
    }

    /// The simple transposition s_i of S_n.
    pub fn simple(n: usize, i: usize) -> Result<Permutation, PermError> {
        if i == 0 || i >= n {
            return Err(PermError::BadIndex { i, n });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// w(k), 1-indexed.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `w * s_i`: exchanges the images at positions i and i+1.
    pub fn mul_simple(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// `s_i * w`: exchanges the values i and i+1.
    pub fn simple_mul(&self, i: usize) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&v| if v == i { i + 1 } else if v == i + 1 { i } else { v })
            .collect();
        Permutation { images }
    }

    /// Right descents: i with w(i) > w(i+1).
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.apply(i) > self.apply(i + 1)).collect()
    }

    /// Left descents: i with w^{-1}(i) > w^{-1}(i+1).
    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().descents()
    }

    /// The inclusion S_n -> S_m fixing every point above n.
    pub fn embed(&self, m: usize) -> Result<Permutation, PermError> {
        if m < self.n() {
            return Err(PermError::EmbedTooSmall { from: self.n(), to: m });
        }
        let mut images = self.images.clone();
        images.extend(self.n() + 1..=m);
        Ok(Permutation { images })
    }

    /// All of S_n in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
                break;
            };
            let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).unwrap();
            cur.swap(k, l);
            cur[k + 1..].reverse();
        }
        out
    }
}

pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation, PermError> {
    if a.n() != b.n() {
        return Err(PermError::SizeMismatch(a.n(), b.n()));
    }
    Ok(Permutation { images: b.images.iter().map(|&k| a.apply(k)).collect() })
}

pub fn longest_element(n: usize) -> Permutation {
    Permutation { images: (1..=n).rev().collect() }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;
    fn try_from(images: Vec<usize>) -> Result<Permutation, PermError> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts `[2,3,1]` or bare `2,3,1`.
    fn from_str(s: &str) -> Result<Permutation, PermError> {
        let t = s.trim();
        let t = t.strip_prefix('[').map(|r| r.strip_suffix(']').unwrap_or(r)).unwrap_or(t);
        let images = t
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| PermError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&p("[2,1]"), &p("[2,1]")).unwrap(), p("[1,2]"));
        assert_eq!(compose(&p("[2,3,1]"), &p("[2,3,1]")).unwrap(), p("[3,1,2]"));
        assert_eq!(compose(&Permutation::identity(3), &p("[3,1,2]")).unwrap(), p("[3,1,2]"));
        assert!(compose(&p("[2,1]"), &p("[1,2,3]")).is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity(4).length(), 0);
        for n in 1..7 {
            assert_eq!(longest_element(n).length(), n * (n - 1) / 2);
        }
        assert_eq!(p("[2,3,1]").length(), 2);
    }

    #[test]
    fn longest_and_embed() {
        assert_eq!(longest_element(1), p("[1]"));
        assert_eq!(longest_element(4), p("[4,3,2,1]"));
        assert_eq!(p("[2,1]").embed(3).unwrap(), p("[2,1,3]"));
        assert_eq!(p("[3,1,2]").embed(5).unwrap(), p("[3,1,2,4,5]"));
        assert_eq!(p("[2,3,1]").embed(6).unwrap().length(), 2);
        assert!(p("[2,3,1]").embed(2).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("2,3,1"), p("[2,3,1]"));
        assert_eq!(p(" [ 2, 1 ] ").to_string(), "[2,1]");
        assert!("[1,1]".parse::<Permutation>().is_err());
        assert!("[0,1]".parse::<Permutation>().is_err());
        assert!("[]".parse::<Permutation>().is_err());
        let j = serde_json::to_string(&p("[3,1,2]")).unwrap();
        assert_eq!(j, "[3,1,2]");
        assert_eq!(serde_json::from_str::<Permutation>(&j).unwrap(), p("[3,1,2]"));
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }

    #[test]
    fn enumeration() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(3)[1], p("[1,3,2]"));
        assert_eq!(Permutation::all(1), vec![p("[1]")]);
    }

    #[test]
    fn simple_products() {
        let w = p("[2,3,1]");
        assert_eq!(w.mul_simple(1), compose(&w, &Permutation::simple(3, 1).unwrap()).unwrap());
        assert_eq!(w.simple_mul(2), compose(&Permutation::simple(3, 2).unwrap(), &w).unwrap());
        assert_eq!(w.descents(), vec![2]);
        assert_eq!(w.left_descents(), vec![1]);
    }
}
