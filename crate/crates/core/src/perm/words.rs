use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::{PermError, Permutation};

/// Largest n for which callers should enumerate all reduced words.
pub const MAX_WORDS_N: usize = 7;

/// A minimal decomposition `s_{i1} ... s_{il}` of its target.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ReducedWord {
    word: Vec<usize>,
    target: Permutation,
}

impl ReducedWord {
    /// Validates that `word` multiplies to `target` with minimal length.
    pub fn new(word: Vec<usize>, target: Permutation) -> Result<ReducedWord, PermError> {
        let product = word_product(target.n(), &word)?;
        if product != target || word.len() != target.length() {
            return Err(PermError::NotReduced { word, target: target.to_string() });
        }
        Ok(ReducedWord { word, target })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn target(&self) -> &Permutation {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// `s_{i1} s_{i2} ... s_{il}` in S_n, multiplying on the right.
pub fn word_product(n: usize, word: &[usize]) -> Result<Permutation, PermError> {
    let mut w = Permutation::identity(n);
    for &i in word {
        if i == 0 || i >= n {
            return Err(PermError::BadIndex { i, n });
        }
        w = w.mul_simple(i);
    }
    Ok(w)
}

type WordCache = RwLock<HashMap<Vec<usize>, Arc<Vec<Vec<usize>>>>>;

fn cache() -> &'static WordCache {
    static CACHE: OnceLock<WordCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn words_of(w: &Permutation) -> Arc<Vec<Vec<usize>>> {
    if let Some(hit) = cache().read().unwrap().get(w.images()) {
        return hit.clone();
    }
    let mut out = Vec::new();
    if w.is_identity() {
        out.push(Vec::new());
    } else {
        // Every reduced word ends in a right descent.
        for i in w.descents() {
            for prefix in words_of(&w.mul_simple(i)).iter() {
                let mut word = prefix.clone();
                word.push(i);
                out.push(word);
            }
        }
    }
    out.sort();
    let out = Arc::new(out);
    cache().write().unwrap().insert(w.images().to_vec(), out.clone());
    out
}

/// Every minimal decomposition of `w`, sorted lexicographically.
pub fn all_reduced_words(w: &Permutation) -> Vec<ReducedWord> {
    words_of(w)
        .iter()
        .map(|word| ReducedWord { word: word.clone(), target: w.clone() })
        .collect()
}

/// The lexicographically smallest reduced word: peel off the smallest left
/// descent at each step.
pub fn reduced_word(w: &Permutation) -> ReducedWord {
    let mut cur = w.clone();
    let mut word = Vec::with_capacity(w.length());
    while let Some(&i) = cur.left_descents().first() {
        word.push(i);
        cur = cur.simple_mul(i);
    }
    ReducedWord { word, target: w.clone() }
}
