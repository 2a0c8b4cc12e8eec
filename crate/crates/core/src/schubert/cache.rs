//! Process-wide memo of double polynomials, keyed by family and one-line
//! images. Concurrent writers store identical values, so last-writer-wins
//! is harmless.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::Family;
use crate::perm::Permutation;
use crate::poly::{Poly, PolyError, PolyJson};

type Store = RwLock<HashMap<(Family, Vec<usize>), Poly>>;

fn store() -> &'static Store {
    static STORE: OnceLock<Store> = OnceLock::new();
    STORE.get_or_init(Default::default)
}

pub(super) fn get(family: Family, w: &Permutation) -> Option<Poly> {
    store().read().unwrap().get(&(family, w.images().to_vec())).cloned()
}

pub(super) fn put(family: Family, w: &Permutation, p: &Poly) {
    store().write().unwrap().insert((family, w.images().to_vec()), p.clone());
}

pub fn clear_cache() {
    store().write().unwrap().clear();
}

/// One cached value in the on-disk form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub family: Family,
    pub perm: Permutation,
    pub poly: PolyJson,
}

/// Snapshot of the cache, sorted for stable output.
pub fn export_cache() -> Vec<CacheEntry> {
    let mut out: Vec<CacheEntry> = store()
        .read()
        .unwrap()
        .iter()
        .map(|((family, images), p)| CacheEntry {
            family: *family,
            perm: Permutation::new(images.clone()).unwrap(),
            poly: p.to_json(),
        })
        .collect();
    out.sort_by(|a, b| (a.family, &a.perm).cmp(&(b.family, &b.perm)));
    out
}

pub fn import_cache(entries: &[CacheEntry]) -> Result<usize, PolyError> {
    let mut guard = store().write().unwrap();
    for e in entries {
        guard.insert((e.family, e.perm.images().to_vec()), Poly::from_json(&e.poly)?);
    }
    Ok(entries.len())
}
