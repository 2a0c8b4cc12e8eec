use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{PermError, Permutation};

/// `r(i,j) = #{k <= j : w(k) <= i}` for `1 <= i, j <= n`.
///
/// The first index counts values and the second positions. In matrix
/// language `r(i,j)` is the rank of the upper-left `i x j` block of the
/// permutation matrix with a one in row `w(k)`, column `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RankTable {
    n: usize,
    r: Vec<usize>,
}

impl RankTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j), "cell ({i},{j}) outside {}x{}", self.n, self.n);
        self.r[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.r.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    /// Bounds `0 <= r <= min(i,j)`, borders `r(n,j) = j`, `r(i,n) = i`, and
    /// unit steps in each direction.
    pub fn check_invariants(&self) -> bool {
        let n = self.n;
        let at = |i: usize, j: usize| if i == 0 || j == 0 { 0 } else { self.get(i, j) };
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                let v = at(i, j);
                v <= i.min(j)
                    && at(i - 1, j) <= v
                    && v <= at(i - 1, j) + 1
                    && at(i, j - 1) <= v
                    && v <= at(i, j - 1) + 1
            })
        }) && (1..=n).all(|j| at(n, j) == j && at(j, n) == j)
    }
}

pub fn rank_table(w: &Permutation) -> RankTable {
    let n = w.n();
    let mut r = vec![0; n * n];
    for i in 1..=n {
        let mut count = 0;
        for j in 1..=n {
            if w.apply(j) <= i {
                count += 1;
            }
            r[(i - 1) * n + (j - 1)] = count;
        }
    }
    RankTable { n, r }
}

/// Pairs `(i,j)` in `{1..n-1}^2` with `w(i) > j`, `w(i+1) <= j`,
/// `w^{-1}(j) > i` and `w^{-1}(j+1) <= i`.
///
/// Here `i` is a position and `j` a value, the reverse of the rank
/// table's index order; see [`essential_cells`].
pub fn essential_set(w: &Permutation) -> BTreeSet<(usize, usize)> {
    let n = w.n();
    let inv = w.inverse();
    let mut out = BTreeSet::new();
    for i in 1..n {
        for j in 1..n {
            if w.apply(i) > j && w.apply(i + 1) <= j && inv.apply(j) > i && inv.apply(j + 1) <= i {
                out.insert((i, j));
            }
        }
    }
    out
}

/// The essential set as rank-table cells `(value, position)`: the rank
/// conditions `r(i,j)` that generate all the others.
pub fn essential_cells(w: &Permutation) -> BTreeSet<(usize, usize)> {
    essential_set(w).into_iter().map(|(p, q)| (q, p)).collect()
}

/// The permutation `[1..l, e+1..e+f-l, l+1..e]` of `S_{e+f-l}`, whose only
/// rank condition is `r(e,f) = l`.
///
/// When `l = min(e,f)` the condition is automatic and the essential set is
/// empty.
pub fn single_condition_permutation(e: usize, f: usize, l: usize) -> Result<Permutation, PermError> {
    if e == 0 || f == 0 || l > e.min(f) {
        return Err(PermError::BadRankCondition { e, f, l });
    }
    let n = e + f - l;
    let images: Vec<usize> = (1..=l).chain(e + 1..=n).chain(l + 1..=e).collect();
    let w = Permutation::new(images)?;
    let cells = essential_cells(&w);
    let expected: BTreeSet<_> = if l < e.min(f) { [(e, f)].into() } else { BTreeSet::new() };
    assert_eq!(cells, expected, "essential cells of {w}");
    assert_eq!(rank_table(&w).get(e, f), l, "rank of {w} at ({e},{f})");
    Ok(w)
}
