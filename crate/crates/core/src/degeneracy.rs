//! Rank conditions on integer matrices and the reduction constructions for
//! degeneracy loci.
//!
//! A condition `r(i,j)` bounds the rank of the upper-left block made of the
//! first `i` rows and the first `j` columns. Rows follow the rank table's
//! first index (values of `w`), columns its second (positions), so the
//! permutation matrix of `w` meets every condition of `w` with equality.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, Strategy};
use crate::perm::{essential_cells, essential_set, rank_table, PermError, Permutation, RankTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegeneracyError {
    #[error("matrix is {rows}x{cols}, expected {n}x{n}")]
    Size { rows: usize, cols: usize, n: usize },
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("rank table is not the restriction of any permutation in S_{0}")]
    NotPermissible(usize),
    #[error("embedding needs n >= max(e, f); got e={e}, f={f}, n={n}")]
    TooSmall { e: usize, f: usize, n: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = DegeneracyError;
    fn try_from(v: Vec<Vec<i64>>) -> Result<IntMatrix, DegeneracyError> {
        IntMatrix::from_rows(v)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Vec<Vec<i64>> {
        m.to_rows()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, 1);
        }
        m
    }

    pub fn from_rows(v: Vec<Vec<i64>>) -> Result<IntMatrix, DegeneracyError> {
        let rows = v.len();
        let cols = v.first().map_or(0, Vec::len);
        if v.iter().any(|r| r.len() != cols) {
            return Err(DegeneracyError::Ragged);
        }
        Ok(IntMatrix { rows, cols, data: v.into_iter().flatten().collect() })
    }

    pub fn from_i64(v: &[Vec<i64>]) -> Result<IntMatrix, DegeneracyError> {
        IntMatrix::from_rows(v.to_vec())
    }

    /// The matrix with a one in row `w(k)`, column `k`.
    pub fn permutation(w: &Permutation) -> IntMatrix {
        let n = w.n();
        let mut m = IntMatrix::zeros(n, n);
        for k in 1..=n {
            m.set(w.apply(k) - 1, k - 1, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shapes");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    let term = a.checked_mul(other.get(k, c)).expect("matrix entry overflow");
                    out.data[idx] = out.data[idx].checked_add(term).expect("matrix entry overflow");
                }
            }
        }
        out
    }

    /// The upper-left `i x j` block.
    pub fn corner(&self, i: usize, j: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(i, j);
        for r in 0..i {
            for c in 0..j {
                out.set(r, c, self.get(r, c));
            }
        }
        out
    }

    /// Embeds into the upper-left corner of an `n x m` zero matrix.
    pub fn padded(&self, n: usize, m: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(n, m);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        out
    }

    /// Exact rank by fraction-free Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> =
            self.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::from(1);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in rank + 1..rows {
                for k in c + 1..cols {
                    let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                    a[r][k] = v;
                }
                a[r][c] = BigInt::zero();
            }
            prev = a[rank][c].clone();
            rank += 1;
        }
        rank
    }

    pub fn corner_rank(&self, i: usize, j: usize) -> usize {
        self.corner(i, j).rank()
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Conditions {
    All,
    Essential,
}

/// Rank-table cells `(i,j)` checked for `which`.
pub fn condition_cells(w: &Permutation, which: Conditions) -> BTreeSet<(usize, usize)> {
    match which {
        Conditions::Essential => essential_cells(w),
        Conditions::All => {
            let n = w.n();
            (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
        }
    }
}

/// A violated condition: the corner rank exceeds the bound.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub cell: (usize, usize),
    pub rank: usize,
    pub bound: usize,
}

pub fn first_violation(m: &IntMatrix, w: &Permutation, which: Conditions) -> Result<Option<Violation>, DegeneracyError> {
    let n = w.n();
    if m.rows() != n || m.cols() != n {
        return Err(DegeneracyError::Size { rows: m.rows(), cols: m.cols(), n });
    }
    let table = rank_table(w);
    Ok(violation_in(m, &table, condition_cells(w, which)))
}

fn violation_in(m: &IntMatrix, table: &RankTable, cells: impl IntoIterator<Item = (usize, usize)>) -> Option<Violation> {
    cells.into_iter().find_map(|(i, j)| {
        let rank = m.corner_rank(i, j);
        let bound = table.get(i, j);
        (rank > bound).then_some(Violation { cell: (i, j), rank, bound })
    })
}

/// `rank(upper-left i x j block) <= r_w(i,j)` for every chosen cell.
pub fn satisfies_rank_conditions(m: &IntMatrix, w: &Permutation, which: Conditions) -> Result<bool, DegeneracyError> {
    Ok(first_violation(m, w, which)?.is_none())
}

/// A matrix meeting the essential conditions but not all of them.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub matrix: IntMatrix,
    pub violation: Violation,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SufficiencyReport {
    pub perm: Permutation,
    pub seed: u64,
    pub trials: usize,
    /// Essential cells in rank-table coordinates.
    pub essential: Vec<(usize, usize)>,
    /// Trials whose matrix met the essential conditions.
    pub conditioned: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SufficiencyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Per-trial generator: the same `(seed, trial)` always gives the same
/// matrix regardless of execution order.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.gen_range(-bound..=bound));
        }
    }
    m
}

/// Unitriangular matrix with entries in `[-1, 1]`; `lower` picks the side.
fn random_unitriangular(rng: &mut impl Rng, n: usize, lower: bool) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            if (lower && c < r) || (!lower && c > r) {
                m.set(r, c, rng.gen_range(-1..=1));
            }
        }
    }
    m
}

/// Zeroes rows `bound+1..i` of the first `j` columns for each violated cell
/// until none is violated. Each pass zeroes at least one nonzero entry, so
/// the loop ends.
pub fn force_conditions(m: &mut IntMatrix, table: &RankTable, cells: &BTreeSet<(usize, usize)>) {
    while let Some(v) = violation_in(m, table, cells.iter().copied()) {
        let (i, j) = v.cell;
        for r in v.bound..i {
            for c in 0..j {
                m.set(r, c, 0);
            }
        }
    }
}

/// A random rook placement conjugated by unitriangular matrices. Such
/// products `L P U` meet every rank type, and keep the rank table of `P`.
fn random_orbit_matrix(rng: &mut impl Rng, w: &Permutation) -> IntMatrix {
    let n = w.n();
    let mut p = IntMatrix::zeros(n, n);
    if rng.gen_bool(0.5) {
        // A sub-placement of w's ones plus one stray entry.
        for k in 1..=n {
            if rng.gen_bool(0.7) {
                p.set(w.apply(k) - 1, k - 1, 1);
            }
        }
        let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if (0..n).all(|k| p.get(r, k) == 0) && (0..n).all(|k| p.get(k, c) == 0) {
            p.set(r, c, 1);
        }
    } else {
        let mut images: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            images.swap(k, rng.gen_range(0..=k));
        }
        for (c, &r) in images.iter().enumerate() {
            if rng.gen_bool(0.8) {
                p.set(r, c, 1);
            }
        }
    }
    let l = random_unitriangular(rng, n, true);
    let u = random_unitriangular(rng, n, false);
    l.mul(&p).mul(&u)
}

/// One seeded candidate matrix for `w`. Even trials start from a generic
/// matrix with entries in `[-9, 9]` and zero blocks until the essential
/// conditions hold; odd trials draw a random orbit representative.
pub fn candidate_matrix(w: &Permutation, seed: u64, trial: usize) -> IntMatrix {
    let n = w.n();
    let mut rng = trial_rng(seed, trial);
    if trial.is_multiple_of(2) {
        let mut m = random_matrix(&mut rng, n, n, 9);
        force_conditions(&mut m, &rank_table(w), &essential_cells(w));
        // Row operations inside row prefixes and column operations inside
        // column prefixes keep every corner rank.
        let l = random_unitriangular(&mut rng, n, true);
        let u = random_unitriangular(&mut rng, n, false);
        l.mul(&m).mul(&u)
    } else {
        random_orbit_matrix(&mut rng, w)
    }
}

/// Set-theoretic shadow of essential sufficiency: every candidate meeting
/// the essential conditions must meet all of them.
pub fn essential_sufficiency_check(w: &Permutation, trials: usize, seed: u64, strategy: Strategy) -> SufficiencyReport {
    let table = rank_table(w);
    let ess = essential_cells(w);
    let all = condition_cells(w, Conditions::All);
    let outcomes = exec::map_range(strategy, trials, |trial| {
        let m = candidate_matrix(w, seed, trial);
        if violation_in(&m, &table, ess.iter().copied()).is_some() {
            return (false, None);
        }
        let bad = violation_in(&m, &table, all.iter().copied());
        (true, bad.map(|violation| Counterexample { trial, matrix: m, violation }))
    });
    let conditioned = outcomes.iter().filter(|(c, _)| *c).count();
    let counterexamples = outcomes.into_iter().filter_map(|(_, c)| c).collect();
    SufficiencyReport {
        perm: w.clone(),
        seed,
        trials,
        essential: ess.into_iter().collect(),
        conditioned,
        counterexamples,
    }
}

/// Bookkeeping of padding an `e x f` problem to `n x n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub e: usize,
    pub f: usize,
    pub n: usize,
    /// The first permutation of `S_n` (lexicographically) restricting to the table.
    pub perm: Permutation,
    pub padded_rows: usize,
    pub padded_cols: usize,
    /// Cells inside the `e x f` corner, whose conditions are the original ones.
    pub inherited: Vec<(usize, usize)>,
    /// Cells outside the corner, implied by the inherited ones.
    pub automatic: Vec<(usize, usize)>,
    pub trials: usize,
    /// Trials whose padded matrix broke a condition outside the corner.
    pub failures: usize,
}

/// Pads an `e x f` rank table `r` (rows indexed by `i <= e`) to `S_n`.
///
/// Permissibility is decided only for the given `n`.
pub fn same_rank_embedding(
    e: usize,
    f: usize,
    n: usize,
    r: &[Vec<usize>],
    trials: usize,
    seed: u64,
) -> Result<EmbeddingReport, DegeneracyError> {
    if n < e.max(f) || e == 0 || f == 0 {
        return Err(DegeneracyError::TooSmall { e, f, n });
    }
    if r.len() != e || r.iter().any(|row| row.len() != f) {
        return Err(DegeneracyError::Size { rows: r.len(), cols: r.first().map_or(0, Vec::len), n: e });
    }
    let restricts = |w: &Permutation| {
        let t = rank_table(w);
        (1..=e).all(|i| (1..=f).all(|j| t.get(i, j) == r[i - 1][j - 1]))
    };
    let perm = Permutation::all(n).into_iter().find(restricts).ok_or(DegeneracyError::NotPermissible(n))?;
    let table = rank_table(&perm);
    let (mut inherited, mut automatic) = (Vec::new(), Vec::new());
    for i in 1..=n {
        for j in 1..=n {
            if i <= e && j <= f {
                inherited.push((i, j));
            } else {
                automatic.push((i, j));
            }
        }
    }
    let corner: BTreeSet<_> = inherited.iter().copied().collect();
    let mut failures = 0;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let mut h = random_matrix(&mut rng, e, f, 9);
        force_conditions(&mut h, &table, &corner);
        let padded = h.padded(n, n);
        if violation_in(&padded, &table, automatic.iter().copied()).is_some() {
            failures += 1;
        }
    }
    Ok(EmbeddingReport {
        e,
        f,
        n,
        perm,
        padded_rows: n - e,
        padded_cols: n - f,
        inherited,
        automatic,
        trials,
        failures,
    })
}

/// `w` in `S_{2n}` through the canonical inclusion; the essential set is
/// unchanged.
pub fn id_reduction_permutation(w: &Permutation) -> Permutation {
    let big = w.embed(2 * w.n()).expect("2n >= n");
    assert_eq!(essential_set(&big), essential_set(w), "essential set changed under inclusion of {w}");
    big
}

pub fn expected_codimension(w: &Permutation) -> usize {
    w.length()
}
