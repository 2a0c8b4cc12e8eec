//! Verification suites shared by the command line and the acceptance tests.
//!
//! A suite runs a list of independent cases and reports the failures in
//! case order, so the report does not depend on the execution strategy.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::chern::{closed_form_factors, default_ck_cap, whitney_m, whitney_m_prime, Evaluation};
use crate::degeneracy::{essential_sufficiency_check, trial_rng};
use crate::exec::{self, Strategy};
use crate::fgl::{
    bind, lazard_relations, law_from_json, make_additive, make_multiplicative, verify_axioms, FormalGroupLaw,
};
use crate::flag::{
    bott_samelson_class, ck_schubert_class, first_disagreement, operator_a, operator_a_ck, FlagClass,
    FlagContext,
};
use crate::perm::{all_reduced_words, compose, essential_set, longest_element, Permutation};
use crate::poly::{Monomial, Poly, Var};
use crate::schubert::{
    apply_partial, apply_phi, double_poly, double_poly_via, negate_y, specialize_beta, telescoping_product,
    BetaValue, Family,
};

/// A user law shipped with the crate: `(u + v) / (1 + uv)` up to degree 8.
pub const HYPERBOLIC_LAW: &str = include_str!("../data/hyperbolic.json");

pub fn hyperbolic_law() -> FormalGroupLaw {
    law_from_json(HYPERBOLIC_LAW).expect("bundled law file")
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
    /// Stop at the first failing case.
    pub stop_at_first: bool,
    pub strategy: Strategy,
}

impl Default for Options {
    fn default() -> Options {
        Options { seed: 0, samples: 100, stop_at_first: true, strategy: Strategy::default() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// Cases evaluated; smaller than the case count when stopping early.
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Combines several reports under one name.
    pub fn merge(suite: &str, parts: Vec<SuiteReport>) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            checked: parts.iter().map(|p| p.checked).sum(),
            failures: parts.into_iter().flat_map(|p| p.failures).collect(),
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} cases", self.suite, self.checked)?;
        for fail in &self.failures {
            write!(f, "\n  {}: {}", fail.case, fail.detail)?;
        }
        Ok(())
    }
}

fn run_cases<T, L, C>(suite: &str, opts: &Options, cases: &[T], label: L, check: C) -> SuiteReport
where
    T: Sync,
    L: Fn(&T) -> String,
    C: Fn(&T) -> Option<String> + Sync + Send,
{
    let indexed: Vec<(usize, &T)> = cases.iter().enumerate().collect();
    if opts.stop_at_first {
        let hit = exec::find_first(opts.strategy, &indexed, |(k, t)| check(t).map(|d| (*k, d)));
        let (checked, failures) = match hit {
            Some((k, detail)) => (k + 1, vec![Failure { case: label(&cases[k]), detail }]),
            None => (cases.len(), Vec::new()),
        };
        return SuiteReport { suite: suite.to_string(), checked, failures };
    }
    let results = exec::map(opts.strategy, &indexed, |(_, t)| check(t));
    let failures = results
        .into_iter()
        .zip(cases)
        .filter_map(|(r, t)| r.map(|detail| Failure { case: label(t), detail }))
        .collect();
    SuiteReport { suite: suite.to_string(), checked: cases.len(), failures }
}

/// A seeded polynomial in `x_1..x_n`, `y_1, y_2` and, when `with_beta`, `b`:
/// up to six terms of total degree at most five, coefficients in `[-5, 5]`.
pub fn random_poly(seed: u64, index: usize, n: usize, with_beta: bool) -> Poly {
    let mut rng = trial_rng(seed, index);
    let ring = if with_beta { Family::Beta.ring() } else { Family::Schubert.ring() };
    let mut vars: Vec<Var> = (1..=n).map(Var::x).collect();
    vars.extend([Var::y(1), Var::y(2)]);
    if with_beta {
        vars.push(Var::Beta);
    }
    let count = rng.gen_range(1..=6);
    let mut terms = Vec::new();
    for _ in 0..count {
        let degree = rng.gen_range(0..=5);
        let pairs: Vec<(Var, u32)> = (0..degree).map(|_| (vars[rng.gen_range(0..vars.len())], 1)).collect();
        let c: i64 = rng.gen_range(-5..=5);
        terms.push((Monomial::from_pairs(pairs), c.into()));
    }
    Poly::from_terms(ring, terms).expect("random terms")
}

const OPERATOR_FAMILIES: [Family; 3] = [Family::Schubert, Family::Grothendieck, Family::Beta];

/// Commutation for `|i - j| >= 2` and the braid relation for `|i - j| = 1`,
/// for the three operator families, on `opts.samples` random polynomials.
pub fn braid(n: usize, opts: &Options) -> SuiteReport {
    let cases: Vec<(Family, usize)> =
        OPERATOR_FAMILIES.iter().flat_map(|&f| (0..opts.samples).map(move |s| (f, s))).collect();
    run_cases(
        &format!("braid n={n}"),
        opts,
        &cases,
        |(f, s)| format!("{f} sample {s}"),
        |&(family, s)| {
            let p = random_poly(opts.seed, s, n, family == Family::Beta);
            let op = |i: usize, q: &Poly| family.apply(i, q);
            for i in 1..n {
                for j in i + 1..n {
                    let (lhs, rhs) = if j - i >= 2 {
                        (op(i, &op(j, &p)), op(j, &op(i, &p)))
                    } else {
                        (op(i, &op(j, &op(i, &p))), op(j, &op(i, &op(j, &p))))
                    };
                    if lhs != rhs {
                        return Some(format!("relation ({i},{j}) on {p}: difference {}", lhs - rhs));
                    }
                }
            }
            None
        },
    )
}

/// Every reduced word of `w0 w` gives the same polynomial, for all three
/// families.
pub fn reduced_words(n: usize, opts: &Options) -> SuiteReport {
    let w0 = longest_element(n);
    let cases: Vec<(Family, Permutation)> =
        OPERATOR_FAMILIES.iter().flat_map(|&f| Permutation::all(n).into_iter().map(move |w| (f, w))).collect();
    run_cases(
        &format!("reduced-words n={n}"),
        opts,
        &cases,
        |(f, w)| format!("{f} {w}"),
        |(family, w)| {
            let v = compose(&w0, w).unwrap();
            let expected = double_poly(*family, w);
            all_reduced_words(&v).iter().find_map(|word| {
                let got = double_poly_via(*family, w, word.word());
                (got != expected).then(|| format!("word {:?} gives {got}, expected {expected}", word.word()))
            })
        },
    )
}

#[derive(Clone, Debug)]
enum StabilityCase {
    Embed(Permutation),
    Telescope { n: usize, m: usize },
}

/// `H_w` in `S_n` equals `H_w` in `S_{n+1}`, and `phi_m H_m = H_{m+1}` for
/// every size up to `n + 1`.
pub fn stability(n: usize, opts: &Options) -> SuiteReport {
    let mut cases: Vec<StabilityCase> = Permutation::all(n).into_iter().map(StabilityCase::Embed).collect();
    for k in 1..=n + 1 {
        cases.extend((1..=k).map(|m| StabilityCase::Telescope { n: k, m }));
    }
    run_cases(
        &format!("stability n={n}"),
        opts,
        &cases,
        |c| match c {
            StabilityCase::Embed(w) => format!("embed {w}"),
            StabilityCase::Telescope { n, m } => format!("telescope n={n} m={m}"),
        },
        |c| match c {
            StabilityCase::Embed(w) => {
                let big = w.embed(w.n() + 1).unwrap();
                let (a, b) = (double_poly(Family::Beta, w), double_poly(Family::Beta, &big));
                (a != b).then(|| format!("{a} in S_{} but {b} in S_{}", w.n(), big.n()))
            }
            StabilityCase::Telescope { n, m } => {
                let lhs = apply_phi(*m, &telescoping_product(*n, *m));
                let rhs = telescoping_product(*n, m + 1);
                (lhs != rhs).then(|| format!("phi_{m} H_{m} - H_{} = {}", m + 1, lhs - rhs))
            }
        },
    )
}

/// `H_w` at `b = 0, y -> -y` is the Schubert polynomial and at `b = -1` the
/// Grothendieck polynomial.
pub fn special(n: usize, opts: &Options) -> SuiteReport {
    run_cases(&format!("special n={n}"), opts, &Permutation::all(n), |w| w.to_string(), |w| {
        let h = double_poly(Family::Beta, w);
        let s = negate_y(&specialize_beta(&h, BetaValue::Zero));
        let schubert = double_poly(Family::Schubert, w);
        if s != schubert {
            return Some(format!("b=0 gives {s}, Schubert is {schubert}"));
        }
        let g = specialize_beta(&h, BetaValue::MinusOne);
        let groth = double_poly(Family::Grothendieck, w);
        (g != groth).then(|| format!("b=-1 gives {g}, Grothendieck is {groth}"))
    })
}

fn chain_cases(perms: Vec<Permutation>) -> Vec<(Permutation, Vec<usize>)> {
    let n = perms.first().map_or(0, Permutation::n);
    let w0 = longest_element(n);
    perms
        .into_iter()
        .flat_map(|w| {
            let v = compose(&w0, &w).unwrap();
            all_reduced_words(&v).into_iter().map(move |word| (w.clone(), word.word().to_vec()))
        })
        .collect()
}

fn describe(ctx: &FlagContext, a: &FlagClass, b: &FlagClass) -> Option<String> {
    first_disagreement(ctx, a, b).map(|(sigma, diff)| format!("differs at x = {sigma}(y): {diff}"))
}

/// Additive chains along every reduced word reproduce the double Schubert
/// polynomial mod `J`.
pub fn bott_ch(n: usize, opts: &Options) -> SuiteReport {
    let ctx = FlagContext::ch(n).with_strategy(Strategy::Sequential);
    run_cases(
        &format!("bott-ch n={n}"),
        opts,
        &chain_cases(Permutation::all(n)),
        |(w, word)| format!("{w} word {word:?}"),
        |(w, word)| {
            let c = bott_samelson_class(&ctx, word).map_err(|e| e.to_string());
            match c {
                Err(e) => Some(e),
                Ok(c) => describe(&ctx, &c, &FlagClass::polynomial(double_poly(Family::Schubert, w))),
            }
        },
    )
}

/// CK chains along every reduced word equal `H^{(-b)}_w(x, chi(y))` mod `J`;
/// with `spot = Some(k)` only `k` seeded permutations are checked.
pub fn bott_ck(n: usize, spot: Option<usize>, opts: &Options) -> SuiteReport {
    let ctx = FlagContext::ck(n).with_strategy(Strategy::Sequential);
    let mut perms = Permutation::all(n);
    if let Some(k) = spot.filter(|&k| k < perms.len()) {
        let mut rng = trial_rng(opts.seed, 0);
        let mut picks = sample(&mut rng, perms.len(), k).into_vec();
        picks.sort_unstable();
        perms = picks.into_iter().map(|i| perms[i].clone()).collect();
    }
    run_cases(
        &format!("bott-ck n={n}"),
        opts,
        &chain_cases(perms),
        |(w, word)| format!("{w} word {word:?}"),
        |(w, word)| {
            let pair = bott_samelson_class(&ctx, word).and_then(|c| Ok((c, ck_schubert_class(&ctx, w)?)));
            match pair {
                Err(e) => Some(e.to_string()),
                Ok((c, h)) => describe(&ctx, &c, &h),
            }
        },
    )
}

/// `b -> -b`.
fn flip_beta(p: &Poly) -> Poly {
    specialize_beta(p, BetaValue::NegBeta)
}

/// The CK operator equals `phi` with the sign of `b` changed, and the
/// additive operator equals the divided difference.
pub fn operator_bridge(n: usize, opts: &Options) -> SuiteReport {
    let ck = FlagContext::ck(n);
    let ch = FlagContext::ch(n);
    let cases: Vec<usize> = (0..opts.samples).collect();
    run_cases(&format!("operator-bridge n={n}"), opts, &cases, |s| format!("sample {s}"), |&s| {
        let p = random_poly(opts.seed, s, n, true);
        let q = random_poly(opts.seed, s, n, false);
        for i in 1..n {
            let a = match operator_a_ck(&ck, i, &FlagClass::polynomial(p.clone())) {
                Ok(a) => a,
                Err(e) => return Some(e.to_string()),
            };
            let phi = flip_beta(&apply_phi(i, &flip_beta(&p)));
            if a.numerator() != &phi {
                return Some(format!("A_{i} on {p}: {} vs {phi}", a.numerator()));
            }
            let a = match operator_a(&ch, i, &FlagClass::polynomial(q.clone())) {
                Ok(a) => a,
                Err(e) => return Some(e.to_string()),
            };
            if a.numerator() != &apply_partial(i, &q) {
                return Some(format!("additive A_{i} on {q} differs from the divided difference"));
            }
        }
        None
    })
}

/// The multiplicative substitution `a11 = -b`, other generators zero.
fn multiplicative_point(p: &Poly) -> Poly {
    let bindings: BTreeMap<Var, Poly> = p
        .variables()
        .into_iter()
        .filter(|v| matches!(v, Var::Named(_)))
        .map(|v| {
            let value = if v == crate::fgl::lazard_generator(1, 1) { -Poly::beta() } else { Poly::int(0) };
            (v, value)
        })
        .collect();
    p.substitute(&bindings, false).expect("generator substitution")
}

fn law_checks(name: &str, cap: u32) -> Result<(), String> {
    let law = if name == "additive" { make_additive() } else { make_multiplicative() }.with_cap(cap);
    let report = verify_axioms(&law);
    if !report.passed() {
        return Err(format!("axioms: {report:?}"));
    }
    let t = crate::fgl::aux_trunc(cap);
    let u = Poly::var(Var::U);
    let chi = law.chi().map_err(|e| e.to_string())?;
    let back = law.apply(&u, chi.poly(), Some(t)).map_err(|e| e.to_string())?;
    if !back.is_zero() {
        return Err(format!("F(u, chi(u)) = {back}"));
    }
    let chi_v = chi.poly().rename(|v| if v == Var::U { Var::V } else { v });
    let lhs = law.series().substitute_truncated(&bind(Var::V, &chi_v), t).map_err(|e| e.to_string())?;
    let unit = law.cofactor().map_err(|e| e.to_string())?;
    let rhs = (&u - Poly::var(Var::V)).mul_truncated(unit.poly(), t);
    if lhs != rhs {
        return Err(format!("F(u, chi(v)) = {lhs} but (u - v) U = {rhs}"));
    }
    Ok(())
}

/// Axioms and inverse series for the additive and multiplicative laws at
/// `cap`, the cofactor factorization, and the low Lazard relations.
pub fn fgl_laws(cap: u32, opts: &Options) -> SuiteReport {
    #[derive(Debug)]
    enum Case {
        Law(&'static str),
        Lazard,
    }
    let cases = [Case::Law("additive"), Case::Law("multiplicative"), Case::Lazard];
    run_cases(&format!("fgl cap={cap}"), opts, &cases, |c| format!("{c:?}"), |c| match c {
        Case::Law(name) => law_checks(name, cap).err(),
        Case::Lazard => {
            let rels = lazard_relations(4);
            if rels.is_empty() {
                return Some("no relations at degree 4".into());
            }
            rels.iter().find_map(|r| {
                let v = multiplicative_point(r);
                (!v.is_zero()).then(|| format!("relation {r} is {v} at the multiplicative point"))
            })
        }
    })
}

/// The Whitney ratio `c(M) / c(M')` equals the closed-form factor multiset
/// with `n(n-1)/2` factors, for the additive, multiplicative and bundled
/// hyperbolic laws.
pub fn base_class(n: usize, opts: &Options) -> SuiteReport {
    let laws: Vec<(&str, FormalGroupLaw, Evaluation)> = vec![
        ("additive", make_additive(), Evaluation::Exact),
        ("multiplicative", make_multiplicative(), Evaluation::ck(default_ck_cap(n))),
        ("hyperbolic", hyperbolic_law(), Evaluation::total(hyperbolic_law().cap())),
    ];
    run_cases(&format!("base-class n={n}"), opts, &laws, |(name, _, _)| name.to_string(), |(_, law, eval)| {
        let ratio = whitney_m(n, law, *eval).and_then(|m| m.divide(&whitney_m_prime(n, law, *eval)?));
        let closed = closed_form_factors(n, law, *eval);
        match (ratio, closed) {
            (Ok(r), Ok(c)) => {
                if r.len() != n * (n - 1) / 2 {
                    Some(format!("{} factors", r.len()))
                } else {
                    (r != c).then(|| "ratio and closed form differ".to_string())
                }
            }
            (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
        }
    })
}

#[derive(Clone, Debug)]
enum EssentialCase {
    LongestFormula(usize),
    Embedding(Permutation),
    Sufficiency(Permutation),
}

/// The longest element's essential set, stability under inclusion for
/// `n <= n_embed`, and the rank shadow with `matrices` trials per `w` in
/// `S_{n_matrix}`.
pub fn essential(n_formula: usize, n_embed: usize, n_matrix: usize, matrices: usize, opts: &Options) -> SuiteReport {
    let mut cases: Vec<EssentialCase> = (2..=n_formula).map(EssentialCase::LongestFormula).collect();
    for n in 1..=n_embed {
        cases.extend(Permutation::all(n).into_iter().map(EssentialCase::Embedding));
    }
    cases.extend(Permutation::all(n_matrix).into_iter().map(EssentialCase::Sufficiency));
    run_cases(
        "essential",
        opts,
        &cases,
        |c| format!("{c:?}"),
        |c| match c {
            EssentialCase::LongestFormula(n) => {
                let got = essential_set(&longest_element(*n));
                let expected = (1..*n).map(|i| (i, n - i)).collect();
                (got != expected).then(|| format!("{got:?}"))
            }
            EssentialCase::Embedding(w) => (w.n()..=w.n() + 2).find_map(|m| {
                let e = essential_set(&w.embed(m).unwrap());
                (e != essential_set(w)).then(|| format!("differs in S_{m}: {e:?}"))
            }),
            EssentialCase::Sufficiency(w) => {
                let r = essential_sufficiency_check(w, matrices, opts.seed, Strategy::Sequential);
                r.counterexamples.first().map(|c| format!("trial {} matrix {}: {:?}", c.trial, c.matrix, c.violation))
            }
        },
    )
}

/// Names accepted by [`run_named`].
pub const SUITES: [&str; 6] = ["braid", "stability", "special", "bott-ch", "bott-ck", "essential"];

/// The named suite at size `n`, with the sizes the CLI uses.
pub fn run_named(name: &str, n: usize, opts: &Options) -> Option<SuiteReport> {
    Some(match name {
        "braid" => braid(n, opts),
        "stability" => stability(n, opts),
        "special" => special(n, opts),
        "bott-ch" => bott_ch(n, opts),
        "bott-ck" => bott_ck(n, None, opts),
        "essential" => essential(n, n, n.min(4), 200, opts),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> Options {
        Options { samples: 10, ..Options::default() }
    }

    #[test]
    fn suites_pass_small() {
        let o = quick();
        for r in [
            braid(4, &o),
            reduced_words(3, &o),
            stability(2, &o),
            special(3, &o),
            bott_ch(3, &o),
            bott_ck(3, None, &o),
            operator_bridge(3, &o),
            fgl_laws(6, &o),
            base_class(3, &o),
            essential(4, 3, 3, 20, &o),
        ] {
            assert!(r.passed(), "{r}");
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn random_poly_is_seeded() {
        assert_eq!(random_poly(1, 2, 3, true), random_poly(1, 2, 3, true));
        assert!((0..20).any(|k| random_poly(1, k, 3, true) != random_poly(2, k, 3, true)));
    }

    #[test]
    fn failures_are_reported_in_order() {
        let opts = Options { stop_at_first: false, ..quick() };
        let cases = [1, 2, 3, 4];
        let r = run_cases("t", &opts, &cases, |k| k.to_string(), |&k| (k % 2 == 0).then(|| "even".into()));
        assert_eq!(r.failures.iter().map(|f| f.case.as_str()).collect::<Vec<_>>(), ["2", "4"]);
        let r = run_cases("t", &quick(), &cases, |k| k.to_string(), |&k| (k % 2 == 0).then(|| "even".into()));
        assert_eq!((r.checked, r.failures.len()), (2, 1));
        assert!(r.to_string().starts_with("FAIL t: 2 cases"));
    }

    #[test]
    fn hyperbolic_law_is_a_law() {
        assert!(verify_axioms(&hyperbolic_law()).passed());
    }
}
