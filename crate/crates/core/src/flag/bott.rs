use std::collections::BTreeMap;

use super::{FlagClass, FlagContext, FlagError, Mode};
use crate::chern::{bott_base_class, Evaluation};
use crate::fgl::LawKind;
use crate::perm::Permutation;
use crate::poly::{Poly, Var};
use crate::schubert::{apply_partial, double_poly, specialize_beta, BetaValue, Family};

/// The class of the point-like Schubert variety, `prod_{k+l<=n} F(x_k, chi(y_l))`.
pub fn base_class(ctx: &FlagContext) -> Result<FlagClass, FlagError> {
    let n = ctx.n();
    match ctx.mode() {
        Mode::Ch => Ok(FlagClass::polynomial(bott_base_class(n, ctx.law(), Evaluation::Exact)?)),
        Mode::Ck => {
            // F(x, chi(y)) = (x - y) / (1 - b y) for the multiplicative law.
            let mut num = Poly::int(1);
            let mut denom = vec![0u32; n];
            for k in 1..n {
                for l in 1..=n - k {
                    num = num * (Poly::x(k) - Poly::y(l));
                    denom[l - 1] += 1;
                }
            }
            Ok(FlagClass::rational(num, denom))
        }
        Mode::Fgl => {
            let precision = series_precision(ctx);
            let p = bott_base_class(n, ctx.law(), Evaluation::total(precision))?;
            Ok(FlagClass::series(p, precision))
        }
    }
}

/// How far the law's own coefficients reach.
fn series_precision(ctx: &FlagContext) -> u32 {
    if ctx.law().is_polynomial() {
        ctx.cap()
    } else {
        ctx.cap().min(ctx.law().cap())
    }
}

/// `A_i f = (g - sigma_i g) / (x_i - x_{i+1})` with `g = f U^{-1}(x_i, x_{i+1})`.
pub fn operator_a(ctx: &FlagContext, i: usize, f: &FlagClass) -> Result<FlagClass, FlagError> {
    ctx.check_index(i)?;
    match ctx.mode() {
        Mode::Ch => Ok(f.with_numerator(apply_partial(i, f.numerator()))),
        Mode::Ck => operator_a_ck(ctx, i, f),
        Mode::Fgl => {
            let prec = f.precision().unwrap_or(ctx.cap());
            let uinv = ctx.law().cofactor_inverse()?;
            let exact = matches!(ctx.law().kind(), LawKind::Additive | LawKind::Multiplicative);
            let g_prec = if exact { prec } else { prec.min(uinv.cap()) };
            let t = ctx.series_truncation(g_prec);
            let mut b = BTreeMap::new();
            b.insert(Var::U, Poly::x(i));
            b.insert(Var::V, Poly::x(i + 1));
            let w = uinv.poly().substitute_truncated(&b, t).map_err(crate::fgl::FglError::from)?;
            let g = f.numerator().mul_truncated(&w, t);
            let num = (&g - &g.swap_vars(i))
                .div_by_difference(Var::x(i), Var::x(i + 1))
                .unwrap_or_else(|e| panic!("antisymmetric numerator not divisible: {e}"));
            Ok(FlagClass::series(num, g_prec.saturating_sub(1)))
        }
    }
}

/// `((1 - b x_{i+1}) f - (1 - b x_i) sigma_i f) / (x_i - x_{i+1})`.
pub fn operator_a_ck(ctx: &FlagContext, i: usize, f: &FlagClass) -> Result<FlagClass, FlagError> {
    ctx.require(Mode::Ck)?;
    ctx.check_index(i)?;
    let one = Poly::int(1);
    let b = Poly::beta();
    let p = f.numerator();
    let num = (&one - &b * Poly::x(i + 1)) * p - (&one - &b * Poly::x(i)) * p.swap_vars(i);
    let num = num
        .div_by_difference(Var::x(i), Var::x(i + 1))
        .unwrap_or_else(|e| panic!("antisymmetric numerator not divisible: {e}"));
    Ok(f.with_numerator(num))
}

/// `A_{i_l} ... A_{i_1}` applied to the base class; the first letter acts
/// first.
pub fn bott_samelson_class(ctx: &FlagContext, word: &[usize]) -> Result<FlagClass, FlagError> {
    word.iter().try_fold(base_class(ctx)?, |c, &i| operator_a(ctx, i, &c))
}

/// `p(y_j := -y_j / (1 - b y_j))` as `(numerator, d)` over `(1 - b y_j)^d`,
/// where `d` is the `y_j`-degree of `p`.
pub fn rational_chi(p: &Poly, j: usize) -> (Poly, u32) {
    let v = Var::y(j);
    let d = p.degree_of(v);
    if d == 0 {
        return (p.clone(), 0);
    }
    let mut by_power: BTreeMap<u32, Vec<_>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (e, rest) = m.split(v);
        by_power.entry(e).or_default().push((rest, c.clone()));
    }
    let s = Poly::int(1) - Poly::beta() * Poly::y(j);
    let mut out = Poly::zero(p.ring().clone());
    for (e, terms) in by_power {
        let coeff = Poly::from_terms(p.ring().clone(), terms).expect("terms from a valid polynomial");
        out = out + coeff * (-Poly::y(j)).pow(e) * s.pow(d - e);
    }
    (out.simplify_ring(), d)
}

/// `H^{(-b)}_w(x, chi(y))` for the multiplicative law, exactly.
pub fn ck_schubert_class(ctx: &FlagContext, w: &Permutation) -> Result<FlagClass, FlagError> {
    ctx.require(Mode::Ck)?;
    if w.n() != ctx.n() {
        return Err(FlagError::PermSize { perm: w.to_string(), n: ctx.n() });
    }
    let mut num = specialize_beta(&double_poly(Family::Beta, w), BetaValue::NegBeta);
    let mut denom = vec![0u32; ctx.n()];
    for (j, slot) in denom.iter_mut().enumerate() {
        let (p, d) = rational_chi(&num, j + 1);
        num = p;
        *slot = d;
    }
    Ok(FlagClass::rational(num, denom))
}

/// The class obtained by substituting `x_i := roots[i-1]`, as along a
/// section of the flag bundle. A CK denominator only involves `y`; it is
/// expanded up to the context cap.
pub fn pullback_to_base(ctx: &FlagContext, c: &FlagClass, roots: &[Poly]) -> Result<Poly, FlagError> {
    if roots.len() != ctx.n() {
        return Err(FlagError::RootCount { expected: ctx.n(), got: roots.len() });
    }
    let b: BTreeMap<Var, Poly> = roots.iter().enumerate().map(|(k, r)| (Var::x(k + 1), r.clone())).collect();
    let num = match c.precision() {
        Some(p) => c.numerator().substitute_truncated(&b, ctx.series_truncation(p)),
        None => c.numerator().substitute(&b, false),
    }
    .map_err(crate::fgl::FglError::from)?;
    Ok(c.with_numerator(num).expanded(ctx.cap()))
}

#[cfg(test)]
mod tests {
    use super::super::class_eq;
    use super::*;
    use crate::fgl::make_multiplicative;
    use crate::perm::{compose, longest_element, reduced_word};
    use crate::poly::parse_poly;

    #[test]
    fn ch_bott_samelson_is_schubert() {
        let ctx = FlagContext::ch(3);
        let w0 = longest_element(3);
        for w in Permutation::all(3) {
            let v = compose(&w0, &w).unwrap();
            let c = bott_samelson_class(&ctx, reduced_word(&v).word()).unwrap();
            assert_eq!(c.numerator(), &double_poly(Family::Schubert, &w), "{w}");
        }
    }

    #[test]
    fn ck_bott_samelson_matches() {
        for n in 2..=3 {
            let ctx = FlagContext::ck(n);
            let w0 = longest_element(n);
            for w in Permutation::all(n) {
                let v = compose(&w0, &w).unwrap();
                let c = bott_samelson_class(&ctx, reduced_word(&v).word()).unwrap();
                assert!(class_eq(&ctx, &c, &ck_schubert_class(&ctx, &w).unwrap()), "{w}");
            }
        }
    }

    #[test]
    fn ck_base_class_matches_kernel() {
        let ctx = FlagContext::ck(3);
        let cap = 6;
        let from_kernel = bott_base_class(3, &make_multiplicative(), Evaluation::ck(cap)).unwrap();
        assert_eq!(base_class(&ctx).unwrap().expanded(cap), from_kernel);
    }

    #[test]
    fn fgl_multiplicative_agrees_with_ck() {
        let n = 3;
        let fgl = FlagContext::fgl(n, make_multiplicative(), Some(7));
        let ck = FlagContext::ck(n);
        let word = [1, 2, 1];
        let a = bott_samelson_class(&fgl, &word).unwrap();
        let b = bott_samelson_class(&ck, &word).unwrap();
        let prec = a.precision().unwrap();
        assert_eq!(prec, 4);
        let t = fgl.series_truncation(prec);
        assert_eq!(a.numerator().truncate(t), b.expanded(prec).truncate(t));
    }

    #[test]
    fn rational_chi_example() {
        let (p, d) = rational_chi(&parse_poly("x1 + y1").unwrap(), 1);
        assert_eq!(d, 1);
        assert_eq!(p, parse_poly("x1 - b*x1*y1 - y1").unwrap());
    }

    #[test]
    fn pullbacks() {
        let ctx = FlagContext::ch(2);
        let base = base_class(&ctx).unwrap();
        assert_eq!(pullback_to_base(&ctx, &base, &[Poly::y(1), Poly::y(2)]).unwrap(), Poly::int(0));
        let z = [Poly::var(Var::z(1)), Poly::var(Var::z(2))];
        assert_eq!(pullback_to_base(&ctx, &base, &z).unwrap(), parse_poly("z1 - y1").unwrap());
        assert_eq!(pullback_to_base(&ctx, &FlagClass::polynomial(Poly::int(1)), &z).unwrap(), Poly::int(1));
        let ck = FlagContext::ck(2);
        let p = pullback_to_base(&ck, &base_class(&ck).unwrap(), &z).unwrap();
        let expected = parse_poly("(z1 - y1)*(1 + b*y1 + b^2*y1^2 + b^3*y1^3 + b^4*y1^4)").unwrap();
        assert_eq!(p, expected.truncate(crate::poly::Truncation::new(4, crate::poly::VarMask::Y)));
    }

    #[test]
    fn operator_examples() {
        let ck = FlagContext::ck(2);
        let one = FlagClass::polynomial(Poly::int(1));
        assert_eq!(operator_a_ck(&ck, 1, &one).unwrap().numerator(), &Poly::beta());
        let x1 = FlagClass::polynomial(Poly::x(1));
        assert_eq!(operator_a_ck(&ck, 1, &x1).unwrap().numerator(), &Poly::int(1));
        let ch = FlagContext::ch(2);
        assert_eq!(bott_samelson_class(&ch, &[]).unwrap().numerator(), &parse_poly("x1 - y1").unwrap());
        assert_eq!(bott_samelson_class(&ch, &[1]).unwrap().numerator(), &Poly::int(1));
        let ck3 = FlagContext::ck(3);
        let top = bott_samelson_class(&ck3, &[1, 2, 1]).unwrap();
        assert!(super::super::class_eq(&ck3, &top, &FlagClass::polynomial(Poly::int(1))));
        let w0 = ck_schubert_class(&ck, &"[2,1]".parse().unwrap()).unwrap();
        assert_eq!(w0, FlagClass::rational(parse_poly("x1 - y1").unwrap(), vec![1]));
        assert_eq!(ck_schubert_class(&ck, &Permutation::identity(2)).unwrap().numerator(), &Poly::int(1));
    }

    #[test]
    fn bad_inputs() {
        let ctx = FlagContext::ch(3);
        assert!(operator_a(&ctx, 3, &base_class(&ctx).unwrap()).is_err());
        assert!(ck_schubert_class(&ctx, &Permutation::identity(3)).is_err());
        assert!(pullback_to_base(&ctx, &base_class(&ctx).unwrap(), &[Poly::y(1)]).is_err());
    }
}
