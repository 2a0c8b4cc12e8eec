use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::var::{Var, VarMask};

/// A power product, stored sparsely as `(var, exponent)` pairs sorted by
/// variable precedence with no zero exponents.
///
/// `Ord` is the pure lexicographic order with `x1 > x2 > ... > y1 > ...`;
/// the greatest monomial of a polynomial is its leading monomial for
/// exact division.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 6]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        let mut s = SmallVec::new();
        s.push((v, e));
        Monomial(s)
    }

    /// Builds from arbitrary pairs; repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut v: SmallVec<[(Var, u32); 6]> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(var, _)| var);
        let mut out: SmallVec<[(Var, u32); 6]> = SmallVec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match self.0.binary_search_by_key(&v, |&(var, _)| var) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Degree counting only variables in `mask`.
    pub fn degree_in(&self, mask: VarMask) -> u32 {
        self.0.iter().filter(|(v, _)| mask.contains(*v)).map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        let b = &other.0;
        for &(v, e) in &self.0 {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                match e.cmp(&b[j].1) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - b[j].1)),
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Splits off the variable `v`, returning its exponent and the rest.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        match self.0.binary_search_by_key(&v, |&(var, _)| var) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// Partitions into the part whose variables are in `mask` and the rest.
    pub fn split_mask(&self, mask: VarMask) -> (Monomial, Monomial) {
        let (inside, outside): (SmallVec<_>, SmallVec<_>) =
            self.0.iter().copied().partition(|(v, _)| mask.contains(*v));
        (Monomial(inside), Monomial(outside))
    }

    /// Partitions into coefficient variables (beta, named) and the rest.
    pub fn split_coefficient(&self) -> (Monomial, Monomial) {
        let (coeff, rest): (SmallVec<_>, SmallVec<_>) =
            self.0.iter().copied().partition(|(v, _)| v.is_coefficient());
        (Monomial(coeff), Monomial(rest))
    }

    /// Applies a variable renaming; the map must be injective on the
    /// variables present.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }

    /// Comparison used for canonical printing: ascending total degree,
    /// then descending lexicographic order.
    pub fn print_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            let key = |m: &Monomial| {
                let mut k: Vec<_> = m.0.iter().map(|&(v, e)| (v.print_key(), e)).collect();
                k.sort();
                k
            };
            let (a, b) = (key(self), key(other));
            // Greater in lex order prints first.
            lex_cmp_keys(&a, &b).reverse()
        })
    }
}

fn lex_cmp_keys<K: Ord>(a: &[(K, u32)], b: &[(K, u32)]) -> Ordering {
    for (pa, pb) in a.iter().zip(b.iter()) {
        match pa.0.cmp(&pb.0) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => match pa.1.cmp(&pb.1) {
                Ordering::Equal => continue,
                o => return o,
            },
        }
    }
    a.len().cmp(&b.len())
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp_keys(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut pairs: Vec<_> = self.0.to_vec();
        // Coefficient symbols lead: `b*x1*y1`.
        pairs.sort_by_key(|&(v, _)| (!v.is_coefficient(), v.print_key()));
        for (k, (v, e)) in pairs.into_iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(Var, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn lex_order() {
        let x1 = m(&[(Var::x(1), 1)]);
        let x2 = m(&[(Var::x(2), 1)]);
        let x2sq = m(&[(Var::x(2), 5)]);
        let x1x2 = m(&[(Var::x(1), 1), (Var::x(2), 1)]);
        assert!(x1 > x2);
        assert!(x1 > x2sq);
        assert!(x1x2 > x1);
        assert!(Monomial::one() < x2);
    }

    #[test]
    fn mul_div() {
        let a = m(&[(Var::x(1), 2), (Var::y(1), 1)]);
        let b = m(&[(Var::x(1), 1), (Var::Beta, 1)]);
        let p = a.mul(&b);
        assert_eq!(p.exponent(Var::x(1)), 3);
        assert_eq!(p.div(&b), Some(a.clone()));
        assert_eq!(a.div(&b), None);
        assert_eq!(p.total_degree(), 5);
        assert_eq!(p.degree_in(VarMask::X), 3);
    }

    #[test]
    fn printing_order() {
        let x1sq = m(&[(Var::x(1), 2)]);
        let x1y1 = m(&[(Var::x(1), 1), (Var::y(1), 1)]);
        let y1sq = m(&[(Var::y(1), 2)]);
        let x1 = m(&[(Var::x(1), 1)]);
        assert_eq!(x1sq.print_cmp(&x1y1), Ordering::Less);
        assert_eq!(x1y1.print_cmp(&y1sq), Ordering::Less);
        assert_eq!(x1.print_cmp(&x1sq), Ordering::Less);
        assert_eq!(format!("{}", m(&[(Var::Beta, 1), (Var::x(1), 1), (Var::y(1), 1)])), "b*x1*y1");
    }
}
