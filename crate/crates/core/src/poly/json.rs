use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{CoeffRing, Monomial, Poly, PolyError, Var};

/// One term in the JSON form; `exponents` is aligned with the registry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exponents: Vec<u32>,
}

/// JSON form of a polynomial: a variable registry header plus terms.
/// Beta appears in the registry as `beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: String,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub beta_offset: i32,
    pub terms: Vec<TermJson>,
}

fn is_zero(v: &i32) -> bool {
    *v == 0
}

impl Poly {
    pub fn to_json(&self) -> PolyJson {
        let mut vars = self.variables();
        vars.sort_by_key(|v| v.print_key());
        let terms = self
            .print_terms()
            .into_iter()
            .map(|(c, m, _)| TermJson {
                coeff: c.to_string(),
                exponents: vars.iter().map(|&v| m.exponent(v)).collect(),
            })
            .collect();
        PolyJson {
            ring: self.ring().to_string(),
            vars: vars.iter().map(|v| v.json_name()).collect(),
            beta_offset: self.beta_offset(),
            terms,
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Poly, PolyError> {
        let vars: Vec<Var> = j
            .vars
            .iter()
            .map(|name| Var::parse(name).ok_or_else(|| PolyError::Parse(format!("bad variable {name}"))))
            .collect::<Result<_, _>>()?;
        let has_beta = vars.contains(&Var::Beta) || j.beta_offset != 0;
        let named: Vec<(String, i32)> =
            vars.iter().filter(|v| matches!(v, Var::Named(_))).map(|v| (v.name(), 0)).collect();
        let ring = if j.beta_offset < 0 || j.ring.contains("1/b") {
            CoeffRing::IntegersBetaLaurent
        } else if has_beta {
            CoeffRing::IntegersBeta
        } else if !named.is_empty() {
            CoeffRing::named(named)
        } else {
            CoeffRing::Integers
        };
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exponents.len() != vars.len() {
                return Err(PolyError::Parse("exponent vector does not match registry".into()));
            }
            let coeff: BigInt = t.coeff.parse().map_err(|_| PolyError::Parse(format!("bad coefficient {}", t.coeff)))?;
            terms.push((Monomial::from_pairs(vars.iter().copied().zip(t.exponents.iter().copied())), coeff));
        }
        let p = Poly::from_terms(ring, terms)?;
        if j.beta_offset != 0 {
            return p.try_mul(&super::series::beta_power(j.beta_offset));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_header() {
        let p = Poly::x(1) + Poly::y(1) + Poly::beta() * Poly::x(1) * Poly::y(1);
        let j = p.to_json();
        assert_eq!(j.vars, vec!["x1", "y1", "beta"]);
        assert_eq!(j.terms.len(), 3);
        assert_eq!(j.terms[2], TermJson { coeff: "1".into(), exponents: vec![1, 1, 1] });
        let text = serde_json::to_string(&j).unwrap();
        let back: PolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Poly::from_json(&back).unwrap(), p);
    }

    #[test]
    fn zero_poly_json() {
        let j = Poly::int(0).to_json();
        assert!(j.terms.is_empty());
        assert!(Poly::from_json(&j).unwrap().is_zero());
    }
}
