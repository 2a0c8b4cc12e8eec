use serde::Serialize;

use super::{aux_trunc, bind, FormalGroupLaw, SERIES_MASK};
use crate::poly::{Poly, PolyError, Var};

/// Outcome of one axiom; on failure, the first offending coefficient in
/// canonical order as `(monomial, coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub offender: Option<(String, String)>,
}

impl AxiomCheck {
    fn from_defect(name: &'static str, defect: &Poly) -> AxiomCheck {
        let offender = defect
            .coefficients_in(SERIES_MASK)
            .into_iter()
            .min_by(|a, b| a.0.print_cmp(&b.0))
            .map(|(m, c)| (m.to_string(), c.to_string()));
        AxiomCheck { name, passed: offender.is_none(), offender }
    }

    fn skipped(name: &'static str, why: String) -> AxiomCheck {
        AxiomCheck { name, passed: false, offender: Some(("-".into(), why)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub cap: u32,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Unit, commutativity and associativity up to the cap, plus
/// `F(u, chi(u)) = 0` when the unit axiom holds.
pub fn verify_axioms(f: &FormalGroupLaw) -> AxiomReport {
    let t = aux_trunc(f.cap());
    let (u, v, w) = (Poly::var(Var::U), Poly::var(Var::V), Poly::var(Var::W));
    let zero = Poly::int(0);
    let subs = |p: &Poly, a: &Poly, b: &Poly| -> Result<Poly, PolyError> {
        let mut m = bind(Var::U, a);
        m.insert(Var::V, b.clone());
        p.substitute_truncated(&m, t)
    };
    let series = f.series();
    let run = || -> Result<Vec<AxiomCheck>, PolyError> {
        let left0 = subs(series, &u, &zero)?.try_sub(&u)?;
        let right0 = subs(series, &zero, &v)?.try_sub(&v)?;
        let unit = AxiomCheck::from_defect("unit", if left0.is_zero() { &right0 } else { &left0 });
        let comm = AxiomCheck::from_defect("commutativity", &series.try_sub(&subs(series, &v, &u)?)?);
        let fvw = subs(series, &v, &w)?;
        let fuv = subs(series, &u, &v)?;
        let assoc_defect = subs(series, &u, &fvw)?.try_sub(&subs(series, &fuv, &w)?)?;
        let assoc = AxiomCheck::from_defect("associativity", &assoc_defect);
        let inverse = if unit.passed {
            match f.chi() {
                Ok(chi) => AxiomCheck::from_defect("inverse", &subs(series, &u, chi.poly())?),
                Err(e) => AxiomCheck::skipped("inverse", e.to_string()),
            }
        } else {
            AxiomCheck::skipped("inverse", "unit axiom fails".into())
        };
        Ok(vec![unit, comm, assoc, inverse])
    };
    let checks = run().unwrap_or_else(|e| vec![AxiomCheck::skipped("arithmetic", e.to_string())]);
    AxiomReport { cap: f.cap(), checks }
}
