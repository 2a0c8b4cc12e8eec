use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// An indeterminate.
///
/// The derived ordering is the variable precedence used by the monomial
/// order: `x1 > x2 > ... > y1 > ... > z1 > ... > u > v > w > t > beta >`
/// named generators. A variable that sorts *earlier* has *higher* precedence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    X(u16),
    Y(u16),
    Z(u16),
    U,
    V,
    W,
    T,
    Beta,
    Named(u32),
}

/// Coarse classification of variables, used to decide which variables
/// count towards the degree of a truncated series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarClass {
    X,
    Y,
    Z,
    Aux,
    Coeff,
}

impl VarClass {
    pub(crate) fn bit(self) -> u8 {
        match self {
            VarClass::X => 1,
            VarClass::Y => 2,
            VarClass::Z => 4,
            VarClass::Aux => 8,
            VarClass::Coeff => 0,
        }
    }
}

/// Set of variable classes that carry degree. Coefficient variables
/// (beta and named generators) never do.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VarMask(u8);

impl VarMask {
    pub const NONE: VarMask = VarMask(0);
    pub const X: VarMask = VarMask(1);
    pub const Y: VarMask = VarMask(2);
    pub const Z: VarMask = VarMask(4);
    pub const AUX: VarMask = VarMask(8);
    pub const ALL: VarMask = VarMask(15);

    pub const fn union(self, other: VarMask) -> VarMask {
        VarMask(self.0 | other.0)
    }

    pub fn contains(self, var: Var) -> bool {
        self.0 & var.class().bit() != 0
    }
}

impl std::ops::BitOr for VarMask {
    type Output = VarMask;
    fn bitor(self, rhs: VarMask) -> VarMask {
        self.union(rhs)
    }
}

#[derive(Default)]
struct Interner {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

impl Var {
    pub fn x(i: usize) -> Var {
        Var::X(i as u16)
    }

    pub fn y(i: usize) -> Var {
        Var::Y(i as u16)
    }

    pub fn z(i: usize) -> Var {
        Var::Z(i as u16)
    }

    /// Interns a named coefficient generator such as `a1_2`.
    pub fn named(name: &str) -> Var {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Var::Named(id);
        }
        let mut guard = interner().write().unwrap();
        if let Some(&id) = guard.ids.get(name) {
            return Var::Named(id);
        }
        let id = guard.names.len() as u32;
        guard.names.push(name.to_string());
        guard.ids.insert(name.to_string(), id);
        Var::Named(id)
    }

    pub fn class(self) -> VarClass {
        match self {
            Var::X(_) => VarClass::X,
            Var::Y(_) => VarClass::Y,
            Var::Z(_) => VarClass::Z,
            Var::U | Var::V | Var::W | Var::T => VarClass::Aux,
            Var::Beta | Var::Named(_) => VarClass::Coeff,
        }
    }

    pub fn is_coefficient(self) -> bool {
        self.class() == VarClass::Coeff
    }

    /// Text name; beta prints as `b`.
    pub fn name(self) -> String {
        match self {
            Var::X(i) => format!("x{i}"),
            Var::Y(i) => format!("y{i}"),
            Var::Z(i) => format!("z{i}"),
            Var::U => "u".into(),
            Var::V => "v".into(),
            Var::W => "w".into(),
            Var::T => "t".into(),
            Var::Beta => "b".into(),
            Var::Named(id) => interner().read().unwrap().names[id as usize].clone(),
        }
    }

    /// Name used in the JSON variable registry; beta is `beta`.
    pub fn json_name(self) -> String {
        match self {
            Var::Beta => "beta".into(),
            v => v.name(),
        }
    }

    /// Parses a variable name. Unknown identifiers become named generators.
    pub fn parse(name: &str) -> Option<Var> {
        let indexed = |prefix: char| -> Option<u16> {
            let rest = name.strip_prefix(prefix)?;
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            rest.parse::<u16>().ok().filter(|&i| i >= 1)
        };
        if let Some(i) = indexed('x') {
            return Some(Var::X(i));
        }
        if let Some(i) = indexed('y') {
            return Some(Var::Y(i));
        }
        if let Some(i) = indexed('z') {
            return Some(Var::Z(i));
        }
        match name {
            "u" => Some(Var::U),
            "v" => Some(Var::V),
            "w" => Some(Var::W),
            "t" => Some(Var::T),
            "b" | "beta" => Some(Var::Beta),
            _ => {
                let mut chars = name.chars();
                let first = chars.next()?;
                if first.is_ascii_alphabetic() && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    Some(Var::named(name))
                } else {
                    None
                }
            }
        }
    }

    /// Comparison key for canonical printing: precedence order, with named
    /// generators sorted alphabetically rather than by interning order.
    pub(crate) fn print_key(self) -> (u8, u32, String) {
        match self {
            Var::X(i) => (0, i as u32, String::new()),
            Var::Y(i) => (1, i as u32, String::new()),
            Var::Z(i) => (2, i as u32, String::new()),
            Var::U => (3, 0, String::new()),
            Var::V => (4, 0, String::new()),
            Var::W => (5, 0, String::new()),
            Var::T => (6, 0, String::new()),
            Var::Beta => (7, 0, String::new()),
            Var::Named(_) => (8, 0, self.name()),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for v in [Var::x(3), Var::y(1), Var::z(12), Var::U, Var::T, Var::Beta, Var::named("a1_2")] {
            assert_eq!(Var::parse(&v.name()), Some(v));
        }
        assert_eq!(Var::parse("beta"), Some(Var::Beta));
        assert_eq!(Var::parse("x0"), Var::parse("x0"));
        assert!(matches!(Var::parse("x0"), Some(Var::Named(_))));
        assert_eq!(Var::parse("1x"), None);
    }

    #[test]
    fn precedence() {
        assert!(Var::x(1) < Var::x(2));
        assert!(Var::x(9) < Var::y(1));
        assert!(Var::y(9) < Var::Beta);
        assert!(Var::Beta < Var::named("c1"));
    }

    #[test]
    fn masks() {
        assert!(VarMask::ALL.contains(Var::x(1)));
        assert!(!VarMask::ALL.contains(Var::Beta));
        assert!(VarMask::Y.contains(Var::y(2)));
        assert!(!VarMask::Y.contains(Var::x(2)));
        assert!((VarMask::X | VarMask::Y).contains(Var::x(2)));
    }
}
