//! Object and morphism terms, with an s-expression front end.

use super::sexpr::{read, SExpr, SExprError};
use crate::cat::SimpleId;
use std::fmt;
use thiserror::Error;

/// A group-element expression inside a term. `GradeOf` resolves to the
/// grade of an object term under the current variable assignment, which is
/// what diagrams like the twist target `phi(grade U) U` need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrpExpr {
    Elem(usize),
    GradeOf(Box<ObjTerm>),
    Inv(Box<GrpExpr>),
    Prod(Box<GrpExpr>, Box<GrpExpr>),
}

impl GrpExpr {
    pub fn grade_of(t: ObjTerm) -> Self {
        GrpExpr::GradeOf(Box::new(t))
    }
    pub fn inv(self) -> Self {
        GrpExpr::Inv(Box::new(self))
    }
    pub fn prod(self, other: GrpExpr) -> Self {
        GrpExpr::Prod(Box::new(self), Box::new(other))
    }
}

/// Object expressions: variables, the unit, named simples, monoidal
/// products, crossing and action images, duals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjTerm {
    Var(usize),
    Const(SimpleId),
    Unit,
    Star(Box<ObjTerm>, Box<ObjTerm>),
    Phi(GrpExpr, Box<ObjTerm>),
    Rho(GrpExpr, Box<ObjTerm>),
    Dual(Box<ObjTerm>),
}

impl ObjTerm {
    pub fn star(self, other: ObjTerm) -> ObjTerm {
        ObjTerm::Star(Box::new(self), Box::new(other))
    }
    pub fn phi(g: GrpExpr, inner: ObjTerm) -> ObjTerm {
        ObjTerm::Phi(g, Box::new(inner))
    }
    pub fn rho(g: GrpExpr, inner: ObjTerm) -> ObjTerm {
        ObjTerm::Rho(g, Box::new(inner))
    }
    pub fn dual(self) -> ObjTerm {
        ObjTerm::Dual(Box::new(self))
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            ObjTerm::Var(i) => Some(*i),
            ObjTerm::Const(_) | ObjTerm::Unit => None,
            ObjTerm::Star(a, b) => a.max_var().max(b.max_var()),
            ObjTerm::Phi(g, a) | ObjTerm::Rho(g, a) => grp_max_var(g).max(a.max_var()),
            ObjTerm::Dual(a) => a.max_var(),
        }
    }
}

fn grp_max_var(g: &GrpExpr) -> Option<usize> {
    match g {
        GrpExpr::Elem(_) => None,
        GrpExpr::GradeOf(t) => t.max_var(),
        GrpExpr::Inv(x) => grp_max_var(x),
        GrpExpr::Prod(x, y) => grp_max_var(x).max(grp_max_var(y)),
    }
}

/// Structural morphism terms. `Compose` is diagrammatic: first argument
/// first. Sources and targets are inferable from the leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorTerm {
    Id(ObjTerm),
    Assoc(ObjTerm, ObjTerm, ObjTerm),
    AssocInv(ObjTerm, ObjTerm, ObjTerm),
    LeftUnit(ObjTerm),
    RightUnit(ObjTerm),
    Braid(ObjTerm, ObjTerm),
    Twist(ObjTerm),
    Birth(ObjTerm),
    Death(ObjTerm),
    LaxC(GrpExpr, ObjTerm),
    LaxH(GrpExpr, ObjTerm),
    PairFlip(ObjTerm, ObjTerm),
    Compose(Box<MorTerm>, Box<MorTerm>),
    StarMor(Box<MorTerm>, Box<MorTerm>),
    PhiMor(GrpExpr, Box<MorTerm>),
    RhoMor(GrpExpr, Box<MorTerm>),
    DualMor(Box<MorTerm>),
    Inverse(Box<MorTerm>),
}

impl MorTerm {
    pub fn then(self, next: MorTerm) -> MorTerm {
        MorTerm::Compose(Box::new(self), Box::new(next))
    }
    pub fn star(self, other: MorTerm) -> MorTerm {
        MorTerm::StarMor(Box::new(self), Box::new(other))
    }
    pub fn inverse(self) -> MorTerm {
        MorTerm::Inverse(Box::new(self))
    }
    pub fn phi_mor(g: GrpExpr, inner: MorTerm) -> MorTerm {
        MorTerm::PhiMor(g, Box::new(inner))
    }
    pub fn rho_mor(g: GrpExpr, inner: MorTerm) -> MorTerm {
        MorTerm::RhoMor(g, Box::new(inner))
    }
    pub fn dual_mor(self) -> MorTerm {
        MorTerm::DualMor(Box::new(self))
    }

    /// Fold a nonempty list into a diagrammatic composite.
    pub fn chain(parts: Vec<MorTerm>) -> MorTerm {
        let mut it = parts.into_iter();
        let first = it.next().expect("chain of at least one morphism");
        it.fold(first, |acc, m| acc.then(m))
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            MorTerm::Id(t) | MorTerm::LeftUnit(t) | MorTerm::RightUnit(t)
            | MorTerm::Twist(t) | MorTerm::Birth(t) | MorTerm::Death(t) => t.max_var(),
            MorTerm::Assoc(a, b, c) | MorTerm::AssocInv(a, b, c) => {
                a.max_var().max(b.max_var()).max(c.max_var())
            }
            MorTerm::Braid(a, b) | MorTerm::PairFlip(a, b) => a.max_var().max(b.max_var()),
            MorTerm::LaxC(g, t) | MorTerm::LaxH(g, t) => grp_max_var(g).max(t.max_var()),
            MorTerm::Compose(f, g) | MorTerm::StarMor(f, g) => f.max_var().max(g.max_var()),
            MorTerm::PhiMor(g, f) | MorTerm::RhoMor(g, f) => grp_max_var(g).max(f.max_var()),
            MorTerm::DualMor(f) | MorTerm::Inverse(f) => f.max_var(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermParseError {
    #[error(transparent)]
    Lex(#[from] SExprError),
    #[error("unexpected token {0:?}")]
    Unexpected(String),
    #[error("unknown form {0:?}")]
    UnknownForm(String),
    #[error("{0} expects {1} arguments")]
    Arity(String, usize),
    #[error("unknown name {0:?}")]
    UnknownName(String),
}

/// Name resolution for the term front end: simple names, group element
/// names, and variable identifiers (bound in order of first appearance).
pub struct TermNames<'a> {
    pub simple: &'a dyn Fn(&str) -> Option<SimpleId>,
    pub pi_elem: &'a dyn Fn(&str) -> Option<usize>,
    pub g_elem: &'a dyn Fn(&str) -> Option<usize>,
}

struct Parser<'a> {
    names: &'a TermNames<'a>,
    vars: Vec<String>,
}

impl<'a> Parser<'a> {
    fn var(&mut self, name: &str) -> usize {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            i
        } else {
            self.vars.push(name.to_string());
            self.vars.len() - 1
        }
    }

    fn grp(&mut self, e: &SExpr, action: bool) -> Result<GrpExpr, TermParseError> {
        match e {
            SExpr::Atom(a) => {
                let lookup = if action { self.names.g_elem } else { self.names.pi_elem };
                lookup(a)
                    .map(GrpExpr::Elem)
                    .ok_or_else(|| TermParseError::UnknownName(a.clone()))
            }
            SExpr::List(items) => {
                let head = match items.first() {
                    Some(SExpr::Atom(h)) => h.as_str(),
                    _ => return Err(TermParseError::UnknownForm("()".into())),
                };
                match head {
                    "grade" if items.len() == 2 => {
                        Ok(GrpExpr::grade_of(self.obj(&items[1])?))
                    }
                    "inv" if items.len() == 2 => Ok(self.grp(&items[1], action)?.inv()),
                    "prod" if items.len() == 3 => {
                        Ok(self.grp(&items[1], action)?.prod(self.grp(&items[2], action)?))
                    }
                    other => Err(TermParseError::UnknownForm(other.into())),
                }
            }
        }
    }

    fn obj(&mut self, e: &SExpr) -> Result<ObjTerm, TermParseError> {
        match e {
            SExpr::Atom(a) => Ok(ObjTerm::Var(self.var(a))),
            SExpr::List(items) => {
                let head = match items.first() {
                    Some(SExpr::Atom(h)) => h.as_str(),
                    _ => return Err(TermParseError::UnknownForm("()".into())),
                };
                let arity = |n: usize| {
                    if items.len() == n + 1 {
                        Ok(())
                    } else {
                        Err(TermParseError::Arity(head.to_string(), n))
                    }
                };
                match head {
                    "unit" => {
                        arity(0)?;
                        Ok(ObjTerm::Unit)
                    }
                    "const" => {
                        arity(1)?;
                        let name = match &items[1] {
                            SExpr::Atom(a) => a,
                            _ => return Err(TermParseError::UnknownForm("const".into())),
                        };
                        (self.names.simple)(name)
                            .map(ObjTerm::Const)
                            .ok_or_else(|| TermParseError::UnknownName(name.clone()))
                    }
                    "star" => {
                        arity(2)?;
                        Ok(self.obj(&items[1])?.star(self.obj(&items[2])?))
                    }
                    "phi" => {
                        arity(2)?;
                        Ok(ObjTerm::phi(self.grp(&items[1], false)?, self.obj(&items[2])?))
                    }
                    "rho" => {
                        arity(2)?;
                        Ok(ObjTerm::rho(self.grp(&items[1], true)?, self.obj(&items[2])?))
                    }
                    "dual" => {
                        arity(1)?;
                        Ok(self.obj(&items[1])?.dual())
                    }
                    other => Err(TermParseError::UnknownForm(other.into())),
                }
            }
        }
    }

    fn mor(&mut self, e: &SExpr) -> Result<MorTerm, TermParseError> {
        let SExpr::List(items) = e else {
            return Err(TermParseError::Unexpected(format!("{e:?}")));
        };
        let head = match items.first() {
            Some(SExpr::Atom(h)) => h.as_str(),
            _ => return Err(TermParseError::UnknownForm("()".into())),
        };
        let arity = |n: usize| {
            if items.len() == n + 1 {
                Ok(())
            } else {
                Err(TermParseError::Arity(head.to_string(), n))
            }
        };
        match head {
            "id" => {
                arity(1)?;
                Ok(MorTerm::Id(self.obj(&items[1])?))
            }
            "assoc" => {
                arity(3)?;
                Ok(MorTerm::Assoc(self.obj(&items[1])?, self.obj(&items[2])?, self.obj(&items[3])?))
            }
            "assoc-inv" => {
                arity(3)?;
                Ok(MorTerm::AssocInv(self.obj(&items[1])?, self.obj(&items[2])?, self.obj(&items[3])?))
            }
            "lunit" => {
                arity(1)?;
                Ok(MorTerm::LeftUnit(self.obj(&items[1])?))
            }
            "runit" => {
                arity(1)?;
                Ok(MorTerm::RightUnit(self.obj(&items[1])?))
            }
            "braid" => {
                arity(2)?;
                Ok(MorTerm::Braid(self.obj(&items[1])?, self.obj(&items[2])?))
            }
            "twist" => {
                arity(1)?;
                Ok(MorTerm::Twist(self.obj(&items[1])?))
            }
            "birth" => {
                arity(1)?;
                Ok(MorTerm::Birth(self.obj(&items[1])?))
            }
            "death" => {
                arity(1)?;
                Ok(MorTerm::Death(self.obj(&items[1])?))
            }
            "lax-c" => {
                arity(2)?;
                Ok(MorTerm::LaxC(self.grp(&items[1], false)?, self.obj(&items[2])?))
            }
            "lax-h" => {
                arity(2)?;
                Ok(MorTerm::LaxH(self.grp(&items[1], true)?, self.obj(&items[2])?))
            }
            "pairflip" => {
                arity(2)?;
                Ok(MorTerm::PairFlip(self.obj(&items[1])?, self.obj(&items[2])?))
            }
            "compose" => {
                if items.len() < 3 {
                    return Err(TermParseError::Arity("compose".into(), 2));
                }
                let parts = items[1..]
                    .iter()
                    .map(|x| self.mor(x))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(MorTerm::chain(parts))
            }
            "star" => {
                arity(2)?;
                Ok(self.mor(&items[1])?.star(self.mor(&items[2])?))
            }
            "phi-mor" => {
                arity(2)?;
                Ok(MorTerm::phi_mor(self.grp(&items[1], false)?, self.mor(&items[2])?))
            }
            "rho-mor" => {
                arity(2)?;
                Ok(MorTerm::rho_mor(self.grp(&items[1], true)?, self.mor(&items[2])?))
            }
            "dual-mor" => {
                arity(1)?;
                Ok(self.mor(&items[1])?.dual_mor())
            }
            "inverse" => {
                arity(1)?;
                Ok(self.mor(&items[1])?.inverse())
            }
            other => Err(TermParseError::UnknownForm(other.into())),
        }
    }
}

/// Parse an object term like `(star (phi g x) (dual y))`.
pub fn parse_obj_term(s: &str, names: &TermNames) -> Result<ObjTerm, TermParseError> {
    let e = read(s)?;
    Parser { names, vars: Vec::new() }.obj(&e)
}

/// Parse a morphism term like
/// `(compose (braid x y) (star (twist (phi (grade x) y)) (id x)))`.
pub fn parse_mor_term(s: &str, names: &TermNames) -> Result<MorTerm, TermParseError> {
    let e = read(s)?;
    Parser { names, vars: Vec::new() }.mor(&e)
}

impl fmt::Display for ObjTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjTerm::Var(i) => write!(f, "v{i}"),
            ObjTerm::Const(a) => write!(f, "(const #{a})"),
            ObjTerm::Unit => write!(f, "(unit)"),
            ObjTerm::Star(a, b) => write!(f, "(star {a} {b})"),
            ObjTerm::Phi(g, a) => write!(f, "(phi {g:?} {a})"),
            ObjTerm::Rho(g, a) => write!(f, "(rho {g:?} {a})"),
            ObjTerm::Dual(a) => write!(f, "(dual {a})"),
        }
    }
}
