//! Evaluation of object and morphism terms to exact block matrices.
//!
//! Every concrete object term denotes a multiplicity vector together with
//! a canonical basis of its hom spaces, built recursively: `Star` bases
//! are lexicographic over (left simple, right simple, left copy, right
//! copy, fusion path); `Phi`, `Rho` and `Dual` bases are relabels of the
//! inner basis. Normal forms flatten a term to a net action element plus a
//! list of atoms (crossed simples and dual blocks); the accompanying
//! matrix is the canonical coherence glue into the left-comb basis over
//! the atoms, assembled from associators, unitors and the crossing's
//! monoidality components.

use crate::cat::{CatError, ObjectExpr, SimpleId};
use crate::group::GrpElem;
use crate::linalg::{Mat, MatError};
use crate::scalar::{Scalar, ScalarError};
use crate::structure::{BundleError, StructureBundle};
use std::collections::BTreeMap;
use thiserror::Error;

use super::term::{GrpExpr, MorTerm, ObjTerm};
use crate::cat::Morphism;

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("variable {0} has no assignment")]
    UnboundVar(usize),
    #[error("endpoint mismatch: {0}")]
    Endpoints(String),
    #[error("unsupported term: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

type Result<T> = std::result::Result<T, DiagramError>;

/// A term with variables and grade expressions resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CObj {
    Simple(SimpleId),
    Unit,
    Star(Box<CObj>, Box<CObj>),
    Phi(GrpElem, Box<CObj>),
    Rho(GrpElem, Box<CObj>),
    Dual(Box<CObj>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CMor {
    Id(CObj),
    Assoc(CObj, CObj, CObj),
    AssocInv(CObj, CObj, CObj),
    LeftUnit(CObj),
    RightUnit(CObj),
    Braid(CObj, CObj),
    Twist(CObj),
    Birth(CObj),
    Death(CObj),
    LaxC(GrpElem, CObj),
    LaxH(GrpElem, CObj),
    PairFlip(CObj, CObj),
    Compose(Box<CMor>, Box<CMor>),
    StarMor(Box<CMor>, Box<CMor>),
    PhiMor(GrpElem, Box<CMor>),
    RhoMor(GrpElem, Box<CMor>),
    DualMor(Box<CMor>),
    Inverse(Box<CMor>),
}

/// Flattened shape of a term: a net action element and a list of atoms.
/// Two terms denote canonically isomorphic based objects exactly when
/// their normal forms agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub rho: GrpElem,
    pub atoms: Vec<Atom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub phi: GrpElem,
    pub core: AtomCore,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomCore {
    Simple(SimpleId),
    Dual(Box<NormalForm>),
}

pub struct EvalContext<'a, S> {
    pub bundle: &'a StructureBundle<S>,
}

/// One basis slot of a `Star` layout: (left simple, right simple, left
/// copy, right copy, fusion path index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct StarEntry {
    a: SimpleId,
    b: SimpleId,
    i: usize,
    j: usize,
    mu: usize,
}

struct StarLayout {
    obj: ObjectExpr,
    entries: BTreeMap<SimpleId, Vec<StarEntry>>,
    index: BTreeMap<(SimpleId, StarEntry), usize>,
}

impl<'a, S: Scalar> EvalContext<'a, S> {
    pub fn new(bundle: &'a StructureBundle<S>) -> Self {
        EvalContext { bundle }
    }

    fn pi(&self) -> &crate::group::GroupTable {
        self.bundle.pi()
    }

    // ---- term resolution ----------------------------------------------

    pub fn resolve_obj(&self, t: &ObjTerm, assignment: &[SimpleId]) -> Result<CObj> {
        Ok(match t {
            ObjTerm::Var(i) => CObj::Simple(
                *assignment.get(*i).ok_or(DiagramError::UnboundVar(*i))?,
            ),
            ObjTerm::Const(a) => CObj::Simple(*a),
            ObjTerm::Unit => CObj::Unit,
            ObjTerm::Star(x, y) => CObj::Star(
                Box::new(self.resolve_obj(x, assignment)?),
                Box::new(self.resolve_obj(y, assignment)?),
            ),
            ObjTerm::Phi(g, x) => CObj::Phi(
                self.resolve_grp(g, assignment, false)?,
                Box::new(self.resolve_obj(x, assignment)?),
            ),
            ObjTerm::Rho(g, x) => CObj::Rho(
                self.resolve_grp(g, assignment, true)?,
                Box::new(self.resolve_obj(x, assignment)?),
            ),
            ObjTerm::Dual(x) => CObj::Dual(Box::new(self.resolve_obj(x, assignment)?)),
        })
    }

    fn resolve_grp(&self, g: &GrpExpr, assignment: &[SimpleId], action: bool) -> Result<GrpElem> {
        Ok(match g {
            GrpExpr::Elem(e) => *e,
            GrpExpr::GradeOf(t) => {
                let obj = self.denote(&self.resolve_obj(t, assignment)?)?;
                obj.grade
            }
            GrpExpr::Inv(x) => {
                let v = self.resolve_grp(x, assignment, action)?;
                if action {
                    self.bundle.g_action()?.group.inv(v)
                } else {
                    self.pi().inv(v)
                }
            }
            GrpExpr::Prod(x, y) => {
                let a = self.resolve_grp(x, assignment, action)?;
                let b = self.resolve_grp(y, assignment, action)?;
                if action {
                    self.bundle.g_action()?.group.mul(a, b)
                } else {
                    self.pi().mul(a, b)
                }
            }
        })
    }

    pub fn resolve_mor(&self, t: &MorTerm, assignment: &[SimpleId]) -> Result<CMor> {
        let o = |x: &ObjTerm| self.resolve_obj(x, assignment);
        Ok(match t {
            MorTerm::Id(x) => CMor::Id(o(x)?),
            MorTerm::Assoc(x, y, z) => CMor::Assoc(o(x)?, o(y)?, o(z)?),
            MorTerm::AssocInv(x, y, z) => CMor::AssocInv(o(x)?, o(y)?, o(z)?),
            MorTerm::LeftUnit(x) => CMor::LeftUnit(o(x)?),
            MorTerm::RightUnit(x) => CMor::RightUnit(o(x)?),
            MorTerm::Braid(x, y) => CMor::Braid(o(x)?, o(y)?),
            MorTerm::Twist(x) => CMor::Twist(o(x)?),
            MorTerm::Birth(x) => CMor::Birth(o(x)?),
            MorTerm::Death(x) => CMor::Death(o(x)?),
            MorTerm::LaxC(g, x) => CMor::LaxC(self.resolve_grp(g, assignment, false)?, o(x)?),
            MorTerm::LaxH(g, x) => CMor::LaxH(self.resolve_grp(g, assignment, true)?, o(x)?),
            MorTerm::PairFlip(x, y) => CMor::PairFlip(o(x)?, o(y)?),
            MorTerm::Compose(f, g) => CMor::Compose(
                Box::new(self.resolve_mor(f, assignment)?),
                Box::new(self.resolve_mor(g, assignment)?),
            ),
            MorTerm::StarMor(f, g) => CMor::StarMor(
                Box::new(self.resolve_mor(f, assignment)?),
                Box::new(self.resolve_mor(g, assignment)?),
            ),
            MorTerm::PhiMor(g, f) => CMor::PhiMor(
                self.resolve_grp(g, assignment, false)?,
                Box::new(self.resolve_mor(f, assignment)?),
            ),
            MorTerm::RhoMor(g, f) => CMor::RhoMor(
                self.resolve_grp(g, assignment, true)?,
                Box::new(self.resolve_mor(f, assignment)?),
            ),
            MorTerm::DualMor(f) => CMor::DualMor(Box::new(self.resolve_mor(f, assignment)?)),
            MorTerm::Inverse(f) => CMor::Inverse(Box::new(self.resolve_mor(f, assignment)?)),
        })
    }

    // ---- denotations ---------------------------------------------------

    /// The multiplicity vector of a concrete object term.
    pub fn denote(&self, t: &CObj) -> Result<ObjectExpr> {
        Ok(match t {
            CObj::Simple(a) => self.bundle.cat.simple_object(*a),
            CObj::Unit => self.bundle.unit_obj(),
            CObj::Star(x, y) => self.bundle.star(&self.denote(x)?, &self.denote(y)?),
            CObj::Phi(g, x) => self.bundle.sigma_obj(*g, &self.denote(x)?),
            CObj::Rho(g, x) => self.bundle.rho_obj(*g, &self.denote(x)?)?,
            CObj::Dual(x) => self.bundle.dual_obj(&self.denote(x)?)?,
        })
    }

    fn star_layout(&self, x: &ObjectExpr, y: &ObjectExpr) -> StarLayout {
        let obj = self.bundle.star(x, y);
        let mut entries: BTreeMap<SimpleId, Vec<StarEntry>> = BTreeMap::new();
        for (&a, &ma) in &x.mult {
            for (&b, &mb) in &y.mult {
                for c in 0..self.bundle.cat.simple_count() {
                    let n = self.bundle.n(a, b, c);
                    if n == 0 {
                        continue;
                    }
                    let list = entries.entry(c).or_default();
                    for i in 0..ma {
                        for j in 0..mb {
                            for mu in 0..n {
                                list.push(StarEntry { a, b, i, j, mu });
                            }
                        }
                    }
                }
            }
        }
        // canonical order: lex in (a, b, i, j, mu)
        let mut index = BTreeMap::new();
        for (c, list) in entries.iter_mut() {
            list.sort();
            for (pos, e) in list.iter().enumerate() {
                index.insert((*c, *e), pos);
            }
        }
        StarLayout { obj, entries, index }
    }

    // ---- relabels ------------------------------------------------------

    fn relabel_obj(&self, x: &ObjectExpr, map: &dyn Fn(SimpleId) -> SimpleId, grade: GrpElem) -> ObjectExpr {
        ObjectExpr { grade, mult: x.mult.iter().map(|(&a, &m)| (map(a), m)).collect() }
    }

    fn relabel_mor(
        &self,
        m: &Morphism<S>,
        map: &dyn Fn(SimpleId) -> SimpleId,
        src_grade: GrpElem,
        tgt_grade: GrpElem,
    ) -> Morphism<S> {
        Morphism {
            source: self.relabel_obj(&m.source, map, src_grade),
            target: self.relabel_obj(&m.target, map, tgt_grade),
            blocks: m.blocks.iter().map(|(&a, blk)| (map(a), blk.clone())).collect(),
        }
    }

    // ---- structural leaf matrices ---------------------------------------

    /// Identity in the term basis (any basis: identity blocks).
    fn id_mat(&self, x: &ObjectExpr) -> Morphism<S> {
        Morphism::identity(x)
    }

    /// a_{X,Y,Z}: (X*Y)*Z -> X*(Y*Z) assembled from F symbols.
    fn assoc_mat(&self, x: &ObjectExpr, y: &ObjectExpr, z: &ObjectExpr) -> Result<Morphism<S>> {
        let b = self.bundle;
        let n = |a, b2, c| b.n(a, b2, c);
        let lxy = self.star_layout(x, y);
        let lsrc = self.star_layout(&lxy.obj, z);
        let lyz = self.star_layout(y, z);
        let ltgt = self.star_layout(x, &lyz.obj);
        let mut blocks = BTreeMap::new();
        for (&d, src_entries) in &lsrc.entries {
            let rows = ltgt.entries.get(&d).map(|v| v.len()).unwrap_or(0);
            let mut blk: Mat<S> = Mat::zero(rows, src_entries.len());
            for (col, se) in src_entries.iter().enumerate() {
                // se: (e, c, s, k, kappa) with s indexing (X*Y)_e
                let (e, zc, s, k, kappa) = (se.a, se.b, se.i, se.j, se.mu);
                let inner = lxy.entries[&e][s];
                let (a, yb, i, j, mu) = (inner.a, inner.b, inner.i, inner.j, inner.mu);
                let f = b.f_mat(a, yb, zc, d)?;
                // column index of the left path (e, mu, kappa)
                let mut colpath = 0;
                for ep in 0..e {
                    colpath += n(a, yb, ep) * n(ep, zc, d);
                }
                colpath += mu * n(e, zc, d) + kappa;
                // expand over right paths (fch, nu, lambda)
                let mut rowpath = 0;
                for fch in 0..b.cat.simple_count() {
                    let nf = n(yb, zc, fch);
                    let nafd = n(a, fch, d);
                    for nu in 0..nf {
                        for lambda in 0..nafd {
                            let coeff = f[(rowpath, colpath)].clone();
                            rowpath += 1;
                            if coeff.is_zero() {
                                continue;
                            }
                            let t = lyz.index[&(fch, StarEntry { a: yb, b: zc, i: j, j: k, mu: nu })];
                            let row = ltgt.index[&(d, StarEntry { a, b: fch, i, j: t, mu: lambda })];
                            blk[(row, col)] = blk[(row, col)].add(&coeff);
                        }
                    }
                }
            }
            blocks.insert(d, blk);
        }
        Ok(Morphism { source: lsrc.obj.clone(), target: ltgt.obj.clone(), blocks })
    }

    /// l_X: 1*X -> X, the unit scalar per simple.
    fn left_unit_mat(&self, x: &ObjectExpr) -> Result<Morphism<S>> {
        let unit = self.bundle.unit_obj();
        let lsrc = self.star_layout(&unit, x);
        let mut blocks = BTreeMap::new();
        for (&c, entries) in &lsrc.entries {
            let rows = x.multiplicity(c);
            let mut blk: Mat<S> = Mat::zero(rows, entries.len());
            for (col, e) in entries.iter().enumerate() {
                debug_assert_eq!(e.a, self.bundle.unit());
                blk[(e.j, col)] = self.bundle.assoc.l[c].clone();
            }
            blocks.insert(c, blk);
        }
        Ok(Morphism { source: lsrc.obj.clone(), target: x.clone(), blocks })
    }

    /// r_X: X*1 -> X.
    fn right_unit_mat(&self, x: &ObjectExpr) -> Result<Morphism<S>> {
        let unit = self.bundle.unit_obj();
        let lsrc = self.star_layout(x, &unit);
        let mut blocks = BTreeMap::new();
        for (&c, entries) in &lsrc.entries {
            let rows = x.multiplicity(c);
            let mut blk: Mat<S> = Mat::zero(rows, entries.len());
            for (col, e) in entries.iter().enumerate() {
                blk[(e.i, col)] = self.bundle.assoc.r[c].clone();
            }
            blocks.insert(c, blk);
        }
        Ok(Morphism { source: lsrc.obj.clone(), target: x.clone(), blocks })
    }

    /// s_{X,Y}: X*Y -> phi(alpha)Y * X with alpha = grade X.
    fn braid_mat(&self, x: &ObjectExpr, y: &ObjectExpr) -> Result<Morphism<S>> {
        let b = self.bundle;
        let alpha = x.grade;
        let lsrc = self.star_layout(x, y);
        let ysig = b.sigma_obj(alpha, y);
        let ltgt = self.star_layout(&ysig, x);
        let mut blocks = BTreeMap::new();
        for (&c, entries) in &lsrc.entries {
            let rows = ltgt.entries.get(&c).map(|v| v.len()).unwrap_or(0);
            let mut blk: Mat<S> = Mat::zero(rows, entries.len());
            for (col, e) in entries.iter().enumerate() {
                let r = b.r_mat(e.a, e.b, c)?;
                let bs = b.sigma(alpha, e.b);
                for nu in 0..r.rows {
                    let coeff = r[(nu, e.mu)].clone();
                    if coeff.is_zero() {
                        continue;
                    }
                    let row = ltgt.index[&(c, StarEntry { a: bs, b: e.a, i: e.j, j: e.i, mu: nu })];
                    blk[(row, col)] = blk[(row, col)].add(&coeff);
                }
            }
            blocks.insert(c, blk);
        }
        Ok(Morphism { source: lsrc.obj.clone(), target: ltgt.obj.clone(), blocks })
    }

    /// theta_X: X -> phi(grade X) X, a scalar per simple.
    fn twist_mat(&self, x: &ObjectExpr) -> Result<Morphism<S>> {
        let b = self.bundle;
        let theta = b.twist()?;
        let alpha = x.grade;
        let mut blocks = BTreeMap::new();
        for (&a, &m) in &x.mult {
            if b.sigma(alpha, a) != a {
                return Err(DiagramError::Unsupported(format!(
                    "twist on simple {} moved by its grade's crossing",
                    b.cat.simple_name(a)
                )));
            }
            blocks.insert(a, Mat::scalar(m, &theta.theta[a]));
        }
        Ok(Morphism { source: x.clone(), target: b.sigma_obj(alpha, x), blocks })
    }

    /// b_X: 1 -> X* * X, diagonal over copies.
    fn birth_mat(&self, x: &ObjectExpr) -> Result<Morphism<S>> {
        let b = self.bundle;
        let duality = b.duality()?;
        let xd = b.dual_obj(x)?;
        let ltgt = self.star_layout(&xd, x);
        let unit = b.unit();
        let rows = ltgt.entries.get(&unit).map(|v| v.len()).unwrap_or(0);
        let mut blk = Mat::zero(rows, 1);
        if let Some(entries) = ltgt.entries.get(&unit) {
            for (row, e) in entries.iter().enumerate() {
                // entry (p = dual(a), q = a', i, j, mu): only the canonical
                // diagonal channel carries the coevaluation
                let a = duality.dual[e.a];
                if e.b != a || e.i != e.j {
                    continue;
                }
                if let Some(v) = duality.b.get(&a) {
                    blk[(row, 0)] = v[e.mu].clone();
                }
            }
        }
        let mut blocks = BTreeMap::new();
        blocks.insert(unit, blk);
        Ok(Morphism { source: b.unit_obj(), target: ltgt.obj.clone(), blocks })
    }

    /// d_X: X * X* -> 1.
    fn death_mat(&self, x: &ObjectExpr) -> Result<Morphism<S>> {
        let b = self.bundle;
        let duality = b.duality()?;
        let xd = b.dual_obj(x)?;
        let lsrc = self.star_layout(x, &xd);
        let unit = b.unit();
        let cols = lsrc.entries.get(&unit).map(|v| v.len()).unwrap_or(0);
        let mut blk = Mat::zero(1, cols);
        if let Some(entries) = lsrc.entries.get(&unit) {
            for (col, e) in entries.iter().enumerate() {
                if duality.dual[e.a] != e.b || e.i != e.j {
                    continue;
                }
                if let Some(v) = duality.d.get(&e.a) {
                    blk[(0, col)] = v[e.mu].clone();
                }
            }
        }
        let mut blocks = BTreeMap::new();
        blocks.insert(unit, blk);
        Ok(Morphism { source: lsrc.obj.clone(), target: b.unit_obj(), blocks })
    }

    /// c_{gamma,X}: (phi(gamma) X)* -> phi(gamma) X*, scalars per simple.
    fn lax_c_mat(&self, gamma: GrpElem, x: &ObjectExpr) -> Result<Morphism<S>> {
        let b = self.bundle;
        let duality = b.duality()?;
        let src = b.dual_obj(&b.sigma_obj(gamma, x))?;
        let tgt = b.sigma_obj(gamma, &b.dual_obj(x)?);
        if src != tgt {
            return Err(DiagramError::Endpoints(
                "crossing does not commute with duals".into(),
            ));
        }
        let mut blocks = BTreeMap::new();
        for (&a, &m) in &x.mult {
            let s = duality.dual[b.sigma(gamma, a)];
            let c = duality.c_lax.get(&(gamma, a)).ok_or_else(|| {
                BundleError::MissingData(format!("c_lax[{},{}]", b.pi().name(gamma), b.cat.simple_name(a)))
            })?;
            blocks.insert(s, Mat::scalar(m, c));
        }
        Ok(Morphism { source: src, target: tgt, blocks })
    }

    /// h_{g,X}: (rho(g) X)* -> rho(g^-1) X*.
    fn lax_h_mat(&self, g: GrpElem, x: &ObjectExpr) -> Result<Morphism<S>> {
        let b = self.bundle;
        let duality = b.duality()?;
        let ginv = b.g_action()?.group.inv(g);
        let src = b.dual_obj(&b.rho_obj(g, x)?)?;
        let tgt = b.rho_obj(ginv, &b.dual_obj(x)?)?;
        if src != tgt {
            return Err(DiagramError::Endpoints(
                "action does not commute with duals".into(),
            ));
        }
        let mut blocks = BTreeMap::new();
        let group = &b.g_action()?.group;
        for (&a, &m) in &x.mult {
            let s = duality.dual[b.rho_simple(g, a)?];
            let h = duality.h_lax.get(&(g, a)).ok_or_else(|| {
                BundleError::MissingData(format!(
                    "h_lax[{},{}]",
                    group.name(g),
                    b.cat.simple_name(a)
                ))
            })?;
            blocks.insert(s, Mat::scalar(m, h));
        }
        Ok(Morphism { source: src, target: tgt, blocks })
    }

    /// (f*g) in star-layout bases.
    fn star_mor(&self, f: &Morphism<S>, g: &Morphism<S>) -> Result<Morphism<S>> {
        let lsrc = self.star_layout(&f.source, &g.source);
        let ltgt = self.star_layout(&f.target, &g.target);
        let mut blocks = BTreeMap::new();
        for (&c, src_entries) in &lsrc.entries {
            let tgt_entries = match ltgt.entries.get(&c) {
                Some(v) => v,
                None => continue,
            };
            let mut blk: Mat<S> = Mat::zero(tgt_entries.len(), src_entries.len());
            for (col, se) in src_entries.iter().enumerate() {
                let fa = f.blocks.get(&se.a);
                let gb = g.blocks.get(&se.b);
                let (fa, gb) = match (fa, gb) {
                    (Some(fa), Some(gb)) => (fa, gb),
                    _ => continue,
                };
                for ti in 0..fa.rows {
                    let fcoeff = &fa[(ti, se.i)];
                    if fcoeff.is_zero() {
                        continue;
                    }
                    for tj in 0..gb.rows {
                        let coeff = fcoeff.mul(&gb[(tj, se.j)]);
                        if coeff.is_zero() {
                            continue;
                        }
                        let row = ltgt.index[&(c, StarEntry { a: se.a, b: se.b, i: ti, j: tj, mu: se.mu })];
                        blk[(row, col)] = blk[(row, col)].add(&coeff);
                    }
                }
            }
            blocks.insert(c, blk);
        }
        Ok(Morphism { source: lsrc.obj.clone(), target: ltgt.obj.clone(), blocks })
    }

    // ---- normal forms and coherence glue --------------------------------

    fn atom_obj(&self, atom: &Atom) -> Result<ObjectExpr> {
        let core = match &atom.core {
            AtomCore::Simple(a) => self.bundle.cat.simple_object(*a),
            AtomCore::Dual(nf) => self.bundle.dual_obj(&self.nf_obj(nf)?)?,
        };
        Ok(self.bundle.sigma_obj(atom.phi, &core))
    }

    fn comb_obj(&self, atoms: &[Atom]) -> Result<ObjectExpr> {
        let mut acc = self.bundle.unit_obj();
        for (k, atom) in atoms.iter().enumerate() {
            let ao = self.atom_obj(atom)?;
            acc = if k == 0 { ao } else { self.bundle.star(&acc, &ao) };
        }
        Ok(acc)
    }

    fn nf_obj(&self, nf: &NormalForm) -> Result<ObjectExpr> {
        let comb = self.comb_obj(&nf.atoms)?;
        if nf.rho == 0 {
            Ok(comb)
        } else {
            Ok(self.bundle.rho_obj(nf.rho, &comb)?)
        }
    }

    /// Glue from Star(comb(left), comb(right)) to comb(left ++ right):
    /// iterated inverse associators, or a unitor when one side is empty.
    fn append_mat(&self, left: &[Atom], right: &[Atom]) -> Result<Morphism<S>> {
        if right.is_empty() {
            return self.right_unit_mat(&self.comb_obj(left)?);
        }
        if left.is_empty() {
            let rm = self.comb_append_chain(right)?;
            // Star(unit, comb(right)) -> comb(right): left unitor
            return self.left_unit_mat(&rm);
        }
        if right.len() == 1 {
            // Star(comb(left), B) is already the comb of left ++ [B]
            let l = self.comb_obj(left)?;
            let r = self.atom_obj(&right[0])?;
            let lay = self.star_layout(&l, &r);
            return Ok(self.id_mat(&lay.obj));
        }
        let (rinit, rlast) = right.split_at(right.len() - 1);
        let l = self.comb_obj(left)?;
        let ri = self.comb_obj(rinit)?;
        let bl = self.atom_obj(&rlast[0])?;
        // (L)*(R'*B) -> (L*R')*B -> comb(L++R')*B
        let assoc = self.assoc_mat(&l, &ri, &bl)?;
        let step = self.star_mor(
            &self.append_mat(left, rinit)?,
            &self.id_mat(&bl),
        )?;
        Ok(assoc.inverse()?.then(&step)?)
    }

    fn comb_append_chain(&self, atoms: &[Atom]) -> Result<ObjectExpr> {
        self.comb_obj(atoms)
    }

    /// Glue from the sigma_gamma-relabel of comb(atoms) to
    /// comb(gamma-prefixed atoms): the crossing's monoidality components,
    /// pushed through the comb.
    fn mu_comb(&self, gamma: GrpElem, atoms: &[Atom]) -> Result<Morphism<S>> {
        let b = self.bundle;
        if atoms.len() <= 1 {
            let obj = self.comb_obj(atoms)?;
            return Ok(self.id_mat(&b.sigma_obj(gamma, &obj)));
        }
        let (init, last) = atoms.split_at(atoms.len() - 1);
        let p = self.comb_obj(init)?;
        let l = self.atom_obj(&last[0])?;
        let lsrc = self.star_layout(&p, &l);
        // step 1: sigma(P * L) -> sigma(P) * sigma(L) via inverse mu
        let psig = b.sigma_obj(gamma, &p);
        let lsig = b.sigma_obj(gamma, &l);
        let ltgt = self.star_layout(&psig, &lsig);
        let mut blocks = BTreeMap::new();
        for (&c, entries) in &lsrc.entries {
            let csig = b.sigma(gamma, c);
            let rows = ltgt.entries.get(&csig).map(|v| v.len()).unwrap_or(0);
            let mut blk: Mat<S> = Mat::zero(rows, entries.len());
            for (col, e) in entries.iter().enumerate() {
                let mu_inv = self.bundle.mu_mat(gamma, e.a, e.b, c).inverse()?;
                let (asig, bsig) = (b.sigma(gamma, e.a), b.sigma(gamma, e.b));
                for nu in 0..mu_inv.rows {
                    let coeff = mu_inv[(nu, e.mu)].clone();
                    if coeff.is_zero() {
                        continue;
                    }
                    let row = ltgt.index[&(csig, StarEntry { a: asig, b: bsig, i: e.i, j: e.j, mu: nu })];
                    blk[(row, col)] = blk[(row, col)].add(&coeff);
                }
            }
            blocks.insert(csig, blk);
        }
        let step1 = Morphism {
            source: b.sigma_obj(gamma, &lsrc.obj),
            target: ltgt.obj.clone(),
            blocks,
        };
        // step 2: recurse into the left factor
        let step2 = self.star_mor(&self.mu_comb(gamma, init)?, &self.id_mat(&lsig))?;
        Ok(step1.then(&step2)?)
    }

    /// Normal form plus the basis-change matrix from the term basis into
    /// the normal-form (left-comb) basis.
    pub fn to_nf(&self, t: &CObj) -> Result<(NormalForm, Morphism<S>)> {
        let b = self.bundle;
        match t {
            CObj::Simple(a) => {
                let nf = NormalForm { rho: 0, atoms: vec![Atom { phi: 0, core: AtomCore::Simple(*a) }] };
                Ok((nf, self.id_mat(&b.cat.simple_object(*a))))
            }
            CObj::Unit => Ok((NormalForm { rho: 0, atoms: vec![] }, self.id_mat(&b.unit_obj()))),
            CObj::Dual(x) => {
                let (nf_in, m_in) = self.to_nf(x)?;
                let duality = b.duality()?;
                let map = |a: SimpleId| duality.dual[a];
                let src_grade = b.pi().inv(m_in.source.grade);
                let tgt_grade = b.pi().inv(m_in.target.grade);
                let m = self.relabel_mor(&m_in, &map, src_grade, tgt_grade);
                let nf = NormalForm {
                    rho: 0,
                    atoms: vec![Atom { phi: 0, core: AtomCore::Dual(Box::new(nf_in)) }],
                };
                Ok((nf, m))
            }
            CObj::Rho(g, x) => {
                let (nf_in, m_in) = self.to_nf(x)?;
                if *g == 0 {
                    return Ok((nf_in, m_in));
                }
                let ga = b.g_action()?;
                let nf = NormalForm { rho: ga.group.mul(*g, nf_in.rho), atoms: nf_in.atoms };
                let mut ok = true;
                let map = |a: SimpleId| match b.rho_simple(*g, a) {
                    Ok(c) => c,
                    Err(_) => {
                        // surfaced below through the object mismatch
                        usize::MAX
                    }
                };
                let m = self.relabel_mor(&m_in, &map, m_in.source.grade, m_in.target.grade);
                if m.source.mult.keys().any(|&a| a == usize::MAX) {
                    ok = false;
                }
                if !ok {
                    return Err(DiagramError::Unsupported("action image of simple missing".into()));
                }
                Ok((nf, m))
            }
            CObj::Phi(gamma, x) => {
                let (nf_in, m_in) = self.to_nf(x)?;
                if *gamma == 0 {
                    return Ok((nf_in, m_in));
                }
                let new_rho = if nf_in.rho == 0 {
                    0
                } else {
                    let ga = b.g_action()?;
                    let moved = b.sigma(*gamma, ga.rho_unit[nf_in.rho]);
                    match (0..ga.group.order()).find(|&h| ga.rho_unit[h] == moved) {
                        Some(h) => h,
                        None => {
                            return Err(DiagramError::Unsupported(
                                "crossing does not normalize the action".into(),
                            ))
                        }
                    }
                };
                let atoms: Vec<Atom> = nf_in
                    .atoms
                    .iter()
                    .map(|at| Atom { phi: b.pi().mul(*gamma, at.phi), core: at.core.clone() })
                    .collect();
                // relabel the inner basis change by sigma_gamma
                let map = |a: SimpleId| b.sigma(*gamma, a);
                let src_grade = b.pi().conj(*gamma, m_in.source.grade);
                let tgt_grade = b.pi().conj(*gamma, m_in.target.grade);
                let m1 = self.relabel_mor(&m_in, &map, src_grade, tgt_grade);
                // push sigma through the comb with the monoidality glue;
                // the net action prefix relabels along unchanged.
                let glue = self.mu_comb(*gamma, &nf_in.atoms)?;
                let glue = if nf_in.rho == 0 {
                    glue
                } else {
                    let rr = new_rho;
                    let map = |a: SimpleId| b.rho_simple(rr, a).unwrap_or(usize::MAX);
                    // sigma(rho_r X) = rho_{r'} (sigma X): relabel the glue
                    self.relabel_mor(&glue, &map, glue.source.grade, glue.target.grade)
                };
                let m = m1.then(&glue)?;
                Ok((NormalForm { rho: new_rho, atoms }, m))
            }
            CObj::Star(x, y) => {
                let (nf1, m1) = self.to_nf(x)?;
                let (nf2, m2) = self.to_nf(y)?;
                let s = self.star_mor(&m1, &m2)?;
                let comb1 = self.comb_obj(&nf1.atoms)?;
                let comb2 = self.comb_obj(&nf2.atoms)?;
                // collect the action prefixes to the front (path-trivial)
                let (rho, extract) = if nf1.rho == 0 && nf2.rho == 0 {
                    let lay = self.star_layout(&comb1, &comb2);
                    (0, self.id_mat(&lay.obj))
                } else {
                    let ga = b.g_action()?;
                    let rho = ga.group.mul(nf1.rho, nf2.rho);
                    let src1 = if nf1.rho == 0 { comb1.clone() } else { b.rho_obj(nf1.rho, &comb1)? };
                    let src2 = if nf2.rho == 0 { comb2.clone() } else { b.rho_obj(nf2.rho, &comb2)? };
                    let lsrc = self.star_layout(&src1, &src2);
                    let plain = self.star_layout(&comb1, &comb2);
                    let mut blocks = BTreeMap::new();
                    for (&c0, tgt_entries) in &plain.entries {
                        // target block at rho(c0); source entries live at the
                        // same fused simple
                        let c = if rho == 0 { c0 } else { b.rho_simple(rho, c0)? };
                        let src_entries = lsrc
                            .entries
                            .get(&c)
                            .ok_or_else(|| DiagramError::Endpoints("action extraction mismatch".into()))?;
                        let mut blk: Mat<S> = Mat::zero(tgt_entries.len(), src_entries.len());
                        for (col, e) in src_entries.iter().enumerate() {
                            // strip the prefixes from the factor simples
                            let a0 = strip_rho(b, nf1.rho, e.a)?;
                            let b0 = strip_rho(b, nf2.rho, e.b)?;
                            let te = StarEntry { a: a0, b: b0, i: e.i, j: e.j, mu: e.mu };
                            let row = plain.index.get(&(c0, te)).copied().ok_or_else(|| {
                                DiagramError::Endpoints("action extraction path mismatch".into())
                            })?;
                            blk[(row, col)] = S::one();
                        }
                        blocks.insert(c, blk);
                    }
                    let tgt = self.relabel_obj(
                        &plain.obj,
                        &|a| if rho == 0 { a } else { b.rho_simple(rho, a).unwrap_or(usize::MAX) },
                        plain.obj.grade,
                    );
                    (rho, Morphism { source: lsrc.obj.clone(), target: tgt, blocks })
                };
                // reassociate to a single left comb, relabeled by the prefix
                let append = self.append_mat(&nf1.atoms, &nf2.atoms)?;
                let append = if rho == 0 {
                    append
                } else {
                    let map = |a: SimpleId| b.rho_simple(rho, a).unwrap_or(usize::MAX);
                    self.relabel_mor(&append, &map, append.source.grade, append.target.grade)
                };
                let mut atoms = nf1.atoms;
                atoms.extend(nf2.atoms);
                let m = s.then(&extract)?.then(&append)?;
                Ok((NormalForm { rho, atoms }, m))
            }
        }
    }

    /// Canonical coherence isomorphism between two terms with equal
    /// normal forms, in their term bases.
    pub fn glue(&self, from: &CObj, to: &CObj) -> Result<Morphism<S>> {
        if from == to {
            return Ok(self.id_mat(&self.denote(from)?));
        }
        let (nf1, m1) = self.to_nf(from)?;
        let (nf2, m2) = self.to_nf(to)?;
        if nf1 != nf2 {
            return Err(DiagramError::Endpoints(format!(
                "terms do not match up to coherence: {nf1:?} vs {nf2:?}"
            )));
        }
        Ok(m1.then(&m2.inverse()?)?)
    }

    // ---- morphism evaluation --------------------------------------------

    /// Evaluate a concrete morphism term; the result's matrices are in the
    /// term bases of the returned endpoint terms.
    pub fn eval(&self, t: &CMor) -> Result<(CObj, CObj, Morphism<S>)> {
        match t {
            CMor::Id(x) => {
                let m = self.id_mat(&self.denote(x)?);
                Ok((x.clone(), x.clone(), m))
            }
            CMor::Assoc(x, y, z) => {
                let m = self.assoc_mat(&self.denote(x)?, &self.denote(y)?, &self.denote(z)?)?;
                let src = CObj::Star(
                    Box::new(CObj::Star(Box::new(x.clone()), Box::new(y.clone()))),
                    Box::new(z.clone()),
                );
                let tgt = CObj::Star(
                    Box::new(x.clone()),
                    Box::new(CObj::Star(Box::new(y.clone()), Box::new(z.clone()))),
                );
                Ok((src, tgt, m))
            }
            CMor::AssocInv(x, y, z) => {
                let (s, t2, m) = self.eval(&CMor::Assoc(x.clone(), y.clone(), z.clone()))?;
                Ok((t2, s, m.inverse()?))
            }
            CMor::LeftUnit(x) => {
                let m = self.left_unit_mat(&self.denote(x)?)?;
                let src = CObj::Star(Box::new(CObj::Unit), Box::new(x.clone()));
                Ok((src, x.clone(), m))
            }
            CMor::RightUnit(x) => {
                let m = self.right_unit_mat(&self.denote(x)?)?;
                let src = CObj::Star(Box::new(x.clone()), Box::new(CObj::Unit));
                Ok((src, x.clone(), m))
            }
            CMor::Braid(x, y) => {
                let xo = self.denote(x)?;
                let m = self.braid_mat(&xo, &self.denote(y)?)?;
                let src = CObj::Star(Box::new(x.clone()), Box::new(y.clone()));
                let tgt = CObj::Star(
                    Box::new(CObj::Phi(xo.grade, Box::new(y.clone()))),
                    Box::new(x.clone()),
                );
                Ok((src, tgt, m))
            }
            CMor::Twist(x) => {
                let xo = self.denote(x)?;
                let m = self.twist_mat(&xo)?;
                Ok((x.clone(), CObj::Phi(xo.grade, Box::new(x.clone())), m))
            }
            CMor::Birth(x) => {
                let m = self.birth_mat(&self.denote(x)?)?;
                let tgt = CObj::Star(Box::new(CObj::Dual(Box::new(x.clone()))), Box::new(x.clone()));
                Ok((CObj::Unit, tgt, m))
            }
            CMor::Death(x) => {
                let m = self.death_mat(&self.denote(x)?)?;
                let src = CObj::Star(Box::new(x.clone()), Box::new(CObj::Dual(Box::new(x.clone()))));
                Ok((src, CObj::Unit, m))
            }
            CMor::LaxC(g, x) => {
                let m = self.lax_c_mat(*g, &self.denote(x)?)?;
                let src = CObj::Dual(Box::new(CObj::Phi(*g, Box::new(x.clone()))));
                let tgt = CObj::Phi(*g, Box::new(CObj::Dual(Box::new(x.clone()))));
                Ok((src, tgt, m))
            }
            CMor::LaxH(g, x) => {
                let m = self.lax_h_mat(*g, &self.denote(x)?)?;
                let ginv = self.bundle.g_action()?.group.inv(*g);
                let src = CObj::Dual(Box::new(CObj::Rho(*g, Box::new(x.clone()))));
                let tgt = CObj::Rho(ginv, Box::new(CObj::Dual(Box::new(x.clone()))));
                Ok((src, tgt, m))
            }
            CMor::PairFlip(x, y) => self.eval(&pair_flip_chain(x, y)),
            CMor::Compose(f, g) => {
                let (sf, tf, mf) = self.eval(f)?;
                let (sg, tg, mg) = self.eval(g)?;
                let glue = self.glue(&tf, &sg)?;
                Ok((sf, tg, mf.then(&glue)?.then(&mg)?))
            }
            CMor::StarMor(f, g) => {
                let (sf, tf, mf) = self.eval(f)?;
                let (sg, tg, mg) = self.eval(g)?;
                let m = self.star_mor(&mf, &mg)?;
                Ok((
                    CObj::Star(Box::new(sf), Box::new(sg)),
                    CObj::Star(Box::new(tf), Box::new(tg)),
                    m,
                ))
            }
            CMor::PhiMor(g, f) => {
                let (sf, tf, mf) = self.eval(f)?;
                if *g == 0 {
                    return Ok((sf, tf, mf));
                }
                let b = self.bundle;
                let map = |a: SimpleId| b.sigma(*g, a);
                let m = self.relabel_mor(
                    &mf,
                    &map,
                    b.pi().conj(*g, mf.source.grade),
                    b.pi().conj(*g, mf.target.grade),
                );
                Ok((
                    CObj::Phi(*g, Box::new(sf)),
                    CObj::Phi(*g, Box::new(tf)),
                    m,
                ))
            }
            CMor::RhoMor(g, f) => {
                let (sf, tf, mf) = self.eval(f)?;
                if *g == 0 {
                    return Ok((sf, tf, mf));
                }
                let b = self.bundle;
                let map = |a: SimpleId| b.rho_simple(*g, a).unwrap_or(usize::MAX);
                let m = self.relabel_mor(&mf, &map, mf.source.grade, mf.target.grade);
                Ok((CObj::Rho(*g, Box::new(sf)), CObj::Rho(*g, Box::new(tf)), m))
            }
            CMor::DualMor(f) => {
                let (sf, tf, _) = self.eval(f)?;
                self.eval(&dual_mor_chain(&sf, &tf, f))
            }
            CMor::Inverse(f) => {
                let (sf, tf, mf) = self.eval(f)?;
                Ok((tf, sf, mf.inverse()?))
            }
        }
    }
}

fn strip_rho<S: Scalar>(b: &StructureBundle<S>, g: GrpElem, a: SimpleId) -> Result<SimpleId> {
    if g == 0 {
        return Ok(a);
    }
    let ginv = b.g_action()?.group.inv(g);
    b.rho_simple(ginv, a).map_err(DiagramError::from)
}

/// (U*V)* -> V* * U* as a composite of births, deaths, associators and
/// unitors; the canonical iso of a rigid category.
fn pair_flip_chain(x: &CObj, y: &CObj) -> CMor {
    let x = x.clone();
    let y = y.clone();
    let star = |a: CObj, b: CObj| CObj::Star(Box::new(a), Box::new(b));
    let dual = |a: CObj| CObj::Dual(Box::new(a));
    let d_xy = dual(star(x.clone(), y.clone()));
    let id = |o: CObj| CMor::Id(o);
    let sm = |f: CMor, g: CMor| CMor::StarMor(Box::new(f), Box::new(g));
    let comp = |f: CMor, g: CMor| CMor::Compose(Box::new(f), Box::new(g));
    let inv = |f: CMor| CMor::Inverse(Box::new(f));

    // D -> 1*D -> (y* y) D ... -> y* (x* ((x y) D)) -> y* x*
    let s1 = inv(CMor::LeftUnit(d_xy.clone()));
    let s2 = sm(CMor::Birth(y.clone()), id(d_xy.clone()));
    let s3 = CMor::Assoc(dual(y.clone()), y.clone(), d_xy.clone());
    let s4 = sm(
        id(dual(y.clone())),
        sm(inv(CMor::LeftUnit(y.clone())), id(d_xy.clone())),
    );
    let s5 = sm(
        id(dual(y.clone())),
        sm(sm(CMor::Birth(x.clone()), id(y.clone())), id(d_xy.clone())),
    );
    let s6 = sm(
        id(dual(y.clone())),
        sm(CMor::Assoc(dual(x.clone()), x.clone(), y.clone()), id(d_xy.clone())),
    );
    let s7 = sm(
        id(dual(y.clone())),
        CMor::Assoc(dual(x.clone()), star(x.clone(), y.clone()), d_xy.clone()),
    );
    let s8 = sm(
        id(dual(y.clone())),
        sm(id(dual(x.clone())), CMor::Death(star(x.clone(), y.clone()))),
    );
    let s9 = sm(id(dual(y.clone())), CMor::RightUnit(dual(x.clone())));
    [s2, s3, s4, s5, s6, s7, s8, s9]
        .into_iter()
        .fold(s1, comp)
}

/// f*: T* -> S* for f: S -> T, by conjugation with births and deaths.
fn dual_mor_chain(sf: &CObj, tf: &CObj, f: &CMor) -> CMor {
    let s = sf.clone();
    let t = tf.clone();
    let dual = |a: CObj| CObj::Dual(Box::new(a));
    let id = CMor::Id;
    let sm = |f: CMor, g: CMor| CMor::StarMor(Box::new(f), Box::new(g));
    let comp = |f: CMor, g: CMor| CMor::Compose(Box::new(f), Box::new(g));
    let inv = |f: CMor| CMor::Inverse(Box::new(f));

    // T* -> 1 T* -> (S* S) T* -> S* (S T*) -> S* (T T*) -> S* 1 -> S*
    let s1 = inv(CMor::LeftUnit(dual(t.clone())));
    let s2 = sm(CMor::Birth(s.clone()), id(dual(t.clone())));
    let s3 = CMor::Assoc(dual(s.clone()), s.clone(), dual(t.clone()));
    let s4 = sm(
        id(dual(s.clone())),
        sm(f.clone(), id(dual(t.clone()))),
    );
    let s5 = sm(id(dual(s.clone())), CMor::Death(t.clone()));
    let s6 = CMor::RightUnit(dual(s.clone()));
    [s2, s3, s4, s5, s6].into_iter().fold(s1, comp)
}

/// Evaluate an object term under an assignment of simples to variables.
pub fn eval_obj<S: Scalar>(
    bundle: &StructureBundle<S>,
    t: &ObjTerm,
    assignment: &[SimpleId],
) -> std::result::Result<ObjectExpr, DiagramError> {
    let ctx = EvalContext::new(bundle);
    let c = ctx.resolve_obj(t, assignment)?;
    ctx.denote(&c)
}

/// Evaluate a morphism term to a concrete block-matrix morphism.
pub fn eval_mor<S: Scalar>(
    bundle: &StructureBundle<S>,
    t: &MorTerm,
    assignment: &[SimpleId],
) -> std::result::Result<Morphism<S>, DiagramError> {
    let ctx = EvalContext::new(bundle);
    let c = ctx.resolve_mor(t, assignment)?;
    let (_, _, m) = ctx.eval(&c)?;
    Ok(m)
}
