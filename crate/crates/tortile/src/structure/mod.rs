//! Containers and validation for the full structural symbol data of a
//! graded category: fusion, associator, unit, crossing, braiding, twist,
//! duality, pairings and group-action sections.
//!
//! A [`StructureBundle`] is pure data. Structural well-formedness (shapes,
//! completeness, group actions on labels) is verified here; the coherence
//! axioms themselves are the job of [`crate::axioms`].

pub mod io;

use crate::cat::{CatError, GradedCategory, ObjectExpr, SimpleId};
use crate::group::{GroupError, GroupTable, GrpElem};
use crate::linalg::{Mat, MatError};
use crate::scalar::{Scalar, ScalarError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("missing section {0:?}")]
    MissingSection(&'static str),
    #[error("missing structural datum: {0}")]
    MissingData(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("{0}")]
    Format(String),
}

/// Fusion multiplicities N(a,b,c), stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRule {
    pub n: Vec<Vec<Vec<usize>>>,
}

impl FusionRule {
    pub fn zero(count: usize) -> Self {
        FusionRule { n: vec![vec![vec![0; count]; count]; count] }
    }

    pub fn get(&self, a: SimpleId, b: SimpleId, c: SimpleId) -> usize {
        self.n[a][b][c]
    }

    pub fn set(&mut self, a: SimpleId, b: SimpleId, c: SimpleId, m: usize) {
        self.n[a][b][c] = m;
    }
}

/// Associator matrices in fusion-path bases, plus unit scalars.
///
/// `f[(a,b,c,d)]` maps the left-parenthesized path basis of
/// hom((a*b)*c, d) (columns, lex in (e, mu, kappa)) to the
/// right-parenthesized basis of hom(a*(b*c), d) (rows, lex in (f, nu,
/// lambda)).
#[derive(Clone, Debug, PartialEq)]
pub struct AssociatorData<S> {
    pub f: BTreeMap<(SimpleId, SimpleId, SimpleId, SimpleId), Mat<S>>,
    pub l: Vec<S>,
    pub r: Vec<S>,
}

/// The crossing: a strict action of the grading group by monoidal
/// functors. `sigma[gamma]` is a permutation of simples; `mu` holds the
/// monoidal-structure components per fusion channel, identity if absent.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossingData<S> {
    pub sigma: Vec<Vec<SimpleId>>,
    pub mu: BTreeMap<(GrpElem, SimpleId, SimpleId, SimpleId), Mat<S>>,
}

/// Braiding components: `r[(a,b,c)]` maps the path basis of (a*b) at c to
/// the path basis of (sigma_alpha(b) * a) at c, alpha = grade(a).
#[derive(Clone, Debug, PartialEq)]
pub struct BraidingData<S> {
    pub r: BTreeMap<(SimpleId, SimpleId, SimpleId), Mat<S>>,
}

/// Twist scalars per simple (each simple is fixed by its own grade's
/// crossing whenever a twist section is present).
#[derive(Clone, Debug, PartialEq)]
pub struct TwistData<S> {
    pub theta: Vec<S>,
}

/// Rigid duality and the lax comparison scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityData<S> {
    pub dual: Vec<SimpleId>,
    /// b[a]: component vector of 1 -> a* * a, length N(a*, a, 1).
    pub b: BTreeMap<SimpleId, Vec<S>>,
    /// d[a]: component vector of a * a* -> 1, length N(a, a*, 1).
    pub d: BTreeMap<SimpleId, Vec<S>>,
    /// c_lax[(gamma, a)]: scalar of (phi(gamma) a)* -> phi(gamma) a*.
    pub c_lax: BTreeMap<(GrpElem, SimpleId), S>,
    /// h_lax[(g, a)]: scalar of (rho(g) a)* -> rho(g^-1) a*.
    pub h_lax: BTreeMap<(GrpElem, SimpleId), S>,
}

/// Non-degenerate pairing data: dimension tables for the pairing functor
/// and the canonical element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormData {
    /// pairing[(a,b)] = dim <a, b>, for grade(b) = grade(a)^-1.
    pub pairing: BTreeMap<(SimpleId, SimpleId), usize>,
    /// e[(p,q)] = multiplicity of p (x) q in the canonical element.
    pub e: BTreeMap<(SimpleId, SimpleId), usize>,
}

/// Group action by invertible identity-grade simples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GActionData {
    pub group: GroupTable,
    /// rho_unit[g] = the simple rho(g)(1); the action is rho(g)U = rho(g)1 * U.
    pub rho_unit: Vec<SimpleId>,
}

/// The full structural data of one category.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureBundle<S> {
    pub cat: GradedCategory,
    pub fusion: FusionRule,
    pub assoc: AssociatorData<S>,
    pub crossing: CrossingData<S>,
    pub braiding: Option<BraidingData<S>>,
    pub twist: Option<TwistData<S>>,
    pub duality: Option<DualityData<S>>,
    pub forms: Option<FormData>,
    pub g_action: Option<GActionData>,
}

impl<S: Scalar> StructureBundle<S> {
    pub fn pi(&self) -> &GroupTable {
        &self.cat.pi
    }

    pub fn unit(&self) -> SimpleId {
        self.cat.unit_simple
    }

    pub fn unit_obj(&self) -> ObjectExpr {
        self.cat.simple_object(self.unit())
    }

    pub fn n(&self, a: SimpleId, b: SimpleId, c: SimpleId) -> usize {
        self.fusion.get(a, b, c)
    }

    /// Monoidal product of objects at the multiplicity level.
    pub fn star(&self, x: &ObjectExpr, y: &ObjectExpr) -> ObjectExpr {
        let grade = self.pi().mul(x.grade, y.grade);
        let mut mult = BTreeMap::new();
        for (&a, &ma) in &x.mult {
            for (&b, &mb) in &y.mult {
                for c in 0..self.cat.simple_count() {
                    let n = self.n(a, b, c);
                    if n > 0 {
                        *mult.entry(c).or_insert(0) += ma * mb * n;
                    }
                }
            }
        }
        mult.retain(|_, m| *m > 0);
        ObjectExpr { grade, mult }
    }

    /// Number of left-parenthesized fusion paths ((a*b)*c -> d).
    pub fn paths_left(&self, a: SimpleId, b: SimpleId, c: SimpleId, d: SimpleId) -> usize {
        (0..self.cat.simple_count())
            .map(|e| self.n(a, b, e) * self.n(e, c, d))
            .sum()
    }

    /// Number of right-parenthesized fusion paths (a*(b*c) -> d).
    pub fn paths_right(&self, a: SimpleId, b: SimpleId, c: SimpleId, d: SimpleId) -> usize {
        (0..self.cat.simple_count())
            .map(|f| self.n(b, c, f) * self.n(a, f, d))
            .sum()
    }

    pub fn f_mat(&self, a: SimpleId, b: SimpleId, c: SimpleId, d: SimpleId) -> Result<&Mat<S>, BundleError> {
        self.assoc.f.get(&(a, b, c, d)).ok_or_else(|| {
            BundleError::MissingData(format!(
                "F symbol ({},{},{};{})",
                self.cat.simple_name(a),
                self.cat.simple_name(b),
                self.cat.simple_name(c),
                self.cat.simple_name(d)
            ))
        })
    }

    pub fn sigma(&self, gamma: GrpElem, a: SimpleId) -> SimpleId {
        self.crossing.sigma[gamma][a]
    }

    pub fn sigma_obj(&self, gamma: GrpElem, x: &ObjectExpr) -> ObjectExpr {
        let grade = self.pi().conj(gamma, x.grade);
        let mult = x.mult.iter().map(|(&a, &m)| (self.sigma(gamma, a), m)).collect();
        ObjectExpr { grade, mult }
    }

    /// mu_gamma(a,b) component at fusion channel c; identity by default.
    pub fn mu_mat(&self, gamma: GrpElem, a: SimpleId, b: SimpleId, c: SimpleId) -> Mat<S> {
        match self.crossing.mu.get(&(gamma, a, b, c)) {
            Some(m) => m.clone(),
            None => Mat::identity(self.n(a, b, c)),
        }
    }

    pub fn braiding(&self) -> Result<&BraidingData<S>, BundleError> {
        self.braiding.as_ref().ok_or(BundleError::MissingSection("R"))
    }

    pub fn r_mat(&self, a: SimpleId, b: SimpleId, c: SimpleId) -> Result<Mat<S>, BundleError> {
        let alpha = self.cat.grade(a);
        let rows = self.n(self.sigma(alpha, b), a, c);
        let cols = self.n(a, b, c);
        match self.braiding()?.r.get(&(a, b, c)) {
            Some(m) => Ok(m.clone()),
            None if rows == 0 || cols == 0 => Ok(Mat::zero(rows, cols)),
            None => Err(BundleError::MissingData(format!(
                "R symbol ({},{};{})",
                self.cat.simple_name(a),
                self.cat.simple_name(b),
                self.cat.simple_name(c)
            ))),
        }
    }

    pub fn twist(&self) -> Result<&TwistData<S>, BundleError> {
        self.twist.as_ref().ok_or(BundleError::MissingSection("theta"))
    }

    pub fn duality(&self) -> Result<&DualityData<S>, BundleError> {
        self.duality.as_ref().ok_or(BundleError::MissingSection("dual"))
    }

    pub fn forms(&self) -> Result<&FormData, BundleError> {
        self.forms.as_ref().ok_or(BundleError::MissingSection("pairing"))
    }

    pub fn g_action(&self) -> Result<&GActionData, BundleError> {
        self.g_action.as_ref().ok_or(BundleError::MissingSection("rho"))
    }

    pub fn dual(&self, a: SimpleId) -> Result<SimpleId, BundleError> {
        Ok(self.duality()?.dual[a])
    }

    pub fn dual_obj(&self, x: &ObjectExpr) -> Result<ObjectExpr, BundleError> {
        let duality = self.duality()?;
        let grade = self.pi().inv(x.grade);
        let mult = x.mult.iter().map(|(&a, &m)| (duality.dual[a], m)).collect();
        Ok(ObjectExpr { grade, mult })
    }

    /// rho(g) applied to a simple: the unique fusion product rho(g)1 * a.
    pub fn rho_simple(&self, g: GrpElem, a: SimpleId) -> Result<SimpleId, BundleError> {
        let r = self.g_action()?.rho_unit[g];
        (0..self.cat.simple_count())
            .find(|&c| self.n(r, a, c) > 0)
            .ok_or_else(|| BundleError::MissingData(format!("rho({g}) on simple {a}")))
    }

    pub fn rho_obj(&self, g: GrpElem, x: &ObjectExpr) -> Result<ObjectExpr, BundleError> {
        let mut mult = BTreeMap::new();
        for (&a, &m) in &x.mult {
            *mult.entry(self.rho_simple(g, a)?).or_insert(0) += m;
        }
        Ok(ObjectExpr { grade: x.grade, mult })
    }

    pub fn pairing_dim(&self, a: SimpleId, b: SimpleId) -> usize {
        self.forms
            .as_ref()
            .and_then(|f| f.pairing.get(&(a, b)).copied())
            .unwrap_or(0)
    }

    pub fn e_mult(&self, p: SimpleId, q: SimpleId) -> usize {
        self.forms
            .as_ref()
            .and_then(|f| f.e.get(&(p, q)).copied())
            .unwrap_or(0)
    }

    /// Convert every scalar, e.g. into the floating-point mode.
    pub fn convert<T: Scalar>(&self) -> StructureBundle<T>
    where
        S: ExactConvert,
    {
        let conv_mat = |m: &Mat<S>| {
            Mat::from_flat(
                m.rows,
                m.cols,
                m.entries().iter().map(|s| s.convert::<T>()).collect(),
            )
            .expect("shape preserved")
        };
        StructureBundle {
            cat: self.cat.clone(),
            fusion: self.fusion.clone(),
            assoc: AssociatorData {
                f: self.assoc.f.iter().map(|(k, v)| (*k, conv_mat(v))).collect(),
                l: self.assoc.l.iter().map(|s| s.convert::<T>()).collect(),
                r: self.assoc.r.iter().map(|s| s.convert::<T>()).collect(),
            },
            crossing: CrossingData {
                sigma: self.crossing.sigma.clone(),
                mu: self.crossing.mu.iter().map(|(k, v)| (*k, conv_mat(v))).collect(),
            },
            braiding: self.braiding.as_ref().map(|b| BraidingData {
                r: b.r.iter().map(|(k, v)| (*k, conv_mat(v))).collect(),
            }),
            twist: self.twist.as_ref().map(|t| TwistData {
                theta: t.theta.iter().map(|s| s.convert::<T>()).collect(),
            }),
            duality: self.duality.as_ref().map(|d| DualityData {
                dual: d.dual.clone(),
                b: d.b.iter().map(|(k, v)| (*k, v.iter().map(|s| s.convert::<T>()).collect())).collect(),
                d: d.d.iter().map(|(k, v)| (*k, v.iter().map(|s| s.convert::<T>()).collect())).collect(),
                c_lax: d.c_lax.iter().map(|(k, v)| (*k, v.convert::<T>())).collect(),
                h_lax: d.h_lax.iter().map(|(k, v)| (*k, v.convert::<T>())).collect(),
            }),
            forms: self.forms.clone(),
            g_action: self.g_action.clone(),
        }
    }
}

/// Scalars that can be re-expressed in any other scalar mode (exact ones).
pub trait ExactConvert: Scalar {
    fn convert<T: Scalar>(&self) -> T;
}

impl ExactConvert for crate::scalar::Cyclotomic {
    fn convert<T: Scalar>(&self) -> T {
        T::from_exact(self)
    }
}

/// One structural invariant checked on load, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValidationEntry {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn first_failure(&self) -> Option<&ValidationEntry> {
        self.entries.iter().find(|e| !e.passed)
    }

    fn push(&mut self, id: &str, passed: bool, detail: String) {
        self.entries.push(ValidationEntry { id: id.to_string(), passed, detail });
    }

    /// Record a named check: `Ok(())` passes, `Err(witness)` fails.
    fn check(&mut self, id: &str, result: Result<(), String>) {
        match result {
            Ok(()) => self.push(id, true, String::new()),
            Err(w) => self.push(id, false, w),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::from("validation report\n");
        for e in &self.entries {
            let status = if e.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("  {:<24} {}", e.id, status));
            if !e.detail.is_empty() {
                out.push_str(&format!("  {}", e.detail));
            }
            out.push('\n');
        }
        out
    }
}

/// Every structural validity invariant, as a pass/fail report.
///
/// Coherence axioms (pentagon, hexagons, ...) are deliberately not here.
pub fn validate_bundle<S: Scalar>(b: &StructureBundle<S>) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let count = b.cat.simple_count();
    let pi = b.pi().clone();
    let name = |a: SimpleId| b.cat.simple_name(a).to_string();

    rep.check("fusion.grading", {
        let mut res = Ok(());
        'outer: for a in 0..count {
            for bb in 0..count {
                for c in 0..count {
                    if b.n(a, bb, c) > 0 && b.cat.grade(c) != pi.mul(b.cat.grade(a), b.cat.grade(bb)) {
                        res = Err(format!("N({},{},{}) breaks grading", name(a), name(bb), name(c)));
                        break 'outer;
                    }
                }
            }
        }
        res
    });

    rep.check("fusion.unit", {
        let u = b.unit();
        let mut res = Ok(());
        'outer: for a in 0..count {
            for c in 0..count {
                let want = usize::from(a == c);
                if b.n(u, a, c) != want || b.n(a, u, c) != want {
                    res = Err(format!("unit fusion fails at ({},{})", name(a), name(c)));
                    break 'outer;
                }
            }
        }
        res
    });

    rep.check("fusion.associative", {
        let mut res = Ok(());
        'outer: for a in 0..count {
            for x in 0..count {
                for c in 0..count {
                    for d in 0..count {
                        if b.paths_left(a, x, c, d) != b.paths_right(a, x, c, d) {
                            res = Err(format!(
                                "multiplicity associativity fails at ({},{},{};{})",
                                name(a), name(x), name(c), name(d)
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
        res
    });

    rep.check("assoc.complete", {
        let mut res = Ok(());
        'outer: for a in 0..count {
            for x in 0..count {
                for c in 0..count {
                    for d in 0..count {
                        let pl = b.paths_left(a, x, c, d);
                        let pr = b.paths_right(a, x, c, d);
                        if pl == 0 {
                            continue;
                        }
                        match b.assoc.f.get(&(a, x, c, d)) {
                            None => {
                                res = Err(format!(
                                    "missing F symbol ({},{},{};{})",
                                    name(a), name(x), name(c), name(d)
                                ));
                                break 'outer;
                            }
                            Some(m) if m.rows != pr || m.cols != pl => {
                                res = Err(format!(
                                    "F symbol ({},{},{};{}) has shape {}x{}, want {}x{}",
                                    name(a), name(x), name(c), name(d), m.rows, m.cols, pr, pl
                                ));
                                break 'outer;
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        res
    });

    rep.check("assoc.invertible", {
        let bad = b.assoc.f.iter().find(|(_, m)| !m.is_invertible());
        match bad {
            None => Ok(()),
            Some(((a, x, c, d), _)) => Err(format!(
                "F symbol ({},{},{};{}) not invertible",
                name(*a), name(*x), name(*c), name(*d)
            )),
        }
    });

    rep.check("assoc.units", {
        if b.assoc.l.len() != count || b.assoc.r.len() != count {
            Err("unit scalar tables incomplete".into())
        } else if let Some(a) = (0..count).find(|&a| b.assoc.l[a].is_zero() || b.assoc.r[a].is_zero()) {
            Err(format!("unit scalar for {} is zero", name(a)))
        } else {
            Ok(())
        }
    });

    rep.check("crossing.permutation", {
        let mut res = Ok(());
        if b.crossing.sigma.len() != pi.order() {
            res = Err("sigma table incomplete".into());
        } else {
            for g in pi.elements() {
                let perm = &b.crossing.sigma[g];
                let mut seen = vec![false; count];
                if perm.len() != count {
                    res = Err(format!("sigma[{}] has wrong length", pi.name(g)));
                    break;
                }
                for &img in perm {
                    if img >= count || seen[img] {
                        res = Err(format!("sigma[{}] is not a permutation", pi.name(g)));
                        break;
                    }
                    seen[img] = true;
                }
            }
        }
        res
    });

    let sigma_ok = rep.entries.last().map(|e| e.passed).unwrap_or(false);
    if sigma_ok {
        rep.check("crossing.action", {
            let mut res = Ok(());
            'outer: for g in pi.elements() {
                for h in pi.elements() {
                    for a in 0..count {
                        if b.sigma(pi.mul(g, h), a) != b.sigma(g, b.sigma(h, a)) {
                            res = Err(format!(
                                "sigma not a strict action at ({},{},{})",
                                pi.name(g), pi.name(h), name(a)
                            ));
                            break 'outer;
                        }
                    }
                }
                if b.sigma(g, b.unit()) != b.unit() {
                    res = Err(format!("sigma[{}] moves the unit", pi.name(g)));
                    break;
                }
            }
            if res.is_ok() && (0..count).any(|a| b.sigma(pi.id(), a) != a) {
                res = Err("sigma at the identity is not the identity".into());
            }
            res
        });

        rep.check("crossing.grade", {
            let mut res = Ok(());
            'outer: for g in pi.elements() {
                for a in 0..count {
                    if b.cat.grade(b.sigma(g, a)) != pi.conj(g, b.cat.grade(a)) {
                        res = Err(format!(
                            "grade(sigma_{}({})) is not the conjugated grade",
                            pi.name(g), name(a)
                        ));
                        break 'outer;
                    }
                }
            }
            res
        });

        rep.check("crossing.fusion", {
            let mut res = Ok(());
            'outer: for g in pi.elements() {
                for a in 0..count {
                    for x in 0..count {
                        for c in 0..count {
                            if b.n(a, x, c) != b.n(b.sigma(g, a), b.sigma(g, x), b.sigma(g, c)) {
                                res = Err(format!(
                                    "sigma_{} does not preserve fusion at ({},{},{})",
                                    pi.name(g), name(a), name(x), name(c)
                                ));
                                break 'outer;
                            }
                        }
                    }
                }
            }
            res
        });

        rep.check("crossing.mu", {
            let mut res = Ok(());
            for ((g, a, x, c), m) in &b.crossing.mu {
                let want = b.n(*a, *x, *c);
                if m.rows != want || m.cols != want {
                    res = Err(format!(
                        "mu[{}]({},{};{}) has wrong shape",
                        pi.name(*g), name(*a), name(*x), name(*c)
                    ));
                    break;
                }
                if !m.is_invertible() && want > 0 {
                    res = Err(format!(
                        "mu[{}]({},{};{}) not invertible",
                        pi.name(*g), name(*a), name(*x), name(*c)
                    ));
                    break;
                }
            }
            res
        });
    }

    if let Some(braiding) = &b.braiding {
        rep.check("braiding.shape", {
            let mut res = Ok(());
            'outer: for a in 0..count {
                let alpha = b.cat.grade(a);
                for x in 0..count {
                    for c in 0..count {
                        let cols = b.n(a, x, c);
                        let rows = b.n(b.sigma(alpha, x), a, c);
                        if cols == 0 && rows == 0 {
                            continue;
                        }
                        if cols != rows {
                            res = Err(format!(
                                "R({},{};{}) relates spaces of different dimension",
                                name(a), name(x), name(c)
                            ));
                            break 'outer;
                        }
                        match braiding.r.get(&(a, x, c)) {
                            None => {
                                res = Err(format!("missing R symbol ({},{};{})", name(a), name(x), name(c)));
                                break 'outer;
                            }
                            Some(m) if m.rows != rows || m.cols != cols => {
                                res = Err(format!("R symbol ({},{};{}) has wrong shape", name(a), name(x), name(c)));
                                break 'outer;
                            }
                            Some(m) if !m.is_invertible() => {
                                res = Err(format!("R symbol ({},{};{}) not invertible", name(a), name(x), name(c)));
                                break 'outer;
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
            res
        });
    }

    if let Some(twist) = &b.twist {
        rep.check("twist.fixed", {
            match (0..count).find(|&a| b.sigma(b.cat.grade(a), a) != a) {
                Some(a) => Err(format!(
                    "twist entry for {} whose grade's crossing moves it: hom space is zero",
                    name(a)
                )),
                None => Ok(()),
            }
        });
        rep.check("twist.complete", {
            if twist.theta.len() != count {
                Err("theta table incomplete".into())
            } else if let Some(a) = (0..count).find(|&a| twist.theta[a].is_zero()) {
                Err(format!("theta({}) is zero", name(a)))
            } else {
                Ok(())
            }
        });
    }

    if let Some(duality) = &b.duality {
        rep.check("dual.involution", {
            let mut res = Ok(());
            if duality.dual.len() != count {
                res = Err("dual table incomplete".into());
            } else {
                for a in 0..count {
                    let astar = duality.dual[a];
                    if astar >= count || duality.dual[astar] != a {
                        res = Err(format!("dual is not involutive at {}", name(a)));
                        break;
                    }
                    if b.cat.grade(astar) != pi.inv(b.cat.grade(a)) {
                        res = Err(format!("grade(dual {}) is not the inverse grade", name(a)));
                        break;
                    }
                }
            }
            res
        });
        rep.check("dual.hom", {
            let mut res = Ok(());
            for a in 0..count {
                let astar = duality.dual[a];
                let nb = b.n(astar, a, b.unit());
                let nd = b.n(a, astar, b.unit());
                if nb == 0 || nd == 0 {
                    res = Err(format!("coevaluation hom space for {} is zero", name(a)));
                    break;
                }
                let bv = duality.b.get(&a);
                let dv = duality.d.get(&a);
                match (bv, dv) {
                    (Some(bv), Some(dv)) if bv.len() == nb && dv.len() == nd => {
                        if bv.iter().all(|s| s.is_zero()) || dv.iter().all(|s| s.is_zero()) {
                            res = Err(format!("b/d components for {} vanish", name(a)));
                            break;
                        }
                    }
                    _ => {
                        res = Err(format!("b/d components for {} missing or ill-shaped", name(a)));
                        break;
                    }
                }
            }
            res
        });
        if !duality.c_lax.is_empty() || pi.order() > 1 {
            rep.check("lax.c.compat", {
                let mut res = Ok(());
                'outer: for g in pi.elements() {
                    for a in 0..count {
                        if b.sigma(g, duality.dual[a]) != duality.dual[b.sigma(g, a)] {
                            res = Err(format!(
                                "sigma_{} does not commute with duals at {}",
                                pi.name(g), name(a)
                            ));
                            break 'outer;
                        }
                        match duality.c_lax.get(&(g, a)) {
                            Some(shape) if !shape.is_zero() => {}
                            _ => {
                                res = Err(format!("c_lax[{},{}] missing or zero", pi.name(g), name(a)));
                                break 'outer;
                            }
                        }
                    }
                }
                res
            });
        }
    }

    if let Some(ga) = &b.g_action {
        let og = ga.group.order();
        rep.check("gaction.unit-grade", {
            if ga.rho_unit.len() != og {
                Err("rho table incomplete".into())
            } else {
                match (0..og).find(|&g| b.cat.grade(ga.rho_unit[g]) != pi.id()) {
                    Some(g) => Err(format!("rho({})1 has non-identity grade", ga.group.name(g))),
                    None => Ok(()),
                }
            }
        });
        let shape_ok = rep.entries.last().map(|e| e.passed).unwrap_or(false);
        if shape_ok {
            rep.check("gaction.homomorphism", {
                let mut res = Ok(());
                if ga.rho_unit[ga.group.id()] != b.unit() {
                    res = Err("rho(1)1 is not the unit simple".into());
                }
                'outer: for g in 0..og {
                    for h in 0..og {
                        let prod = ga.rho_unit[ga.group.mul(g, h)];
                        if b.n(ga.rho_unit[g], ga.rho_unit[h], prod) != 1 {
                            res = Err(format!(
                                "rho({})1 * rho({})1 is not rho({})1",
                                ga.group.name(g), ga.group.name(h), ga.group.name(ga.group.mul(g, h))
                            ));
                            break 'outer;
                        }
                    }
                }
                res
            });
            rep.check("gaction.invertible", {
                let mut res = Ok(());
                for g in 0..og {
                    let r = ga.rho_unit[g];
                    for a in 0..count {
                        let total: usize = (0..count).map(|c| b.n(r, a, c)).sum();
                        if total != 1 {
                            res = Err(format!(
                                "rho({})1 * {} is not simple",
                                ga.group.name(g), name(a)
                            ));
                            break;
                        }
                    }
                }
                res
            });
            rep.check("gaction.central", {
                let mut res = Ok(());
                'outer: for g in 0..og {
                    let r = ga.rho_unit[g];
                    for a in 0..count {
                        for x in 0..count {
                            for c in 0..count {
                                // r*(a*x) vs (r*a)*x vs a*(r*x) at multiplicity level
                                let left: usize =
                                    (0..count).map(|e| b.n(a, x, e) * b.n(r, e, c)).sum();
                                let mid: usize =
                                    (0..count).map(|e| b.n(r, a, e) * b.n(e, x, c)).sum();
                                let right: usize =
                                    (0..count).map(|e| b.n(r, x, e) * b.n(a, e, c)).sum();
                                if left != mid || left != right {
                                    res = Err(format!(
                                        "rho({})1 is not central in fusion at ({},{})",
                                        ga.group.name(g), name(a), name(x)
                                    ));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
                res
            });
        }
        if b
            .duality
            .as_ref()
            .map(|d| !d.h_lax.is_empty() || og > 1)
            .unwrap_or(false)
        {
            let duality = b.duality.as_ref().unwrap();
            rep.check("lax.h.compat", {
                let mut res = Ok(());
                'outer: for g in 0..og {
                    for a in 0..count {
                        let lhs = duality.dual[b.rho_simple(g, a).unwrap_or(usize::MAX)];
                        let rhs = b
                            .rho_simple(ga.group.inv(g), duality.dual[a])
                            .unwrap_or(usize::MAX);
                        if lhs != rhs {
                            res = Err(format!(
                                "dual(rho({}){}) differs from rho(inverse)dual",
                                ga.group.name(g), name(a)
                            ));
                            break 'outer;
                        }
                        match duality.h_lax.get(&(g, a)) {
                            Some(s) if !s.is_zero() => {}
                            _ => {
                                res = Err(format!("h_lax[{},{}] missing or zero", ga.group.name(g), name(a)));
                                break 'outer;
                            }
                        }
                    }
                }
                res
            });
        }
    }

    if let Some(forms) = &b.forms {
        rep.check("forms.shape", {
            let mut res = Ok(());
            for (&(a, x), &dim) in forms.pairing.iter().chain(forms.e.iter()) {
                if a >= count || x >= count {
                    res = Err("pairing table references unknown simple".into());
                    break;
                }
                if dim > 0 && b.cat.grade(x) != pi.inv(b.cat.grade(a)) {
                    res = Err(format!(
                        "pairing of {} and {} breaks the grade rule",
                        name(a), name(x)
                    ));
                    break;
                }
            }
            res
        });
    }

    rep
}

#[cfg(test)]
pub mod tests;
