//! Skeletal finite semisimple linear categories graded over a finite group.
//!
//! Objects are multiplicity vectors over the simple objects of a single
//! graded slice; morphisms are block matrices, one block per simple.
//! There are no morphisms between objects of different grading, and hom
//! spaces between distinct simples are zero.

use crate::group::{GroupTable, GrpElem};
use crate::linalg::{Mat, MatError};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use thiserror::Error;

pub type SimpleId = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatError {
    #[error("unknown simple object {0:?}")]
    UnknownSimple(String),
    #[error("simple index {0} out of range")]
    SimpleOutOfRange(SimpleId),
    #[error("objects live in different graded slices")]
    GradeMismatch,
    #[error("composition endpoint mismatch: {0}")]
    Endpoints(String),
    #[error("unit simple must have identity grade")]
    BadUnit,
    #[error("category needs at least one simple")]
    NoSimples,
    #[error("duplicate simple name {0:?}")]
    DuplicateSimple(String),
    #[error(transparent)]
    Mat(#[from] MatError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleObject {
    pub name: String,
    pub grade: GrpElem,
}

/// A skeletal category: a grading group and a finite list of simples.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedCategory {
    pub pi: GroupTable,
    pub simples: Vec<SimpleObject>,
    pub unit_simple: SimpleId,
}

impl GradedCategory {
    pub fn new(
        pi: GroupTable,
        simples: Vec<SimpleObject>,
        unit_simple: SimpleId,
    ) -> Result<Self, CatError> {
        if simples.is_empty() {
            return Err(CatError::NoSimples);
        }
        let mut seen = std::collections::BTreeSet::new();
        for s in &simples {
            if !seen.insert(s.name.clone()) {
                return Err(CatError::DuplicateSimple(s.name.clone()));
            }
        }
        if unit_simple >= simples.len() {
            return Err(CatError::SimpleOutOfRange(unit_simple));
        }
        if simples[unit_simple].grade != pi.id() {
            return Err(CatError::BadUnit);
        }
        Ok(GradedCategory { pi, simples, unit_simple })
    }

    pub fn simple_count(&self) -> usize {
        self.simples.len()
    }

    pub fn grade(&self, a: SimpleId) -> GrpElem {
        self.simples[a].grade
    }

    pub fn simple_by_name(&self, name: &str) -> Result<SimpleId, CatError> {
        self.simples
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| CatError::UnknownSimple(name.to_string()))
    }

    pub fn simple_name(&self, a: SimpleId) -> &str {
        &self.simples[a].name
    }

    /// Simples of one graded slice, in index order.
    pub fn slice(&self, grade: GrpElem) -> Vec<SimpleId> {
        (0..self.simples.len()).filter(|&a| self.grade(a) == grade).collect()
    }

    pub fn simple_object(&self, a: SimpleId) -> ObjectExpr {
        let mut mult = BTreeMap::new();
        mult.insert(a, 1);
        ObjectExpr { grade: self.grade(a), mult }
    }

    pub fn zero_object(&self, grade: GrpElem) -> ObjectExpr {
        ObjectExpr { grade, mult: BTreeMap::new() }
    }

    /// Tensor product of two skeletal categories over the same group:
    /// simples are ordered pairs, grades multiply.
    pub fn tensor(&self, other: &GradedCategory) -> Result<GradedCategory, CatError> {
        if self.pi != other.pi {
            return Err(CatError::GradeMismatch);
        }
        let mut simples = Vec::new();
        for a in &self.simples {
            for b in &other.simples {
                simples.push(SimpleObject {
                    name: format!("({},{})", a.name, b.name),
                    grade: self.pi.mul(a.grade, b.grade),
                });
            }
        }
        let unit = self.unit_simple * other.simples.len() + other.unit_simple;
        GradedCategory::new(self.pi.clone(), simples, unit)
    }
}

/// An object: multiplicities over simples, all of one grade.
///
/// The zero object is an empty multiplicity map with a declared grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectExpr {
    pub grade: GrpElem,
    pub mult: BTreeMap<SimpleId, usize>,
}

impl ObjectExpr {
    pub fn multiplicity(&self, a: SimpleId) -> usize {
        self.mult.get(&a).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.mult.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.values().all(|&m| m == 0)
    }

    /// Multiplicity-wise sum; grades must agree.
    pub fn direct_sum(&self, other: &ObjectExpr) -> Result<ObjectExpr, CatError> {
        if self.grade != other.grade {
            return Err(CatError::GradeMismatch);
        }
        let mut mult = self.mult.clone();
        for (&a, &m) in &other.mult {
            *mult.entry(a).or_insert(0) += m;
        }
        Ok(ObjectExpr { grade: self.grade, mult })
    }
}

/// dim hom(U, V): sum over simples of the product of multiplicities.
/// Objects in different slices have only the zero morphism between them.
pub fn hom_dim(u: &ObjectExpr, v: &ObjectExpr) -> usize {
    if u.grade != v.grade {
        return 0;
    }
    u.mult
        .iter()
        .map(|(a, &m)| m * v.multiplicity(*a))
        .sum()
}

/// A morphism: one block per simple appearing in both endpoints, with
/// shape (target multiplicity) x (source multiplicity).
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism<S> {
    pub source: ObjectExpr,
    pub target: ObjectExpr,
    pub blocks: BTreeMap<SimpleId, Mat<S>>,
}

impl<S: Scalar> Morphism<S> {
    pub fn zero(source: ObjectExpr, target: ObjectExpr) -> Self {
        let mut blocks = BTreeMap::new();
        for (&a, &m) in &source.mult {
            let n = target.multiplicity(a);
            if m > 0 && n > 0 {
                blocks.insert(a, Mat::zero(n, m));
            }
        }
        Morphism { source, target, blocks }
    }

    pub fn identity(obj: &ObjectExpr) -> Self {
        let mut blocks = BTreeMap::new();
        for (&a, &m) in &obj.mult {
            if m > 0 {
                blocks.insert(a, Mat::identity(m));
            }
        }
        Morphism { source: obj.clone(), target: obj.clone(), blocks }
    }

    pub fn block(&self, a: SimpleId) -> Option<&Mat<S>> {
        self.blocks.get(&a)
    }

    /// Diagrammatic composition: self first, then `next`.
    pub fn then(&self, next: &Morphism<S>) -> Result<Morphism<S>, CatError> {
        if self.target != next.source {
            return Err(CatError::Endpoints(format!(
                "target {:?} != source {:?}",
                self.target, next.source
            )));
        }
        let mut blocks = BTreeMap::new();
        for (&a, &m) in &self.source.mult {
            let n = next.target.multiplicity(a);
            if m == 0 || n == 0 {
                continue;
            }
            let mid = self.target.multiplicity(a);
            let fst = match self.blocks.get(&a) {
                Some(b) => b.clone(),
                None => Mat::zero(mid, m),
            };
            let snd = match next.blocks.get(&a) {
                Some(b) => b.clone(),
                None => Mat::zero(n, mid),
            };
            blocks.insert(a, snd.mul(&fst)?);
        }
        Ok(Morphism { source: self.source.clone(), target: next.target.clone(), blocks })
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Morphism<S>) -> Result<Morphism<S>, CatError> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let mut blocks = BTreeMap::new();
        for (&a, &m) in &source.mult {
            let n = target.multiplicity(a);
            if m == 0 || n == 0 {
                continue;
            }
            let mut blk = Mat::zero(n, m);
            let (sr, sc) = (self.target.multiplicity(a), self.source.multiplicity(a));
            if let Some(b) = self.blocks.get(&a) {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        blk[(i, j)] = b[(i, j)].clone();
                    }
                }
            }
            if let Some(b) = other.blocks.get(&a) {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        blk[(sr + i, sc + j)] = b[(i, j)].clone();
                    }
                }
            }
            blocks.insert(a, blk);
        }
        Ok(Morphism { source, target, blocks })
    }

    /// Two-sided inverse computed blockwise, if every block is invertible.
    pub fn inverse(&self) -> Result<Morphism<S>, CatError> {
        if hom_dim(&self.source, &self.source) != hom_dim(&self.target, &self.target)
            || self.source.grade != self.target.grade
        {
            return Err(CatError::Endpoints("inverse of non-isomorphism".into()));
        }
        let mut blocks = BTreeMap::new();
        for (&a, &m) in &self.source.mult {
            if m == 0 {
                continue;
            }
            let blk = self
                .blocks
                .get(&a)
                .ok_or(MatError::Singular)?
                .inverse()?;
            blocks.insert(a, blk);
        }
        Ok(Morphism { source: self.target.clone(), target: self.source.clone(), blocks })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.inverse()
            .map(|inv| {
                self.then(&inv).map(|c| c.eq_mor(&Morphism::identity(&self.source))).unwrap_or(false)
            })
            .unwrap_or(false)
    }

    pub fn scale(&self, s: &S) -> Morphism<S> {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|(&a, b)| (a, b.scale(s))).collect(),
        }
    }

    /// Exact (or tolerance, in float mode) equality of all blocks.
    pub fn eq_mor(&self, other: &Morphism<S>) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        for (&a, &m) in &self.source.mult {
            let n = self.target.multiplicity(a);
            if m == 0 || n == 0 {
                continue;
            }
            let zero = Mat::zero(n, m);
            let x = self.blocks.get(&a).unwrap_or(&zero);
            let y = other.blocks.get(&a).unwrap_or(&zero);
            if !x.eq_mat(y) {
                return false;
            }
        }
        true
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(a, b)| format!("s{}:{}", a, b.render()))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Direct sum of a nonempty list of objects.
pub fn direct_sum_objects(xs: &[ObjectExpr]) -> Result<ObjectExpr, CatError> {
    let mut it = xs.iter();
    let first = it.next().ok_or(CatError::NoSimples)?.clone();
    it.try_fold(first, |acc, x| acc.direct_sum(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cyclotomic;

    fn two_simple_cat() -> GradedCategory {
        GradedCategory::new(
            GroupTable::trivial(),
            vec![
                SimpleObject { name: "1".into(), grade: 0 },
                SimpleObject { name: "x".into(), grade: 0 },
            ],
            0,
        )
        .unwrap()
    }

    #[test]
    fn hom_dims_of_simples() {
        let cat = two_simple_cat();
        let a = cat.simple_object(0);
        let b = cat.simple_object(1);
        assert_eq!(hom_dim(&a, &a), 1);
        assert_eq!(hom_dim(&a, &b), 0);
        let aa = a.direct_sum(&a).unwrap();
        let aaa = aa.direct_sum(&a).unwrap();
        assert_eq!(hom_dim(&aa, &aaa), 6);
        assert_eq!(hom_dim(&aa, &aaa), hom_dim(&aaa, &aa));
        let ab = a.direct_sum(&b).unwrap();
        assert_eq!(hom_dim(&ab, &ab), 2);
    }

    #[test]
    fn identity_composes_neutrally() {
        let cat = two_simple_cat();
        let a2 = cat.simple_object(0).direct_sum(&cat.simple_object(0)).unwrap();
        let id = Morphism::<Cyclotomic>::identity(&a2);
        let mut f = Morphism::zero(a2.clone(), a2.clone());
        let blk = f.blocks.get_mut(&0).unwrap();
        blk[(0, 1)] = Cyclotomic::from_integer(5);
        blk[(1, 0)] = Cyclotomic::from_integer(2);
        assert!(id.then(&f).unwrap().eq_mor(&f));
        assert!(f.then(&id).unwrap().eq_mor(&f));
    }

    #[test]
    fn one_by_one_blocks_multiply_as_scalars() {
        let cat = two_simple_cat();
        let a = cat.simple_object(0);
        let mut f = Morphism::zero(a.clone(), a.clone());
        f.blocks.get_mut(&0).unwrap()[(0, 0)] = Cyclotomic::from_integer(3);
        let mut g = Morphism::zero(a.clone(), a.clone());
        g.blocks.get_mut(&0).unwrap()[(0, 0)] = Cyclotomic::from_integer(7);
        let fg = f.then(&g).unwrap();
        assert_eq!(fg.blocks[&0][(0, 0)], Cyclotomic::from_integer(21));
    }

    #[test]
    fn disjoint_support_composes_to_zero() {
        let cat = two_simple_cat();
        let a = cat.simple_object(0);
        let b = cat.simple_object(1);
        let ab = a.direct_sum(&b).unwrap();
        // f hits only the "1" part, g only the "x" part
        let f = Morphism::<Cyclotomic>::identity(&a);
        let f = Morphism { source: a.clone(), target: ab.clone(), blocks: f.blocks };
        let g = Morphism::<Cyclotomic>::identity(&b);
        let g = Morphism { source: ab.clone(), target: b.clone(), blocks: g.blocks };
        let fg = f.then(&g).unwrap();
        assert!(fg.eq_mor(&Morphism::zero(a, b)));
    }

    #[test]
    fn blockwise_inverse_is_two_sided() {
        let cat = two_simple_cat();
        let a2 = cat.simple_object(0).direct_sum(&cat.simple_object(0)).unwrap();
        let mut f = Morphism::<Cyclotomic>::zero(a2.clone(), a2.clone());
        let blk = f.blocks.get_mut(&0).unwrap();
        blk[(0, 0)] = Cyclotomic::from_integer(1);
        blk[(0, 1)] = Cyclotomic::from_integer(1);
        blk[(1, 1)] = Cyclotomic::from_integer(1);
        assert!(f.is_isomorphism());
        let inv = f.inverse().unwrap();
        assert!(inv.then(&f).unwrap().eq_mor(&Morphism::identity(&a2)));
    }

    #[test]
    fn tensor_of_categories_multiplies_simples_and_grades() {
        let pi = GroupTable::symmetric3();
        let mk = |grades: &[GrpElem]| {
            GradedCategory::new(
                pi.clone(),
                grades
                    .iter()
                    .enumerate()
                    .map(|(i, &g)| SimpleObject { name: format!("a{i}"), grade: g })
                    .collect(),
                0,
            )
            .unwrap()
        };
        let a = mk(&[0, 1]);
        let b = mk(&[0, 3, 4]);
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.simple_count(), 6);
        // grade of a pair is the product of grades: direct enumeration
        let mut k = 0;
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(t.grade(k), pi.mul(a.grade(i), b.grade(j)));
                k += 1;
            }
        }
        // unit category leaves the simple count unchanged
        let unit = mk(&[0]);
        assert_eq!(a.tensor(&unit).unwrap().simple_count(), a.simple_count());
    }
}
