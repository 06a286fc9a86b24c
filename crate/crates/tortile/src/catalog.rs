//! Ground-truth factory: pointed-category builders, brute-force
//! enumeration of balanced structures over roots of unity, the named
//! example bundles, and packaging of bundles as surface assignments.

use crate::axioms::{check_balanced_pi, check_forms, AxiomError};
use crate::cat::{GradedCategory, SimpleObject};
use crate::group::{GroupTable, GrpElem};
use crate::linalg::Mat;
use crate::scalar::{Cyclotomic, Scalar};
use crate::structure::{
    AssociatorData, BraidingData, BundleError, CrossingData, FormData, FusionRule, GActionData,
    StructureBundle, TwistData,
};
use crate::sx::{derive_duality, SXAssignment, SelfDualWitness, SxError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("pointed spec invalid: {0}")]
    Spec(String),
    #[error("enumeration guard exceeded: order {0} with conductor {1}")]
    Guard(usize, u64),
    #[error("bundle fails suite {0}: rows {1:?}")]
    SuiteFailure(String, Vec<String>),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Sx(#[from] SxError),
}

/// A pointed category presentation: simples are the elements of a finite
/// group, fused by its multiplication, graded by a homomorphism, with
/// associator scalars given by a normalized 3-cochain.
#[derive(Clone, Debug)]
pub struct PointedSpec {
    pub fusion_group: GroupTable,
    pub pi: GroupTable,
    /// grading[a] is the grade of the simple a; must be a homomorphism.
    pub grading: Vec<GrpElem>,
    /// omega[(a,b,c)], defaulting to 1; must be normalized (trivial when
    /// any argument is the unit).
    pub omega: BTreeMap<(usize, usize, usize), Cyclotomic>,
    /// Search conductor for enumeration.
    pub root_order: u64,
}

impl PointedSpec {
    pub fn untwisted(fusion_group: GroupTable, root_order: u64) -> Self {
        let n = fusion_group.order();
        PointedSpec {
            fusion_group,
            pi: GroupTable::trivial(),
            grading: vec![0; n],
            omega: BTreeMap::new(),
            root_order,
        }
    }

    pub fn omega_at(&self, a: usize, b: usize, c: usize) -> Cyclotomic {
        self.omega.get(&(a, b, c)).cloned().unwrap_or_else(Cyclotomic::one)
    }

    fn validate(&self) -> Result<(), CatalogError> {
        let a = &self.fusion_group;
        if self.grading.len() != a.order() {
            return Err(CatalogError::Spec("grading table has wrong length".into()));
        }
        for x in a.elements() {
            for y in a.elements() {
                if self.pi.mul(self.grading[x], self.grading[y]) != self.grading[a.mul(x, y)] {
                    return Err(CatalogError::Spec(format!(
                        "grading is not a homomorphism at ({},{})",
                        a.name(x),
                        a.name(y)
                    )));
                }
            }
        }
        for (&(x, y, z), w) in &self.omega {
            if (x == a.id() || y == a.id() || z == a.id()) && !w.is_one() {
                return Err(CatalogError::Spec("cochain is not normalized".into()));
            }
        }
        Ok(())
    }

    /// The crossing permutation for a grade: conjugation when the grading
    /// identifies the fusion group with the grading group, the identity
    /// when the grading group is abelian.
    fn sigma_of(&self, gamma: GrpElem) -> Result<Vec<usize>, CatalogError> {
        let a = &self.fusion_group;
        if self.pi.is_abelian() {
            return Ok((0..a.order()).collect());
        }
        // need a preimage of gamma to conjugate by
        let pre = a
            .elements()
            .find(|&x| self.grading[x] == gamma)
            .ok_or_else(|| CatalogError::Spec("grading misses a grade, no crossing available".into()))?;
        Ok(a.elements().map(|x| a.conj(pre, x)).collect())
    }
}

/// Assemble a pointed bundle from scalar tables. The forms are the capped
/// pants: unit-channel fusion dimensions.
pub fn build_pointed(
    spec: &PointedSpec,
    braiding: &BTreeMap<(usize, usize), Cyclotomic>,
    theta: &[Cyclotomic],
) -> Result<StructureBundle<Cyclotomic>, CatalogError> {
    spec.validate()?;
    let a = &spec.fusion_group;
    let n = a.order();
    if theta.len() != n {
        return Err(CatalogError::Spec("twist table incomplete".into()));
    }
    let simples = a
        .elements()
        .map(|x| SimpleObject { name: a.name(x).to_string(), grade: spec.grading[x] })
        .collect();
    let cat = GradedCategory::new(spec.pi.clone(), simples, a.id())
        .map_err(BundleError::from)?;
    let mut fusion = FusionRule::zero(n);
    let mut f = BTreeMap::new();
    for x in a.elements() {
        for y in a.elements() {
            fusion.set(x, y, a.mul(x, y), 1);
            for z in a.elements() {
                let d = a.mul(a.mul(x, y), z);
                f.insert((x, y, z, d), Mat::scalar(1, &spec.omega_at(x, y, z)));
            }
        }
    }
    let sigma = spec
        .pi
        .elements()
        .map(|g| spec.sigma_of(g))
        .collect::<Result<Vec<_>, _>>()?;
    let mut r = BTreeMap::new();
    for x in a.elements() {
        for y in a.elements() {
            let s = braiding
                .get(&(x, y))
                .ok_or_else(|| CatalogError::Spec(format!(
                    "braiding table misses ({},{})",
                    a.name(x),
                    a.name(y)
                )))?;
            r.insert((x, y, a.mul(x, y)), Mat::scalar(1, s));
        }
    }
    let mut pairing = BTreeMap::new();
    for x in a.elements() {
        pairing.insert((x, a.inv(x)), 1);
    }
    Ok(StructureBundle {
        cat,
        fusion,
        assoc: AssociatorData {
            f,
            l: vec![Cyclotomic::one(); n],
            r: vec![Cyclotomic::one(); n],
        },
        crossing: CrossingData { sigma, mu: BTreeMap::new() },
        braiding: Some(BraidingData { r }),
        twist: Some(TwistData { theta: theta.to_vec() }),
        duality: None,
        forms: Some(FormData { pairing: pairing.clone(), e: pairing }),
        g_action: None,
    })
}

fn hexagon_holds(
    spec: &PointedSpec,
    r: &BTreeMap<(usize, usize), Cyclotomic>,
    u: usize,
    v: usize,
    w: usize,
    sigma: &dyn Fn(usize, usize) -> usize,
) -> Option<bool> {
    let a = &spec.fusion_group;
    let om = |x, y, z| spec.omega_at(x, y, z);
    let sv_w = sigma(v, w);
    let su_v = sigma(u, v);
    let su_w = sigma(u, w);
    let suv_w = sigma(a.mul(u, v), w);
    // product in the first slot
    let h1 = match (r.get(&(a.mul(u, v), w)), r.get(&(u, sv_w)), r.get(&(v, w))) {
        (Some(luvw), Some(rusw), Some(rvw)) => {
            let rhs = om(suv_w, u, v)
                .mul(&om(u, sv_w, v).inv().ok()?)
                .mul(&om(u, v, w))
                .mul(rusw)
                .mul(rvw);
            Some(luvw.eq_scalar(&rhs))
        }
        _ => None,
    };
    // product in the second slot
    let h2 = match (r.get(&(u, a.mul(v, w))), r.get(&(u, v)), r.get(&(u, w))) {
        (Some(luvw), Some(ruv), Some(ruw)) => {
            let rhs = om(u, v, w)
                .inv()
                .ok()?
                .mul(&om(su_v, su_w, u).inv().ok()?)
                .mul(&om(su_v, u, w))
                .mul(ruv)
                .mul(ruw);
            Some(luvw.eq_scalar(&rhs))
        }
        _ => None,
    };
    match (h1, h2) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

/// All braidings over roots of unity of the given order whose canonical
/// twist completes them to a balanced structure, in lexicographic order
/// of root exponents. The hexagons prune the search; every candidate is
/// confirmed by the full balanced suite.
pub fn enumerate_pointed(spec: &PointedSpec) -> Result<Vec<StructureBundle<Cyclotomic>>, CatalogError> {
    spec.validate()?;
    let a = spec.fusion_group.clone();
    let n = a.order();
    let m = spec.root_order;
    if n > 6 || m > 24 {
        return Err(CatalogError::Guard(n, m));
    }
    let sigma_tables: Vec<Vec<usize>> = spec
        .pi
        .elements()
        .map(|g| spec.sigma_of(g))
        .collect::<Result<_, _>>()?;
    let grading = spec.grading.clone();
    let sigma = move |x: usize, y: usize| sigma_tables[grading[x]][y];

    // unit entries are forced to 1 by the hexagons
    let free_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != a.id() && y != a.id())
        .collect();
    let roots: Vec<Cyclotomic> = (0..m)
        .map(|k| Cyclotomic::root_of_unity(k as i64, m).expect("positive order"))
        .collect();

    let mut table: BTreeMap<(usize, usize), Cyclotomic> = BTreeMap::new();
    for x in a.elements() {
        table.insert((x, a.id()), Cyclotomic::one());
        table.insert((a.id(), x), Cyclotomic::one());
    }

    let mut found = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    loop {
        if stack.len() == free_pairs.len() {
            // complete table: confirm with the full suite
            let theta: Vec<Cyclotomic> =
                (0..n).map(|x| table[&(x, x)].clone()).collect();
            let bundle = build_pointed(spec, &table, &theta)?;
            if check_balanced_pi(&bundle)?.all_passed() {
                found.push(bundle);
            }
            // backtrack
            if !advance(&mut stack, &mut table, &free_pairs, &roots) {
                break;
            }
            continue;
        }
        // try extending with exponent 0
        let pair = free_pairs[stack.len()];
        table.insert(pair, roots[0].clone());
        stack.push(0);
        if !partial_ok(spec, &table, &sigma) {
            if !advance(&mut stack, &mut table, &free_pairs, &roots) {
                break;
            }
        }
    }
    Ok(found)
}

/// Move to the next candidate in lexicographic order, undoing dead ends.
fn advance(
    stack: &mut Vec<usize>,
    table: &mut BTreeMap<(usize, usize), Cyclotomic>,
    free_pairs: &[(usize, usize)],
    roots: &[Cyclotomic],
) -> bool {
    while let Some(top) = stack.pop() {
        let pair = free_pairs[stack.len()];
        if top + 1 < roots.len() {
            table.insert(pair, roots[top + 1].clone());
            stack.push(top + 1);
            return true;
        }
        table.remove(&pair);
    }
    false
}

fn partial_ok(
    spec: &PointedSpec,
    table: &BTreeMap<(usize, usize), Cyclotomic>,
    sigma: &dyn Fn(usize, usize) -> usize,
) -> bool {
    let n = spec.fusion_group.order();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if hexagon_holds(spec, table, u, v, w, sigma) == Some(false) {
                    return false;
                }
            }
        }
    }
    true
}

/// A bundle wrapped as a surface assignment, with the balanced suite (and
/// forms, when present) as a packaging precondition.
pub fn package_assignment(
    bundle: &StructureBundle<Cyclotomic>,
) -> Result<SXAssignment<Cyclotomic>, CatalogError> {
    let rep = check_balanced_pi(bundle)?;
    if !rep.all_passed() {
        return Err(CatalogError::SuiteFailure(
            "balanced".into(),
            rep.failing_ids().iter().map(|s| s.to_string()).collect(),
        ));
    }
    if bundle.forms.is_some() {
        let rep = check_forms(bundle)?;
        if !rep.all_passed() {
            return Err(CatalogError::SuiteFailure(
                "forms".into(),
                rep.failing_ids().iter().map(|s| s.to_string()).collect(),
            ));
        }
    }
    Ok(SXAssignment::new(bundle.clone()))
}

fn with_duality(bundle: StructureBundle<Cyclotomic>) -> Result<StructureBundle<Cyclotomic>, CatalogError> {
    let assignment = SXAssignment::new(bundle);
    Ok(derive_duality(&assignment, &SelfDualWitness::default())?)
}

fn zn_pointed(
    n: usize,
    omega_sign: Option<Cyclotomic>,
    q_exp: i64,
    q_order: u64,
) -> Result<StructureBundle<Cyclotomic>, CatalogError> {
    let a = GroupTable::cyclic(n);
    let mut spec = PointedSpec::untwisted(a.clone(), q_order.max(1));
    if let Some(w) = omega_sign {
        // the nontrivial normalized sign cochain on Z/2
        spec.omega.insert((1, 1, 1), w);
    }
    let q = Cyclotomic::root_of_unity(q_exp, q_order).map_err(BundleError::from)?;
    let mut braiding = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            braiding.insert((x, y), q.pow((x * y) as i64).map_err(BundleError::from)?);
        }
    }
    let theta: Vec<Cyclotomic> = (0..n)
        .map(|x| q.pow((x * x) as i64).map_err(BundleError::from))
        .collect::<Result<_, _>>()?;
    build_pointed(&spec, &braiding, &theta)
}

/// The named example bundles, each passing its declared suites. The list
/// is built once and cached.
pub fn builtin_examples() -> Vec<(&'static str, StructureBundle<Cyclotomic>)> {
    static CACHE: std::sync::OnceLock<Vec<(&'static str, StructureBundle<Cyclotomic>)>> =
        std::sync::OnceLock::new();
    CACHE.get_or_init(build_examples).clone()
}

fn build_examples() -> Vec<(&'static str, StructureBundle<Cyclotomic>)> {
    let mut out = Vec::new();

    let trivial = with_duality(
        zn_pointed(1, None, 0, 1).expect("trivial bundle builds"),
    )
    .expect("trivial duality derives");
    out.push(("trivial", trivial));

    let boson = with_duality(zn_pointed(2, None, 0, 1).expect("boson builds"))
        .expect("boson duality derives");
    out.push(("z2-boson", boson));

    let fermion = with_duality(zn_pointed(2, None, 1, 2).expect("fermion builds"))
        .expect("fermion duality derives");
    out.push(("z2-fermion", fermion));

    let semion = {
        let a = GroupTable::cyclic(2);
        let mut spec = PointedSpec::untwisted(a, 4);
        spec.omega.insert((1, 1, 1), Cyclotomic::from_integer(-1));
        let i = Cyclotomic::root_of_unity(1, 4).expect("i");
        let mut braiding = BTreeMap::new();
        braiding.insert((0, 0), Cyclotomic::one());
        braiding.insert((0, 1), Cyclotomic::one());
        braiding.insert((1, 0), Cyclotomic::one());
        braiding.insert((1, 1), i.clone());
        let theta = vec![Cyclotomic::one(), i];
        with_duality(build_pointed(&spec, &braiding, &theta).expect("semion builds"))
            .expect("semion duality derives")
    };
    out.push(("semion", semion));

    let z3 = with_duality(zn_pointed(3, None, 1, 3).expect("z3 builds"))
        .expect("z3 duality derives");
    out.push(("z3-pointed-dual", z3));

    // Z/4 simples graded over Z/2 by parity, anyonic braiding
    let z4_graded = {
        let a = GroupTable::cyclic(4);
        let mut spec = PointedSpec::untwisted(a.clone(), 4);
        spec.pi = GroupTable::cyclic(2);
        spec.grading = (0..4).map(|x| x % 2).collect();
        let i = Cyclotomic::root_of_unity(1, 4).expect("i");
        let mut braiding = BTreeMap::new();
        for x in 0..4usize {
            for y in 0..4usize {
                braiding.insert((x, y), i.pow((x * y) as i64).expect("power"));
            }
        }
        let theta: Vec<Cyclotomic> =
            (0..4usize).map(|x| i.pow((x * x) as i64).expect("power")).collect();
        with_duality(build_pointed(&spec, &braiding, &theta).expect("graded bundle builds"))
            .expect("graded duality derives")
    };
    out.push(("z4-graded", z4_graded));

    // the symmetric group graded by itself, crossing by conjugation
    let s3 = {
        let a = GroupTable::symmetric3();
        let mut spec = PointedSpec::untwisted(a.clone(), 1);
        spec.pi = a.clone();
        spec.grading = a.elements().collect();
        let mut braiding = BTreeMap::new();
        for x in a.elements() {
            for y in a.elements() {
                braiding.insert((x, y), Cyclotomic::one());
            }
        }
        let theta = vec![Cyclotomic::one(); a.order()];
        with_duality(build_pointed(&spec, &braiding, &theta).expect("s3 bundle builds"))
            .expect("s3 duality derives")
    };
    out.push(("s3-crossed", s3));

    // Z/4 with the parity braiding and the two-element action by the
    // order-two invertible simple
    let z4_gaction = {
        let mut bundle = zn_pointed(4, None, 2, 4).expect("z4 action bundle builds");
        bundle.g_action = Some(GActionData {
            group: GroupTable::cyclic(2),
            rho_unit: vec![0, 2],
        });
        with_duality(bundle).expect("z4 action duality derives")
    };
    out.push(("z4-gaction", z4_gaction));

    out
}

/// Look up a builtin by name.
pub fn builtin(name: &str) -> Option<StructureBundle<Cyclotomic>> {
    builtin_examples()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, b)| b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms;

    #[test]
    fn z2_enumeration_counts() {
        // trivial cochain: the hexagons force a sign
        let spec = PointedSpec::untwisted(GroupTable::cyclic(2), 8);
        let found = enumerate_pointed(&spec).unwrap();
        let rs: Vec<Cyclotomic> = found
            .iter()
            .map(|b| b.braiding.as_ref().unwrap().r[&(1, 1, 0)][(0, 0)].clone())
            .collect();
        assert_eq!(rs.len(), 2);
        assert!(rs.contains(&Cyclotomic::one()));
        assert!(rs.contains(&Cyclotomic::from_integer(-1)));

        // sign cochain: the hexagons force a primitive fourth root
        let mut spec = PointedSpec::untwisted(GroupTable::cyclic(2), 8);
        spec.omega.insert((1, 1, 1), Cyclotomic::from_integer(-1));
        let found = enumerate_pointed(&spec).unwrap();
        let i = Cyclotomic::root_of_unity(1, 4).unwrap();
        let rs: Vec<Cyclotomic> = found
            .iter()
            .map(|b| b.braiding.as_ref().unwrap().r[&(1, 1, 0)][(0, 0)].clone())
            .collect();
        assert_eq!(rs.len(), 2);
        assert!(rs.contains(&i));
        assert!(rs.contains(&i.conjugate()));

        // closed under conjugation
        for b in &found {
            let r = b.braiding.as_ref().unwrap().r[&(1, 1, 0)][(0, 0)].clone();
            assert!(rs.contains(&r.conjugate()));
        }
    }

    #[test]
    fn trivial_group_enumerates_one_structure() {
        let spec = PointedSpec::untwisted(GroupTable::trivial(), 8);
        assert_eq!(enumerate_pointed(&spec).unwrap().len(), 1);
    }

    #[test]
    fn guard_rejects_large_searches() {
        let spec = PointedSpec::untwisted(GroupTable::cyclic(7), 8);
        assert!(matches!(enumerate_pointed(&spec), Err(CatalogError::Guard(7, 8))));
    }

    #[test]
    fn every_builtin_passes_its_suites() {
        for (name, bundle) in builtin_examples() {
            let rep = axioms::check_balanced_pi(&bundle).unwrap();
            assert!(rep.all_passed(), "{name} balanced: {:?}", rep.failing_ids());
            let rep = axioms::check_forms(&bundle).unwrap();
            assert!(rep.all_passed(), "{name} forms: {:?}", rep.failing_ids());
            if bundle.duality.is_some() {
                let rep = axioms::check_tortile(&bundle).unwrap();
                assert!(rep.all_passed(), "{name} tortile: {:?}", rep.failing_ids());
            }
            if bundle.g_action.is_some() {
                let rep = axioms::check_g_action(&bundle).unwrap();
                assert!(rep.all_passed(), "{name} gaction: {:?}", rep.failing_ids());
            }
        }
    }

    #[test]
    fn s3_crossing_moves_grades_by_conjugation() {
        let bundle = builtin("s3-crossed").unwrap();
        let pi = bundle.pi().clone();
        let mut nontrivial = false;
        for g in pi.elements() {
            for a in 0..bundle.cat.simple_count() {
                assert_eq!(
                    bundle.cat.grade(bundle.sigma(g, a)),
                    pi.conj(g, bundle.cat.grade(a))
                );
                if bundle.sigma(g, a) != a {
                    nontrivial = true;
                }
            }
        }
        assert!(nontrivial, "the crossing must act nontrivially");
    }

    #[test]
    fn packaging_requires_passing_suites() {
        let mut bad = builtin("semion").unwrap();
        let s = bad.cat.simple_by_name("1").unwrap();
        bad.twist.as_mut().unwrap().theta[s] = Cyclotomic::from_integer(-1);
        assert!(matches!(
            package_assignment(&bad),
            Err(CatalogError::SuiteFailure(_, _))
        ));
    }
}
