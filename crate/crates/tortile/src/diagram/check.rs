//! Universally quantified commutativity checking.
//!
//! Both sides of a diagram are evaluated on every assignment of simples to
//! variables; matrices are compared exactly after conjugating into the
//! shared normal-form basis. Enumeration order is canonical, so reports do
//! not depend on the worker count.

use super::eval::{DiagramError, EvalContext};
use super::term::MorTerm;
use crate::cat::SimpleId;
use crate::scalar::Scalar;
use crate::structure::StructureBundle;
use rayon::prelude::*;

/// Per-variable domains; `None` means all simples.
#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub var_domains: Vec<Option<Vec<SimpleId>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DiagramWitness {
    pub assignment: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DiagramReport {
    pub assignments: usize,
    pub witness: Option<DiagramWitness>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

fn var_count(lhs: &MorTerm, rhs: &MorTerm) -> usize {
    lhs.max_var()
        .max(rhs.max_var())
        .map(|m| m + 1)
        .unwrap_or(0)
}

fn assignment_from_index(mut idx: usize, domains: &[Vec<SimpleId>]) -> Vec<SimpleId> {
    let mut out = Vec::with_capacity(domains.len());
    for d in domains {
        out.push(d[idx % d.len()]);
        idx /= d.len();
    }
    out
}

/// Check `lhs = rhs` over every assignment of simples to variables.
///
/// Endpoint terms must agree up to coherence (equal normal forms); a hard
/// error is returned otherwise. Axiom failures are reported as a witness,
/// not an error.
pub fn check_diagram<S: Scalar>(
    bundle: &StructureBundle<S>,
    lhs: &MorTerm,
    rhs: &MorTerm,
    options: &CheckOptions,
) -> Result<DiagramReport, DiagramError> {
    let nvars = var_count(lhs, rhs);
    let all: Vec<SimpleId> = (0..bundle.cat.simple_count()).collect();
    let domains: Vec<Vec<SimpleId>> = (0..nvars)
        .map(|i| {
            options
                .var_domains
                .get(i)
                .and_then(|d| d.clone())
                .unwrap_or_else(|| all.clone())
        })
        .collect();
    let total: usize = domains.iter().map(|d| d.len().max(1)).product();

    let outcomes: Vec<Result<Option<DiagramWitness>, String>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let assignment = assignment_from_index(idx, &domains);
            check_one(bundle, lhs, rhs, &assignment).map_err(|e| e.to_string())
        })
        .collect();

    let mut witness = None;
    for o in outcomes {
        match o {
            Ok(None) => {}
            Ok(Some(w)) => {
                witness = Some(w);
                break;
            }
            Err(msg) => return Err(DiagramError::Endpoints(msg)),
        }
    }
    Ok(DiagramReport { assignments: total, witness })
}

fn check_one<S: Scalar>(
    bundle: &StructureBundle<S>,
    lhs: &MorTerm,
    rhs: &MorTerm,
    assignment: &[SimpleId],
) -> Result<Option<DiagramWitness>, DiagramError> {
    let ctx = EvalContext::new(bundle);
    let cl = ctx.resolve_mor(lhs, assignment)?;
    let cr = ctx.resolve_mor(rhs, assignment)?;
    let (sl, tl, ml) = ctx.eval(&cl)?;
    let (sr, tr, mr) = ctx.eval(&cr)?;

    // conjugate both sides into the shared normal-form bases
    let (snf_l, sml) = ctx.to_nf(&sl)?;
    let (snf_r, smr) = ctx.to_nf(&sr)?;
    if snf_l != snf_r {
        return Err(DiagramError::Endpoints(
            "source terms do not match up to coherence".into(),
        ));
    }
    let (tnf_l, tml) = ctx.to_nf(&tl)?;
    let (tnf_r, tmr) = ctx.to_nf(&tr)?;
    if tnf_l != tnf_r {
        return Err(DiagramError::Endpoints(
            "target terms do not match up to coherence".into(),
        ));
    }
    let lhs_nf = sml.inverse()?.then(&ml)?.then(&tml)?;
    let rhs_nf = smr.inverse()?.then(&mr)?.then(&tmr)?;
    if lhs_nf.eq_mor(&rhs_nf) {
        Ok(None)
    } else {
        let names = assignment
            .iter()
            .map(|&a| bundle.cat.simple_name(a).to_string())
            .collect();
        Ok(Some(DiagramWitness {
            assignment: names,
            lhs: lhs_nf.render(),
            rhs: rhs_nf.render(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::term::{GrpExpr, MorTerm, ObjTerm};
    use crate::scalar::Cyclotomic;
    use crate::structure::io::load_bundle;
    use crate::structure::tests::{trivial_bundle, SEMION_JSON};

    fn v(i: usize) -> ObjTerm {
        ObjTerm::Var(i)
    }

    /// The pentagon on ((x*y)*z)*w.
    pub fn pentagon() -> (MorTerm, MorTerm) {
        let (x, y, z, w) = (v(0), v(1), v(2), v(3));
        let lhs = MorTerm::Assoc(x.clone().star(y.clone()), z.clone(), w.clone())
            .then(MorTerm::Assoc(x.clone(), y.clone(), z.clone().star(w.clone())));
        let rhs = MorTerm::Assoc(x.clone(), y.clone(), z.clone())
            .star(MorTerm::Id(w.clone()))
            .then(MorTerm::Assoc(x.clone(), y.clone().star(z.clone()), w.clone()))
            .then(MorTerm::Id(x.clone()).star(MorTerm::Assoc(y, z, w)));
        (lhs, rhs)
    }

    #[test]
    fn pentagon_passes_on_trivial_and_semion() {
        let (lhs, rhs) = pentagon();
        for bundle in [trivial_bundle(), load_bundle(SEMION_JSON).unwrap()] {
            let rep = check_diagram(&bundle, &lhs, &rhs, &CheckOptions::default()).unwrap();
            assert!(rep.passed(), "witness: {:?}", rep.witness);
        }
    }

    #[test]
    fn triangle_passes_on_semion() {
        let (x, y) = (v(0), v(1));
        let lhs = MorTerm::Assoc(x.clone(), ObjTerm::Unit, y.clone())
            .then(MorTerm::Id(x.clone()).star(MorTerm::LeftUnit(y.clone())));
        let rhs = MorTerm::RightUnit(x.clone()).star(MorTerm::Id(y.clone()));
        let bundle = load_bundle::<Cyclotomic>(SEMION_JSON).unwrap();
        let rep = check_diagram(&bundle, &lhs, &rhs, &CheckOptions::default()).unwrap();
        assert!(rep.passed(), "witness: {:?}", rep.witness);
    }

    #[test]
    fn braid_composed_with_inverse_is_identity() {
        let bundle = load_bundle::<Cyclotomic>(SEMION_JSON).unwrap();
        let (x, y) = (v(0), v(1));
        let lhs = MorTerm::Braid(x.clone(), y.clone())
            .then(MorTerm::Braid(x.clone(), y.clone()).inverse());
        let rhs = MorTerm::Id(x.star(y));
        let rep = check_diagram(&bundle, &lhs, &rhs, &CheckOptions::default()).unwrap();
        assert!(rep.passed(), "witness: {:?}", rep.witness);
    }

    #[test]
    fn twist_on_semion_evaluates_to_i() {
        let bundle = load_bundle::<Cyclotomic>(SEMION_JSON).unwrap();
        let s = bundle.cat.simple_by_name("s").unwrap();
        let m = crate::diagram::eval_mor(&bundle, &MorTerm::Twist(v(0)), &[s]).unwrap();
        let i = Cyclotomic::root_of_unity(1, 4).unwrap();
        assert_eq!(m.blocks[&s][(0, 0)], i);
    }

    #[test]
    fn hexagon_on_semion_passes_and_corruption_is_caught() {
        // first hexagon: braid of a product, outer route vs stepwise route
        let (x, y, z) = (v(0), v(1), v(2));
        let lhs = MorTerm::Braid(x.clone().star(y.clone()), z.clone());
        let alpha = GrpExpr::grade_of(x.clone());
        let beta = GrpExpr::grade_of(y.clone());
        let phi_bz = ObjTerm::phi(beta.clone(), z.clone());
        let rhs = MorTerm::Assoc(x.clone(), y.clone(), z.clone())
            .then(MorTerm::Id(x.clone()).star(MorTerm::Braid(y.clone(), z.clone())))
            .then(MorTerm::AssocInv(x.clone(), phi_bz.clone(), y.clone()))
            .then(MorTerm::Braid(x.clone(), phi_bz.clone()).star(MorTerm::Id(y.clone())))
            .then(MorTerm::Assoc(
                ObjTerm::phi(alpha, phi_bz),
                x.clone(),
                y.clone(),
            ));
        let bundle = load_bundle::<Cyclotomic>(SEMION_JSON).unwrap();
        let rep = check_diagram(&bundle, &lhs, &rhs, &CheckOptions::default()).unwrap();
        assert!(rep.passed(), "witness: {:?}", rep.witness);

        // corrupt R(s,s) from i to 1: the hexagon must fail with witness (s,s,s)
        let mut bad = bundle.clone();
        let s = bad.cat.simple_by_name("s").unwrap();
        bad.braiding
            .as_mut()
            .unwrap()
            .r
            .insert((s, s, 0), crate::linalg::Mat::scalar(1, &Cyclotomic::one()));
        let rep = check_diagram(&bad, &lhs, &rhs, &CheckOptions::default()).unwrap();
        let w = rep.witness.expect("corrupted hexagon must fail");
        assert_eq!(w.assignment, vec!["s", "s", "s"]);
    }
}
