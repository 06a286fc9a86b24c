//! Coherence-axiom suites: named batteries of diagram checks with
//! structured reporting.
//!
//! Each suite is a fixed list of rows; a row is either a family of
//! diagram pairs (instantiated over group elements, quantified over simple
//! assignments) or a structural computation. Row ids are stable and the
//! row lists are data, so coverage is auditable against the manifests.

use crate::cat::SimpleId;
use crate::diagram::{check_diagram, CheckOptions, DiagramError, GrpExpr, MorTerm, ObjTerm};
use crate::group::GrpElem;
use crate::scalar::Scalar;
use crate::structure::{BundleError, StructureBundle};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AxiomError {
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// One checked axiom.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SuiteRow {
    pub id: String,
    pub anchor: String,
    pub passed: bool,
    /// Number of evaluated diagram instances (assignments x instantiations).
    pub assignments: usize,
    /// On failure: the first witnessing assignment and both matrices.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failing_ids(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect()
    }
}

type StructuralCheck<S> =
    Box<dyn Fn(&StructureBundle<S>) -> Result<(usize, Option<String>), AxiomError> + Send + Sync>;

enum RowCheck<S: Scalar> {
    /// Diagram pairs checked over every simple assignment; all must hold.
    Diagrams(Vec<(MorTerm, MorTerm)>),
    /// A direct computation; returns a witness string on failure.
    Structural(StructuralCheck<S>),
}

struct RowDef<S: Scalar> {
    id: &'static str,
    anchor: &'static str,
    check: RowCheck<S>,
}

fn run_rows<S: Scalar>(
    suite: &str,
    bundle: &StructureBundle<S>,
    rows: Vec<RowDef<S>>,
) -> Result<SuiteReport, AxiomError> {
    let outcomes: Vec<Result<SuiteRow, String>> = rows
        .par_iter()
        .map(|row| {
            let run = || -> Result<(usize, Option<String>), AxiomError> {
                match &row.check {
                    RowCheck::Structural(f) => f(bundle),
                    RowCheck::Diagrams(pairs) => {
                        let mut total = 0;
                        for (lhs, rhs) in pairs {
                            let rep = check_diagram(bundle, lhs, rhs, &CheckOptions::default())?;
                            total += rep.assignments;
                            if let Some(w) = rep.witness {
                                return Ok((
                                    total,
                                    Some(format!(
                                        "assignment ({}): lhs {} vs rhs {}",
                                        w.assignment.join(","),
                                        w.lhs,
                                        w.rhs
                                    )),
                                ));
                            }
                        }
                        Ok((total, None))
                    }
                }
            };
            match run() {
                Ok((assignments, witness)) => Ok(SuiteRow {
                    id: row.id.to_string(),
                    anchor: row.anchor.to_string(),
                    passed: witness.is_none(),
                    assignments,
                    witness,
                }),
                Err(e) => Err(e.to_string()),
            }
        })
        .collect();
    let mut out = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        match o {
            Ok(r) => out.push(r),
            Err(msg) => return Err(AxiomError::Bundle(BundleError::Format(msg))),
        }
    }
    Ok(SuiteReport { suite: suite.to_string(), rows: out })
}

// ---- term helpers -------------------------------------------------------

fn v(i: usize) -> ObjTerm {
    ObjTerm::Var(i)
}

fn grade(i: usize) -> GrpExpr {
    GrpExpr::grade_of(v(i))
}

fn phi(g: GrpExpr, t: ObjTerm) -> ObjTerm {
    ObjTerm::phi(g, t)
}

fn elem(g: GrpElem) -> GrpExpr {
    GrpExpr::Elem(g)
}

/// The pentagon on ((x*y)*z)*w.
fn pentagon_pair() -> (MorTerm, MorTerm) {
    let (x, y, z, w) = (v(0), v(1), v(2), v(3));
    let lhs = MorTerm::Assoc(x.clone().star(y.clone()), z.clone(), w.clone())
        .then(MorTerm::Assoc(x.clone(), y.clone(), z.clone().star(w.clone())));
    let rhs = MorTerm::Assoc(x.clone(), y.clone(), z.clone())
        .star(MorTerm::Id(w.clone()))
        .then(MorTerm::Assoc(x.clone(), y.clone().star(z.clone()), w.clone()))
        .then(MorTerm::Id(x).star(MorTerm::Assoc(y, z, w)));
    (lhs, rhs)
}

/// The unit triangle on (x*1)*y.
fn triangle_pair() -> (MorTerm, MorTerm) {
    let (x, y) = (v(0), v(1));
    let lhs = MorTerm::Assoc(x.clone(), ObjTerm::Unit, y.clone())
        .then(MorTerm::Id(x.clone()).star(MorTerm::LeftUnit(y.clone())));
    let rhs = MorTerm::RightUnit(x).star(MorTerm::Id(y));
    (lhs, rhs)
}

/// s_{U*V,W} against the stepwise route.
fn hex_left_pair() -> (MorTerm, MorTerm) {
    let (x, y, z) = (v(0), v(1), v(2));
    let lhs = MorTerm::Braid(x.clone().star(y.clone()), z.clone());
    let phi_bz = phi(grade(1), z.clone());
    let rhs = MorTerm::Assoc(x.clone(), y.clone(), z.clone())
        .then(MorTerm::Id(x.clone()).star(MorTerm::Braid(y.clone(), z)))
        .then(MorTerm::AssocInv(x.clone(), phi_bz.clone(), y.clone()))
        .then(MorTerm::Braid(x.clone(), phi_bz.clone()).star(MorTerm::Id(y.clone())))
        .then(MorTerm::Assoc(phi(grade(0), phi_bz), x, y));
    (lhs, rhs)
}

/// s_{U,V*W} against the stepwise route.
fn hex_right_pair() -> (MorTerm, MorTerm) {
    let (x, y, z) = (v(0), v(1), v(2));
    let lhs = MorTerm::Braid(x.clone(), y.clone().star(z.clone()));
    let alpha = grade(0);
    let rhs = MorTerm::AssocInv(x.clone(), y.clone(), z.clone())
        .then(MorTerm::Braid(x.clone(), y.clone()).star(MorTerm::Id(z.clone())))
        .then(MorTerm::Assoc(phi(alpha.clone(), y.clone()), x.clone(), z.clone()))
        .then(MorTerm::Id(phi(alpha.clone(), y.clone())).star(MorTerm::Braid(x.clone(), z.clone())))
        .then(MorTerm::AssocInv(phi(alpha.clone(), y), phi(alpha, z), x));
    (lhs, rhs)
}

/// theta_{U*V} against the route through the double braiding.
pub(crate) fn twist_product_pair() -> (MorTerm, MorTerm) {
    (
        MorTerm::Twist(v(0).star(v(1))),
        MorTerm::Braid(v(0), v(1))
            .then(MorTerm::Twist(phi(grade(0), v(1))).star(MorTerm::Twist(v(0))))
            .then(MorTerm::Braid(
                phi(grade(0).prod(grade(1)), v(1)),
                phi(grade(0), v(0)),
            )),
    )
}

/// Natural-transformation probe for the naturality rows: the twist when
/// available (a genuinely nontrivial natural family), else the identity.
fn probe<S: Scalar>(bundle: &StructureBundle<S>, t: ObjTerm) -> MorTerm {
    if bundle.twist.is_some() {
        MorTerm::Twist(t)
    } else {
        MorTerm::Id(t)
    }
}

/// Target of the probe: phi(grade t) t for the twist, t otherwise.
fn probe_target<S: Scalar>(bundle: &StructureBundle<S>, t: ObjTerm) -> ObjTerm {
    if bundle.twist.is_some() {
        phi(GrpExpr::grade_of(t.clone()), t)
    } else {
        t
    }
}

// ---- balanced suite -----------------------------------------------------

/// Row manifest of the balanced suite (id, anchor).
pub fn balanced_manifest() -> Vec<(&'static str, &'static str)> {
    vec![
        ("A1.grading", "fusion adds gradings; unit is identity-graded"),
        ("A1.pentagon", "associativity pentagon"),
        ("A1.triangle", "unit triangle"),
        ("A2.hom", "crossing is a strict action with composition-coherent monoidality"),
        ("A2.monoidal", "each crossing functor is monoidal"),
        ("A3.1.hex-left", "braiding hexagon (product in the first slot)"),
        ("A3.1.hex-right", "braiding hexagon (product in the second slot)"),
        ("A3.2.naturality", "braiding naturality"),
        ("A3.3.equivariance", "braiding commutes with the crossing"),
        ("A4.1.unit", "twist on the unit is the identity"),
        ("A4.2.product", "twist of a product via the double braiding"),
        ("A4.3.naturality", "twist naturality"),
        ("A4.4.equivariance", "twist commutes with the crossing"),
    ]
}

fn balanced_rows<S: Scalar>(bundle: &StructureBundle<S>) -> Vec<RowDef<S>> {
    let pi: Vec<GrpElem> = bundle.pi().elements().collect();
    let mut rows: Vec<RowDef<S>> = Vec::new();

    rows.push(RowDef {
        id: "A1.grading",
        anchor: "fusion adds gradings; unit is identity-graded",
        check: RowCheck::Structural(Box::new(|b: &StructureBundle<S>| {
            let count = b.cat.simple_count();
            let mut checked = 0;
            for a in 0..count {
                for x in 0..count {
                    for c in 0..count {
                        checked += 1;
                        if b.n(a, x, c) > 0
                            && b.cat.grade(c) != b.pi().mul(b.cat.grade(a), b.cat.grade(x))
                        {
                            return Ok((
                                checked,
                                Some(format!(
                                    "N({},{};{}) nonzero across grades",
                                    b.cat.simple_name(a),
                                    b.cat.simple_name(x),
                                    b.cat.simple_name(c)
                                )),
                            ));
                        }
                    }
                }
            }
            if b.cat.grade(b.unit()) != b.pi().id() {
                return Ok((checked, Some("unit simple has non-identity grade".into())));
            }
            Ok((checked, None))
        })),
    });

    rows.push(RowDef {
        id: "A1.pentagon",
        anchor: "associativity pentagon",
        check: RowCheck::Diagrams(vec![pentagon_pair()]),
    });
    rows.push(RowDef {
        id: "A1.triangle",
        anchor: "unit triangle",
        check: RowCheck::Diagrams(vec![triangle_pair()]),
    });

    let hom_pairs: Vec<(MorTerm, MorTerm)> = pi
        .iter()
        .flat_map(|&g| {
            pi.iter()
                .map(move |&h| {
                    let t = v(0).star(v(1));
                    let lhs = MorTerm::Id(phi(elem(g), phi(elem(h), t.clone())));
                    let rhs = MorTerm::Id(phi(elem(g).prod(elem(h)), t));
                    (lhs, rhs)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    rows.push(RowDef {
        id: "A2.hom",
        anchor: "crossing is a strict action with composition-coherent monoidality",
        check: RowCheck::Diagrams(hom_pairs),
    });

    let monoidal_pairs: Vec<(MorTerm, MorTerm)> = pi
        .iter()
        .flat_map(|&g| {
            vec![
                (
                    MorTerm::Assoc(phi(elem(g), v(0)), phi(elem(g), v(1)), phi(elem(g), v(2))),
                    MorTerm::phi_mor(elem(g), MorTerm::Assoc(v(0), v(1), v(2))),
                ),
                (
                    MorTerm::LeftUnit(phi(elem(g), v(0))),
                    MorTerm::phi_mor(elem(g), MorTerm::LeftUnit(v(0))),
                ),
                (
                    MorTerm::RightUnit(phi(elem(g), v(0))),
                    MorTerm::phi_mor(elem(g), MorTerm::RightUnit(v(0))),
                ),
            ]
        })
        .collect();
    rows.push(RowDef {
        id: "A2.monoidal",
        anchor: "each crossing functor is monoidal",
        check: RowCheck::Diagrams(monoidal_pairs),
    });

    rows.push(RowDef {
        id: "A3.1.hex-left",
        anchor: "braiding hexagon (product in the first slot)",
        check: RowCheck::Diagrams(vec![hex_left_pair()]),
    });
    rows.push(RowDef {
        id: "A3.1.hex-right",
        anchor: "braiding hexagon (product in the second slot)",
        check: RowCheck::Diagrams(vec![hex_right_pair()]),
    });

    let (fx, fy) = (probe(bundle, v(0)), probe(bundle, v(1)));
    let (tx, ty) = (probe_target(bundle, v(0)), probe_target(bundle, v(1)));
    let naturality = (
        fx.clone().star(fy.clone()).then(MorTerm::Braid(tx, ty)),
        MorTerm::Braid(v(0), v(1)).then(MorTerm::phi_mor(grade(0), fy).star(fx)),
    );
    rows.push(RowDef {
        id: "A3.2.naturality",
        anchor: "braiding naturality",
        check: RowCheck::Diagrams(vec![naturality]),
    });

    let equivariance: Vec<(MorTerm, MorTerm)> = pi
        .iter()
        .map(|&g| {
            (
                MorTerm::Braid(phi(elem(g), v(0)), phi(elem(g), v(1))),
                MorTerm::phi_mor(elem(g), MorTerm::Braid(v(0), v(1))),
            )
        })
        .collect();
    rows.push(RowDef {
        id: "A3.3.equivariance",
        anchor: "braiding commutes with the crossing",
        check: RowCheck::Diagrams(equivariance),
    });

    rows.push(RowDef {
        id: "A4.1.unit",
        anchor: "twist on the unit is the identity",
        check: RowCheck::Diagrams(vec![(
            MorTerm::Twist(ObjTerm::Unit),
            MorTerm::Id(ObjTerm::Unit),
        )]),
    });

    rows.push(RowDef {
        id: "A4.2.product",
        anchor: "twist of a product via the double braiding",
        check: RowCheck::Diagrams(vec![twist_product_pair()]),
    });

    let twist_nat = (
        MorTerm::Twist(v(0)).then(MorTerm::Twist(phi(grade(0), v(0)))),
        MorTerm::Twist(v(0)).then(MorTerm::phi_mor(grade(0), MorTerm::Twist(v(0)))),
    );
    rows.push(RowDef {
        id: "A4.3.naturality",
        anchor: "twist naturality",
        check: RowCheck::Diagrams(vec![twist_nat]),
    });

    let twist_equi: Vec<(MorTerm, MorTerm)> = pi
        .iter()
        .map(|&g| {
            (
                MorTerm::Twist(phi(elem(g), v(0))),
                MorTerm::phi_mor(elem(g), MorTerm::Twist(v(0))),
            )
        })
        .collect();
    rows.push(RowDef {
        id: "A4.4.equivariance",
        anchor: "twist commutes with the crossing",
        check: RowCheck::Diagrams(twist_equi),
    });

    rows
}

/// Every axiom of a balanced graded category: grading, pentagon, triangle,
/// crossing coherence, both hexagons, naturality, equivariance and the
/// twist axioms.
pub fn check_balanced_pi<S: Scalar>(bundle: &StructureBundle<S>) -> Result<SuiteReport, AxiomError> {
    bundle.braiding()?;
    bundle.twist()?;
    run_rows("balanced", bundle, balanced_rows(bundle))
}

// ---- tortile suite ------------------------------------------------------

pub fn tortile_manifest() -> Vec<(&'static str, &'static str)> {
    vec![
        ("dual.zigzag-left", "snake identity on the dual"),
        ("dual.zigzag-right", "snake identity on the object"),
        ("A6.1.naturality", "lax crossing-dual comparison is natural"),
        ("A6.2.twist-dual", "dual of the twist against the twist on the dual"),
        ("A6.3.birth", "coevaluation compatibility of the comparison"),
        ("A6.3.death", "evaluation compatibility of the comparison"),
        ("P4.3.pc-square", "product and crossing comparisons commute"),
    ]
}

fn zigzag_left_pair() -> (MorTerm, MorTerm) {
    let x = v(0);
    let dx = x.clone().dual();
    let lhs = MorTerm::LeftUnit(dx.clone())
        .inverse()
        .then(MorTerm::Birth(x.clone()).star(MorTerm::Id(dx.clone())))
        .then(MorTerm::Assoc(dx.clone(), x.clone(), dx.clone()))
        .then(MorTerm::Id(dx.clone()).star(MorTerm::Death(x)))
        .then(MorTerm::RightUnit(dx.clone()));
    (lhs, MorTerm::Id(dx))
}

fn zigzag_right_pair() -> (MorTerm, MorTerm) {
    let x = v(0);
    let dx = x.clone().dual();
    let lhs = MorTerm::RightUnit(x.clone())
        .inverse()
        .then(MorTerm::Id(x.clone()).star(MorTerm::Birth(x.clone())))
        .then(MorTerm::AssocInv(x.clone(), dx, x.clone()))
        .then(MorTerm::Death(x.clone()).star(MorTerm::Id(x.clone())))
        .then(MorTerm::LeftUnit(x.clone()));
    (lhs, MorTerm::Id(x))
}

fn tortile_rows<S: Scalar>(bundle: &StructureBundle<S>) -> Vec<RowDef<S>> {
    let pi: Vec<GrpElem> = bundle.pi().elements().collect();
    let mut rows: Vec<RowDef<S>> = Vec::new();

    rows.push(RowDef {
        id: "dual.zigzag-left",
        anchor: "snake identity on the dual",
        check: RowCheck::Diagrams(vec![zigzag_left_pair()]),
    });
    rows.push(RowDef {
        id: "dual.zigzag-right",
        anchor: "snake identity on the object",
        check: RowCheck::Diagrams(vec![zigzag_right_pair()]),
    });

    let naturality: Vec<(MorTerm, MorTerm)> = pi
        .iter()
        .map(|&g| {
            let f = probe(bundle, v(0));
            let lhs = MorTerm::phi_mor(elem(g), f.clone())
                .dual_mor()
                .then(MorTerm::LaxC(elem(g), v(0)));
            let rhs = MorTerm::LaxC(elem(g), probe_target(bundle, v(0)))
                .then(MorTerm::phi_mor(elem(g), f.dual_mor()));
            (lhs, rhs)
        })
        .collect();
    rows.push(RowDef {
        id: "A6.1.naturality",
        anchor: "lax crossing-dual comparison is natural",
        check: RowCheck::Diagrams(naturality),
    });

    let twist_dual = (
        MorTerm::Twist(v(0)).dual_mor(),
        MorTerm::LaxC(grade(0), v(0)).then(MorTerm::Twist(phi(grade(0), v(0).dual()))),
    );
    rows.push(RowDef {
        id: "A6.2.twist-dual",
        anchor: "dual of the twist against the twist on the dual",
        check: RowCheck::Diagrams(vec![twist_dual]),
    });

    let birth: Vec<(MorTerm, MorTerm)> = pi
        .iter()
        .map(|&g| {
            let lhs = MorTerm::Birth(phi(elem(g), v(0)))
                .then(MorTerm::LaxC(elem(g), v(0)).star(MorTerm::Id(phi(elem(g), v(0)))));
            let rhs = MorTerm::phi_mor(elem(g), MorTerm::Birth(v(0)));
            (lhs, rhs)
        })
        .collect();
    rows.push(RowDef {
        id: "A6.3.birth",
        anchor: "coevaluation compatibility of the comparison",
        check: RowCheck::Diagrams(birth),
    });

    let death: Vec<(MorTerm, MorTerm)> = pi
        .iter()
        .map(|&g| {
            let lhs = MorTerm::Death(phi(elem(g), v(0)));
            let rhs = MorTerm::Id(phi(elem(g), v(0)))
                .star(MorTerm::LaxC(elem(g), v(0)))
                .then(MorTerm::phi_mor(elem(g), MorTerm::Death(v(0))));
            (rhs, lhs)
        })
        .collect();
    rows.push(RowDef {
        id: "A6.3.death",
        anchor: "evaluation compatibility of the comparison",
        check: RowCheck::Diagrams(death),
    });

    let square: Vec<(MorTerm, MorTerm)> = pi
        .iter()
        .map(|&g| {
            let lhs = MorTerm::PairFlip(phi(elem(g), v(0)), phi(elem(g), v(1)))
                .then(MorTerm::LaxC(elem(g), v(1)).star(MorTerm::LaxC(elem(g), v(0))));
            let rhs = MorTerm::LaxC(elem(g), v(0).star(v(1)))
                .then(MorTerm::phi_mor(elem(g), MorTerm::PairFlip(v(0), v(1))));
            (lhs, rhs)
        })
        .collect();
    rows.push(RowDef {
        id: "P4.3.pc-square",
        anchor: "product and crossing comparisons commute",
        check: RowCheck::Diagrams(square),
    });

    rows
}

/// Zig-zags, the lax crossing-dual comparison axioms, and the
/// product/crossing commuting square.
pub fn check_tortile<S: Scalar>(bundle: &StructureBundle<S>) -> Result<SuiteReport, AxiomError> {
    bundle.duality()?;
    run_rows("tortile", bundle, tortile_rows(bundle))
}

// ---- group-action suite -------------------------------------------------

pub fn gaction_manifest() -> Vec<(&'static str, &'static str)> {
    vec![
        ("A7.12.prod-left", "action absorbs into the left tensor factor"),
        ("A7.12.prod-right", "action absorbs into the right tensor factor"),
        ("A7.3.assoc", "action commutes with the associator"),
        ("A7.4.units", "action commutes with the unitors"),
        ("A7.5.braid-left", "braiding ignores the action on the first slot"),
        ("A7.5.braid-right", "braiding ignores the action on the second slot"),
        ("A7.6.twist", "twist ignores the action"),
        ("A8.1.naturality", "action-dual comparison is natural"),
        ("A8.2.birth", "coevaluation compatibility of the action comparison"),
        ("A8.2.death", "evaluation compatibility of the action comparison"),
    ]
}

fn rho(g: GrpElem, t: ObjTerm) -> ObjTerm {
    ObjTerm::rho(GrpExpr::Elem(g), t)
}

fn gaction_rows<S: Scalar>(bundle: &StructureBundle<S>, gs: &[GrpElem]) -> Vec<RowDef<S>> {
    let mut rows: Vec<RowDef<S>> = Vec::new();
    let ge = |g: GrpElem| GrpExpr::Elem(g);

    let prod_left: Vec<(MorTerm, MorTerm)> = gs
        .iter()
        .map(|&g| {
            let (fx, fy) = (probe(bundle, v(0)), probe(bundle, v(1)));
            (
                MorTerm::rho_mor(ge(g), fx.clone().star(fy.clone())),
                MorTerm::rho_mor(ge(g), fx).star(fy),
            )
        })
        .collect();
    rows.push(RowDef {
        id: "A7.12.prod-left",
        anchor: "action absorbs into the left tensor factor",
        check: RowCheck::Diagrams(prod_left),
    });

    let prod_right: Vec<(MorTerm, MorTerm)> = gs
        .iter()
        .map(|&g| {
            let (fx, fy) = (probe(bundle, v(0)), probe(bundle, v(1)));
            (
                MorTerm::rho_mor(ge(g), fx.clone().star(fy.clone())),
                fx.star(MorTerm::rho_mor(ge(g), fy)),
            )
        })
        .collect();
    rows.push(RowDef {
        id: "A7.12.prod-right",
        anchor: "action absorbs into the right tensor factor",
        check: RowCheck::Diagrams(prod_right),
    });

    let assoc: Vec<(MorTerm, MorTerm)> = gs
        .iter()
        .flat_map(|&g| {
            let base = MorTerm::rho_mor(ge(g), MorTerm::Assoc(v(0), v(1), v(2)));
            vec![
                (base.clone(), MorTerm::Assoc(rho(g, v(0)), v(1), v(2))),
                (base.clone(), MorTerm::Assoc(v(0), rho(g, v(1)), v(2))),
                (base, MorTerm::Assoc(v(0), v(1), rho(g, v(2)))),
            ]
        })
        .collect();
    rows.push(RowDef {
        id: "A7.3.assoc",
        anchor: "action commutes with the associator",
        check: RowCheck::Diagrams(assoc),
    });

    let units: Vec<(MorTerm, MorTerm)> = gs
        .iter()
        .flat_map(|&g| {
            vec![
                (
                    MorTerm::rho_mor(ge(g), MorTerm::LeftUnit(v(0))),
                    MorTerm::LeftUnit(rho(g, v(0))),
                ),
                (
                    MorTerm::rho_mor(ge(g), MorTerm::RightUnit(v(0))),
                    MorTerm::RightUnit(rho(g, v(0))),
                ),
            ]
        })
        .collect();
    rows.push(RowDef {
        id: "A7.4.units",
        anchor: "action commutes with the unitors",
        check: RowCheck::Diagrams(units),
    });

    let braid_left: Vec<(MorTerm, MorTerm)> = gs
        .iter()
        .map(|&g| {
            (
                MorTerm::Braid(rho(g, v(0)), v(1)),
                MorTerm::rho_mor(ge(g), MorTerm::Braid(v(0), v(1))),
            )
        })
        .collect();
    rows.push(RowDef {
        id: "A7.5.braid-left",
        anchor: "braiding ignores the action on the first slot",
        check: RowCheck::Diagrams(braid_left),
    });

    let braid_right: Vec<(MorTerm, MorTerm)> = gs
        .iter()
        .map(|&g| {
            (
                MorTerm::Braid(v(0), rho(g, v(1))),
                MorTerm::rho_mor(ge(g), MorTerm::Braid(v(0), v(1))),
            )
        })
        .collect();
    rows.push(RowDef {
        id: "A7.5.braid-right",
        anchor: "braiding ignores the action on the second slot",
        check: RowCheck::Diagrams(braid_right),
    });

    let twist: Vec<(MorTerm, MorTerm)> = gs
        .iter()
        .map(|&g| {
            (
                MorTerm::Twist(rho(g, v(0))),
                MorTerm::rho_mor(ge(g), MorTerm::Twist(v(0))),
            )
        })
        .collect();
    rows.push(RowDef {
        id: "A7.6.twist",
        anchor: "twist ignores the action",
        check: RowCheck::Diagrams(twist),
    });

    rows
}

fn gaction_dual_rows<S: Scalar>(bundle: &StructureBundle<S>, gs: &[GrpElem]) -> Vec<RowDef<S>> {
    let ge = |g: GrpElem| GrpExpr::Elem(g);
    let mut rows: Vec<RowDef<S>> = Vec::new();

    let naturality: Vec<(MorTerm, MorTerm)> = gs
        .iter()
        .map(|&g| {
            let f = probe(bundle, v(0));
            let lhs = MorTerm::rho_mor(ge(g), f.clone())
                .dual_mor()
                .then(MorTerm::LaxH(ge(g), v(0)));
            let rhs = MorTerm::LaxH(ge(g), probe_target(bundle, v(0)))
                .then(MorTerm::rho_mor(ge(g).inv(), f.dual_mor()));
            (lhs, rhs)
        })
        .collect();
    rows.push(RowDef {
        id: "A8.1.naturality",
        anchor: "action-dual comparison is natural",
        check: RowCheck::Diagrams(naturality),
    });

    let birth: Vec<(MorTerm, MorTerm)> = gs
        .iter()
        .map(|&g| {
            let lhs = MorTerm::Birth(rho(g, v(0)))
                .then(MorTerm::LaxH(ge(g), v(0)).star(MorTerm::Id(rho(g, v(0)))));
            (lhs, MorTerm::Birth(v(0)))
        })
        .collect();
    rows.push(RowDef {
        id: "A8.2.birth",
        anchor: "coevaluation compatibility of the action comparison",
        check: RowCheck::Diagrams(birth),
    });

    let death: Vec<(MorTerm, MorTerm)> = gs
        .iter()
        .map(|&g| {
            let lhs = MorTerm::Id(rho(g, v(0)))
                .star(MorTerm::LaxH(ge(g), v(0)))
                .then(MorTerm::Death(v(0)));
            (lhs, MorTerm::Death(rho(g, v(0))))
        })
        .collect();
    rows.push(RowDef {
        id: "A8.2.death",
        anchor: "evaluation compatibility of the action comparison",
        check: RowCheck::Diagrams(death),
    });

    rows
}

/// Compatibility of a group action with the monoidal, braided, balanced
/// and dual structure.
pub fn check_g_action<S: Scalar>(bundle: &StructureBundle<S>) -> Result<SuiteReport, AxiomError> {
    let ga = bundle.g_action()?;
    bundle.braiding()?;
    bundle.twist()?;
    bundle.duality()?;
    let gs: Vec<GrpElem> = ga.group.elements().collect();
    let mut rows = gaction_rows(bundle, &gs);
    rows.extend(gaction_dual_rows(bundle, &gs));
    run_rows("gaction", bundle, rows)
}

// ---- forms suite --------------------------------------------------------

pub fn forms_manifest() -> Vec<(&'static str, &'static str)> {
    vec![
        ("forms.nondegenerate", "the pairing and canonical element invert each other"),
        ("forms.involution", "the induced involution squares to the identity"),
        ("forms.hom-pairing", "hom spaces match the pairing through the involution"),
        ("forms.frobenius", "pairing of a product reassociates"),
    ]
}

/// The involution induced by the canonical element: a maps to the unique
/// simple paired with it.
pub fn form_partner<S: Scalar>(
    bundle: &StructureBundle<S>,
    a: SimpleId,
) -> Result<SimpleId, AxiomError> {
    let count = bundle.cat.simple_count();
    let partners: Vec<SimpleId> = (0..count).filter(|&q| bundle.e_mult(a, q) > 0).collect();
    if partners.len() == 1 && bundle.e_mult(a, partners[0]) == 1 {
        Ok(partners[0])
    } else {
        Err(AxiomError::Bundle(BundleError::Validation(format!(
            "canonical element does not pair {} with a unique simple",
            bundle.cat.simple_name(a)
        ))))
    }
}

fn forms_rows<S: Scalar>() -> Vec<RowDef<S>> {
    let mut rows: Vec<RowDef<S>> = Vec::new();

    rows.push(RowDef {
        id: "forms.nondegenerate",
        anchor: "the pairing and canonical element invert each other",
        check: RowCheck::Structural(Box::new(|b: &StructureBundle<S>| {
            let count = b.cat.simple_count();
            let mut checked = 0;
            // pairing after the element is the identity on objects
            for q in 0..count {
                for y in 0..count {
                    if b.cat.grade(q) != b.cat.grade(y) {
                        continue;
                    }
                    checked += 1;
                    let s: usize = (0..count).map(|p| b.e_mult(p, q) * b.pairing_dim(p, y)).sum();
                    if s != usize::from(q == y) {
                        return Ok((
                            checked,
                            Some(format!(
                                "composite at ({},{}) has dimension {}",
                                b.cat.simple_name(q),
                                b.cat.simple_name(y),
                                s
                            )),
                        ));
                    }
                }
            }
            // and the other composite is the identity on representables
            for u in 0..count {
                for p in 0..count {
                    if b.cat.grade(u) != b.cat.grade(p) {
                        continue;
                    }
                    checked += 1;
                    let s: usize = (0..count).map(|q| b.e_mult(p, q) * b.pairing_dim(u, q)).sum();
                    if s != usize::from(u == p) {
                        return Ok((
                            checked,
                            Some(format!(
                                "dual composite at ({},{}) has dimension {}",
                                b.cat.simple_name(u),
                                b.cat.simple_name(p),
                                s
                            )),
                        ));
                    }
                }
            }
            Ok((checked, None))
        })),
    });

    rows.push(RowDef {
        id: "forms.involution",
        anchor: "the induced involution squares to the identity",
        check: RowCheck::Structural(Box::new(|b: &StructureBundle<S>| {
            let count = b.cat.simple_count();
            for a in 0..count {
                let p = form_partner(b, a)?;
                let pp = form_partner(b, p)?;
                if pp != a {
                    return Ok((
                        count,
                        Some(format!(
                            "involution moves {} to {} and back to {}",
                            b.cat.simple_name(a),
                            b.cat.simple_name(p),
                            b.cat.simple_name(pp)
                        )),
                    ));
                }
            }
            Ok((count, None))
        })),
    });

    rows.push(RowDef {
        id: "forms.hom-pairing",
        anchor: "hom spaces match the pairing through the involution",
        check: RowCheck::Structural(Box::new(|b: &StructureBundle<S>| {
            let count = b.cat.simple_count();
            let mut checked = 0;
            for a in 0..count {
                let astar = form_partner(b, a)?;
                for x in 0..count {
                    if b.cat.grade(x) != b.cat.grade(a) {
                        continue;
                    }
                    checked += 1;
                    let want = usize::from(a == x);
                    if b.pairing_dim(astar, x) != want {
                        return Ok((
                            checked,
                            Some(format!(
                                "pairing of {} with {} has dimension {}, hom has {}",
                                b.cat.simple_name(astar),
                                b.cat.simple_name(x),
                                b.pairing_dim(astar, x),
                                want
                            )),
                        ));
                    }
                }
            }
            Ok((checked, None))
        })),
    });

    rows.push(RowDef {
        id: "forms.frobenius",
        anchor: "pairing of a product reassociates",
        check: RowCheck::Structural(Box::new(|b: &StructureBundle<S>| {
            let count = b.cat.simple_count();
            let pi = b.pi();
            let mut checked = 0;
            for u in 0..count {
                for x in 0..count {
                    for w in 0..count {
                        let prod = pi.mul(pi.mul(b.cat.grade(u), b.cat.grade(x)), b.cat.grade(w));
                        if prod != pi.id() {
                            continue;
                        }
                        checked += 1;
                        let lhs: usize =
                            (0..count).map(|c| b.n(x, w, c) * b.pairing_dim(u, c)).sum();
                        let rhs: usize =
                            (0..count).map(|e| b.n(u, x, e) * b.pairing_dim(e, w)).sum();
                        if lhs != rhs {
                            return Ok((
                                checked,
                                Some(format!(
                                    "pairing dimensions differ at ({},{},{}): {} vs {}",
                                    b.cat.simple_name(u),
                                    b.cat.simple_name(x),
                                    b.cat.simple_name(w),
                                    lhs,
                                    rhs
                                )),
                            ));
                        }
                    }
                }
            }
            Ok((checked, None))
        })),
    });

    rows
}

/// Non-degeneracy, the induced involution, the hom/pairing comparison and
/// the Frobenius reassociation of the pairing.
pub fn check_forms<S: Scalar>(bundle: &StructureBundle<S>) -> Result<SuiteReport, AxiomError> {
    bundle.forms()?;
    run_rows("forms", bundle, forms_rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cyclotomic;
    use crate::structure::io::load_bundle;
    use crate::structure::tests::{trivial_bundle, SEMION_JSON};

    #[test]
    fn manifests_have_the_pinned_row_counts() {
        let balanced = balanced_manifest();
        assert_eq!(count_prefix(&balanced, "A3."), 4);
        assert_eq!(count_prefix(&balanced, "A4."), 4);
        let tortile = tortile_manifest();
        assert_eq!(count_prefix(&tortile, "A6."), 4);
        assert_eq!(count_prefix(&tortile, "dual."), 2);
        assert_eq!(count_prefix(&tortile, "P4.3"), 1);
        let gaction = gaction_manifest();
        assert_eq!(count_prefix(&gaction, "A7."), 7);
        assert_eq!(count_prefix(&gaction, "A8."), 3);
    }

    fn count_prefix(rows: &[(&str, &str)], prefix: &str) -> usize {
        rows.iter().filter(|(id, _)| id.starts_with(prefix)).count()
    }

    #[test]
    fn trivial_bundle_passes_balanced_tortile_forms() {
        let b = trivial_bundle();
        for rep in [
            check_balanced_pi(&b).unwrap(),
            check_tortile(&b).unwrap(),
            check_forms(&b).unwrap(),
        ] {
            assert!(rep.all_passed(), "{:?}", rep.failing_ids());
        }
    }

    #[test]
    fn semion_passes_balanced() {
        let b = load_bundle::<Cyclotomic>(SEMION_JSON).unwrap();
        let rep = check_balanced_pi(&b).unwrap();
        assert!(rep.all_passed(), "failing: {:?}", rep.rows);
        assert_eq!(rep.rows.len(), balanced_manifest().len());
    }

    #[test]
    fn semion_with_nontrivial_unit_twist_fails_the_unit_axiom() {
        let mut b = load_bundle::<Cyclotomic>(SEMION_JSON).unwrap();
        let one = b.cat.simple_by_name("1").unwrap();
        b.twist.as_mut().unwrap().theta[one] = Cyclotomic::from_integer(-1);
        let rep = check_balanced_pi(&b).unwrap();
        assert!(rep.failing_ids().contains(&"A4.1.unit"));
    }
}
