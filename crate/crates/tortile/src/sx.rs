//! Evaluation of surface words under an assignment of categorical data to
//! the generators, relation checking, and the derivations: balanced graded
//! structure, sphere-class action, involutions and duality.

use crate::axioms::{self, AxiomError, SuiteReport, SuiteRow};
use crate::cat::{ObjectExpr, SimpleId};
use crate::diagram::{
    check_diagram, eval_mor, CheckOptions, DiagramError, EvalContext, GrpExpr, MorTerm, ObjTerm,
};
use crate::group::{GroupTable, GrpElem};
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::structure::{
    BundleError, DualityData, GActionData, StructureBundle,
};
use crate::surface::{
    builtin_relations, BoundarySignature, CobordismWord, Generator, SurfaceError, TwoMorRelation,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SxError {
    #[error("relation {0} fails: {1}")]
    Relation(String, String),
    #[error("witness inconsistency in row {0}: {1}")]
    Witness(String, String),
    #[error("cannot solve for {0}: {1}")]
    Solve(String, String),
    #[error("assignment is missing data for generator {0}")]
    Unassigned(String),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Assignment of categorical data to surface generators.
///
/// The bundle supplies the graded slices, the generator functors (pants =
/// fusion, crossed cylinder = crossing, sphere cylinder = action, pairing
/// = form dimensions) and the two-morphism components (Dehn twist = twist
/// scalars, untwisting move = braiding matrices). Swaps are always the
/// component exchange and plain cylinders the identity. The pants functor
/// can be overridden for experiments with broken assignments.
#[derive(Clone, Debug)]
pub struct SXAssignment<S> {
    pub bundle: StructureBundle<S>,
    /// Optional replacement for the pants object map: (a, b) -> object.
    pub pants_override: Option<BTreeMap<(SimpleId, SimpleId), ObjectExpr>>,
}

impl<S: Scalar> SXAssignment<S> {
    pub fn new(bundle: StructureBundle<S>) -> Self {
        SXAssignment { bundle, pants_override: None }
    }

    fn pants_value(&self, a: SimpleId, b: SimpleId) -> ObjectExpr {
        if let Some(table) = &self.pants_override {
            if let Some(obj) = table.get(&(a, b)) {
                return obj.clone();
            }
        }
        let ao = self.bundle.cat.simple_object(a);
        let bo = self.bundle.cat.simple_object(b);
        self.bundle.star(&ao, &bo)
    }
}

/// An object of a product of graded slices: multiplicities over tuples of
/// simples, one slot per boundary circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorObject {
    pub slots: usize,
    pub mult: BTreeMap<Vec<SimpleId>, usize>,
}

impl TensorObject {
    fn single(tuple: Vec<SimpleId>) -> Self {
        let slots = tuple.len();
        let mut mult = BTreeMap::new();
        mult.insert(tuple, 1);
        TensorObject { slots, mult }
    }

    fn zero(slots: usize) -> Self {
        TensorObject { slots, mult: BTreeMap::new() }
    }

    fn add_scaled(&mut self, other: &TensorObject, k: usize) {
        debug_assert_eq!(self.slots, other.slots);
        for (t, m) in &other.mult {
            *self.mult.entry(t.clone()).or_insert(0) += m * k;
        }
    }

    fn product(&self, other: &TensorObject) -> TensorObject {
        let mut out = TensorObject::zero(self.slots + other.slots);
        for (t1, m1) in &self.mult {
            for (t2, m2) in &other.mult {
                let mut t = t1.clone();
                t.extend(t2.iter().copied());
                *out.mult.entry(t).or_insert(0) += m1 * m2;
            }
        }
        out
    }
}

/// A linear functor between slice products, tabulated on simple tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordValue {
    pub source: BoundarySignature,
    pub target: BoundarySignature,
    pub table: BTreeMap<Vec<SimpleId>, TensorObject>,
}

fn slice_tuples<S: Scalar>(bundle: &StructureBundle<S>, sig: &BoundarySignature) -> Vec<Vec<SimpleId>> {
    let mut tuples = vec![Vec::new()];
    for &grade in sig {
        let slice = bundle.cat.slice(grade);
        let mut next = Vec::with_capacity(tuples.len() * slice.len());
        for t in &tuples {
            for &a in &slice {
                let mut t2 = t.clone();
                t2.push(a);
                next.push(t2);
            }
        }
        tuples = next;
    }
    tuples
}

fn generator_value<S: Scalar>(
    a: &SXAssignment<S>,
    gen: &Generator,
    tuple: &[SimpleId],
) -> Result<TensorObject, SxError> {
    let b = &a.bundle;
    Ok(match gen {
        Generator::Cyl(_) => TensorObject::single(vec![tuple[0]]),
        Generator::CrossCyl(_, g) => TensorObject::single(vec![b.sigma(*g, tuple[0])]),
        Generator::Pants(_, _) => {
            let obj = a.pants_value(tuple[0], tuple[1]);
            let mut out = TensorObject::zero(1);
            for (&c, &m) in &obj.mult {
                *out.mult.entry(vec![c]).or_insert(0) += m;
            }
            out
        }
        Generator::CoPants(alpha, beta) => {
            let u = tuple[0];
            let mut out = TensorObject::zero(2);
            for p in b.cat.slice(*alpha) {
                for q in b.cat.slice(*beta) {
                    let m = b.n(p, q, u);
                    if m > 0 {
                        *out.mult.entry(vec![p, q]).or_insert(0) += m;
                    }
                }
            }
            out
        }
        Generator::Disc => {
            let mut out = TensorObject::zero(0);
            let m = usize::from(tuple[0] == b.unit());
            if m > 0 {
                out.mult.insert(vec![], m);
            }
            out
        }
        Generator::CoDisc => TensorObject::single(vec![b.unit()]),
        Generator::Swap(_, _) => TensorObject::single(vec![tuple[1], tuple[0]]),
        Generator::Pair(_) => {
            let mut out = TensorObject::zero(0);
            let m = b.pairing_dim(tuple[0], tuple[1]);
            if m > 0 {
                out.mult.insert(vec![], m);
            }
            out
        }
        Generator::CoPair(alpha) => {
            b.forms().map_err(|_| SxError::Unassigned("copair".into()))?;
            let mut out = TensorObject::zero(2);
            for p in b.cat.slice(*alpha) {
                for q in b.cat.slice(b.pi().inv(*alpha)) {
                    let m = b.e_mult(p, q);
                    if m > 0 {
                        *out.mult.entry(vec![p, q]).or_insert(0) += m;
                    }
                }
            }
            out
        }
        Generator::Pi2Cyl(g) => TensorObject::single(vec![b.rho_simple(*g, tuple[0])?]),
    })
}

/// The composite functor of a word: its action on each simple tuple of
/// the source slices.
pub fn eval_word<S: Scalar>(
    assignment: &SXAssignment<S>,
    word: &CobordismWord,
) -> Result<WordValue, SxError> {
    let bundle = &assignment.bundle;
    word.validate(bundle.pi())?;
    let mut table = BTreeMap::new();
    for tuple in slice_tuples(bundle, &word.source) {
        let mut current = TensorObject::single(tuple.clone());
        for layer in &word.layers {
            let mut next = TensorObject::zero(layer.outputs(bundle.pi()).len());
            for (t, m) in &current.mult {
                // split the tuple across the layer's generators
                let mut acc = TensorObject::single(vec![]);
                let mut pos = 0;
                for gen in &layer.0 {
                    let arity = gen.inputs(bundle.pi()).len();
                    let part = &t[pos..pos + arity];
                    pos += arity;
                    let val = generator_value(assignment, gen, part)?;
                    acc = acc.product(&val);
                }
                next.add_scaled(&acc, *m);
            }
            current = next;
        }
        table.insert(tuple, current);
    }
    Ok(WordValue { source: word.source.clone(), target: word.target.clone(), table })
}

/// Check that every generator value lands in its declared target slices.
fn slice_soundness<S: Scalar>(a: &SXAssignment<S>) -> Option<String> {
    let b = &a.bundle;
    let pi = b.pi();
    for alpha in pi.elements() {
        for beta in pi.elements() {
            for &p in &b.cat.slice(alpha) {
                for &q in &b.cat.slice(beta) {
                    let obj = a.pants_value(p, q);
                    let want = pi.mul(alpha, beta);
                    for (&c, &m) in &obj.mult {
                        if m > 0 && b.cat.grade(c) != want {
                            return Some(format!(
                                "pants on ({},{}) emits {} outside its slice",
                                b.cat.simple_name(p),
                                b.cat.simple_name(q),
                                b.cat.simple_name(c)
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Evaluate every relation pair of the curated list and compare functor
/// values literally; two-morphism identities are checked at the matrix
/// level.
pub fn check_relations<S: Scalar>(assignment: &SXAssignment<S>) -> Result<SuiteReport, SxError> {
    let bundle = &assignment.bundle;
    let g_group = bundle
        .g_action
        .as_ref()
        .map(|ga| ga.group.clone())
        .unwrap_or_else(GroupTable::trivial);
    let has_forms = bundle.forms.is_some();
    let rels = builtin_relations(bundle.pi(), &g_group);

    let mut families: BTreeMap<String, SuiteRow> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    let mut record = |family: &str, anchor: &str, count: usize, witness: Option<String>| {
        let row = families.entry(family.to_string()).or_insert_with(|| {
            order.push(family.to_string());
            SuiteRow {
                id: format!("rel.{family}"),
                anchor: anchor.to_string(),
                passed: true,
                assignments: 0,
                witness: None,
            }
        });
        row.assignments += count;
        if row.witness.is_none() {
            if let Some(w) = witness {
                row.passed = false;
                row.witness = Some(w);
            }
        }
    };

    record("slices", "generator values stay in their slices", 1, slice_soundness(assignment));

    for rel in &rels.one_morphism {
        let family = rel.id.split('[').next().unwrap_or(&rel.id).to_string();
        if !has_forms && (family.starts_with("frobenius") || family.starts_with("snake")) {
            continue;
        }
        let lhs = eval_word(assignment, &rel.lhs)?;
        let rhs = eval_word(assignment, &rel.rhs)?;
        let count = lhs.table.len();
        let witness = lhs
            .table
            .iter()
            .find(|(t, v)| rhs.table.get(*t) != Some(v))
            .map(|(t, v)| {
                let names: Vec<&str> =
                    t.iter().map(|&a| bundle.cat.simple_name(a)).collect();
                format!(
                    "{} on ({}) gives {:?} vs {:?}",
                    rel.id,
                    names.join(","),
                    v.mult,
                    rhs.table.get(t).map(|x| &x.mult)
                )
            });
        record(&family, "pictured surface identity", count, witness);
    }

    for rel in &rels.two_morphism {
        match rel {
            TwoMorRelation::TwistDisc => {
                let witness = match &bundle.twist {
                    None => None,
                    Some(t) => {
                        if t.theta[bundle.unit()].eq_scalar(&S::one()) {
                            None
                        } else {
                            Some("the Dehn twist of the capped cylinder is not trivial".into())
                        }
                    }
                };
                record("2mor.twist-disc", "capping kills the Dehn twist", 1, witness);
            }
            TwoMorRelation::Balloon(alpha, beta) => {
                if bundle.twist.is_none() || bundle.braiding.is_none() {
                    continue;
                }
                let (lhs, rhs) = axioms::twist_product_pair();
                let options = CheckOptions {
                    var_domains: vec![
                        Some(bundle.cat.slice(*alpha)),
                        Some(bundle.cat.slice(*beta)),
                    ],
                };
                let rep = check_diagram(bundle, &lhs, &rhs, &options)?;
                let witness = rep.witness.map(|w| {
                    format!("fused twist differs at ({})", w.assignment.join(","))
                });
                record(
                    "2mor.balloon",
                    "Dehn twist of a fused pair factors through the double braiding",
                    rep.assignments,
                    witness,
                );
            }
        }
    }

    let rows = order.into_iter().map(|f| families.remove(&f).unwrap()).collect();
    Ok(SuiteReport { suite: "relations".to_string(), rows })
}

/// Read the balanced structure off an assignment: fusion from the pants,
/// crossing from the crossed cylinders, braiding from the untwisting move,
/// twist from the Dehn twist, forms from the pairing cylinders.
pub fn derive_balanced<S: Scalar>(assignment: &SXAssignment<S>) -> Result<StructureBundle<S>, SxError> {
    let relations = check_relations(assignment)?;
    if let Some(row) = relations.rows.iter().find(|r| !r.passed) {
        return Err(SxError::Relation(
            row.id.clone(),
            row.witness.clone().unwrap_or_default(),
        ));
    }
    let b = &assignment.bundle;
    let count = b.cat.simple_count();
    let mut fusion = crate::structure::FusionRule::zero(count);
    for p in 0..count {
        for q in 0..count {
            let obj = assignment.pants_value(p, q);
            for (&c, &m) in &obj.mult {
                fusion.set(p, q, c, m);
            }
        }
    }
    Ok(StructureBundle {
        cat: b.cat.clone(),
        fusion,
        assoc: b.assoc.clone(),
        crossing: b.crossing.clone(),
        braiding: b.braiding.clone(),
        twist: b.twist.clone(),
        duality: None,
        forms: b.forms.clone(),
        g_action: None,
    })
}

/// The sphere-class action read from the wrapped cylinders, with the
/// homomorphism property and product compatibilities verified first.
pub fn derive_pi2_action<S: Scalar>(assignment: &SXAssignment<S>) -> Result<GActionData, SxError> {
    let b = &assignment.bundle;
    let ga = b.g_action()?;
    let relations = check_relations(assignment)?;
    for row in &relations.rows {
        if row.id.starts_with("rel.pi2") && !row.passed {
            return Err(SxError::Relation(
                row.id.clone(),
                row.witness.clone().unwrap_or_default(),
            ));
        }
    }
    Ok(ga.clone())
}

/// The involution induced by the forms: per simple, its pairing partner.
/// The non-degeneracy and comparison properties are verified before the
/// table is returned.
pub fn derive_involution<S: Scalar>(bundle: &StructureBundle<S>) -> Result<Vec<SimpleId>, SxError> {
    let report = axioms::check_forms(bundle)?;
    if let Some(row) = report.rows.iter().find(|r| !r.passed) {
        return Err(SxError::Witness(
            row.id.clone(),
            row.witness.clone().unwrap_or_default(),
        ));
    }
    (0..bundle.cat.simple_count())
        .map(|a| axioms::form_partner(bundle, a).map_err(SxError::from))
        .collect()
}

/// Components of a self-dual structure beyond the bundle data: the gauge
/// identifying the pairing with hom, the adjunction components of the
/// pants and disc, and the (necessarily trivial) cylinder components.
#[derive(Clone, Debug)]
pub struct SelfDualWitness<S> {
    /// Gauge scalar per simple; the derived evaluation d_a is this scalar.
    pub hw: BTreeMap<SimpleId, S>,
    /// Pants adjunction components per fusion channel.
    pub q: BTreeMap<(SimpleId, SimpleId, SimpleId), Mat<S>>,
    /// Disc adjunction scalar.
    pub disc: S,
    /// Cylinder components per (loop, simple); the cylinder condition
    /// forces these to be 1.
    pub cyl: BTreeMap<(GrpElem, SimpleId), S>,
    /// Sphere-cylinder components per (class, simple); also forced to 1.
    pub pi2: BTreeMap<(GrpElem, SimpleId), S>,
}

impl<S: Scalar> Default for SelfDualWitness<S> {
    fn default() -> Self {
        SelfDualWitness {
            hw: BTreeMap::new(),
            q: BTreeMap::new(),
            disc: S::one(),
            cyl: BTreeMap::new(),
            pi2: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> SelfDualWitness<S> {
    pub fn hw_of(&self, a: SimpleId) -> S {
        self.hw.get(&a).cloned().unwrap_or_else(S::one)
    }
}

/// Verify the adjunction data of a self-dual assignment: dimension-level
/// adjointness for every generator, triviality on cylinders, the
/// reflection squares for the Dehn twist and the untwisting move, and the
/// two auxiliary identities used by the duality derivation.
pub fn check_self_dual<S: Scalar>(
    assignment: &SXAssignment<S>,
    witness: &SelfDualWitness<S>,
) -> Result<SuiteReport, SxError> {
    let b = &assignment.bundle;
    let pi = b.pi();
    let count = b.cat.simple_count();
    let fusion_dual = |a: SimpleId| (0..count).find(|&q| b.n(a, q, b.unit()) == 1);
    let mut rows = Vec::new();
    let mut push = |id: &str, anchor: &str, checked: usize, witness: Option<String>| {
        rows.push(SuiteRow {
            id: id.to_string(),
            anchor: anchor.to_string(),
            passed: witness.is_none(),
            assignments: checked,
            witness,
        });
    };

    // SI.cylinder: components on all cylinders are the identity
    {
        let mut w = None;
        let mut checked = 0;
        for ((g, a), s) in witness.cyl.iter() {
            checked += 1;
            if !s.eq_scalar(&S::one()) {
                w = Some(format!(
                    "cylinder component at ({},{}) is {}",
                    pi.name(*g),
                    b.cat.simple_name(*a),
                    s
                ));
                break;
            }
        }
        for ((g, a), s) in witness.pi2.iter() {
            checked += 1;
            if w.is_none() && !s.eq_scalar(&S::one()) {
                w = Some(format!(
                    "sphere-cylinder component at ({},{}) is {}",
                    g,
                    b.cat.simple_name(*a),
                    s
                ));
            }
        }
        // dimension-level adjointness of the crossing is a permutation fact
        for g in pi.elements() {
            for a in 0..count {
                for v in 0..count {
                    checked += 1;
                    let lhs = usize::from(b.sigma(g, a) == v);
                    let rhs = usize::from(a == b.sigma(pi.inv(g), v));
                    if w.is_none() && lhs != rhs {
                        w = Some(format!(
                            "crossing adjunction dimension mismatch at ({},{})",
                            b.cat.simple_name(a),
                            b.cat.simple_name(v)
                        ));
                    }
                }
            }
        }
        push(
            "SI.cylinder",
            "adjunction components on cylinders are the identity",
            checked,
            w,
        );
    }

    // SI.pants: hom(u*v, w) and hom(u (x) v, co-pants w) have equal
    // dimension and the q components are invertible
    {
        let mut w = None;
        let mut checked = 0;
        'outer: for u in 0..count {
            for v in 0..count {
                for c in 0..count {
                    checked += 1;
                    let n = b.n(u, v, c);
                    if let Some(q) = witness.q.get(&(u, v, c)) {
                        if q.rows != n || q.cols != n || (n > 0 && !q.is_invertible()) {
                            w = Some(format!(
                                "pants component at ({},{};{}) is not invertible",
                                b.cat.simple_name(u),
                                b.cat.simple_name(v),
                                b.cat.simple_name(c)
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
        push("SI.pants", "pants adjunction components are isomorphisms", checked, w);
    }

    // SI.disc: the disc scalar is a unit
    push(
        "SI.disc",
        "disc adjunction scalar is invertible",
        1,
        if witness.disc.is_zero() {
            Some("disc component is zero".into())
        } else {
            None
        },
    );

    // SI.pair: the pairing is the capped pants
    {
        let mut w = None;
        let mut checked = 0;
        if b.forms.is_some() {
            'outer: for u in 0..count {
                for v in 0..count {
                    checked += 1;
                    if b.pairing_dim(u, v) != b.n(u, v, b.unit())
                        || b.e_mult(u, v) != b.n(u, v, b.unit())
                    {
                        w = Some(format!(
                            "pairing of ({},{}) does not match the capped pants",
                            b.cat.simple_name(u),
                            b.cat.simple_name(v)
                        ));
                        break 'outer;
                    }
                }
            }
        }
        push("SI.pair", "pairing agrees with the capped pants", checked, w);
    }

    // SII.dehn: reflecting the twist matches the twist on partners
    {
        let mut w = None;
        let mut checked = 0;
        if let Some(t) = &b.twist {
            for a in 0..count {
                checked += 1;
                if let Some(astar) = fusion_dual(a) {
                    if w.is_none() && !t.theta[a].eq_scalar(&t.theta[astar]) {
                        w = Some(format!(
                            "twist of {} and of its partner differ",
                            b.cat.simple_name(a)
                        ));
                    }
                }
            }
        }
        push("SII.dehn", "reflection square for the Dehn twist", checked, w);
    }

    // SII.untwist: the braiding transported by the crossing agrees
    {
        let mut w = None;
        let mut checked = 0;
        if b.braiding.is_some() {
            for g in pi.elements() {
                for u in 0..count {
                    for v in 0..count {
                        for c in 0..count {
                            checked += 1;
                            let lhs = b.r_mat(u, v, c)?;
                            let rhs = b.r_mat(b.sigma(g, u), b.sigma(g, v), b.sigma(g, c))?;
                            if w.is_none() && !(lhs.eq_mat(&rhs)) {
                                w = Some(format!(
                                    "braiding transport differs at ({},{};{}) under {}",
                                    b.cat.simple_name(u),
                                    b.cat.simple_name(v),
                                    b.cat.simple_name(c),
                                    pi.name(g)
                                ));
                            }
                        }
                    }
                }
            }
        }
        push("SII.untwist", "reflection square for the untwisting move", checked, w);
    }

    // L4.4.triangle: twist of a partner is crossing-invariant
    {
        let mut w = None;
        let mut checked = 0;
        if let Some(t) = &b.twist {
            for a in 0..count {
                let alpha = b.cat.grade(a);
                if let Some(astar) = fusion_dual(a) {
                    checked += 1;
                    let moved = b.sigma(alpha, astar);
                    if w.is_none() && !t.theta[astar].eq_scalar(&t.theta[moved]) {
                        w = Some(format!(
                            "twist of the partner of {} moves under its grade",
                            b.cat.simple_name(a)
                        ));
                    }
                }
            }
        }
        push(
            "L4.4.triangle",
            "twist on partners is stable under the grade's crossing",
            checked,
            w,
        );
    }

    // L4.7.square: the crossing preserves partners and pairing dimensions
    {
        let mut w = None;
        let mut checked = 0;
        for g in pi.elements() {
            for a in 0..count {
                checked += 1;
                let pa = fusion_dual(a);
                let psa = fusion_dual(b.sigma(g, a));
                if w.is_none() && pa.map(|p| b.sigma(g, p)) != psa {
                    w = Some(format!(
                        "crossing by {} does not preserve the partner of {}",
                        pi.name(g),
                        b.cat.simple_name(a)
                    ));
                }
            }
        }
        push(
            "L4.7.square",
            "crossing preserves partners and the pairing",
            checked,
            w,
        );
    }

    Ok(SuiteReport { suite: "self-dual".to_string(), rows })
}

fn extract_scalar<S: Scalar>(
    m: &crate::cat::Morphism<S>,
    what: &str,
) -> Result<S, SxError> {
    let mut found = None;
    for blk in m.blocks.values() {
        for e in blk.entries() {
            if !e.is_zero() {
                if found.is_some() {
                    return Err(SxError::Solve(
                        what.into(),
                        "value is not a single scalar".into(),
                    ));
                }
                found = Some(e.clone());
            }
        }
    }
    found.ok_or_else(|| SxError::Solve(what.into(), "value vanishes".into()))
}

/// Conjugate an evaluated morphism into normal-form bases so values of
/// different composites are comparable.
fn eval_in_nf<S: Scalar>(
    bundle: &StructureBundle<S>,
    term: &MorTerm,
    assignment: &[SimpleId],
) -> Result<crate::cat::Morphism<S>, SxError> {
    let ctx = EvalContext::new(bundle);
    let c = ctx.resolve_mor(term, assignment)?;
    let (s, t, m) = ctx.eval(&c)?;
    let (_, sm) = ctx.to_nf(&s)?;
    let (_, tm) = ctx.to_nf(&t)?;
    Ok(sm.inverse().map_err(DiagramError::from)?.then(&m).map_err(DiagramError::from)?
        .then(&tm).map_err(DiagramError::from)?)
}

/// Extend a balanced bundle with duality: the dual map from the forms,
/// evaluation and coevaluation solved from the snake identities in the
/// witness gauge, and the comparison scalars solved from their
/// coevaluation triangles.
pub fn derive_duality<S: Scalar>(
    assignment: &SXAssignment<S>,
    witness: &SelfDualWitness<S>,
) -> Result<StructureBundle<S>, SxError> {
    let self_dual = check_self_dual(assignment, witness)?;
    if let Some(row) = self_dual.rows.iter().find(|r| !r.passed) {
        return Err(SxError::Witness(
            row.id.clone(),
            row.witness.clone().unwrap_or_default(),
        ));
    }
    let mut bundle = derive_balanced(assignment)?;
    bundle.forms()?;
    let count = bundle.cat.simple_count();
    let pi = bundle.pi().clone();

    // dual map: the fusion partner, cross-checked against the forms
    let dual: Vec<SimpleId> = (0..count)
        .map(|a| {
            let partners: Vec<SimpleId> =
                (0..count).filter(|&q| bundle.n(a, q, bundle.unit()) == 1).collect();
            match partners.as_slice() {
                [p] => Ok(*p),
                _ => Err(SxError::Solve(
                    format!("dual of {}", bundle.cat.simple_name(a)),
                    "fusion does not determine a unique partner".into(),
                )),
            }
        })
        .collect::<Result<_, _>>()?;
    for a in 0..count {
        if bundle.e_mult(a, dual[a]) != 1 {
            return Err(SxError::Solve(
                format!("dual of {}", bundle.cat.simple_name(a)),
                "canonical element disagrees with the fusion partner".into(),
            ));
        }
    }

    // provisional duality with unit coefficients, then solve the snakes
    let mut b_map = BTreeMap::new();
    let mut d_map = BTreeMap::new();
    for a in 0..count {
        let nb = bundle.n(dual[a], a, bundle.unit());
        let nd = bundle.n(a, dual[a], bundle.unit());
        if nb != 1 || nd != 1 {
            return Err(SxError::Solve(
                format!("coevaluation of {}", bundle.cat.simple_name(a)),
                "higher-multiplicity coevaluation spaces are not supported".into(),
            ));
        }
        b_map.insert(a, vec![S::one()]);
        d_map.insert(a, vec![witness.hw_of(a)]);
    }
    bundle.duality = Some(DualityData {
        dual: dual.clone(),
        b: b_map,
        d: d_map,
        c_lax: BTreeMap::new(),
        h_lax: BTreeMap::new(),
    });

    // zig-zag on the dual determines b against the gauge d
    let zig_left = {
        let x = ObjTerm::Var(0);
        let dx = x.clone().dual();
        MorTerm::LeftUnit(dx.clone())
            .inverse()
            .then(MorTerm::Birth(x.clone()).star(MorTerm::Id(dx.clone())))
            .then(MorTerm::Assoc(dx.clone(), x.clone(), dx.clone()))
            .then(MorTerm::Id(dx.clone()).star(MorTerm::Death(x)))
            .then(MorTerm::RightUnit(dx))
    };
    for a in 0..count {
        let m = eval_mor(&bundle, &zig_left, &[a])?;
        let kappa = extract_scalar(&m, &format!("snake scalar of {}", bundle.cat.simple_name(a)))?;
        let beta = S::one().div(&kappa).map_err(BundleError::from)?;
        bundle.duality.as_mut().unwrap().b.insert(a, vec![beta]);
    }
    // the other snake must now hold; a failure is genuine non-rigidity
    let zig_right = {
        let x = ObjTerm::Var(0);
        let dx = x.clone().dual();
        MorTerm::RightUnit(x.clone())
            .inverse()
            .then(MorTerm::Id(x.clone()).star(MorTerm::Birth(x.clone())))
            .then(MorTerm::AssocInv(x.clone(), dx, x.clone()))
            .then(MorTerm::Death(x.clone()).star(MorTerm::Id(x.clone())))
            .then(MorTerm::LeftUnit(x))
    };
    for a in 0..count {
        let m = eval_in_nf(&bundle, &zig_right, &[a])?;
        let id = eval_in_nf(&bundle, &MorTerm::Id(ObjTerm::Var(0)), &[a])?;
        if !m.eq_mor(&id) {
            return Err(SxError::Solve(
                format!("snake identity of {}", bundle.cat.simple_name(a)),
                "the two snake identities cannot hold simultaneously".into(),
            ));
        }
    }

    // comparison scalars from the coevaluation triangles
    for g in pi.elements() {
        for a in 0..count {
            bundle
                .duality
                .as_mut()
                .unwrap()
                .c_lax
                .insert((g, a), S::one());
        }
    }
    for g in pi.elements() {
        for a in 0..count {
            let lhs = MorTerm::Birth(ObjTerm::phi(GrpExpr::Elem(g), ObjTerm::Var(0))).then(
                MorTerm::LaxC(GrpExpr::Elem(g), ObjTerm::Var(0)).star(MorTerm::Id(ObjTerm::phi(
                    GrpExpr::Elem(g),
                    ObjTerm::Var(0),
                ))),
            );
            let rhs = MorTerm::phi_mor(GrpExpr::Elem(g), MorTerm::Birth(ObjTerm::Var(0)));
            let lm = eval_in_nf(&bundle, &lhs, &[a])?;
            let rm = eval_in_nf(&bundle, &rhs, &[a])?;
            let lv = extract_scalar(&lm, "comparison numerator")?;
            let rv = extract_scalar(&rm, "comparison denominator")?;
            let c = rv.div(&lv).map_err(BundleError::from)?;
            bundle.duality.as_mut().unwrap().c_lax.insert((g, a), c);
        }
    }

    if let Some(ga) = bundle.g_action.clone().or_else(|| assignment.bundle.g_action.clone()) {
        bundle.g_action = Some(ga.clone());
        for g in ga.group.elements() {
            for a in 0..count {
                bundle
                    .duality
                    .as_mut()
                    .unwrap()
                    .h_lax
                    .insert((g, a), S::one());
            }
        }
        for g in ga.group.elements() {
            for a in 0..count {
                let lhs = MorTerm::Birth(ObjTerm::rho(GrpExpr::Elem(g), ObjTerm::Var(0))).then(
                    MorTerm::LaxH(GrpExpr::Elem(g), ObjTerm::Var(0)).star(MorTerm::Id(
                        ObjTerm::rho(GrpExpr::Elem(g), ObjTerm::Var(0)),
                    )),
                );
                let rhs = MorTerm::Birth(ObjTerm::Var(0));
                let lm = eval_in_nf(&bundle, &lhs, &[a])?;
                let rm = eval_in_nf(&bundle, &rhs, &[a])?;
                let lv = extract_scalar(&lm, "action comparison numerator")?;
                let rv = extract_scalar(&rm, "action comparison denominator")?;
                let h = rv.div(&lv).map_err(BundleError::from)?;
                bundle.duality.as_mut().unwrap().h_lax.insert((g, a), h);
            }
        }
    }

    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cyclotomic;
    use crate::structure::io::load_bundle;
    use crate::structure::tests::{trivial_bundle, SEMION_JSON};

    #[test]
    fn cylinder_words_evaluate_to_the_identity() {
        let b = trivial_bundle();
        let a = SXAssignment::new(b);
        let w = CobordismWord::identity(vec![0]);
        let val = eval_word(&a, &w).unwrap();
        for (t, v) in &val.table {
            assert_eq!(v, &TensorObject::single(t.clone()));
        }
    }

    #[test]
    fn semion_relations_all_pass_and_derivation_round_trips() {
        let b: StructureBundle<Cyclotomic> = load_bundle(SEMION_JSON).unwrap();
        let a = SXAssignment::new(b.clone());
        let rep = check_relations(&a).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failing_ids());
        let derived = derive_balanced(&a).unwrap();
        assert_eq!(derived.fusion, b.fusion);
        assert_eq!(derived.assoc, b.assoc);
        assert_eq!(derived.braiding, b.braiding);
        assert_eq!(derived.twist, b.twist);
        assert_eq!(derived.forms, b.forms);
    }

    #[test]
    fn grade_violating_pants_override_fails_the_slice_relation() {
        let b: StructureBundle<Cyclotomic> = load_bundle(SEMION_JSON).unwrap();
        let s = b.cat.simple_by_name("s").unwrap();
        let one = b.cat.simple_by_name("1").unwrap();
        let mut a = SXAssignment::new(b.clone());
        let mut table = BTreeMap::new();
        // send s*s to s instead of 1: wrong slice
        table.insert((s, s), b.cat.simple_object(s));
        a.pants_override = Some(table);
        let rep = check_relations(&a).unwrap();
        assert!(rep.failing_ids().contains(&"rel.slices"), "{:?}", rep.failing_ids());
        let _ = one;
        assert!(derive_balanced(&a).is_err());
    }

    #[test]
    fn trivial_duality_derives_units() {
        let b = trivial_bundle();
        let a = SXAssignment::new(b);
        let derived = derive_duality(&a, &SelfDualWitness::default()).unwrap();
        let du = derived.duality.unwrap();
        assert_eq!(du.b[&0], vec![Cyclotomic::one()]);
        assert_eq!(du.d[&0], vec![Cyclotomic::one()]);
        assert!(du.c_lax.values().all(|c| c.is_one()));
    }

    #[test]
    fn semion_duality_passes_the_tortile_suite() {
        let b: StructureBundle<Cyclotomic> = load_bundle(SEMION_JSON).unwrap();
        let a = SXAssignment::new(b);
        let derived = derive_duality(&a, &SelfDualWitness::default()).unwrap();
        let rep = axioms::check_tortile(&derived).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.rows);
    }
}
