use super::io::{load_bundle, serialize_bundle};
use super::*;
use crate::cat::SimpleObject;
use crate::scalar::Cyclotomic;

/// The one-simple bundle with trivial everything, built by hand.
pub fn trivial_bundle() -> StructureBundle<Cyclotomic> {
    let pi = GroupTable::trivial();
    let cat = GradedCategory::new(
        pi,
        vec![SimpleObject { name: "1".into(), grade: 0 }],
        0,
    )
    .unwrap();
    let mut fusion = FusionRule::zero(1);
    fusion.set(0, 0, 0, 1);
    let one = Cyclotomic::one;
    let mut f = BTreeMap::new();
    f.insert((0, 0, 0, 0), Mat::identity(1));
    let mut b = BTreeMap::new();
    b.insert(0, vec![one()]);
    let mut d = BTreeMap::new();
    d.insert(0, vec![one()]);
    let mut c_lax = BTreeMap::new();
    c_lax.insert((0, 0), one());
    let mut r = BTreeMap::new();
    r.insert((0, 0, 0), Mat::identity(1));
    let mut pairing = BTreeMap::new();
    pairing.insert((0, 0), 1);
    StructureBundle {
        cat,
        fusion,
        assoc: AssociatorData { f, l: vec![one()], r: vec![one()] },
        crossing: CrossingData { sigma: vec![vec![0]], mu: BTreeMap::new() },
        braiding: Some(BraidingData { r }),
        twist: Some(TwistData { theta: vec![one()] }),
        duality: Some(DualityData { dual: vec![0], b, d, c_lax, h_lax: BTreeMap::new() }),
        forms: Some(FormData { pairing: pairing.clone(), e: pairing }),
        g_action: None,
    }
}

/// Hand-written semion bundle file, the standard nontrivial pointed example.
pub const SEMION_JSON: &str = r#"{
  "group": {"names": ["e", "m"], "mul": [[0, 1], [1, 0]]},
  "simples": [{"name": "1", "grade": "e"}, {"name": "s", "grade": "m"}],
  "fusion": [["1","1","1",1], ["1","s","s",1], ["s","1","s",1], ["s","s","1",1]],
  "F": {
    "1,1,1,1": ["1"], "1,1,s,s": ["1"], "1,s,1,s": ["1"], "1,s,s,1": ["1"],
    "s,1,1,s": ["1"], "s,1,s,1": ["1"], "s,s,1,1": ["1"], "s,s,s,s": ["-1"]
  },
  "l": {"1": "1", "s": "1"},
  "r": {"1": "1", "s": "1"},
  "sigma": {"e": ["1", "s"], "m": ["1", "s"]},
  "R": {"1,1,1": ["1"], "1,s,s": ["1"], "s,1,s": ["1"], "s,s,1": ["1*z(4)^1"]},
  "theta": {"1": "1", "s": "1*z(4)^1"},
  "pairing": {"1,1": 1, "s,s": 1},
  "E": {"1,1": 1, "s,s": 1}
}"#;

#[test]
fn trivial_bundle_validates_and_round_trips() {
    let b = trivial_bundle();
    let report = validate_bundle(&b);
    assert!(report.all_passed(), "{}", report.render_text());
    let text = serialize_bundle(&b).unwrap();
    let b2: StructureBundle<Cyclotomic> = load_bundle(&text).unwrap();
    assert_eq!(b, b2);
    // canonical: serializing again is byte-identical
    assert_eq!(text, serialize_bundle(&b2).unwrap());
}

#[test]
fn semion_bundle_loads_and_preserves_scalars() {
    let b: StructureBundle<Cyclotomic> = load_bundle(SEMION_JSON).unwrap();
    assert_eq!(b.cat.simple_count(), 2);
    let s = b.cat.simple_by_name("s").unwrap();
    let i = Cyclotomic::root_of_unity(1, 4).unwrap();
    assert_eq!(b.twist().unwrap().theta[s], i);
    assert_eq!(b.assoc.f[&(s, s, s, s)][(0, 0)], Cyclotomic::from_integer(-1));
    let text = serialize_bundle(&b).unwrap();
    let b2: StructureBundle<Cyclotomic> = load_bundle(&text).unwrap();
    assert_eq!(b, b2);
    assert_eq!(text, serialize_bundle(&b2).unwrap());
}

#[test]
fn twist_on_crossing_moved_simple_is_rejected() {
    // Z/2-graded pointed category on Z/2 x Z/2 where the crossing swaps the
    // two odd simples: a twist section must be rejected with a
    // grade-fixedness failure.
    let pi = GroupTable::cyclic(2);
    let klein = GroupTable::cyclic(2).product(&GroupTable::cyclic(2));
    let simples: Vec<SimpleObject> = klein
        .elements()
        .map(|a| SimpleObject {
            name: klein.name(a).replace('.', "_"),
            // grade by the first coordinate
            grade: if a < 2 { 0 } else { 1 },
        })
        .collect();
    let cat = GradedCategory::new(pi, simples, 0).unwrap();
    let mut fusion = FusionRule::zero(4);
    let mut f = BTreeMap::new();
    for a in 0..4 {
        for b in 0..4 {
            fusion.set(a, b, klein.mul(a, b), 1);
            for c in 0..4 {
                f.insert((a, b, c, klein.mul(klein.mul(a, b), c)), Mat::identity(1));
            }
        }
    }
    let one = Cyclotomic::one;
    let bundle = StructureBundle {
        cat,
        fusion,
        assoc: AssociatorData { f, l: vec![one(); 4], r: vec![one(); 4] },
        crossing: CrossingData {
            // the nontrivial grade swaps the two odd simples 2 <-> 3
            sigma: vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2]],
            mu: BTreeMap::new(),
        },
        braiding: None,
        twist: Some(TwistData { theta: vec![one(); 4] }),
        duality: None,
        forms: None,
        g_action: None,
    };
    let report = validate_bundle(&bundle);
    let fail = report.first_failure().expect("twist must be rejected");
    assert_eq!(fail.id, "twist.fixed");
    assert!(fail.detail.contains("hom space is zero"), "{}", fail.detail);
}

#[test]
fn missing_f_symbol_is_a_completeness_failure() {
    let mut b = trivial_bundle();
    b.assoc.f.clear();
    let report = validate_bundle(&b);
    let fail = report.first_failure().expect("must fail");
    assert_eq!(fail.id, "assoc.complete");
    assert!(fail.detail.contains("(1,1,1;1)"), "witness names the quadruple: {}", fail.detail);
}

#[test]
fn non_invertible_r_matrix_is_rejected() {
    let mut b = trivial_bundle();
    b.braiding.as_mut().unwrap().r.insert((0, 0, 0), Mat::zero(1, 1));
    let report = validate_bundle(&b);
    let fail = report.first_failure().expect("must fail");
    assert_eq!(fail.id, "braiding.shape");
    assert!(fail.detail.contains("not invertible"));
}

#[test]
fn parse_errors_carry_position() {
    let err = load_bundle::<Cyclotomic>("{ not json").unwrap_err();
    match err {
        BundleError::Parse { line, column, .. } => {
            assert!(line >= 1 && column >= 1);
        }
        other => panic!("expected parse error, got {other}"),
    }
}
