//! Genus-zero surface words: labeled generators, layered composition,
//! disjoint union, reflection, rotation, and the curated relation list.
//!
//! Words only bookkeep boundary signatures; equality of words in the
//! surface category is not decided here. The relation list contains the
//! finitely many pictured identities that the derivations rely on,
//! instantiated over all labels.

use crate::group::{GroupTable, GrpElem};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("signature mismatch at position {0}: {1} vs {2}")]
    Signature(usize, String, String),
    #[error("layer {layer} expects inputs {expected:?} but gets {found:?}")]
    LayerMismatch { layer: usize, expected: Vec<String>, found: Vec<String> },
    #[error("word parse error: {0}")]
    Parse(String),
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
}

/// Sequence of loop classes on a boundary, outermost first.
pub type BoundarySignature = Vec<GrpElem>;

/// The genus-zero generator surfaces with their label data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Straight cylinder: (a) -> (a).
    Cyl(GrpElem),
    /// Cylinder crossed by a loop: (a) -> (g a g^-1).
    CrossCyl(GrpElem, GrpElem),
    /// Pair of pants: (a, b) -> (ab).
    Pants(GrpElem, GrpElem),
    /// Upside-down pants: (ab) -> (a, b).
    CoPants(GrpElem, GrpElem),
    /// Capping disc: (1) -> ().
    Disc,
    /// Cup disc: () -> (1).
    CoDisc,
    /// Two crossing cylinders exchanging components: (a, b) -> (b, a).
    Swap(GrpElem, GrpElem),
    /// Pairing cylinder with two inputs: (a, a^-1) -> ().
    Pair(GrpElem),
    /// Copairing cylinder with two outputs: () -> (a, a^-1).
    CoPair(GrpElem),
    /// Cylinder wrapped by a sphere class: (1) -> (1).
    Pi2Cyl(GrpElem),
}

impl Generator {
    pub fn inputs(&self, pi: &GroupTable) -> BoundarySignature {
        match self {
            Generator::Cyl(a) | Generator::CrossCyl(a, _) => vec![*a],
            Generator::Pants(a, b) | Generator::Swap(a, b) => vec![*a, *b],
            Generator::CoPants(a, b) => vec![pi.mul(*a, *b)],
            Generator::Disc => vec![pi.id()],
            Generator::CoDisc | Generator::CoPair(_) => vec![],
            Generator::Pair(a) => vec![*a, pi.inv(*a)],
            Generator::Pi2Cyl(_) => vec![pi.id()],
        }
    }

    pub fn outputs(&self, pi: &GroupTable) -> BoundarySignature {
        match self {
            Generator::Cyl(a) => vec![*a],
            Generator::CrossCyl(a, g) => vec![pi.conj(*g, *a)],
            Generator::Pants(a, b) => vec![pi.mul(*a, *b)],
            Generator::CoPants(a, b) => vec![*a, *b],
            Generator::Disc | Generator::Pair(_) => vec![],
            Generator::CoDisc => vec![pi.id()],
            Generator::Swap(a, b) => vec![*b, *a],
            Generator::CoPair(a) => vec![*a, pi.inv(*a)],
            Generator::Pi2Cyl(_) => vec![pi.id()],
        }
    }

    /// Reflection in the source/target plane: inputs and outputs swap,
    /// boundary labels stay.
    pub fn reflect(&self, pi: &GroupTable, g_group: &GroupTable) -> Generator {
        match self {
            Generator::Cyl(a) => Generator::Cyl(*a),
            Generator::CrossCyl(a, g) => Generator::CrossCyl(pi.conj(*g, *a), pi.inv(*g)),
            Generator::Pants(a, b) => Generator::CoPants(*a, *b),
            Generator::CoPants(a, b) => Generator::Pants(*a, *b),
            Generator::Disc => Generator::CoDisc,
            Generator::CoDisc => Generator::Disc,
            Generator::Swap(a, b) => Generator::Swap(*b, *a),
            Generator::Pair(a) => Generator::CoPair(*a),
            Generator::CoPair(a) => Generator::Pair(*a),
            Generator::Pi2Cyl(g) => Generator::Pi2Cyl(g_group.inv(*g)),
        }
    }

    /// Half-turn rotation: contravariant and anti-monoidal, labels invert.
    pub fn rotate(&self, pi: &GroupTable, g_group: &GroupTable) -> Generator {
        match self {
            Generator::Cyl(a) => Generator::Cyl(pi.inv(*a)),
            Generator::CrossCyl(a, g) => {
                Generator::CrossCyl(pi.conj(*g, pi.inv(*a)), pi.inv(*g))
            }
            Generator::Pants(a, b) => Generator::CoPants(pi.inv(*b), pi.inv(*a)),
            Generator::CoPants(a, b) => Generator::Pants(pi.inv(*b), pi.inv(*a)),
            Generator::Disc => Generator::CoDisc,
            Generator::CoDisc => Generator::Disc,
            Generator::Swap(a, b) => Generator::Swap(pi.inv(*a), pi.inv(*b)),
            Generator::Pair(a) => Generator::CoPair(*a),
            Generator::CoPair(a) => Generator::Pair(*a),
            Generator::Pi2Cyl(g) => Generator::Pi2Cyl(g_group.inv(*g)),
        }
    }
}

/// One horizontal slice: generators side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer(pub Vec<Generator>);

impl Layer {
    pub fn inputs(&self, pi: &GroupTable) -> BoundarySignature {
        self.0.iter().flat_map(|g| g.inputs(pi)).collect()
    }
    pub fn outputs(&self, pi: &GroupTable) -> BoundarySignature {
        self.0.iter().flat_map(|g| g.outputs(pi)).collect()
    }
}

/// A composable word in labeled generators: a stack of layers with
/// matching boundary signatures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismWord {
    pub source: BoundarySignature,
    pub target: BoundarySignature,
    pub layers: Vec<Layer>,
}

/// Positioned mapping-class generators on a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoMorphismGen {
    /// Dehn twist of the cylinder at (layer, generator index).
    DehnTwist(usize, usize),
    /// The untwisting move exchanging two crossing cylinders.
    Untwist(usize, usize),
    /// A rescaling-and-shift isotopy (no data at desk scale).
    RsMove,
}

fn names(pi: &GroupTable, sig: &[GrpElem]) -> Vec<String> {
    sig.iter().map(|&a| pi.name(a).to_string()).collect()
}

impl CobordismWord {
    /// A single-layer word.
    pub fn generator(pi: &GroupTable, g: Generator) -> CobordismWord {
        CobordismWord {
            source: g.inputs(pi),
            target: g.outputs(pi),
            layers: vec![Layer(vec![g])],
        }
    }

    pub fn identity(signature: BoundarySignature) -> CobordismWord {
        let layer = Layer(signature.iter().map(|&a| Generator::Cyl(a)).collect());
        CobordismWord { source: signature.clone(), target: signature, layers: vec![layer] }
    }

    pub fn from_layers(pi: &GroupTable, layers: Vec<Layer>) -> Result<CobordismWord, SurfaceError> {
        if layers.is_empty() {
            return Err(SurfaceError::Parse("a word needs at least one layer".into()));
        }
        let source = layers[0].inputs(pi);
        let mut current = layers[0].outputs(pi);
        for (k, layer) in layers.iter().enumerate().skip(1) {
            let expected = layer.inputs(pi);
            if expected != current {
                return Err(SurfaceError::LayerMismatch {
                    layer: k,
                    expected: names(pi, &expected),
                    found: names(pi, &current),
                });
            }
            current = layer.outputs(pi);
        }
        Ok(CobordismWord { source, target: current, layers })
    }

    /// Re-derive and verify the stored signatures.
    pub fn validate(&self, pi: &GroupTable) -> Result<(), SurfaceError> {
        let rebuilt = CobordismWord::from_layers(pi, self.layers.clone())?;
        if rebuilt.source != self.source || rebuilt.target != self.target {
            return Err(SurfaceError::Parse("stored signatures disagree with layers".into()));
        }
        Ok(())
    }

    /// Glue two words; the target of the first must equal the source of
    /// the second, and the first differing position is reported otherwise.
    pub fn compose(&self, pi: &GroupTable, other: &CobordismWord) -> Result<CobordismWord, SurfaceError> {
        if self.target != other.source {
            let pos = self
                .target
                .iter()
                .zip(&other.source)
                .position(|(a, b)| a != b)
                .unwrap_or_else(|| self.target.len().min(other.source.len()));
            let name = |sig: &BoundarySignature, i: usize| {
                sig.get(i).map(|&a| pi.name(a).to_string()).unwrap_or_else(|| "-".into())
            };
            return Err(SurfaceError::Signature(
                pos,
                name(&self.target, pos),
                name(&other.source, pos),
            ));
        }
        let mut layers = self.layers.clone();
        layers.extend(other.layers.clone());
        Ok(CobordismWord { source: self.source.clone(), target: other.target.clone(), layers })
    }

    /// Horizontal juxtaposition. The shorter word is padded on top with
    /// identity cylinders on its target signature.
    pub fn tensor(&self, other: &CobordismWord) -> CobordismWord {
        let height = self.layers.len().max(other.layers.len());
        let mut layers = Vec::with_capacity(height);
        for k in 0..height {
            let mut gens = Vec::new();
            match self.layers.get(k) {
                Some(layer) => gens.extend(layer.0.iter().cloned()),
                None => gens.extend(self.target.iter().map(|&a| Generator::Cyl(a))),
            }
            match other.layers.get(k) {
                Some(layer) => gens.extend(layer.0.iter().cloned()),
                None => gens.extend(other.target.iter().map(|&a| Generator::Cyl(a))),
            }
            layers.push(Layer(gens));
        }
        let mut source = self.source.clone();
        source.extend(other.source.iter().copied());
        let mut target = self.target.clone();
        target.extend(other.target.iter().copied());
        CobordismWord { source, target, layers }
    }

    /// Reflection: slices reverse, generators reflect, boundaries stay.
    pub fn reflect(&self, pi: &GroupTable, g_group: &GroupTable) -> CobordismWord {
        let layers = self
            .layers
            .iter()
            .rev()
            .map(|layer| Layer(layer.0.iter().map(|g| g.reflect(pi, g_group)).collect()))
            .collect();
        CobordismWord { source: self.target.clone(), target: self.source.clone(), layers }
    }

    /// Rotation: slices reverse, generator order within each slice
    /// reverses, boundary labels invert and reverse.
    pub fn rotate(&self, pi: &GroupTable, g_group: &GroupTable) -> CobordismWord {
        let invert = |sig: &BoundarySignature| -> BoundarySignature {
            sig.iter().rev().map(|&a| pi.inv(a)).collect()
        };
        let layers = self
            .layers
            .iter()
            .rev()
            .map(|layer| Layer(layer.0.iter().rev().map(|g| g.rotate(pi, g_group)).collect()))
            .collect();
        CobordismWord { source: invert(&self.target), target: invert(&self.source), layers }
    }
}

/// Word pairs asserted equal as surfaces, plus positioned two-morphism
/// identities.
#[derive(Clone, Debug, Default)]
pub struct RelationSet {
    pub one_morphism: Vec<NamedRelation>,
    pub two_morphism: Vec<TwoMorRelation>,
}

#[derive(Clone, Debug)]
pub struct NamedRelation {
    pub id: String,
    pub lhs: CobordismWord,
    pub rhs: CobordismWord,
}

/// Desk-scale two-morphism identities, named for the checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoMorRelation {
    /// The disc kills the Dehn twist: twist components on the unit vanish.
    TwistDisc,
    /// The twist of a fused pair factors through the double braiding.
    Balloon(GrpElem, GrpElem),
}

/// The curated relation list, instantiated over all labels.
pub fn builtin_relations(pi: &GroupTable, g_group: &GroupTable) -> RelationSet {
    let gen = |g: Generator| CobordismWord::generator(pi, g);
    let mut rels = Vec::new();
    let mut push = |id: String, lhs: Result<CobordismWord, SurfaceError>, rhs: Result<CobordismWord, SurfaceError>| {
        let lhs = lhs.expect("relation lhs is well-formed");
        let rhs = rhs.expect("relation rhs is well-formed");
        debug_assert_eq!(lhs.source, rhs.source, "{id}");
        debug_assert_eq!(lhs.target, rhs.target, "{id}");
        rels.push(NamedRelation { id, lhs, rhs });
    };

    for a in pi.elements() {
        for b in pi.elements() {
            for c in pi.elements() {
                // reassociating two pants
                let lhs = gen(Generator::Pants(a, b))
                    .tensor(&gen(Generator::Cyl(c)))
                    .compose(pi, &gen(Generator::Pants(pi.mul(a, b), c)));
                let rhs = gen(Generator::Cyl(a))
                    .tensor(&gen(Generator::Pants(b, c)))
                    .compose(pi, &gen(Generator::Pants(a, pi.mul(b, c))));
                push(
                    format!("assoc[{},{},{}]", pi.name(a), pi.name(b), pi.name(c)),
                    lhs,
                    rhs,
                );
            }
        }
    }

    for a in pi.elements() {
        // discs against pants give the unit cylinders
        let lhs = gen(Generator::CoDisc)
            .tensor(&gen(Generator::Cyl(a)))
            .compose(pi, &gen(Generator::Pants(pi.id(), a)));
        push(format!("unit-left[{}]", pi.name(a)), lhs, Ok(gen(Generator::Cyl(a))));
        let lhs = gen(Generator::Cyl(a))
            .tensor(&gen(Generator::CoDisc))
            .compose(pi, &gen(Generator::Pants(a, pi.id())));
        push(format!("unit-right[{}]", pi.name(a)), lhs, Ok(gen(Generator::Cyl(a))));
    }

    for g in pi.elements() {
        for a in pi.elements() {
            for b in pi.elements() {
                // the crossing respects the pants
                let lhs = gen(Generator::CrossCyl(a, g))
                    .tensor(&gen(Generator::CrossCyl(b, g)))
                    .compose(pi, &gen(Generator::Pants(pi.conj(g, a), pi.conj(g, b))));
                let rhs = gen(Generator::Pants(a, b))
                    .compose(pi, &gen(Generator::CrossCyl(pi.mul(a, b), g)));
                push(
                    format!("cross-star[{};{},{}]", pi.name(g), pi.name(a), pi.name(b)),
                    lhs,
                    rhs,
                );
            }
            // composing crossings multiplies the loops
            for d in pi.elements() {
                let lhs = gen(Generator::CrossCyl(a, g))
                    .compose(pi, &gen(Generator::CrossCyl(pi.conj(g, a), d)));
                let rhs = Ok(gen(Generator::CrossCyl(a, pi.mul(d, g))));
                push(
                    format!("cross-hom[{},{};{}]", pi.name(g), pi.name(d), pi.name(a)),
                    lhs,
                    rhs,
                );
            }
        }
        // trivial loop, trivial crossing
        for a in pi.elements() {
            if g == pi.id() {
                push(
                    format!("cross-unit[{}]", pi.name(a)),
                    Ok(gen(Generator::CrossCyl(a, pi.id()))),
                    Ok(gen(Generator::Cyl(a))),
                );
            }
        }
    }

    for g in g_group.elements() {
        if g == g_group.id() {
            continue;
        }
        // a sphere class slides through the pants
        let one = pi.id();
        let lhs = gen(Generator::Pi2Cyl(g))
            .tensor(&gen(Generator::Cyl(one)))
            .compose(pi, &gen(Generator::Pants(one, one)));
        let rhs = gen(Generator::Pants(one, one)).compose(pi, &gen(Generator::Pi2Cyl(g)));
        push(format!("pi2-left[{}]", g_group.name(g)), lhs, rhs.clone());
        let lhs = gen(Generator::Cyl(one))
            .tensor(&gen(Generator::Pi2Cyl(g)))
            .compose(pi, &gen(Generator::Pants(one, one)));
        push(format!("pi2-right[{}]", g_group.name(g)), lhs, rhs);
        for h in g_group.elements() {
            let lhs = gen(Generator::Pi2Cyl(g)).compose(pi, &gen(Generator::Pi2Cyl(h)));
            let rhs = Ok(gen(Generator::Pi2Cyl(g_group.mul(g, h))));
            push(format!("pi2-hom[{},{}]", g_group.name(g), g_group.name(h)), lhs, rhs);
        }
    }

    for a in pi.elements() {
        for b in pi.elements() {
            let c = pi.inv(pi.mul(a, b));
            // pairing after a pants reassociates
            let lhs = gen(Generator::Cyl(a))
                .tensor(&gen(Generator::Pants(b, c)))
                .compose(pi, &gen(Generator::Pair(a)));
            let rhs = gen(Generator::Pants(a, b))
                .tensor(&gen(Generator::Cyl(c)))
                .compose(pi, &gen(Generator::Pair(pi.mul(a, b))));
            push(
                format!("frobenius[{},{},{}]", pi.name(a), pi.name(b), pi.name(c)),
                lhs,
                rhs,
            );
        }
        // snakes of the pairing against the copairing
        let lhs = gen(Generator::CoPair(a))
            .tensor(&gen(Generator::Cyl(a)))
            .compose(pi, &gen(Generator::Cyl(a)).tensor(&gen(Generator::Pair(pi.inv(a)))));
        push(format!("snake-left[{}]", pi.name(a)), lhs, Ok(gen(Generator::Cyl(a))));
        let ainv = pi.inv(a);
        let lhs = gen(Generator::Cyl(ainv))
            .tensor(&gen(Generator::CoPair(a)))
            .compose(pi, &gen(Generator::Pair(ainv)).tensor(&gen(Generator::Cyl(ainv))));
        push(format!("snake-right[{}]", pi.name(a)), lhs, Ok(gen(Generator::Cyl(ainv))));
        for b in pi.elements() {
            // two swaps cancel
            let lhs = gen(Generator::Swap(a, b)).compose(pi, &gen(Generator::Swap(b, a)));
            let rhs = Ok(gen(Generator::Cyl(a)).tensor(&gen(Generator::Cyl(b))));
            push(format!("swap[{},{}]", pi.name(a), pi.name(b)), lhs, rhs);
        }
    }

    let mut two_morphism = vec![TwoMorRelation::TwistDisc];
    for a in pi.elements() {
        for b in pi.elements() {
            two_morphism.push(TwoMorRelation::Balloon(a, b));
        }
    }

    RelationSet { one_morphism: rels, two_morphism }
}

// ---- word syntax --------------------------------------------------------

/// Parse the layered s-expression word syntax, e.g.
/// `(word (layer (pants a b) (cyl g)) (layer (crosscyl ab g)))`.
pub fn parse_word(
    text: &str,
    pi: &GroupTable,
    g_group: &GroupTable,
) -> Result<CobordismWord, SurfaceError> {
    use crate::diagram::sexpr;
    let e = sexpr::read(text).map_err(|e| SurfaceError::Parse(e.to_string()))?;
    let items = match &e {
        sexpr::SExpr::List(items) if !items.is_empty() => items,
        _ => return Err(SurfaceError::Parse("expected (word ...)".into())),
    };
    match &items[0] {
        sexpr::SExpr::Atom(a) if a == "word" => {}
        _ => return Err(SurfaceError::Parse("expected (word ...)".into())),
    }
    let mut layers = Vec::new();
    for layer_e in &items[1..] {
        let parts = match layer_e {
            sexpr::SExpr::List(parts) if !parts.is_empty() => parts,
            _ => return Err(SurfaceError::Parse("expected (layer ...)".into())),
        };
        match &parts[0] {
            sexpr::SExpr::Atom(a) if a == "layer" => {}
            _ => return Err(SurfaceError::Parse("expected (layer ...)".into())),
        }
        let mut gens = Vec::new();
        for gen_e in &parts[1..] {
            gens.push(parse_generator(gen_e, pi, g_group)?);
        }
        layers.push(Layer(gens));
    }
    CobordismWord::from_layers(pi, layers)
}

fn parse_generator(
    e: &crate::diagram::sexpr::SExpr,
    pi: &GroupTable,
    g_group: &GroupTable,
) -> Result<Generator, SurfaceError> {
    use crate::diagram::sexpr::SExpr;
    let items = match e {
        SExpr::List(items) if !items.is_empty() => items,
        _ => return Err(SurfaceError::Parse("expected a generator form".into())),
    };
    let head = match &items[0] {
        SExpr::Atom(a) => a.as_str(),
        _ => return Err(SurfaceError::Parse("expected a generator name".into())),
    };
    let arg = |i: usize| -> Result<GrpElem, SurfaceError> {
        match items.get(i) {
            Some(SExpr::Atom(a)) => pi
                .by_name(a)
                .map_err(|_| SurfaceError::UnknownElement(a.clone())),
            _ => Err(SurfaceError::Parse(format!("{head} needs label {i}"))),
        }
    };
    let garg = |i: usize| -> Result<GrpElem, SurfaceError> {
        match items.get(i) {
            Some(SExpr::Atom(a)) => g_group
                .by_name(a)
                .map_err(|_| SurfaceError::UnknownElement(a.clone())),
            _ => Err(SurfaceError::Parse(format!("{head} needs label {i}"))),
        }
    };
    let expect_len = |n: usize| -> Result<(), SurfaceError> {
        if items.len() == n + 1 {
            Ok(())
        } else {
            Err(SurfaceError::Parse(format!("{head} takes {n} labels")))
        }
    };
    Ok(match head {
        "cyl" => {
            expect_len(1)?;
            Generator::Cyl(arg(1)?)
        }
        "crosscyl" => {
            expect_len(2)?;
            Generator::CrossCyl(arg(1)?, arg(2)?)
        }
        "pants" => {
            expect_len(2)?;
            Generator::Pants(arg(1)?, arg(2)?)
        }
        "copants" => {
            expect_len(2)?;
            Generator::CoPants(arg(1)?, arg(2)?)
        }
        "disc" => {
            expect_len(0)?;
            Generator::Disc
        }
        "codisc" => {
            expect_len(0)?;
            Generator::CoDisc
        }
        "swap" => {
            expect_len(2)?;
            Generator::Swap(arg(1)?, arg(2)?)
        }
        "pair" => {
            expect_len(1)?;
            Generator::Pair(arg(1)?)
        }
        "copair" => {
            expect_len(1)?;
            Generator::CoPair(arg(1)?)
        }
        "pi2" => {
            expect_len(1)?;
            Generator::Pi2Cyl(garg(1)?)
        }
        other => return Err(SurfaceError::Parse(format!("unknown generator {other:?}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> GroupTable {
        GroupTable::symmetric3()
    }

    #[test]
    fn crossed_cylinders_compose_their_loops() {
        let pi = s3();
        let g1 = GroupTable::trivial();
        for a in pi.elements() {
            for g in pi.elements() {
                for d in pi.elements() {
                    let w1 = CobordismWord::generator(&pi, Generator::CrossCyl(a, g));
                    let w2 =
                        CobordismWord::generator(&pi, Generator::CrossCyl(pi.conj(g, a), d));
                    let w = w1.compose(&pi, &w2).unwrap();
                    assert_eq!(w.source, vec![a]);
                    assert_eq!(w.target, vec![pi.conj(pi.mul(d, g), a)]);
                    let _ = &g1;
                }
            }
        }
    }

    #[test]
    fn pants_then_crossing_is_signature_compatible() {
        let pi = s3();
        let a = pi.by_name("r").unwrap();
        let b = pi.by_name("s").unwrap();
        let g = pi.by_name("sr").unwrap();
        let w = CobordismWord::generator(&pi, Generator::Pants(a, b))
            .compose(&pi, &CobordismWord::generator(&pi, Generator::CrossCyl(pi.mul(a, b), g)))
            .unwrap();
        assert_eq!(w.source, vec![a, b]);
        assert_eq!(w.target, vec![pi.conj(g, pi.mul(a, b))]);
    }

    #[test]
    fn mismatched_composition_reports_first_position() {
        let pi = GroupTable::cyclic(3);
        let w1 = CobordismWord::identity(vec![0, 1]);
        let w2 = CobordismWord::identity(vec![0, 2]);
        match w1.compose(&pi, &w2) {
            Err(SurfaceError::Signature(pos, a, b)) => {
                assert_eq!(pos, 1);
                assert_eq!((a.as_str(), b.as_str()), ("1", "2"));
            }
            other => panic!("expected a signature mismatch, got {other:?}"),
        }
    }

    #[test]
    fn reflect_fixes_cylinders_and_flips_pants() {
        let pi = s3();
        let g1 = GroupTable::trivial();
        let a = pi.by_name("r").unwrap();
        let b = pi.by_name("s").unwrap();
        let cyl = CobordismWord::generator(&pi, Generator::Cyl(a));
        assert_eq!(cyl.reflect(&pi, &g1), cyl);
        let pants = CobordismWord::generator(&pi, Generator::Pants(a, b));
        let r = pants.reflect(&pi, &g1);
        assert_eq!(r.source, vec![pi.mul(a, b)]);
        assert_eq!(r.target, vec![a, b]);
    }

    #[test]
    fn rotate_sends_pair_to_copair() {
        let pi = s3();
        let g1 = GroupTable::trivial();
        let a = pi.by_name("r").unwrap();
        let pair = CobordismWord::generator(&pi, Generator::Pair(a));
        let rot = pair.rotate(&pi, &g1);
        assert_eq!(rot.source, Vec::<GrpElem>::new());
        assert_eq!(rot.target, vec![a, pi.inv(a)]);
        assert_eq!(rot.layers[0].0, vec![Generator::CoPair(a)]);
    }

    #[test]
    fn builtin_relations_typecheck_on_s3() {
        let pi = s3();
        let g2 = GroupTable::cyclic(2);
        let rels = builtin_relations(&pi, &g2);
        assert!(!rels.one_morphism.is_empty());
        for rel in &rels.one_morphism {
            rel.lhs.validate(&pi).unwrap();
            rel.rhs.validate(&pi).unwrap();
            assert_eq!(rel.lhs.source, rel.rhs.source, "{}", rel.id);
            assert_eq!(rel.lhs.target, rel.rhs.target, "{}", rel.id);
        }
        // relations collapse to the background-free ones for trivial labels
        let triv = builtin_relations(&GroupTable::trivial(), &GroupTable::trivial());
        assert!(triv.one_morphism.iter().all(|r| r.lhs.validate(&GroupTable::trivial()).is_ok()));
    }

    #[test]
    fn word_syntax_round_trip() {
        let pi = s3();
        let g1 = GroupTable::trivial();
        let w = parse_word(
            "(word (layer (pants r s) (cyl sr)) (layer (cyl rs-missing)))",
            &pi,
            &g1,
        );
        assert!(w.is_err());
        let w = parse_word(
            "(word (layer (pants r s) (cyl sr)) (layer (crosscyl sr2 e) (cyl sr)))",
            &pi,
            &g1,
        )
        .unwrap();
        assert_eq!(w.layers.len(), 2);
        assert_eq!(w.source.len(), 3);
    }
}
