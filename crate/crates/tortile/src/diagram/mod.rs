//! Expression language for objects and structural morphisms, an exact
//! evaluator producing block matrices, and a universally quantified
//! commutativity checker.
//!
//! Object terms denote multiplicity vectors; every term also carries a
//! canonical recursively-defined basis of its hom spaces (left-comb fusion
//! paths). Structural morphisms evaluate to matrices in these term bases.
//! Composition across differently-bracketed endpoint terms is repaired
//! mechanically by a normalizer that inserts the canonical coherence glue
//! (associators, unitors, crossing monoidality, strict action collapses).

mod term;
mod eval;
mod check;
pub mod sexpr;

pub use check::{check_diagram, CheckOptions, DiagramReport, DiagramWitness};
pub use eval::{eval_mor, eval_obj, CMor, CObj, DiagramError, EvalContext};
pub use term::{parse_mor_term, parse_obj_term, GrpExpr, MorTerm, ObjTerm, TermNames};
