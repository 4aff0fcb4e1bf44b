//! Classical invariants of knots on pages of contact open books.
//!
//! An abstract open book — a page of genus `g` with `h + 1` boundary
//! components and a monodromy given as an ordered product of signed, powered
//! Dehn twists along curve words — supports a contact 3-manifold. For a knot
//! sitting on the page (also given as a curve word) this crate decides
//! whether it is (rationally) nullhomologous and computes, in exact
//! integer/rational arithmetic:
//!
//! * the Thurston–Bennequin invariant `tb` and rotation number `rot`,
//! * the self-linking numbers `sl± = tb ∓ rot` of the transverse push-offs,
//! * the Poincaré dual of the Euler class of the contact structure,
//! * and, when that class is torsion, the d3 invariant.
//!
//! Curve words are trusted: validation checks letter ranges only, and the
//! computed numbers are invariants of an actual Legendrian knot only when the
//! word describes an embedded, non-isolating curve in the canonical curve
//! position on the page. See [`page_model`] for the word conventions.

// index loops mirror the matrix formulas
#![allow(clippy::needless_range_loop)]

pub mod exact_linalg;
pub mod leveled_linking;
pub mod page_model;
pub mod rotation_count;
pub mod surgery_invariants;

pub use page_model::{
    homology_class, validate_word, CurveWord, DehnTwist, Family, HomologyClassVector, KnotOnPage,
    Letter, Level, OpenBookSpec, PageError, PageSignature, Sign,
};
pub use rotation_count::{planar_rotation, rotation_word_count, TangencyCount};
pub use surgery_invariants::{
    build_presentation, expand_multiplicities, full_report, InvariantReport, SurgeryPresentation,
    Verdict,
};
