//! Finite categories, finite presheaves, and the universes of small families
//! built as nerves of the discrete-fibration classifier.

pub mod basechange;
pub mod catalog;
pub mod elements;
pub mod error;
pub mod fibration;
pub mod fincat;
pub mod nerve;
pub mod presheaf;
pub mod realign;
pub mod sets;
pub mod universe;

pub use error::{Error, Result};
pub use fincat::{
    comma, comma_over, enumerate_functors, find_natural_iso, is_connected, is_final, iso_transport,
    pi0, pullback_cat, slice, validate_category, CategoryBuilder, CommaCategory, FinCategory,
    FinFunctor, FunctorSearch, Guard, Morphism, NatTransform, RawCategory, RawMorphism, Slice,
    SliceFamily,
};
pub use presheaf::{
    constant, coproduct, empty, find_iso, find_iso_over, global_elements, is_pullback_square,
    pullback, sieve_presheaf, sieves, subpresheaf, subpresheaves, terminal, yoneda, yoneda_map,
    HomSearch, Presheaf, PresheafMap, Pullback, RawPresheaf, RawPresheafMap,
};
pub use basechange::BaseChange;
pub use elements::{grothendieck, DiscreteFibration, ElementsCategory};
pub use fibration::{builtin_fib, FibAssignment, FibKind};
pub use nerve::{Nerve, NerveAdjunction};
pub use realign::realign;
pub use sets::SkeletalSets;
pub use universe::{build_universe, classify_small, is_small, Universe};
