//! Continuity notions for one-dimensional payoffs, decided exactly on
//! piecewise affine functions with rational/irrational splits.
//!
//! Upper pseudocontinuity is a strictly smaller class than transfer upper
//! continuity and is not decided here.

pub mod classify;
pub mod function;
pub mod generate;
pub mod interval_game;
pub mod pointset;

pub use classify::{check_transfer_closed_duality, classify, upper_contour, ClassificationReport, DualityReport};
pub use function::{parse_function, Affine, Arg, FnError, ParseFnError, Piece, Rule, SymbolicFn1D};
pub use interval_game::{
    lemma3_witness, property_k_check, IntervalGame1D, IntervalGameError, KClass, KWitness, Lemma3Witness, PlayerK,
    PropertyKReport,
};
pub use pointset::{Component, ParsePointSetError, PointSet1D, Qualifier};
