//! Positive diagonal elements of `M_n(C[0, 1])` with piecewise-linear
//! entries, their dimension functions, and the step-approximation
//! construction realizing lower semicontinuous step functions as
//! dimension functions of increasing sequences.
//!
//! Extreme traces are point masses `τ_x = δ_x ⊗ tr_n`; general traces are
//! probability measures on `[0, 1]`.

mod element;
mod interval;
mod measure;
mod plfn;
mod realize;
mod step;

pub use element::{
    compare_elements, comparison_lemma_check, cutdown, dim_fn, spectrum_classify, DiagonalElement,
    SpectrumClass,
};
pub use interval::{Interval, IntervalSet, OpenSet};
pub use measure::{open_set_of_measure, DensityPiece, MeasureSpec};
pub use plfn::PLFn;
pub use realize::{
    dim_at_point, embed, realization_table, realize, source_slot, verification_grid,
    verify_realization, RealizationSchedule, RealizationStage, StageCheck,
};
pub use step::StepFn;
