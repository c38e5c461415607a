//! Module structure over finite fields: irreducibility, composition
//! series, intertwiners, socle and radical series.

mod hom;
mod series;
mod socle;
mod split;

pub use hom::{hom_space, trace_of};
pub use series::{
    composition_series, composition_series_with, CompositionSeries, Factor, FactorCount, IsoClass,
    IsoRegistry,
};
pub use socle::{
    analyse, loewy_convolution, socle, socle_series, socle_series_with, ModuleAnalysis,
    SeriesReport, SocleSeries,
};
pub use split::{
    fixed_space, is_irreducible, spin, Certificate, Irreducibility, EXHAUSTIVE_LINES, MAX_WORD_LEN,
    RANDOM_ATTEMPTS,
};

use thiserror::Error;

use crate::ffla::FflaError;
use crate::grouprep::GroupError;

/// Default seed for random algebra elements.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeataxeError {
    #[error("the zero module has no composition factors to test")]
    ZeroModule,
    #[error("no decision for a {dim}-dimensional module after {attempts} random elements and the module is too large to exhaust")]
    Inconclusive { dim: usize, attempts: usize },
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FflaError),
}
