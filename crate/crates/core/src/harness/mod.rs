//! Scenario files, builders for the topological games, a built-in corpus,
//! seeded fuzzing and report emission.

pub mod corpus;
pub mod fuzz;
pub mod report;
pub mod scenario;

use thiserror::Error;

use crate::game::GameError;
use crate::ground::{GroundError, Subset};

pub use corpus::{corpus, corpus_pairs};
pub use fuzz::{fuzz, FuzzProfile, Suite};
pub use report::{FuzzReport, SuiteStats, Violation};
pub use scenario::{
    build_point_open, build_rothberger, build_rothberger_all_covers, Expect, Families, Flavor, Params, PointTarget,
    Scenario, ScenarioPair, SpaceSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("{0} has no proper open neighbourhood")]
    NoNeighborhood(Subset),
    #[error("no minimal cover exists")]
    NoCovers,
    #[error("more than {} minimal covers", scenario::ROTHBERGER_COVER_CAP)]
    TooManyCovers,
    #[error("some point of the space is not closed")]
    PointsNotClosed,
    #[error("missing parameter {0:?}")]
    MissingParam(&'static str),
    #[error("horizon {wanted} requested, the game has {available}")]
    HorizonMismatch { wanted: usize, available: usize },
    #[error("count must be at least 1")]
    InvalidCount,
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error(transparent)]
    Game(#[from] GameError),
}
