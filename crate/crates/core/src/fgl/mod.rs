//! One-dimensional commutative formal group laws over the Lazard ring.
//!
//! [`GradedPolynomial`] carries everything: buds in `x, y`, associativity
//! defects in `x, y, z`, logarithms in `t`, with coefficients polynomial in
//! the generators `α_k` (printed `a1, a2, …`, weight `k`). The generators
//! double as the polynomial generators `v_k` of the complex cobordism ring;
//! no change of basis between the two is applied.

mod bud;
mod cobordism;
mod hnf;
mod lazard;
mod log;
mod poly;

pub use bud::{binomial, bud_defects, cocycle_divisor, sym_cocycle, Bud, BudDefects};
pub use cobordism::{mishchenko_classes, quillen_c1_tensor, specialize, MishchenkoClasses};
pub use hnf::ColumnHermite;
pub use lazard::{
    extend_bud, universal_bud, universal_bud_bounded, universal_tower, weight_violations, Assignment, LazardState,
    DEFAULT_STAGE_CEILING,
};
pub use log::{fgl_from_log, log_of_bud, reversion, LogSeries};
pub use poly::{GradedPolynomial, Monomial, Var};

use alloc::boxed::Box;
use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FglError {
    #[error("symmetric cocycles need degree >= 2, got {0}")]
    CocycleDegree(u32),
    #[error("law is not a {degree}-bud")]
    NotABud { degree: u32, defects: Box<BudDefects> },
    #[error("no integral correction at stage {stage} for generator monomial {generator_monomial}:\n{system}")]
    IntegralSolveFailed {
        stage: usize,
        generator_monomial: String,
        system: String,
    },
    #[error("stage must be at least 1, got {0}")]
    InvalidStage(usize),
    #[error("stage {requested} exceeds the ceiling {ceiling}")]
    StageCeiling { requested: usize, ceiling: usize },
    #[error("first Chern class `{0}` has a nonzero constant term")]
    ConstantTerm(&'static str),
    #[error("generator a{0} is not assigned")]
    IncompleteAssignment(usize),
    #[error("the value assigned to a{0} involves a series variable")]
    AssignmentUsesSeriesVariable(usize),
    #[error("logarithm is known to degree {have}, degree {need} requested")]
    LogTooShort { have: u32, need: u32 },
    #[error("not a logarithm: {0}")]
    NotALogarithm(&'static str),
}
