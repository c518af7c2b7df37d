//! Certified inequalities: the operator inequality, functional bounds with
//! extremal elements, Jackson–Stechkin bounds, and verification campaigns.

mod campaigns;
mod functional;
mod jackson;
mod operator;
mod report;

pub use campaigns::*;
pub use functional::{dual_factor_sqr, functional_bound, functional_extremal};
pub use jackson::{jackson_bound, jackson_bound_with, modulus_for, norm_bound, norm_bound_with, sharpness_search};
pub use operator::{
    operator_extremal, operator_norm_extremal, verify_operator_inequality, verify_operator_norm_inequality,
    DiagonalOperatorPair,
};
pub use report::{certify, ratio, run_campaign, InequalityReport, Trial, Verdict, DEFAULT_SLACK};
