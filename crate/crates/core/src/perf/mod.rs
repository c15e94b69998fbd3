//! Conditional and averaged error probability and capacity, single link
//! and maximal ratio combining.

mod conditional;
mod metric;
mod mrc;
mod single;

pub use conditional::{
    conditional_up, conditional_up_hypergeometric, conditional_up_identities, conditional_up_meijer,
    ConditionalIdentities, BETA_LIMIT_D,
};
pub use metric::{MetricKind, MetricSpec};
pub use mrc::{
    aup_mrc, aup_mrc_independent, aup_mrc_with_rule, aup_nakagami_identical_mrc, mrc_kernel, IndependentBranches,
    JointMgf, JointMgfFn, MrcRule, DEFAULT_GCQ_NODES,
};
pub use single::{aup_egk, aup_gnm, aup_lognormal, aup_single_closed, aup_single_closed_direct, aup_single_quadrature};
