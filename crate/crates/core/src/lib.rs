//! Unified average bit-error-probability and ergodic-capacity analysis over
//! generalized fading channels.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is a pure function
//! of its inputs, so all public types are `Send + Sync` and callers can
//! parallelise sweeps however they like.
//!
//! Layout:
//! - [`specfn`]: gamma family, exponential integral, hypergeometric series, quadrature nodes
//! - [`mellin`]: Fox H and Meijer G evaluation by numerical Mellin–Barnes inversion
//! - [`fading`]: the channel-model catalogue and its hyper-Fox representation
//! - [`perf`]: conditional and averaged error probability / capacity
//! - [`mc`]: reproducible Monte Carlo estimators

#![no_std]
// float methods come from `num_traits::Float`; builds that link std see them as unused
#![allow(unused_imports)]
// `!(x > 0.0)` is the NaN-rejecting form used throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod fading;
pub mod integrate;
pub mod mc;
pub mod mellin;
pub mod perf;
pub mod specfn;

pub use error::{Error, Result};
