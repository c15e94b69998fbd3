//! Fading-model catalogue: densities, MGFs and their derivatives, samplers,
//! and the hyper-Fox H representation shared by every model.

mod hyper;
mod model;
mod sampler;

pub use hyper::{hyper_dmgf, hyper_mgf, HyperFoxH, HyperTerm};
pub use model::{ChannelModel, GammaBranch};
pub use sampler::Sampler;
