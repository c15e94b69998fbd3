//! Fox H and Meijer G functions by numerical Mellin–Barnes inversion.

mod contour;
mod params;

pub use contour::{fox_h, fox_h_scaled, meijer_g, meijer_g_scaled, ContourConfig, Scaled};
pub use params::{FoxHParams, Strip};
