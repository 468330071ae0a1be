//! Local convolution functors, the global convolution of profiles, and the
//! operators `Phi = (-) * L_psi` and its inverse.

mod finite;
mod global;
mod local;
mod phi;

pub use crate::localdata::AggregatePiece;
pub use finite::{additive_local_alternative, cancellation_at_one, rho_finite};
pub use global::{convolve, convolve_with, support_product, CancellationTable};
pub use local::{rho_0_inf, rho_0_inf_at, rho_0_inf_finite, rho_inf_inf, rho_t_inf};
pub use phi::{artin_schreier, ft_depth, phi, phi_iterate, psi, PhiMode};
