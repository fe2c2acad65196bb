//! Geometric side of the trace formula: resolvent kernels, orbital
//! integrals over the census, and the associated Dirichlet series.

mod geometric;
mod kernel;
mod region;
mod sum;
#[cfg(test)]
mod tests;

pub use geometric::{
    c_gamma, c_gamma_at, d_of_gamma, geometric_side, l_series, orbital_integral, orbital_integral_splitrank_two,
    GeometricSide, LSeries,
};
pub use kernel::{p_n_coeffs, phi_hat, phi_hat_with, KernelPoly};
pub use region::{pole_to_s, pole_to_s_exact, s_alpha_member};
pub use sum::pairwise_sum;
