//! Exact character arithmetic for SL3 and its principal SO(3), and the
//! representation-theoretic inputs of the trace formula.

mod character;
mod matrix;
mod spectral;
mod verify;

pub use character::{
    branch_k_to_m0, branch_k_to_so2, branch_to_k, decompose, decompose_k, delta_char, eta_char, irr_char, psi_char,
    recompose, st_char, sym, tensor, wedge, weyl_dim, Character, KChar, TorusChar, VirtualDecomp,
};
pub use matrix::{bareiss_det, det3, det_eta_product, sym2, tr_psi_exact, IntMat3};
pub use spectral::{
    b_form, b_rho, b_rho_1, b_rho_m1, casimir, k_pairing, rho, rho_1, rho_m1, sign_audit, tau0, trivial_poles,
    trivial_spectral_term, Pole, SignAudit, SpectralContribution, Q, REFERENCE_COEFFICIENTS,
};
pub use verify::{verify_reps, RepsReport, ReportItem, Status};
