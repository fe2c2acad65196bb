//! Integer and rational foundations: unit polynomials, certified roots,
//! Hermite normal forms, factoring and small linear algebra mod p.

mod factor;
mod hnf;
pub mod modp;
mod poly;
mod roots;

pub use factor::{factor_integer, is_prime_u64, Factorization};
pub use hnf::{hnf, hnf_int, HnfBasis};
pub use poly::{disc_cubic, is_admissible, newton_power, UnitPoly};
pub use roots::{default_precision, isolate_real_root, regulator_and_length, CertifiedRoot, RegLen};
