//! Special functions shared by the identity entries: gamma family, Bessel
//! J0 / K_nu, AGM elliptic integrals, Jacobi theta constants and the
//! nome/modulus conversion.

pub mod bessel;
pub mod elliptic;
pub mod gamma;
pub mod theta;

pub use bessel::{bessel_j0, bessel_k};
pub use elliptic::{agm, elliptic_e, elliptic_e_from_moduli, elliptic_k, elliptic_k_from_kprime, EllipticPair};
pub use gamma::{beta, digamma, gamma};
pub use theta::{nome_to_modulus, theta2, theta3, theta4};

// sinc lives with the numeric core's trig kernels; re-exported here because it
// belongs to this layer's public surface.
pub use zoo_num::functions::sinc;
