//! The dubious-identity entries.

pub mod digits;
pub mod lattice;
pub mod matprod;
pub mod partition;
pub mod sinc_bessel;
pub mod theta_moments;
pub mod zeta;
