//! Pseudorandomness laboratory: correlation with low-degree polynomials,
//! disperser checks on varieties, the correlation-to-disperser property as
//! a tested invariant, explicit depth-2/3 constructions for parity and
//! inner product, and the random-disperser counting bound.

mod constructions;
mod correlation;
mod disperser;
mod error;
mod poly;

pub use constructions::{build_ip_depth3, ip_depth3_fan_in, parity_cnf};
pub use correlation::{correlation, correlation_with_degree, Correlation, MAX_ENUM_MONOMIALS};
pub use disperser::{
    disperser_counting_bound, fourier_disperser_check, is_disperser_exhaustive, is_disperser_on,
    is_disperser_sampled, CountingBound, DisperserReport, FourierCheckReport, VarietyWitness,
    Verdict, MAX_VARIETIES,
};
pub use error::PrfError;
pub use poly::{monomial_table, monomials_up_to_degree, Gf2Poly};
