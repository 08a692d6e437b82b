//! Theta building blocks.
//!
//! Everything is written in terms of the normalized
//! `sigma(t) = theta(t, tau) / (-i q^(1/8) prod (1 - q^n)^3)`.
//! Genus formulas only use balanced theta ratios, so the prefactor cancels.

mod exact;
mod numeric;

pub use exact::{
    chern_genus_coeffs, divisor_factor, minus_one_factor, phi_binom, phi_correction, sigma_expansion, sigma_pure,
    sigma_shifted, theta_ratio, DExp, SigmaArg,
};
pub use numeric::{
    eval_binom, eval_series, eval_sfunc, eval_sigma_series, eval_spoly, jet_inverse, leading_jet, numeric_residue,
    p_jet, sigma_jet, sigma_numeric, theta_identity_residuals, theta_numeric, theta_prime_zero, DEFAULT_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ThetaError {
    #[error("sigma argument has vanishing leading term")]
    ZeroArgument,
    #[error("coefficient -1 puts sigma(0) in a denominator")]
    LogCanonicalPole,
    #[error("tau must have positive imaginary part")]
    InvalidTau,
}
