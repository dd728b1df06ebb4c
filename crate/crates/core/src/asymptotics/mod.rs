//! Average orders: partial sums with their error terms, the Euler-product
//! constants behind the main terms, and the auxiliary multiplicative
//! functions used to derive them.

mod auxiliary;
mod constants;
mod fit;
mod sums;

pub use auxiliary::{
    a_b_psi_of_k, h_at_prime_power, h_of, v_at_prime_power, v_of, verify_identities,
    verify_identities_with, CoprimeReciprocalTerms, Identity, IdentityReport, B_PRIME_CUTOFF,
    IDENTITY_LIMIT,
};
pub use constants::{
    a_product_forms, all_constants, c_prime_factor_bracket, constant_a, constant_b, constant_c,
    constant_d, constant_e_gamma, constant_e_neg_gamma, constant_gamma, constant_k, d_prime_factor,
    zeta2_partial_product, zeta3_estimate, zeta6, ConstantEstimate, ConstantName, D_NU_TAIL,
    EULER_GAMMA, ZETA2, ZETA3_TERMS,
};
pub use fit::{estimate_e, fit_log_linear, EEstimate, LogLinearFit};
pub use sums::{
    default_checkpoints, error_envelopes, partial_sums, partial_sums_chunked, ErrorEnvelope,
    MainTerms, PartialSumRow,
};
