//! Regular integers modulo `n`.
//!
//! An integer `a` is *regular* mod `n` if `a^2 x = a (mod n)` is solvable,
//! equivalently if `gcd(a, n)` is a unitary divisor of `n`. This crate
//! counts and enumerates them (`rho(n)`, `S(n)`), checks the equivalent
//! characterizations against each other, and measures the average and
//! extremal orders of `rho(n)`, `rho(n)/phi(n)`, `phi(n)/rho(n)` and
//! `1/rho(n)` numerically.
//!
//! ```
//! use regint::{rho, regular_sum, enumerate_regular};
//!
//! assert_eq!(enumerate_regular(12).unwrap(), vec![1, 3, 4, 5, 7, 8, 9, 11, 12]);
//! assert_eq!(rho(12).unwrap(), 9);
//! assert_eq!(regular_sum(12).unwrap(), 60);
//! ```
//!
//! The guide in `book/` walks through each part with runnable snippets;
//! those snippets are compiled and run as doc-tests of this crate.

pub mod arith;
pub mod asymptotics;
pub mod csv;
mod error;
pub mod extremal;
mod primes;
pub mod regular;
pub mod sieve;
pub mod summation;
pub mod verify;

pub use arith::{
    aux_functions, euler_phi, factor, gcd, is_prime, pow_mod, unitary_divisors, ArithmeticSummary,
    PrimeFactorization, MAX_N,
};
pub use asymptotics::{
    a_b_psi_of_k, constant_a, constant_b, constant_c, constant_d, estimate_e, h_at_prime_power,
    partial_sums, v_at_prime_power, verify_identities, ConstantEstimate, ConstantName, MainTerms,
    PartialSumRow,
};
pub use error::{Error, Result};
pub use extremal::{
    maximal_order_sequence, minimal_order_sequence, trivial_extremes_check, ExtremalSample,
};
pub use primes::primes_up_to;
pub use regular::{
    check_regularity, enumerate_regular, is_regular, regular_sum, rho, rho_via_unitary_sum,
    sum_coprime, weak_order, Characterization, RegularityVerdict,
};
pub use sieve::{sieve_table, ArithmeticTable, TableRow};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/regularity.md")]
    mod regularity {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/average-orders.md")]
    mod average_orders {}
    #[doc = include_str!("../../../book/src/constants.md")]
    mod constants {}
    #[doc = include_str!("../../../book/src/extremal-orders.md")]
    mod extremal_orders {}
}
