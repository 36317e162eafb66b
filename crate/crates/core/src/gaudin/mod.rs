//! Model matrices of the two dual Gaudin models and their expansions.

mod bethe;
mod capelli;
mod checks;
mod duality;
mod model;
mod params;

pub use bethe::{affine_b, expand_bethe, phi_consistency, BetheExpansion};
pub use capelli::{
    capelli_sign, capelli_sum_bhat, capelli_sum_g, enumerate_j, equivalent_pairs, j_count, lambda_operator, sigma,
    subsets, supercommutative_cdet_g, JFunction,
};
pub use checks::{affine_of, ber_invariance, block_factorisation, classical_duality, manin_checks, ManinSummary, NamedCheck};
pub use duality::{b_side_truncation, ber_bhat, ber_ghat, duality_check, duality_from, CoeffTable, DualityReport, DEFAULT_DEPTH};
pub use model::{build_b, build_bhat, build_g, build_ghat, lambda_prefactor, resolvent, z_polynomial};
pub use params::{default_truncation, ModelParams};

#[cfg(test)]
mod tests;
