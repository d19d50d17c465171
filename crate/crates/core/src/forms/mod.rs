//! Noncommutative differential forms: the differential, contractions and Lie
//! derivatives along double derivations, the Koszul bracket, the map `Σ` to
//! poly-vectors, and bi-symplectic forms on doubled quivers.

mod calculus;
mod koszul;
mod symplectic;

pub use calculus::{
    bracket_contraction, check_form, circ, contraction, differential, differential_tensor, double_contraction, double_lie, flip,
    form_contraction, lie_derivative, FormElement,
};
pub use koszul::{koszul, sigma_map, Koszul, KoszulTable};
pub use symplectic::{
    check_bisymplectic_equivalence, poisson_from_symplectic, recover_moment, standard_bisymplectic, BisymplecticConfig,
    GeneratorPairing,
};

#[cfg(test)]
mod tests;
