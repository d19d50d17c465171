//! Representation spaces `Rep(A, α)`: exact point evaluation of elements,
//! induced brackets, poly-vector fields, trace functions, the gauge action
//! and moment maps, plus a sampling oracle.
//!
//! Everything is exact rational arithmetic. A check that passes at a point is
//! exact at that point only; the oracle reports agreement at several points
//! as probable, never as proved.

mod checks;
mod induced;
mod matrix;
mod point;

pub use checks::{
    check_gauge_rep, check_jacobi_rep, check_lie_poisson, check_moment_rep, check_trace_rep, oracle_zero, oracle_zero_tensor, sampled_equality,
    OracleConfig, OracleOutcome, Probe,
};
pub use induced::{
    field_commutator, gauge_action_entry, induced_bracket_tensor, jacobi_residual, lie_poisson_tensor, polyvector_entry,
    polyvector_matrix, polyvector_trace, schouten_entry, trace_bracket, trace_schouten_fields, trace_schouten_function,
    vector_field_matrix, Coord, IndexArray, JacobiEval,
};
pub use matrix::Mat;
pub use point::{random_gauge, random_point, trace_value, DimVector, RepPoint, MAX_ATTEMPTS};
