//! Double brackets, triple brackets and associated brackets on (localized)
//! path algebras, with the double Jacobi, quasi-Jacobi and Loday checks.

mod checks;
mod engine;
mod table;

pub use checks::{antisymmetry_defect, check_double_poisson, check_loday, check_quasi_poisson, generators, quasi_poisson_defect};
pub use engine::{normalize_tensor, validate, Engine, LetterTable};
pub use table::{BracketEntry, BracketFile, DoubleBracketTable};

/// Bracket engine of a table on the path algebra.
pub type Bracket = Engine<DoubleBracketTable>;

pub fn bracket(table: DoubleBracketTable) -> Bracket {
    Engine::new(table)
}
