//! Graded word algebras over the rationals on a quiver: paths, localized
//! inverse letters, derivation and differential letters, tensor powers and
//! normal forms.

pub mod element;
pub mod file;
pub mod normal;
pub mod parse;
pub mod quiver;
pub mod tensor;
pub mod word;

pub use element::{fmt_q, int, rat, sign, Elem, Q};
pub use normal::{equal_localized, equal_mod_commutators, localize, necklace};
pub use parse::{fmt_elem, fmt_tensor, fmt_word, parse_elem, parse_tensor};
pub use quiver::{Arrow, Quiver};
pub use tensor::{Perm, Tensor};
pub use word::{Kind, Letter, Word};
