//! The standard Hamiltonian structure on a doubled quiver: the bivector,
//! the additive moment map and the necklace bracket.

use ncpoisson::algebra_core::{fmt_elem, parse_elem, Quiver};
use ncpoisson::structures::{necklace_bracket, standard_hamiltonian};
use ncpoisson::Result;

fn main() -> Result<()> {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "2")])?.double()?;
    let s = standard_hamiltonian(&q)?;
    println!("P  = {}", fmt_elem(&q, &s.p));
    println!("mu = {}", fmt_elem(&q, &s.moment));
    for r in [s.check_bivector(), s.check_moment()] {
        println!("{}: {:?}", r.name, r.status);
    }
    let (x, y) = (parse_elem(&q, "b b*")?, parse_elem(&q, "a* a b")?);
    println!("{{b b*, a* a b}} = {}", fmt_elem(&q, &necklace_bracket(&q, &x, &y)?));
    Ok(())
}
