//! Quasi-Hamiltonian structures: one arrow pair, and a whole doubled quiver
//! under two arrow orderings.

use ncpoisson::algebra_core::fmt_elem;
use ncpoisson::sample;
use ncpoisson::structures::{general_quasi, one_pair_quasi};
use ncpoisson::Result;

fn main() -> Result<()> {
    let s = one_pair_quasi();
    println!("one pair: Phi = {}", fmt_elem(&s.quiver, &s.moment));
    for r in [s.check_bivector(), s.check_quasi_bracket(), s.check_moment()] {
        println!("  {}: {:?}", r.name, r.status);
    }

    let q = sample::doubled_loop();
    for order in [["t", "t*"], ["t*", "t"]] {
        let s = general_quasi(&q.with_order(&order)?)?;
        println!("order {:?}: Phi = {}", order, fmt_elem(&s.quiver, &s.moment));
        for r in [s.check_bivector(), s.check_moment()] {
            println!("  {}: {:?}", r.name, r.status);
        }
    }
    Ok(())
}
