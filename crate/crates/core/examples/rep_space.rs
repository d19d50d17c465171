//! Representation spaces: evaluating elements at an exact rational point and
//! checking induced brackets entrywise.

use ncpoisson::algebra_core::parse_elem;
use ncpoisson::repspace::{check_gauge_rep, check_jacobi_rep, check_lie_poisson, random_point, DimVector};
use ncpoisson::sample;
use ncpoisson::structures::standard_hamiltonian;
use ncpoisson::Result;

fn main() -> Result<()> {
    let q = sample::doubled_two_vertex();
    let p = random_point(&q, &DimVector::parse("2,1")?, 5)?;
    println!("{}", p.render());
    let x = parse_elem(&q, "a a* - 1/2 e(1)")?;
    println!("X(a a* - 1/2 e(1)) = {}", p.eval(&x)?.render());

    let b = standard_hamiltonian(&q)?.bracket()?;
    let a = parse_elem(&q, "a")?;
    let s = parse_elem(&q, "a*")?;
    for r in check_jacobi_rep(&b, &a, &s, &a, &p, Some(5)) {
        println!("{}: {:?}", r.name, r.status);
    }
    let r = check_gauge_rep(&p, Some(5));
    println!("{}: {:?}", r.name, r.status);
    let r = check_lie_poisson(3, 1);
    println!("{} (gl_3): {:?}", r.name, r.status);
    Ok(())
}
