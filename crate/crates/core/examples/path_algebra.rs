//! Quivers, words, localization and necklace normal forms.

use ncpoisson::algebra_core::{equal_mod_commutators, fmt_elem, localize, necklace, parse_elem};
use ncpoisson::sample;
use ncpoisson::Result;

fn main() -> Result<()> {
    let q = sample::doubled_two_vertex().with_inverted(&["a"])?;
    let ids: Vec<&str> = q.arrows().iter().map(|a| a.id.as_str()).collect();
    println!("vertices {:?}, arrows {:?}", q.vertices(), ids);

    // incomposable products vanish
    let x = parse_elem(&q, "a a* + 2 a* a - a a")?;
    println!("x = {}", fmt_elem(&q, &x));

    // (e + a a*) times its inverse letter rewrites to the idempotent
    let y = parse_elem(&q, "(e(1) + a a*) inv(a)")?;
    println!("(e(1) + a a*) inv(a) = {}", fmt_elem(&q, &localize(&y, &q)));

    // cyclic words are compared modulo commutators
    let (u, v) = (parse_elem(&q, "a a*")?, parse_elem(&q, "a* a")?);
    println!("necklace(a a*) = {}", fmt_elem(&q, &necklace(&u, &q)));
    println!("a a* = a* a mod commutators: {}", equal_mod_commutators(&u, &v, &q));
    Ok(())
}
