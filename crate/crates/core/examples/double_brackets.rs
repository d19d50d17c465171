//! Double brackets from tables: the double Poisson test, the Loday identity
//! and the witness reported for a table that is not double Poisson.

use ncpoisson::algebra_core::{fmt_elem, fmt_tensor, parse_elem};
use ncpoisson::brackets::{bracket, check_double_poisson, check_loday, DoubleBracketTable};
use ncpoisson::sample;
use ncpoisson::Result;

fn main() -> Result<()> {
    let q = sample::loop_quiver();
    for value in ["t ⊗ e(1) - e(1) ⊗ t", "t t ⊗ t - t ⊗ t t", "t t ⊗ e(1) - e(1) ⊗ t t"] {
        let b = bracket(DoubleBracketTable::new(q.clone()).with("t", "t", value)?);
        let r = check_double_poisson(&b);
        println!("{{{{t, t}}}} = {}: {:?} {}", value, r.status, r.witness.unwrap_or_default());
    }

    let b = bracket(DoubleBracketTable::new(q.clone()).with("t", "t", "t t ⊗ t - t ⊗ t t")?);
    let (x, y) = (parse_elem(&q, "t t")?, parse_elem(&q, "t t t")?);
    println!("{{{{t², t³}}}} = {}", fmt_tensor(&q, &b.bracket(&x, &y)));
    println!("{{t², t³}} = {}", fmt_elem(&q, &b.single(&x, &y)));
    let r = check_loday(&b, &[(x.clone(), y.clone(), x)]);
    println!("Loday identity: {:?}", r.status);
    Ok(())
}
