//! Differential forms: the differential, contraction along a double
//! derivation, and the bi-symplectic form of a doubled quiver.

use ncpoisson::algebra_core::{fmt_elem, parse_elem};
use ncpoisson::forms::{check_bisymplectic_equivalence, contraction, differential, lie_derivative, standard_bisymplectic, BisymplecticConfig};
use ncpoisson::sample;
use ncpoisson::Result;

fn main() -> Result<()> {
    let q = sample::doubled_loop();
    let x = parse_elem(&q, "t t* t")?;
    println!("d(t t* t) = {}", fmt_elem(&q, &differential(&q, &x)?));

    let omega = standard_bisymplectic(&q)?;
    println!("omega = {}", fmt_elem(&q, &omega));
    let delta = parse_elem(&q, "D(t)")?;
    println!("contraction of omega along D(t) = {}", fmt_elem(&q, &contraction(&q, &delta, &omega)?));
    println!("Lie derivative of omega along D(t) = {}", fmt_elem(&q, &lie_derivative(&q, &delta, &omega)?));

    for r in check_bisymplectic_equivalence(&q, &omega, BisymplecticConfig::default()) {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        println!("{}: {:?} {}", r.name, r.status, params.join(" "));
    }
    Ok(())
}
