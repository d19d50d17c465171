//! Fusing two vertices of a quasi-Hamiltonian structure, and comparing the
//! direct construction with fused one-pair structures.

use ncpoisson::algebra_core::fmt_elem;
use ncpoisson::fusion::{check_fusion_coherence, fuse_quiver_ids, fuse_structure};
use ncpoisson::sample;
use ncpoisson::structures::general_quasi;
use ncpoisson::Result;

fn main() -> Result<()> {
    let q = sample::doubled_two_vertex();
    let s = general_quasi(&q)?;
    let f = fuse_quiver_ids(&s.quiver, "1", "2")?;
    let t = fuse_structure(&s, &f)?;
    println!("fused quiver has {} vertex, arrows {:?}", t.quiver.n_vertices(), t.quiver.arrows().iter().map(|a| a.id.as_str()).collect::<Vec<_>>());
    println!("fused Phi = {}", fmt_elem(&t.quiver, &t.moment));
    for r in [t.check_bivector(), t.check_moment(), check_fusion_coherence(&q)] {
        println!("{}: {:?}", r.name, r.status);
    }
    Ok(())
}
