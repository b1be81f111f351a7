//! Where the Jacobian vanishes: witnesses on `M_t³` for `t ≥ τ`, and the
//! smallest `|J|` seen on random samples below `τ`.
//!
//! cargo run --release --example degeneracy -- [samples]

use quadric_cert::quadric::{degeneracy_products, degeneracy_witness, eval_jacobian, random_mt_point, t_level, tau};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let n: usize = std::env::args().nth(1).map_or(10_000, |s| s.parse().expect("samples"));
    for u in degeneracy_products() {
        println!("degenerate product w3w4 = {u:.9}");
    }
    for t in [tau(), 1.1, 1.2, 1.5, 2.0] {
        let p = degeneracy_witness(t).unwrap();
        let j = eval_jacobian(&p).unwrap();
        println!("t = {t:.9}: level error {:.1e}, |J| = {:.1e}", (t_level(&p) - t).abs(), j.value.norm());
    }
    if let Err(e) = degeneracy_witness(1.05) {
        println!("t = 1.05: {e}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut min = f64::INFINITY;
    for _ in 0..n {
        let t = rng.gen_range(1.0 + 1e-6..=tau() - 0.01);
        let p = random_mt_point(&mut rng, t);
        min = min.min(eval_jacobian(&p).unwrap().value.norm());
    }
    println!("{n} samples with t <= tau - 0.01: min |J| = {min:.6}");
}
