//! Closed-form fibers of the map, checked against the companion-matrix
//! roots of the fiber cubic.
//!
//! cargo run --release --example fibers

use quadric_cert::fiber::{companion_levels, cubic_oracle, fiber_of, hausdorff, three_point_witness};
use quadric_cert::quadric::{random_mt_point, random_quadric_point, tau};
use quadric_cert::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    for (i, q) in three_point_witness(1.5).unwrap().iter().enumerate() {
        println!("fiber over (1, 1, 0), point {i}: {:?}", q.coords());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let p = random_quadric_point(&mut rng, 0.5, 2.0);
        let closed: Vec<Complex64> = fiber_of(&p).points().iter().map(|q| q.w4()).collect();
        let oracle = cubic_oracle(&p).unwrap();
        worst = worst.max(hausdorff(&closed, &oracle));
    }
    println!("closed form vs cubic oracle, 10^4 points: max set distance {worst:.2e}");

    let mut lowest = f64::INFINITY;
    for _ in 0..10_000 {
        let t = rng.gen_range(1.0 + 1e-6..=tau() - 0.01);
        let p = random_mt_point(&mut rng, t);
        for l in companion_levels(&p).unwrap() {
            lowest = lowest.min(l);
        }
    }
    println!("companions of points below tau - 0.01: lowest level {lowest:.9} (tau = {:.9})", tau());
}
