//! No companion of a point below `τ` shares its level: the quadratic
//! `A s² − 2t s + B` has no admissible positive root.
//!
//! cargo run --release --example root_check

use quadric_cert::certify::{root_check, RootVerdict};
use quadric_cert::quadric::{random_in_ellipse, tau};
use quadric_cert::c;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    match root_check(1.05, c(0.5, 0.0)).unwrap() {
        RootVerdict::None { branches } | RootVerdict::Exists { branches } => {
            for b in branches {
                println!(
                    "a = 0.5 {:?}: A = {:.6} B = {:.6} AB = {:.6}, disc {:.4}",
                    b.value.branch, b.value.a_coef, b.value.b_coef, b.value.ab, b.discriminant
                );
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut none, mut total) = (0, 0);
    while total < 10_000 {
        let t = rng.gen_range(1.0 + 1e-6..=tau() - 0.01);
        let a = random_in_ellipse(&mut rng, tau() - 0.01);
        let Ok(v) = root_check(t, a) else { continue };
        total += 1;
        none += v.is_none() as usize;
    }
    println!("{none}/{total} random (t, a) below tau - 0.01 have no same-level companion");

    let hi = root_check(1.3, c(0.5, 0.0)).unwrap();
    println!("t = 1.3, a = 0.5: same-level companion {}", if hi.is_none() { "impossible" } else { "possible" });
}
