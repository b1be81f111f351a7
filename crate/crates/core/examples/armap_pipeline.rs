//! Builds `P` from harmonic parts, extends it to the quadric, and checks the
//! collision at `W_u`, `W_u′`.
//!
//! cargo run --example armap_pipeline -- [spec.json]

use quadric_cert::armaps::{
    build_P, divisible_by_conj, extend, is_harmonic, q_basic, radial_harmonic, run_pipeline, ArmapSpec, Part,
};
use quadric_cert::cli::json::to_json;

fn main() {
    let parts = match std::env::args().nth(1) {
        Some(path) => ArmapSpec::parse(&std::fs::read_to_string(path).expect("spec file"))
            .and_then(|s| s.parts())
            .expect("valid spec"),
        None => vec![Part::new(q_basic(), 1, 1)],
    };
    let p = build_P(&parts).unwrap();
    println!("P = {p}");
    println!("G3 = {}", extend(&p));
    println!("divisible by conj: {}", divisible_by_conj(&p));

    for deg in 1..=4 {
        let q = radial_harmonic(deg);
        println!("radial harmonic of degree ({deg},{deg}): {q}  harmonic {}", is_harmonic(&q));
    }

    let report = run_pipeline(&parts, 10_000, 0, 1.0);
    print!("{}", to_json(&report));
}
