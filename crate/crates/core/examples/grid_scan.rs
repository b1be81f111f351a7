//! Evaluates the smaller branch of `AB` on a grid over the ellipse.
//!
//! cargo run --release --example grid_scan -- [nx] [ny] [margin]

use quadric_cert::certify::{grid_scan, AbSemantics, EllipseDomain};
use quadric_cert::quadric::{degeneracy_products, tau_sq};

fn main() {
    let mut args = std::env::args().skip(1);
    let nx: usize = args.next().map_or(400, |s| s.parse().expect("nx"));
    let ny: usize = args.next().map_or(200, |s| s.parse().expect("ny"));
    let margin: f64 = args.next().map_or(0.0, |s| s.parse().expect("margin"));
    let dom = EllipseDomain::with_margin(margin);
    for sem in [AbSemantics::Admissible, AbSemantics::Unrestricted] {
        let s = grid_scan(&dom, nx, ny, sem).unwrap();
        let Some(a) = s.argmin else {
            println!("{sem:?}: no grid point in the domain");
            continue;
        };
        let d = degeneracy_products().iter().map(|z| (a - z).norm()).fold(f64::INFINITY, f64::min);
        println!(
            "{sem:?}: min AB {:.9} (tau^2 {:.9}) at {a:.5}, {d:.4} from a degenerate product, {} members",
            s.min_ab.unwrap(),
            tau_sq(),
            s.members
        );
    }
}
