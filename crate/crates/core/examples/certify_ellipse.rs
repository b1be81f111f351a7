//! Certifies `AB ≥ τ²` on the ellipse shrunk by a margin and prints the report.
//!
//! cargo run --release --example certify_ellipse -- [margin] [bound]

use std::time::Instant;

use quadric_cert::certify::{certify_lower_bound, CertifyConfig, EllipseDomain};
use quadric_cert::quadric::tau_sq;

fn main() {
    let mut args = std::env::args().skip(1);
    let margin: f64 = args.next().map_or(0.01, |s| s.parse().expect("margin"));
    let bound: f64 = args.next().map_or(tau_sq(), |s| s.parse().expect("bound"));
    let t0 = Instant::now();
    let r = certify_lower_bound(&EllipseDomain::with_margin(margin), bound, &CertifyConfig::default()).unwrap();
    println!(
        "margin {margin} bound {bound}: {:?} after {} boxes ({} accepted, {} discarded, depth {}, {} unresolved) in {:.2?}",
        r.verdict,
        r.boxes_processed,
        r.boxes_accepted,
        r.boxes_discarded,
        r.max_depth_reached,
        r.unresolved_boxes.len(),
        t0.elapsed()
    );
    if let Some(w) = r.witness {
        println!("witness a = {} ({:?}), AB = {}", w.a, w.branch, w.ab);
    }
}
