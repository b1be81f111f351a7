//! Points of the quadric, the map, its Jacobian and the threshold constants.
//!
//! cargo run --example quadric_basics

use quadric_cert::quadric::{
    ahern_rudin, eval_jacobian, eval_map, min_g, sphere_point, t_level, DomainConstants, QuadricPoint,
};
use quadric_cert::{c, Complex64};

fn main() {
    let k = DomainConstants::get();
    println!("tau = {:.16}  tau^2 = {:.16}  2/sqrt3 = {:.16}", k.tau, k.tau_sq, k.two_over_sqrt3);

    let p = QuadricPoint::from_reals([1.0, 1.0, 1.0, 0.0]).unwrap();
    let img = eval_map(&p);
    let j = eval_jacobian(&p).unwrap();
    println!("W = (1,1,1,0): t = {}, F(W) = ({}, {}, {}), J = {} ({:?})", t_level(&p), img.c1, img.c2, img.c3, j.value, j.chart);

    // On the sphere the extended map agrees with the Ahern-Rudin map.
    let (z, w) = (c(0.6, 0.0), Complex64::new(0.0, 0.8));
    let s = sphere_point(z, w).unwrap();
    let f = ahern_rudin(z, w);
    println!("sphere (0.6, 0.8i): F3 = {}, f3 = {}", eval_map(&s).c3, f[2]);

    let (m, (x, y)) = min_g((2.0 + k.sqrt2) / 6.0, (2.0 - k.sqrt2) / 6.0).unwrap();
    println!("min of x + p/x + y + q/y = {m:.9} at ({x:.6}, {y:.6}); 2 tau = {:.9}", 2.0 * k.tau);

    match QuadricPoint::from_reals([1.0, 1.0, 1.0, 1.0]) {
        Ok(_) => unreachable!(),
        Err(e) => println!("(1,1,1,1) rejected: {e}"),
    }
}
