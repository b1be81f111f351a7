//! Randomised identity suites behind `qcert verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::fiber::{companion_levels, cubic_oracle, fiber_of, hausdorff};
use crate::quadric::{
    ahern_rudin, degeneracy_witness, eval_jacobian, eval_map, from_w_coords, phi_chart, psi_chart,
    random_mt_point, random_quadric_point, sphere_point, t_level, tau, to_w_coords, Chart, QuadricPoint,
};
use crate::{c, Complex64};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub samples: usize,
    /// Worst observed error; compared against `tolerance`.
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// First sampled point, as evidence of which points were drawn.
    #[serde(serialize_with = "ser_point")]
    pub first_sample: Option<[Complex64; 4]>,
}

fn ser_point<S: serde::Serializer>(p: &Option<[Complex64; 4]>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        None => s.serialize_none(),
        Some(w) => s.collect_seq(w.iter().map(|z| [z.re, z.im])),
    }
}

struct Suite {
    name: &'static str,
    tolerance: f64,
    rng: ChaCha8Rng,
    max_error: f64,
    samples: usize,
    first: Option<[Complex64; 4]>,
}

impl Suite {
    fn new(name: &'static str, seed: u64, index: u64, tolerance: f64) -> Self {
        Suite {
            name,
            tolerance,
            rng: ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index)),
            max_error: 0.0,
            samples: 0,
            first: None,
        }
    }

    fn record(&mut self, sample: [Complex64; 4], err: f64) {
        if self.first.is_none() {
            self.first = Some(sample);
        }
        self.samples += 1;
        // NaN counts as failure.
        if !(err <= self.max_error) {
            self.max_error = if err.is_nan() { f64::INFINITY } else { err };
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            samples: self.samples,
            max_error: self.max_error,
            tolerance: self.tolerance,
            passed: self.samples > 0 && self.max_error <= self.tolerance,
            first_sample: self.first,
        }
    }
}

fn random_sphere(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return (c(v[0] / n, v[1] / n), c(v[2] / n, v[3] / n));
        }
    }
}

fn fd_jacobian(p: &QuadricPoint, chart: Chart) -> Complex64 {
    let [w1, w2, w3, w4] = p.coords();
    match chart {
        Chart::Phi => {
            let h = 1e-6 * (1.0 + w4.norm());
            (phi_chart(w1, w3, w4 + h) - phi_chart(w1, w3, w4 - h)) / (2.0 * h)
        }
        Chart::Psi => {
            let h = 1e-6 * (1.0 + w2.norm());
            -(psi_chart(w1, w2 + h, w3) - psi_chart(w1, w2 - h, w3)) / (2.0 * h)
        }
    }
}

/// Runs every suite with `n` samples each.
pub fn run_suites(seed: u64, n: usize, quadric_tol: f64) -> Vec<SuiteResult> {
    let mut out = Vec::new();

    let mut s = Suite::new("membership", seed, 0, quadric_tol);
    for _ in 0..n {
        let p = random_quadric_point(&mut s.rng, 0.3, 2.0);
        s.record(p.coords(), p.residual() / p.scale().max(1.0));
    }
    out.push(s.finish());

    let mut s = Suite::new("coordinates", seed, 1, 1e-14);
    for _ in 0..n {
        let z: [Complex64; 4] = std::array::from_fn(|_| c(s.rng.gen_range(-2.0..2.0), s.rng.gen_range(-2.0..2.0)));
        let back = from_w_coords(to_w_coords(z));
        let err = z.iter().zip(back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        s.record(to_w_coords(z), err / 4.0);
    }
    out.push(s.finish());

    let mut s = Suite::new("map_vs_f_on_sphere", seed, 2, 1e-14);
    for _ in 0..n {
        let (z, w) = random_sphere(&mut s.rng);
        let Ok(p) = sphere_point(z, w) else {
            s.record([z, z.conj(), w, w.conj()], f64::INFINITY);
            continue;
        };
        let img = eval_map(&p);
        let f = ahern_rudin(z, w);
        let err = [(img.c1 - f[0]).norm(), (img.c2 - f[1]).norm(), (img.c3 - f[2]).norm(), (t_level(&p) - 1.0).abs()]
            .into_iter()
            .fold(0.0, f64::max);
        s.record(p.coords(), err);
    }
    out.push(s.finish());

    let mut s = Suite::new("jacobian_vs_finite_difference", seed, 3, 1e-6);
    for _ in 0..n {
        let p = random_quadric_point(&mut s.rng, 0.5, 2.0);
        let err = match eval_jacobian(&p) {
            Ok(j) => (j.value - fd_jacobian(&p, j.chart)).norm() / (1.0 + j.value.norm()),
            Err(_) => f64::INFINITY,
        };
        s.record(p.coords(), err);
    }
    out.push(s.finish());

    let mut s = Suite::new("fiber_vs_cubic_oracle", seed, 4, 1e-8);
    for _ in 0..n {
        let p = random_quadric_point(&mut s.rng, 0.5, 2.0);
        let closed: Vec<Complex64> = fiber_of(&p).points().iter().map(|q| q.w4()).collect();
        let err = match cubic_oracle(&p) {
            Ok(roots) => hausdorff(&closed, &roots) / (1.0 + p.w4().norm()),
            Err(_) => f64::INFINITY,
        };
        s.record(p.coords(), err);
    }
    out.push(s.finish());

    // Below τ every companion sits on a level ≥ τ; the error is the shortfall.
    let mut s = Suite::new("companion_levels_below_tau", seed, 5, 1e-9);
    let hi = tau() - 0.01;
    for _ in 0..n {
        let t = s.rng.gen_range(1.0 + 1e-6..=hi);
        let p = random_mt_point(&mut s.rng, t);
        let short = match companion_levels(&p) {
            Ok(levels) => levels.iter().map(|l| (tau() - l).max(0.0)).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        };
        s.record(p.coords(), short);
    }
    out.push(s.finish());

    let mut s = Suite::new("degeneracy_witness", seed, 6, 1e-9);
    for t in [tau(), 1.1, 1.2, 1.5, 2.0] {
        let err = match degeneracy_witness(t) {
            Ok(p) => match eval_jacobian(&p) {
                Ok(j) => j.value.norm().max((t_level(&p) - t).abs()),
                Err(_) => f64::INFINITY,
            },
            Err(_) => f64::INFINITY,
        };
        let w = degeneracy_witness(t).map(|p| p.coords()).unwrap_or([c(f64::NAN, 0.0); 4]);
        s.record(w, err);
    }
    out.push(s.finish());

    out
}

/// Plain-text table of suite results.
pub fn table(rows: &[SuiteResult]) -> String {
    let mut s = format!("{:<32} {:>8} {:>12} {:>10}  {}\n", "suite", "samples", "max_error", "tol", "result");
    for r in rows {
        s.push_str(&format!(
            "{:<32} {:>8} {:>12.3e} {:>10.1e}  {}\n",
            r.name,
            r.samples,
            r.max_error,
            r.tolerance,
            if r.passed { "PASS" } else { "FAIL" }
        ));
    }
    s
}
