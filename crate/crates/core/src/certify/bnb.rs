//! Adaptive bisection certificate for lower bounds on `AB` over the ellipse.
//!
//! Boxes are processed one generation at a time. A generation is sorted
//! (widest first, then lexicographically by lower corner), evaluated in
//! parallel, and its outcomes are gathered in that order. Every decision
//! depends only on the box itself, and early stops (refutation, box budget)
//! are checked between generations, so the report does not depend on the
//! number of worker threads.

use std::cmp::Ordering;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enclosure::{ab_enclosure, ab_piece_enclosures, gap_enclosure};
use super::interval::ComplexBox;
use super::{ab_product, AbSemantics, Branch, CertifyError, EllipseDomain};
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueueOrder {
    #[default]
    WidestFirst,
    Lexicographic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub max_depth: u32,
    pub min_box_width: f64,
    pub queue_order: QueueOrder,
    pub semantics: AbSemantics,
    /// Stop (inconclusive) once this many boxes would be exceeded.
    pub max_boxes: u64,
    /// Worker threads; `None` uses the global pool. Not part of the report.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            max_depth: 60,
            min_box_width: 1e-12,
            queue_order: QueueOrder::WidestFirst,
            semantics: AbSemantics::Admissible,
            max_boxes: 200_000_000,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

/// A member of the domain at which the bound provably fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "crate::pointio::complex_pair")]
    pub a: Complex64,
    pub branch: Branch,
    /// Floating-point value of `AB` at the witness.
    pub ab: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub region: EllipseDomain,
    pub bound: f64,
    pub certified: bool,
    pub verdict: Verdict,
    pub boxes_processed: u64,
    pub boxes_accepted: u64,
    pub boxes_discarded: u64,
    pub max_depth_reached: u32,
    pub unresolved_boxes: Vec<ComplexBox>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Seconds; `None` when the report is rendered without timing.
    pub wall_time: Option<f64>,
    pub config: CertifyConfig,
}

impl CertificateReport {
    /// The report with timing removed, so that it depends only on the inputs.
    pub fn canonical(&self) -> CertificateReport {
        CertificateReport {
            wall_time: None,
            ..self.clone()
        }
    }
}

enum Outcome {
    Discarded,
    Accepted,
    Split(ComplexBox, ComplexBox),
    Unresolved,
    Refuted(Witness),
}

fn order(q: QueueOrder, a: &ComplexBox, b: &ComplexBox) -> Ordering {
    let lex = a
        .re
        .lo
        .total_cmp(&b.re.lo)
        .then(a.im.lo.total_cmp(&b.im.lo))
        .then(a.re.hi.total_cmp(&b.re.hi))
        .then(a.im.hi.total_cmp(&b.im.hi));
    match q {
        QueueOrder::WidestFirst => b.width().total_cmp(&a.width()).then(lex),
        QueueOrder::Lexicographic => lex,
    }
}

fn resolved(b: ComplexBox, bound: f64, semantics: AbSemantics) -> bool {
    match semantics {
        AbSemantics::Admissible => gap_enclosure(b, bound)
            .iter()
            .all(|g| g.phi.lo >= 0.0 || g.inadmissible()),
        AbSemantics::Unrestricted => ab_enclosure(b).lo >= bound,
    }
}

/// Rigorous check that the bound fails at the point `a` for some branch.
fn refutes(a: Complex64, bound: f64, semantics: AbSemantics) -> Option<Witness> {
    let pb = ComplexBox::point(a);
    let violated = match semantics {
        AbSemantics::Admissible => gap_enclosure(pb, bound)
            .iter()
            .any(|g| g.admissible() && g.phi.hi < 0.0),
        AbSemantics::Unrestricted => ab_piece_enclosures(pb)
            .iter()
            .any(|iv| !iv.is_entire() && iv.hi < bound),
    };
    if !violated {
        return None;
    }
    Branch::BOTH
        .iter()
        .filter_map(|&br| ab_product(a, br).ok())
        .filter(|v| semantics == AbSemantics::Unrestricted || v.is_admissible())
        .min_by(|x, y| x.ab.total_cmp(&y.ab))
        .map(|v| Witness {
            a,
            branch: v.branch,
            ab: v.ab,
        })
}

fn process(b: ComplexBox, depth: u32, dom: &EllipseDomain, bound: f64, cfg: &CertifyConfig) -> Outcome {
    if dom.excludes(b) {
        return Outcome::Discarded;
    }
    if resolved(b, bound, cfg.semantics) {
        return Outcome::Accepted;
    }
    let center = b.center();
    if dom.includes(ComplexBox::point(center)) {
        if let Some(w) = refutes(center, bound, cfg.semantics) {
            return Outcome::Refuted(w);
        }
    }
    if depth >= cfg.max_depth || b.width() <= cfg.min_box_width {
        return Outcome::Unresolved;
    }
    let (l, r) = b.bisect();
    Outcome::Split(l, r)
}

/// Certifies `AB ≥ bound` on `dom` for both branches, restricted to
/// admissible pairs unless `cfg.semantics` says otherwise.
///
/// `certified = true` is a machine proof: every member of `dom` lies in a
/// box on which `Φ_bound ≥ 0` (or `k < 0`) holds in outward-rounded interval
/// arithmetic. Running out of depth or budget yields an inconclusive report,
/// never a false certificate.
pub fn certify_lower_bound(
    dom: &EllipseDomain,
    bound: f64,
    cfg: &CertifyConfig,
) -> Result<CertificateReport, CertifyError> {
    if !(dom.margin > 0.0) {
        return Err(CertifyError::NonPositiveMargin { margin: dom.margin });
    }
    let run = || run_generations(dom, bound, cfg);
    match cfg.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CertifyError::ThreadPool(e.to_string()))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}

fn run_generations(dom: &EllipseDomain, bound: f64, cfg: &CertifyConfig) -> CertificateReport {
    let start = Instant::now();
    let mut report = CertificateReport {
        region: *dom,
        bound,
        certified: false,
        verdict: Verdict::Inconclusive,
        boxes_processed: 0,
        boxes_accepted: 0,
        boxes_discarded: 0,
        max_depth_reached: 0,
        unresolved_boxes: Vec::new(),
        witness: None,
        wall_time: None,
        config: *cfg,
    };
    let mut frontier: Vec<ComplexBox> = dom.bounding_box().into_iter().collect();
    let mut depth = 0u32;
    let mut witness = None;
    while !frontier.is_empty() {
        if report.boxes_processed + frontier.len() as u64 > cfg.max_boxes {
            report.unresolved_boxes.append(&mut frontier);
            break;
        }
        frontier.sort_by(|a, b| order(cfg.queue_order, a, b));
        report.max_depth_reached = depth;
        let outcomes: Vec<Outcome> = frontier
            .par_iter()
            .map(|&b| process(b, depth, dom, bound, cfg))
            .collect();
        report.boxes_processed += frontier.len() as u64;
        let mut next = Vec::new();
        for (b, o) in frontier.iter().zip(outcomes) {
            match o {
                Outcome::Discarded => report.boxes_discarded += 1,
                Outcome::Accepted => report.boxes_accepted += 1,
                Outcome::Split(l, r) => {
                    next.push(l);
                    next.push(r);
                }
                Outcome::Unresolved => report.unresolved_boxes.push(*b),
                Outcome::Refuted(w) => {
                    report.unresolved_boxes.push(*b);
                    witness.get_or_insert(w);
                }
            }
        }
        if witness.is_some() {
            break;
        }
        frontier = next;
        depth += 1;
    }
    report.unresolved_boxes.sort_by(|a, b| order(cfg.queue_order, a, b));
    report.verdict = if witness.is_some() {
        Verdict::Refuted
    } else if report.unresolved_boxes.is_empty() {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    report.witness = witness;
    report.certified = report.verdict == Verdict::Certified;
    report.wall_time = Some(start.elapsed().as_secs_f64());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::quadric::tau_sq;

    #[test]
    fn requires_positive_margin() {
        let err = certify_lower_bound(&EllipseDomain::default(), 1.0, &CertifyConfig::default()).unwrap_err();
        assert!(matches!(err, CertifyError::NonPositiveMargin { .. }));
    }

    #[test]
    fn empty_domain_is_vacuously_certified() {
        let r = certify_lower_bound(&EllipseDomain::with_margin(0.3), 1.3, &CertifyConfig::default()).unwrap();
        assert!(r.certified);
        assert_eq!(r.boxes_processed, 0);
    }

    #[test]
    fn refutes_bound_above_center_value() {
        let r = certify_lower_bound(&EllipseDomain::with_margin(0.01), 1.6, &CertifyConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Refuted);
        assert!(!r.certified);
        let w = r.witness.unwrap();
        assert!((w.a - c(0.5, 0.0)).norm() < 1e-12);
        assert!((w.ab - 1.5).abs() < 1e-9);
        assert!(!r.unresolved_boxes.is_empty());
    }

    #[test]
    fn unrestricted_reading_is_refuted() {
        let cfg = CertifyConfig {
            semantics: AbSemantics::Unrestricted,
            ..Default::default()
        };
        let r = certify_lower_bound(&EllipseDomain::with_margin(0.01), tau_sq(), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Refuted);
        let w = r.witness.unwrap();
        assert!(w.ab < tau_sq());
        let v = ab_product(w.a, w.branch).unwrap();
        assert!(!v.is_admissible());
    }

    #[test]
    fn depth_exhaustion_is_inconclusive() {
        let cfg = CertifyConfig {
            max_depth: 3,
            ..Default::default()
        };
        let r = certify_lower_bound(&EllipseDomain::with_margin(0.01), tau_sq(), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(!r.certified && !r.unresolved_boxes.is_empty());
        assert_eq!(r.max_depth_reached, 3);
    }

    #[test]
    fn moderate_bound_certifies() {
        let r = certify_lower_bound(&EllipseDomain::with_margin(0.02), 1.0, &CertifyConfig::default()).unwrap();
        assert!(r.certified, "{:?}", r.verdict);
        assert!(r.unresolved_boxes.is_empty());
    }
}
