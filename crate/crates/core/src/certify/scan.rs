//! Non-rigorous grid evaluation of `min over branches AB` on the ellipse.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ab_min_branch, AbSemantics, CertifyError, EllipseDomain};
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub re: f64,
    pub im: f64,
    /// `None` where no branch could be evaluated.
    pub ab_min_branch: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridScan {
    pub min_ab: Option<f64>,
    #[serde(with = "crate::pointio::opt_complex_pair")]
    pub argmin: Option<Complex64>,
    pub members: usize,
    pub missing: usize,
    #[serde(skip)]
    pub cells: Vec<GridCell>,
}

impl GridScan {
    /// CSV with columns `re,im,ab_min_branch`; missing values are empty fields.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,ab_min_branch\n");
        for cell in &self.cells {
            match cell.ab_min_branch {
                Some(v) => writeln!(out, "{},{},{}", cell.re, cell.im, v),
                None => writeln!(out, "{},{},", cell.re, cell.im),
            }
            .expect("writing to a String");
        }
        out
    }
}

/// `n` points spread symmetrically over `[centre − half, centre + half]`.
fn axis(centre: f64, half: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![centre];
    }
    (0..n).map(|i| centre + half * (2.0 * i as f64 / (n - 1) as f64 - 1.0)).collect()
}

/// Evaluates the smallest `AB` over branches on an `nx × ny` grid spanning the
/// bounding rectangle of `dom`, keeping members only. An axis with one point
/// uses the centre.
pub fn grid_scan(dom: &EllipseDomain, nx: usize, ny: usize, semantics: AbSemantics) -> Result<GridScan, CertifyError> {
    if nx == 0 || ny == 0 {
        return Err(CertifyError::EmptyGrid);
    }
    if dom.is_empty() {
        return Ok(GridScan {
            min_ab: None,
            argmin: None,
            members: 0,
            missing: 0,
            cells: Vec::new(),
        });
    }
    let half = dom.limit() / 2.0;
    let xs = axis(0.5, half, nx);
    let ys = axis(0.0, (half * half - 0.25).sqrt(), ny);
    let cells: Vec<GridCell> = ys
        .par_iter()
        .flat_map_iter(|&y| {
            xs.iter().filter_map(move |&x| {
                let a = Complex64::new(x, y);
                super::ellipse_contains(a, dom).then(|| GridCell {
                    re: x,
                    im: y,
                    ab_min_branch: ab_min_branch(a, semantics),
                })
            })
        })
        .collect();
    let mut min_ab = None;
    let mut argmin = None;
    let mut missing = 0;
    for cell in &cells {
        match cell.ab_min_branch {
            Some(v) if min_ab.is_none_or(|m| v < m) => {
                min_ab = Some(v);
                argmin = Some(Complex64::new(cell.re, cell.im));
            }
            Some(_) => {}
            None => missing += 1,
        }
    }
    Ok(GridScan {
        min_ab,
        argmin,
        members: cells.len(),
        missing,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::tau_sq;

    #[test]
    fn single_point_grid() {
        let s = grid_scan(&EllipseDomain::default(), 1, 1, AbSemantics::Admissible).unwrap();
        assert_eq!(s.members, 1);
        assert!((s.min_ab.unwrap() - 1.5).abs() < 1e-5);
    }

    #[test]
    fn empty_domain_has_no_members() {
        let s = grid_scan(&EllipseDomain::with_margin(0.3), 50, 50, AbSemantics::Admissible).unwrap();
        assert_eq!(s.members, 0);
        assert!(s.min_ab.is_none());
    }

    #[test]
    fn coarse_scan_and_csv() {
        let s = grid_scan(&EllipseDomain::default(), 200, 100, AbSemantics::Admissible).unwrap();
        assert!(s.min_ab.unwrap() >= tau_sq() - 1e-6);
        let csv = s.to_csv();
        assert!(csv.starts_with("re,im,ab_min_branch\n"));
        assert_eq!(csv.lines().count(), s.members + 1);
        let unrestricted = grid_scan(&EllipseDomain::default(), 200, 100, AbSemantics::Unrestricted).unwrap();
        assert!(unrestricted.min_ab.unwrap() < 0.0);
    }

    #[test]
    fn zero_grid_is_an_error() {
        assert!(grid_scan(&EllipseDomain::default(), 0, 3, AbSemantics::Admissible).is_err());
    }
}
