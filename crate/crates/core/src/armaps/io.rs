//! JSON form of polynomials and pipeline specs.
//!
//! A polynomial is `{"terms": [{"e": [α, β, γ, δ], "c": [re_num, re_den,
//! im_num, im_den]}]}`. Integers may be JSON numbers or decimal strings (for
//! values beyond 64 bits). Output terms are in lexicographic exponent order
//! with fractions in lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{ArmapError, GaussianRational, Part, Poly4, SparseHermitianPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => s.trim().parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }

    fn from_bigint(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => IntRepr::Small(x),
            None => IntRepr::Big(v.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub e: [u32; 4],
    pub c: [IntRepr; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub terms: Vec<TermJson>,
}

fn ratio(num: &IntRepr, den: &IntRepr) -> Result<BigRational, String> {
    let d = den.to_bigint()?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num.to_bigint()?, d))
}

/// Errors name the offending field, e.g. `terms[2].c (real part)`.
fn terms_to_poly(terms: &[TermJson]) -> Result<Poly4, String> {
    let mut p = Poly4::zero();
    for (i, t) in terms.iter().enumerate() {
        let re = ratio(&t.c[0], &t.c[1]).map_err(|e| format!("terms[{i}].c (real part): {e}"))?;
        let im = ratio(&t.c[2], &t.c[3]).map_err(|e| format!("terms[{i}].c (imaginary part): {e}"))?;
        p.add_term(t.e, GaussianRational::new(re, im));
    }
    Ok(p)
}

impl PolynomialJson {
    pub fn to_poly(&self) -> Result<Poly4, ArmapError> {
        terms_to_poly(&self.terms).map_err(ArmapError::Malformed)
    }
}

pub fn polynomial_to_json(p: &Poly4) -> PolynomialJson {
    PolynomialJson {
        terms: p
            .terms()
            .map(|(e, c)| TermJson {
                e: *e,
                c: [
                    IntRepr::from_bigint(c.re.numer()),
                    IntRepr::from_bigint(c.re.denom()),
                    IntRepr::from_bigint(c.im.numer()),
                    IntRepr::from_bigint(c.im.denom()),
                ],
            })
            .collect(),
    }
}

/// Parses the polynomial file format.
pub fn parse_polynomial(s: &str) -> Result<SparseHermitianPolynomial, ArmapError> {
    let j: PolynomialJson = serde_json::from_str(s).map_err(|e| ArmapError::Malformed(e.to_string()))?;
    Ok(SparseHermitianPolynomial(j.to_poly()?))
}

/// One `Q_j` in a spec file: its terms and declared bidegree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartSpec {
    pub terms: Vec<TermJson>,
    pub p: u32,
    pub q: u32,
}

/// Input of the `armap` subcommand.
///
/// ```json
/// {"parts": [{"terms": [{"e": [1,1,0,0], "c": [1,1,0,1]},
///                       {"e": [0,0,1,1], "c": [-1,1,0,1]}], "p": 1, "q": 1}],
///  "samples": 100000, "seed": 0, "u": 1.0}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArmapSpec {
    pub parts: Vec<PartSpec>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_u")]
    pub u: f64,
}

fn default_samples() -> usize {
    100_000
}

fn default_u() -> f64 {
    1.0
}

impl ArmapSpec {
    pub fn parse(s: &str) -> Result<ArmapSpec, ArmapError> {
        let spec: ArmapSpec = serde_json::from_str(s).map_err(|e| ArmapError::Malformed(e.to_string()))?;
        if !(spec.u.is_finite() && spec.u > 0.0) {
            return Err(ArmapError::Malformed(format!("u must be positive, got {}", spec.u)));
        }
        Ok(spec)
    }

    pub fn parts(&self) -> Result<Vec<Part>, ArmapError> {
        self.parts
            .iter()
            .enumerate()
            .map(|(j, ps)| {
                let poly = terms_to_poly(&ps.terms).map_err(|e| ArmapError::Malformed(format!("parts[{j}].{e}")))?;
                Ok(Part::new(SparseHermitianPolynomial(poly), ps.p, ps.q))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::armaps::{ahern_rudin_p, q_basic};

    #[test]
    fn round_trip() {
        for p in [ahern_rudin_p(), q_basic(), SparseHermitianPolynomial::zero()] {
            let s = serde_json::to_string(&polynomial_to_json(p.poly())).unwrap();
            assert_eq!(parse_polynomial(&s).unwrap(), p);
        }
        let s = r#"{"terms":[{"e":[1,1,0,0],"c":[2,4,0,1]},{"e":[1,1,0,0],"c":["-1","2","123456789012345678901234567890",1]}]}"#;
        let p = parse_polynomial(s).unwrap();
        let j = polynomial_to_json(p.poly());
        assert_eq!(j.terms.len(), 1);
        assert_eq!(j.terms[0].c[2], IntRepr::Big("123456789012345678901234567890".into()));
        assert_eq!(j.terms[0].c[0], IntRepr::Small(0));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_polynomial(r#"{"terms":[{"e":[1,1,0,0],"c":[1,0,0,1]}]}"#).is_err());
        assert!(parse_polynomial(r#"{"terms":[{"e":[1,1,0],"c":[1,1,0,1]}]}"#).is_err());
        assert!(parse_polynomial(r#"{"terms":[{"e":[-1,1,0,0],"c":[1,1,0,1]}]}"#).is_err());
        assert!(parse_polynomial("nope").is_err());
        assert!(ArmapSpec::parse(r#"{"parts":[],"u":-1}"#).is_err());
    }
}
