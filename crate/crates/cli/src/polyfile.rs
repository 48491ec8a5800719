//! JSON polynomial files:
//!
//! ```json
//! {
//!   "n": 2,
//!   "degree": 2,
//!   "terms": [
//!     {"alpha": [1, 1], "re": 1.0000000000000000e0, "im": 0.0000000000000000e0}
//!   ]
//! }
//! ```
//!
//! The canonical writer sorts terms by `alpha` and prints every float with
//! 17 significant digits, so parsing and rewriting a canonical file
//! reproduces it byte for byte.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use hlbound::{Complex64, HomogeneousPolynomial};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    pub n: usize,
    pub degree: u32,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub alpha: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

impl PolynomialFile {
    /// Parse and validate.
    pub fn parse(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed polynomial file: {e}")))?;
        file.validate()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Input(format!("invalid polynomial file: {msg}")));
        let mut seen = BTreeSet::new();
        for t in &self.terms {
            if t.alpha.len() != self.n {
                return bad(format!("alpha {:?} has length {}, expected n = {}", t.alpha, t.alpha.len(), self.n));
            }
            let total: u64 = t.alpha.iter().map(|&a| u64::from(a)).sum();
            if total != u64::from(self.degree) {
                return bad(format!("alpha {:?} sums to {total}, expected degree {}", t.alpha, self.degree));
            }
            if !seen.insert(&t.alpha) {
                return bad(format!("duplicate alpha {:?}", t.alpha));
            }
            if !(t.re.is_finite() && t.im.is_finite()) {
                return bad(format!("non-finite coefficient at alpha {:?}", t.alpha));
            }
        }
        Ok(())
    }

    /// Zero coefficients are dropped; an empty result is still returned and
    /// left for the caller to reject.
    pub fn to_polynomial(&self) -> Result<HomogeneousPolynomial> {
        let terms = self.terms.iter().map(|t| (t.alpha.clone(), Complex64::new(t.re, t.im)));
        Ok(HomogeneousPolynomial::new(self.n, self.degree, terms)?)
    }

    pub fn from_polynomial(poly: &HomogeneousPolynomial) -> Self {
        Self {
            n: poly.dimension(),
            degree: poly.degree(),
            terms: poly
                .terms()
                .map(|(a, c)| Term { alpha: a.as_slice().to_vec(), re: c.re, im: c.im })
                .collect(),
        }
    }

    pub fn to_canonical_string(&self) -> String {
        let mut terms: Vec<&Term> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.alpha.cmp(&b.alpha));
        let mut out = String::new();
        let _ = writeln!(out, "{{");
        let _ = writeln!(out, "  \"n\": {},", self.n);
        let _ = writeln!(out, "  \"degree\": {},", self.degree);
        if terms.is_empty() {
            let _ = writeln!(out, "  \"terms\": []");
        } else {
            let _ = writeln!(out, "  \"terms\": [");
            for (i, t) in terms.iter().enumerate() {
                let alpha: Vec<String> = t.alpha.iter().map(u32::to_string).collect();
                let sep = if i + 1 == terms.len() { "" } else { "," };
                let _ = writeln!(
                    out,
                    "    {{\"alpha\": [{}], \"re\": {}, \"im\": {}}}{sep}",
                    alpha.join(", "),
                    canonical_float(t.re),
                    canonical_float(t.im),
                );
            }
            let _ = writeln!(out, "  ]");
        }
        let _ = writeln!(out, "}}");
        out
    }
}

/// 17 significant digits in scientific notation: enough to recover every
/// `f64` exactly.
pub fn canonical_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Read a file and reject the zero polynomial.
pub fn read_polynomial(path: &Path) -> Result<HomogeneousPolynomial> {
    let poly = PolynomialFile::read(path)?.to_polynomial()?;
    if poly.is_zero() {
        return Err(hlbound::Error::ZeroPolynomial.into());
    }
    Ok(poly)
}

pub fn write_polynomial(poly: &HomogeneousPolynomial) -> String {
    PolynomialFile::from_polynomial(poly).to_canonical_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::EXIT_INPUT;
    use hlbound::poly::{witness_pm, witness_q2, witness_qm};

    #[test]
    fn canonical_layout() {
        let text = write_polynomial(&witness_pm(2).unwrap());
        assert_eq!(
            text,
            "{\n  \"n\": 2,\n  \"degree\": 2,\n  \"terms\": [\n    \
             {\"alpha\": [1, 1], \"re\": 1.0000000000000000e0, \"im\": 0.0000000000000000e0}\n  ]\n}\n"
        );
    }

    #[test]
    fn witnesses_round_trip_bit_exactly() {
        for poly in [witness_pm(5).unwrap(), witness_q2(0.1).unwrap(), witness_qm(6, 1.0 / 3.0).unwrap()] {
            let text = write_polynomial(&poly);
            let back = PolynomialFile::parse(&text).unwrap();
            assert_eq!(back.to_polynomial().unwrap(), poly);
            assert_eq!(back.to_canonical_string(), text);
        }
    }

    #[test]
    fn terms_are_sorted_on_write() {
        let text = r#"{"n": 2, "degree": 2, "terms": [
            {"alpha": [2, 0], "re": 1, "im": 0},
            {"alpha": [0, 2], "re": -1, "im": 0.5}]}"#;
        let out = PolynomialFile::parse(text).unwrap().to_canonical_string();
        assert!(out.find("[0, 2]").unwrap() < out.find("[2, 0]").unwrap());
    }

    #[test]
    fn rejects_invalid_files() {
        for text in [
            "not json",
            r#"{"n": 2, "degree": 2}"#,
            r#"{"n": 2, "degree": 2, "terms": [{"alpha": [1], "re": 1, "im": 0}]}"#,
            r#"{"n": 2, "degree": 2, "terms": [{"alpha": [2, 1], "re": 1, "im": 0}]}"#,
            r#"{"n": 2, "degree": 2, "terms": [{"alpha": [1, 1], "re": 1, "im": 0},
                                               {"alpha": [1, 1], "re": 2, "im": 0}]}"#,
            r#"{"n": 2, "degree": 2, "terms": [], "extra": 1}"#,
            r#"{"n": 2, "degree": 2, "terms": [{"alpha": [1, 1], "re": "x", "im": 0}]}"#,
        ] {
            let err = PolynomialFile::parse(text).unwrap_err();
            assert_eq!(err.exit_code(), EXIT_INPUT, "{text}");
        }
    }

    #[test]
    fn empty_terms_parse_but_are_the_zero_polynomial() {
        let file = PolynomialFile::parse(r#"{"n": 2, "degree": 2, "terms": []}"#).unwrap();
        assert!(file.to_polynomial().unwrap().is_zero());
    }
}
