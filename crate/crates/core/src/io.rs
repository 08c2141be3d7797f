//! JSON file formats.

use serde::{Deserialize, Serialize};

use crate::conjugation::{a_uv_rep, c_alpha, c_alpha_u_e, c_lambda, c_lambda_a, AlphaSequence, AntilinearRep};
use crate::error::{Error, Result};
use crate::hardy::tm_basis;
use crate::linalg::CMatrix;
use crate::symbol::{BlaschkeProduct, LaurentSymbol};
use crate::C64;

/// `{"coeffs": [[n, re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolFile {
    pub coeffs: Vec<(i64, f64, f64)>,
}

impl From<&LaurentSymbol> for SymbolFile {
    fn from(s: &LaurentSymbol) -> Self {
        Self {
            coeffs: s.iter().filter(|(_, c)| c.norm() != 0.0).map(|(n, c)| (n, c.re, c.im)).collect(),
        }
    }
}

impl From<&SymbolFile> for LaurentSymbol {
    fn from(f: &SymbolFile) -> Self {
        LaurentSymbol::from_pairs(f.coeffs.iter().map(|&(n, re, im)| (n, C64::new(re, im))))
    }
}

pub fn symbol_to_json(s: &LaurentSymbol) -> String {
    serde_json::to_string(&SymbolFile::from(s)).expect("symbol serializes")
}

pub fn symbol_from_json(text: &str) -> Result<LaurentSymbol> {
    let f: SymbolFile = serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
    Ok(LaurentSymbol::from(&f))
}

/// `{"gamma": [re, im], "zeros": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeFile {
    pub gamma: C64,
    pub zeros: Vec<C64>,
}

impl BlaschkeFile {
    pub fn build(&self) -> Result<BlaschkeProduct> {
        BlaschkeProduct::new(self.gamma, self.zeros.clone())
    }
}

impl From<&BlaschkeProduct> for BlaschkeFile {
    fn from(b: &BlaschkeProduct) -> Self {
        Self {
            gamma: b.gamma(),
            zeros: b.zeros().to_vec(),
        }
    }
}

/// `{"n": N, "re": [...], "im": [...]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub n: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&CMatrix> for MatrixDump {
    fn from(m: &CMatrix) -> Self {
        let n = m.nrows();
        let mut re = Vec::with_capacity(n * n);
        let mut im = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..m.ncols() {
                re.push(m[(j, k)].re);
                im.push(m[(j, k)].im);
            }
        }
        Self { n, re, im }
    }
}

impl MatrixDump {
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.n;
        if self.re.len() != n * n || self.im.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "matrix dump with n = {n} has {} / {} entries",
                self.re.len(),
                self.im.len()
            )));
        }
        Ok(CMatrix::from_fn(n, n, |j, k| C64::new(self.re[j * n + k], self.im[j * n + k])))
    }
}

/// Conjugation family with its parameters, tagged by `"family"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FamilySpec {
    #[serde(rename = "c_lambda")]
    CLambda { lambda: C64 },
    #[serde(rename = "c_alpha")]
    CAlpha { alpha: Vec<C64> },
    /// Either an explicit `alpha` table or the geometric sequence of `lambda`.
    #[serde(rename = "c_alpha_u_E")]
    CAlphaUE {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha: Option<Vec<C64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<C64>,
        u: BlaschkeFile,
    },
    #[serde(rename = "c_lambda_a")]
    CLambdaA { lambda: C64, a: C64 },
    #[serde(rename = "a_uv")]
    AUv { alpha: C64, beta: C64, b: C64 },
}

impl FamilySpec {
    /// Monomial-coordinate representation on the leading `n` coordinates.
    pub fn build(&self, n: usize) -> Result<AntilinearRep> {
        match self {
            Self::CLambda { lambda } => c_lambda(*lambda, n),
            Self::CAlpha { alpha } => c_alpha(&AlphaSequence::explicit(alpha.clone())?, n),
            Self::CAlphaUE { alpha, lambda, u } => {
                let seq = match (alpha, lambda) {
                    (Some(a), None) => AlphaSequence::explicit(a.clone())?,
                    (None, Some(l)) => AlphaSequence::from_lambda(*l)?,
                    _ => {
                        return Err(Error::ConfigInvalid(
                            "c_alpha_u_E needs exactly one of `alpha` or `lambda`".into(),
                        ))
                    }
                };
                c_alpha_u_e(&seq, &tm_basis(&u.build()?)?, n)
            }
            Self::CLambdaA { lambda, a } => c_lambda_a(*lambda, *a, n),
            Self::AUv { alpha, beta, b } => a_uv_rep(*alpha, *beta, *b, n),
        }
    }
}

pub fn family_from_json(text: &str) -> Result<FamilySpec> {
    serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn symbol_round_trip_is_bit_exact() {
        let s = LaurentSymbol::from_pairs([
            (-3, c64(0.1, -1.0 / 3.0)),
            (0, c64(std::f64::consts::PI, 0.0)),
            (5, c64(1e-300, 2.5e17)),
        ]);
        let text = symbol_to_json(&s);
        assert_eq!(symbol_from_json(&text).unwrap(), s);
        let parsed: SymbolFile = serde_json::from_str(r#"{"coeffs":[[1,1.0,0.0],[-1,0.0,1.0]]}"#).unwrap();
        let sym = LaurentSymbol::from(&parsed);
        assert_eq!(sym.coeff(-1), c64(0.0, 1.0));
        assert!(symbol_from_json("{\"coeffs\": 3}").is_err());
    }

    #[test]
    fn matrix_dump_is_row_major() {
        let m = CMatrix::from_fn(2, 2, |j, k| c64((2 * j + k) as f64, -(k as f64)));
        let d = MatrixDump::from(&m);
        assert_eq!(d.re, vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(d.to_matrix().unwrap(), m);
        let json = serde_json::to_value(&d).unwrap();
        assert_eq!(json["n"], 2);
    }

    #[test]
    fn family_specs_parse_and_build() {
        let specs = [
            r#"{"family":"c_lambda","lambda":[0.0,1.0]}"#,
            r#"{"family":"c_alpha","alpha":[[1.0,0.0],[0.0,1.0],[1.0,0.0],[0.0,1.0]]}"#,
            r#"{"family":"c_alpha_u_E","lambda":[1.0,0.0],"u":{"gamma":[1.0,0.0],"zeros":[[0.3,0.0]]}}"#,
            r#"{"family":"c_lambda_a","lambda":[0.0,1.0],"a":[0.5,0.0]}"#,
            r#"{"family":"a_uv","alpha":[1.0,0.0],"beta":[1.0,0.0],"b":[0.4,0.0]}"#,
        ];
        for s in specs {
            let f = family_from_json(s).unwrap();
            let rep = f.build(4).unwrap();
            assert_eq!(rep.dim(), 4);
            let back: FamilySpec = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
            assert_eq!(back, f);
        }
        assert!(family_from_json(r#"{"family":"nope"}"#).is_err());
        let both = family_from_json(
            r#"{"family":"c_alpha_u_E","lambda":[1.0,0.0],"alpha":[[1.0,0.0]],"u":{"gamma":[1.0,0.0],"zeros":[[0.3,0.0]]}}"#,
        )
        .unwrap();
        assert!(matches!(both.build(4), Err(Error::ConfigInvalid(_))));
    }
}
