//! Instance files: a JSON document tagged by `format`.
//!
//! Complex numbers are `[re, im]`; tensors are nested as `C[j][i][k] = C^j_ik`.

use curvlab_core::algebra::RealLieData;
use curvlab_core::families::{build_almost_abelian_with_tol, build_codim2, ConstraintResidual};
use curvlab_core::{AlmostAbelianParams, CMat, CTensor3, Codim2Params, HermitianLieAlgebra, Instance};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub type Pair = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenericFile {
    pub n: usize,
    #[serde(rename = "C")]
    pub c: Vec<Vec<Vec<Pair>>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<Vec<Pair>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlmostAbelianFile {
    pub n: usize,
    pub lambda: f64,
    pub v: Vec<Pair>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Pair>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Codim2File {
    pub n: usize,
    pub lambda: f64,
    pub v: Vec<Pair>,
    #[serde(rename = "X")]
    pub x: Vec<Vec<Pair>>,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<Pair>>,
    #[serde(rename = "Z")]
    pub z: Vec<Vec<Pair>>,
}

/// `f[c][a][b]` with `[x_a, x_b] = Σ_c f[c][a][b] x_c`; `J` and `G` are row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealFile {
    pub dim: usize,
    pub f: Vec<Vec<Vec<f64>>>,
    #[serde(rename = "J")]
    pub j: Vec<Vec<f64>>,
    #[serde(rename = "G")]
    pub g: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "snake_case")]
pub enum InstanceFile {
    Generic(GenericFile),
    AlmostAbelian(AlmostAbelianFile),
    Codim2(Codim2File),
    Real(RealFile),
}

/// An instance file turned into an algebra.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub alg: HermitianLieAlgebra,
    /// Family parameters when the file used a family format.
    pub family: Option<Instance>,
    pub constraints: Option<ConstraintResidual>,
}

impl InstanceFile {
    pub fn format(&self) -> &'static str {
        match self {
            InstanceFile::Generic(_) => "generic",
            InstanceFile::AlmostAbelian(_) => "almost_abelian",
            InstanceFile::Codim2(_) => "codim2",
            InstanceFile::Real(_) => "real",
        }
    }

    /// Parses a document, reporting the path of the first offending value.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut value: Value = serde_json::from_str(text)
            .map_err(|e| CliError::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        let obj = value.as_object_mut().ok_or_else(|| CliError::parse(".", "expected a JSON object"))?;
        let tag = match obj.remove("format") {
            Some(Value::String(s)) => s,
            Some(_) => return Err(CliError::parse("format", "expected a string")),
            None => return Err(CliError::parse("format", "missing field")),
        };
        Ok(match tag.as_str() {
            "generic" => InstanceFile::Generic(located(value)?),
            "almost_abelian" => InstanceFile::AlmostAbelian(located(value)?),
            "codim2" => InstanceFile::Codim2(located(value)?),
            "real" => InstanceFile::Real(located(value)?),
            other => {
                return Err(CliError::parse(
                    "format",
                    format!("unknown format {other:?}, expected generic, almost_abelian, codim2 or real"),
                ))
            }
        })
    }

    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    /// Stable JSON text: fields in declaration order, shortest round-trip floats.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance files always serialize")
    }

    /// Hex SHA-256 of [`InstanceFile::to_json`].
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    /// Shape checks, then construction with validation at `tol`.
    pub fn load(&self, tol: f64) -> Result<Loaded, CliError> {
        match self {
            InstanceFile::Generic(g) => {
                let c = tensor3("C", g.n, &g.c)?;
                let d = tensor3("D", g.n, &g.d)?;
                Ok(Loaded { alg: HermitianLieAlgebra::new(g.n, c, d, tol)?, family: None, constraints: None })
            }
            InstanceFile::AlmostAbelian(f) => {
                let p = f.params()?;
                let alg = build_almost_abelian_with_tol(&p, tol)?;
                Ok(Loaded { alg, family: Some(Instance::AlmostAbelian(p)), constraints: None })
            }
            InstanceFile::Codim2(f) => {
                let p = f.params()?;
                let res = p.constraint_residual();
                let alg = build_codim2(&p, tol)?;
                Ok(Loaded { alg, family: Some(Instance::Codim2(p)), constraints: Some(res) })
            }
            InstanceFile::Real(r) => {
                let data = r.data()?;
                Ok(Loaded { alg: HermitianLieAlgebra::from_real(&data, tol)?, family: None, constraints: None })
            }
        }
    }

    pub fn from_instance(inst: &Instance) -> Self {
        match inst {
            Instance::AlmostAbelian(p) => InstanceFile::AlmostAbelian(AlmostAbelianFile {
                n: p.n,
                lambda: p.lambda,
                v: pairs(&p.v),
                a: matrix_pairs(&p.a),
            }),
            Instance::Codim2(p) => InstanceFile::Codim2(Codim2File {
                n: p.n,
                lambda: p.lambda,
                v: pairs(&p.v),
                x: matrix_pairs(&p.x),
                y: matrix_pairs(&p.y),
                z: matrix_pairs(&p.z),
            }),
        }
    }

    pub fn from_algebra(alg: &HermitianLieAlgebra) -> Self {
        let nested = |t: &CTensor3| -> Vec<Vec<Vec<Pair>>> {
            t.to_nested().iter().map(|plane| plane.iter().map(|row| pairs(row)).collect()).collect()
        };
        InstanceFile::Generic(GenericFile { n: alg.n(), c: nested(alg.c()), d: nested(alg.d()) })
    }
}

impl AlmostAbelianFile {
    pub fn params(&self) -> Result<AlmostAbelianParams, CliError> {
        let m = family_rank(self.n)?;
        Ok(AlmostAbelianParams {
            n: self.n,
            lambda: self.lambda,
            v: vector("v", m, &self.v)?,
            a: matrix("A", m, &self.a)?,
        })
    }
}

impl Codim2File {
    pub fn params(&self) -> Result<Codim2Params, CliError> {
        let m = family_rank(self.n)?;
        Ok(Codim2Params {
            n: self.n,
            lambda: self.lambda,
            v: vector("v", m, &self.v)?,
            x: matrix("X", m, &self.x)?,
            y: matrix("Y", m, &self.y)?,
            z: matrix("Z", m, &self.z)?,
        })
    }
}

impl RealFile {
    pub fn data(&self) -> Result<RealLieData, CliError> {
        let m = self.dim;
        let mut f = Vec::with_capacity(m * m * m);
        check_len("f", m, self.f.len())?;
        for (c, plane) in self.f.iter().enumerate() {
            check_len(&format!("f[{c}]"), m, plane.len())?;
            for (a, row) in plane.iter().enumerate() {
                check_len(&format!("f[{c}][{a}]"), m, row.len())?;
                f.extend_from_slice(row);
            }
        }
        Ok(RealLieData { dim: m, f, j: real_matrix("J", m, &self.j)?, g: real_matrix("G", m, &self.g)? })
    }
}

fn located<T: serde::de::DeserializeOwned>(value: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        CliError::parse(path, e.into_inner().to_string())
    })
}

fn family_rank(n: usize) -> Result<usize, CliError> {
    if n < 2 {
        return Err(CliError::parse("n", format!("family formats need n >= 2, got {n}")));
    }
    Ok(n - 1)
}

fn check_len(path: &str, expected: usize, got: usize) -> Result<(), CliError> {
    if expected != got {
        return Err(CliError::parse(path, format!("expected {expected} entries, got {got}")));
    }
    Ok(())
}

fn c64(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn vector(path: &str, m: usize, v: &[Pair]) -> Result<Vec<Complex64>, CliError> {
    check_len(path, m, v.len())?;
    Ok(v.iter().map(c64).collect())
}

fn matrix(path: &str, m: usize, rows: &[Vec<Pair>]) -> Result<CMat, CliError> {
    check_len(path, m, rows.len())?;
    for (i, row) in rows.iter().enumerate() {
        check_len(&format!("{path}[{i}]"), m, row.len())?;
    }
    Ok(CMat::from_fn(m, m, |i, k| c64(&rows[i][k])))
}

fn real_matrix(path: &str, m: usize, rows: &[Vec<f64>]) -> Result<Vec<f64>, CliError> {
    check_len(path, m, rows.len())?;
    let mut out = Vec::with_capacity(m * m);
    for (i, row) in rows.iter().enumerate() {
        check_len(&format!("{path}[{i}]"), m, row.len())?;
        out.extend_from_slice(row);
    }
    Ok(out)
}

fn tensor3(path: &str, n: usize, nested: &[Vec<Vec<Pair>>]) -> Result<CTensor3, CliError> {
    check_len(path, n, nested.len())?;
    let mut data = Vec::with_capacity(n * n * n);
    for (j, plane) in nested.iter().enumerate() {
        check_len(&format!("{path}[{j}]"), n, plane.len())?;
        for (i, row) in plane.iter().enumerate() {
            check_len(&format!("{path}[{j}][{i}]"), n, row.len())?;
            data.extend(row.iter().map(c64));
        }
    }
    Ok(CTensor3::from_vec(n, data)?)
}

fn pairs(v: &[Complex64]) -> Vec<Pair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn matrix_pairs(m: &CMat) -> Vec<Vec<Pair>> {
    m.to_rows().iter().map(|r| pairs(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ABELIAN: &str = r#"{"format": "generic", "n": 1, "C": [[[[0,0]]]], "D": [[[[0,0]]]]}"#;

    #[test]
    fn parses_abelian() {
        let f = InstanceFile::parse(ABELIAN).unwrap();
        assert_eq!(f.format(), "generic");
        assert_eq!(f.load(1e-9).unwrap().alg.n(), 1);
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = InstanceFile::parse("{\"format\": \n ]").unwrap_err();
        assert!(matches!(&err, CliError::Parse { location, .. } if location.starts_with("line 2")), "{err}");
    }

    #[test]
    fn type_errors_carry_a_path() {
        let text = r#"{"format": "almost_abelian", "n": 2, "lambda": 1, "v": [[0, 0]], "A": [[[1, "x"]]]}"#;
        match InstanceFile::parse(text).unwrap_err() {
            CliError::Parse { location, .. } => assert_eq!(location, "A[0][0][1]"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn shape_errors_carry_a_path() {
        let text = r#"{"format": "codim2", "n": 3, "lambda": 0, "v": [[0,0],[0,0]],
            "X": [[[0,0],[0,0]],[[0,0]]], "Y": [[[0,0],[0,0]],[[0,0],[0,0]]], "Z": [[[0,0],[0,0]],[[0,0],[0,0]]]}"#;
        let f = InstanceFile::parse(text).unwrap();
        match f.load(1e-9).unwrap_err() {
            CliError::Parse { location, .. } => assert_eq!(location, "X[1]"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_fields_and_formats_are_rejected() {
        assert!(InstanceFile::parse(r#"{"format": "generic", "n": 1, "C": [], "D": [], "E": 1}"#).is_err());
        let err = InstanceFile::parse(r#"{"format": "lattice"}"#).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn family_round_trip() {
        let p = curvlab_core::families::hyperbolic_example_params(3).unwrap();
        let f = InstanceFile::from_instance(&Instance::AlmostAbelian(p.clone()));
        let back = InstanceFile::parse(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.digest(), f.digest());
        assert_eq!(back.load(1e-9).unwrap().family, Some(Instance::AlmostAbelian(p)));
    }

    #[test]
    fn generic_round_trip_of_a_family_algebra() {
        let alg = curvlab_core::families::hyperbolic_example(2).unwrap();
        let f = InstanceFile::from_algebra(&alg);
        let again = InstanceFile::parse(&f.to_json()).unwrap().load(1e-9).unwrap().alg;
        assert_eq!(again.c(), alg.c());
        assert_eq!(again.d(), alg.d());
    }
}
