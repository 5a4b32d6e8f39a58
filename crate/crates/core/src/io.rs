//! JSON file formats. Complex numbers are `[re, im]` pairs; matrices are
//! square and stored row-major.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::chain::{ChainMode, ChainOptions, SpaceChain};
use crate::dyson::DysonChain;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, CVector};
use crate::scalar::Cx;

pub const SCHEMA_VERSION: &str = "1.0";
pub const SUPPORTED_VERSIONS: &[&str] = &["1.0"];

fn format_err(field: impl Into<String>, detail: impl Into<String>) -> Error {
    Error::Format {
        field: field.into(),
        detail: detail.into(),
    }
}

fn check_version(v: &str, field: &str) -> Result<()> {
    if SUPPORTED_VERSIONS.contains(&v) {
        Ok(())
    } else {
        Err(format_err(
            field,
            format!("unsupported schema version {v:?}; supported: {SUPPORTED_VERSIONS:?}"),
        ))
    }
}

fn pairs(data: &[Cx<f64>]) -> Vec<[f64; 2]> {
    data.iter().map(|z| [z.re, z.im]).collect()
}

fn check_entries(entries: &[[f64; 2]], expected: usize, field: &str) -> Result<Vec<Cx<f64>>> {
    if entries.len() != expected {
        return Err(format_err(
            field,
            format!("expected {expected} [re, im] pairs, found {}", entries.len()),
        ));
    }
    entries
        .iter()
        .enumerate()
        .map(|(i, &[re, im])| {
            if re.is_finite() && im.is_finite() {
                Ok(Cx::new(re, im))
            } else {
                Err(format_err(format!("{field}[{i}]"), "non-finite value"))
            }
        })
        .collect()
}

/// A square complex matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub schema_version: String,
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix<f64>, name: Option<&str>) -> Result<Self> {
        let dim = m.dim()?;
        Ok(Self {
            schema_version: SCHEMA_VERSION.into(),
            dim,
            entries: pairs(m.as_slice()),
            name: name.map(str::to_owned),
        })
    }

    /// Converts to a matrix; `field` prefixes error locations.
    pub fn to_matrix_at(&self, field: &str) -> Result<CMatrix<f64>> {
        check_version(&self.schema_version, &format!("{field}schema_version"))?;
        if self.dim == 0 {
            return Err(format_err(format!("{field}dim"), "dimension must be positive"));
        }
        let data = check_entries(&self.entries, self.dim * self.dim, &format!("{field}entries"))?;
        CMatrix::from_vec(self.dim, self.dim, data)
    }

    pub fn to_matrix(&self) -> Result<CMatrix<f64>> {
        self.to_matrix_at("")
    }
}

/// A complex column vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub schema_version: String,
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl VectorFile {
    pub fn from_vector(v: &[Cx<f64>], name: Option<&str>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            dim: v.len(),
            entries: pairs(v),
            name: name.map(str::to_owned),
        }
    }

    pub fn to_vector(&self) -> Result<CVector<f64>> {
        check_version(&self.schema_version, "schema_version")?;
        if self.dim == 0 {
            return Err(format_err("dim", "dimension must be positive"));
        }
        check_entries(&self.entries, self.dim, "entries")
    }
}

/// `Z_1 … Z_{K-1}` and the validation mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub schema_version: String,
    pub k: usize,
    pub dim: usize,
    pub mode: ChainMode,
    /// `factors[i]` holds `Z_{i+1}`.
    pub factors: Vec<MatrixFile>,
}

impl ChainFile {
    pub fn from_chain(chain: &SpaceChain<f64>) -> Result<Self> {
        Ok(Self {
            schema_version: SCHEMA_VERSION.into(),
            k: chain.k(),
            dim: chain.dim(),
            mode: chain.mode(),
            factors: chain
                .factors()
                .iter()
                .enumerate()
                .map(|(i, z)| MatrixFile::from_matrix(z, Some(&format!("Z{}", i + 1))))
                .collect::<Result<_>>()?,
        })
    }

    fn matrices(&self, list: &[MatrixFile], key: &str) -> Result<Vec<CMatrix<f64>>> {
        check_version(&self.schema_version, "schema_version")?;
        if self.k < 2 {
            return Err(format_err("k", "K must be at least 2"));
        }
        if list.len() != self.k - 1 {
            return Err(format_err(
                key,
                format!("K = {} needs {} matrices, found {}", self.k, self.k - 1, list.len()),
            ));
        }
        list.iter()
            .enumerate()
            .map(|(i, m)| {
                let at = format!("{key}[{i}].");
                if m.dim != self.dim {
                    return Err(format_err(
                        format!("{at}dim"),
                        format!("dimension {} differs from chain dimension {}", m.dim, self.dim),
                    ));
                }
                m.to_matrix_at(&at)
            })
            .collect()
    }

    /// The factors, validated for shape only.
    pub fn factor_matrices(&self) -> Result<Vec<CMatrix<f64>>> {
        self.matrices(&self.factors, "factors")
    }

    /// Builds and validates the chain.
    pub fn to_chain(&self, options: ChainOptions<f64>) -> Result<SpaceChain<f64>> {
        SpaceChain::with_options(self.factor_matrices()?, self.mode, options)
    }

    /// Builds the chain without enforcing self-adjointness or positivity.
    pub fn assemble_chain(&self, options: ChainOptions<f64>) -> Result<SpaceChain<f64>> {
        SpaceChain::assemble(self.factor_matrices()?, self.mode, options)
    }
}

/// `Ω_1 … Ω_{K-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DysonFile {
    pub schema_version: String,
    pub k: usize,
    pub dim: usize,
    /// `omegas[i]` holds `Ω_{i+1}`.
    pub omegas: Vec<MatrixFile>,
}

impl DysonFile {
    pub fn from_dyson(d: &DysonChain<f64>) -> Result<Self> {
        Ok(Self {
            schema_version: SCHEMA_VERSION.into(),
            k: d.k(),
            dim: d.dim(),
            omegas: d
                .omegas()
                .iter()
                .enumerate()
                .map(|(i, o)| MatrixFile::from_matrix(o, Some(&format!("Omega{}", i + 1))))
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_dyson(&self, cond_cap: f64) -> Result<DysonChain<f64>> {
        let as_chain = ChainFile {
            schema_version: self.schema_version.clone(),
            k: self.k,
            dim: self.dim,
            mode: ChainMode::StrictPd,
            factors: Vec::new(),
        };
        DysonChain::new(as_chain.matrices(&self.omegas, "omegas")?, cond_cap)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<S: Serialize>(value: &S) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| format_err("<root>", e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parses JSON, reporting the path of the offending field on failure.
pub fn from_json<D: DeserializeOwned>(text: &str) -> Result<D> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        format_err(if path == "." { "<root>".into() } else { path }, e.into_inner().to_string())
    })
}
