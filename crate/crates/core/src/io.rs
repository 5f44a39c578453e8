//! JSON basis-set documents.
//!
//! ```json
//! { "d": 2, "n": 1, "bases": [ [ [[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]] ] ] }
//! ```
//!
//! `bases[y][j][k]` is component `k` of vector `j` of basis `y`, written as
//! `[re, im]`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bases::{self, BasisSet, RawBases, ORTHO_TOL};
use crate::error::{Error, Result};
use crate::linalg::C64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSetDocument {
    pub d: usize,
    pub n: usize,
    pub bases: Vec<Vec<Vec<[f64; 2]>>>,
}

impl BasisSetDocument {
    pub fn from_set(s: &BasisSet) -> Self {
        let bases = bases::to_raw(s)
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|v| v.into_iter().map(|z| [z.re, z.im]).collect())
                    .collect()
            })
            .collect();
        Self {
            d: s.dim(),
            n: s.n(),
            bases,
        }
    }

    /// Checks the declared `n`/`d` against the data and validates the bases.
    pub fn to_set(&self, tol: f64) -> Result<BasisSet> {
        if self.bases.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "field `n` is {} but {} bases are listed",
                self.n,
                self.bases.len()
            )));
        }
        if let Some((y, b)) = self
            .bases
            .iter()
            .enumerate()
            .find(|(_, b)| b.len() != self.d)
        {
            return Err(Error::InvalidArgument(format!(
                "field `d` is {} but basis {y} lists {} vectors",
                self.d,
                b.len()
            )));
        }
        let raw: RawBases = self
            .bases
            .iter()
            .map(|b| {
                b.iter()
                    .map(|v| v.iter().map(|&[re, im]| C64::new(re, im)).collect())
                    .collect()
            })
            .collect();
        bases::validate_basis_set(&raw, tol).map_err(Error::Validation)
    }
}

fn parse_error(path: &Path, e: serde_json::Error) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_basis_set(text: &str, origin: &Path, tol: f64) -> Result<BasisSet> {
    let doc: BasisSetDocument = serde_json::from_str(text).map_err(|e| parse_error(origin, e))?;
    doc.to_set(tol)
}

pub fn read_basis_set(path: &Path) -> Result<BasisSet> {
    read_basis_set_with(path, ORTHO_TOL)
}

pub fn read_basis_set_with(path: &Path, tol: f64) -> Result<BasisSet> {
    parse_basis_set(&read(path)?, path, tol)
}

pub fn write_basis_set(path: &Path, s: &BasisSet) -> Result<()> {
    let text = to_json(s);
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn to_json(s: &BasisSet) -> String {
    serde_json::to_string_pretty(&BasisSetDocument::from_set(s)).expect("plain data") + "\n"
}

/// Loads scan input: a single file holding either one document or a JSON
/// list of documents, or a directory whose `*.json` files are read in
/// lexicographic order.
pub fn read_scan_inputs(path: &Path, tol: f64) -> Result<Vec<BasisSet>> {
    if path.is_dir() {
        let entries = fs::read_dir(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut files: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect();
        files.sort();
        let mut out = Vec::new();
        for f in files {
            out.extend(read_document_list(&f, tol)?);
        }
        Ok(out)
    } else {
        read_document_list(path, tol)
    }
}

fn read_document_list(path: &Path, tol: f64) -> Result<Vec<BasisSet>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        Many(Vec<BasisSetDocument>),
        One(BasisSetDocument),
    }
    let text = read(path)?;
    let docs =
        match serde_json::from_str::<OneOrMany>(&text) {
            Ok(OneOrMany::Many(v)) => v,
            Ok(OneOrMany::One(d)) => vec![d],
            // Re-parse as a single document for a positioned diagnostic.
            Err(_) => vec![serde_json::from_str::<BasisSetDocument>(&text)
                .map_err(|e| parse_error(path, e))?],
        };
    docs.iter().map(|d| d.to_set(tol)).collect()
}
