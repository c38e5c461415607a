//! JSON representation files.
//!
//! ```json
//! {
//!   "field": {"p": 3, "r": 1, "modulus": [0, 1]},
//!   "group": {"name": "cyclic", "params": {"order": 3}},
//!   "dim": 2,
//!   "generators": [[[1, 1], [0, 1]]]
//! }
//! ```
//!
//! Matrix entries are element codes: the coefficient vector of the element
//! over the canonical modulus (low degree first) read as a base-`p` number.
//! Generators act on column vectors, in the group's generator order.

use std::path::Path;

use modlab_core::ffla::{Field, Mat};
use modlab_core::grouprep::{GroupSpec, Rep};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepFileError {
    #[error("{0}")]
    Io(String),
    #[error("malformed representation file: {0}")]
    Parse(String),
    #[error("modulus {given:?} differs from the canonical {canonical:?}")]
    Modulus {
        given: Vec<u32>,
        canonical: Vec<u32>,
    },
    #[error("bad matrix data: {0}")]
    Matrix(String),
    #[error(transparent)]
    Group(#[from] modlab_core::grouprep::GroupError),
    #[error(transparent)]
    Field(#[from] modlab_core::ffla::FflaError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u64,
    pub r: u32,
    /// Monic modulus, low degree first.
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepFile {
    pub field: FieldDesc,
    pub group: GroupSpec,
    pub dim: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
}

impl RepFile {
    pub fn from_rep(rep: &Rep) -> RepFile {
        let f = rep.field();
        RepFile {
            field: FieldDesc {
                p: f.characteristic(),
                r: f.degree(),
                modulus: f.modulus().to_vec(),
            },
            group: rep.group().spec().clone(),
            dim: rep.dim(),
            generators: rep
                .generators()
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|i| m.row(i).iter().map(|s| s.code()).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// Rebuilds the representation, checking the relations of the group.
    pub fn to_rep(&self) -> Result<Rep, RepFileError> {
        let field = Field::new(self.field.p, self.field.r)?;
        if field.modulus() != self.field.modulus.as_slice() {
            return Err(RepFileError::Modulus {
                given: self.field.modulus.clone(),
                canonical: field.modulus().to_vec(),
            });
        }
        let group = self.group.build(&field)?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (k, g) in self.generators.iter().enumerate() {
            if g.len() != self.dim || g.iter().any(|row| row.len() != self.dim) {
                return Err(RepFileError::Matrix(format!(
                    "generator {k} is not {0}x{0}",
                    self.dim
                )));
            }
            let mut rows = Vec::with_capacity(self.dim);
            for row in g {
                rows.push(
                    row.iter()
                        .map(|&c| field.scalar_from_code(c as u64))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            gens.push(if self.dim == 0 {
                Mat::zeros(&field, 0, 0)
            } else {
                Mat::from_rows(&field, &rows)
            });
        }
        Ok(Rep::new(group, field, gens)?)
    }

    pub fn load(path: &Path) -> Result<RepFile, RepFileError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RepFileError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| RepFileError::Parse(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> Result<(), RepFileError> {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| RepFileError::Io(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use modlab_core::grouprep::{borel_group, exterior_power, semidirect_group};

    #[test]
    fn round_trip() {
        let f = Field::new(3, 2).unwrap();
        let g = borel_group(&f, 3, &[]).unwrap();
        let rep = exterior_power(&Rep::standard(&g).unwrap(), 2).unwrap();
        let file = RepFile::from_rep(&rep);
        let back = file.to_rep().unwrap();
        assert_eq!(back.generators(), rep.generators());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        file.save(&path).unwrap();
        assert_eq!(RepFile::load(&path).unwrap(), file);
    }

    #[test]
    fn rejects_bad_input() {
        let f = Field::new(5, 1).unwrap();
        let g = semidirect_group(5, 2).unwrap();
        let mut file = RepFile::from_rep(&Rep::trivial(&g, &f));
        file.generators[0][0][0] = 2;
        assert!(matches!(file.to_rep(), Err(RepFileError::Group(_))));
        file.generators[0][0][0] = 9;
        assert!(file.to_rep().is_err());
        file.field.modulus = vec![1, 1];
        assert!(matches!(file.to_rep(), Err(RepFileError::Modulus { .. })));
        assert!(serde_json::from_str::<RepFile>("{\"dim\": 1}").is_err());
    }
}
