//! JSON schemas for algebras, modules, functionals and endomorphisms.
//!
//! Rationals are always emitted as strings ("p" or "p/q") and never as
//! floats; bare JSON integers are accepted on input. A module file may
//! inline its algebra or reference another file by path, resolved
//! relative to the module file's directory.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::amodule::{ModuleError, RightModule};
use crate::exactla::{Matrix, Rat};
use crate::slf::LinFunc;
use crate::zoo::ZooEntry;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON in {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("algebra validation failed: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("module validation failed: {0}")]
    Module(#[from] ModuleError),
    #[error("endomorphism matrix has the wrong shape")]
    EndoShape,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub one: Vec<Rat>,
    /// `mult[i][j][k]` = coefficient of basis k in `a_i * a_j`.
    pub mult: Vec<Vec<Vec<Rat>>>,
}

impl AlgebraJson {
    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraJson {
            dim: a.dim,
            basis_names: a.basis_names.clone(),
            one: a.one.clone(),
            mult: a.mult.clone(),
        }
    }

    pub fn into_algebra(self) -> Result<Arc<Algebra>, AlgebraError> {
        if self.dim != self.basis_names.len() {
            return Err(AlgebraError::ShapeViolation);
        }
        Algebra::new(self.basis_names, self.mult, self.one)
    }
}

/// A module file either inlines its algebra or points at another file.
#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraJson),
}

#[derive(Clone, Serialize, Deserialize)]
pub struct ModuleJson {
    pub algebra: AlgebraRef,
    pub dim: usize,
    /// One dim x dim matrix per algebra basis element.
    pub action: Vec<Vec<Vec<Rat>>>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct LinFuncJson {
    pub values: Vec<Rat>,
}

/// Wrapper emitted by the zoo command: the algebra plus its canonical
/// functional and named modules, with the composition convention spelled
/// out.
#[derive(Serialize, Deserialize)]
pub struct ZooEmission {
    pub name: String,
    /// Order in which paths compose in presentations: "left-to-right".
    pub composition_convention: String,
    pub symmetric: bool,
    pub basic: bool,
    pub indecomposable: bool,
    pub split: bool,
    pub algebra: AlgebraJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_phi: Option<LinFuncJson>,
    /// Named modules in a fixed order: regular, then projective summands,
    /// then simple quotients.
    pub modules: Vec<(String, ModuleJson)>,
}

fn read(path: &Path) -> Result<String, JsonError> {
    std::fs::read_to_string(path).map_err(|source| JsonError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, JsonError> {
    serde_json::from_str(text).map_err(|source| JsonError::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// Load an algebra from either a bare algebra file or a zoo emission.
pub fn load_algebra(path: &Path) -> Result<Arc<Algebra>, JsonError> {
    let text = read(path)?;
    if let Ok(direct) = serde_json::from_str::<AlgebraJson>(&text) {
        return Ok(direct.into_algebra()?);
    }
    let emission: ZooEmission = parse(path, &text)?;
    Ok(emission.algebra.into_algebra()?)
}

pub fn load_linfunc(path: &Path, algebra: &Arc<Algebra>) -> Result<LinFunc, JsonError> {
    let text = read(path)?;
    let raw: LinFuncJson = parse(path, &text)?;
    if raw.values.len() != algebra.dim {
        return Err(JsonError::Parse {
            path: path.display().to_string(),
            source: serde::de::Error::custom(format!(
                "expected {} values, found {}",
                algebra.dim,
                raw.values.len()
            )),
        });
    }
    Ok(LinFunc::new(algebra, raw.values))
}

fn action_matrices(dim: usize, raw: Vec<Vec<Vec<Rat>>>) -> Result<Vec<Matrix>, JsonError> {
    raw.into_iter()
        .map(|m| {
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(JsonError::EndoShape);
            }
            Ok(Matrix::from_rows(m))
        })
        .collect()
}

/// Load a module, resolving a path-style algebra reference relative to
/// the module file's directory.
pub fn load_module(path: &Path) -> Result<(Arc<Algebra>, Arc<RightModule>), JsonError> {
    let text = read(path)?;
    let raw: ModuleJson = parse(path, &text)?;
    let algebra = match raw.algebra {
        AlgebraRef::Inline(a) => a.into_algebra()?,
        AlgebraRef::Path(rel) => {
            let mut base: PathBuf = path.parent().map(PathBuf::from).unwrap_or_default();
            base.push(rel);
            load_algebra(&base)?
        }
    };
    let action = action_matrices(raw.dim, raw.action)?;
    let module = RightModule::new(&algebra, action)?;
    Ok((algebra, module))
}

/// Load an endomorphism (a bare dim x dim matrix) and validate that it
/// intertwines the module action.
pub fn load_endo(path: &Path, module: &Arc<RightModule>) -> Result<Matrix, JsonError> {
    let text = read(path)?;
    let raw: Vec<Vec<Rat>> = parse(path, &text)?;
    if raw.len() != module.dim || raw.iter().any(|r| r.len() != module.dim) {
        return Err(JsonError::EndoShape);
    }
    let matrix = Matrix::from_rows(raw);
    let ok = (0..module.algebra().dim)
        .all(|k| module.action[k].mul(&matrix) == matrix.mul(&module.action[k]));
    if !ok {
        return Err(JsonError::Module(ModuleError::NotIntertwiner));
    }
    Ok(matrix)
}

pub fn module_to_json(module: &RightModule, algebra: AlgebraRef) -> ModuleJson {
    ModuleJson {
        algebra,
        dim: module.dim,
        action: module
            .action
            .iter()
            .map(|m| (0..m.rows()).map(|r| m.row_vec(r)).collect())
            .collect(),
    }
}

/// Assemble the full zoo emission for one entry.
pub fn emit_zoo_entry(entry: &ZooEntry) -> ZooEmission {
    let algebra_json = AlgebraJson::from_algebra(&entry.algebra);
    let mut modules = Vec::new();
    let reg = crate::zoo::regular(entry);
    modules.push((
        "regular".to_string(),
        module_to_json(&reg, AlgebraRef::Inline(algebra_json.clone())),
    ));
    if entry.notes.split {
        for (i, p) in crate::zoo::indecomposable_projectives(entry)
            .iter()
            .enumerate()
        {
            modules.push((
                format!("projective_{}", i),
                module_to_json(&p.module, AlgebraRef::Inline(algebra_json.clone())),
            ));
        }
        for (i, s) in crate::zoo::simple_quotients(entry).iter().enumerate() {
            modules.push((
                format!("simple_{}", i),
                module_to_json(s, AlgebraRef::Inline(algebra_json.clone())),
            ));
        }
    }
    ZooEmission {
        name: entry.name.clone(),
        composition_convention: "left-to-right".to_string(),
        symmetric: entry.notes.symmetric,
        basic: entry.notes.basic,
        indecomposable: entry.notes.indecomposable,
        split: entry.notes.split,
        algebra: algebra_json,
        canonical_phi: entry.canonical_phi.as_ref().map(|p| LinFuncJson {
            values: p.values.clone(),
        }),
        modules,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn algebra_round_trip() {
        let t3 = zoo::truncated_polynomial(3).algebra;
        let json = serde_json::to_string(&AlgebraJson::from_algebra(&t3)).unwrap();
        let back: AlgebraJson = serde_json::from_str(&json).unwrap();
        let rebuilt = back.into_algebra().unwrap();
        assert_eq!(*rebuilt, *t3);
    }

    #[test]
    fn rationals_are_strings_in_output() {
        let t3 = zoo::truncated_polynomial(3).algebra;
        let json = serde_json::to_string(&AlgebraJson::from_algebra(&t3)).unwrap();
        assert!(json.contains("\"1\""));
        assert!(
            !json.contains(": 1,"),
            "no bare numeric rationals in output"
        );
    }

    #[test]
    fn module_file_with_path_reference() {
        let dir = std::env::temp_dir().join("fdalg-json-test");
        std::fs::create_dir_all(&dir).unwrap();
        let t3 = zoo::truncated_polynomial(3).algebra;
        let alg_path = dir.join("alg.json");
        std::fs::write(
            &alg_path,
            serde_json::to_string(&AlgebraJson::from_algebra(&t3)).unwrap(),
        )
        .unwrap();
        let reg = RightModule::regular(&t3);
        let mj = module_to_json(&reg, AlgebraRef::Path("alg.json".into()));
        let mod_path = dir.join("mod.json");
        std::fs::write(&mod_path, serde_json::to_string(&mj).unwrap()).unwrap();
        let (algebra, module) = load_module(&mod_path).unwrap();
        assert_eq!(algebra.dim, 3);
        assert_eq!(module.dim, 3);
    }

    #[test]
    fn bad_endo_is_rejected() {
        let dir = std::env::temp_dir().join("fdalg-json-test");
        std::fs::create_dir_all(&dir).unwrap();
        let t3 = zoo::truncated_polynomial(3).algebra;
        let reg = RightModule::regular(&t3);
        let path = dir.join("endo.json");
        // A matrix that does not commute with the action.
        std::fs::write(
            &path,
            "[[\"0\",\"1\",\"0\"],[\"0\",\"0\",\"0\"],[\"0\",\"0\",\"0\"]]",
        )
        .unwrap();
        assert!(load_endo(&path, &reg).is_err());
        // Left multiplication by x does.
        let lx = t3.left_mult_matrix(&t3.basis_coeffs(1)).transpose();
        let rows: Vec<Vec<Rat>> = (0..3).map(|r| lx.row_vec(r)).collect();
        std::fs::write(&path, serde_json::to_string(&rows).unwrap()).unwrap();
        assert!(load_endo(&path, &reg).is_ok());
    }
}
