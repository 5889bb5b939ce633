//! JSON group files: a permutation or Cayley presentation plus named normal
//! subgroups given by words in the generators.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{enumerate_group, GroupSpec, GroupTable, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Presentation {
    Permutation,
    Cayley,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalDecl {
    pub name: String,
    /// Words of signed 1-based generator positions, e.g. `[1, -2, 1]`.
    pub generators: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    /// Excluded from the default catalog sweep.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub slow: bool,
    pub presentation: Presentation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub normal_subgroups: Vec<NormalDecl>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("group file: {e}")))
    }

    pub fn read(path: &Path) -> Result<GroupFile> {
        let text = std::fs::read_to_string(path)?;
        GroupFile::parse(&text)
    }

    pub fn spec(&self) -> Result<GroupSpec> {
        match self.presentation {
            Presentation::Permutation => {
                let generators = self
                    .generators
                    .clone()
                    .ok_or_else(|| Error::Parse("permutation presentation needs `generators`".into()))?;
                let degree = match self.degree {
                    Some(d) => d,
                    None => generators.first().map_or(0, Vec::len),
                };
                Ok(GroupSpec::Permutations { degree, generators })
            }
            Presentation::Cayley => {
                let table = self
                    .table
                    .clone()
                    .ok_or_else(|| Error::Parse("cayley presentation needs `table`".into()))?;
                Ok(GroupSpec::Cayley { table })
            }
        }
    }

    /// Enumerates the group and resolves every declared normal subgroup.
    pub fn load(&self, cap: usize) -> Result<LoadedGroup> {
        let group = Arc::new(enumerate_group(&self.name, &self.spec()?, cap)?);
        let mut normals = Vec::with_capacity(self.normal_subgroups.len());
        for decl in &self.normal_subgroups {
            let s = Subgroup::from_words(&group, &decl.generators)?;
            if !s.is_normal() {
                return Err(Error::NotNormal(format!("`{}` in {}", decl.name, self.name)));
            }
            normals.push((decl.name.clone(), s));
        }
        Ok(LoadedGroup { file: self.clone(), group, normals })
    }
}

/// An enumerated group with its named normal subgroups.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub file: GroupFile,
    pub group: Arc<GroupTable>,
    pub normals: Vec<(String, Subgroup)>,
}

impl LoadedGroup {
    /// A declared normal subgroup by name; `1` and `G` always name the
    /// trivial and the whole group.
    pub fn normal(&self, name: &str) -> Option<Subgroup> {
        if let Some((_, s)) = self.normals.iter().find(|(n, _)| n == name) {
            return Some(s.clone());
        }
        match name {
            "1" => Some(Subgroup::trivial(&self.group)),
            "G" => Some(Subgroup::whole(&self.group)),
            _ => None,
        }
    }

    pub fn normal_names(&self) -> Vec<String> {
        self.normals.iter().map(|(n, _)| n.clone()).collect()
    }
}
