//! Group specification files.
//!
//! A group spec is a TOML document:
//!
//! ```toml
//! kind = "raag"                 # free | abelian | raag | free_product | direct_product | finite
//! generators = ["a", "b", "c"]
//! commute = [["a", "b"]]        # raag only
//! order = ["a", "a^-1", "b", "b^-1", "c", "c^-1"]   # optional symbol order
//!
//! [[subgroups]]
//! name = "diag"
//! kind = "cyclic"               # cyclic | factor | generated | trivial | whole
//! words = ["a b"]
//! distortion = 3
//! ```
//!
//! Products list their factors as nested specs:
//!
//! ```toml
//! kind = "free_product"
//! [[factors]]
//! kind = "abelian"
//! generators = ["a", "b"]
//! [[factors]]
//! kind = "free"
//! generators = ["c"]
//! ```
//!
//! Finite groups give a multiplication table (`table[x][y] = x*y`, element 0
//! the identity) and name generating elements:
//!
//! ```toml
//! kind = "finite"
//! table = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
//! generators = [{ name = "t", element = 1 }]
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::subgroup::{SubgroupKind, SubgroupOracle};
use crate::word::SymbolOrder;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: String,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub commute: Vec<(String, String)>,
    #[serde(default)]
    pub factors: Vec<GroupSpec>,
    #[serde(default)]
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub order: Option<Vec<String>>,
    #[serde(default)]
    pub subgroups: Vec<SubgroupSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Name(String),
    Element { name: String, element: usize },
}

impl GeneratorSpec {
    fn name(&self) -> &str {
        match self {
            GeneratorSpec::Name(n) | GeneratorSpec::Element { name: n, .. } => n,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    pub name: String,
    pub kind: String,
    #[serde(default)]
    pub words: Vec<String>,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default = "default_distortion")]
    pub distortion: usize,
}

fn default_distortion() -> usize {
    crate::subgroup::DEFAULT_DISTORTION
}

/// A parsed group together with its declared symbol order and subgroups.
#[derive(Debug, Clone)]
pub struct LoadedGroup {
    pub name: String,
    pub model: GroupModel,
    pub order: SymbolOrder,
    pub subgroups: Vec<(String, SubgroupOracle)>,
}

impl LoadedGroup {
    pub fn subgroup(&self, name: &str) -> Result<&SubgroupOracle> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, h)| h)
            .ok_or_else(|| Error::InvalidSpec(format!("no subgroup named `{name}`")))
    }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn build_model(&self) -> Result<GroupModel> {
        let names: Vec<&str> = self.generators.iter().map(GeneratorSpec::name).collect();
        let plain_names = || -> Result<()> {
            if self
                .generators
                .iter()
                .any(|g| matches!(g, GeneratorSpec::Element { .. }))
            {
                return Err(Error::InvalidSpec(format!(
                    "kind `{}` takes plain generator names",
                    self.kind
                )));
            }
            Ok(())
        };
        match self.kind.as_str() {
            "free" => {
                plain_names()?;
                GroupModel::free(&names)
            }
            "abelian" => {
                plain_names()?;
                GroupModel::abelian(&names)
            }
            "raag" => {
                plain_names()?;
                let edges: Vec<(&str, &str)> = self
                    .commute
                    .iter()
                    .map(|(x, y)| (x.as_str(), y.as_str()))
                    .collect();
                GroupModel::raag(&names, &edges)
            }
            "free_product" | "direct_product" => {
                let factors = self
                    .factors
                    .iter()
                    .map(GroupSpec::build_model)
                    .collect::<Result<Vec<_>>>()?;
                if self.kind == "free_product" {
                    GroupModel::free_product(factors)
                } else {
                    GroupModel::direct_product(factors)
                }
            }
            "finite" => {
                let gens = self
                    .generators
                    .iter()
                    .map(|g| match g {
                        GeneratorSpec::Element { name, element } => Ok((name.as_str(), *element)),
                        GeneratorSpec::Name(n) => Err(Error::InvalidSpec(format!(
                            "finite generator `{n}` needs an element index"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                GroupModel::finite(self.table.clone(), &gens)
            }
            other => Err(Error::InvalidSpec(format!("unknown group kind `{other}`"))),
        }
    }

    pub fn load(&self, name: &str) -> Result<LoadedGroup> {
        let model = self.build_model()?;
        let order = match &self.order {
            Some(names) => SymbolOrder::from_names(model.alphabet(), names)?,
            None => SymbolOrder::natural(model.alphabet()),
        };
        let subgroups = self
            .subgroups
            .iter()
            .map(|s| Ok((s.name.clone(), s.build(&model)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LoadedGroup {
            name: name.to_string(),
            model,
            order,
            subgroups,
        })
    }
}

impl SubgroupSpec {
    pub fn build(&self, model: &GroupModel) -> Result<SubgroupOracle> {
        let al = model.alphabet();
        let words = || {
            self.words
                .iter()
                .map(|w| al.parse_word(w))
                .collect::<Result<Vec<_>>>()
        };
        let kind = match self.kind.as_str() {
            "cyclic" => {
                let ws = words()?;
                if ws.len() != 1 {
                    return Err(Error::InvalidSpec(
                        "cyclic subgroup takes exactly one word".into(),
                    ));
                }
                SubgroupKind::Cyclic(ws.into_iter().next().expect("one word"))
            }
            "generated" => SubgroupKind::Generated(words()?),
            "factor" => {
                let letters = self
                    .generators
                    .iter()
                    .map(|g| al.letter(g))
                    .collect::<Result<Vec<_>>>()?;
                SubgroupKind::Factor(letters)
            }
            "trivial" => SubgroupKind::Trivial,
            "whole" => SubgroupKind::Whole,
            other => {
                return Err(Error::InvalidSpec(format!(
                    "unknown subgroup kind `{other}`"
                )))
            }
        };
        SubgroupOracle::new(model, kind, self.distortion)
    }
}

/// Loads a group from a spec file path, or from a built-in name
/// (see [`builtin`](crate::group::builtin)).
pub fn load_group(path_or_name: &str) -> Result<LoadedGroup> {
    if let Some(g) = crate::group::builtin(path_or_name) {
        return g;
    }
    let path = Path::new(path_or_name);
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let name = path.file_stem().map_or_else(
        || path_or_name.to_string(),
        |s| s.to_string_lossy().into_owned(),
    );
    GroupSpec::parse(&text)?.load(&name)
}
