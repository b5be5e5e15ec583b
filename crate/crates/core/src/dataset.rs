//! Generator datasets: a group on 1-based points with named subgroups.
//!
//! ```json
//! {"name": "M11", "degree": 11, "order": "7920",
//!  "generators": [[2, 3, ...], ...],
//!  "subgroups": [{"name": "A6.2_3", "generators": [[...]], "index": "11"}]}
//! ```
//!
//! Unknown keys are rejected, and every declared order and index is checked
//! against the computed one.

use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::constructors::factorial;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetFile {
    pub name: String,
    pub degree: usize,
    pub order: String,
    pub generators: Vec<Vec<u64>>,
    pub subgroups: Vec<SubgroupFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupFile {
    pub name: String,
    pub generators: Vec<Vec<u64>>,
    pub index: String,
}

#[derive(Debug, Clone)]
pub struct NamedSubgroup {
    pub name: String,
    pub group: PermGroup,
    pub index: BigUint,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub group: PermGroup,
    pub subgroups: Vec<NamedSubgroup>,
}

impl Dataset {
    pub fn subgroup(&self, name: &str) -> Option<&NamedSubgroup> {
        self.subgroups.iter().find(|s| s.name == name)
    }
}

fn perms(name: &str, degree: usize, lists: &[Vec<u64>]) -> Result<Vec<Permutation>> {
    lists
        .iter()
        .map(|l| {
            if l.len() != degree {
                return Err(Error::Parse(format!(
                    "{name}: generator of length {} in degree {degree}",
                    l.len()
                )));
            }
            Permutation::from_one_based(l).map_err(|e| Error::Parse(format!("{name}: {e}")))
        })
        .collect()
}

fn parse_big(name: &str, s: &str) -> Result<BigUint> {
    s.parse::<BigUint>()
        .map_err(|_| Error::Parse(format!("{name}: `{s}` is not a decimal integer")))
}

impl DatasetFile {
    /// Builds and verifies the group and all subgroups.
    pub fn build(&self) -> Result<Dataset> {
        let bad = |reason: String| Error::Dataset {
            name: self.name.clone(),
            reason,
        };
        let gens = perms(&self.name, self.degree, &self.generators)?;
        let group = PermGroup::new(self.degree, gens)?;
        let declared = parse_big(&self.name, &self.order)?;
        let order = group.order();
        if order != declared {
            return Err(bad(format!("computed order {order}, declared {declared}")));
        }
        if factorial(self.degree as u64) % &order != BigUint::default() {
            return Err(bad("order does not divide degree!".into()));
        }
        let mut subgroups = Vec::new();
        for s in &self.subgroups {
            let sg = PermGroup::new(self.degree, perms(&s.name, self.degree, &s.generators)?)?;
            if !sg.is_subgroup_of(&group) {
                return Err(bad(format!(
                    "subgroup {} is not contained in the group",
                    s.name
                )));
            }
            let declared = parse_big(&s.name, &s.index)?;
            let index = group
                .index_of(&sg)
                .map_err(|e| bad(format!("subgroup {}: {e}", s.name)))?;
            if index != declared {
                return Err(bad(format!(
                    "subgroup {}: computed index {index}, declared {declared}",
                    s.name
                )));
            }
            subgroups.push(NamedSubgroup {
                name: s.name.clone(),
                group: sg,
                index,
            });
        }
        Ok(Dataset {
            name: self.name.clone(),
            group,
            subgroups,
        })
    }
}

pub fn parse_dataset(text: &str) -> Result<Dataset> {
    let file: DatasetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.build()
}

pub fn load_dataset(path: &Path) -> Result<Dataset> {
    parse_dataset(&std::fs::read_to_string(path)?)
}

/// File name used for a dataset: lower case, `.json`.
pub fn dataset_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{}.json", name.to_lowercase()))
}

/// The datasets shipped with the crate.
pub fn default_data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

#[cfg(test)]
mod tests {
    use super::*;

    const S4: &str = r#"{"name": "S4", "degree": 4, "order": "24",
        "generators": [[2,1,3,4],[2,3,4,1]],
        "subgroups": [{"name": "S3", "generators": [[2,1,3,4],[2,3,1,4]], "index": "4"}]}"#;

    #[test]
    fn parses_small_dataset() {
        let d = parse_dataset(S4).unwrap();
        assert_eq!(d.group.order(), BigUint::from(24u32));
        assert_eq!(d.subgroup("S3").unwrap().index, BigUint::from(4u32));
    }

    #[test]
    fn rejects_non_bijection() {
        let bad = S4.replace("[2,1,3,4],[2,3,4,1]]", "[2,2,3,4],[2,3,4,1]]");
        assert!(matches!(parse_dataset(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn rejects_unknown_key() {
        let bad = S4.replace("\"degree\"", "\"extra\": 1, \"degree\"");
        assert!(matches!(parse_dataset(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn rejects_order_mismatch() {
        let bad = S4.replace("\"24\"", "\"12\"");
        assert!(matches!(parse_dataset(&bad), Err(Error::Dataset { .. })));
    }

    #[test]
    fn rejects_index_mismatch() {
        let bad = S4.replace("\"4\"}", "\"6\"}");
        assert!(matches!(parse_dataset(&bad), Err(Error::Dataset { .. })));
    }

    #[test]
    fn rejects_non_member() {
        let bad = S4.replace(
            "[[2,1,3,4],[2,3,4,1]],\n        \"subgroups\"",
            "[[2,3,4,1],[1,3,2,4]],\n        \"subgroups\"",
        );
        // same group, still valid
        assert!(parse_dataset(&bad).is_ok());
        let a4 = r#"{"name": "A4", "degree": 4, "order": "12",
            "generators": [[2,3,1,4],[1,3,4,2]],
            "subgroups": [{"name": "t", "generators": [[2,1,3,4]], "index": "6"}]}"#;
        assert!(matches!(parse_dataset(a4), Err(Error::Dataset { .. })));
    }
}
