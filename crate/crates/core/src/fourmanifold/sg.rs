use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use super::{FoldKind, FourManifoldError, SurfaceComponent, SurfaceConfig};

/// A genus or `∞` (the minimum of the empty set).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenusValue {
    Finite(u32),
    Infinite,
}

impl fmt::Display for GenusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusValue::Finite(g) => write!(f, "{g}"),
            GenusValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for GenusValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GenusValue::Finite(g) => s.serialize_u32(*g),
            GenusValue::Infinite => s.serialize_str("inf"),
        }
    }
}

/// One candidate stable map, described by its singular set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableMap {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub singular_set: SurfaceConfig,
}

impl StableMap {
    pub fn new(components: Vec<SurfaceComponent>) -> Self {
        StableMap {
            name: None,
            singular_set: SurfaceConfig::new(components),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapCatalog {
    pub maps: Vec<StableMap>,
    pub admissible_classes: Vec<Vec<i64>>,
    pub allowed_singularities: Vec<FoldKind>,
}

impl MapCatalog {
    pub fn new(maps: Vec<StableMap>, admissible_classes: Vec<Vec<i64>>, allowed: Vec<FoldKind>) -> Self {
        MapCatalog {
            maps,
            admissible_classes,
            allowed_singularities: allowed,
        }
    }

    pub fn is_admissible(&self, c: &SurfaceComponent) -> bool {
        self.allowed_singularities.contains(&c.kind) && self.admissible_classes.contains(&c.cls)
    }

    /// Sorted genera of the admissible components of `map`.
    pub fn admissible_genera(&self, map: &StableMap) -> Vec<u32> {
        let mut g: Vec<u32> = map
            .singular_set
            .components
            .iter()
            .filter(|c| self.is_admissible(c))
            .map(|c| c.genus)
            .collect();
        g.sort_unstable();
        g
    }
}

/// Minimum over maps of the `k`-th smallest admissible genus.
pub fn sg_k(cat: &MapCatalog, k: usize) -> Result<GenusValue, FourManifoldError> {
    if k == 0 {
        return Err(FourManifoldError::ZeroK);
    }
    Ok(cat
        .maps
        .par_iter()
        .map(|m| match cat.admissible_genera(m).get(k - 1) {
            Some(&g) => GenusValue::Finite(g),
            None => GenusValue::Infinite,
        })
        .min()
        .unwrap_or(GenusValue::Infinite))
}

/// Minimum over maps of the largest admissible genus.
pub fn sg_plain(cat: &MapCatalog) -> GenusValue {
    cat.maps
        .par_iter()
        .map(|m| match cat.admissible_genera(m).last() {
            Some(&g) => GenusValue::Finite(g),
            None => GenusValue::Infinite,
        })
        .min()
        .unwrap_or(GenusValue::Infinite)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SgComparison {
    /// `(k, sg^k(first), sg^k(second))`
    pub values: Vec<(usize, GenusValue, GenusValue)>,
    /// Smallest `k` with differing values.
    pub first_gap: Option<usize>,
}

pub fn compare_catalogs(a: &MapCatalog, b: &MapCatalog, k_max: usize) -> Result<SgComparison, FourManifoldError> {
    let values = (1..=k_max)
        .map(|k| Ok((k, sg_k(a, k)?, sg_k(b, k)?)))
        .collect::<Result<Vec<_>, FourManifoldError>>()?;
    let first_gap = values.iter().find(|(_, x, y)| x != y).map(|v| v.0);
    Ok(SgComparison { values, first_gap })
}
