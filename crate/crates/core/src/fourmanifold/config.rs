//! JSON configuration files for the 4-manifold commands.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use super::{
    BoundaryKind, FoldKind, FourManifoldError, GenusValue, IntersectionForm, ManifoldData, MapCatalog,
    StableMap, SurfaceComponent, SurfaceConfig, TotalDefect,
};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("{path}: {source}")]
    Invalid { path: String, source: FourManifoldError },
}

fn at(path: impl Into<String>) -> impl FnOnce(FourManifoldError) -> ConfigError {
    let path = path.into();
    move |source| ConfigError::Invalid { path, source }
}

/// Deserialize `text`, reporting the field path of any schema violation.
pub fn parse_config<T: DeserializeOwned>(text: &str) -> Result<T, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ConfigError::Schema {
            path: if path == "." { "<root>".into() } else { path },
            msg: e.into_inner().to_string(),
        }
    })
}

/// An explicit matrix or block notation such as `"<-1> + H"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormSpec {
    Matrix(Vec<Vec<i64>>),
    Blocks(String),
}

impl FormSpec {
    pub fn build(&self) -> Result<IntersectionForm, FourManifoldError> {
        match self {
            FormSpec::Matrix(m) => IntersectionForm::new(m.clone()),
            FormSpec::Blocks(s) => IntersectionForm::from_blocks(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSpec {
    pub form: FormSpec,
    pub euler: i64,
    #[serde(default = "closed")]
    pub boundary: BoundaryKind,
    #[serde(default)]
    pub mu_coset: Option<u8>,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

fn closed() -> BoundaryKind {
    BoundaryKind::Closed
}

impl ManifoldSpec {
    pub fn build(&self, path: &str) -> Result<ManifoldData, ConfigError> {
        let form = self.form.build().map_err(at(format!("{path}.form")))?;
        ManifoldData::new(form, self.euler, self.boundary, self.mu_coset, self.torsion.clone()).map_err(at(path))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub genus: u32,
    #[serde(default = "yes")]
    pub orientable: bool,
    #[serde(default)]
    pub kind: Option<FoldKind>,
    #[serde(default)]
    pub cls: Option<Vec<i64>>,
    /// Multiple of the generator of a rank-1 form.
    #[serde(default)]
    pub k: Option<i64>,
    #[serde(default)]
    pub self_int: Option<i64>,
}

fn yes() -> bool {
    true
}

impl SurfaceSpec {
    pub fn build(&self, form: &IntersectionForm, default_kind: FoldKind, path: &str) -> Result<SurfaceComponent, ConfigError> {
        let cls = match (&self.cls, self.k) {
            (Some(c), _) => c.clone(),
            (None, Some(k)) if form.rank() == 1 => vec![k],
            (None, Some(_)) => {
                return Err(ConfigError::Invalid {
                    path: format!("{path}.k"),
                    source: FourManifoldError::Dimension {
                        expected: form.rank(),
                        got: 1,
                    },
                })
            }
            (None, None) => return Err(at(path)(FourManifoldError::MissingClass)),
        };
        if let (Some(k), true) = (self.k, self.cls.is_some()) {
            if cls != [k] {
                return Err(at(format!("{path}.k"))(FourManifoldError::Dimension {
                    expected: cls.len(),
                    got: 1,
                }));
            }
        }
        let derived = form.self_intersection(&cls).map_err(at(format!("{path}.cls")))?;
        if let Some(stated) = self.self_int {
            if stated != derived {
                return Err(at(format!("{path}.self_int"))(FourManifoldError::SelfIntersectionMismatch {
                    stated,
                    derived,
                }));
            }
        }
        Ok(SurfaceComponent {
            genus: self.genus,
            orientable: self.orientable,
            kind: self.kind.unwrap_or(default_kind),
            cls,
            k_multiple: self.k,
        })
    }
}

fn build_set(
    specs: &[SurfaceSpec],
    form: &IntersectionForm,
    kind: FoldKind,
    path: &str,
) -> Result<SurfaceConfig, ConfigError> {
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| s.build(form, kind, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()
        .map(SurfaceConfig::new)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SaekiConfig {
    #[serde(default)]
    pub description: Option<String>,
    pub manifold: ManifoldSpec,
    #[serde(default)]
    pub f0: Vec<SurfaceSpec>,
    #[serde(default)]
    pub f1: Vec<SurfaceSpec>,
    /// Expected outcome of each of the five conditions.
    #[serde(default)]
    pub expect: Option<[bool; 5]>,
}

impl SaekiConfig {
    pub fn build(&self) -> Result<(ManifoldData, SurfaceConfig, SurfaceConfig), ConfigError> {
        let m = self.manifold.build("manifold")?;
        let f0 = build_set(&self.f0, &m.form, FoldKind::Definite, "f0")?;
        let f1 = build_set(&self.f1, &m.form, FoldKind::Indefinite, "f1")?;
        Ok((m, f0, f1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectConfig {
    #[serde(default)]
    pub description: Option<String>,
    pub manifold: ManifoldSpec,
    #[serde(default)]
    pub sigma0: Vec<SurfaceSpec>,
    #[serde(default)]
    pub sigma1: Vec<SurfaceSpec>,
    /// Framing of the single 2-handle, enabling the closed-form comparison.
    #[serde(default)]
    pub p: Option<i64>,
    #[serde(default)]
    pub expect: Option<TotalDefect>,
}

impl DefectConfig {
    pub fn build(&self) -> Result<(ManifoldData, SurfaceConfig, SurfaceConfig), ConfigError> {
        let m = self.manifold.build("manifold")?;
        let s0 = build_set(&self.sigma0, &m.form, FoldKind::Definite, "sigma0")?;
        let s1 = build_set(&self.sigma1, &m.form, FoldKind::Indefinite, "sigma1")?;
        Ok((m, s0, s1))
    }
}

/// Expected `sg^k` value: `0`, `"inf"`, or a lower bound `">=1"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Exactly(GenusValue),
    AtLeast(u32),
}

impl Expectation {
    pub fn holds(&self, v: GenusValue) -> bool {
        match *self {
            Expectation::Exactly(e) => e == v,
            Expectation::AtLeast(g) => v >= GenusValue::Finite(g),
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Exactly(v) => write!(f, "{v}"),
            Expectation::AtLeast(g) => write!(f, ">={g}"),
        }
    }
}

impl std::str::FromStr for Expectation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Expectation::Exactly(GenusValue::Infinite));
        }
        if let Some(rest) = s.strip_prefix(">=") {
            return rest.trim().parse().map(Expectation::AtLeast).map_err(|e| format!("{s:?}: {e}"));
        }
        s.parse().map(|g| Expectation::Exactly(GenusValue::Finite(g))).map_err(|e| format!("{s:?}: {e}"))
    }
}

impl<'de> Deserialize<'de> for Expectation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(g) => Ok(Expectation::Exactly(GenusValue::Finite(g))),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for Expectation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub components: Vec<SurfaceSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    pub form: FormSpec,
    pub admissible_classes: Vec<Vec<i64>>,
    #[serde(default = "all_kinds")]
    pub allowed_singularities: Vec<FoldKind>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
    /// Keyed by `k`.
    #[serde(default)]
    pub expect: BTreeMap<usize, Expectation>,
}

fn all_kinds() -> Vec<FoldKind> {
    vec![FoldKind::Definite, FoldKind::Indefinite]
}

impl CatalogEntry {
    pub fn build(&self, path: &str) -> Result<MapCatalog, ConfigError> {
        let form = self.form.build().map_err(at(format!("{path}.form")))?;
        for (i, c) in self.admissible_classes.iter().enumerate() {
            form.self_intersection(c).map_err(at(format!("{path}.admissible_classes[{i}]")))?;
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                Ok(StableMap {
                    name: m.name.clone(),
                    singular_set: build_set(&m.components, &form, FoldKind::Definite, &format!("{path}.maps[{i}].components"))?,
                })
            })
            .collect::<Result<Vec<_>, ConfigError>>()?;
        Ok(MapCatalog::new(maps, self.admissible_classes.clone(), self.allowed_singularities.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFile {
    #[serde(default)]
    pub description: Option<String>,
    pub catalogs: Vec<CatalogEntry>,
    #[serde(default = "four")]
    pub k_max: usize,
}

fn four() -> usize {
    4
}

impl CatalogFile {
    pub fn build(&self) -> Result<Vec<(String, MapCatalog)>, ConfigError> {
        self.catalogs
            .iter()
            .enumerate()
            .map(|(i, c)| Ok((c.name.clone(), c.build(&format!("catalogs[{i}]"))?)))
            .collect()
    }
}
