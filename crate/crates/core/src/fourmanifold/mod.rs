//! Intersection forms and embedded-surface arithmetic: fold-map existence
//! conditions, total defects of induced stable framings, and the `sg^k`
//! genus invariants.

mod config;
mod defect;
mod form;
mod saeki;
mod sg;

pub use config::{
    parse_config, CatalogEntry, CatalogFile, ConfigError, DefectConfig, Expectation, FormSpec, ManifoldSpec,
    MapSpec, SaekiConfig, SurfaceSpec,
};
pub use defect::{
    canonical_sphere_constraint, homology_sphere_coset_check, is_canonical_defect, p_framed_handlebody, handlebody_closed_form,
    total_defect, TotalDefect,
};
pub use form::{build_sigma_class, IntersectionForm, SigmaClass};
pub use saeki::{double_xk, saeki_check, w_config, SaekiReport};
pub use sg::{compare_catalogs, sg_k, sg_plain, GenusValue, MapCatalog, SgComparison, StableMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FourManifoldError {
    #[error("matrix row {row} has {len} entries, expected {rank}")]
    NotSquare { row: usize, len: usize, rank: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("class has {got} coordinates, form has rank {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("bad form notation: {0}")]
    BlockSyntax(String),
    #[error("signature {0} is not divisible by 4; blow up first")]
    SignatureNotDivisible(i64),
    #[error("surface set F0 ∪ F1 is empty")]
    EmptySurfaceSet,
    #[error("manifold must be closed for this check")]
    NotClosed,
    #[error("manifold must have boundary for this computation")]
    NoBoundary,
    #[error("{0} contains a non-orientable component")]
    NonOrientable(&'static str),
    #[error("2-torsion (invariant factor {0}) is outside the supported input")]
    EvenTorsion(u64),
    #[error("mu coset must be 0 or 2, got {0}")]
    BadMuCoset(u8),
    #[error("stated self-intersection {stated} disagrees with the class ({derived})")]
    SelfIntersectionMismatch { stated: i64, derived: i64 },
    #[error("component needs either cls or k (rank-1 forms only)")]
    MissingClass,
    #[error("framing p must be nonzero")]
    ZeroFraming,
    #[error("k must be at least 1")]
    ZeroK,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryKind {
    Closed,
    HomologySphere,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FoldKind {
    Definite,
    Indefinite,
}

/// A compact oriented 4-manifold, described by its intersection form and
/// Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldData {
    pub form: IntersectionForm,
    pub euler: i64,
    pub boundary: BoundaryKind,
    /// `k` in the coset `Λ0 + (0, k)`, when known.
    pub mu_coset: Option<u8>,
    /// Invariant factors of the torsion in homology.
    pub torsion: Vec<u64>,
}

impl ManifoldData {
    pub fn new(
        form: IntersectionForm,
        euler: i64,
        boundary: BoundaryKind,
        mu_coset: Option<u8>,
        torsion: Vec<u64>,
    ) -> Result<Self, FourManifoldError> {
        if let Some(t) = torsion.iter().find(|&&t| t % 2 == 0) {
            return Err(FourManifoldError::EvenTorsion(*t));
        }
        if let Some(mu) = mu_coset {
            if mu != 0 && mu != 2 {
                return Err(FourManifoldError::BadMuCoset(mu));
            }
        }
        Ok(ManifoldData {
            form,
            euler,
            boundary,
            mu_coset,
            torsion,
        })
    }

    /// Simply connected closed manifold: `χ = 2 + rank`.
    pub fn closed(form: IntersectionForm) -> Self {
        let euler = 2 + form.rank() as i64;
        ManifoldData {
            form,
            euler,
            boundary: BoundaryKind::Closed,
            mu_coset: None,
            torsion: Vec::new(),
        }
    }

    pub fn signature(&self) -> i64 {
        self.form.signature()
    }
}

/// One connected embedded surface. For non-orientable surfaces `genus`
/// counts crosscaps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComponent {
    pub genus: u32,
    pub orientable: bool,
    pub kind: FoldKind,
    pub cls: Vec<i64>,
    /// For rank-1 forms, the multiple of the generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_multiple: Option<i64>,
}

impl SurfaceComponent {
    pub fn new(genus: u32, cls: Vec<i64>) -> Self {
        SurfaceComponent {
            genus,
            orientable: true,
            kind: FoldKind::Definite,
            cls,
            k_multiple: None,
        }
    }

    /// A component of a rank-1 form representing `k` times the generator.
    pub fn multiple(genus: u32, k: i64) -> Self {
        SurfaceComponent {
            k_multiple: Some(k),
            ..Self::new(genus, vec![k])
        }
    }

    pub fn with_kind(mut self, kind: FoldKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn non_orientable(mut self) -> Self {
        self.orientable = false;
        self
    }

    pub fn euler(&self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        }
    }

    pub fn self_intersection(&self, form: &IntersectionForm) -> Result<i64, FourManifoldError> {
        form.self_intersection(&self.cls)
    }
}

/// A disjoint union of surface components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SurfaceConfig {
    pub components: Vec<SurfaceComponent>,
}

impl SurfaceConfig {
    pub fn new(components: Vec<SurfaceComponent>) -> Self {
        SurfaceConfig { components }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn euler(&self) -> i64 {
        self.components.iter().map(SurfaceComponent::euler).sum()
    }

    /// Sum of the components' self-intersections.
    pub fn square(&self, form: &IntersectionForm) -> Result<i64, FourManifoldError> {
        self.components.iter().map(|c| c.self_intersection(form)).sum()
    }

    /// Homology class of the union.
    pub fn class_sum(&self, rank: usize) -> Result<Vec<i64>, FourManifoldError> {
        let mut total = vec![0; rank];
        for c in &self.components {
            if c.cls.len() != rank {
                return Err(FourManifoldError::Dimension {
                    expected: rank,
                    got: c.cls.len(),
                });
            }
            for (t, x) in total.iter_mut().zip(&c.cls) {
                *t += x;
            }
        }
        Ok(total)
    }

    pub fn all_orientable(&self) -> bool {
        self.components.iter().all(|c| c.orientable)
    }
}
