use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BoundaryKind, FourManifoldError, IntersectionForm, ManifoldData, SurfaceConfig};

/// Degree and Hirzebruch defect of a stable framing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TotalDefect {
    pub d: i64,
    pub h: i64,
}

impl TotalDefect {
    pub fn new(d: i64, h: i64) -> Self {
        TotalDefect { d, h }
    }
}

impl fmt::Display for TotalDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d, self.h)
    }
}

/// `d = χ(X) − χ(Σ⁰) + χ(Σ¹)` and `h = Σ⁰·Σ⁰ − 3σ(X)`, with `Σ⁰·Σ⁰` the
/// sum over components.
pub fn total_defect(
    m: &ManifoldData,
    sigma0: &SurfaceConfig,
    sigma1: &SurfaceConfig,
) -> Result<TotalDefect, FourManifoldError> {
    if m.boundary == BoundaryKind::Closed {
        return Err(FourManifoldError::NoBoundary);
    }
    if !sigma0.all_orientable() {
        return Err(FourManifoldError::NonOrientable("Σ⁰"));
    }
    if !sigma1.all_orientable() {
        return Err(FourManifoldError::NonOrientable("Σ¹"));
    }
    let d = m.euler - sigma0.euler() + sigma1.euler();
    let h = sigma0.square(&m.form)? - 3 * m.signature();
    Ok(TotalDefect { d, h })
}

/// `D⁴` with one 2-handle attached along a `p`-framed knot.
pub fn p_framed_handlebody(p: i64) -> Result<ManifoldData, FourManifoldError> {
    if p == 0 {
        return Err(FourManifoldError::ZeroFraming);
    }
    let boundary = if p.abs() == 1 {
        BoundaryKind::HomologySphere
    } else {
        BoundaryKind::Other
    };
    Ok(ManifoldData {
        form: IntersectionForm::diagonal(p),
        euler: 2,
        boundary,
        mu_coset: None,
        torsion: Vec::new(),
    })
}

/// Closed-form defect for a `p`-framed handlebody:
/// `(χ(Σ¹) + 2 − χ(Σ⁰), −3p + p Σ kᵢ²)`, with `kᵢ` read from the first
/// class coordinate of each `Σ⁰` component.
pub fn handlebody_closed_form(
    p: i64,
    sigma0: &SurfaceConfig,
    sigma1: &SurfaceConfig,
) -> Result<TotalDefect, FourManifoldError> {
    if p == 0 {
        return Err(FourManifoldError::ZeroFraming);
    }
    let mut sum_k2 = 0;
    for c in &sigma0.components {
        let k = c.k_multiple.or_else(|| c.cls.first().copied()).ok_or(FourManifoldError::MissingClass)?;
        sum_k2 += k * k;
    }
    Ok(TotalDefect {
        d: sigma1.euler() + 2 - sigma0.euler(),
        h: -3 * p + p * sum_k2,
    })
}

/// Membership of `t` in `Λ₀ + (0, k)`, `Λ₀ = ⟨(0,4), (−1,2)⟩`, restricted to
/// even degree. Without a coset, both `k = 0` and `k = 2` are accepted.
pub fn homology_sphere_coset_check(t: TotalDefect, mu_coset: Option<u8>) -> bool {
    if t.d.rem_euclid(2) != 0 {
        return false;
    }
    let in_coset = |k: i64| {
        // t − (0,k) = a(0,4) + b(−1,2)  ⇒  b = −d, 4a = h − k − 2b
        let b = -t.d;
        (t.h - k - 2 * b).rem_euclid(4) == 0
    };
    match mu_coset {
        Some(k) => in_coset(k as i64),
        None => in_coset(0) || in_coset(2),
    }
}

/// Defects of the form `(0, 0)` or `(0, ±2)`.
pub fn is_canonical_defect(t: TotalDefect) -> bool {
    t.d == 0 && [-2, 0, 2].contains(&t.h)
}

/// Values `s = Σ kᵢ² ≥ 1` for which `−3p + p s ∈ {−2, 0, 2}`, each paired with
/// the resulting defect `(0, h)`.
pub fn canonical_sphere_constraint(p: i64) -> Result<Vec<(i64, TotalDefect)>, FourManifoldError> {
    if p == 0 {
        return Err(FourManifoldError::ZeroFraming);
    }
    // |p (s − 3)| ≤ 2 forces s ≤ 5
    Ok((1..=5)
        .filter_map(|s| {
            let h = p * (s - 3);
            [-2, 0, 2].contains(&h).then_some((s, TotalDefect::new(0, h)))
        })
        .collect())
}
