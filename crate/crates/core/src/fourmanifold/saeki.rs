use serde::Serialize;

use super::{
    BoundaryKind, FoldKind, FourManifoldError, IntersectionForm, ManifoldData, SurfaceComponent, SurfaceConfig,
};
use super::form::build_sigma_class;

/// The five fold-map existence conditions for a closed manifold with
/// definite singular set `F0` and indefinite singular set `F1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaekiReport {
    /// χ(X) = χ(F0) − χ(F1)
    pub euler_balance: bool,
    /// [F0 ∪ F1] is characteristic
    pub w2_dual: bool,
    /// F0 is orientable
    pub f0_orientable: bool,
    /// every component of F1 has self-intersection 0
    pub f1_square_zero: bool,
    /// F0 · F0 = 3σ(X)
    pub signature_condition: bool,
    pub chi_x: i64,
    pub chi_f0: i64,
    pub chi_f1: i64,
    pub class: Vec<i64>,
    pub f0_square: i64,
    pub three_sigma: i64,
}

impl SaekiReport {
    pub fn conditions(&self) -> [bool; 5] {
        [
            self.euler_balance,
            self.w2_dual,
            self.f0_orientable,
            self.f1_square_zero,
            self.signature_condition,
        ]
    }

    pub fn passed(&self) -> bool {
        self.conditions().iter().all(|&c| c)
    }
}

pub fn saeki_check(
    m: &ManifoldData,
    f0: &SurfaceConfig,
    f1: &SurfaceConfig,
) -> Result<SaekiReport, FourManifoldError> {
    if m.boundary != BoundaryKind::Closed {
        return Err(FourManifoldError::NotClosed);
    }
    if f0.is_empty() && f1.is_empty() {
        return Err(FourManifoldError::EmptySurfaceSet);
    }
    let rank = m.form.rank();
    let mut class = f0.class_sum(rank)?;
    for (t, x) in class.iter_mut().zip(f1.class_sum(rank)?) {
        *t += x;
    }
    let f1_squares = f1
        .components
        .iter()
        .map(|c| c.self_intersection(&m.form))
        .collect::<Result<Vec<_>, _>>()?;
    let f0_square = f0.square(&m.form)?;
    let three_sigma = 3 * m.signature();
    let (chi_f0, chi_f1) = (f0.euler(), f1.euler());
    Ok(SaekiReport {
        euler_balance: m.euler == chi_f0 - chi_f1,
        w2_dual: m.form.is_characteristic(&class)?,
        f0_orientable: f0.all_orientable(),
        f1_square_zero: f1_squares.iter().all(|&s| s == 0),
        signature_condition: f0_square == three_sigma,
        chi_x: m.euler,
        chi_f0,
        chi_f1,
        class,
        f0_square,
        three_sigma,
    })
}

/// The double of a (−1)-framed handlebody, `<-1> + <1>` with χ = 4, with
/// `F0 = S ∪ S̄` of genus `g` and `F1` one null-homologous surface of genus
/// `1 + 2g`.
pub fn double_xk(g: u32) -> (ManifoldData, SurfaceConfig, SurfaceConfig) {
    let form = IntersectionForm::from_blocks("<-1> + <1>").expect("valid notation");
    let m = ManifoldData::closed(form);
    let f0 = SurfaceConfig::new(vec![
        SurfaceComponent::new(g, vec![1, 0]),
        SurfaceComponent::new(g, vec![0, 1]),
    ]);
    let f1 = SurfaceConfig::new(vec![
        SurfaceComponent::new(1 + 2 * g, vec![0, 0]).with_kind(FoldKind::Indefinite)
    ]);
    (m, f0, f1)
}

/// `W = <-1> + H + n<-1> + m<1> + j<-1>` with `F0` one genus-`f0_genus`
/// surface representing `Σ` and `F1` one null-homologous surface chosen so
/// the Euler characteristics balance. `None` if no such `F1` genus exists.
pub fn w_config(
    n: usize,
    m: usize,
    j: usize,
    f0_genus: u32,
) -> Result<Option<(ManifoldData, SurfaceConfig, SurfaceConfig)>, FourManifoldError> {
    let s = build_sigma_class(n, m, j)?;
    let manifold = ManifoldData::closed(s.form);
    let f0 = SurfaceConfig::new(vec![SurfaceComponent::new(f0_genus, s.cls)]);
    let chi_f1 = f0.euler() - manifold.euler;
    if chi_f1 > 2 || chi_f1 % 2 != 0 {
        return Ok(None);
    }
    let g1 = ((2 - chi_f1) / 2) as u32;
    let rank = manifold.form.rank();
    let f1 = SurfaceConfig::new(vec![
        SurfaceComponent::new(g1, vec![0; rank]).with_kind(FoldKind::Indefinite)
    ]);
    Ok(Some((manifold, f0, f1)))
}
