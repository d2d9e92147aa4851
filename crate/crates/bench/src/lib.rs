//! Fixtures shared by the benchmarks.

use knotforge::family::KnotTable;
use knotforge::fourmanifold::{FoldKind, MapCatalog, StableMap, SurfaceComponent};
use knotforge::PDDiagram;

/// Table knots in increasing crossing number.
pub const KNOTS: [&str; 4] = ["trefoil", "5_2", "9_45", "11n63"];

pub fn table_diagram(name: &str) -> PDDiagram {
    KnotTable::builtin().diagram(name).expect("shipped table entry")
}

/// A deterministic catalog with `maps` maps of `per_map` components each.
pub fn synthetic_catalog(maps: usize, per_map: usize) -> MapCatalog {
    let classes = [vec![1], vec![-1], vec![2], vec![0]];
    let maps = (0..maps)
        .map(|i| {
            StableMap::new(
                (0..per_map)
                    .map(|j| {
                        let kind = if (i + j) % 3 == 0 { FoldKind::Indefinite } else { FoldKind::Definite };
                        SurfaceComponent::new(((i * 7 + j * 5) % 11) as u32, classes[(i + j) % 4].clone()).with_kind(kind)
                    })
                    .collect(),
            )
        })
        .collect();
    MapCatalog::new(maps, vec![vec![1], vec![-1]], vec![FoldKind::Definite, FoldKind::Indefinite])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        for k in KNOTS {
            assert_eq!(table_diagram(k).component_count(), 1);
        }
        assert_eq!(synthetic_catalog(3, 4).maps.len(), 3);
    }
}
