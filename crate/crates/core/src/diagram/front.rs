use serde::{Deserialize, Serialize};

use super::DiagramError;

/// Writhe and cusp count of a Legendrian front projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontDiagram {
    writhe: i64,
    cusps: u32,
}

impl FrontDiagram {
    pub fn new(writhe: i64, cusps: u32) -> Result<Self, DiagramError> {
        if cusps < 2 || !cusps.is_multiple_of(2) {
            return Err(DiagramError::Cusps(cusps));
        }
        Ok(FrontDiagram { writhe, cusps })
    }

    pub fn writhe(&self) -> i64 {
        self.writhe
    }

    pub fn cusps(&self) -> u32 {
        self.cusps
    }
}

/// Thurston-Bennequin number: writhe minus half the cusps.
pub fn tb_from_front(f: &FrontDiagram) -> i64 {
    f.writhe - (f.cusps / 2) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tb_values() {
        assert_eq!(tb_from_front(&FrontDiagram::new(0, 2).unwrap()), -1);
        assert_eq!(tb_from_front(&FrontDiagram::new(1, 2).unwrap()), 0);
        assert_eq!(tb_from_front(&FrontDiagram::new(0, 4).unwrap()), -2);
        assert!(FrontDiagram::new(0, 3).is_err());
        assert!(FrontDiagram::new(0, 0).is_err());
    }
}
