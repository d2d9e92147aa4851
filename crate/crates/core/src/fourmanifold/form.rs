use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::FourManifoldError;

/// Symmetric integer matrix of the intersection pairing on `H_2` mod torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntersectionForm {
    matrix: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for IntersectionForm {
    type Error = FourManifoldError;
    fn try_from(m: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        IntersectionForm::new(m)
    }
}

impl From<IntersectionForm> for Vec<Vec<i64>> {
    fn from(f: IntersectionForm) -> Self {
        f.matrix
    }
}

impl IntersectionForm {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self, FourManifoldError> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(FourManifoldError::NotSquare { row: i, len: row.len(), rank: n });
            }
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(FourManifoldError::NotSymmetric { i, j });
                }
            }
        }
        Ok(IntersectionForm { matrix })
    }

    pub fn zero() -> Self {
        IntersectionForm { matrix: Vec::new() }
    }

    /// The rank-1 form `<p>`.
    pub fn diagonal(p: i64) -> Self {
        IntersectionForm { matrix: vec![vec![p]] }
    }

    /// The hyperbolic form `H`.
    pub fn hyperbolic() -> Self {
        IntersectionForm {
            matrix: vec![vec![0, 1], vec![1, 0]],
        }
    }

    pub fn direct_sum(&self, other: &IntersectionForm) -> IntersectionForm {
        let (a, b) = (self.rank(), other.rank());
        let mut m = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            m[i][..a].copy_from_slice(&self.matrix[i]);
        }
        for i in 0..b {
            m[a + i][a..].copy_from_slice(&other.matrix[i]);
        }
        IntersectionForm { matrix: m }
    }

    /// Parse block notation such as `<-1> + H + 3<-1> + 8<1>`.
    pub fn from_blocks(text: &str) -> Result<Self, FourManifoldError> {
        let mut form = IntersectionForm::zero();
        let bad = |msg: &str| FourManifoldError::BlockSyntax(format!("{msg} in {text:?}"));
        if text.trim().is_empty() || text.trim() == "0" {
            return Ok(form);
        }
        for block in text.split('+') {
            let block = block.trim();
            let digits: String = block.chars().take_while(|c| c.is_ascii_digit()).collect();
            let count: usize = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| bad("bad multiplicity"))?
            };
            let body = block[digits.len()..].trim();
            let unit = if body == "H" {
                IntersectionForm::hyperbolic()
            } else if let Some(inner) = body.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
                IntersectionForm::diagonal(inner.trim().parse().map_err(|_| bad("bad diagonal entry"))?)
            } else {
                return Err(bad(&format!("unknown block {body:?}")));
            };
            for _ in 0..count {
                form = form.direct_sum(&unit);
            }
        }
        Ok(form)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    fn check_dim(&self, x: &[i64]) -> Result<(), FourManifoldError> {
        if x.len() != self.rank() {
            return Err(FourManifoldError::Dimension {
                expected: self.rank(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// `xᵀ Q y`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> Result<i64, FourManifoldError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok((0..self.rank())
            .map(|i| x[i] * (0..self.rank()).map(|j| self.matrix[i][j] * y[j]).sum::<i64>())
            .sum())
    }

    pub fn self_intersection(&self, x: &[i64]) -> Result<i64, FourManifoldError> {
        self.pairing(x, x)
    }

    /// `x · v ≡ v · v (mod 2)` for every basis vector `v`.
    pub fn is_characteristic(&self, x: &[i64]) -> Result<bool, FourManifoldError> {
        self.check_dim(x)?;
        Ok((0..self.rank()).all(|i| {
            let xv: i64 = (0..self.rank()).map(|j| x[j] * self.matrix[j][i]).sum();
            (xv - self.matrix[i][i]).rem_euclid(2) == 0
        }))
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.matrix[i][i] % 2 == 0)
    }

    /// Diagonal of a rational congruence diagonalization `PᵀQP`.
    pub fn congruence_diagonal(&self) -> Vec<BigRational> {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
            .collect();
        let mut diag = Vec::with_capacity(n);
        let mut k = 0;
        while k < n {
            if a[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // replace e_k by e_k + e_j: new a_kk = 2 a_kj
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[k][c] += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[k] += v;
                    }
                } else {
                    diag.push(BigRational::zero());
                    k += 1;
                    continue;
                }
            }
            let pivot = a[k][k].clone();
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &pivot;
                for c in k..n {
                    let v = &f * &a[k][c];
                    a[i][c] -= v;
                }
                for r in k..n {
                    let v = &f * &a[r][k];
                    a[r][i] -= v;
                }
            }
            diag.push(pivot);
            k += 1;
        }
        diag
    }

    /// Positive minus negative eigenvalue count.
    pub fn signature(&self) -> i64 {
        self.congruence_diagonal()
            .iter()
            .map(|d| if d.is_positive() { 1 } else if d.is_negative() { -1 } else { 0 })
            .sum()
    }
}

impl fmt::Display for IntersectionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// The class `Σ = e + 2a + 2k b + Σ fᵢ + Σ gⱼ + Σ h_l` in
/// `<-1> + H + n<-1> + m<1> + j<-1>`, where `4k` is the signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaClass {
    pub cls: Vec<i64>,
    pub form: IntersectionForm,
    pub k: i64,
}

pub fn build_sigma_class(n: usize, m: usize, j: usize) -> Result<SigmaClass, FourManifoldError> {
    let sigma = -1 - n as i64 + m as i64 - j as i64;
    if sigma.rem_euclid(4) != 0 {
        return Err(FourManifoldError::SignatureNotDivisible(sigma));
    }
    let k = sigma / 4;
    let form = IntersectionForm::from_blocks(&format!("<-1> + H + {n}<-1> + {m}<1> + {j}<-1>"))
        .expect("generated block notation parses");
    let mut cls = vec![1, 2, 2 * k];
    cls.extend(std::iter::repeat_n(1, n + m + j));
    debug_assert_eq!(form.self_intersection(&cls).ok(), Some(3 * sigma));
    debug_assert_eq!(form.is_characteristic(&cls).ok(), Some(true));
    debug_assert_eq!(form.signature(), sigma);
    Ok(SigmaClass { cls, form, k })
}
