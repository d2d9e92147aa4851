//! Conway and Jones polynomials by skein recursion, and a Kauffman-bracket
//! state sum as an independent check on Jones.
//!
//! The relations are
//!
//! ```text
//! ∇(K+) − ∇(K−) = −z ∇(K0)
//! t V(K+) − t⁻¹ V(K−) = (t^(1/2) − t^(−1/2)) V(K0)
//! ```
//!
//! with both invariants equal to 1 on the unknot. Under these relations a
//! split union with an extra unknot multiplies V by `t^(1/2) + t^(−1/2)`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::diagram::{PDDiagram, UnionFind};
use crate::laurent::{rat, LaurentPoly};

pub const DEFAULT_BUDGET: usize = 24;
pub const ORACLE_BUDGET: usize = 20;

/// Bracket variable substitution: `A = t^(BRACKET_A_POWER / 4)`.
pub const BRACKET_A_POWER: i64 = -1;
/// Whether the bracket result then has `t^(1/2)` replaced by `−t^(1/2)`.
pub const BRACKET_NEGATE_HALF: bool = true;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("diagram has {crossings} crossings, over the budget of {budget}")]
    BudgetExceeded { crossings: usize, budget: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    Conway,
    Jones,
}

/// Concurrent memo table from canonical diagram keys to polynomial values.
#[derive(Debug, Default)]
pub struct SkeinMemo {
    table: DashMap<Vec<u32>, LaurentPoly>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl SkeinMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &[u32]) -> Option<LaurentPoly> {
        let v = self.table.get(key).map(|r| r.value().clone());
        let counter = if v.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        v
    }

    /// Record a value. A different value for an existing key is a bug in
    /// the caller and panics.
    pub fn insert(&self, key: Vec<u32>, value: LaurentPoly) {
        let prior = self.table.insert(key, value.clone());
        if let Some(p) = prior {
            assert_eq!(p, value, "memo entry rewritten with a different value");
        }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }
}

/// Skein evaluator holding one memo per invariant.
#[derive(Debug)]
pub struct SkeinEngine {
    budget: usize,
    parallel: bool,
    conway_memo: SkeinMemo,
    jones_memo: SkeinMemo,
}

impl Default for SkeinEngine {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

const PARALLEL_CUTOFF: usize = 7;

impl SkeinEngine {
    pub fn new(budget: usize) -> Self {
        SkeinEngine {
            budget,
            parallel: true,
            conway_memo: SkeinMemo::new(),
            jones_memo: SkeinMemo::new(),
        }
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn memo(&self, which: Invariant) -> &SkeinMemo {
        match which {
            Invariant::Conway => &self.conway_memo,
            Invariant::Jones => &self.jones_memo,
        }
    }

    /// Conway polynomial in `z` (stored as integer powers of the variable).
    pub fn conway(&self, d: &PDDiagram) -> Result<LaurentPoly, SkeinError> {
        self.check_budget(d)?;
        Ok(self.eval(d, Invariant::Conway))
    }

    /// Jones polynomial in `t^(1/2)`.
    pub fn jones(&self, d: &PDDiagram) -> Result<LaurentPoly, SkeinError> {
        self.check_budget(d)?;
        Ok(self.eval(d, Invariant::Jones))
    }

    fn check_budget(&self, d: &PDDiagram) -> Result<(), SkeinError> {
        if d.crossing_count() > self.budget {
            return Err(SkeinError::BudgetExceeded {
                crossings: d.crossing_count(),
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn eval(&self, d: &PDDiagram, which: Invariant) -> LaurentPoly {
        let d = d.reduce_r1();
        let branch = match first_undercrossing(&d) {
            None => return unlink_value(d.component_count(), which),
            Some(i) => i,
        };
        let memo = self.memo(which);
        let key = d.canonical_key();
        if let Some(v) = memo.get(&key) {
            return v;
        }
        let switched = d.switch_crossing(branch).expect("branch index is in range");
        let smoothed = d.smooth_crossing(branch).expect("branch index is in range");
        let (vs, v0) = if self.parallel && d.crossing_count() >= PARALLEL_CUTOFF {
            rayon::join(|| self.eval(&switched, which), || self.eval(&smoothed, which))
        } else {
            (self.eval(&switched, which), self.eval(&smoothed, which))
        };
        let sign = d.crossings()[branch].sign();
        let value = combine(which, sign, &vs, &v0);
        memo.insert(key, value.clone());
        value
    }
}

/// Value on the k-component unlink.
pub fn unlink_value(components: usize, which: Invariant) -> LaurentPoly {
    match which {
        Invariant::Conway if components == 1 => LaurentPoly::one(),
        Invariant::Conway => LaurentPoly::zero(),
        Invariant::Jones => unlink_factor().pow(components.saturating_sub(1) as u32),
    }
}

fn unlink_factor() -> LaurentPoly {
    &LaurentPoly::half_pow(1) + &LaurentPoly::half_pow(-1)
}

/// Solve the skein relation for the crossing being resolved, given the
/// values at the switched diagram and at the smoothing.
fn combine(which: Invariant, sign: i32, switched: &LaurentPoly, smoothed: &LaurentPoly) -> LaurentPoly {
    match (which, sign > 0) {
        (Invariant::Conway, true) => switched - &(&LaurentPoly::var_pow(1) * smoothed),
        (Invariant::Conway, false) => switched + &(&LaurentPoly::var_pow(1) * smoothed),
        (Invariant::Jones, true) => {
            let c0 = &LaurentPoly::half_pow(-1) - &LaurentPoly::half_pow(-3);
            &switched.shift(-4) + &(&c0 * smoothed)
        }
        (Invariant::Jones, false) => {
            let c0 = &LaurentPoly::half_pow(3) - &LaurentPoly::half_pow(1);
            &switched.shift(4) - &(&c0 * smoothed)
        }
    }
}

/// First crossing met as an under-pass when walking the components in label
/// order, each from its lowest label, counting only first visits.
fn first_undercrossing(d: &PDDiagram) -> Option<usize> {
    let n = d.crossing_count();
    let mut head: Vec<(usize, usize)> = vec![(0, 0); 2 * n + 1];
    for (i, c) in d.crossings().iter().enumerate() {
        for (s, &l) in c.labels.iter().enumerate() {
            if !c.is_out_slot(s) {
                head[l as usize] = (i, s);
            }
        }
    }
    let mut met = vec![false; n];
    for &(lo, hi) in d.runs() {
        for e in lo..=hi {
            let (x, s) = head[e as usize];
            if !met[x] {
                met[x] = true;
                if s == 0 {
                    return Some(x);
                }
            }
        }
    }
    None
}

/// Conway polynomial with the default engine.
pub fn conway(d: &PDDiagram) -> Result<LaurentPoly, SkeinError> {
    SkeinEngine::default().conway(d)
}

/// Jones polynomial with the default engine.
pub fn jones(d: &PDDiagram) -> Result<LaurentPoly, SkeinError> {
    SkeinEngine::default().jones(d)
}

/// Jones polynomial from the Kauffman bracket summed over all `2^N` states.
pub fn jones_bracket_oracle(d: &PDDiagram) -> Result<LaurentPoly, SkeinError> {
    let n = d.crossing_count();
    if n > ORACLE_BUDGET {
        return Err(SkeinError::BudgetExceeded {
            crossings: n,
            budget: ORACLE_BUDGET,
        });
    }
    // keys of `a_poly` are powers of A
    let mut tally: HashMap<(i64, usize), u64> = HashMap::new();
    let crossings = d.crossings();
    for state in 0u64..(1u64 << n) {
        let mut uf = UnionFind::new(2 * n + 1);
        let mut a_minus_b = 0i64;
        for (i, c) in crossings.iter().enumerate() {
            let [a, b, cc, dd] = c.labels.map(|l| l as usize);
            if state >> i & 1 == 0 {
                a_minus_b += 1;
                uf.union(a, b);
                uf.union(cc, dd);
            } else {
                a_minus_b -= 1;
                uf.union(a, dd);
                uf.union(b, cc);
            }
        }
        let loops = (1..=2 * n).filter(|&l| uf.find(l) == l).count();
        *tally.entry((a_minus_b, loops)).or_insert(0) += 1;
    }
    if n == 0 {
        tally.insert((0, 0), 1);
    }
    let delta = LaurentPoly::from_doubled_terms(&[(-1, 2), (-1, -2)]);
    let mut bracket = LaurentPoly::zero();
    let mut entries: Vec<_> = tally.into_iter().collect();
    entries.sort_unstable();
    for ((k, loops), count) in entries {
        let total = loops + d.free_loops() as usize;
        let term = LaurentPoly::monomial(BigRational::from_integer(BigInt::from(count)), k);
        bracket += &(&term * &delta.pow(total as u32 - 1));
    }
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let normalized = &bracket * &LaurentPoly::monomial(rat(sign), 3 * w);
    let mut out = LaurentPoly::zero();
    for (k, c) in normalized.terms() {
        let doubled = k * BRACKET_A_POWER;
        assert!(doubled % 2 == 0, "bracket exponents must be even after normalization");
        out += &LaurentPoly::monomial(c.clone(), doubled / 2);
    }
    Ok(if BRACKET_NEGATE_HALF {
        out.negate_half_powers()
    } else {
        out
    })
}
