//! The knot family `L_n`: closed forms for its Conway and Jones polynomials,
//! table diagrams for `n = 0, 1, 2` and the two-component link `J0`, and
//! cross-checks between the two routes.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{parse_pd, DiagramError, PDDiagram};
use crate::invariants::{self, ohtsuki_lambda2};
use crate::laurent::{format_rational, rat, LaurentPoly};
use crate::report::Check;
use crate::skein::{SkeinEngine, SkeinError};

/// The shipped knot table.
pub const BUILTIN_TABLE: &str = include_str!("../../../data/knot_table.pd");

/// Table names of `L_0`, `L_1`, `L_2`.
pub const FAMILY_ANCHORS: [&str; 3] = ["5_2", "9_45", "11n63"];
/// Table name of `J0`.
pub const J0_ANCHOR: &str = "L7n2";

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("family index must be non-negative, got {0}")]
    NegativeIndex(i64),
    #[error("n_max must be at least 2, got {0}")]
    NMaxTooSmall(i64),
    #[error("table line {line}: {msg}")]
    TableSyntax { line: usize, msg: String },
    #[error("table entry {name}: {source}")]
    Entry {
        name: String,
        #[source]
        source: DiagramError,
    },
    #[error("table entry {name} should be a {expected} but has {components} components")]
    EntryKind {
        name: String,
        expected: &'static str,
        components: usize,
    },
    #[error("no table entry named {0}")]
    UnknownEntry(String),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("tilde V from the table differs from the listed polynomial: {0}")]
    TildeMismatch(String),
    #[error(transparent)]
    Skein(#[from] SkeinError),
}

/// Named PD codes, in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotTable {
    entries: BTreeMap<String, String>,
    order: Vec<String>,
}

fn is_link_name(name: &str) -> bool {
    name.starts_with('L') || name.starts_with("hopf")
}

impl KnotTable {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_TABLE).expect("shipped table is valid")
    }

    pub fn load(path: &Path) -> Result<Self, FamilyError> {
        let text = std::fs::read_to_string(path).map_err(|source| FamilyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parse stanzas `name: <entry>` followed by PD lines. Every entry must
    /// validate, and names starting with `L` or `hopf` must be links.
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let mut entries = BTreeMap::new();
        let mut order = Vec::new();
        let mut current: Option<(String, String)> = None;
        for (k, line) in text.lines().enumerate() {
            if let Some(rest) = line.trim_start().strip_prefix("name:") {
                if let Some((n, body)) = current.take() {
                    order.push(n.clone());
                    entries.insert(n, body);
                }
                let name = rest.trim();
                if name.is_empty() || entries.contains_key(name) {
                    return Err(FamilyError::TableSyntax {
                        line: k + 1,
                        msg: format!("missing or duplicate entry name {name:?}"),
                    });
                }
                current = Some((name.to_string(), String::new()));
            } else if let Some((_, body)) = current.as_mut() {
                body.push_str(line);
                body.push('\n');
            } else {
                let bare = line.split('#').next().unwrap_or("").trim();
                if !bare.is_empty() {
                    return Err(FamilyError::TableSyntax {
                        line: k + 1,
                        msg: "content before the first \"name:\" line".into(),
                    });
                }
            }
        }
        if let Some((n, body)) = current {
            order.push(n.clone());
            entries.insert(n, body);
        }
        let table = KnotTable { entries, order };
        for name in &table.order {
            let d = table.diagram(name)?;
            let link = is_link_name(name);
            let ok = if link { d.component_count() >= 2 } else { d.component_count() == 1 };
            if !ok {
                return Err(FamilyError::EntryKind {
                    name: name.clone(),
                    expected: if link { "link" } else { "knot" },
                    components: d.component_count(),
                });
            }
        }
        Ok(table)
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn text(&self, name: &str) -> Option<&str> {
        self.entries.get(name).map(String::as_str)
    }

    pub fn diagram(&self, name: &str) -> Result<PDDiagram, FamilyError> {
        let text = self
            .entries
            .get(name)
            .ok_or_else(|| FamilyError::UnknownEntry(name.to_string()))?;
        parse_pd(text).map_err(|source| FamilyError::Entry {
            name: name.to_string(),
            source,
        })
    }

    /// Replace or add an entry without validation (for fault injection).
    pub fn with_entry(mut self, name: &str, pd: &str) -> Self {
        if !self.entries.contains_key(name) {
            self.order.push(name.to_string());
        }
        self.entries.insert(name.to_string(), pd.to_string());
        self
    }
}

/// `V(L_0)` as listed.
pub fn v_l0() -> LaurentPoly {
    LaurentPoly::from_int_terms(&[(1, -1), (-1, -2), (2, -3), (-1, -4), (1, -5), (-1, -6)])
}

/// The seven-term polynomial `t⁻¹ (t^(1/2) − t^(−1/2)) V(J0)` as listed.
pub fn tilde_v_listed() -> LaurentPoly {
    LaurentPoly::from_int_terms(&[(2, -1), (-3, -2), (3, -3), (-3, -4), (2, -5), (-2, -6), (1, -7)])
}

/// `t⁻¹ (t^(1/2) − t^(−1/2))`.
pub fn tilde_factor() -> LaurentPoly {
    &LaurentPoly::half_pow(-1) - &LaurentPoly::half_pow(-3)
}

fn check_index(n: i64) -> Result<u32, FamilyError> {
    u32::try_from(n).map_err(|_| FamilyError::NegativeIndex(n))
}

/// `1 + 2z² − n z⁴`, i.e. `∇(L_0) − n z ∇(J0)` with `∇(J0) = z³`.
pub fn conway_family(n: i64) -> Result<LaurentPoly, FamilyError> {
    check_index(n)?;
    let l0 = LaurentPoly::from_int_terms(&[(1, 0), (2, 2)]);
    let j0 = LaurentPoly::var_pow(3);
    Ok(&l0 - &(&LaurentPoly::var_pow(1) * &j0).scale(&rat(n)))
}

/// `(1 + t⁻² + ... + t^(−2(n−1))) Ṽ + t^(−2n) V(L_0)`.
pub fn jones_family(n: i64) -> Result<LaurentPoly, FamilyError> {
    let n = check_index(n)?;
    let tv = tilde_v_listed();
    let mut sum = LaurentPoly::zero();
    for i in 0..n {
        sum += &tv.shift(-4 * i as i64);
    }
    Ok(&sum + &v_l0().shift(-4 * n as i64))
}

/// `λ2(S³₋₁(L_n))` from the closed forms.
pub fn lambda2_family(n: i64) -> Result<BigRational, FamilyError> {
    let v = jones_family(n)?;
    let c = conway_family(n)?;
    Ok(ohtsuki_lambda2(&v.moment(2), &v.moment(3), &c.coeff(4)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    AsIs,
    Mirrored,
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::AsIs => "as-is",
            Chirality::Mirrored => "mirrored",
        })
    }
}

/// A table diagram in the chirality whose polynomials match the target.
#[derive(Clone, Debug)]
pub struct Anchor {
    pub name: String,
    pub chirality: Chirality,
    pub matched: bool,
    pub diagram: PDDiagram,
    pub conway: LaurentPoly,
    pub jones: LaurentPoly,
}

/// Evaluate a table entry, retrying once with the mirror image when the
/// polynomials fail `accept`. Without a match the as-is values are kept.
pub fn resolve_anchor(
    engine: &SkeinEngine,
    table: &KnotTable,
    name: &str,
    accept: impl Fn(&LaurentPoly, &LaurentPoly) -> bool,
) -> Result<Anchor, FamilyError> {
    let d = table.diagram(name)?;
    let mut first: Option<Anchor> = None;
    for (chirality, diagram) in [(Chirality::AsIs, d.clone()), (Chirality::Mirrored, d.mirror())] {
        let conway = engine.conway(&diagram)?;
        let jones = engine.jones(&diagram)?;
        let matched = accept(&conway, &jones);
        let anchor = Anchor {
            name: name.to_string(),
            chirality,
            matched,
            diagram,
            conway,
            jones,
        };
        if matched {
            return Ok(anchor);
        }
        first.get_or_insert(anchor);
    }
    Ok(first.expect("as-is attempt recorded"))
}

/// `L_n` for `n = 0, 1, 2` from the table.
pub fn resolve_family_anchor(engine: &SkeinEngine, table: &KnotTable, n: usize) -> Result<Anchor, FamilyError> {
    let want_c = conway_family(n as i64)?;
    let want_v = jones_family(n as i64)?;
    resolve_anchor(engine, table, FAMILY_ANCHORS[n], |c, v| *c == want_c && *v == want_v)
}

/// `J0` from the table, matched on `∇ = z³` and the listed `Ṽ`.
pub fn resolve_j0(engine: &SkeinEngine, table: &KnotTable) -> Result<Anchor, FamilyError> {
    let z3 = LaurentPoly::var_pow(3);
    let tv = tilde_v_listed();
    resolve_anchor(engine, table, J0_ANCHOR, |c, v| *c == z3 && &tilde_factor() * v == tv)
}

/// `Ṽ` computed from the table's `J0`; errors if it differs from the listed one.
pub fn tilde_v(engine: &SkeinEngine, table: &KnotTable) -> Result<LaurentPoly, FamilyError> {
    let j0 = resolve_j0(engine, table)?;
    let got = &tilde_factor() * &j0.jones;
    if got != tilde_v_listed() {
        return Err(FamilyError::TildeMismatch(got.to_string()));
    }
    Ok(got)
}

#[derive(Clone, Debug)]
pub struct FamilyVerification {
    pub checks: Vec<Check>,
    /// Chirality chosen for each table anchor.
    pub chirality: Vec<(String, Chirality)>,
    pub anchors: Vec<Anchor>,
}

impl FamilyVerification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn closed_form_checks(n: i64) -> Vec<Check> {
    let v = jones_family(n).expect("n is non-negative");
    let c = conway_family(n).expect("n is non-negative");
    let mut prev = v_l0();
    for _ in 0..n {
        prev = &prev.shift(-4) + &tilde_v_listed();
    }
    let lambda1 = invariants::casson_minus_one_surgery(invariants::a2(&c).expect("integral"));
    vec![
        Check::new(format!("L{n}: V(1)"), 1, format_rational(&v.eval_at_one())),
        Check::new(format!("L{n}: v1"), 0, format_rational(&v.moment(1))),
        Check::new(format!("L{n}: v2"), -12, format_rational(&v.moment(2))),
        Check::new(format!("L{n}: v3"), 36 * n + 108, format_rational(&v.moment(3))),
        Check::new(format!("L{n}: c4"), -n, format_rational(&c.coeff(4))),
        Check::new(format!("L{n}: a2"), 2, format_rational(&c.coeff(2))),
        Check::new(format!("L{n}: lambda1"), -2, format_rational(&lambda1)),
        Check::new(
            format!("L{n}: lambda2"),
            72 * n + 270,
            format_rational(&lambda2_family(n).expect("n is non-negative")),
        ),
        Check::new(format!("L{n}: Jones recurrence"), v.to_string(), prev.to_string()),
    ]
}

/// Table diagrams against the closed forms for `n ≤ 2`, and the closed-form
/// moment and λ identities for every `n ≤ n_max`. Failed identities are
/// reported as failed checks, not errors.
pub fn verify_family(engine: &SkeinEngine, table: &KnotTable, n_max: i64) -> Result<FamilyVerification, FamilyError> {
    if n_max < 2 {
        return Err(FamilyError::NMaxTooSmall(n_max));
    }
    let mut checks = Vec::new();
    let mut chirality = Vec::new();
    let mut anchors = Vec::new();

    for n in 0..3usize {
        let name = FAMILY_ANCHORS[n];
        let a = match resolve_family_anchor(engine, table, n) {
            Ok(a) => a,
            Err(e) => {
                checks.push(Check::judged(format!("L{n} = {name}: table entry"), "usable", e, false));
                continue;
            }
        };
        let want_c = conway_family(n as i64)?;
        let want_v = jones_family(n as i64)?;
        checks.push(Check::new(format!("L{n} = {name}: Conway"), want_c.render("z"), a.conway.render("z")));
        checks.push(Check::new(format!("L{n} = {name}: Jones"), &want_v, &a.jones));
        match invariants::from_polynomials(&a.conway, &a.jones) {
            Ok(inv) => {
                let n = n as i64;
                checks.push(Check::new(format!("L{n} = {name}: engine lambda2"), 72 * n + 270, format_rational(&inv.lambda2)));
                checks.push(Check::new(format!("L{n} = {name}: engine lambda1"), -2, format_rational(&inv.lambda1)));
            }
            Err(e) => checks.push(Check::judged(format!("L{n} = {name}: engine invariants"), "computable", e, false)),
        }
        chirality.push((name.to_string(), a.chirality));
        anchors.push(a);
    }

    match resolve_j0(engine, table) {
        Ok(a) => {
            checks.push(Check::new(format!("J0 = {J0_ANCHOR}: Conway"), "z^3", a.conway.render("z")));
            let tv = &tilde_factor() * &a.jones;
            checks.push(Check::new(format!("J0 = {J0_ANCHOR}: tilde V"), tilde_v_listed(), &tv));
            let moments: Vec<String> = (0..4).map(|i| format_rational(&tv.moment(i))).collect();
            checks.push(Check::new("tilde V moments 0..3", "0, 2, -4, -28", moments.join(", ")));
            chirality.push((J0_ANCHOR.to_string(), a.chirality));
            anchors.push(a);
        }
        Err(e) => checks.push(Check::judged(format!("J0 = {J0_ANCHOR}: table entry"), "usable", e, false)),
    }

    let sweep: Vec<Vec<Check>> = (0..=n_max).into_par_iter().map(closed_form_checks).collect();
    checks.extend(sweep.into_iter().flatten());
    Ok(FamilyVerification {
        checks,
        chirality,
        anchors,
    })
}
