use std::fmt;
use std::path::{Path, PathBuf};

use knotforge::diagram::{tb_from_front, DiagramError, FrontDiagram};
use knotforge::family::{verify_family, FamilyError, KnotTable};
use knotforge::fourmanifold::{
    canonical_sphere_constraint, compare_catalogs, homology_sphere_coset_check, is_canonical_defect, parse_config,
    handlebody_closed_form, saeki_check, sg_k, sg_plain, total_defect, BoundaryKind, CatalogFile, ConfigError,
    DefectConfig, FourManifoldError, SaekiConfig,
};
use knotforge::invariants::{self, InvariantsError, Verdict};
use knotforge::skein::{jones_bracket_oracle, SkeinError, ORACLE_BUDGET};
use knotforge::{parse_pd, Check, PDDiagram, RunReport, SkeinEngine};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl From<SkeinError> for CliError {
    fn from(e: SkeinError) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<InvariantsError> for CliError {
    fn from(e: InvariantsError) -> Self {
        match e {
            InvariantsError::Skein(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Skein(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FourManifoldError> for CliError {
    fn from(e: FourManifoldError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Data directory: `$KNOTFORGE_DATA`, else the repository's `data/`.
pub fn data_dir() -> PathBuf {
    std::env::var_os("KNOTFORGE_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

/// `path` as given if it exists, else relative to the data directory.
fn locate(path: &Path) -> Result<PathBuf, CliError> {
    if path.exists() {
        return Ok(path.to_path_buf());
    }
    let in_data = data_dir().join(path);
    if in_data.exists() {
        return Ok(in_data);
    }
    Err(CliError::Input(format!("{}: no such file", path.display())))
}

fn read(path: &Path) -> Result<String, CliError> {
    let p = locate(path)?;
    std::fs::read_to_string(&p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
}

pub struct Context {
    engine: SkeinEngine,
    table: Option<PathBuf>,
}

impl Context {
    pub fn new(budget: usize, table: Option<PathBuf>) -> Self {
        Context {
            engine: SkeinEngine::new(budget),
            table,
        }
    }

    fn table(&self) -> Result<KnotTable, CliError> {
        match &self.table {
            Some(p) => Ok(KnotTable::load(&locate(p)?)?),
            None => {
                let default = data_dir().join("knot_table.pd");
                if default.exists() {
                    Ok(KnotTable::load(&default)?)
                } else {
                    Ok(KnotTable::builtin())
                }
            }
        }
    }

    pub fn invariants(&self, pd: Option<&Path>, name: Option<&str>) -> Result<RunReport, CliError> {
        let mut report = RunReport::new("invariants");
        let d: PDDiagram = match (pd, name) {
            (Some(p), _) => {
                report.input("pd", p.display());
                parse_pd(&read(p)?)?
            }
            (None, Some(n)) => {
                report.input("name", n);
                self.table()?.diagram(n)?
            }
            (None, None) => return Err(CliError::Input("one of --pd or --name is required".into())),
        };
        report.input("budget", self.engine.budget());
        report.result("crossings", d.crossing_count());
        report.result("writhe", d.writhe());
        let inv = invariants::surgery_invariants(&self.engine, &d)?;
        report
            .result("conway", &inv.conway)
            .result("jones", &inv.jones)
            .result("a2", inv.a2)
            .result("c4", inv.c4)
            .result("v2", inv.v2)
            .result("v3", inv.v3)
            .result("lambda1", knotforge::laurent::format_rational(&inv.lambda1))
            .result("lambda2", knotforge::laurent::format_rational(&inv.lambda2));
        if d.crossing_count() <= ORACLE_BUDGET {
            let oracle = jones_bracket_oracle(&d)?;
            report.check(Check::new("Jones agrees with the bracket state sum", oracle.render("t"), &inv.jones));
        }
        Ok(report)
    }

    pub fn verify_paper(&self, nmax: i64) -> Result<RunReport, CliError> {
        let mut report = RunReport::new("verify-paper");
        report.input("nmax", nmax);
        let table = self.table()?;
        let v = verify_family(&self.engine, &table, nmax)?;
        for (name, chirality) in &v.chirality {
            report.result(format!("chirality {name}"), chirality);
        }
        report.extend_checks(v.checks.iter().cloned());
        let family: Vec<_> = v.anchors.iter().filter(|a| a.name != knotforge::family::J0_ANCHOR).collect();
        for pair in family.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let d = invariants::distinguish(&self.engine, &a.diagram, &b.diagram)?;
            let label = format!("distinguish {} / {}", a.name, b.name);
            report.result(format!("{label}: by"), d.by.unwrap_or("none"));
            report.check(Check::new(label, "distinguished", verdict(d.verdict)));
        }
        Ok(report)
    }

    pub fn distinguish(&self, first: &str, second: &str) -> Result<RunReport, CliError> {
        let mut report = RunReport::new("distinguish");
        report.input("first", first).input("second", second);
        let table = self.table()?;
        let d = invariants::distinguish(&self.engine, &table.diagram(first)?, &table.diagram(second)?)?;
        for (name, inv) in [(first, &d.first), (second, &d.second)] {
            report.result(format!("{name}: lambda1"), knotforge::laurent::format_rational(&inv.lambda1));
            report.result(format!("{name}: lambda2"), knotforge::laurent::format_rational(&inv.lambda2));
        }
        report.result("verdict", verdict(d.verdict));
        report.result("by", d.by.unwrap_or("none"));
        Ok(report)
    }

    pub fn saeki(&self, config: &Path) -> Result<RunReport, CliError> {
        let mut report = RunReport::new("saeki");
        report.input("config", config.display());
        let cfg: SaekiConfig = parse_config(&read(config)?)?;
        let (m, f0, f1) = cfg.build()?;
        let r = saeki_check(&m, &f0, &f1)?;
        report
            .result("form", &m.form)
            .result("signature", m.signature())
            .result("chi(X)", r.chi_x)
            .result("chi(F0)", r.chi_f0)
            .result("chi(F1)", r.chi_f1)
            .result("[F0 + F1]", format!("{:?}", r.class))
            .result("F0.F0", r.f0_square)
            .result("3 sigma", r.three_sigma);
        let names = [
            "(1) chi(X) = chi(F0) - chi(F1)",
            "(2) [F0 + F1] is characteristic",
            "(3) F0 is orientable",
            "(4) every F1 component has square 0",
            "(5) F0.F0 = 3 sigma",
        ];
        let expect = cfg.expect.unwrap_or([true; 5]);
        for ((name, want), got) in names.iter().zip(expect).zip(r.conditions()) {
            report.check(Check::new(*name, want, got));
        }
        Ok(report)
    }

    pub fn defect(&self, config: &Path) -> Result<RunReport, CliError> {
        let mut report = RunReport::new("defect");
        report.input("config", config.display());
        let cfg: DefectConfig = parse_config(&read(config)?)?;
        let (m, s0, s1) = cfg.build()?;
        let t = total_defect(&m, &s0, &s1)?;
        report
            .result("form", &m.form)
            .result("d", t.d)
            .result("h", t.h)
            .result("canonical", is_canonical_defect(t));
        if let Some(expect) = cfg.expect {
            report.check(Check::new("total defect", expect, t));
        }
        if m.boundary == BoundaryKind::HomologySphere {
            let coset = match m.mu_coset {
                Some(k) => format!("Lambda0 + (0,{k})"),
                None => "Lambda0 + (0,0) or Lambda0 + (0,2)".into(),
            };
            report.result("coset", coset);
            report.check(Check::new("coset membership", true, homology_sphere_coset_check(t, m.mu_coset)));
        }
        if let Some(p) = cfg.p {
            let closed = handlebody_closed_form(p, &s0, &s1)?;
            report.check(Check::new(format!("closed form for p = {p}"), t, closed));
            let admissible: Vec<String> = canonical_sphere_constraint(p)?
                .into_iter()
                .map(|(s, d)| format!("{s} -> {d}"))
                .collect();
            report.result("canonical sum k^2", admissible.join(", "));
        }
        Ok(report)
    }

    pub fn sg(&self, catalog: &Path, k: Option<usize>) -> Result<RunReport, CliError> {
        let mut report = RunReport::new("sg");
        report.input("catalog", catalog.display());
        let file: CatalogFile = parse_config(&read(catalog)?)?;
        let ks: Vec<usize> = match k {
            Some(k) => {
                report.input("k", k);
                vec![k]
            }
            None => (1..=file.k_max).collect(),
        };
        let built = file.build()?;
        for ((name, cat), entry) in built.iter().zip(&file.catalogs) {
            for &k in &ks {
                report.result(format!("sg^{k}({name})"), sg_k(cat, k)?);
            }
            report.result(format!("sg({name})"), sg_plain(cat));
            for (&k, want) in &entry.expect {
                let got = sg_k(cat, k)?;
                report.check(Check::judged(format!("sg^{k}({name})"), want, got, want.holds(got)));
            }
        }
        if let [(a_name, a), (b_name, b), ..] = built.as_slice() {
            let cmp = compare_catalogs(a, b, file.k_max)?;
            let gap = cmp.first_gap.map_or("none".to_string(), |k| k.to_string());
            report.result(format!("first k with sg^k({a_name}) != sg^k({b_name})"), gap);
        }
        Ok(report)
    }

    pub fn tb(&self, writhe: i64, cusps: u32) -> Result<RunReport, CliError> {
        let mut report = RunReport::new("tb");
        report.input("writhe", writhe).input("cusps", cusps);
        let f = FrontDiagram::new(writhe, cusps)?;
        report.result("tb", tb_from_front(&f));
        Ok(report)
    }
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Distinguished => "distinguished",
        Verdict::Inconclusive => "inconclusive",
    }
}
