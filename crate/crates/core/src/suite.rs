//! Property suites over generated instances, with per-row pass tables.
//!
//! Every suite is deterministic in its [`SuiteConfig`]: each row draws from
//! its own generator seeded from the suite seed and the row index, so rows
//! can be rerun in isolation. A generator that cannot produce an instance
//! counts as a failure of the row, never as a skip.

use std::fmt;
use std::time::{Duration, Instant};

use crate::canon::canonicity_verdict;
use crate::conv;
use crate::equations::{eq_instance, shrink, EqInstance, Schema};
use crate::gen::{Coverage, Gen, GenConfig, GenError};
use crate::inject::{
    build_ctx_iso, check_embedding, check_instance, injectivity_probe, operator_instances, Embedded,
    ProbeOutcome, ProbePair, Verdict,
};
use crate::param::{param_ctx, param_sub, param_tm, param_ty, ParamEntity};
use crate::syntax::{Ctor, Ctx, Sub, Tm, Ty};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Instances per row.
    pub count: usize,
    pub max_nodes: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            count: 100,
            max_nodes: GenConfig::default().max_nodes,
        }
    }
}

impl SuiteConfig {
    fn gen(&self, row: u64) -> Gen {
        Gen::new(GenConfig {
            seed: self
                .seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(row.wrapping_mul(0x2545_f491_4f6c_dd1d)),
            max_nodes: self.max_nodes,
            ..GenConfig::default()
        })
    }

    fn gen_config(&self, row: u64) -> GenConfig {
        *self.gen(row).config()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteKind {
    Equations,
    Termified,
    Inject,
    Canon,
    Param,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 5] = [
        SuiteKind::Equations,
        SuiteKind::Termified,
        SuiteKind::Inject,
        SuiteKind::Canon,
        SuiteKind::Param,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Equations => "equations",
            SuiteKind::Termified => "termified",
            SuiteKind::Inject => "inject",
            SuiteKind::Canon => "canon",
            SuiteKind::Param => "param",
        }
    }

    pub fn from_name(s: &str) -> Option<SuiteKind> {
        SuiteKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// One line of a pass table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// Extra information; for failing rows, the (shrunk) counterexample.
    pub detail: Option<String>,
}

impl Row {
    pub fn ok(&self) -> bool {
        self.passed == self.total && self.total > 0
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: SuiteKind,
    pub rows: Vec<Row>,
    pub elapsed: Duration,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(Row::ok)
    }

    pub fn row(&self, name: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.ok())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        writeln!(f, "== {} ({:.2?})", self.suite.name(), self.elapsed)?;
        for r in &self.rows {
            let mark = if r.ok() { "pass" } else { "FAIL" };
            write!(f, "{mark}  {:width$}  {:>5}/{:<5}", r.name, r.passed, r.total)?;
            match &r.detail {
                Some(d) if r.ok() => writeln!(f, "  {d}")?,
                Some(d) => {
                    writeln!(f)?;
                    for line in d.lines() {
                        writeln!(f, "      {line}")?;
                    }
                }
                None => writeln!(f)?,
            }
        }
        Ok(())
    }
}

/// Runs `f` on a thread with a large stack: translated terms are deep.
pub fn with_large_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new()
        .stack_size(1 << 28)
        .spawn(f)
        .expect("spawn worker thread")
        .join()
        .unwrap_or_else(|e| std::panic::resume_unwind(e))
}

pub fn run(kind: SuiteKind, cfg: &SuiteConfig) -> Report {
    let start = Instant::now();
    let rows = match kind {
        SuiteKind::Equations => equation_rows(cfg, &|i| decide(i, false)),
        SuiteKind::Termified => equation_rows(cfg, &|i| decide(i, true)),
        SuiteKind::Inject => inject_rows(cfg),
        SuiteKind::Canon => canon_rows(cfg),
        SuiteKind::Param => param_rows(cfg),
    };
    Report {
        suite: kind,
        rows,
        elapsed: start.elapsed(),
    }
}

// ---- equations ----------------------------------------------------------

fn decide(inst: &EqInstance, termified: bool) -> Result<bool, String> {
    let r = if termified {
        inst.check_termified()
    } else {
        inst.check()
    };
    r.map_err(|e| e.to_string())
}

/// One row per schema: `count` instances judged by `oracle`. The first
/// failure of a row is shrunk and reported in the row's detail.
pub fn equation_rows(cfg: &SuiteConfig, oracle: &dyn Fn(&EqInstance) -> Result<bool, String>) -> Vec<Row> {
    Schema::ALL
        .iter()
        .enumerate()
        .map(|(k, &schema)| {
            let mut gen = cfg.gen(k as u64);
            let mut passed = 0;
            let mut detail = None;
            for _ in 0..cfg.count {
                let inst = match eq_instance(&mut gen, schema) {
                    Ok(i) => i,
                    Err(e) => {
                        detail = Some(format!("no instance: {e}"));
                        break;
                    }
                };
                match oracle(&inst) {
                    Ok(true) => passed += 1,
                    verdict => {
                        let fails = |i: &EqInstance| !matches!(oracle(i), Ok(true));
                        let small = shrink(&cfg.gen_config(k as u64), schema, &fails, 8)
                            .filter(|s| s.size() < inst.size())
                            .unwrap_or(inst);
                        let why = match verdict {
                            Ok(_) => "sides not convertible".to_string(),
                            Err(e) => e,
                        };
                        detail = Some(format!("{why}\nshrunk counterexample:\n{small}"));
                        break;
                    }
                }
            }
            Row {
                name: schema.name().to_string(),
                passed,
                total: cfg.count,
                detail,
            }
        })
        .collect()
}

// ---- injectivity --------------------------------------------------------

fn inject_rows(cfg: &SuiteConfig) -> Vec<Row> {
    let mut rows = Vec::new();

    let mut gen = cfg.gen(0);
    rows.push(count_row("ctx-iso", cfg.count, |_| {
        let ctx = gen.gen_ctx().map_err(|e| e.to_string())?;
        build_ctx_iso(&ctx).map(|_| ()).map_err(|e| e.to_string())
    }));

    for (k, name) in ["embed-ty", "embed-sub", "embed-tm"].into_iter().enumerate() {
        let mut gen = cfg.gen(1 + k as u64);
        rows.push(count_row(name, cfg.count, |_| {
            let ctx = gen.gen_ctx().map_err(|e| e.to_string())?;
            let x = match k {
                0 => Embedded::Ty(gen.gen_ty(&ctx).map_err(|e| e.to_string())?.0),
                1 => Embedded::Sub(gen.gen_sub(&ctx).map_err(|e| e.to_string())?.0),
                _ => Embedded::Tm(gen.gen_tm_any(&ctx).map_err(|e| e.to_string())?.0),
            };
            match check_embedding(&ctx, &x).map_err(|e| e.to_string())? {
                Verdict::Accept => Ok(()),
                reject => Err(format!("in {ctx}: {reject}")),
            }
        }));
    }

    let ops = operator_instances();
    let mut passed = 0;
    let mut detail = None;
    for (name, inst) in &ops {
        match check_instance(inst) {
            Ok(Verdict::Accept) => passed += 1,
            other => {
                detail.get_or_insert_with(|| format!("{name}: {other:?}"));
            }
        }
    }
    rows.push(Row {
        name: "operators".into(),
        passed,
        total: ops.len(),
        detail,
    });

    let mut gen = cfg.gen(4);
    let (mut confirmed, mut distinct) = (0, 0);
    let mut row = count_row("probe", cfg.count, |i| {
        let pair = probe_pair(&mut gen, i).map_err(|e| e.to_string())?;
        match injectivity_probe(&pair).map_err(|e| e.to_string())? {
            ProbeOutcome::Confirmed => confirmed += 1,
            ProbeOutcome::DistinctImages => distinct += 1,
            ProbeOutcome::Counterexample(c) => return Err(format!("counterexample: {c}")),
        }
        Ok(())
    });
    if row.ok() {
        row.detail = Some(format!("{confirmed} equal images, {distinct} distinct"));
    }
    rows.push(row);
    rows
}

/// Pairs of entities of one sort; half of them are convertible by
/// construction so that equal images actually occur.
fn probe_pair(gen: &mut Gen, i: usize) -> Result<ProbePair, GenError> {
    let ctx = gen.gen_ctx()?;
    let related = i.is_multiple_of(2);
    Ok(match (i / 2) % 4 {
        0 => {
            let other = if related {
                Ctx(ctx.entries().iter().map(|a| (**a).clone().sub(Sub::Id).into()).collect())
            } else {
                gen.gen_ctx()?
            };
            ProbePair::Ctx(ctx, other)
        }
        1 => {
            let (a, level) = gen.gen_ty(&ctx)?;
            let b = if related {
                conv::normalize_ty(&ctx, &a)?
            } else {
                let mut b = gen.gen_ty(&ctx)?;
                while b.1 != level {
                    b = gen.gen_ty(&ctx)?;
                }
                b.0
            };
            ProbePair::Ty(ctx, a, b)
        }
        2 => {
            let (s, cod) = gen.gen_sub(&ctx)?;
            let r = if related {
                Sub::comp(Sub::Id, s.clone())
            } else {
                gen.gen_sub_to(&ctx, &cod)?
            };
            ProbePair::Sub(ctx, cod, s, r)
        }
        _ => {
            let (u, a) = gen.gen_tm_any(&ctx)?;
            let v = if related {
                conv::normalize(&ctx, &u)?
            } else {
                gen.gen_tm(&ctx, &a)?
            };
            ProbePair::Tm(ctx, a, u, v)
        }
    })
}

/// Runs `check` `total` times, stopping at the first failure.
fn count_row(name: &str, total: usize, mut check: impl FnMut(usize) -> Result<(), String>) -> Row {
    let mut passed = 0;
    let mut detail = None;
    for i in 0..total {
        match check(i) {
            Ok(()) => passed += 1,
            Err(e) => {
                detail = Some(e);
                break;
            }
        }
    }
    Row {
        name: name.to_string(),
        passed,
        total,
        detail,
    }
}

// ---- canonicity ---------------------------------------------------------

/// Closed booleans that exercise each eliminator, always included.
pub fn canon_corpus() -> Vec<Tm> {
    let motive = Ty::Bool.sub(Sub::P);
    let not = Tm::lam(Ty::Bool, Tm::ite(motive.clone().sub(Sub::P), Tm::False, Tm::True, Tm::Q));
    let pair = Tm::pair(Ty::Bool, motive.clone(), Tm::True, Tm::False);
    vec![
        Tm::True,
        Tm::False,
        Tm::ite(motive.clone(), Tm::False, Tm::True, Tm::True),
        Tm::ite(motive.clone(), Tm::False, Tm::True, Tm::False),
        Tm::apply1(not.clone(), Ty::Bool, Tm::True),
        Tm::apply1(Tm::lam(Ty::Bool, Tm::Q), Ty::Bool, Tm::False),
        Tm::fst(pair.clone()),
        Tm::snd(pair),
        Tm::j(Ty::Bool.sub(Sub::wk(2)), Tm::True, Tm::refl(Tm::False)),
        Tm::j(
            Ty::Bool.sub(Sub::wk(2)),
            Tm::apply1(not, Ty::Bool, Tm::False),
            Tm::refl(Tm::code(Ty::Bool)),
        ),
        Tm::True.sub(Sub::Eps),
        Tm::Q.sub(Sub::ext(Sub::Eps, Ty::Bool, Tm::False)),
    ]
}

/// Which eliminators a term contains, counting `app (lam _)` as a β-redex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Features {
    pub r#if: bool,
    pub j: bool,
    pub proj: bool,
    pub beta: bool,
}

pub fn features(t: &Tm) -> Features {
    let mut f = Features::default();
    walk_tm(t, &mut f);
    f
}

fn walk_tm(t: &Tm, f: &mut Features) {
    match t {
        Tm::Subst(u, s) => {
            walk_tm(u, f);
            walk_sub(s, f);
        }
        Tm::Q | Tm::Tt | Tm::True | Tm::False => {}
        Tm::Lam(a, b) => {
            walk_ty(a, f);
            walk_tm(b, f);
        }
        Tm::App(g) => {
            f.beta |= matches!(g.as_ref(), Tm::Lam(..));
            walk_tm(g, f);
        }
        Tm::Pair(a, b, u, v) => {
            walk_ty(a, f);
            walk_ty(b, f);
            walk_tm(u, f);
            walk_tm(v, f);
        }
        Tm::Fst(p) | Tm::Snd(p) => {
            f.proj = true;
            walk_tm(p, f);
        }
        Tm::Code(a) => walk_ty(a, f),
        Tm::If(c, u, v, b) => {
            f.r#if = true;
            walk_ty(c, f);
            walk_tm(u, f);
            walk_tm(v, f);
            walk_tm(b, f);
        }
        Tm::Refl(u) => walk_tm(u, f),
        Tm::J(c, w, e) => {
            f.j = true;
            walk_ty(c, f);
            walk_tm(w, f);
            walk_tm(e, f);
        }
    }
}

fn walk_ty(a: &Ty, f: &mut Features) {
    match a {
        Ty::Subst(b, s) => {
            walk_ty(b, f);
            walk_sub(s, f);
        }
        Ty::Pi(a, b) | Ty::Sigma(a, b) => {
            walk_ty(a, f);
            walk_ty(b, f);
        }
        Ty::Top | Ty::U(_) | Ty::Bool => {}
        Ty::El(t) => walk_tm(t, f),
        Ty::Id(a, u, v) => {
            walk_ty(a, f);
            walk_tm(u, f);
            walk_tm(v, f);
        }
    }
}

fn walk_sub(s: &Sub, f: &mut Features) {
    match s {
        Sub::Id | Sub::Eps | Sub::P => {}
        Sub::Comp(a, b) => {
            walk_sub(a, f);
            walk_sub(b, f);
        }
        Sub::Ext(a, ty, t) => {
            walk_sub(a, f);
            walk_ty(ty, f);
            walk_tm(t, f);
        }
    }
}

fn canon_rows(cfg: &SuiteConfig) -> Vec<Row> {
    let mut gen = cfg.gen(0);
    let corpus = canon_corpus();
    let mut seen = [0usize; 4];
    let total = cfg.count.max(corpus.len());
    let mut row = count_row("closed-bool", total, |i| {
        let t = match corpus.get(i) {
            Some(t) => t.clone(),
            None => gen.gen_closed_bool().map_err(|e| e.to_string())?,
        };
        let f = features(&t);
        for (k, hit) in [f.r#if, f.j, f.proj, f.beta].into_iter().enumerate() {
            seen[k] += hit as usize;
        }
        let v = canonicity_verdict(&t).map_err(|e| format!("{t}: {e}"))?;
        if !v.certified {
            return Err(format!("{t}: verdict {} not certified", v.value));
        }
        Ok(())
    });
    if row.ok() {
        row.detail = Some("every verdict certified by conversion".into());
    }
    let mut rows = vec![row];
    for (k, name) in ["with-if", "with-j", "with-fst-snd", "with-beta-redex"].into_iter().enumerate() {
        rows.push(Row {
            name: name.into(),
            passed: seen[k].min(1),
            total: 1,
            detail: Some(format!("{} terms", seen[k])),
        });
    }
    rows
}

// ---- parametricity ------------------------------------------------------

fn param_rows(cfg: &SuiteConfig) -> Vec<Row> {
    let mut cov = Coverage::default();
    let mut rows = Vec::new();
    for (k, name) in ["con", "ty", "sub", "tm"].into_iter().enumerate() {
        let mut gen = cfg.gen(k as u64);
        rows.push(count_row(name, cfg.count, |_| {
            let ctx = gen.gen_ctx().map_err(|e| e.to_string())?;
            cov.record(&ctx);
            let entity: ParamEntity = match k {
                0 => param_ctx(&ctx),
                1 => {
                    let (a, _) = gen.gen_ty(&ctx).map_err(|e| e.to_string())?;
                    cov.record(&a);
                    param_ty(&ctx, &a)
                }
                2 => {
                    let (s, _) = gen.gen_sub(&ctx).map_err(|e| e.to_string())?;
                    cov.record(&s);
                    param_sub(&ctx, &s)
                }
                _ => {
                    let (t, _) = gen.gen_tm_any(&ctx).map_err(|e| e.to_string())?;
                    cov.record(&t);
                    param_tm(&ctx, &t)
                }
            }
            .map_err(|e| format!("in {ctx}: {e}"))?;
            entity.verify().map_err(|e| format!("in {ctx}: {e}"))
        }));
    }
    let missing = cov.missing();
    rows.push(Row {
        name: "operator-coverage".into(),
        passed: Ctor::ALL.len() - missing.len(),
        total: Ctor::ALL.len(),
        detail: (!missing.is_empty()).then(|| format!("never translated: {missing:?}")),
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            seed: 2,
            count: 6,
            max_nodes: 10,
        }
    }

    #[test]
    fn every_suite_passes_small() {
        for kind in SuiteKind::ALL {
            let r = run(kind, &small());
            assert!(r.ok(), "{r}");
        }
    }

    #[test]
    fn failures_are_shrunk() {
        // A faulty oracle: syntactic equality instead of conversion.
        let rows = equation_rows(&SuiteConfig { count: 20, ..small() }, &|i| Ok(i.lhs == i.rhs));
        let row = rows.iter().find(|r| r.name == "pi-beta").unwrap();
        assert!(!row.ok());
        assert!(row.detail.as_ref().unwrap().contains("shrunk counterexample"), "{row:?}");
    }

    #[test]
    fn corpus_has_every_feature() {
        let all = canon_corpus().iter().map(features).fold(Features::default(), |a, b| Features {
            r#if: a.r#if || b.r#if,
            j: a.j || b.j,
            proj: a.proj || b.proj,
            beta: a.beta || b.beta,
        });
        assert_eq!(
            all,
            Features {
                r#if: true,
                j: true,
                proj: true,
                beta: true
            }
        );
    }

    #[test]
    fn report_renders_failures() {
        let r = Report {
            suite: SuiteKind::Equations,
            rows: vec![Row {
                name: "idl".into(),
                passed: 0,
                total: 1,
                detail: Some("why".into()),
            }],
            elapsed: Duration::ZERO,
        };
        assert!(!r.ok());
        assert!(r.to_string().contains("FAIL  idl"));
    }
}
