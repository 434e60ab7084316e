//! Acceptance run: one `pass`/`FAIL` line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the table is always
//! printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ttk::canon::canonicity_verdict;
use ttk::check::{check_tm, synth_tm, Scope};
use ttk::conv::{conv_tm, normalize};
use ttk::gen::{Gen, GenConfig};
use ttk::suite::{self, equation_rows, Report, Row, SuiteConfig, SuiteKind};
use ttk::surface::{parse_tm, print_ty};
use ttk::syntax::{Ctx, Level, Sub, Tm, Ty};

struct Sheet {
    lines: Vec<(bool, String, String)>,
}

impl Sheet {
    fn record(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        println!("{}  {name}  {detail}", if ok { "pass" } else { "FAIL" });
        self.lines.push((ok, name.to_string(), detail));
    }

    fn failed(&self) -> usize {
        self.lines.iter().filter(|l| !l.0).count()
    }
}

fn rows_summary(rows: &[&Row]) -> String {
    let min = rows.iter().map(|r| r.passed).min().unwrap_or(0);
    let bad: Vec<_> = rows.iter().filter(|r| !r.ok()).map(|r| r.name.as_str()).collect();
    if bad.is_empty() {
        format!("{} rows, each >= {min} passing", rows.len())
    } else {
        format!("failing rows: {}", bad.join(", "))
    }
}

/// Every listed row passes with at least `min` instances.
fn rows_ok(report: &Report, names: &[&str], min: usize) -> (bool, String) {
    let rows: Vec<&Row> = names.iter().filter_map(|n| report.row(n)).collect();
    let ok = rows.len() == names.len() && rows.iter().all(|r| r.ok() && r.passed >= min);
    (ok, rows_summary(&rows))
}

fn timed(kind: SuiteKind, cfg: SuiteConfig) -> Report {
    let report = suite::with_large_stack(move || suite::run(kind, &cfg));
    if !report.ok() {
        print!("{report}");
    }
    report
}

fn cfg(count: usize) -> SuiteConfig {
    SuiteConfig {
        seed: 1,
        count,
        ..SuiteConfig::default()
    }
}

fn equations(sheet: &mut Sheet) {
    let r = timed(SuiteKind::Equations, cfg(100));
    let all: Vec<&Row> = r.rows.iter().collect();
    let ok = r.ok() && r.rows.len() == 38 && all.iter().all(|x| x.passed >= 100);
    sheet.record("equations: >=100 instances of each of 38 schemas hold", ok, rows_summary(&all));
    sheet.record(
        "equations: suite finishes within 120s",
        r.elapsed < Duration::from_secs(120),
        format!("{:.1?}", r.elapsed),
    );

    // Fault injection: syntactic equality in place of conversion must be
    // caught and reported with a shrunk counterexample.
    let faulty = suite::with_large_stack(|| {
        equation_rows(&SuiteConfig { count: 20, ..cfg(20) }, &|i| Ok(i.lhs == i.rhs))
    });
    let shrunk = faulty
        .iter()
        .filter(|r| !r.ok())
        .filter(|r| r.detail.as_deref().is_some_and(|d| d.contains("shrunk counterexample")))
        .count();
    let failing = faulty.iter().filter(|r| !r.ok()).count();
    sheet.record(
        "equations: failures are reported with a shrunk counterexample",
        failing > 0 && shrunk == failing,
        format!("{failing} rows caught a faulty oracle, {shrunk} with counterexample"),
    );
}

fn termified(sheet: &mut Sheet) {
    let r = timed(SuiteKind::Termified, cfg(50));
    let all: Vec<&Row> = r.rows.iter().collect();
    let ok = r.ok() && r.rows.len() == 38 && all.iter().all(|x| x.passed >= 50);
    sheet.record("termified: >=50 instances of each schema hold after translation", ok, rows_summary(&all));
    sheet.record(
        "termified: suite finishes within 180s",
        r.elapsed < Duration::from_secs(180),
        format!("{:.1?}", r.elapsed),
    );
}

fn inject(sheet: &mut Sheet) {
    let r = timed(SuiteKind::Inject, cfg(100));
    let (ok, d) = rows_ok(&r, &["ctx-iso"], 100);
    sheet.record("inject: context isomorphisms verified for >=100 contexts", ok, d);
    let (ok, d) = rows_ok(&r, &["embed-ty", "embed-sub", "embed-tm"], 100);
    sheet.record("inject: >=100 types, substitutions and terms round-trip", ok, d);
    let (ok, d) = rows_ok(&r, &["operators"], 29);
    sheet.record("inject: every per-operator instance accepts", ok, d);
    let (ok, d) = rows_ok(&r, &["probe"], 100);
    let d = r.row("probe").and_then(|p| p.detail.clone()).unwrap_or(d);
    sheet.record("inject: no injectivity counterexample over >=100 pairs", ok, d);
}

fn canon(sheet: &mut Sheet) {
    let r = timed(SuiteKind::Canon, cfg(100));
    let (ok, d) = rows_ok(&r, &["closed-bool"], 100);
    sheet.record("canon: >=100 closed booleans get certified verdicts", ok, d);
    let feats = ["with-if", "with-j", "with-fst-snd", "with-beta-redex"];
    let (ok, _) = rows_ok(&r, &feats, 1);
    let d = feats
        .iter()
        .filter_map(|n| r.row(n).map(|x| format!("{n}: {}", x.detail.clone().unwrap_or_default())))
        .collect::<Vec<_>>()
        .join(", ");
    sheet.record("canon: inputs include if, J, projections and beta-redexes", ok, d);
}

fn param(sheet: &mut Sheet) {
    let r = timed(SuiteKind::Param, cfg(100));
    let (ok, d) = rows_ok(&r, &["con", "ty", "sub", "tm"], 100);
    sheet.record("param: translations typecheck for >=100 entities per sort", ok, d);
    let (ok, d) = rows_ok(&r, &["operator-coverage"], 29);
    sheet.record("param: no operator lacks a translation clause", ok, d);
}

fn f_and_g() -> (Tm, Tm) {
    (
        Tm::lam(Ty::Bool, Tm::ite(Ty::Bool, Tm::True, Tm::False, Tm::Q)),
        Tm::lam(Ty::Bool, Tm::Q),
    )
}

fn witnesses(sheet: &mut Sheet) {
    let idfun = parse_tm("(lam (u 0) (lam (el (q)) (q)))").unwrap();
    let want = Ty::pi(Ty::U(Level(0)), Ty::pi(Ty::el(Tm::Q), Ty::el(Tm::var(1))));
    let got = synth_tm(&Scope::empty(), &idfun)
        .and_then(|a| ttk::conv::normalize_ty(&Ctx::empty(), &a));
    sheet.record(
        "witness: idfun synthesizes pi (u 0) (pi (el v0) (el v1))",
        got.as_ref() == Ok(&want),
        match &got {
            Ok(a) => print_ty(a),
            Err(e) => e.to_string(),
        },
    );

    let (f, g) = f_and_g();
    let fg = conv_tm(&Ctx::empty(), &Ty::arrow(Ty::Bool, Ty::Bool), &f, &g);
    sheet.record("witness: f and g are not convertible", fg == Ok(false), format!("{fg:?}"));

    let mut agree = true;
    let mut d = Vec::new();
    for b in [Tm::True, Tm::False] {
        let vf = canonicity_verdict(&Tm::apply1(f.clone(), Ty::Bool, b.clone()));
        let vg = canonicity_verdict(&Tm::apply1(g.clone(), Ty::Bool, b.clone()));
        match (vf, vg) {
            (Ok(x), Ok(y)) => {
                agree &= x == y && x.certified;
                d.push(format!("{b}: {} / {}", x.value, y.value));
            }
            (x, y) => {
                agree = false;
                d.push(format!("{b}: {x:?} / {y:?}"));
            }
        }
    }
    sheet.record("witness: f b and g b get equal canonicity verdicts", agree, d.join(", "));
}

fn hygiene(sheet: &mut Sheet) {
    let (idem, typed, equiv) = suite::with_large_stack(|| {
        let mut gen = Gen::new(GenConfig {
            seed: 11,
            ..GenConfig::default()
        });
        let (mut idem, mut typed, mut equiv) = (0, 0, 0);
        for _ in 0..100 {
            let ctx = gen.gen_ctx().unwrap();
            let (t, a) = gen.gen_tm_any(&ctx).unwrap();
            let u = gen.gen_tm(&ctx, &a).unwrap();
            let scope = Scope::new(&ctx).unwrap();
            let n = normalize(&ctx, &t).unwrap();
            idem += (normalize(&ctx, &n).unwrap() == n) as usize;
            let want = scope.eval_ty(&a).unwrap();
            typed += check_tm(&scope, &n, &want).is_ok() as usize;
            let c = |x: &Tm, y: &Tm| conv_tm(&ctx, &a, x, y).unwrap();
            let t_id = t.clone().sub(Sub::Id);
            equiv += (c(&t, &t)
                && c(&t, &u) == c(&u, &t)
                && c(&t, &n)
                && c(&n, &t_id)
                && c(&t, &t_id)
                && conv_tm(&ctx, &Ty::id(a.clone(), t.clone(), t.clone()), &Tm::refl(t.clone()), &Tm::refl(n.clone()))
                    .unwrap()
                && conv_tm(
                    &ctx.push(Ty::Top),
                    &a.clone().sub(Sub::P),
                    &t.clone().sub(Sub::P),
                    &n.clone().sub(Sub::P),
                )
                .unwrap()) as usize;
        }
        (idem, typed, equiv)
    });
    sheet.record("hygiene: normalization is idempotent", idem == 100, format!("{idem}/100"));
    sheet.record("hygiene: readback is well-typed", typed == 100, format!("{typed}/100"));
    sheet.record(
        "hygiene: conversion is an equivalence and a congruence",
        equiv == 100,
        format!("{equiv}/100"),
    );

    let top = conv_tm(&Ctx::empty().push(Ty::Top), &Ty::Top, &Tm::Q, &Tm::Tt);
    sheet.record("hygiene: unit eta", top == Ok(true), format!("{top:?}"));
    let fun = Ty::arrow(Ty::Bool, Ty::Bool);
    let pi = conv_tm(&Ctx::empty().push(fun.clone()), &fun, &Tm::Q, &Tm::lam(Ty::Bool, Tm::app(Tm::Q)));
    sheet.record("hygiene: function eta", pi == Ok(true), format!("{pi:?}"));
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut sheet = Sheet { lines: Vec::new() };
    witnesses(&mut sheet);
    hygiene(&mut sheet);
    equations(&mut sheet);
    termified(&mut sheet);
    inject(&mut sheet);
    canon(&mut sheet);
    param(&mut sheet);
    let failed = sheet.failed();
    println!(
        "acceptance: {} criteria, {} failed ({:.1?})",
        sheet.lines.len(),
        failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
