//! Directive execution and verdict reporting for the `ttk` binary.
//!
//! Every run ends in a [`Status`], which fixes both the process exit code and
//! the final `RESULT:` line.

use std::fmt;
use std::path::Path;

use crate::canon::{canonicity_verdict, CanonError};
use crate::check::{infer_ty, synth_sub, synth_tm, Scope, TypeError, TypeErrorKind};
use crate::conv::{self, Expr};
use crate::inject::{build_ctx_iso, check_embedding, Embedded, InjectError, Verdict};
use crate::param::{param_ctx, param_sub, param_tm, param_ty, ParamEntity, ParamError};
use crate::suite::{self, SuiteConfig, SuiteKind};
use crate::surface::{parse_directive, print_ctx, print_sub, print_tm, print_ty, Directive, ParseError, Subject};
use crate::syntax::{Ctx, Sub};
use crate::termify::{termify_ctx, termify_sub, termify_tm, termify_ty, TermifiedEntity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Accept,
    /// A negative verdict or a failed property.
    Reject,
    /// The input file could not be read or parsed.
    ParseError,
    /// The input parsed but is ill-typed.
    TypeError,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Accept => 0,
            Status::Reject => 1,
            Status::ParseError => 2,
            Status::TypeError => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Accept => "accept",
            Status::Reject => "reject",
            Status::ParseError => "error parse",
            Status::TypeError => "error type",
        })
    }
}

/// The report of one command: human-readable lines, then the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub status: Status,
}

impl Outcome {
    fn new(status: Status, lines: Vec<String>) -> Outcome {
        Outcome { lines, status }
    }

    fn verdict(ok: bool, lines: Vec<String>) -> Outcome {
        Outcome::new(if ok { Status::Accept } else { Status::Reject }, lines)
    }

    fn type_error(e: &TypeError) -> Outcome {
        Outcome::new(Status::TypeError, vec![format!("type error: {e}")])
    }

    fn parse_error(e: &ParseError) -> Outcome {
        Outcome::new(Status::ParseError, vec![format!("parse error: {e}")])
    }

    pub fn result_line(&self) -> String {
        format!("RESULT: {}", self.status)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        write!(f, "{}", self.result_line())
    }
}

pub fn run_file(path: &Path) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(src) => run_source(&src),
        Err(e) => Outcome::new(
            Status::ParseError,
            vec![format!("cannot read {}: {e}", path.display())],
        ),
    }
}

pub fn run_source(src: &str) -> Outcome {
    match parse_directive(src) {
        Ok(d) => run_directive(&d),
        Err(e) => Outcome::parse_error(&e),
    }
}

/// Lifts a fallible step into an [`Outcome`]: errors end the run.
macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Outcome::type_error(&e),
        }
    };
}

pub fn run_directive(d: &Directive) -> Outcome {
    match d {
        Directive::CheckTm(ctx, t) => {
            let scope = tri!(Scope::new(ctx));
            let a = tri!(synth_tm(&scope, t));
            let nf = tri!(conv::normalize_ty_in(&scope, &a));
            Outcome::verdict(true, vec![format!("type: {}", print_ty(&nf))])
        }
        Directive::CheckTy(ctx, a) => {
            let scope = tri!(Scope::new(ctx));
            let level = tri!(infer_ty(&scope, a));
            Outcome::verdict(true, vec![format!("level: {level}")])
        }
        Directive::Nf(ctx, t) => {
            let scope = tri!(Scope::new(ctx));
            let a = tri!(synth_tm(&scope, t));
            let a = tri!(conv::normalize_ty_in(&scope, &a));
            let nf = tri!(conv::normalize_in(&scope, t));
            Outcome::verdict(
                true,
                vec![format!("type: {}", print_ty(&a)), format!("nf: {}", print_tm(&nf))],
            )
        }
        Directive::ConvTm(ctx, a, l, r) => {
            let scope = tri!(Scope::new(ctx));
            tri!(infer_ty(&scope, a));
            let want = tri!(scope.eval_ty(a));
            tri!(crate::check::check_tm(&scope, l, &want).map_err(|e| e.at("conv-tm.lhs")));
            tri!(crate::check::check_tm(&scope, r, &want).map_err(|e| e.at("conv-tm.rhs")));
            let lhs = tri!(conv::normalize_in(&scope, l));
            let rhs = tri!(conv::normalize_in(&scope, r));
            let ok = tri!(conv::conv_tm_in(&scope, a, l, r));
            Outcome::verdict(ok, sides(print_tm(&lhs), print_tm(&rhs), ok))
        }
        Directive::ConvTy(ctx, l, r) => {
            let scope = tri!(Scope::new(ctx));
            let ll = tri!(infer_ty(&scope, l));
            let lr = tri!(infer_ty(&scope, r));
            let lhs = tri!(conv::normalize_ty_in(&scope, l));
            let rhs = tri!(conv::normalize_ty_in(&scope, r));
            let ok = ll == lr && tri!(conv::conv_ty_in(&scope, l, r));
            let mut lines = sides(print_ty(&lhs), print_ty(&rhs), ok);
            if ll != lr {
                lines.push(format!("levels differ: {ll} vs {lr}"));
            }
            Outcome::verdict(ok, lines)
        }
        Directive::ConvSub(ctx, cod, l, r) => {
            let scope = tri!(Scope::new(ctx));
            let want = tri!(Scope::new(cod));
            for (side, s) in [("conv-sub.lhs", l), ("conv-sub.rhs", r)] {
                let got = tri!(synth_sub(&scope, s).map_err(|e| e.at(side)));
                if !tri!(crate::check::ctx_conv(&got, &want)) {
                    return Outcome::type_error(
                        &TypeError::new(TypeErrorKind::CtxMismatch {
                            expected: cod.clone(),
                            found: got.ctx().clone(),
                        })
                        .at(side),
                    );
                }
            }
            let show = |s: &Sub| -> Result<String, TypeError> {
                let ts = conv::normalize_sub_in(&scope, s)?;
                Ok(ts.iter().map(print_tm).collect::<Vec<_>>().join(" "))
            };
            let lhs = tri!(show(l));
            let rhs = tri!(show(r));
            let ok = tri!(conv::conv_sub_in(&scope, cod, l, r));
            Outcome::verdict(ok, sides(format!("[{lhs}]"), format!("[{rhs}]"), ok))
        }
        Directive::Termify(s) => termify(s),
        Directive::Param(s) => param(s),
        Directive::Canon(t) => match canonicity_verdict(t) {
            Ok(v) => Outcome::verdict(
                v.certified,
                vec![
                    format!("value: {}", print_tm(&v.literal())),
                    format!("certified: {}", v.certified),
                ],
            ),
            Err(CanonError::Type(e)) => Outcome::type_error(&e),
            Err(e) => Outcome::verdict(false, vec![e.to_string()]),
        },
        Directive::Inject(s) => inject(s),
    }
}

fn sides(lhs: String, rhs: String, ok: bool) -> Vec<String> {
    vec![
        format!("lhs nf: {lhs}"),
        format!("rhs nf: {rhs}"),
        format!("convertible: {ok}"),
    ]
}

fn termify(s: &Subject) -> Outcome {
    let e: TermifiedEntity = tri!(match s {
        Subject::Ctx(c) => termify_ctx(c),
        Subject::Ty(c, a) => termify_ty(c, a),
        Subject::Sub(c, x) => termify_sub(c, x),
        Subject::Tm(c, t) => termify_tm(c, t),
    });
    let mut lines = vec![
        format!("sort: {:?}", e.sort),
        format!("term: {}", print_tm(&e.payload)),
        format!("type: {}", print_ty(&e.classifier)),
    ];
    let ok = match e.verify() {
        Ok(()) => true,
        Err(err) => {
            lines.push(format!("translation ill-typed: {err}"));
            false
        }
    };
    Outcome::verdict(ok, lines)
}

fn param(s: &Subject) -> Outcome {
    let r: Result<ParamEntity, ParamError> = match s {
        Subject::Ctx(c) => param_ctx(c),
        Subject::Ty(c, a) => param_ty(c, a),
        Subject::Sub(c, x) => param_sub(c, x),
        Subject::Tm(c, t) => param_tm(c, t),
    };
    let e = match r {
        Ok(e) => e,
        Err(ParamError::Input(e)) => return Outcome::type_error(&e),
        Err(e) => return Outcome::verdict(false, vec![e.to_string()]),
    };
    let mut lines = vec![format!("sort: {:?}", e.sort), format!("in: {}", print_ctx(&e.ctx))];
    match (&e.payload, &e.classifier) {
        (Expr::Ty(t), crate::param::ParamClass::Ty(l)) => {
            lines.push(format!("type: {}", print_ty(t)));
            lines.push(format!("level: {l}"));
        }
        (Expr::Tm(t), crate::param::ParamClass::Tm(a)) => {
            lines.push(format!("term: {}", print_tm(t)));
            lines.push(format!("at: {}", print_ty(a)));
        }
        _ => unreachable!("payload and classifier sorts agree by construction"),
    }
    let ok = match e.verify() {
        Ok(()) => true,
        Err(err) => {
            lines.push(err.to_string());
            false
        }
    };
    Outcome::verdict(ok, lines)
}

fn inject(s: &Subject) -> Outcome {
    let lift = |e: InjectError| match e {
        InjectError::Type(e) => Outcome::type_error(&e),
        other => Outcome::verdict(false, vec![other.to_string()]),
    };
    let (ctx, x): (&Ctx, Embedded) = match s {
        Subject::Ctx(c) => {
            return match build_ctx_iso(c) {
                Ok(iso) => Outcome::verdict(
                    iso.fwd_bwd_ok && iso.bwd_fwd_ok,
                    vec![
                        format!("to code: {}", print_sub(&iso.fwd)),
                        format!("from code: {}", print_sub(&iso.bwd)),
                        format!("round trips: {} {}", iso.fwd_bwd_ok, iso.bwd_fwd_ok),
                    ],
                ),
                Err(e) => lift(e),
            }
        }
        Subject::Ty(c, a) => (c, Embedded::Ty(a.clone())),
        Subject::Sub(c, x) => (c, Embedded::Sub(x.clone())),
        Subject::Tm(c, t) => (c, Embedded::Tm(t.clone())),
    };
    match check_embedding(ctx, &x) {
        Ok(v @ Verdict::Accept) => Outcome::verdict(true, vec![format!("round trip: {v}")]),
        Ok(v) => Outcome::verdict(false, vec![format!("round trip: {v}")]),
        Err(e) => lift(e),
    }
}

/// Which suites `selftest` runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteSel {
    One(SuiteKind),
    All,
}

impl SuiteSel {
    pub fn kinds(self) -> Vec<SuiteKind> {
        match self {
            SuiteSel::One(k) => vec![k],
            SuiteSel::All => SuiteKind::ALL.to_vec(),
        }
    }
}

impl std::str::FromStr for SuiteSel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(SuiteSel::All);
        }
        SuiteKind::from_name(s)
            .map(SuiteSel::One)
            .ok_or_else(|| format!("unknown suite {s:?}; expected equations, termified, inject, canon, param or all"))
    }
}

/// Runs the selected suites, one pass table each.
pub fn selftest(sel: SuiteSel, cfg: SuiteConfig) -> Outcome {
    let mut lines = vec![format!(
        "selftest seed={} count={} max-nodes={}",
        cfg.seed, cfg.count, cfg.max_nodes
    )];
    let mut ok = true;
    for kind in sel.kinds() {
        let report = suite::with_large_stack(move || suite::run(kind, &cfg));
        ok &= report.ok();
        lines.extend(report.to_string().lines().map(str::to_string));
    }
    Outcome::verdict(ok, lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> Outcome {
        run_source(src)
    }

    #[test]
    fn idfun_synthesizes_its_type() {
        let o = run("(check-tm (ctx) (lam (u 0) (lam (el (q)) (q))))");
        assert_eq!(o.status, Status::Accept, "{o}");
        assert_eq!(
            o.lines[0],
            "type: (pi (u 0) (pi (el (q)) (el (v 1))))",
            "{o}"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run("(check-tm (ctx) (q)").status.exit_code(), 2);
        assert_eq!(run("(frobnicate)").status.exit_code(), 2);
        assert_eq!(run("(check-tm (ctx) (q))").status.exit_code(), 3);
        assert_eq!(run("(canon (true))").status.exit_code(), 0);
        assert_eq!(
            run("(conv-tm (ctx) (bool) (true) (false))").status.exit_code(),
            1
        );
    }

    #[test]
    fn conv_sub_checks_codomains() {
        let o = run("(conv-sub (ctx (bool)) (ctx) (p) (eps))");
        assert_eq!(o.status, Status::Accept, "{o}");
        let o = run("(conv-sub (ctx (bool)) (ctx (bool)) (p) (eps))");
        assert_eq!(o.status, Status::TypeError, "{o}");
    }

    #[test]
    fn translations_accept() {
        for src in [
            "(termify (ctx (bool)) (v 0))",
            "(param (ctx (u 0)) (el (q)))",
            "(param (ctx) (lam (bool) (q)))",
            "(inject (ctx (bool) (top)))",
            "(inject (ctx (bool)) (if (bool) (false) (true) (q)))",
        ] {
            let o = run(src);
            assert_eq!(o.status, Status::Accept, "{src}\n{o}");
        }
    }

    #[test]
    fn result_is_last_line() {
        let o = run("(nf (ctx) (dollar (lam (bool) (q)) (bool) (true)))");
        let text = o.to_string();
        assert_eq!(text.lines().last(), Some("RESULT: accept"));
        assert!(text.contains("nf: (true)"), "{text}");
    }
}
