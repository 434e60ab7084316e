//! Injectivity of termification, checked by conversion.
//!
//! Every context `Γ` is isomorphic to `• ▷ El ⟦Γ⟧` via substitutions
//! `Γ₁ : Sub Γ (• ▷ Γ̲)` and `Γ₂ : Sub (• ▷ Γ̲) Γ`; with these, every type,
//! substitution and term is recovered from its translation:
//!
//! ```text
//! A = El (app ⟦A⟧)[Γ₁]
//! σ = Δ₂ ∘ (ε, app ⟦σ⟧) ∘ Γ₁
//! t = (app ⟦t⟧)[Γ₁]
//! ```
//!
//! so two entities with convertible translations are themselves convertible
//! (for contexts: isomorphic).

use std::fmt;

use thiserror::Error;

use crate::check::{synth_sub, synth_tm, TypeError};
use crate::conv;
use crate::syntax::{Ctx, Sub, Tm, Ty};
use crate::termify::{el_app, TCtx};

/// Which composite of a context isomorphism failed to be the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composite {
    /// `Γ₁ ∘ Γ₂ = id` on `• ▷ Γ̲`.
    FwdBwd,
    /// `Γ₂ ∘ Γ₁ = id` on `Γ`.
    BwdFwd,
}

#[derive(Debug, Error)]
pub enum InjectError {
    #[error("type error: {0}")]
    Type(#[from] TypeError),
    #[error("isomorphism for {ctx} fails at {which:?}")]
    IsoFailure { ctx: Ctx, which: Composite },
}

type Result<T> = std::result::Result<T, InjectError>;

/// `Γ ≃ • ▷ El ⟦Γ⟧`: the two substitutions plus the verified equations.
#[derive(Clone, Debug)]
pub struct CtxIso {
    pub ctx: Ctx,
    pub fwd: Sub,
    pub bwd: Sub,
    pub fwd_bwd_ok: bool,
    pub bwd_fwd_ok: bool,
}

/// Raw `(Γ₁, Γ₂)` for `t`, following the telescope.
fn iso_parts(t: &TCtx) -> (Sub, Sub) {
    match t.split() {
        Err(_) => (t.point(Tm::Tt), Sub::Eps),
        Ok((init, a_tau)) => {
            let (g1, g2) = iso_parts(init);
            let a = t.ctx().last().expect("nonempty").clone();
            // (ε, (v⁰[Γ₁ ∘ p], v⁰))
            let fst = Tm::Q.sub(Sub::comp(g1, Sub::P));
            let fwd = t.point(init.pair_of(a_tau, fst, Tm::Q));
            // (Γ₂ ∘ (ε, fst v⁰), snd v⁰)
            let bwd = Sub::ext(
                Sub::comp(g2, init.point(Tm::fst(Tm::Q))),
                a,
                Tm::snd(Tm::Q),
            );
            (fwd, bwd)
        }
    }
}

/// Builds and verifies the isomorphism for a context.
pub fn build_ctx_iso(ctx: &Ctx) -> Result<CtxIso> {
    let t = TCtx::new(ctx)?;
    build_ctx_iso_in(&t)
}

pub fn build_ctx_iso_in(t: &TCtx) -> Result<CtxIso> {
    let (fwd, bwd) = iso_parts(t);
    let ctx = t.ctx().clone();
    let small = Ctx::empty().push(t.under());
    let fwd_bwd_ok = conv::conv_sub(&small, &small, &Sub::comp(fwd.clone(), bwd.clone()), &Sub::Id)?;
    if !fwd_bwd_ok {
        return Err(InjectError::IsoFailure {
            ctx,
            which: Composite::FwdBwd,
        });
    }
    let bwd_fwd_ok = conv::conv_sub(&ctx, &ctx, &Sub::comp(bwd.clone(), fwd.clone()), &Sub::Id)?;
    if !bwd_fwd_ok {
        return Err(InjectError::IsoFailure {
            ctx,
            which: Composite::BwdFwd,
        });
    }
    Ok(CtxIso {
        ctx,
        fwd,
        bwd,
        fwd_bwd_ok,
        bwd_fwd_ok,
    })
}

/// An entity to recover from its translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedded {
    Ty(Ty),
    Sub(Sub),
    Tm(Tm),
}

/// Outcome of an embedding check; a rejection carries both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject { original: String, recovered: String },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => write!(f, "accept"),
            Verdict::Reject {
                original,
                recovered,
            } => write!(f, "reject: {original} is not {recovered}"),
        }
    }
}

/// The entity rebuilt from its translation, as a kernel expression in the
/// original context.
pub fn recover(t: &TCtx, x: &Embedded) -> Result<Embedded> {
    let (g1, _) = iso_parts(t);
    Ok(match x {
        Embedded::Ty(a) => Embedded::Ty(el_app(&t.ty(a)?).sub(g1)),
        Embedded::Tm(u) => Embedded::Tm(Tm::app(t.tm(u)?).sub(g1)),
        Embedded::Sub(s) => {
            let (s_tau, cod) = t.sub(s)?;
            let (_, d2) = iso_parts(&cod);
            Embedded::Sub(Sub::comp(d2, Sub::comp(cod.point(Tm::app(s_tau)), g1)))
        }
    })
}

/// Checks that `x` is convertible with the entity recovered from `⟦x⟧`.
pub fn check_embedding(ctx: &Ctx, x: &Embedded) -> Result<Verdict> {
    let t = TCtx::new(ctx)?;
    check_embedding_in(&t, x)
}

pub fn check_embedding_in(t: &TCtx, x: &Embedded) -> Result<Verdict> {
    let scope = t.scope();
    let back = recover(t, x)?;
    let ok = match (x, &back) {
        (Embedded::Ty(a), Embedded::Ty(b)) => conv::conv_ty_in(scope, a, b)?,
        (Embedded::Tm(u), Embedded::Tm(v)) => {
            let a = synth_tm(scope, u)?;
            conv::conv_tm_in(scope, &a, u, v)?
        }
        (Embedded::Sub(s), Embedded::Sub(d)) => {
            let cod = synth_sub(scope, s)?;
            conv::conv_sub_in(scope, cod.ctx(), s, d)?
        }
        _ => unreachable!("recover preserves the sort"),
    };
    Ok(if ok {
        Verdict::Accept
    } else {
        let (original, recovered) = match (x, &back) {
            (Embedded::Ty(a), Embedded::Ty(b)) => (
                conv::normalize_ty_in(scope, a)?.to_string(),
                conv::normalize_ty_in(scope, b)?.to_string(),
            ),
            (Embedded::Tm(u), Embedded::Tm(v)) => (
                conv::normalize_in(scope, u)?.to_string(),
                conv::normalize_in(scope, v)?.to_string(),
            ),
            (Embedded::Sub(s), Embedded::Sub(d)) => (s.to_string(), d.to_string()),
            _ => unreachable!(),
        };
        Verdict::Reject {
            original,
            recovered,
        }
    })
}

/// A pair of entities of the same sort, to be compared through their
/// translations.
#[derive(Clone, Debug)]
pub enum ProbePair {
    Ctx(Ctx, Ctx),
    /// Two types of the same context at the same level.
    Ty(Ctx, Ty, Ty),
    /// Two substitutions with the given codomain.
    Sub(Ctx, Ctx, Sub, Sub),
    /// Two terms at the given type.
    Tm(Ctx, Ty, Tm, Tm),
}

/// Outcome of probing one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// The translations differ.
    DistinctImages,
    /// The translations agree and so do the originals.
    Confirmed,
    /// The translations agree but the originals do not.
    Counterexample(String),
}

/// If the translations of `x` and `y` are convertible, so must `x` and `y`
/// be (isomorphic, for contexts).
pub fn injectivity_probe(pair: &ProbePair) -> Result<ProbeOutcome> {
    use crate::conv::{Expr, Kind};
    use crate::termify::verify_termified_equation;
    let same_image;
    let same;
    match pair {
        ProbePair::Ctx(g, d) => {
            let tg = TCtx::new(g)?;
            let td = TCtx::new(d)?;
            let lg = tg.scope().level();
            if lg != td.scope().level() {
                return Ok(ProbeOutcome::DistinctImages);
            }
            same_image = conv::conv_tm(&Ctx::empty(), &Ty::U(lg), tg.code(), td.code())?;
            if !same_image {
                return Ok(ProbeOutcome::DistinctImages);
            }
            let (g1, g2) = iso_parts(&tg);
            let (d1, d2) = iso_parts(&td);
            let there = Sub::comp(d2, g1);
            let back = Sub::comp(g2, d1);
            same = conv::conv_sub(g, g, &Sub::comp(back.clone(), there.clone()), &Sub::Id)?
                && conv::conv_sub(d, d, &Sub::comp(there, back), &Sub::Id)?;
        }
        ProbePair::Ty(g, a, b) => {
            same_image = verify_termified_equation(g, &Kind::Ty, &Expr::Ty(a.clone()), &Expr::Ty(b.clone()))?;
            same = same_image && conv::conv_ty(g, a, b)?;
        }
        ProbePair::Sub(g, d, s, r) => {
            let kind = Kind::Sub(d.clone());
            same_image = verify_termified_equation(g, &kind, &Expr::Sub(s.clone()), &Expr::Sub(r.clone()))?;
            same = same_image && conv::conv_sub(g, d, s, r)?;
        }
        ProbePair::Tm(g, a, u, v) => {
            let kind = Kind::Tm(a.clone());
            same_image = verify_termified_equation(g, &kind, &Expr::Tm(u.clone()), &Expr::Tm(v.clone()))?;
            same = same_image && conv::conv_tm(g, a, u, v)?;
        }
    }
    Ok(if !same_image {
        ProbeOutcome::DistinctImages
    } else if same {
        ProbeOutcome::Confirmed
    } else {
        ProbeOutcome::Counterexample(format!("{pair:?}"))
    })
}

/// A context to build an isomorphism for, or an entity to recover.
#[derive(Clone, Debug)]
pub enum Instance {
    Ctx(Ctx),
    In(Ctx, Embedded),
}

/// Runs the check appropriate to an instance.
pub fn check_instance(i: &Instance) -> Result<Verdict> {
    match i {
        Instance::Ctx(c) => build_ctx_iso(c).map(|_| Verdict::Accept),
        Instance::In(c, x) => check_embedding(c, x),
    }
}

/// One dedicated embedding instance per operator, in a context where the
/// operator has something to act on.
pub fn operator_instances() -> Vec<(&'static str, Instance)> {
    use crate::syntax::Level;
    let e = Ctx::empty();
    let b = Ctx::empty().push(Ty::Bool);
    let bb = b.push(Ty::Bool.sub(Sub::P));
    let u = Ctx::empty().push(Ty::U(Level(0)));
    let bool_fn = Ty::pi(Ty::Bool, Ty::Bool.sub(Sub::P));
    let f = Ctx::empty().push(bool_fn.clone());
    let sig = Ty::sigma(Ty::Bool, Ty::Bool.sub(Sub::P));
    let s = Ctx::empty().push(sig.clone());
    let path = Ty::id(Ty::Bool, Tm::True, Tm::True);
    let motive_if = Ty::Bool.sub(Sub::P);
    let motive_j = Ty::Bool.sub(Sub::wk(2));
    vec![
        ("id", Instance::In(b.clone(), Embedded::Sub(Sub::Id))),
        ("comp", Instance::In(bb.clone(), Embedded::Sub(Sub::comp(Sub::P, Sub::P)))),
        ("tysub", Instance::In(b.clone(), Embedded::Ty(Ty::Bool.sub(Sub::P)))),
        ("tmsub", Instance::In(bb.clone(), Embedded::Tm(Tm::Q.sub(Sub::P)))),
        ("empty", Instance::Ctx(e.clone())),
        ("eps", Instance::In(b.clone(), Embedded::Sub(Sub::Eps))),
        ("extend", Instance::Ctx(bb.clone())),
        ("ext", Instance::In(b.clone(), Embedded::Sub(Sub::ext(Sub::P, Ty::Bool, Tm::False)))),
        ("p", Instance::In(b.clone(), Embedded::Sub(Sub::P))),
        ("q", Instance::In(bb.clone(), Embedded::Tm(Tm::Q))),
        ("pi", Instance::In(b.clone(), Embedded::Ty(Ty::pi(Ty::Bool, Ty::Bool.sub(Sub::P))))),
        ("lam", Instance::In(b.clone(), Embedded::Tm(Tm::lam(Ty::Bool, Tm::var(1))))),
        ("app", Instance::In(f.push(Ty::Bool), Embedded::Tm(Tm::app(Tm::Q)))),
        ("sigma", Instance::In(b.clone(), Embedded::Ty(sig.clone()))),
        (
            "pair",
            Instance::In(
                b.clone(),
                Embedded::Tm(Tm::pair(Ty::Bool, Ty::Bool.sub(Sub::P), Tm::Q, Tm::True)),
            ),
        ),
        ("fst", Instance::In(s.clone(), Embedded::Tm(Tm::fst(Tm::Q)))),
        ("snd", Instance::In(s.clone(), Embedded::Tm(Tm::snd(Tm::Q)))),
        ("top", Instance::In(b.clone(), Embedded::Ty(Ty::Top))),
        ("tt", Instance::In(b.clone(), Embedded::Tm(Tm::Tt))),
        ("u", Instance::In(b.clone(), Embedded::Ty(Ty::U(Level(1))))),
        ("el", Instance::In(u.clone(), Embedded::Ty(Ty::el(Tm::Q)))),
        ("code", Instance::In(u.clone(), Embedded::Tm(Tm::code(Ty::el(Tm::Q))))),
        ("bool", Instance::In(e.clone(), Embedded::Ty(Ty::Bool))),
        ("true", Instance::In(e.clone(), Embedded::Tm(Tm::True))),
        ("false", Instance::In(b.clone(), Embedded::Tm(Tm::False))),
        (
            "if",
            Instance::In(
                b.clone(),
                Embedded::Tm(Tm::ite(motive_if, Tm::False, Tm::True, Tm::Q)),
            ),
        ),
        ("idt", Instance::In(b.clone(), Embedded::Ty(Ty::id(Ty::Bool, Tm::Q, Tm::True)))),
        ("refl", Instance::In(b.clone(), Embedded::Tm(Tm::refl(Tm::Q)))),
        (
            "j",
            Instance::In(
                Ctx::empty().push(path),
                Embedded::Tm(Tm::j(motive_j, Tm::False, Tm::Q)),
            ),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_context_iso() {
        let iso = build_ctx_iso(&Ctx::empty()).unwrap();
        assert_eq!(iso.fwd, Sub::ext(Sub::Eps, Ty::el(Tm::code(Ty::Top)), Tm::Tt));
        assert_eq!(iso.bwd, Sub::Eps);
        assert!(iso.fwd_bwd_ok && iso.bwd_fwd_ok);
    }

    #[test]
    fn small_context_isos() {
        let b = Ctx::empty().push(Ty::Bool);
        assert!(build_ctx_iso(&b).unwrap().bwd_fwd_ok);
        assert!(build_ctx_iso(&b.push(Ty::Bool)).unwrap().fwd_bwd_ok);
    }

    #[test]
    fn worked_examples() {
        let e = Ctx::empty();
        assert!(check_embedding(&e, &Embedded::Tm(Tm::True)).unwrap().is_accept());
        assert!(check_embedding(&e, &Embedded::Ty(Ty::Bool)).unwrap().is_accept());
        let b = Ctx::empty().push(Ty::Bool);
        assert!(check_embedding(&b, &Embedded::Sub(Sub::P)).unwrap().is_accept());
    }

    #[test]
    fn every_operator_instance_accepts() {
        let all = operator_instances();
        assert_eq!(all.len(), 29);
        for (name, i) in all {
            let v = check_instance(&i).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(v.is_accept(), "{name}: {v}");
        }
    }

    #[test]
    fn probe_outcomes() {
        let e = Ctx::empty();
        let same = ProbePair::Tm(e.clone(), Ty::Bool, Tm::True, Tm::True);
        assert_eq!(injectivity_probe(&same).unwrap(), ProbeOutcome::Confirmed);
        let pi = Ty::pi(Ty::Bool, Ty::Bool.sub(Sub::P));
        let f = Tm::lam(
            Ty::Bool,
            Tm::ite(Ty::Bool.sub(Sub::P).sub(Sub::P), Tm::True, Tm::False, Tm::Q),
        );
        let g = Tm::lam(Ty::Bool, Tm::Q);
        let fg = ProbePair::Tm(e.clone(), pi, f, g);
        assert_eq!(injectivity_probe(&fg).unwrap(), ProbeOutcome::DistinctImages);
        let ctxs = ProbePair::Ctx(Ctx::empty().push(Ty::Bool), Ctx::empty().push(Ty::Bool.sub(Sub::Eps)));
        assert_eq!(injectivity_probe(&ctxs).unwrap(), ProbeOutcome::Confirmed);
    }
}
