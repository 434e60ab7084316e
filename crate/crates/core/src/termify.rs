//! Termification: every context, type, substitution and term becomes a
//! closed term.
//!
//! With `Γ̲ = El ⟦Γ⟧`, the four sorts are sent to
//!
//! ```text
//! Con i        ↦ Tm • (U i)
//! Ty j Γ       ↦ Tm • (Γ̲ ⇒ U j)
//! Sub Γ Δ      ↦ Tm • (Γ̲ ⇒ Δ̲)
//! Tm Γ A       ↦ Tm • (Π Γ̲ (El (app ⟦A⟧)))
//! ```
//!
//! and each operator is sent to a fixed closed term built from the
//! translations of its arguments, e.g. `⟦id⟧ = lam q`,
//! `⟦Γ ▷ A⟧ = c (Σ Γ̲ (El (app ⟦A⟧)))`,
//! `⟦lam t⟧ = lam (lam (⟦t⟧[ε] $ (v¹, v⁰)))`. The fold is type-directed: it
//! walks the kernel's scopes so that every annotation the kernel needs
//! (domains of `$`, pair annotations) is available.

use std::rc::Rc;

use crate::check::{self, infer_ty, synth_sub, synth_tm, Scope, TypeError, TypeErrorKind};
use crate::conv::{self, Expr, Kind};
use crate::nbe::TyVal;
use crate::syntax::{Ctx, Level, Sub, Tm, Ty};

type Result<T> = std::result::Result<T, TypeError>;

/// The sort of a translated entity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SortTag {
    Con,
    Ty,
    Sub,
    Tm,
}

/// A closed term together with the closed type it is claimed to inhabit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermifiedEntity {
    pub sort: SortTag,
    pub payload: Tm,
    pub classifier: Ty,
}

impl TermifiedEntity {
    /// Checks the payload against its classifier in the empty context.
    pub fn verify(&self) -> Result<()> {
        let empty = Scope::empty();
        infer_ty(&empty, &self.classifier)?;
        let want = empty.eval_ty(&self.classifier)?;
        check::check_tm(&empty, &self.payload, &want)
    }
}

fn eps(t: &Tm) -> Tm {
    t.clone().sub(Sub::Eps)
}

/// `El (app X)`, the family decoded from a translated type.
pub fn el_app(x: &Tm) -> Ty {
    Ty::el(Tm::app(x.clone()))
}

/// A well-formed context together with the translations of all its
/// prefixes and entries.
#[derive(Clone, Debug)]
pub struct TCtx(Rc<Node>);

#[derive(Debug)]
struct Node {
    scope: Scope,
    code: Tm,
    parent: Option<(TCtx, Tm)>,
}

impl TCtx {
    pub fn empty() -> TCtx {
        TCtx(Rc::new(Node {
            scope: Scope::empty(),
            code: Tm::code(Ty::Top),
            parent: None,
        }))
    }

    pub fn new(ctx: &Ctx) -> Result<TCtx> {
        let mut t = TCtx::empty();
        for (k, a) in ctx.entries().iter().enumerate() {
            t = t
                .extend(a)
                .map_err(|e| TypeError::new(TypeErrorKind::IllFormedEntry(k, Box::new(e))))?;
        }
        Ok(t)
    }

    pub fn scope(&self) -> &Scope {
        &self.0.scope
    }

    pub fn ctx(&self) -> &Ctx {
        self.0.scope.ctx()
    }

    /// `⟦Γ⟧ : Tm • (U i)`.
    pub fn code(&self) -> &Tm {
        &self.0.code
    }

    /// `Γ̲ = El ⟦Γ⟧`, a closed type.
    pub fn under(&self) -> Ty {
        Ty::el(self.0.code.clone())
    }

    /// The context without its last entry, and that entry's translation.
    pub fn split(&self) -> Result<(&TCtx, &Tm)> {
        self.0
            .parent
            .as_ref()
            .map(|(p, a)| (p, a))
            .ok_or_else(|| TypeError::new(TypeErrorKind::ProjectionOfEmpty))
    }

    /// Extends with an entry. The stored code and entry translation are
    /// kept in normal form: both are closed, so this changes nothing up to
    /// conversion, but it stops every binder from carrying a copy of every
    /// enclosing context's unreduced code.
    pub fn extend(&self, a: &Rc<Ty>) -> Result<TCtx> {
        let scope = self.0.scope.extend(a.clone())?;
        let a_tau = conv::normalize(&Ctx::empty(), &self.ty(a)?)?;
        let code = Tm::code(Ty::sigma(self.under(), el_app(&a_tau)));
        Ok(TCtx(Rc::new(Node {
            scope,
            code: conv::normalize(&Ctx::empty(), &code)?,
            parent: Some((self.clone(), a_tau)),
        })))
    }

    /// `(x, y) : El ⟦Γ ▷ A⟧` given `x : Γ̲` and `y : El (app ⟦A⟧)[ε, x]`;
    /// `a_tau = ⟦A⟧`.
    pub fn pair_of(&self, a_tau: &Tm, x: Tm, y: Tm) -> Tm {
        let g = self.under();
        Tm::pair(g.clone(), el_app(a_tau).sub(Sub::ext(Sub::Eps, g, Tm::Q)), x, y)
    }

    /// `(ε, t)`, a kernel substitution into `• ▷ Γ̲`.
    pub fn point(&self, t: Tm) -> Sub {
        Sub::ext(Sub::Eps, self.under(), t)
    }

    /// For `self = Γ ▷ A`: the family `F` over `Γ ▷ A` (given as `⟦F⟧`) read
    /// in `• ▷ Γ̲ ▷ El (app ⟦A⟧)`, i.e. `El (app ⟦F⟧)[ε, (v¹, v⁰)]`.
    fn curried(&self, fam_tau: &Tm) -> Result<Ty> {
        let (base, a_tau) = self.split()?;
        let pair = base.pair_of(a_tau, Tm::var(1), Tm::Q);
        Ok(el_app(fam_tau).sub(self.point(pair)))
    }

    /// `⟦A⟧ : Tm • (Γ̲ ⇒ U j)`.
    pub fn ty(&self, whole: &Ty) -> Result<Tm> {
        let body = match whole {
            Ty::Subst(b, s) => {
                let (s_tau, cod) = self.sub(s)?;
                let b_tau = cod.ty(b)?;
                Tm::app(b_tau).sub(cod.point(Tm::app(eps(&s_tau))))
            }
            Ty::Pi(a, b) | Ty::Sigma(a, b) => {
                let ext = self.extend(a)?;
                let dom = el_app(ext.split()?.1);
                let cod = ext.curried(&ext.ty(b)?)?;
                Tm::code(if matches!(whole, Ty::Pi(..)) {
                    Ty::pi(dom, cod)
                } else {
                    Ty::sigma(dom, cod)
                })
            }
            Ty::Top => Tm::code(Ty::Top),
            Ty::U(i) => Tm::code(Ty::U(*i)),
            Ty::El(a) => return self.tm(a),
            Ty::Bool => Tm::code(Ty::Bool),
            Ty::Id(a, u, v) => {
                let a_tau = self.ty(a)?;
                let u_tau = self.tm(u)?;
                let v_tau = self.tm(v)?;
                Tm::code(Ty::id(el_app(&a_tau), Tm::app(u_tau), Tm::app(v_tau)))
            }
        };
        Ok(Tm::lam(self.under(), body))
    }

    /// `⟦σ⟧ : Tm • (Γ̲ ⇒ Δ̲)` together with the codomain `Δ`.
    pub fn sub(&self, sigma: &Sub) -> Result<(Tm, TCtx)> {
        let g = self.under();
        Ok(match sigma {
            Sub::Id => (Tm::lam(g, Tm::Q), self.clone()),
            Sub::Comp(s, d) => {
                let (d_tau, mid) = self.sub(d)?;
                let (s_tau, cod) = mid.sub(s)?;
                let inner = Tm::apply1(eps(&d_tau), g.clone(), Tm::Q);
                (Tm::lam(g, Tm::apply1(eps(&s_tau), mid.under(), inner)), cod)
            }
            Sub::Eps => (Tm::lam(g, Tm::Tt), TCtx::empty()),
            Sub::Ext(s, a, t) => {
                let (s_tau, cod) = self.sub(s)?;
                let ext = cod.extend(a)?;
                let a_tau = ext.split()?.1.clone();
                // Checks t against A[σ] before translating it.
                synth_sub(self.scope(), sigma)?;
                let t_tau = self.tm(t)?;
                let body = cod.pair_of(&a_tau, Tm::app(s_tau), Tm::app(t_tau));
                (Tm::lam(g, body), ext)
            }
            Sub::P => {
                let (init, _) = self.split()?;
                (Tm::lam(g, Tm::fst(Tm::Q)), init.clone())
            }
        })
    }

    /// `⟦t⟧ : Tm • (Π Γ̲ (El (app ⟦A⟧)))`.
    pub fn tm(&self, whole: &Tm) -> Result<Tm> {
        let g = self.under();
        let app = |t: &Tm| -> Result<Tm> { Ok(Tm::app(self.tm(t)?)) };
        let body = match whole {
            Tm::Subst(u, s) => {
                let (s_tau, cod) = self.sub(s)?;
                let u_tau = cod.tm(u)?;
                Tm::app(u_tau).sub(cod.point(Tm::app(eps(&s_tau))))
            }
            Tm::Q => {
                self.split()?;
                Tm::snd(Tm::Q)
            }
            Tm::Lam(a, t) => {
                let ext = self.extend(a)?;
                let (_, a_tau) = ext.split()?;
                let t_tau = ext.tm(t)?;
                let pair = self.pair_of(a_tau, Tm::var(1), Tm::Q);
                Tm::lam(el_app(a_tau), Tm::apply1(eps(&t_tau), ext.under(), pair))
            }
            Tm::App(f) => {
                let (init, a_tau) = self.split()?;
                let f_tau = init.tm(f)?;
                let gi = init.under();
                let first = Tm::fst(Tm::Q);
                let partial = Tm::apply1(eps(&f_tau), gi.clone(), first.clone());
                let dom = el_app(a_tau).sub(Sub::ext(Sub::Eps, gi, first));
                Tm::apply1(partial, dom, Tm::snd(Tm::Q))
            }
            Tm::Pair(a, b, u, v) => {
                let ext = self.extend(a)?;
                let (_, a_tau) = ext.split()?;
                let fam = ext.curried(&ext.ty(b)?)?;
                Tm::pair(el_app(a_tau), fam, app(u)?, app(v)?)
            }
            Tm::Fst(t) => Tm::fst(app(t)?),
            Tm::Snd(t) => Tm::snd(app(t)?),
            Tm::Tt => Tm::Tt,
            Tm::Code(a) => return self.ty(a),
            Tm::True => Tm::True,
            Tm::False => Tm::False,
            Tm::If(c, u, v, t) => {
                let ext = self.extend(&Rc::new(Ty::Bool))?;
                let motive = Ty::el(Tm::apply1(
                    eps(&ext.ty(c)?),
                    ext.under(),
                    self.pair_of(ext.split()?.1, Tm::var(1), Tm::Q),
                ));
                Tm::ite(motive, app(u)?, app(v)?, app(t)?)
            }
            Tm::Refl(u) => Tm::refl(app(u)?),
            Tm::J(c, w, e) => {
                let (a, u) = id_endpoint(self.scope(), e)?;
                let ext1 = self.extend(&Rc::new(a.clone()))?;
                let path = Ty::id(a.sub(Sub::P), u.sub(Sub::P), Tm::Q);
                let ext2 = ext1.extend(&Rc::new(path))?;
                let c_tau = ext2.ty(c)?;
                let (_, a_tau) = ext1.split()?;
                let (_, path_tau) = ext2.split()?;
                let inner = self.pair_of(a_tau, Tm::var(2), Tm::var(1));
                let triple = ext1.pair_of(path_tau, inner, Tm::Q);
                let motive = Ty::el(Tm::apply1(eps(&c_tau), ext2.under(), triple));
                Tm::j(motive, app(w)?, app(e)?)
            }
        };
        Ok(Tm::lam(g, body))
    }
}

/// The type `A` and left endpoint `u` of the identity type of `e`.
fn id_endpoint(scope: &Scope, e: &Tm) -> Result<(Ty, Tm)> {
    let ety = synth_tm(scope, e)?;
    match scope.eval_ty(&ety)? {
        TyVal::Id(a, u, _) => Ok((scope.quote_ty(&a)?, scope.quote(&u, &a)?)),
        other => Err(TypeError::new(TypeErrorKind::Expected {
            what: "an Id-type",
            found: scope.quote_ty(&other)?,
        })),
    }
}

/// Translates a context.
pub fn termify_ctx(ctx: &Ctx) -> Result<TermifiedEntity> {
    let t = TCtx::new(ctx)?;
    let level = t.scope().level();
    Ok(TermifiedEntity {
        sort: SortTag::Con,
        payload: t.code().clone(),
        classifier: Ty::U(level),
    })
}

/// Translates a type of `ctx`.
pub fn termify_ty(ctx: &Ctx, a: &Ty) -> Result<TermifiedEntity> {
    let t = TCtx::new(ctx)?;
    termify_ty_in(&t, a)
}

pub fn termify_ty_in(t: &TCtx, a: &Ty) -> Result<TermifiedEntity> {
    let j = infer_ty(t.scope(), a)?;
    Ok(TermifiedEntity {
        sort: SortTag::Ty,
        payload: t.ty(a)?,
        classifier: ty_classifier(t, j),
    })
}

/// `Γ̲ ⇒ U j`.
pub fn ty_classifier(t: &TCtx, j: Level) -> Ty {
    Ty::arrow(t.under(), Ty::U(j))
}

/// Translates a substitution out of `ctx`.
pub fn termify_sub(ctx: &Ctx, sigma: &Sub) -> Result<TermifiedEntity> {
    let t = TCtx::new(ctx)?;
    termify_sub_in(&t, sigma)
}

pub fn termify_sub_in(t: &TCtx, sigma: &Sub) -> Result<TermifiedEntity> {
    synth_sub(t.scope(), sigma)?;
    let (payload, cod) = t.sub(sigma)?;
    Ok(TermifiedEntity {
        sort: SortTag::Sub,
        payload,
        classifier: Ty::arrow(t.under(), cod.under()),
    })
}

/// Translates a term of `ctx`; the classifier uses the normal form of the
/// synthesized type.
pub fn termify_tm(ctx: &Ctx, tm: &Tm) -> Result<TermifiedEntity> {
    let t = TCtx::new(ctx)?;
    termify_tm_in(&t, tm)
}

pub fn termify_tm_in(t: &TCtx, tm: &Tm) -> Result<TermifiedEntity> {
    let a = conv::normalize_ty_in(t.scope(), &synth_tm(t.scope(), tm)?)?;
    Ok(TermifiedEntity {
        sort: SortTag::Tm,
        payload: t.tm(tm)?,
        classifier: tm_classifier(t, &a)?,
    })
}

/// `Π Γ̲ (El (app ⟦A⟧))`.
pub fn tm_classifier(t: &TCtx, a: &Ty) -> Result<Ty> {
    Ok(Ty::pi(t.under(), el_app(&t.ty(a)?)))
}

/// Translates both sides of an equation posed at `kind` in `ctx` and decides
/// whether the translations are convertible at the translated classifier.
/// Either side failing to typecheck is an error, not a rejection.
pub fn verify_termified_equation(ctx: &Ctx, kind: &Kind, lhs: &Expr, rhs: &Expr) -> Result<bool> {
    let t = TCtx::new(ctx)?;
    let (l, r) = match (kind, lhs, rhs) {
        (Kind::Ty, Expr::Ty(a), Expr::Ty(b)) => {
            let i = infer_ty(t.scope(), a)?;
            if infer_ty(t.scope(), b)? != i {
                return Ok(false);
            }
            (termify_ty_in(&t, a)?, termify_ty_in(&t, b)?)
        }
        (Kind::Sub(cod), Expr::Sub(s), Expr::Sub(d)) => {
            let want = Scope::new(cod)?;
            for side in [s, d] {
                let got = synth_sub(t.scope(), side)?;
                if !check::ctx_conv(&want, &got)? {
                    return Err(TypeError::new(TypeErrorKind::CtxMismatch {
                        expected: cod.clone(),
                        found: got.ctx().clone(),
                    }));
                }
            }
            (termify_sub_in(&t, s)?, termify_sub_in(&t, d)?)
        }
        (Kind::Tm(a), Expr::Tm(u), Expr::Tm(v)) => {
            let av = t.scope().eval_ty(a)?;
            infer_ty(t.scope(), a)?;
            check::check_tm(t.scope(), u, &av)?;
            check::check_tm(t.scope(), v, &av)?;
            let class = tm_classifier(&t, a)?;
            let mk = |x: &Tm| -> Result<TermifiedEntity> {
                Ok(TermifiedEntity {
                    sort: SortTag::Tm,
                    payload: t.tm(x)?,
                    classifier: class.clone(),
                })
            };
            (mk(u)?, mk(v)?)
        }
        _ => return conv::conv(ctx, kind, lhs, rhs),
    };
    conv::conv_tm(&Ctx::empty(), &l.classifier, &l.payload, &r.payload)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conv::conv_tm;

    fn bool_ctx() -> Ctx {
        Ctx::empty().push(Ty::Bool)
    }

    #[test]
    fn empty_context_is_code_top() {
        let e = termify_ctx(&Ctx::empty()).unwrap();
        assert_eq!(e.payload, Tm::code(Ty::Top));
        assert_eq!(e.classifier, Ty::U(Level(0)));
        e.verify().unwrap();
    }

    #[test]
    fn identity_on_empty_is_lam_q() {
        let e = termify_sub(&Ctx::empty(), &Sub::Id).unwrap();
        assert_eq!(e.payload, Tm::lam(Ty::el(Tm::code(Ty::Top)), Tm::Q));
        e.verify().unwrap();
    }

    #[test]
    fn bool_context_matches_hand_composition() {
        let e = termify_ctx(&bool_ctx()).unwrap();
        e.verify().unwrap();
        let top = Tm::code(Ty::Top);
        let bool_tau = Tm::lam(Ty::el(top.clone()), Tm::code(Ty::Bool));
        let want = Tm::code(Ty::sigma(Ty::el(top), Ty::el(Tm::app(bool_tau))));
        assert!(conv_tm(&Ctx::empty(), &Ty::U(Level(0)), &e.payload, &want).unwrap());
        // Stored codes are kept in normal form.
        assert_eq!(e.payload, Tm::code(Ty::sigma(Ty::Top, Ty::Bool)));
    }

    #[test]
    fn every_sort_verifies_on_small_examples() {
        let b = bool_ctx();
        termify_ty(&b, &Ty::pi(Ty::Bool, Ty::Bool.sub(Sub::P))).unwrap().verify().unwrap();
        termify_sub(&b, &Sub::P).unwrap().verify().unwrap();
        termify_sub(&b, &Sub::ext(Sub::P, Ty::Bool, Tm::True)).unwrap().verify().unwrap();
        termify_tm(&b, &Tm::Q).unwrap().verify().unwrap();
        let f = Tm::lam(Ty::Bool, Tm::Q);
        termify_tm(&Ctx::empty(), &f).unwrap().verify().unwrap();
        let u0 = Ctx::empty().push(Ty::U(Level(0))).push(Ty::el(Tm::Q));
        termify_tm(&u0, &Tm::refl(Tm::Q)).unwrap().verify().unwrap();
    }

    #[test]
    fn eliminators_verify() {
        let e = Ctx::empty();
        let motive = Ty::Bool.sub(Sub::P);
        let t = Tm::ite(motive, Tm::False, Tm::True, Tm::True);
        termify_tm(&e, &t).unwrap().verify().unwrap();
        let j = Tm::j(Ty::Bool.sub(Sub::wk(2)), Tm::True, Tm::refl(Tm::False));
        termify_tm(&e, &j).unwrap().verify().unwrap();
        let pair = Tm::pair(Ty::Bool, Ty::Top, Tm::True, Tm::Tt);
        termify_tm(&e, &Tm::snd(pair.clone())).unwrap().verify().unwrap();
        let app = Tm::apply1(Tm::lam(Ty::Bool, Tm::Q), Ty::Bool, Tm::True);
        termify_tm(&e, &app).unwrap().verify().unwrap();
    }

    #[test]
    fn termified_equations() {
        let b = bool_ctx();
        // id ∘ p = p
        let ok = verify_termified_equation(
            &b,
            &Kind::Sub(Ctx::empty()),
            &Expr::Sub(Sub::comp(Sub::Id, Sub::P)),
            &Expr::Sub(Sub::P),
        );
        assert!(ok.unwrap());
        // Bool[ε] = Bool
        let ok = verify_termified_equation(
            &Ctx::empty(),
            &Kind::Ty,
            &Expr::Ty(Ty::Bool.sub(Sub::Eps)),
            &Expr::Ty(Ty::Bool),
        );
        assert!(ok.unwrap());
        // lam (app t) = t
        let t = Tm::lam(Ty::Bool, Tm::Q);
        let pi = Ty::pi(Ty::Bool, Ty::Bool.sub(Sub::P));
        let ok = verify_termified_equation(
            &Ctx::empty(),
            &Kind::Tm(pi),
            &Expr::Tm(Tm::lam(Ty::Bool, Tm::app(t.clone()))),
            &Expr::Tm(t),
        );
        assert!(ok.unwrap());
    }

    #[test]
    fn distinct_terms_stay_distinct() {
        let ok = verify_termified_equation(
            &Ctx::empty(),
            &Kind::Tm(Ty::Bool),
            &Expr::Tm(Tm::True),
            &Expr::Tm(Tm::False),
        );
        assert!(!ok.unwrap());
    }
}
