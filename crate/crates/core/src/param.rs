//! Indexed unary parametricity as a syntax-to-syntax translation.
//!
//! Writing `Γ⁺ = Γ ▷ Γᴾ`, the sorts are
//!
//! ```text
//! Γ : Con i           ↦  Γᴾ : Ty i Γ
//! A : Ty j Γ          ↦  Aᴾ : Ty j (Γ⁺ ▷ A[p])
//! σ : Sub Γ Δ         ↦  σᴾ : Tm Γ⁺ (Δᴾ[σ ∘ p])
//! t : Tm Γ A          ↦  tᴾ : Tm Γ⁺ (Aᴾ[id, t[p]])
//! ```
//!
//! The operator clauses follow the standard unary translation: a context
//! predicate is the Σ of its entries' predicates, a function is related when
//! it maps related arguments to related results, `U` relates a code to a
//! predicate over its elements, and the identity type relates a path to a
//! path between the transported and the target witness. `Bool` is given the
//! trivial predicate `⊤`, which makes `if` a plain `if` on the original
//! scrutinee. Clauses other than the sorts are derived, and are trusted only
//! because every output is checked by the kernel.

use std::rc::Rc;

use thiserror::Error;

use crate::check::{infer_ty, synth_sub, synth_tm, Scope, TypeError, TypeErrorKind};
use crate::conv;
use crate::nbe::TyVal;
use crate::syntax::{Ctx, Level, Sub, Tm, Ty};

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("type error in the input: {0}")]
    Input(TypeError),
    #[error("translation of {what} is ill-typed: {err}")]
    TranslationIllTyped { what: &'static str, err: TypeError },
    #[error("translation of {what} has level {found:?}, expected {expected:?}")]
    LevelMismatch {
        what: &'static str,
        expected: Level,
        found: Level,
    },
}

impl From<TypeError> for ParamError {
    fn from(e: TypeError) -> Self {
        ParamError::Input(e)
    }
}

type Result<T> = std::result::Result<T, ParamError>;

fn var(n: usize) -> Tm {
    Tm::var(n)
}

fn wk(n: usize) -> Sub {
    Sub::wk(n)
}

/// `(x, y)` at the Σ-type `sig[τ]`, with annotations read off `sig`.
fn sigma_pair(sig: &Ty, tau: Sub, x: Tm, y: Tm) -> Tm {
    match sig {
        Ty::Sigma(a, b) => Tm::pair(
            a.as_ref().clone().sub(tau.clone()),
            b.as_ref().clone().sub(Sub::lift(tau, a.clone())),
            x,
            y,
        ),
        _ => unreachable!("context predicates of non-empty contexts are Σ-types"),
    }
}

/// A well-formed context with the predicates of all its prefixes.
#[derive(Clone, Debug)]
pub struct PCtx(Rc<Node>);

#[derive(Debug)]
struct Node {
    scope: Scope,
    pred: Ty,
    parent: Option<(PCtx, Ty)>,
}

impl PCtx {
    pub fn empty() -> PCtx {
        PCtx(Rc::new(Node {
            scope: Scope::empty(),
            pred: Ty::Top,
            parent: None,
        }))
    }

    pub fn new(ctx: &Ctx) -> Result<PCtx> {
        let mut c = PCtx::empty();
        for (k, a) in ctx.entries().iter().enumerate() {
            c = c.extend(a).map_err(|e| match e {
                ParamError::Input(e) => {
                    ParamError::Input(TypeError::new(TypeErrorKind::IllFormedEntry(k, Box::new(e))))
                }
                other => other,
            })?;
        }
        Ok(c)
    }

    pub fn scope(&self) -> &Scope {
        &self.0.scope
    }

    pub fn ctx(&self) -> &Ctx {
        self.0.scope.ctx()
    }

    fn n(&self) -> usize {
        self.0.scope.depth()
    }

    /// `Γᴾ : Ty Γ`.
    pub fn pred(&self) -> &Ty {
        &self.0.pred
    }

    /// `Γ⁺ = Γ ▷ Γᴾ`.
    pub fn plus(&self) -> Ctx {
        self.ctx().push(self.0.pred.clone())
    }

    fn split(&self) -> Result<(&PCtx, &Ty)> {
        self.0
            .parent
            .as_ref()
            .map(|(p, a)| (p, a))
            .ok_or_else(|| ParamError::Input(TypeError::new(TypeErrorKind::ProjectionOfEmpty)))
    }

    /// `(Γ ▷ A)ᴾ = Σ (Γᴾ[p]) (Aᴾ[p ∘ p, q, v¹])`.
    pub fn extend(&self, a: &Rc<Ty>) -> Result<PCtx> {
        let scope = self.0.scope.extend(a.clone())?;
        let a_p = self.ty(a)?;
        let rho = Sub::ext(
            Sub::ext(wk(2), self.pred().clone(), Tm::Q),
            a.as_ref().clone().sub(Sub::P),
            var(1),
        );
        let pred = Ty::sigma(self.pred().clone().sub(Sub::P), a_p.clone().sub(rho));
        Ok(PCtx(Rc::new(Node {
            scope,
            pred,
            parent: Some((self.clone(), a_p)),
        })))
    }

    /// Projection from a context of depth `d` extending `Γ⁺` onto `Γ`.
    fn gam(&self, d: usize) -> Sub {
        wk(d - self.n())
    }

    /// The `Γᴾ` witness, seen from depth `d`.
    fn gp(&self, d: usize) -> Tm {
        var(d - 1 - self.n())
    }

    /// `σ⁺ = (σ ∘ p, σᴾ) : Sub Γ⁺ Δ⁺`.
    fn lift_sub(sigma: &Sub, cod: &PCtx, sigma_p: Tm) -> Sub {
        Sub::ext(Sub::comp(sigma.clone(), Sub::P), cod.pred().clone(), sigma_p)
    }

    /// `Aᴾ` at the point `(Γ, γᴾ, y)` of a context of depth `d`.
    fn at_point(&self, a: &Ty, a_p: &Ty, d: usize, y: Tm) -> Ty {
        let gamma = Sub::ext(self.gam(d), self.pred().clone(), self.gp(d));
        a_p.clone().sub(Sub::ext(gamma, a.clone().sub(Sub::P), y))
    }

    /// Transport of `u_p : Aᴾ[u]` along `e : Id A u y`, at depth `d`, where
    /// `u_p` lives in `Γ⁺`.
    fn transport(&self, a: &Ty, a_p: &Ty, u_p: &Tm, d: usize, e: Tm) -> Tm {
        let motive = self.at_point(a, a_p, d + 2, var(1));
        Tm::j(motive, u_p.clone().sub(wk(d - self.n() - 1)), e)
    }

    /// `Aᴾ : Ty (Γ⁺ ▷ A[p])`.
    pub fn ty(&self, whole: &Ty) -> Result<Ty> {
        let m = self.n() + 1;
        Ok(match whole {
            Ty::Subst(b, s) => {
                let (s_p, cod) = self.sub(s)?;
                let b_p = cod.ty(b)?;
                let plus = Self::lift_sub(s, &cod, s_p);
                b_p.sub(Sub::ext(Sub::comp(plus, Sub::P), b.as_ref().clone().sub(Sub::P), Tm::Q))
            }
            Ty::Pi(a, b) => {
                let ext = self.extend(a)?;
                let a_p = ext.split()?.1.clone();
                let b_p = ext.ty(b)?;
                // depth m+1: f; m+2: x; m+3: xᴾ
                let dom = a.as_ref().clone().sub(self.gam(m + 1));
                let dom_p = self.at_point(a, &a_p, m + 2, Tm::Q);
                let d = m + 3;
                let tau = Sub::ext(self.gam(d), a.clone(), var(1));
                let pair = sigma_pair(ext.pred(), tau.clone(), self.gp(d), Tm::Q);
                let fx = Tm::apply1(var(2), a.as_ref().clone().sub(self.gam(d)), var(1));
                let s2 = Sub::ext(
                    Sub::ext(tau, ext.pred().clone(), pair),
                    b.as_ref().clone().sub(Sub::P),
                    fx,
                );
                Ty::pi(dom, Ty::pi(dom_p, b_p.sub(s2)))
            }
            Ty::Sigma(a, b) => {
                let ext = self.extend(a)?;
                let a_p = ext.split()?.1.clone();
                let b_p = ext.ty(b)?;
                // depth m+1: z; m+2: (fst z)ᴾ
                let dom = self.at_point(a, &a_p, m + 1, Tm::fst(Tm::Q));
                let d = m + 2;
                let tau = Sub::ext(self.gam(d), a.clone(), Tm::fst(var(1)));
                let pair = sigma_pair(ext.pred(), tau.clone(), self.gp(d), Tm::Q);
                let s = Sub::ext(
                    Sub::ext(tau, ext.pred().clone(), pair),
                    b.as_ref().clone().sub(Sub::P),
                    Tm::snd(var(1)),
                );
                Ty::sigma(dom, b_p.sub(s))
            }
            Ty::Top | Ty::Bool => Ty::Top,
            Ty::U(i) => Ty::arrow(Ty::el(Tm::Q), Ty::U(*i)),
            Ty::El(a) => {
                let a_p = self.tm(a)?;
                let dom = Ty::el(a.as_ref().clone().sub(Sub::P)).sub(Sub::P);
                Ty::el(Tm::apply1(a_p.sub(Sub::P), dom, Tm::Q))
            }
            Ty::Id(a, u, v) => {
                let a_p = self.ty(a)?;
                let u_p = self.tm(u)?;
                let v_p = self.tm(v)?;
                // depth m+1: e
                let d = m + 1;
                let at_v = self.at_point(a, &a_p, d, v.as_ref().clone().sub(self.gam(d)));
                let moved = self.transport(a, &a_p, &u_p, d, Tm::Q);
                Ty::id(at_v, moved, v_p.sub(Sub::P))
            }
        })
    }

    /// `σᴾ : Tm Γ⁺ (Δᴾ[σ ∘ p])` together with the codomain `Δ`.
    pub fn sub(&self, sigma: &Sub) -> Result<(Tm, PCtx)> {
        Ok(match sigma {
            Sub::Id => (Tm::Q, self.clone()),
            Sub::Comp(s, d) => {
                let (d_p, mid) = self.sub(d)?;
                let (s_p, cod) = mid.sub(s)?;
                (s_p.sub(Self::lift_sub(d, &mid, d_p)), cod)
            }
            Sub::Eps => (Tm::Tt, PCtx::empty()),
            Sub::Ext(s, a, t) => {
                let (s_p, cod) = self.sub(s)?;
                let ext = cod.extend(a)?;
                synth_sub(self.scope(), sigma)?;
                let t_p = self.tm(t)?;
                let tau = Sub::comp(sigma.clone(), Sub::P);
                (sigma_pair(ext.pred(), tau, s_p, t_p), ext)
            }
            Sub::P => {
                let (init, _) = self.split()?;
                (Tm::fst(Tm::Q), init.clone())
            }
        })
    }

    /// `tᴾ : Tm Γ⁺ (Aᴾ[id, t[p]])`.
    pub fn tm(&self, whole: &Tm) -> Result<Tm> {
        let n = self.n();
        let m = n + 1;
        Ok(match whole {
            Tm::Subst(u, s) => {
                let (s_p, cod) = self.sub(s)?;
                let u_p = cod.tm(u)?;
                u_p.sub(Self::lift_sub(s, &cod, s_p))
            }
            Tm::Q => {
                self.split()?;
                Tm::snd(Tm::Q)
            }
            Tm::Lam(a, t) => {
                let ext = self.extend(a)?;
                let a_p = ext.split()?.1.clone();
                let t_p = ext.tm(t)?;
                // depth m+1: x; m+2: xᴾ
                let d = m + 2;
                let tau = Sub::ext(self.gam(d), a.clone(), var(1));
                let pair = sigma_pair(ext.pred(), tau.clone(), self.gp(d), Tm::Q);
                let s3 = Sub::ext(tau, ext.pred().clone(), pair);
                Tm::lam(a.as_ref().clone().sub(Sub::P), Tm::lam(a_p, t_p.sub(s3)))
            }
            Tm::App(f) => {
                let (init, a_p) = self.split()?;
                let a = self.ctx().last().expect("nonempty").clone();
                let f_p = init.tm(f)?;
                let r = Sub::ext(wk(2), init.pred().clone(), Tm::fst(Tm::Q));
                let partial = Tm::apply1(f_p.sub(r.clone()), a.as_ref().clone().sub(wk(2)), var(1));
                let dom_p = a_p.clone().sub(Sub::ext(r, a.as_ref().clone().sub(Sub::P), var(1)));
                Tm::apply1(partial, dom_p, Tm::snd(Tm::Q))
            }
            Tm::Pair(a, b, u, v) => {
                let sig = Ty::Sigma(a.clone(), b.clone());
                let sig_p = self.ty(&sig)?;
                let point = Sub::ext(Sub::Id, sig.sub(Sub::P), whole.clone().sub(Sub::P));
                sigma_pair(&sig_p, point, self.tm(u)?, self.tm(v)?)
            }
            Tm::Fst(t) => Tm::fst(self.tm(t)?),
            Tm::Snd(t) => Tm::snd(self.tm(t)?),
            Tm::Tt | Tm::True | Tm::False => Tm::Tt,
            Tm::Code(a) => {
                let a_p = self.ty(a)?;
                Tm::lam(a.as_ref().clone().sub(Sub::P), Tm::code(a_p))
            }
            Tm::If(c, u, v, b) => {
                let ext = self.extend(&Rc::new(Ty::Bool))?;
                let c_p = ext.ty(c)?;
                // depth m+1: the boolean the motive abstracts over
                let rho = Sub::ext(wk(2), Ty::Bool, Tm::Q);
                let inner = Tm::ite(
                    c.as_ref().clone().sub(Sub::ext(wk(2), Ty::Bool, Tm::Q)),
                    u.as_ref().clone().sub(Sub::P),
                    v.as_ref().clone().sub(Sub::P),
                    Tm::Q,
                );
                let pair = sigma_pair(ext.pred(), rho.clone(), var(1), Tm::Tt);
                let motive = c_p.sub(Sub::ext(
                    Sub::ext(rho.clone(), ext.pred().clone(), pair),
                    c.as_ref().clone().sub(Sub::P),
                    inner.sub(rho),
                ));
                Tm::ite(motive, self.tm(u)?, self.tm(v)?, b.as_ref().clone().sub(Sub::P))
            }
            Tm::Refl(u) => Tm::refl(self.tm(u)?),
            Tm::J(c, w, e) => self.j_clause(c, w, e)?,
        })
    }

    /// `(J C w e)ᴾ`: a `J` on `e` whose motive abstracts over the witness
    /// and the witness path, with a second `J` on the witness path in the
    /// base case; the result is applied to `vᴾ` and `eᴾ`.
    fn j_clause(&self, c: &Rc<Ty>, w: &Rc<Tm>, e: &Rc<Tm>) -> Result<Tm> {
        let m = self.n() + 1;
        let (a, u, v) = id_parts(self.scope(), e)?;
        let path = Ty::id(a.clone().sub(Sub::P), u.clone().sub(Sub::P), Tm::Q);
        let ext1 = self.extend(&Rc::new(a.clone()))?;
        let ext2 = ext1.extend(&Rc::new(path.clone()))?;
        let a_p = ext1.split()?.1.clone();
        let c_p = ext2.ty(c)?;
        let u_p = self.tm(&u)?;
        let v_p = self.tm(&v)?;
        let e_p = self.tm(e)?;
        let w_p = self.tm(w)?;

        // The point (Γ, y, e') of Γ ▷ A ▷ Id(A[p], u[p], q) at depth d.
        let point = |d: usize, y: Tm, e1: Tm| {
            Sub::ext(Sub::ext(self.gam(d), a.clone(), y), path.clone(), e1)
        };
        // Cᴾ at (Γ, y, e', (γᴾ, yᴾ, e'ᴾ), x) at depth d.
        let c_at = |d: usize, y: Tm, e1: Tm, y_p: Tm, e1_p: Tm, x: Tm| {
            let inner = sigma_pair(
                ext1.pred(),
                Sub::ext(self.gam(d), a.clone(), y.clone()),
                self.gp(d),
                y_p,
            );
            let pt = point(d, y, e1);
            let triple = sigma_pair(ext2.pred(), pt.clone(), inner, e1_p);
            c_p.clone().sub(Sub::ext(
                Sub::ext(pt, ext2.pred().clone(), triple),
                c.as_ref().clone().sub(Sub::P),
                x,
            ))
        };

        // Outer motive over Γ⁺ ▷ A ▷ Id: depth m+2 (y = v¹, e' = v⁰).
        let d1 = self.at_point(&a, &a_p, m + 2, var(1));
        let d2 = Ty::id(
            self.at_point(&a, &a_p, m + 3, var(2)),
            self.transport(&a, &a_p, &u_p, m + 3, var(1)),
            Tm::Q,
        );
        let d = m + 4;
        let j_inner = Tm::j(
            c.as_ref().clone().sub(Sub::ext(
                Sub::ext(self.gam(d + 2), a.clone(), var(1)),
                path.clone(),
                Tm::Q,
            )),
            w.as_ref().clone().sub(self.gam(d)),
            var(2),
        );
        let body = c_at(d, var(3), var(2), var(1), Tm::Q, j_inner);
        let outer_motive = Ty::pi(d1.clone(), Ty::pi(d2.clone(), body));

        // Base case at y = u, e' = refl u.
        let a_e = a.clone().sub(Sub::P);
        let path_e = Ty::id(a_e.clone().sub(Sub::P), u.clone().sub(wk(2)), Tm::Q);
        let s0 = Sub::ext(
            Sub::ext(Sub::Id, a_e.clone(), u.clone().sub(Sub::P)),
            path_e.clone(),
            Tm::refl(u.clone().sub(Sub::P)),
        );
        let u_d = u.clone().sub(self.gam(d));
        let inner_motive = c_at(
            d,
            u_d.clone(),
            Tm::refl(u_d),
            var(1),
            Tm::Q,
            w.as_ref().clone().sub(self.gam(d)),
        );
        let inner_j = Tm::j(inner_motive, w_p.sub(wk(2)), Tm::Q);
        let base = Tm::lam(
            d1.clone().sub(s0.clone()),
            Tm::lam(d2.clone().sub(Sub::lift(s0, d1.clone())), inner_j),
        );
        let outer = Tm::j(outer_motive, base, e.as_ref().clone().sub(Sub::P));

        let s_ve = Sub::ext(
            Sub::ext(Sub::Id, a_e, v.clone().sub(Sub::P)),
            path_e,
            e.as_ref().clone().sub(Sub::P),
        );
        let first = Tm::apply1(outer, d1.clone().sub(s_ve.clone()), v_p.clone());
        Ok(Tm::apply1(first, d2.sub(Sub::ext(s_ve, d1, v_p)), e_p))
    }
}

/// The type and both endpoints of the identity type of `e`.
fn id_parts(scope: &Scope, e: &Tm) -> Result<(Ty, Tm, Tm)> {
    let ety = synth_tm(scope, e)?;
    match scope.eval_ty(&ety)? {
        TyVal::Id(a, u, v) => Ok((
            scope.quote_ty(&a)?,
            scope.quote(&u, &a)?,
            scope.quote(&v, &a)?,
        )),
        other => Err(ParamError::Input(TypeError::new(TypeErrorKind::Expected {
            what: "an Id-type",
            found: scope.quote_ty(&other)?,
        }))),
    }
}

/// What a translated entity is claimed to be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamClass {
    /// A type of the given level.
    Ty(Level),
    /// A term of the given type.
    Tm(Ty),
}

/// The sort of the source entity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamSort {
    Con,
    Ty,
    Sub,
    Tm,
}

/// A translated entity, the context it lives in, and its classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamEntity {
    pub sort: ParamSort,
    pub ctx: Ctx,
    pub payload: crate::conv::Expr,
    pub classifier: ParamClass,
}

impl ParamEntity {
    /// Checks the payload against its classifier.
    pub fn verify(&self) -> Result<()> {
        let what = match self.sort {
            ParamSort::Con => "a context",
            ParamSort::Ty => "a type",
            ParamSort::Sub => "a substitution",
            ParamSort::Tm => "a term",
        };
        let ill = |err| ParamError::TranslationIllTyped { what, err };
        let scope = Scope::new(&self.ctx).map_err(ill)?;
        match (&self.payload, &self.classifier) {
            (crate::conv::Expr::Ty(t), ParamClass::Ty(expected)) => {
                let found = infer_ty(&scope, t).map_err(ill)?;
                if found != *expected {
                    return Err(ParamError::LevelMismatch {
                        what,
                        expected: *expected,
                        found,
                    });
                }
                Ok(())
            }
            (crate::conv::Expr::Tm(t), ParamClass::Tm(a)) => {
                infer_ty(&scope, a).map_err(ill)?;
                let want = scope.eval_ty(a).map_err(ill)?;
                crate::check::check_tm(&scope, t, &want).map_err(ill)
            }
            _ => unreachable!("payload and classifier sorts agree by construction"),
        }
    }
}

pub fn param_ctx(ctx: &Ctx) -> Result<ParamEntity> {
    let c = PCtx::new(ctx)?;
    Ok(ParamEntity {
        sort: ParamSort::Con,
        ctx: ctx.clone(),
        payload: crate::conv::Expr::Ty(c.pred().clone()),
        classifier: ParamClass::Ty(c.scope().level()),
    })
}

pub fn param_ty(ctx: &Ctx, a: &Ty) -> Result<ParamEntity> {
    let c = PCtx::new(ctx)?;
    let level = infer_ty(c.scope(), a)?;
    Ok(ParamEntity {
        sort: ParamSort::Ty,
        ctx: c.plus().push(a.clone().sub(Sub::P)),
        payload: crate::conv::Expr::Ty(c.ty(a)?),
        classifier: ParamClass::Ty(level),
    })
}

pub fn param_sub(ctx: &Ctx, sigma: &Sub) -> Result<ParamEntity> {
    let c = PCtx::new(ctx)?;
    synth_sub(c.scope(), sigma)?;
    let (payload, cod) = c.sub(sigma)?;
    Ok(ParamEntity {
        sort: ParamSort::Sub,
        ctx: c.plus(),
        payload: crate::conv::Expr::Tm(payload),
        classifier: ParamClass::Tm(cod.pred().clone().sub(Sub::comp(sigma.clone(), Sub::P))),
    })
}

pub fn param_tm(ctx: &Ctx, t: &Tm) -> Result<ParamEntity> {
    let c = PCtx::new(ctx)?;
    let a = conv::normalize_ty_in(c.scope(), &synth_tm(c.scope(), t)?)?;
    let a_p = c.ty(&a)?;
    let point = Sub::ext(Sub::Id, a.clone().sub(Sub::P), t.clone().sub(Sub::P));
    Ok(ParamEntity {
        sort: ParamSort::Tm,
        ctx: c.plus(),
        payload: crate::conv::Expr::Tm(c.tm(t)?),
        classifier: ParamClass::Tm(a_p.sub(point)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conv::Expr;

    fn ok(e: Result<ParamEntity>) -> ParamEntity {
        let e = e.unwrap();
        e.verify().unwrap_or_else(|err| panic!("{err}\n{e:?}"));
        e
    }

    #[test]
    fn empty_context_predicate_is_top() {
        let e = ok(param_ctx(&Ctx::empty()));
        assert_eq!(e.payload, Expr::Ty(Ty::Top));
        assert_eq!(e.classifier, ParamClass::Ty(Level(0)));
    }

    #[test]
    fn literals_and_universes() {
        ok(param_tm(&Ctx::empty(), &Tm::True));
        let e = ok(param_ty(&Ctx::empty(), &Ty::U(Level(0))));
        assert_eq!(e.classifier, ParamClass::Ty(Level(1)));
        ok(param_ctx(&Ctx::empty().push(Ty::U(Level(0))).push(Ty::el(Tm::Q))));
    }

    #[test]
    fn functions_and_pairs() {
        let e = Ctx::empty();
        ok(param_tm(&e, &Tm::lam(Ty::Bool, Tm::Q)));
        let idfun = Tm::lam(Ty::U(Level(0)), Tm::lam(Ty::el(Tm::Q), Tm::Q));
        ok(param_tm(&e, &idfun));
        let f = Ctx::empty().push(Ty::pi(Ty::Bool, Ty::Bool.sub(Sub::P)));
        ok(param_tm(&f.push(Ty::Bool), &Tm::app(Tm::Q)));
        let pair = Tm::pair(Ty::Bool, Ty::Bool.sub(Sub::P), Tm::True, Tm::False);
        ok(param_tm(&e, &pair));
        ok(param_tm(&e, &Tm::snd(pair)));
        ok(param_ty(&e, &Ty::sigma(Ty::U(Level(0)), Ty::el(Tm::Q))));
    }

    #[test]
    fn substitutions() {
        let b = Ctx::empty().push(Ty::Bool);
        ok(param_sub(&b, &Sub::P));
        ok(param_sub(&b, &Sub::Id));
        ok(param_sub(&b, &Sub::Eps));
        ok(param_sub(&b, &Sub::ext(Sub::P, Ty::Bool, Tm::True)));
        ok(param_sub(&b.push(Ty::Bool), &Sub::comp(Sub::P, Sub::P)));
        ok(param_tm(&b.push(Ty::Bool), &Tm::var(1)));
        ok(param_ty(&b, &Ty::Bool.sub(Sub::P)));
    }

    #[test]
    fn eliminators() {
        let b = Ctx::empty().push(Ty::Bool);
        let t = Tm::ite(Ty::Bool.sub(Sub::P), Tm::False, Tm::True, Tm::Q);
        ok(param_tm(&b, &t));
        let u = Ctx::empty().push(Ty::U(Level(0))).push(Ty::el(Tm::Q));
        ok(param_ty(&u, &Ty::id(Ty::el(Tm::var(1)), Tm::Q, Tm::Q)));
        ok(param_tm(&u, &Tm::refl(Tm::Q)));
        let j = Tm::j(Ty::Bool.sub(Sub::wk(2)), Tm::True, Tm::refl(Tm::False));
        ok(param_tm(&Ctx::empty(), &j));
        let path = Ctx::empty().push(Ty::id(Ty::Bool, Tm::True, Tm::False));
        // J with a motive that mentions the endpoint and the path.
        let motive = Ty::id(Ty::Bool.sub(Sub::wk(3)), Tm::var(1), Tm::var(1));
        let jt = Tm::j(motive, Tm::refl(Tm::True), Tm::Q);
        ok(param_tm(&path, &jt));
    }
}
