//! Typechecking for the four sorts.
//!
//! Contexts are telescopes, so every classifier is synthesized: the
//! codomain of a substitution, the level of a type, the type of a term.
//! Side conditions are discharged by conversion (see [`crate::conv`]).

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::nbe::{self, eval_sub, eval_tm, eval_ty, quote_ty, Env, InternalStuck, TyVal, Val};
use crate::syntax::{Ctx, Level, Sub, Tm, Ty};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeErrorKind {
    /// Entry `k` of a telescope failed to typecheck in its prefix.
    IllFormedEntry(usize, Box<TypeError>),
    /// Two types that were required to be convertible are not.
    Mismatch { expected: Ty, found: Ty },
    /// A type of the wrong shape, e.g. `fst` of a non-Σ.
    Expected { what: &'static str, found: Ty },
    /// Two contexts that were required to agree do not.
    CtxMismatch { expected: Ctx, found: Ctx },
    VarInEmptyContext,
    ProjectionOfEmpty,
    AppInEmptyContext,
    Internal(InternalStuck),
}

/// A typing error together with the path of the offending sub-tree, outermost
/// constructor first.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub path: Vec<&'static str>,
}

impl TypeError {
    pub fn new(kind: TypeErrorKind) -> TypeError {
        TypeError {
            kind,
            path: Vec::new(),
        }
    }

    pub fn at(mut self, step: &'static str) -> TypeError {
        self.path.insert(0, step);
        self
    }
}

impl From<InternalStuck> for TypeError {
    fn from(e: InternalStuck) -> Self {
        TypeError::new(TypeErrorKind::Internal(e))
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TypeErrorKind::IllFormedEntry(k, inner) => {
                write!(f, "context entry {k} is ill-formed: {inner}")?
            }
            TypeErrorKind::Mismatch { expected, found } => write!(
                f,
                "type mismatch: expected {}, found {}",
                crate::surface::print_ty(expected),
                crate::surface::print_ty(found)
            )?,
            TypeErrorKind::Expected { what, found } => write!(
                f,
                "expected {what}, found {}",
                crate::surface::print_ty(found)
            )?,
            TypeErrorKind::CtxMismatch { expected, found } => write!(
                f,
                "context mismatch: expected {}, found {}",
                crate::surface::print_ctx(expected),
                crate::surface::print_ctx(found)
            )?,
            TypeErrorKind::VarInEmptyContext => write!(f, "q used in the empty context")?,
            TypeErrorKind::ProjectionOfEmpty => write!(f, "p used with the empty context")?,
            TypeErrorKind::AppInEmptyContext => write!(f, "app used in the empty context")?,
            TypeErrorKind::Internal(e) => write!(f, "{e}")?,
        }
        if !self.path.is_empty() {
            write!(f, " (at {})", self.path.join("/"))?;
        }
        Ok(())
    }
}

type Result<T> = std::result::Result<T, TypeError>;

trait At<T> {
    fn at(self, step: &'static str) -> Result<T>;
}

impl<T> At<T> for Result<T> {
    fn at(self, step: &'static str) -> Result<T> {
        self.map_err(|e| e.at(step))
    }
}

/// A well-formed context together with its generic environment (one fresh
/// variable per entry).
#[derive(Clone, Debug)]
pub struct Scope {
    ctx: Ctx,
    env: Env,
    levels: Vec<Level>,
}

impl Scope {
    pub fn empty() -> Scope {
        Scope {
            ctx: Ctx::empty(),
            env: Env::empty(),
            levels: Vec::new(),
        }
    }

    /// Checks every telescope entry in its prefix.
    pub fn new(ctx: &Ctx) -> Result<Scope> {
        let mut scope = Scope::empty();
        for (k, ty) in ctx.entries().iter().enumerate() {
            scope = scope.extend(ty.clone()).map_err(|e| {
                TypeError::new(TypeErrorKind::IllFormedEntry(k, Box::new(e)))
            })?;
        }
        Ok(scope)
    }

    /// Extends with a type, checking it first.
    pub fn extend(&self, ty: Rc<Ty>) -> Result<Scope> {
        let level = infer_ty(self, &ty)?;
        self.extend_unchecked(ty, level)
    }

    fn extend_unchecked(&self, ty: Rc<Ty>, level: Level) -> Result<Scope> {
        let tv = eval_ty(&self.env, &ty)?;
        let var = Val::var(self.depth(), tv);
        Ok(Scope {
            ctx: self.ctx.push(ty),
            env: self.env.extended(var),
            levels: {
                let mut l = self.levels.clone();
                l.push(level);
                l
            },
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn depth(&self) -> usize {
        self.ctx.len()
    }

    /// Level of the context: the max over its entries.
    pub fn level(&self) -> Level {
        self.levels.iter().copied().fold(Level::ZERO, Level::max)
    }

    /// The scope of all but the last entry.
    pub fn init(&self) -> Option<Scope> {
        let n = self.depth();
        if n == 0 {
            return None;
        }
        let mut env = Env::empty();
        for v in &self.env.values()[..n - 1] {
            env.push(v.clone());
        }
        Some(Scope {
            ctx: self.ctx.prefix(n - 1),
            env,
            levels: self.levels[..n - 1].to_vec(),
        })
    }

    fn last_ty(&self) -> Option<&Rc<Ty>> {
        self.ctx.last()
    }

    pub fn eval_ty(&self, ty: &Ty) -> Result<TyVal> {
        Ok(eval_ty(&self.env, ty)?)
    }

    pub fn eval_tm(&self, tm: &Tm) -> Result<Val> {
        Ok(eval_tm(&self.env, tm)?)
    }

    pub fn eval_sub(&self, sigma: &Sub) -> Result<Env> {
        Ok(eval_sub(&self.env, sigma)?)
    }

    /// Normal form of a semantic type in this scope.
    pub fn quote_ty(&self, ty: &TyVal) -> Result<Ty> {
        Ok(quote_ty(self.depth(), ty)?)
    }

    pub fn quote(&self, v: &Val, ty: &TyVal) -> Result<Tm> {
        Ok(nbe::quote(self.depth(), v, ty)?)
    }

    /// Decides `a ≡ b` for two types of this scope.
    pub fn conv_ty(&self, a: &Ty, b: &Ty) -> Result<bool> {
        Ok(self.quote_ty(&self.eval_ty(a)?)? == self.quote_ty(&self.eval_ty(b)?)?)
    }

    fn conv_tyval(&self, a: &TyVal, b: &TyVal) -> Result<bool> {
        Ok(self.quote_ty(a)? == self.quote_ty(b)?)
    }
}

/// Checks that two well-formed contexts agree entry by entry.
pub fn ctx_conv(a: &Scope, b: &Scope) -> Result<bool> {
    if a.depth() != b.depth() {
        return Ok(false);
    }
    let mut env = Env::empty();
    for k in 0..a.depth() {
        let tya = eval_ty(&env, &a.ctx.entries()[k])?;
        let tyb = eval_ty(&env, &b.ctx.entries()[k])?;
        // Both evaluated in a's generic environment: prefixes already agree.
        if quote_ty(k, &tya)? != quote_ty(k, &tyb)? {
            return Ok(false);
        }
        env.push(a.env.get(k).clone());
    }
    Ok(true)
}

/// Returns the level of a well-formed context.
pub fn check_ctx(ctx: &Ctx) -> Result<Level> {
    Ok(Scope::new(ctx)?.level())
}

/// Returns the level `i` with `ty : Ty i Γ`.
pub fn infer_ty(scope: &Scope, ty: &Ty) -> Result<Level> {
    match ty {
        Ty::Subst(a, s) => {
            let dom = synth_sub(scope, s).at("tysub.sub")?;
            infer_ty(&dom, a).at("tysub.ty")
        }
        Ty::Pi(a, b) | Ty::Sigma(a, b) => {
            let step = if matches!(ty, Ty::Pi(..)) { "pi" } else { "sigma" };
            let i = infer_ty(scope, a).map_err(|e| e.at("dom").at(step))?;
            let ext = scope.extend_unchecked(a.clone(), i)?;
            let j = infer_ty(&ext, b).map_err(|e| e.at("cod").at(step))?;
            Ok(i.max(j))
        }
        Ty::Top | Ty::Bool => Ok(Level::ZERO),
        Ty::U(i) => Ok(i.succ()),
        Ty::El(a) => {
            let aty = synth_tm(scope, a).at("el")?;
            match scope.eval_ty(&aty)? {
                TyVal::U(i) => Ok(i),
                other => Err(expected("a universe", scope, &other)?.at("el")),
            }
        }
        Ty::Id(a, u, v) => {
            let i = infer_ty(scope, a).at("idt.ty")?;
            let av = scope.eval_ty(a)?;
            check_tm(scope, u, &av).at("idt.lhs")?;
            check_tm(scope, v, &av).at("idt.rhs")?;
            Ok(i)
        }
    }
}

fn expected(what: &'static str, scope: &Scope, found: &TyVal) -> Result<TypeError> {
    Ok(TypeError::new(TypeErrorKind::Expected {
        what,
        found: scope.quote_ty(found)?,
    }))
}

/// Returns the codomain `Δ` with `σ : Sub Γ Δ`.
pub fn synth_sub(scope: &Scope, sigma: &Sub) -> Result<Scope> {
    match sigma {
        Sub::Id => Ok(scope.clone()),
        Sub::Comp(s, d) => {
            let mid = synth_sub(scope, d).at("comp.rhs")?;
            synth_sub(&mid, s).at("comp.lhs")
        }
        Sub::Eps => Ok(Scope::empty()),
        Sub::Ext(s, a, t) => {
            let cod = synth_sub(scope, s).at("ext.sub")?;
            let level = infer_ty(&cod, a).at("ext.ty")?;
            let want = eval_ty(&scope.eval_sub(s)?, a)?;
            check_tm(scope, t, &want).at("ext.tm")?;
            cod.extend_unchecked(a.clone(), level)
        }
        Sub::P => scope
            .init()
            .ok_or_else(|| TypeError::new(TypeErrorKind::ProjectionOfEmpty)),
    }
}

/// Checks `t` against a semantic type.
pub fn check_tm(scope: &Scope, t: &Tm, want: &TyVal) -> Result<()> {
    let got = synth_tm(scope, t)?;
    let got = scope.eval_ty(&got)?;
    if scope.conv_tyval(&got, want)? {
        Ok(())
    } else {
        Err(TypeError::new(TypeErrorKind::Mismatch {
            expected: scope.quote_ty(want)?,
            found: scope.quote_ty(&got)?,
        }))
    }
}

/// Returns a type `A` with `t : Tm Γ A`.
pub fn synth_tm(scope: &Scope, t: &Tm) -> Result<Ty> {
    match t {
        Tm::Subst(u, s) => {
            let dom = synth_sub(scope, s).at("tmsub.sub")?;
            let ty = synth_tm(&dom, u).at("tmsub.tm")?;
            Ok(ty.sub(s.clone()))
        }
        Tm::Q => match scope.last_ty() {
            Some(a) => Ok(Ty::Subst(a.clone(), Rc::new(Sub::P))),
            None => Err(TypeError::new(TypeErrorKind::VarInEmptyContext)),
        },
        Tm::Lam(a, body) => {
            let i = infer_ty(scope, a).at("lam.dom")?;
            let ext = scope.extend_unchecked(a.clone(), i)?;
            let b = synth_tm(&ext, body).at("lam.body")?;
            Ok(Ty::Pi(a.clone(), Rc::new(b)))
        }
        Tm::App(f) => {
            let init = scope
                .init()
                .ok_or_else(|| TypeError::new(TypeErrorKind::AppInEmptyContext))?;
            let fty = synth_tm(&init, f).at("app")?;
            match init.eval_ty(&fty)? {
                TyVal::Pi(dom, cod) => {
                    let last = scope.last_ty().expect("nonempty");
                    let lastv = init.eval_ty(last)?;
                    if !init.conv_tyval(&dom, &lastv)? {
                        return Err(TypeError::new(TypeErrorKind::Mismatch {
                            expected: init.quote_ty(&lastv)?,
                            found: init.quote_ty(&dom)?,
                        })
                        .at("app"));
                    }
                    let x = Val::var(init.depth(), (*dom).clone());
                    Ok(quote_ty(scope.depth(), &cod.apply(x)?)?)
                }
                other => Err(expected("a Π-type", &init, &other)?.at("app")),
            }
        }
        Tm::Pair(a, b, u, v) => {
            let i = infer_ty(scope, a).at("pair.fst_ty")?;
            let ext = scope.extend_unchecked(a.clone(), i)?;
            infer_ty(&ext, b).at("pair.snd_ty")?;
            let av = scope.eval_ty(a)?;
            check_tm(scope, u, &av).at("pair.fst")?;
            let uv = scope.eval_tm(u)?;
            let bu = eval_ty(&scope.env.extended(uv), b)?;
            check_tm(scope, v, &bu).at("pair.snd")?;
            Ok(Ty::Sigma(a.clone(), b.clone()))
        }
        Tm::Fst(p) | Tm::Snd(p) => {
            let step = if matches!(t, Tm::Fst(_)) { "fst" } else { "snd" };
            let pty = synth_tm(scope, p).at(step)?;
            match scope.eval_ty(&pty)? {
                TyVal::Sigma(a, b) => {
                    if matches!(t, Tm::Fst(_)) {
                        scope.quote_ty(&a)
                    } else {
                        let first = nbe::do_fst(scope.eval_tm(p)?)?;
                        scope.quote_ty(&b.apply(first)?)
                    }
                }
                other => Err(expected("a Σ-type", scope, &other)?.at(step)),
            }
        }
        Tm::Tt => Ok(Ty::Top),
        Tm::Code(a) => {
            let i = infer_ty(scope, a).at("code")?;
            Ok(Ty::U(i))
        }
        Tm::True | Tm::False => Ok(Ty::Bool),
        Tm::If(c, u, v, b) => {
            let ext = scope.extend_unchecked(Rc::new(Ty::Bool), Level::ZERO)?;
            infer_ty(&ext, c).at("if.motive")?;
            let at = |lit: Val| -> Result<TyVal> { Ok(eval_ty(&scope.env.extended(lit), c)?) };
            check_tm(scope, u, &at(Val::True)?).at("if.true")?;
            check_tm(scope, v, &at(Val::False)?).at("if.false")?;
            check_tm(scope, b, &TyVal::Bool).at("if.scrut")?;
            Ok(Ty::Subst(c.clone(), Rc::new(Sub::inst(Ty::Bool, b.clone()))))
        }
        Tm::Refl(u) => {
            let a = synth_tm(scope, u).at("refl")?;
            Ok(Ty::Id(Rc::new(a), u.clone(), u.clone()))
        }
        Tm::J(c, w, e) => {
            let ety = synth_tm(scope, e).at("j.path")?;
            let (a, u, v) = match scope.eval_ty(&ety)? {
                TyVal::Id(a, u, v) => (
                    scope.quote_ty(&a)?,
                    scope.quote(&u, &a)?,
                    scope.quote(&v, &a)?,
                ),
                other => return Err(expected("an Id-type", scope, &other)?.at("j.path")),
            };
            let path_ty = Ty::id(a.clone().sub(Sub::P), u.clone().sub(Sub::P), Tm::Q);
            let ext = scope.extend(Rc::new(a.clone())).at("j")?;
            let ext = ext.extend(Rc::new(path_ty.clone())).at("j")?;
            infer_ty(&ext, c).at("j.motive")?;
            let base = Sub::ext(Sub::inst(a.clone(), u.clone()), path_ty.clone(), Tm::refl(u));
            let want = scope.eval_ty(&Ty::Subst(c.clone(), Rc::new(base)))?;
            check_tm(scope, w, &want).at("j.refl")?;
            let end = Sub::ext(Sub::inst(a, v), path_ty, e.clone());
            Ok(Ty::Subst(c.clone(), Rc::new(end)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed(t: &Tm) -> Result<Ty> {
        synth_tm(&Scope::empty(), t)
    }

    #[test]
    fn context_levels() {
        assert_eq!(check_ctx(&Ctx::empty()).unwrap(), Level(0));
        assert_eq!(check_ctx(&Ctx::empty().push(Ty::Bool)).unwrap(), Level(0));
        let ctx = Ctx::empty().push(Ty::U(Level(0))).push(Ty::el(Tm::Q));
        assert_eq!(check_ctx(&ctx).unwrap(), Level(1));
    }

    #[test]
    fn ill_formed_entry_is_reported() {
        let ctx = Ctx::empty().push(Ty::Bool).push(Ty::el(Tm::Q));
        match check_ctx(&ctx).unwrap_err().kind {
            TypeErrorKind::IllFormedEntry(1, _) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn type_levels() {
        let s = Scope::empty();
        assert_eq!(infer_ty(&s, &Ty::Bool).unwrap(), Level(0));
        assert_eq!(infer_ty(&s, &Ty::U(Level(0))).unwrap(), Level(1));
        let pi = Ty::pi(Ty::U(Level(0)), Ty::el(Tm::Q));
        assert_eq!(infer_ty(&s, &pi).unwrap(), Level(1));
    }

    #[test]
    fn substitution_codomains() {
        let s = Scope::empty();
        assert!(synth_sub(&s, &Sub::Id).unwrap().ctx().is_empty());
        let sb = Scope::new(&Ctx::empty().push(Ty::Bool)).unwrap();
        assert!(synth_sub(&sb, &Sub::P).unwrap().ctx().is_empty());
        let ext = Sub::ext(Sub::Eps, Ty::Bool, Tm::True);
        assert_eq!(synth_sub(&s, &ext).unwrap().ctx(), &Ctx::empty().push(Ty::Bool));
        assert_eq!(
            synth_sub(&s, &Sub::P).unwrap_err().kind,
            TypeErrorKind::ProjectionOfEmpty
        );
    }

    #[test]
    fn term_types() {
        assert_eq!(closed(&Tm::True).unwrap(), Ty::Bool);
        let sb = Scope::new(&Ctx::empty().push(Ty::Bool)).unwrap();
        assert_eq!(synth_tm(&sb, &Tm::Q).unwrap(), Ty::Bool.sub(Sub::P));
        assert_eq!(closed(&Tm::Q).unwrap_err().kind, TypeErrorKind::VarInEmptyContext);
    }

    #[test]
    fn apply1_synthesizes_codomain() {
        let t = Tm::apply1(Tm::lam(Ty::Bool, Tm::Q), Ty::Bool, Tm::True);
        let ty = closed(&t).unwrap();
        assert!(Scope::empty().conv_ty(&ty, &Ty::Bool).unwrap());
    }

    #[test]
    fn j_result_type() {
        // J (Bool[p][p]) true (refl true) : Bool
        let c = Ty::Bool.sub(Sub::wk(2));
        let t = Tm::j(c, Tm::True, Tm::refl(Tm::True));
        let ty = closed(&t).unwrap();
        assert!(Scope::empty().conv_ty(&ty, &Ty::Bool).unwrap());
    }

    #[test]
    fn mismatch_carries_path() {
        let t = Tm::pair(Ty::Bool, Ty::Bool.sub(Sub::P), Tm::Tt, Tm::True);
        let err = closed(&t).unwrap_err();
        assert_eq!(err.path, vec!["pair.fst"]);
        assert!(matches!(err.kind, TypeErrorKind::Mismatch { .. }));
    }
}
