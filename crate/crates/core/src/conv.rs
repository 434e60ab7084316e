//! Definitional equality.
//!
//! Both sides are evaluated in the generic environment of the context and
//! read back at their classifier; conversion is syntactic equality of the
//! resulting βη-long normal forms. Substitutions are compared componentwise
//! after η-expansion into one component per codomain entry.

use crate::check::{self, ctx_conv, infer_ty, synth_sub, synth_tm, Scope, TypeError, TypeErrorKind};
use crate::nbe::{eval_ty, quote, Env};
use crate::syntax::{Ctx, Sub, Tm, Ty};

type Result<T> = std::result::Result<T, TypeError>;

/// The classifier a conversion query is asked at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Tm(Ty),
    Ty,
    Sub(Ctx),
}

/// βη-normal form of a term, read back at its synthesized type.
pub fn normalize(ctx: &Ctx, t: &Tm) -> Result<Tm> {
    let scope = Scope::new(ctx)?;
    normalize_in(&scope, t)
}

pub fn normalize_in(scope: &Scope, t: &Tm) -> Result<Tm> {
    let ty = synth_tm(scope, t)?;
    let tv = scope.eval_ty(&ty)?;
    scope.quote(&scope.eval_tm(t)?, &tv)
}

pub fn normalize_ty(ctx: &Ctx, ty: &Ty) -> Result<Ty> {
    let scope = Scope::new(ctx)?;
    normalize_ty_in(&scope, ty)
}

pub fn normalize_ty_in(scope: &Scope, ty: &Ty) -> Result<Ty> {
    infer_ty(scope, ty)?;
    scope.quote_ty(&scope.eval_ty(ty)?)
}

/// η-expanded normal form of a substitution: one normal term per codomain
/// entry.
pub fn normalize_sub_in(scope: &Scope, sigma: &Sub) -> Result<Vec<Tm>> {
    let cod = synth_sub(scope, sigma)?;
    sub_components(scope, &cod, &scope.eval_sub(sigma)?)
}

fn sub_components(scope: &Scope, cod: &Scope, env: &Env) -> Result<Vec<Tm>> {
    let mut prefix = Env::empty();
    let mut out = Vec::with_capacity(env.len());
    for (k, entry) in cod.ctx().entries().iter().enumerate() {
        let ty = eval_ty(&prefix, entry)?;
        let v = env.get(k);
        out.push(quote(scope.depth(), v, &ty)?);
        prefix.push(v.clone());
    }
    Ok(out)
}

pub fn conv_tm(ctx: &Ctx, ty: &Ty, lhs: &Tm, rhs: &Tm) -> Result<bool> {
    conv_tm_in(&Scope::new(ctx)?, ty, lhs, rhs)
}

/// Checks both sides against `ty`, then compares normal forms at `ty`.
pub fn conv_tm_in(scope: &Scope, ty: &Ty, lhs: &Tm, rhs: &Tm) -> Result<bool> {
    infer_ty(scope, ty)?;
    let tv = scope.eval_ty(ty)?;
    check::check_tm(scope, lhs, &tv)?;
    check::check_tm(scope, rhs, &tv)?;
    Ok(scope.quote(&scope.eval_tm(lhs)?, &tv)? == scope.quote(&scope.eval_tm(rhs)?, &tv)?)
}

pub fn conv_ty(ctx: &Ctx, lhs: &Ty, rhs: &Ty) -> Result<bool> {
    conv_ty_in(&Scope::new(ctx)?, lhs, rhs)
}

/// Both sides must be well-formed at the same level.
pub fn conv_ty_in(scope: &Scope, lhs: &Ty, rhs: &Ty) -> Result<bool> {
    let i = infer_ty(scope, lhs)?;
    let j = infer_ty(scope, rhs)?;
    if i != j {
        return Ok(false);
    }
    scope.conv_ty(lhs, rhs)
}

pub fn conv_sub(ctx: &Ctx, cod: &Ctx, lhs: &Sub, rhs: &Sub) -> Result<bool> {
    conv_sub_in(&Scope::new(ctx)?, cod, lhs, rhs)
}

pub fn conv_sub_in(scope: &Scope, cod: &Ctx, lhs: &Sub, rhs: &Sub) -> Result<bool> {
    let want = Scope::new(cod)?;
    for side in [lhs, rhs] {
        let got = synth_sub(scope, side)?;
        if !ctx_conv(&want, &got)? {
            return Err(TypeError {
                kind: TypeErrorKind::CtxMismatch {
                    expected: cod.clone(),
                    found: got.ctx().clone(),
                },
                path: vec![],
            });
        }
    }
    let l = sub_components(scope, &want, &scope.eval_sub(lhs)?)?;
    let r = sub_components(scope, &want, &scope.eval_sub(rhs)?)?;
    Ok(l == r)
}

/// Dispatches on the classifier.
pub fn conv(ctx: &Ctx, kind: &Kind, lhs: &Expr, rhs: &Expr) -> Result<bool> {
    match (kind, lhs, rhs) {
        (Kind::Tm(ty), Expr::Tm(a), Expr::Tm(b)) => conv_tm(ctx, ty, a, b),
        (Kind::Ty, Expr::Ty(a), Expr::Ty(b)) => conv_ty(ctx, a, b),
        (Kind::Sub(cod), Expr::Sub(a), Expr::Sub(b)) => conv_sub(ctx, cod, a, b),
        _ => Err(TypeError {
            kind: TypeErrorKind::Expected {
                what: "both sides of the sort named by the classifier",
                found: Ty::Top,
            },
            path: vec!["conv"],
        }),
    }
}

/// An expression of any of the three non-context sorts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Ty(Ty),
    Sub(Sub),
    Tm(Tm),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Level;

    fn bool_motive() -> Ty {
        Ty::Bool.sub(Sub::P)
    }

    #[test]
    fn normalize_examples() {
        let e = Ctx::empty();
        assert_eq!(normalize(&e, &Tm::True.sub(Sub::Eps)).unwrap(), Tm::True);
        let b = Ctx::empty().push(Ty::Bool);
        assert_eq!(normalize(&b, &Tm::Q).unwrap(), Tm::Q);
        let t = Tm::True.sub(Sub::Id).sub(Sub::Id);
        assert_eq!(normalize(&e, &t).unwrap(), Tm::True);
    }

    #[test]
    fn bool_beta_true() {
        let t = Tm::ite(bool_motive(), Tm::True, Tm::False, Tm::True);
        assert!(conv_tm(&Ctx::empty(), &Ty::Bool, &t, &Tm::True).unwrap());
    }

    #[test]
    fn extensionally_equal_functions_are_distinct() {
        let f = Tm::lam(Ty::Bool, Tm::ite(bool_motive().sub(Sub::P), Tm::True, Tm::False, Tm::Q));
        let g = Tm::lam(Ty::Bool, Tm::Q);
        let pi = Ty::pi(Ty::Bool, Ty::Bool.sub(Sub::P));
        assert!(!conv_tm(&Ctx::empty(), &pi, &f, &g).unwrap());
    }

    #[test]
    fn neutral_bool_is_not_a_literal() {
        let b = Ctx::empty().push(Ty::Bool);
        let ty = Ty::Bool.sub(Sub::P);
        assert!(!conv_tm(&b, &ty, &Tm::Q, &Tm::True).unwrap());
        assert!(!conv_tm(&b, &ty, &Tm::Q, &Tm::False).unwrap());
    }

    #[test]
    fn top_eta() {
        let ctx = Ctx::empty().push(Ty::Top);
        assert!(conv_tm(&ctx, &Ty::Top, &Tm::Q, &Tm::Tt).unwrap());
    }

    #[test]
    fn idl_on_p() {
        let ctx = Ctx::empty().push(Ty::Bool);
        let lhs = Sub::comp(Sub::Id, Sub::P);
        assert!(conv_sub(&ctx, &Ctx::empty(), &lhs, &Sub::P).unwrap());
    }

    #[test]
    fn empty_eta() {
        let ctx = Ctx::empty().push(Ty::Bool).push(Ty::U(Level(0)));
        let sigma = Sub::comp(Sub::P, Sub::P);
        assert!(conv_sub(&ctx, &Ctx::empty(), &sigma, &Sub::Eps).unwrap());
    }

    #[test]
    fn ext_eta() {
        let ctx = Ctx::empty().push(Ty::Bool);
        let pq = Sub::ext(Sub::P, Ty::Bool, Tm::Q);
        assert!(conv_sub(&ctx, &ctx, &pq, &Sub::Id).unwrap());
        let pt = Sub::ext(Sub::P, Ty::Bool, Tm::True);
        assert!(!conv_sub(&ctx, &ctx, &pt, &Sub::Id).unwrap());
    }

    #[test]
    fn universe_roundtrips() {
        let ctx = Ctx::empty().push(Ty::U(Level(0)));
        let a = Tm::Q;
        let u = Ty::U(Level(0)).sub(Sub::P);
        assert!(conv_tm(&ctx, &u, &Tm::code(Ty::el(a.clone())), &a).unwrap());
        assert!(conv_ty(&Ctx::empty(), &Ty::el(Tm::code(Ty::Bool)), &Ty::Bool).unwrap());
    }

    #[test]
    fn ill_typed_sides_error() {
        let e = Ctx::empty();
        assert!(conv_tm(&e, &Ty::Bool, &Tm::Tt, &Tm::True).is_err());
    }
}
