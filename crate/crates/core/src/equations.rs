//! The equations of the theory as instantiable schemas.
//!
//! Each [`Schema`] names one equation; [`eq_instance`] draws well-typed
//! components for it from a [`Gen`] and returns both sides together with the
//! classifier they are compared at. Checking an instance is a single
//! conversion query, either directly or through the termification.

use std::fmt;

use crate::check::{Scope, TypeError};
use crate::conv::{self, Expr, Kind};
use crate::gen::{Gen, GenConfig, GenError};
use crate::nbe::{TyVal, Val};
use crate::syntax::{size_of, Ctx, Level, Sub, Tm, Ty};

macro_rules! schemas {
    ($($variant:ident => $name:literal,)*) => {
        /// One equation of the theory.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Schema { $($variant,)* }

        impl Schema {
            pub const ALL: &'static [Schema] = &[$(Schema::$variant,)*];

            pub fn name(self) -> &'static str {
                match self { $(Schema::$variant => $name,)* }
            }
        }
    };
}

schemas! {
    Ass => "ass",
    Idl => "idl",
    Idr => "idr",
    TyId => "[id]ty",
    TyComp => "[comp]ty",
    TmId => "[id]tm",
    TmComp => "[comp]tm",
    EmptyEta => "empty-eta",
    ExtBeta1 => "ext-beta1",
    ExtBeta2 => "ext-beta2",
    ExtEta => "ext-eta",
    ExtComp => "ext-comp",
    PiBeta => "pi-beta",
    PiEta => "pi-eta",
    PiSub => "pi[]",
    LamSub => "lam[]",
    SigmaBeta1 => "sigma-beta1",
    SigmaBeta2 => "sigma-beta2",
    SigmaEta => "sigma-eta",
    SigmaSub => "sigma[]",
    PairSub => "pair[]",
    TopEta => "top-eta",
    TopSub => "top[]",
    TtSub => "tt[]",
    UBeta => "u-beta",
    UEta => "u-eta",
    USub => "u[]",
    ElSub => "el[]",
    BoolSub => "bool[]",
    TrueSub => "true[]",
    FalseSub => "false[]",
    IfSub => "if[]",
    BoolBeta1 => "bool-beta1",
    BoolBeta2 => "bool-beta2",
    IdBeta => "id-beta",
    IdSub => "id[]",
    ReflSub => "refl[]",
    JSub => "j[]",
}

impl Schema {
    pub fn from_name(name: &str) -> Option<Schema> {
        Schema::ALL.iter().copied().find(|s| s.name() == name)
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Both sides of one instance of a schema, in a context, at a classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqInstance {
    pub schema: Schema,
    pub ctx: Ctx,
    pub kind: Kind,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl EqInstance {
    /// Decides the instance by conversion.
    pub fn check(&self) -> Result<bool, TypeError> {
        conv::conv(&self.ctx, &self.kind, &self.lhs, &self.rhs)
    }

    /// Decides the instance on the termified sides, as closed terms.
    pub fn check_termified(&self) -> Result<bool, TypeError> {
        crate::termify::verify_termified_equation(&self.ctx, &self.kind, &self.lhs, &self.rhs)
    }

    /// Operator count of the context and both sides.
    pub fn size(&self) -> usize {
        let side = |e: &Expr| match e {
            Expr::Ty(t) => size_of(t),
            Expr::Sub(s) => size_of(s),
            Expr::Tm(t) => size_of(t),
        };
        size_of(&self.ctx) + side(&self.lhs) + side(&self.rhs)
    }
}

impl fmt::Display for EqInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |e: &Expr| match e {
            Expr::Ty(t) => t.to_string(),
            Expr::Sub(s) => s.to_string(),
            Expr::Tm(t) => t.to_string(),
        };
        let kind = match &self.kind {
            Kind::Ty => "type".to_string(),
            Kind::Sub(cod) => format!("sub into {cod}"),
            Kind::Tm(ty) => format!("term of {ty}"),
        };
        write!(
            f,
            "{}: in {}\n  at  {}\n  lhs {}\n  rhs {}",
            self.schema,
            self.ctx,
            kind,
            side(&self.lhs),
            side(&self.rhs)
        )
    }
}

const ATTEMPTS: usize = 64;

/// Draws one instance of `schema`. Component draws that hit an
/// uninhabited goal are retried with fresh choices.
pub fn eq_instance(gen: &mut Gen, schema: Schema) -> Result<EqInstance, GenError> {
    let mut last = GenError::GenExhausted;
    for _ in 0..ATTEMPTS {
        match draw(gen, schema) {
            Ok(inst) => return Ok(inst),
            Err(GenError::GenExhausted) => last = GenError::GenExhausted,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn tm(t: Tm) -> Expr {
    Expr::Tm(t)
}

fn ty(t: Ty) -> Expr {
    Expr::Ty(t)
}

fn sub(s: Sub) -> Expr {
    Expr::Sub(s)
}

/// A context variable of some identity type, with its type's components.
fn path_var(ctx: &Ctx) -> Result<Option<(Ty, Tm, Tm, Tm)>, GenError> {
    let scope = Scope::new(ctx)?;
    for k in 0..ctx.len() {
        if let Val::Neutral(_, t) = scope.env().get(ctx.len() - 1 - k) {
            if let TyVal::Id(a, u, v) = t.as_ref() {
                return Ok(Some((
                    scope.quote_ty(a)?,
                    scope.quote(u, a)?,
                    scope.quote(v, a)?,
                    Tm::var(k),
                )));
            }
        }
    }
    Ok(None)
}

/// An identity type `Id A u v` of `ctx` with an inhabitant.
fn path(gen: &mut Gen, ctx: &Ctx) -> Result<(Ty, Tm, Tm, Tm), GenError> {
    if gen_chance(gen, 0.5) {
        if let Some(found) = path_var(ctx)? {
            return Ok(found);
        }
    }
    let (a, _) = gen.gen_ty(ctx)?;
    let u = gen.gen_tm(ctx, &a)?;
    let e = gen.gen_tm(ctx, &Ty::id(a.clone(), u.clone(), u.clone()))?;
    Ok((a, u.clone(), u, e))
}

fn gen_chance(gen: &mut Gen, p: f64) -> bool {
    use rand::Rng;
    gen.rng().gen_bool(p)
}

fn level(gen: &mut Gen) -> Level {
    use rand::Rng;
    let max = gen.config().max_level;
    Level(gen.rng().gen_range(0..max.max(1)))
}

fn draw(gen: &mut Gen, schema: Schema) -> Result<EqInstance, GenError> {
    use Schema as S;
    let ctx = gen.gen_ctx()?;
    let g = &ctx;
    let (kind, lhs, rhs, ctx) = match schema {
        S::Ass => {
            let (nu, psi) = gen.gen_sub(g)?;
            let (delta, theta) = gen.gen_sub(&psi)?;
            let (sigma, delta_ctx) = gen.gen_sub(&theta)?;
            (
                Kind::Sub(delta_ctx),
                sub(Sub::comp(Sub::comp(sigma.clone(), delta.clone()), nu.clone())),
                sub(Sub::comp(sigma, Sub::comp(delta, nu))),
                ctx,
            )
        }
        S::Idl | S::Idr => {
            let (sigma, cod) = gen.gen_sub(g)?;
            let lhs = if schema == S::Idl {
                Sub::comp(Sub::Id, sigma.clone())
            } else {
                Sub::comp(sigma.clone(), Sub::Id)
            };
            (Kind::Sub(cod), sub(lhs), sub(sigma), ctx)
        }
        S::TyId => {
            let (a, _) = gen.gen_ty(g)?;
            (Kind::Ty, ty(a.clone().sub(Sub::Id)), ty(a), ctx)
        }
        S::TyComp => {
            let (delta, theta) = gen.gen_sub(g)?;
            let (sigma, cod) = gen.gen_sub(&theta)?;
            let (a, _) = gen.gen_ty(&cod)?;
            (
                Kind::Ty,
                ty(a.clone().sub(Sub::comp(sigma.clone(), delta.clone()))),
                ty(a.sub(sigma).sub(delta)),
                ctx,
            )
        }
        S::TmId => {
            let (t, a) = gen.gen_tm_any(g)?;
            (Kind::Tm(a), tm(t.clone().sub(Sub::Id)), tm(t), ctx)
        }
        S::TmComp => {
            let (delta, theta) = gen.gen_sub(g)?;
            let (sigma, cod) = gen.gen_sub(&theta)?;
            let (t, a) = gen.gen_tm_any(&cod)?;
            let both = Sub::comp(sigma.clone(), delta.clone());
            (
                Kind::Tm(a.sub(both.clone())),
                tm(t.clone().sub(both)),
                tm(t.sub(sigma).sub(delta)),
                ctx,
            )
        }
        S::EmptyEta => {
            let sigma = gen.gen_sub_to(g, &Ctx::empty())?;
            (Kind::Sub(Ctx::empty()), sub(sigma), sub(Sub::Eps), ctx)
        }
        S::ExtBeta1 | S::ExtBeta2 => {
            let (sigma, cod) = gen.gen_sub(g)?;
            let (a, _) = gen.gen_ty(&cod)?;
            let t = gen.gen_tm(g, &a.clone().sub(sigma.clone()))?;
            let ext = Sub::ext(sigma.clone(), a.clone(), t.clone());
            if schema == S::ExtBeta1 {
                (Kind::Sub(cod), sub(Sub::comp(Sub::P, ext)), sub(sigma), ctx)
            } else {
                (Kind::Tm(a.sub(sigma)), tm(Tm::Q.sub(ext)), tm(t), ctx)
            }
        }
        S::ExtEta => {
            let (a, _) = gen.gen_ty(g)?;
            let ext = ctx.push(a.clone());
            (
                Kind::Sub(ext.clone()),
                sub(Sub::ext(Sub::P, a, Tm::Q)),
                sub(Sub::Id),
                ext,
            )
        }
        S::ExtComp => {
            let (nu, theta) = gen.gen_sub(g)?;
            let (sigma, delta) = gen.gen_sub(&theta)?;
            let (a, _) = gen.gen_ty(&delta)?;
            let t = gen.gen_tm(&theta, &a.clone().sub(sigma.clone()))?;
            (
                Kind::Sub(delta.push(a.clone())),
                sub(Sub::comp(Sub::ext(sigma.clone(), a.clone(), t.clone()), nu.clone())),
                sub(Sub::ext(Sub::comp(sigma, nu.clone()), a, t.sub(nu))),
                ctx,
            )
        }
        S::PiBeta => {
            let (a, _) = gen.gen_ty(g)?;
            let ext = ctx.push(a.clone());
            let (t, b) = gen.gen_tm_any(&ext)?;
            (Kind::Tm(b), tm(Tm::app(Tm::lam(a, t.clone()))), tm(t), ext)
        }
        S::PiEta => {
            let (a, _) = gen.gen_ty(g)?;
            let (b, _) = gen.gen_ty(&ctx.push(a.clone()))?;
            let pi = Ty::pi(a.clone(), b);
            let t = gen.gen_tm(g, &pi)?;
            (Kind::Tm(pi), tm(Tm::lam(a, Tm::app(t.clone()))), tm(t), ctx)
        }
        S::PiSub | S::SigmaSub => {
            let (sigma, delta) = gen.gen_sub(g)?;
            let (a, _) = gen.gen_ty(&delta)?;
            let (b, _) = gen.gen_ty(&delta.push(a.clone()))?;
            let lifted = Sub::lift(sigma.clone(), a.clone());
            let (lhs, rhs) = if schema == S::PiSub {
                (
                    Ty::pi(a.clone(), b.clone()).sub(sigma.clone()),
                    Ty::pi(a.sub(sigma), b.sub(lifted)),
                )
            } else {
                (
                    Ty::sigma(a.clone(), b.clone()).sub(sigma.clone()),
                    Ty::sigma(a.sub(sigma), b.sub(lifted)),
                )
            };
            (Kind::Ty, ty(lhs), ty(rhs), ctx)
        }
        S::LamSub => {
            let (sigma, delta) = gen.gen_sub(g)?;
            let (a, _) = gen.gen_ty(&delta)?;
            let (t, b) = gen.gen_tm_any(&delta.push(a.clone()))?;
            let lifted = Sub::lift(sigma.clone(), a.clone());
            (
                Kind::Tm(Ty::pi(a.clone(), b).sub(sigma.clone())),
                tm(Tm::lam(a.clone(), t.clone()).sub(sigma.clone())),
                tm(Tm::lam(a.sub(sigma), t.sub(lifted))),
                ctx,
            )
        }
        S::SigmaBeta1 | S::SigmaBeta2 | S::PairSub => {
            let (sigma, delta) = match schema {
                S::PairSub => gen.gen_sub(g)?,
                _ => (Sub::Id, ctx.clone()),
            };
            let (a, _) = gen.gen_ty(&delta)?;
            let (b, _) = gen.gen_ty(&delta.push(a.clone()))?;
            let u = gen.gen_tm(&delta, &a)?;
            let v = gen.gen_tm(&delta, &b.clone().sub(Sub::inst(a.clone(), u.clone())))?;
            let pair = Tm::pair(a.clone(), b.clone(), u.clone(), v.clone());
            match schema {
                S::SigmaBeta1 => (Kind::Tm(a), tm(Tm::fst(pair)), tm(u), ctx),
                S::SigmaBeta2 => (
                    Kind::Tm(b.sub(Sub::inst(a, u))),
                    tm(Tm::snd(pair)),
                    tm(v),
                    ctx,
                ),
                _ => {
                    let lifted = Sub::lift(sigma.clone(), a.clone());
                    (
                        Kind::Tm(Ty::sigma(a.clone(), b.clone()).sub(sigma.clone())),
                        tm(pair.sub(sigma.clone())),
                        tm(Tm::pair(
                            a.sub(sigma.clone()),
                            b.sub(lifted),
                            u.sub(sigma.clone()),
                            v.sub(sigma),
                        )),
                        ctx,
                    )
                }
            }
        }
        S::SigmaEta => {
            let (a, _) = gen.gen_ty(g)?;
            let (b, _) = gen.gen_ty(&ctx.push(a.clone()))?;
            let sig = Ty::sigma(a.clone(), b.clone());
            let t = gen.gen_tm(g, &sig)?;
            (
                Kind::Tm(sig),
                tm(Tm::pair(a, b, Tm::fst(t.clone()), Tm::snd(t.clone()))),
                tm(t),
                ctx,
            )
        }
        S::TopEta => {
            let t = gen.gen_tm(g, &Ty::Top)?;
            (Kind::Tm(Ty::Top), tm(t), tm(Tm::Tt), ctx)
        }
        S::TopSub | S::BoolSub | S::USub => {
            let (sigma, _) = gen.gen_sub(g)?;
            let base = match schema {
                S::TopSub => Ty::Top,
                S::BoolSub => Ty::Bool,
                _ => Ty::U(level(gen)),
            };
            (Kind::Ty, ty(base.clone().sub(sigma)), ty(base), ctx)
        }
        S::TtSub | S::TrueSub | S::FalseSub => {
            let (sigma, _) = gen.gen_sub(g)?;
            let (base, at) = match schema {
                S::TtSub => (Tm::Tt, Ty::Top),
                S::TrueSub => (Tm::True, Ty::Bool),
                _ => (Tm::False, Ty::Bool),
            };
            (Kind::Tm(at), tm(base.clone().sub(sigma)), tm(base), ctx)
        }
        S::UBeta => {
            let (a, _) = gen.gen_ty(g)?;
            (Kind::Ty, ty(Ty::el(Tm::code(a.clone()))), ty(a), ctx)
        }
        S::UEta => {
            let u = Ty::U(level(gen));
            let a = gen.gen_tm(g, &u)?;
            (Kind::Tm(u), tm(Tm::code(Ty::el(a.clone()))), tm(a), ctx)
        }
        S::ElSub => {
            let (sigma, delta) = gen.gen_sub(g)?;
            let u = Ty::U(level(gen));
            let a = gen.gen_tm(&delta, &u)?;
            (
                Kind::Ty,
                ty(Ty::el(a.clone()).sub(sigma.clone())),
                ty(Ty::el(a.sub(sigma))),
                ctx,
            )
        }
        S::IfSub | S::BoolBeta1 | S::BoolBeta2 => {
            let (sigma, delta) = match schema {
                S::IfSub => gen.gen_sub(g)?,
                _ => (Sub::Id, ctx.clone()),
            };
            let (c, _) = gen.gen_ty(&delta.push(Ty::Bool))?;
            let at = |b: Tm| c.clone().sub(Sub::inst(Ty::Bool, b));
            let u = gen.gen_tm(&delta, &at(Tm::True))?;
            let v = gen.gen_tm(&delta, &at(Tm::False))?;
            match schema {
                S::BoolBeta1 => (
                    Kind::Tm(at(Tm::True)),
                    tm(Tm::ite(c.clone(), u.clone(), v, Tm::True)),
                    tm(u),
                    ctx,
                ),
                S::BoolBeta2 => (
                    Kind::Tm(at(Tm::False)),
                    tm(Tm::ite(c.clone(), u, v.clone(), Tm::False)),
                    tm(v),
                    ctx,
                ),
                _ => {
                    let b = gen.gen_tm(&delta, &Ty::Bool)?;
                    let lifted = Sub::lift(sigma.clone(), Ty::Bool);
                    (
                        Kind::Tm(at(b.clone()).sub(sigma.clone())),
                        tm(Tm::ite(c.clone(), u.clone(), v.clone(), b.clone()).sub(sigma.clone())),
                        tm(Tm::ite(
                            c.sub(lifted),
                            u.sub(sigma.clone()),
                            v.sub(sigma.clone()),
                            b.sub(sigma),
                        )),
                        ctx,
                    )
                }
            }
        }
        S::IdSub => {
            let (sigma, delta) = gen.gen_sub(g)?;
            let (a, _) = gen.gen_ty(&delta)?;
            let u = gen.gen_tm(&delta, &a)?;
            let v = gen.gen_tm(&delta, &a)?;
            (
                Kind::Ty,
                ty(Ty::id(a.clone(), u.clone(), v.clone()).sub(sigma.clone())),
                ty(Ty::id(a.sub(sigma.clone()), u.sub(sigma.clone()), v.sub(sigma))),
                ctx,
            )
        }
        S::ReflSub => {
            let (sigma, delta) = gen.gen_sub(g)?;
            let (u, a) = gen.gen_tm_any(&delta)?;
            (
                Kind::Tm(Ty::id(a, u.clone(), u.clone()).sub(sigma.clone())),
                tm(Tm::refl(u.clone()).sub(sigma.clone())),
                tm(Tm::refl(u.sub(sigma))),
                ctx,
            )
        }
        S::IdBeta | S::JSub => {
            let (sigma, delta) = match schema {
                S::JSub => gen.gen_sub(g)?,
                _ => (Sub::Id, ctx.clone()),
            };
            let (a, u, v, e) = match schema {
                S::JSub => path(gen, &delta)?,
                _ => {
                    let (a, _) = gen.gen_ty(&delta)?;
                    let u = gen.gen_tm(&delta, &a)?;
                    (a, u.clone(), u.clone(), Tm::refl(u))
                }
            };
            let motive_ctx = delta
                .push(a.clone())
                .push(Ty::id(a.clone().sub(Sub::P), u.clone().sub(Sub::P), Tm::Q));
            let (c, _) = gen.gen_ty(&motive_ctx)?;
            let point = |end: Tm, p: Tm| {
                Sub::ext(
                    Sub::ext(Sub::Id, a.clone(), end),
                    Ty::id(a.clone().sub(Sub::P), u.clone().sub(Sub::P), Tm::Q),
                    p,
                )
            };
            let w = gen.gen_tm(&delta, &c.clone().sub(point(u.clone(), Tm::refl(u.clone()))))?;
            let result = c.clone().sub(point(v, e.clone()));
            if schema == S::IdBeta {
                (Kind::Tm(result), tm(Tm::j(c, w.clone(), e)), tm(w), ctx)
            } else {
                let lifted = Sub::lift(
                    Sub::lift(sigma.clone(), a.clone()),
                    Ty::id(a.sub(Sub::P), u.sub(Sub::P), Tm::Q),
                );
                (
                    Kind::Tm(result.sub(sigma.clone())),
                    tm(Tm::j(c.clone(), w.clone(), e.clone()).sub(sigma.clone())),
                    tm(Tm::j(c.sub(lifted), w.sub(sigma.clone()), e.sub(sigma))),
                    ctx,
                )
            }
        }
    };
    Ok(EqInstance {
        schema,
        ctx,
        kind,
        lhs,
        rhs,
    })
}

/// Searches for a smaller failing instance by regenerating with smaller
/// size bounds; returns the smallest failure found, or `None` if no
/// smaller instance fails.
pub fn shrink(
    base: &GenConfig,
    schema: Schema,
    fails: &dyn Fn(&EqInstance) -> bool,
    tries_per_size: u64,
) -> Option<EqInstance> {
    let mut best: Option<EqInstance> = None;
    for max_nodes in 1..=base.max_nodes {
        for max_ctx_len in 0..=base.max_ctx_len {
            for k in 0..tries_per_size {
                let cfg = GenConfig {
                    seed: base.seed.wrapping_mul(31).wrapping_add(k),
                    max_nodes,
                    max_ctx_len,
                    ..*base
                };
                let mut gen = Gen::new(cfg);
                let Ok(inst) = eq_instance(&mut gen, schema) else {
                    continue;
                };
                if fails(&inst) && best.as_ref().is_none_or(|b| inst.size() < b.size()) {
                    best = Some(inst);
                }
            }
            if best.is_some() {
                return best;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirty_eight_distinct_schemas() {
        assert_eq!(Schema::ALL.len(), 38);
        let mut names: Vec<_> = Schema::ALL.iter().map(|s| s.name()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 38);
        assert_eq!(Schema::from_name("j[]"), Some(Schema::JSub));
    }

    #[test]
    fn every_schema_instantiates_and_holds() {
        for &schema in Schema::ALL {
            let mut gen = Gen::new(GenConfig {
                seed: 17,
                ..GenConfig::default()
            });
            for _ in 0..10 {
                let inst = eq_instance(&mut gen, schema).unwrap();
                assert!(inst.check().unwrap(), "{inst}");
            }
        }
    }

    #[test]
    fn every_schema_holds_termified() {
        for &schema in Schema::ALL {
            let mut gen = Gen::new(GenConfig {
                seed: 3,
                ..GenConfig::default()
            });
            for _ in 0..3 {
                let inst = eq_instance(&mut gen, schema).unwrap();
                assert!(inst.check_termified().unwrap(), "{inst}");
            }
        }
    }

    #[test]
    fn shrinking_finds_small_failures() {
        // A deliberately wrong oracle: claim every instance with a
        // non-empty context fails.
        let cfg = GenConfig {
            seed: 4,
            ..GenConfig::default()
        };
        let found = shrink(&cfg, Schema::Idl, &|i: &EqInstance| !i.ctx.is_empty(), 4).unwrap();
        assert_eq!(found.ctx.len(), 1);
    }
}
