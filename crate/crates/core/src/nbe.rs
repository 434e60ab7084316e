//! Normalization by evaluation.
//!
//! Terms evaluate into a semantic domain where every β-rule and every
//! substitution law has already fired; readback then produces βη-long
//! normal forms. Contexts are interpreted as environments, substitutions as
//! environment transformers, types as semantic types whose binders are
//! closures. Variables are absolute levels during evaluation and become
//! `q[pⁿ]` spines again at readback.

use std::rc::Rc;

use thiserror::Error;

use crate::syntax::{Level, Sub, Tm, Ty};

/// Evaluation got stuck on a value that is neither canonical nor neutral.
///
/// Never produced for well-typed input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("internal evaluation error: {0}")]
pub struct InternalStuck(pub String);

fn stuck<T>(msg: impl Into<String>) -> Result<T, InternalStuck> {
    Err(InternalStuck(msg.into()))
}

/// A point of an interpreted context, one value per telescope entry.
#[derive(Clone, Debug, Default)]
pub struct Env(Vec<Val>);

impl Env {
    pub fn empty() -> Env {
        Env(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, v: Val) {
        self.0.push(v);
    }

    pub fn extended(&self, v: Val) -> Env {
        let mut env = self.clone();
        env.push(v);
        env
    }

    pub fn get(&self, level: usize) -> &Val {
        &self.0[level]
    }

    pub fn values(&self) -> &[Val] {
        &self.0
    }

    fn split_last(&self) -> Result<(Env, &Val), InternalStuck> {
        match self.0.split_last() {
            Some((last, init)) => Ok((Env(init.to_vec()), last)),
            None => stuck("projection out of the empty environment"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub env: Env,
    pub body: Rc<Tm>,
}

impl Closure {
    pub fn apply(&self, arg: Val) -> Result<Val, InternalStuck> {
        eval_tm(&self.env.extended(arg), &self.body)
    }
}

/// A type with one or more pending binders.
#[derive(Clone, Debug)]
pub struct TyClosure {
    pub env: Env,
    pub body: Rc<Ty>,
}

impl TyClosure {
    pub fn apply(&self, arg: Val) -> Result<TyVal, InternalStuck> {
        eval_ty(&self.env.extended(arg), &self.body)
    }

    pub fn apply2(&self, a: Val, b: Val) -> Result<TyVal, InternalStuck> {
        let mut env = self.env.clone();
        env.push(a);
        env.push(b);
        eval_ty(&env, &self.body)
    }
}

/// Semantic values.
#[derive(Clone, Debug)]
pub enum Val {
    Lam(Closure),
    Pair(Rc<Val>, Rc<Val>),
    Tt,
    True,
    False,
    Refl(Rc<Val>),
    Code(Rc<TyVal>),
    /// A stuck computation together with its type.
    Neutral(Rc<Neutral>, Rc<TyVal>),
}

/// Semantic types. `El` of a canonical code never appears: decoding a
/// `Code` returns the coded type directly.
#[derive(Clone, Debug)]
pub enum TyVal {
    Pi(Rc<TyVal>, TyClosure),
    Sigma(Rc<TyVal>, TyClosure),
    Top,
    Bool,
    U(Level),
    Id(Rc<TyVal>, Rc<Val>, Rc<Val>),
    /// Decoding of a neutral code of the given universe.
    ElNe(Rc<Neutral>, Level),
}

/// Eliminator spines rooted at a variable level.
#[derive(Clone, Debug)]
pub enum Neutral {
    Var(usize),
    App {
        head: Rc<Neutral>,
        arg: Val,
        dom: Rc<TyVal>,
    },
    Fst(Rc<Neutral>),
    Snd(Rc<Neutral>),
    If {
        motive: TyClosure,
        on_true: Val,
        on_false: Val,
        scrut: Rc<Neutral>,
    },
    J {
        dom: Rc<TyVal>,
        base: Val,
        motive: TyClosure,
        refl_case: Val,
        scrut: Rc<Neutral>,
    },
}

impl Val {
    pub fn var(level: usize, ty: TyVal) -> Val {
        Val::Neutral(Rc::new(Neutral::Var(level)), Rc::new(ty))
    }

    fn neutral(ne: Neutral, ty: TyVal) -> Val {
        Val::Neutral(Rc::new(ne), Rc::new(ty))
    }
}

pub fn eval_sub(env: &Env, sigma: &Sub) -> Result<Env, InternalStuck> {
    match sigma {
        Sub::Id => Ok(env.clone()),
        Sub::Comp(s, d) => eval_sub(&eval_sub(env, d)?, s),
        Sub::Eps => Ok(Env::empty()),
        Sub::Ext(s, _, t) => {
            let mut out = eval_sub(env, s)?;
            out.push(eval_tm(env, t)?);
            Ok(out)
        }
        Sub::P => Ok(env.split_last()?.0),
    }
}

pub fn eval_ty(env: &Env, ty: &Ty) -> Result<TyVal, InternalStuck> {
    match ty {
        Ty::Subst(a, s) => eval_ty(&eval_sub(env, s)?, a),
        Ty::Pi(a, b) => Ok(TyVal::Pi(
            Rc::new(eval_ty(env, a)?),
            TyClosure {
                env: env.clone(),
                body: b.clone(),
            },
        )),
        Ty::Sigma(a, b) => Ok(TyVal::Sigma(
            Rc::new(eval_ty(env, a)?),
            TyClosure {
                env: env.clone(),
                body: b.clone(),
            },
        )),
        Ty::Top => Ok(TyVal::Top),
        Ty::Bool => Ok(TyVal::Bool),
        Ty::U(i) => Ok(TyVal::U(*i)),
        Ty::El(a) => do_el(eval_tm(env, a)?),
        Ty::Id(a, u, v) => Ok(TyVal::Id(
            Rc::new(eval_ty(env, a)?),
            Rc::new(eval_tm(env, u)?),
            Rc::new(eval_tm(env, v)?),
        )),
    }
}

pub fn eval_tm(env: &Env, tm: &Tm) -> Result<Val, InternalStuck> {
    match tm {
        Tm::Subst(t, s) => eval_tm(&eval_sub(env, s)?, t),
        Tm::Q => match env.values().last() {
            Some(v) => Ok(v.clone()),
            None => stuck("q in the empty environment"),
        },
        Tm::Lam(_, body) => Ok(Val::Lam(Closure {
            env: env.clone(),
            body: body.clone(),
        })),
        Tm::App(t) => {
            let (init, last) = env.split_last()?;
            do_app(eval_tm(&init, t)?, last.clone())
        }
        Tm::Pair(_, _, u, v) => Ok(Val::Pair(
            Rc::new(eval_tm(env, u)?),
            Rc::new(eval_tm(env, v)?),
        )),
        Tm::Fst(t) => do_fst(eval_tm(env, t)?),
        Tm::Snd(t) => do_snd(eval_tm(env, t)?),
        Tm::Tt => Ok(Val::Tt),
        Tm::Code(a) => do_code(eval_ty(env, a)?),
        Tm::True => Ok(Val::True),
        Tm::False => Ok(Val::False),
        Tm::If(c, u, v, t) => {
            let motive = TyClosure {
                env: env.clone(),
                body: c.clone(),
            };
            match eval_tm(env, t)? {
                Val::True => eval_tm(env, u),
                Val::False => eval_tm(env, v),
                Val::Neutral(ne, _) => {
                    let ty = motive.apply(Val::Neutral(ne.clone(), Rc::new(TyVal::Bool)))?;
                    Ok(Val::neutral(
                        Neutral::If {
                            motive,
                            on_true: eval_tm(env, u)?,
                            on_false: eval_tm(env, v)?,
                            scrut: ne,
                        },
                        ty,
                    ))
                }
                other => stuck(format!("if on non-boolean {other:?}")),
            }
        }
        Tm::Refl(u) => Ok(Val::Refl(Rc::new(eval_tm(env, u)?))),
        Tm::J(c, w, e) => match eval_tm(env, e)? {
            Val::Refl(_) => eval_tm(env, w),
            Val::Neutral(ne, ty) => match &*ty {
                TyVal::Id(dom, base, end) => {
                    let motive = TyClosure {
                        env: env.clone(),
                        body: c.clone(),
                    };
                    let result_ty = motive
                        .apply2((**end).clone(), Val::Neutral(ne.clone(), ty.clone()))?;
                    Ok(Val::neutral(
                        Neutral::J {
                            dom: dom.clone(),
                            base: (**base).clone(),
                            motive,
                            refl_case: eval_tm(env, w)?,
                            scrut: ne,
                        },
                        result_ty,
                    ))
                }
                other => stuck(format!("J on a neutral of type {other:?}")),
            },
            other => stuck(format!("J on non-path {other:?}")),
        },
    }
}

pub fn do_app(f: Val, arg: Val) -> Result<Val, InternalStuck> {
    match f {
        Val::Lam(clo) => clo.apply(arg),
        Val::Neutral(ne, ty) => match &*ty {
            TyVal::Pi(dom, cod) => {
                let cod = cod.apply(arg.clone())?;
                Ok(Val::neutral(
                    Neutral::App {
                        head: ne,
                        arg,
                        dom: dom.clone(),
                    },
                    cod,
                ))
            }
            other => stuck(format!("application of a neutral of type {other:?}")),
        },
        other => stuck(format!("application of non-function {other:?}")),
    }
}

pub fn do_fst(v: Val) -> Result<Val, InternalStuck> {
    match v {
        Val::Pair(a, _) => Ok((*a).clone()),
        Val::Neutral(ne, ty) => match &*ty {
            TyVal::Sigma(a, _) => Ok(Val::neutral(Neutral::Fst(ne), (**a).clone())),
            other => stuck(format!("fst of a neutral of type {other:?}")),
        },
        other => stuck(format!("fst of non-pair {other:?}")),
    }
}

pub fn do_snd(v: Val) -> Result<Val, InternalStuck> {
    match v {
        Val::Pair(_, b) => Ok((*b).clone()),
        Val::Neutral(ne, ty) => match &*ty {
            TyVal::Sigma(_, b) => {
                let first = do_fst(Val::Neutral(ne.clone(), ty.clone()))?;
                Ok(Val::neutral(Neutral::Snd(ne), b.apply(first)?))
            }
            other => stuck(format!("snd of a neutral of type {other:?}")),
        },
        other => stuck(format!("snd of non-pair {other:?}")),
    }
}

/// Decoding. `El (c A) = A` holds by construction.
pub fn do_el(v: Val) -> Result<TyVal, InternalStuck> {
    match v {
        Val::Code(a) => Ok((*a).clone()),
        Val::Neutral(ne, ty) => match &*ty {
            TyVal::U(i) => Ok(TyVal::ElNe(ne, *i)),
            other => stuck(format!("El of a neutral of type {other:?}")),
        },
        other => stuck(format!("El of non-code {other:?}")),
    }
}

/// Coding. `c (El a) = a` holds by construction.
pub fn do_code(a: TyVal) -> Result<Val, InternalStuck> {
    match a {
        TyVal::ElNe(ne, i) => Ok(Val::Neutral(ne, Rc::new(TyVal::U(i)))),
        other => Ok(Val::Code(Rc::new(other))),
    }
}

fn fresh(depth: usize, ty: &TyVal) -> Val {
    Val::var(depth, ty.clone())
}

/// Type-directed, η-long readback of `v : ty` at the given context depth.
pub fn quote(depth: usize, v: &Val, ty: &TyVal) -> Result<Tm, InternalStuck> {
    match ty {
        TyVal::Pi(dom, cod) => {
            let x = fresh(depth, dom);
            let body = do_app(v.clone(), x.clone())?;
            Ok(Tm::lam(
                quote_ty(depth, dom)?,
                quote(depth + 1, &body, &cod.apply(x)?)?,
            ))
        }
        TyVal::Sigma(a, b) => {
            let first = do_fst(v.clone())?;
            let second = do_snd(v.clone())?;
            let snd_ty = b.apply(first.clone())?;
            let x = fresh(depth, a);
            Ok(Tm::pair(
                quote_ty(depth, a)?,
                quote_ty(depth + 1, &b.apply(x)?)?,
                quote(depth, &first, a)?,
                quote(depth, &second, &snd_ty)?,
            ))
        }
        TyVal::Top => Ok(Tm::Tt),
        TyVal::Bool => match v {
            Val::True => Ok(Tm::True),
            Val::False => Ok(Tm::False),
            Val::Neutral(ne, _) => quote_ne(depth, ne),
            other => stuck(format!("readback of {other:?} at Bool")),
        },
        TyVal::U(_) => match v {
            Val::Code(a) => Ok(Tm::code(quote_ty(depth, a)?)),
            Val::Neutral(ne, _) => quote_ne(depth, ne),
            other => stuck(format!("readback of {other:?} at U")),
        },
        TyVal::Id(a, _, _) => match v {
            Val::Refl(u) => Ok(Tm::refl(quote(depth, u, a)?)),
            Val::Neutral(ne, _) => quote_ne(depth, ne),
            other => stuck(format!("readback of {other:?} at Id")),
        },
        TyVal::ElNe(..) => match v {
            Val::Neutral(ne, _) => quote_ne(depth, ne),
            other => stuck(format!("readback of {other:?} at a neutral type")),
        },
    }
}

pub fn quote_ty(depth: usize, ty: &TyVal) -> Result<Ty, InternalStuck> {
    match ty {
        TyVal::Pi(a, b) => Ok(Ty::pi(
            quote_ty(depth, a)?,
            quote_ty(depth + 1, &b.apply(fresh(depth, a))?)?,
        )),
        TyVal::Sigma(a, b) => Ok(Ty::sigma(
            quote_ty(depth, a)?,
            quote_ty(depth + 1, &b.apply(fresh(depth, a))?)?,
        )),
        TyVal::Top => Ok(Ty::Top),
        TyVal::Bool => Ok(Ty::Bool),
        TyVal::U(i) => Ok(Ty::U(*i)),
        TyVal::Id(a, u, v) => Ok(Ty::id(
            quote_ty(depth, a)?,
            quote(depth, u, a)?,
            quote(depth, v, a)?,
        )),
        TyVal::ElNe(ne, _) => Ok(Ty::el(quote_ne(depth, ne)?)),
    }
}

pub fn quote_ne(depth: usize, ne: &Neutral) -> Result<Tm, InternalStuck> {
    match ne {
        Neutral::Var(level) => {
            if *level >= depth {
                return stuck(format!("variable level {level} escapes depth {depth}"));
            }
            Ok(Tm::var(depth - 1 - level))
        }
        Neutral::App { head, arg, dom } => Ok(Tm::apply1(
            quote_ne(depth, head)?,
            quote_ty(depth, dom)?,
            quote(depth, arg, dom)?,
        )),
        Neutral::Fst(head) => Ok(Tm::fst(quote_ne(depth, head)?)),
        Neutral::Snd(head) => Ok(Tm::snd(quote_ne(depth, head)?)),
        Neutral::If {
            motive,
            on_true,
            on_false,
            scrut,
        } => {
            let c = quote_ty(depth + 1, &motive.apply(fresh(depth, &TyVal::Bool))?)?;
            Ok(Tm::ite(
                c,
                quote(depth, on_true, &motive.apply(Val::True)?)?,
                quote(depth, on_false, &motive.apply(Val::False)?)?,
                quote_ne(depth, scrut)?,
            ))
        }
        Neutral::J {
            dom,
            base,
            motive,
            refl_case,
            scrut,
        } => {
            let x = fresh(depth, dom);
            let path_ty = TyVal::Id(dom.clone(), Rc::new(base.clone()), Rc::new(x.clone()));
            let e = fresh(depth + 1, &path_ty);
            let c = quote_ty(depth + 2, &motive.apply2(x, e)?)?;
            let refl_ty = motive.apply2(base.clone(), Val::Refl(Rc::new(base.clone())))?;
            Ok(Tm::j(
                c,
                quote(depth, refl_case, &refl_ty)?,
                quote_ne(depth, scrut)?,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_for_application() {
        let t = Tm::apply1(Tm::lam(Ty::Bool, Tm::Q), Ty::Bool, Tm::True);
        assert!(matches!(eval_tm(&Env::empty(), &t).unwrap(), Val::True));
    }

    #[test]
    fn bool_beta_false() {
        let c = Ty::Bool.sub(Sub::P);
        let t = Tm::ite(c, Tm::False, Tm::True, Tm::True);
        assert!(matches!(eval_tm(&Env::empty(), &t).unwrap(), Val::False));
    }

    #[test]
    fn bool_subst_evaluates_to_bool() {
        let ty = Ty::Bool.sub(Sub::Eps);
        assert!(matches!(eval_ty(&Env::empty(), &ty).unwrap(), TyVal::Bool));
    }

    #[test]
    fn top_variable_reads_back_as_tt() {
        let x = Val::var(0, TyVal::Top);
        assert_eq!(quote(1, &x, &TyVal::Top).unwrap(), Tm::Tt);
    }

    #[test]
    fn bool_variable_reads_back_as_q() {
        let x = Val::var(0, TyVal::Bool);
        assert_eq!(quote(1, &x, &TyVal::Bool).unwrap(), Tm::Q);
    }

    #[test]
    fn pi_eta() {
        // lam (app f) and f read back identically.
        let pi = Ty::pi(Ty::Bool, Ty::Bool);
        let env = Env(vec![Val::var(0, eval_ty(&Env::empty(), &pi).unwrap())]);
        let fty = eval_ty(&env, &pi).unwrap();
        let expanded = Tm::lam(Ty::Bool, Tm::app(Tm::Q));
        let a = quote(1, &eval_tm(&env, &expanded).unwrap(), &fty).unwrap();
        let b = quote(1, &eval_tm(&env, &Tm::Q).unwrap(), &fty).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn stuck_on_ill_typed_input() {
        assert!(eval_tm(&Env::empty(), &Tm::Q).is_err());
        assert!(eval_tm(&Env::empty(), &Tm::fst(Tm::True)).is_err());
    }
}
