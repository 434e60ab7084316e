//! Raw syntax of the object theory.
//!
//! Four mutually defined sorts with explicit substitutions and de Bruijn
//! style variables (`q` projects the last context entry, `p` drops it).
//! Contexts are concrete telescopes. A handful of constructors carry type
//! annotations (`ext`, `lam`, `pair`) so that every expression has a
//! synthesizable classifier.

use std::fmt;
use std::rc::Rc;

/// A universe level.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(pub u32);

impl Level {
    pub const ZERO: Level = Level(0);

    pub fn max(self, other: Level) -> Level {
        Level(self.0.max(other.0))
    }

    pub fn succ(self) -> Level {
        Level(self.0 + 1)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Substitutions `Sub Γ Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sub {
    Id,
    /// `σ ∘ δ`: first `δ`, then `σ`.
    Comp(Rc<Sub>, Rc<Sub>),
    Eps,
    /// `(σ, t)`, annotated with the codomain-side type `A` of the extension.
    Ext(Rc<Sub>, Rc<Ty>, Rc<Tm>),
    P,
}

/// Types `Ty i Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ty {
    Subst(Rc<Ty>, Rc<Sub>),
    /// `Π A B` with `B` living in the extended context.
    Pi(Rc<Ty>, Rc<Ty>),
    Sigma(Rc<Ty>, Rc<Ty>),
    Top,
    U(Level),
    El(Rc<Tm>),
    Bool,
    Id(Rc<Ty>, Rc<Tm>, Rc<Tm>),
}

/// Terms `Tm Γ A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tm {
    Subst(Rc<Tm>, Rc<Sub>),
    Q,
    /// `lam` annotated with its domain.
    Lam(Rc<Ty>, Rc<Tm>),
    /// `app : Tm Γ (Π A B) → Tm (Γ ▷ A) B`.
    App(Rc<Tm>),
    /// Pairs annotated with both components of the Σ-type.
    Pair(Rc<Ty>, Rc<Ty>, Rc<Tm>, Rc<Tm>),
    Fst(Rc<Tm>),
    Snd(Rc<Tm>),
    Tt,
    Code(Rc<Ty>),
    True,
    False,
    /// `if C u v t` with the motive `C` over `Γ ▷ Bool`.
    If(Rc<Ty>, Rc<Tm>, Rc<Tm>, Rc<Tm>),
    Refl(Rc<Tm>),
    /// `J C w e` with the motive over `Γ ▷ A ▷ Id (A[p]) (u[p]) q`.
    J(Rc<Ty>, Rc<Tm>, Rc<Tm>),
}

/// A context, as a telescope of types. Entry `k` lives in the prefix of
/// length `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ctx(pub Vec<Rc<Ty>>);

impl Ctx {
    pub fn empty() -> Ctx {
        Ctx(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&self, ty: impl Into<Rc<Ty>>) -> Ctx {
        let mut entries = self.0.clone();
        entries.push(ty.into());
        Ctx(entries)
    }

    pub fn prefix(&self, len: usize) -> Ctx {
        Ctx(self.0[..len].to_vec())
    }

    pub fn last(&self) -> Option<&Rc<Ty>> {
        self.0.last()
    }

    pub fn entries(&self) -> &[Rc<Ty>] {
        &self.0
    }
}

impl<T: Into<Rc<Ty>>> FromIterator<T> for Ctx {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Ctx(iter.into_iter().map(Into::into).collect())
    }
}

// Smart constructors. They keep call sites free of `Rc::new` noise.

impl Sub {
    pub fn comp(sigma: impl Into<Rc<Sub>>, delta: impl Into<Rc<Sub>>) -> Sub {
        Sub::Comp(sigma.into(), delta.into())
    }

    pub fn ext(sigma: impl Into<Rc<Sub>>, ty: impl Into<Rc<Ty>>, tm: impl Into<Rc<Tm>>) -> Sub {
        Sub::Ext(sigma.into(), ty.into(), tm.into())
    }

    /// `pⁿ`, with `p⁰ = id` and `pⁿ⁺¹ = pⁿ ∘ p`.
    pub fn wk(n: usize) -> Sub {
        match n {
            0 => Sub::Id,
            1 => Sub::P,
            _ => Sub::comp(Sub::wk(n - 1), Sub::P),
        }
    }

    /// Recognises the spine produced by [`Sub::wk`] for `n ≥ 1`.
    pub fn as_wk(&self) -> Option<usize> {
        match self {
            Sub::P => Some(1),
            Sub::Comp(rest, last) if **last == Sub::P => rest.as_wk().map(|n| n + 1),
            _ => None,
        }
    }

    /// `σ↑ = (σ ∘ p, q)`, lifting `σ : Sub Γ Δ` over `A : Ty Δ`.
    pub fn lift(sigma: impl Into<Rc<Sub>>, ty: impl Into<Rc<Ty>>) -> Sub {
        Sub::ext(Sub::comp(sigma, Sub::P), ty, Tm::Q)
    }

    /// `(id, u)`, instantiating the last variable of `Γ ▷ A` with `u`.
    pub fn inst(ty: impl Into<Rc<Ty>>, u: impl Into<Rc<Tm>>) -> Sub {
        Sub::ext(Sub::Id, ty, u)
    }
}

impl Ty {
    /// `self[σ]`, an explicit substitution node.
    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, sigma: impl Into<Rc<Sub>>) -> Ty {
        Ty::Subst(Rc::new(self), sigma.into())
    }

    pub fn pi(dom: impl Into<Rc<Ty>>, cod: impl Into<Rc<Ty>>) -> Ty {
        Ty::Pi(dom.into(), cod.into())
    }

    pub fn sigma(fst: impl Into<Rc<Ty>>, snd: impl Into<Rc<Ty>>) -> Ty {
        Ty::Sigma(fst.into(), snd.into())
    }

    pub fn el(code: impl Into<Rc<Tm>>) -> Ty {
        Ty::El(code.into())
    }

    pub fn id(ty: impl Into<Rc<Ty>>, lhs: impl Into<Rc<Tm>>, rhs: impl Into<Rc<Tm>>) -> Ty {
        Ty::Id(ty.into(), lhs.into(), rhs.into())
    }

    /// Non-dependent function type `A ⇒ B = Π A (B[p])`.
    pub fn arrow(dom: impl Into<Rc<Ty>>, cod: Ty) -> Ty {
        Ty::pi(dom, cod.sub(Sub::P))
    }
}

impl Tm {
    /// `self[σ]`, an explicit substitution node.
    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, sigma: impl Into<Rc<Sub>>) -> Tm {
        Tm::Subst(Rc::new(self), sigma.into())
    }

    /// De Bruijn index `vⁿ = q[pⁿ]`.
    pub fn var(n: usize) -> Tm {
        match n {
            0 => Tm::Q,
            _ => Tm::Q.sub(Sub::wk(n)),
        }
    }

    /// Recognises `vⁿ` as produced by [`Tm::var`].
    pub fn as_var(&self) -> Option<usize> {
        match self {
            Tm::Q => Some(0),
            Tm::Subst(t, s) if **t == Tm::Q => s.as_wk(),
            _ => None,
        }
    }

    pub fn lam(dom: impl Into<Rc<Ty>>, body: impl Into<Rc<Tm>>) -> Tm {
        Tm::Lam(dom.into(), body.into())
    }

    pub fn app(t: impl Into<Rc<Tm>>) -> Tm {
        Tm::App(t.into())
    }

    pub fn pair(
        fst_ty: impl Into<Rc<Ty>>,
        snd_ty: impl Into<Rc<Ty>>,
        fst: impl Into<Rc<Tm>>,
        snd: impl Into<Rc<Tm>>,
    ) -> Tm {
        Tm::Pair(fst_ty.into(), snd_ty.into(), fst.into(), snd.into())
    }

    pub fn fst(t: impl Into<Rc<Tm>>) -> Tm {
        Tm::Fst(t.into())
    }

    pub fn snd(t: impl Into<Rc<Tm>>) -> Tm {
        Tm::Snd(t.into())
    }

    pub fn code(ty: impl Into<Rc<Ty>>) -> Tm {
        Tm::Code(ty.into())
    }

    pub fn ite(
        motive: impl Into<Rc<Ty>>,
        on_true: impl Into<Rc<Tm>>,
        on_false: impl Into<Rc<Tm>>,
        scrut: impl Into<Rc<Tm>>,
    ) -> Tm {
        Tm::If(motive.into(), on_true.into(), on_false.into(), scrut.into())
    }

    pub fn refl(u: impl Into<Rc<Tm>>) -> Tm {
        Tm::Refl(u.into())
    }

    pub fn j(motive: impl Into<Rc<Ty>>, w: impl Into<Rc<Tm>>, e: impl Into<Rc<Tm>>) -> Tm {
        Tm::J(motive.into(), w.into(), e.into())
    }

    /// Ordinary application `t $ u = (app t)[id, u]`; `dom` is the domain
    /// of the Π-type of `t`.
    pub fn apply1(t: impl Into<Rc<Tm>>, dom: impl Into<Rc<Ty>>, u: impl Into<Rc<Tm>>) -> Tm {
        Tm::app(t).sub(Sub::inst(dom, u))
    }
}

/// The 29 operators of the theory, used for coverage accounting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ctor {
    Empty,
    Extend,
    Id,
    Comp,
    Eps,
    Ext,
    P,
    TySubst,
    Pi,
    Sigma,
    Top,
    U,
    El,
    Bool,
    IdTy,
    TmSubst,
    Q,
    Lam,
    App,
    Pair,
    Fst,
    Snd,
    Tt,
    Code,
    True,
    False,
    If,
    Refl,
    J,
}

impl Ctor {
    pub const ALL: [Ctor; 29] = [
        Ctor::Empty,
        Ctor::Extend,
        Ctor::Id,
        Ctor::Comp,
        Ctor::Eps,
        Ctor::Ext,
        Ctor::P,
        Ctor::TySubst,
        Ctor::Pi,
        Ctor::Sigma,
        Ctor::Top,
        Ctor::U,
        Ctor::El,
        Ctor::Bool,
        Ctor::IdTy,
        Ctor::TmSubst,
        Ctor::Q,
        Ctor::Lam,
        Ctor::App,
        Ctor::Pair,
        Ctor::Fst,
        Ctor::Snd,
        Ctor::Tt,
        Ctor::Code,
        Ctor::True,
        Ctor::False,
        Ctor::If,
        Ctor::Refl,
        Ctor::J,
    ];
}

/// Visits every operator occurrence in an expression.
pub trait Operators {
    fn visit_ctors(&self, f: &mut dyn FnMut(Ctor));
}

impl Operators for Ctx {
    fn visit_ctors(&self, f: &mut dyn FnMut(Ctor)) {
        f(Ctor::Empty);
        for ty in &self.0 {
            f(Ctor::Extend);
            ty.visit_ctors(f);
        }
    }
}

impl Operators for Sub {
    fn visit_ctors(&self, f: &mut dyn FnMut(Ctor)) {
        match self {
            Sub::Id => f(Ctor::Id),
            Sub::Comp(s, d) => {
                f(Ctor::Comp);
                s.visit_ctors(f);
                d.visit_ctors(f);
            }
            Sub::Eps => f(Ctor::Eps),
            Sub::Ext(s, a, t) => {
                f(Ctor::Ext);
                s.visit_ctors(f);
                a.visit_ctors(f);
                t.visit_ctors(f);
            }
            Sub::P => f(Ctor::P),
        }
    }
}

impl Operators for Ty {
    fn visit_ctors(&self, f: &mut dyn FnMut(Ctor)) {
        match self {
            Ty::Subst(a, s) => {
                f(Ctor::TySubst);
                a.visit_ctors(f);
                s.visit_ctors(f);
            }
            Ty::Pi(a, b) => {
                f(Ctor::Pi);
                a.visit_ctors(f);
                b.visit_ctors(f);
            }
            Ty::Sigma(a, b) => {
                f(Ctor::Sigma);
                a.visit_ctors(f);
                b.visit_ctors(f);
            }
            Ty::Top => f(Ctor::Top),
            Ty::U(_) => f(Ctor::U),
            Ty::El(a) => {
                f(Ctor::El);
                a.visit_ctors(f);
            }
            Ty::Bool => f(Ctor::Bool),
            Ty::Id(a, u, v) => {
                f(Ctor::IdTy);
                a.visit_ctors(f);
                u.visit_ctors(f);
                v.visit_ctors(f);
            }
        }
    }
}

impl Operators for Tm {
    fn visit_ctors(&self, f: &mut dyn FnMut(Ctor)) {
        match self {
            Tm::Subst(t, s) => {
                f(Ctor::TmSubst);
                t.visit_ctors(f);
                s.visit_ctors(f);
            }
            Tm::Q => f(Ctor::Q),
            Tm::Lam(a, t) => {
                f(Ctor::Lam);
                a.visit_ctors(f);
                t.visit_ctors(f);
            }
            Tm::App(t) => {
                f(Ctor::App);
                t.visit_ctors(f);
            }
            Tm::Pair(a, b, u, v) => {
                f(Ctor::Pair);
                a.visit_ctors(f);
                b.visit_ctors(f);
                u.visit_ctors(f);
                v.visit_ctors(f);
            }
            Tm::Fst(t) => {
                f(Ctor::Fst);
                t.visit_ctors(f);
            }
            Tm::Snd(t) => {
                f(Ctor::Snd);
                t.visit_ctors(f);
            }
            Tm::Tt => f(Ctor::Tt),
            Tm::Code(a) => {
                f(Ctor::Code);
                a.visit_ctors(f);
            }
            Tm::True => f(Ctor::True),
            Tm::False => f(Ctor::False),
            Tm::If(c, u, v, t) => {
                f(Ctor::If);
                c.visit_ctors(f);
                u.visit_ctors(f);
                v.visit_ctors(f);
                t.visit_ctors(f);
            }
            Tm::Refl(u) => {
                f(Ctor::Refl);
                u.visit_ctors(f);
            }
            Tm::J(c, w, e) => {
                f(Ctor::J);
                c.visit_ctors(f);
                w.visit_ctors(f);
                e.visit_ctors(f);
            }
        }
    }
}

/// Number of operator nodes in an expression.
pub fn size_of(x: &dyn Operators) -> usize {
    let mut n = 0;
    x.visit_ctors(&mut |_| n += 1);
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_max_laws() {
        let ls = [Level(0), Level(1), Level(3)];
        for a in ls {
            assert_eq!(a.max(a), a);
            for b in ls {
                assert_eq!(a.max(b), b.max(a));
                for c in ls {
                    assert_eq!(a.max(b).max(c), a.max(b.max(c)));
                }
            }
        }
        assert_eq!(Level(1).succ(), Level(2));
    }

    #[test]
    fn var_sugar_round_trips() {
        assert_eq!(Tm::var(0), Tm::Q);
        assert_eq!(Tm::var(1), Tm::Q.sub(Sub::P));
        assert_eq!(Tm::var(2), Tm::Q.sub(Sub::comp(Sub::P, Sub::P)));
        for n in 0..6 {
            assert_eq!(Tm::var(n).as_var(), Some(n));
        }
        assert_eq!(Tm::Q.sub(Sub::Id).as_var(), None);
    }

    #[test]
    fn operator_count_is_29() {
        assert_eq!(Ctor::ALL.len(), 29);
        let mut sorted = Ctor::ALL.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 29);
    }

    #[test]
    fn lift_shape() {
        assert_eq!(
            Sub::lift(Sub::Id, Ty::Bool),
            Sub::ext(Sub::comp(Sub::Id, Sub::P), Ty::Bool, Tm::Q)
        );
    }
}
