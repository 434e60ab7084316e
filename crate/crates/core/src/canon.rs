//! Canonicity: every closed boolean is `true` or `false`.
//!
//! The evaluator computes the value; the verdict is then certified by
//! checking that the term is convertible with the literal it named.

use thiserror::Error;

use crate::check::{check_tm, Scope, TypeError};
use crate::conv::conv_tm;
use crate::nbe::{TyVal, Val};
use crate::syntax::{Ctx, Tm, Ty};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonVerdict {
    pub value: bool,
    pub certified: bool,
}

impl CanonVerdict {
    pub fn literal(&self) -> Tm {
        if self.value {
            Tm::True
        } else {
            Tm::False
        }
    }
}

#[derive(Debug, Error)]
pub enum CanonError {
    #[error("type error: {0}")]
    Type(#[from] TypeError),
    #[error("closed boolean evaluated to a non-literal: {0}")]
    NonCanonical(String),
    #[error("canonicity is only stated for the empty context, got {0}")]
    OpenTerm(Ctx),
}

/// Classifies a closed term of type `Bool` and certifies the result.
pub fn canonicity_verdict(t: &Tm) -> Result<CanonVerdict, CanonError> {
    let empty = Scope::empty();
    check_tm(&empty, t, &TyVal::Bool)?;
    let value = match empty.eval_tm(t)? {
        Val::True => true,
        Val::False => false,
        other => return Err(CanonError::NonCanonical(format!("{other:?}"))),
    };
    let lit = if value { Tm::True } else { Tm::False };
    let certified = conv_tm(&Ctx::empty(), &Ty::Bool, t, &lit)?;
    Ok(CanonVerdict { value, certified })
}

/// As [`canonicity_verdict`], rejecting non-empty contexts up front.
pub fn canonicity_verdict_in(ctx: &Ctx, t: &Tm) -> Result<CanonVerdict, CanonError> {
    if !ctx.is_empty() {
        return Err(CanonError::OpenTerm(ctx.clone()));
    }
    canonicity_verdict(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Sub;

    fn verdict(t: &Tm) -> CanonVerdict {
        canonicity_verdict(t).unwrap()
    }

    #[test]
    fn literals() {
        assert_eq!(
            verdict(&Tm::True),
            CanonVerdict {
                value: true,
                certified: true
            }
        );
        assert!(!verdict(&Tm::False).value);
    }

    #[test]
    fn eliminators_compute() {
        let c = Ty::Bool.sub(Sub::P);
        let t = Tm::ite(c, Tm::False, Tm::True, Tm::True);
        let v = verdict(&t);
        assert!(!v.value && v.certified);
        let app = Tm::apply1(Tm::lam(Ty::Bool, Tm::Q), Ty::Bool, Tm::False);
        let v = verdict(&app);
        assert!(!v.value && v.certified);
        let j = Tm::j(Ty::Bool.sub(Sub::wk(2)), Tm::True, Tm::refl(Tm::False));
        assert!(verdict(&j).value);
        let pair = Tm::pair(Ty::Bool, Ty::Bool.sub(Sub::P), Tm::False, Tm::True);
        assert!(verdict(&Tm::snd(pair.clone())).value);
        assert!(!verdict(&Tm::fst(pair)).value);
    }

    #[test]
    fn open_and_ill_typed_inputs() {
        let b = Ctx::empty().push(Ty::Bool);
        assert!(matches!(
            canonicity_verdict_in(&b, &Tm::Q),
            Err(CanonError::OpenTerm(_))
        ));
        assert!(matches!(canonicity_verdict(&Tm::Tt), Err(CanonError::Type(_))));
    }
}
