//! Seeded, type-directed generation of well-typed syntax.
//!
//! Every generator works against a [`Scope`] and, for terms, a semantic goal
//! type; subterms are produced for goals read off the weak-head form of the
//! goal, so the output is well-typed by construction. The public entry
//! points re-check what they return anyway, which turns any generator bug
//! into a loud error instead of a silently skewed sample.
//!
//! Eliminators (`app`, `fst`, `snd`, `if`, `J`, substitution) are weighted
//! above introductions so that instances contain redexes.

use std::collections::BTreeMap;
use std::rc::Rc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::check::{ctx_conv, infer_ty, synth_sub, synth_tm, Scope, TypeError};
use crate::nbe::{self, TyVal, Val};
use crate::syntax::{size_of, Ctor, Ctx, Level, Operators, Sub, Tm, Ty};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Soft bound on the number of operators in one generated entity.
    pub max_nodes: usize,
    /// Largest universe level that may appear in a generated type.
    pub max_level: u32,
    pub max_ctx_len: usize,
    /// Number of generation steps per entity before giving up.
    pub fuel: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_nodes: 12,
            max_level: 2,
            max_ctx_len: 4,
            fuel: 20_000,
        }
    }
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("generator ran out of fuel")]
    GenExhausted,
    #[error("generator produced an ill-typed entity: {0}")]
    IllTyped(#[from] TypeError),
}

/// Internal outcome of one generation attempt.
enum Fail {
    /// This choice cannot reach the goal; try another.
    Stuck,
    Fatal(GenError),
}

impl From<TypeError> for Fail {
    fn from(e: TypeError) -> Self {
        Fail::Fatal(GenError::IllTyped(e))
    }
}

impl From<nbe::InternalStuck> for Fail {
    fn from(e: nbe::InternalStuck) -> Self {
        Fail::Fatal(GenError::IllTyped(TypeError::new(
            crate::check::TypeErrorKind::Internal(e),
        )))
    }
}

type R<T> = std::result::Result<T, Fail>;

/// How often each operator occurred in a sample.
#[derive(Clone, Debug, Default)]
pub struct Coverage {
    counts: BTreeMap<Ctor, usize>,
}

impl Coverage {
    pub fn record(&mut self, x: &dyn Operators) {
        x.visit_ctors(&mut |c| *self.counts.entry(c).or_default() += 1);
    }

    pub fn count(&self, c: Ctor) -> usize {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    pub fn missing(&self) -> Vec<Ctor> {
        Ctor::ALL.into_iter().filter(|c| self.count(*c) == 0).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TmChoice {
    Var,
    Spine,
    Intro,
    App,
    Fst,
    Snd,
    If,
    J,
    Let,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TyChoice {
    Base,
    El,
    Pi,
    Sigma,
    Id,
    Subst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SubChoice {
    Id,
    Eps,
    P,
    Comp,
    Ext,
}

pub struct Gen {
    cfg: GenConfig,
    rng: ChaCha8Rng,
    fuel: u64,
    attempt: u64,
    depth: usize,
}

/// Nesting bound for the recursive generators; deeper attempts are stuck.
const MAX_DEPTH: usize = 48;

impl Gen {
    pub fn new(cfg: GenConfig) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            fuel: cfg.fuel,
            attempt: 0,
            depth: 0,
            cfg,
        }
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn tick(&mut self) -> R<()> {
        if self.fuel == 0 {
            return Err(Fail::Fatal(GenError::GenExhausted));
        }
        if self.attempt == 0 {
            return Err(Fail::Stuck);
        }
        self.fuel -= 1;
        self.attempt -= 1;
        Ok(())
    }

    /// Runs `f` one level deeper, failing once the nesting bound is hit.
    fn nested<T>(&mut self, f: impl FnOnce(&mut Gen) -> R<T>) -> R<T> {
        if self.depth >= MAX_DEPTH {
            return Err(Fail::Stuck);
        }
        self.depth += 1;
        let r = f(self);
        self.depth -= 1;
        r
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Orders `options` by weighted sampling without replacement.
    fn order<T: Copy>(&mut self, options: &[(u32, T)]) -> Vec<T> {
        let mut pool: Vec<(u32, T)> = options.iter().copied().filter(|o| o.0 > 0).collect();
        let mut out = Vec::with_capacity(pool.len());
        while !pool.is_empty() {
            let total: u32 = pool.iter().map(|o| o.0).sum();
            let mut pick = self.rng.gen_range(0..total);
            let idx = pool
                .iter()
                .position(|o| {
                    if pick < o.0 {
                        true
                    } else {
                        pick -= o.0;
                        false
                    }
                })
                .expect("pick is below the total weight");
            out.push(pool.remove(idx).1);
        }
        out
    }

    /// Repeats a stuck attempt until it succeeds or fuel runs out.
    fn retry<T>(&mut self, mut f: impl FnMut(&mut Gen) -> R<T>) -> Result<T, GenError> {
        self.fuel = self.cfg.fuel;
        loop {
            // One attempt may not use up the whole budget: a goal without
            // reachable inhabitants is abandoned for a fresh set of choices.
            self.attempt = (self.cfg.fuel / 8).max(1);
            self.depth = 0;
            match f(self) {
                Ok(x) => return Ok(x),
                Err(Fail::Stuck) => {
                    if self.fuel == 0 {
                        return Err(GenError::GenExhausted);
                    }
                }
                Err(Fail::Fatal(e)) => return Err(e),
            }
        }
    }

    fn budget(&mut self) -> usize {
        let max = self.cfg.max_nodes.max(1);
        self.rng.gen_range(max / 2..=max)
    }

    // ---- public entry points -------------------------------------------

    pub fn gen_ctx(&mut self) -> Result<Ctx, GenError> {
        self.retry(|g| Ok(g.ctx_scope()?.ctx().clone()))
    }

    /// A type in `ctx`, with its level.
    pub fn gen_ty(&mut self, ctx: &Ctx) -> Result<(Ty, Level), GenError> {
        let scope = Scope::new(ctx)?;
        let (ty, level) = self.retry(|g| {
            let size = g.budget();
            g.ty_any(&scope, size)
        })?;
        let found = infer_ty(&scope, &ty)?;
        debug_assert_eq!(found, level);
        Ok((ty, found))
    }

    /// A substitution out of `ctx`, with its codomain.
    pub fn gen_sub(&mut self, ctx: &Ctx) -> Result<(Sub, Ctx), GenError> {
        let scope = Scope::new(ctx)?;
        let (sigma, _) = self.retry(|g| {
            let size = g.budget();
            g.sub_any(&scope, size)
        })?;
        let cod = synth_sub(&scope, &sigma)?;
        Ok((sigma, cod.ctx().clone()))
    }

    /// A substitution from `dom` to `cod`.
    pub fn gen_sub_to(&mut self, dom: &Ctx, cod: &Ctx) -> Result<Sub, GenError> {
        let from = Scope::new(dom)?;
        let to = Scope::new(cod)?;
        let sigma = self.retry(|g| {
            let size = g.budget();
            g.sub_to(&from, &to, size)
        })?;
        let found = synth_sub(&from, &sigma)?;
        if !ctx_conv(&found, &to)? {
            return Err(GenError::IllTyped(TypeError::new(
                crate::check::TypeErrorKind::CtxMismatch {
                    expected: cod.clone(),
                    found: found.ctx().clone(),
                },
            )));
        }
        Ok(sigma)
    }

    /// A term of type `ty` in `ctx`; fails with exhaustion when the type
    /// has no inhabitant the generator can find.
    pub fn gen_tm(&mut self, ctx: &Ctx, ty: &Ty) -> Result<Tm, GenError> {
        let scope = Scope::new(ctx)?;
        infer_ty(&scope, ty)?;
        let goal = scope.eval_ty(ty)?;
        let t = self.retry(|g| {
            let size = g.budget();
            g.tm(&scope, &goal, size)
        })?;
        crate::check::check_tm(&scope, &t, &goal)?;
        Ok(t)
    }

    /// A term of some generated type.
    pub fn gen_tm_any(&mut self, ctx: &Ctx) -> Result<(Tm, Ty), GenError> {
        let scope = Scope::new(ctx)?;
        let t = self.retry(|g| {
            let size = g.budget();
            let (ty, _) = g.ty_any(&scope, size / 2)?;
            let goal = scope.eval_ty(&ty)?;
            g.tm(&scope, &goal, size)
        })?;
        let ty = synth_tm(&scope, &t)?;
        Ok((t, ty))
    }

    /// A closed term of type `Bool`.
    pub fn gen_closed_bool(&mut self) -> Result<Tm, GenError> {
        self.gen_tm(&Ctx::empty(), &Ty::Bool)
    }

    // ---- contexts -------------------------------------------------------

    fn ctx_scope(&mut self) -> R<Scope> {
        let len = self.rng.gen_range(0..=self.cfg.max_ctx_len);
        let mut scope = Scope::empty();
        for _ in 0..len {
            let size = self.rng.gen_range(0..=self.cfg.max_nodes / 3);
            let (ty, _) = self.ty_any(&scope, size)?;
            scope = scope.extend(Rc::new(ty))?;
        }
        Ok(scope)
    }

    // ---- types ----------------------------------------------------------

    fn level(&mut self) -> Level {
        let max = self.cfg.max_level;
        // Biased towards small levels.
        let mut l = 0;
        while l < max && self.chance(0.3) {
            l += 1;
        }
        Level(l)
    }

    fn ty_any(&mut self, scope: &Scope, size: usize) -> R<(Ty, Level)> {
        let level = self.level();
        Ok((self.ty_at(scope, size, level)?, level))
    }

    /// A type of exactly the given level.
    fn ty_at(&mut self, scope: &Scope, size: usize, level: Level) -> R<Ty> {
        self.nested(|g| g.ty_at_inner(scope, size, level))
    }

    fn ty_at_inner(&mut self, scope: &Scope, size: usize, level: Level) -> R<Ty> {
        self.tick()?;
        let big = if size >= 2 { 3 } else { 0 };
        let options = [
            (3, TyChoice::Base),
            (if size >= 1 { 2 } else { 1 }, TyChoice::El),
            (big, TyChoice::Pi),
            (big, TyChoice::Sigma),
            (big, TyChoice::Id),
            (big, TyChoice::Subst),
        ];
        for choice in self.order(&options) {
            match self.ty_choice(scope, size, level, choice) {
                Err(Fail::Stuck) => continue,
                other => return other,
            }
        }
        Err(Fail::Stuck)
    }

    fn ty_choice(&mut self, scope: &Scope, size: usize, level: Level, c: TyChoice) -> R<Ty> {
        let rest = size.saturating_sub(1);
        match c {
            TyChoice::Base => Ok(if level.0 == 0 {
                if self.chance(0.6) {
                    Ty::Bool
                } else {
                    Ty::Top
                }
            } else {
                Ty::U(Level(level.0 - 1))
            }),
            TyChoice::El => {
                let a = self.tm(scope, &TyVal::U(level), rest)?;
                Ok(Ty::el(a))
            }
            TyChoice::Pi | TyChoice::Sigma => {
                let (la, lb) = self.split_level(level);
                let a = self.ty_at(scope, rest / 2, la)?;
                let ext = scope.extend(Rc::new(a.clone()))?;
                let b = self.ty_at(&ext, rest / 2, lb)?;
                Ok(if c == TyChoice::Pi {
                    Ty::pi(a, b)
                } else {
                    Ty::sigma(a, b)
                })
            }
            TyChoice::Id => {
                let a = self.ty_at(scope, rest / 3, level)?;
                let av = scope.eval_ty(&a)?;
                let u = self.tm(scope, &av, rest / 3)?;
                let v = if self.chance(0.5) {
                    u.clone()
                } else {
                    self.tm(scope, &av, rest / 3)?
                };
                Ok(Ty::id(a, u, v))
            }
            TyChoice::Subst => {
                let (sigma, cod) = self.sub_any(scope, rest / 2)?;
                let a = self.ty_at(&cod, rest / 2, level)?;
                Ok(a.sub(sigma))
            }
        }
    }

    /// Two levels whose max is `level`.
    fn split_level(&mut self, level: Level) -> (Level, Level) {
        let other = Level(self.rng.gen_range(0..=level.0));
        if self.chance(0.5) {
            (level, other)
        } else {
            (other, level)
        }
    }

    // ---- substitutions --------------------------------------------------

    fn sub_any(&mut self, scope: &Scope, size: usize) -> R<(Sub, Scope)> {
        self.nested(|g| g.sub_any_inner(scope, size))
    }

    fn sub_any_inner(&mut self, scope: &Scope, size: usize) -> R<(Sub, Scope)> {
        self.tick()?;
        let rest = size.saturating_sub(1);
        let big = if size >= 2 { 3 } else { 0 };
        let options = [
            (2, SubChoice::Id),
            (1, SubChoice::Eps),
            (if scope.depth() > 0 { 3 } else { 0 }, SubChoice::P),
            (big, SubChoice::Comp),
            (big, SubChoice::Ext),
        ];
        for choice in self.order(&options) {
            let r = match choice {
                SubChoice::Id => Ok((Sub::Id, scope.clone())),
                SubChoice::Eps => Ok((Sub::Eps, Scope::empty())),
                SubChoice::P => Ok((Sub::P, scope.init().expect("nonempty"))),
                SubChoice::Comp => self.sub_any(scope, rest / 2).and_then(|(d, mid)| {
                    let (s, cod) = self.sub_any(&mid, rest / 2)?;
                    Ok((Sub::comp(s, d), cod))
                }),
                SubChoice::Ext => self.sub_ext(scope, rest),
            };
            match r {
                Err(Fail::Stuck) => continue,
                other => return other,
            }
        }
        Err(Fail::Stuck)
    }

    fn sub_ext(&mut self, scope: &Scope, rest: usize) -> R<(Sub, Scope)> {
        let (sigma, cod) = self.sub_any(scope, rest / 3)?;
        if cod.depth() >= self.cfg.max_ctx_len + 2 {
            return Err(Fail::Stuck);
        }
        let (a, _) = self.ty_any(&cod, rest / 3)?;
        let env = scope.eval_sub(&sigma)?;
        let goal = nbe::eval_ty(&env, &a)?;
        let t = self.tm(scope, &goal, rest / 3)?;
        let ext = cod.extend(Rc::new(a.clone()))?;
        Ok((Sub::ext(sigma, a, t), ext))
    }

    fn sub_to(&mut self, from: &Scope, to: &Scope, size: usize) -> R<Sub> {
        self.nested(|g| g.sub_to_inner(from, to, size))
    }

    fn sub_to_inner(&mut self, from: &Scope, to: &Scope, size: usize) -> R<Sub> {
        self.tick()?;
        let rest = size.saturating_sub(1);
        let same = ctx_conv(from, to)?;
        let weakening = match from.init() {
            Some(init) => ctx_conv(&init, to)?,
            None => false,
        };
        #[derive(Clone, Copy)]
        enum C {
            Id,
            Eps,
            P,
            Ext,
            Comp,
        }
        let options = [
            (if same { 3 } else { 0 }, C::Id),
            (if to.depth() == 0 { 3 } else { 0 }, C::Eps),
            (if weakening { 3 } else { 0 }, C::P),
            (if to.depth() > 0 { 3 } else { 0 }, C::Ext),
            (if size >= 2 { 2 } else { 0 }, C::Comp),
        ];
        for choice in self.order(&options) {
            let r = match choice {
                C::Id => Ok(Sub::Id),
                C::Eps => Ok(Sub::Eps),
                C::P => Ok(Sub::P),
                C::Ext => {
                    let init = to.init().expect("nonempty");
                    let a = to.ctx().last().expect("nonempty").clone();
                    self.sub_to(from, &init, rest / 2).and_then(|sigma| {
                        let env = from.eval_sub(&sigma)?;
                        let goal = nbe::eval_ty(&env, &a)?;
                        let t = self.tm(from, &goal, rest / 2)?;
                        Ok(Sub::ext(sigma, a, t))
                    })
                }
                C::Comp => self.sub_any(from, rest / 2).and_then(|(d, mid)| {
                    let s = self.sub_to(&mid, to, rest / 2)?;
                    Ok(Sub::comp(s, d))
                }),
            };
            match r {
                Err(Fail::Stuck) => continue,
                other => return other,
            }
        }
        Err(Fail::Stuck)
    }

    // ---- terms ----------------------------------------------------------

    fn var_ty(scope: &Scope, index: usize) -> TyVal {
        let level = scope.depth() - 1 - index;
        match scope.env().get(level) {
            Val::Neutral(_, ty) => ty.as_ref().clone(),
            _ => unreachable!("generic environments hold variables"),
        }
    }

    fn same(scope: &Scope, a: &TyVal, b: &TyVal) -> R<bool> {
        Ok(scope.quote_ty(a)? == scope.quote_ty(b)?)
    }

    fn tm(&mut self, scope: &Scope, goal: &TyVal, size: usize) -> R<Tm> {
        self.nested(|g| g.tm_inner(scope, goal, size))
    }

    fn tm_inner(&mut self, scope: &Scope, goal: &TyVal, size: usize) -> R<Tm> {
        self.tick()?;
        let elim = if size >= 2 { 3 } else { 0 };
        let options = [
            (4, TmChoice::Var),
            (3, TmChoice::Spine),
            (3, TmChoice::Intro),
            (elim, TmChoice::App),
            (elim, TmChoice::Fst),
            (elim, TmChoice::Snd),
            (elim, TmChoice::If),
            (elim, TmChoice::J),
            (elim, TmChoice::Let),
        ];
        for choice in self.order(&options) {
            match self.tm_choice(scope, goal, size, choice) {
                Err(Fail::Stuck) => continue,
                other => return other,
            }
        }
        Err(Fail::Stuck)
    }

    fn tm_choice(&mut self, scope: &Scope, goal: &TyVal, size: usize, c: TmChoice) -> R<Tm> {
        let rest = size.saturating_sub(1);
        let goal_ty = || scope.quote_ty(goal);
        match c {
            TmChoice::Var => {
                let mut hits = Vec::new();
                for k in 0..scope.depth() {
                    if Self::same(scope, &Self::var_ty(scope, k), goal)? {
                        hits.push(k);
                    }
                }
                hits.choose(&mut self.rng)
                    .map(|k| Tm::var(*k))
                    .ok_or(Fail::Stuck)
            }
            TmChoice::Spine => self.spine(scope, goal, rest),
            TmChoice::Intro => self.intro(scope, goal, size),
            TmChoice::App => {
                let (a, _) = self.ty_any(scope, rest / 3)?;
                let fun = Ty::pi(a.clone(), goal_ty()?.sub(Sub::P));
                let f = self.tm(scope, &scope.eval_ty(&fun)?, rest / 3)?;
                let u = self.tm(scope, &scope.eval_ty(&a)?, rest / 3)?;
                Ok(Tm::apply1(f, a, u))
            }
            TmChoice::Fst => {
                let g = goal_ty()?;
                let ext = scope.extend(Rc::new(g.clone()))?;
                let (b, _) = self.ty_any(&ext, rest / 2)?;
                let sig = Ty::sigma(g, b);
                let t = self.tm(scope, &scope.eval_ty(&sig)?, rest / 2)?;
                Ok(Tm::fst(t))
            }
            TmChoice::Snd => {
                let (a, _) = self.ty_any(scope, rest / 2)?;
                let sig = Ty::sigma(a, goal_ty()?.sub(Sub::P));
                let t = self.tm(scope, &scope.eval_ty(&sig)?, rest / 2)?;
                Ok(Tm::snd(t))
            }
            TmChoice::If => {
                let b = self.tm(scope, &TyVal::Bool, rest / 3)?;
                let u = self.tm(scope, goal, rest / 3)?;
                let v = self.tm(scope, goal, rest / 3)?;
                Ok(Tm::ite(goal_ty()?.sub(Sub::P), u, v, b))
            }
            TmChoice::J => {
                let (a, _) = self.ty_any(scope, rest / 4)?;
                let av = scope.eval_ty(&a)?;
                let u = self.tm(scope, &av, rest / 4)?;
                let v = if self.chance(0.6) {
                    u.clone()
                } else {
                    self.tm(scope, &av, rest / 4)?
                };
                let path = Ty::id(a, u, v);
                let e = self.tm(scope, &scope.eval_ty(&path)?, rest / 4)?;
                let w = self.tm(scope, goal, rest / 4)?;
                Ok(Tm::j(goal_ty()?.sub(Sub::wk(2)), w, e))
            }
            TmChoice::Let => {
                let (a, _) = self.ty_any(scope, rest / 3)?;
                let u = self.tm(scope, &scope.eval_ty(&a)?, rest / 3)?;
                let ext = scope.extend(Rc::new(a.clone()))?;
                let body_goal = ext.eval_ty(&goal_ty()?.sub(Sub::P))?;
                let body = self.tm(&ext, &body_goal, rest / 3)?;
                let sigma = if self.chance(0.3) {
                    Sub::comp(Sub::ext(Sub::Id, a, u), Sub::Id)
                } else {
                    Sub::ext(Sub::Id, a, u)
                };
                Ok(Tm::sub(body, sigma))
            }
        }
    }

    /// Eliminates a variable of function or pair type towards the goal.
    fn spine(&mut self, scope: &Scope, goal: &TyVal, rest: usize) -> R<Tm> {
        let mut order: Vec<usize> = (0..scope.depth()).collect();
        order.shuffle(&mut self.rng);
        // Applying a variable needs a fresh argument; bound how many
        // function variables are tried so failures stay cheap.
        let mut applications = 2;
        for k in order {
            let ty = Self::var_ty(scope, k);
            let head = Tm::var(k);
            let hv = scope.eval_tm(&head)?;
            match &ty {
                TyVal::Sigma(a, b) => {
                    if Self::same(scope, a, goal)? {
                        return Ok(Tm::fst(head));
                    }
                    let second = b.apply(nbe::do_fst(hv)?)?;
                    if Self::same(scope, &second, goal)? {
                        return Ok(Tm::snd(head));
                    }
                }
                TyVal::Pi(a, b) if applications > 0 => {
                    // Skip functions whose result cannot have the goal's
                    // shape whatever the argument; only a neutral `El` can
                    // change shape under instantiation.
                    let ext = scope.extend(Rc::new(scope.quote_ty(a)?))?;
                    let generic = b.apply(ext.env().get(scope.depth()).clone())?;
                    if !matches!(generic, TyVal::ElNe(..))
                        && std::mem::discriminant(&generic) != std::mem::discriminant(goal)
                    {
                        continue;
                    }
                    applications -= 1;
                    let u = match self.tm(scope, a, rest / 2) {
                        Ok(u) => u,
                        Err(Fail::Stuck) => continue,
                        Err(e) => return Err(e),
                    };
                    let result = b.apply(scope.eval_tm(&u)?)?;
                    if Self::same(scope, &result, goal)? {
                        return Ok(Tm::apply1(head, scope.quote_ty(a)?, u));
                    }
                }
                _ => {}
            }
        }
        Err(Fail::Stuck)
    }

    fn intro(&mut self, scope: &Scope, goal: &TyVal, size: usize) -> R<Tm> {
        let rest = size.saturating_sub(1);
        match goal {
            TyVal::Pi(a, b) => {
                let dom = scope.quote_ty(a)?;
                let ext = scope.extend(Rc::new(dom.clone()))?;
                let cod = b.apply(ext.env().get(scope.depth()).clone())?;
                Ok(Tm::lam(dom, self.tm(&ext, &cod, rest)?))
            }
            TyVal::Sigma(a, b) => {
                let fst = scope.quote_ty(a)?;
                let ext = scope.extend(Rc::new(fst.clone()))?;
                let snd = ext.quote_ty(&b.apply(ext.env().get(scope.depth()).clone())?)?;
                let u = self.tm(scope, a, rest / 2)?;
                let v = self.tm(scope, &b.apply(scope.eval_tm(&u)?)?, rest / 2)?;
                Ok(Tm::pair(fst, snd, u, v))
            }
            TyVal::Top => Ok(Tm::Tt),
            TyVal::Bool => Ok(if self.chance(0.5) { Tm::True } else { Tm::False }),
            TyVal::U(i) => Ok(Tm::code(self.ty_at(scope, rest, *i)?)),
            TyVal::Id(a, u, v) => {
                let lhs = scope.quote(u, a)?;
                if lhs == scope.quote(v, a)? {
                    Ok(Tm::refl(lhs))
                } else {
                    Err(Fail::Stuck)
                }
            }
            TyVal::ElNe(..) => Err(Fail::Stuck),
        }
    }
}

/// Total operator count of a generated entity, for shrinking.
pub fn weight(x: &dyn Operators) -> usize {
    size_of(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::check_ctx;

    fn gen(seed: u64) -> Gen {
        Gen::new(GenConfig {
            seed,
            ..GenConfig::default()
        })
    }

    #[test]
    fn deterministic_per_seed() {
        let a: Vec<_> = (0..5).map(|_| 0).map(|_| gen(7).gen_tm_any(&Ctx::empty()).unwrap()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut g1 = gen(11);
        let mut g2 = gen(11);
        for _ in 0..20 {
            assert_eq!(g1.gen_ctx().unwrap(), g2.gen_ctx().unwrap());
        }
    }

    #[test]
    fn everything_generated_typechecks() {
        let mut g = gen(1);
        for _ in 0..60 {
            let ctx = g.gen_ctx().unwrap();
            check_ctx(&ctx).unwrap();
            g.gen_ty(&ctx).unwrap();
            let (sigma, cod) = g.gen_sub(&ctx).unwrap();
            let scope = Scope::new(&ctx).unwrap();
            assert!(ctx_conv(&synth_sub(&scope, &sigma).unwrap(), &Scope::new(&cod).unwrap()).unwrap());
            g.gen_sub_to(&ctx, &cod).unwrap();
            g.gen_tm_any(&ctx).unwrap();
        }
    }

    #[test]
    fn closed_booleans_exist() {
        let mut g = gen(3);
        for _ in 0..30 {
            let t = g.gen_closed_bool().unwrap();
            crate::check::check_tm(&Scope::empty(), &t, &TyVal::Bool).unwrap();
        }
    }

    #[test]
    fn covers_every_operator() {
        let mut g = gen(5);
        let mut cov = Coverage::default();
        for _ in 0..200 {
            let ctx = g.gen_ctx().unwrap();
            cov.record(&ctx);
            let (ty, _) = g.gen_ty(&ctx).unwrap();
            cov.record(&ty);
            let (sigma, _) = g.gen_sub(&ctx).unwrap();
            cov.record(&sigma);
            let (t, _) = g.gen_tm_any(&ctx).unwrap();
            cov.record(&t);
        }
        assert!(cov.missing().is_empty(), "missing {:?}", cov.missing());
    }

    #[test]
    fn exhaustion_is_reported() {
        let mut g = Gen::new(GenConfig {
            fuel: 3,
            ..GenConfig::default()
        });
        let empty_path = Ty::id(Ty::Bool, Tm::True, Tm::False);
        assert!(matches!(
            g.gen_tm(&Ctx::empty(), &empty_path),
            Err(GenError::GenExhausted)
        ));
    }
}
