//! Randomized laws over generated well-typed entities.

use proptest::prelude::*;
use ttk::check::{check_tm, Scope};
use ttk::conv::{conv_sub, conv_tm, conv_ty, normalize, normalize_ty};
use ttk::gen::{Gen, GenConfig};
use ttk::surface::{parse_entity, print_entity, Entity};
use ttk::syntax::{Ctx, Sub, Tm, Ty};

fn gen(seed: u64) -> Gen {
    Gen::new(GenConfig {
        seed,
        max_nodes: 10,
        ..GenConfig::default()
    })
}

/// A context, a type in it, and two terms of that type.
fn sample(seed: u64) -> (Ctx, Ty, Tm, Tm) {
    let mut g = gen(seed);
    let ctx = g.gen_ctx().unwrap();
    let (t, a) = g.gen_tm_any(&ctx).unwrap();
    let u = g.gen_tm(&ctx, &a).unwrap();
    (ctx, a, t, u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let mut g = gen(seed);
        let ctx = g.gen_ctx().unwrap();
        let (a, _) = g.gen_ty(&ctx).unwrap();
        let (s, _) = g.gen_sub(&ctx).unwrap();
        let (t, _) = g.gen_tm_any(&ctx).unwrap();
        for e in [Entity::Ctx(ctx), Entity::Ty(a), Entity::Sub(s), Entity::Tm(t)] {
            let printed = print_entity(&e);
            let back = parse_entity(&printed).unwrap();
            prop_assert_eq!(print_entity(&back), printed);
        }
    }

    #[test]
    fn normal_forms_are_stable_and_typed(seed in any::<u64>()) {
        let (ctx, a, t, _) = sample(seed);
        let n = normalize(&ctx, &t).unwrap();
        prop_assert_eq!(normalize(&ctx, &n).unwrap(), n.clone());
        let scope = Scope::new(&ctx).unwrap();
        prop_assert!(check_tm(&scope, &n, &scope.eval_ty(&a).unwrap()).is_ok());
        let na = normalize_ty(&ctx, &a).unwrap();
        prop_assert_eq!(normalize_ty(&ctx, &na).unwrap(), na.clone());
        prop_assert!(conv_ty(&ctx, &a, &na).unwrap());
    }

    #[test]
    fn conversion_is_an_equivalence(seed in any::<u64>()) {
        let (ctx, a, t, u) = sample(seed);
        let c = |x: &Tm, y: &Tm| conv_tm(&ctx, &a, x, y).unwrap();
        prop_assert!(c(&t, &t));
        prop_assert_eq!(c(&t, &u), c(&u, &t));
        let n = normalize(&ctx, &u).unwrap();
        prop_assert_eq!(c(&t, &u), c(&t, &n));
        // Deciding by normal forms: convertible iff syntactically equal nfs.
        prop_assert_eq!(c(&t, &u), normalize(&ctx, &t).unwrap() == n);
    }

    #[test]
    fn conversion_is_a_congruence(seed in any::<u64>()) {
        let (ctx, a, t, _) = sample(seed);
        congruence(&ctx, &a, &t);
    }
}

/// Replaces a term and its type by convertible but syntactically different
/// ones under every non-nullary operator, and checks the results convert.
fn congruence(ctx: &Ctx, a: &Ty, t: &Tm) {
    let n = normalize(ctx, t).unwrap();
    let na = normalize_ty(ctx, a).unwrap();
    let level = ttk::check::infer_ty(&Scope::new(ctx).unwrap(), a).unwrap();
    let tm = |c: &Ctx, ty: &Ty, x: Tm, y: Tm| {
        assert!(conv_tm(c, ty, &x, &y).unwrap(), "{c} |- {x} == {y} : {ty}");
    };
    let ty = |c: &Ctx, x: Ty, y: Ty| assert!(conv_ty(c, &x, &y).unwrap(), "{c} |- {x} == {y}");
    let sub = |c: &Ctx, cod: &Ctx, x: Sub, y: Sub| {
        assert!(conv_sub(c, cod, &x, &y).unwrap(), "{c} |- {x} == {y} : {cod}");
    };
    let wide = ctx.push(a.clone());
    let wk = |x: &Ty| x.clone().sub(Sub::P);

    // Substitutions: ext, comp.
    sub(ctx, &wide, Sub::inst(a.clone(), t.clone()), Sub::inst(na.clone(), n.clone()));
    sub(
        ctx,
        ctx,
        Sub::comp(Sub::P, Sub::inst(a.clone(), t.clone())),
        Sub::comp(Sub::P, Sub::inst(a.clone(), n.clone())),
    );

    // Types: tysub, pi, sigma, el, id.
    ty(ctx, Ty::pi(a.clone(), wk(a)), Ty::pi(na.clone(), wk(&na)));
    ty(ctx, Ty::sigma(a.clone(), Ty::Bool), Ty::sigma(na.clone(), Ty::Bool));
    ty(ctx, Ty::el(Tm::code(a.clone())), Ty::el(Tm::code(na.clone())));
    ty(ctx, Ty::id(a.clone(), t.clone(), t.clone()), Ty::id(na.clone(), n.clone(), t.clone()));
    let fam = Ty::id(wk(a), Tm::Q, Tm::Q);
    ty(ctx, fam.clone().sub(Sub::inst(a.clone(), t.clone())), fam.sub(Sub::inst(a.clone(), n.clone())));

    // Terms: tmsub, lam, app, pair, fst, snd, code, if, refl, j.
    tm(&wide, &wk(a), t.clone().sub(Sub::P), n.clone().sub(Sub::P));
    let fun = Ty::pi(a.clone(), wk(a));
    tm(ctx, &fun, Tm::lam(a.clone(), t.clone().sub(Sub::P)), Tm::lam(na.clone(), n.clone().sub(Sub::P)));
    tm(
        &wide,
        &wk(a),
        Tm::app(Tm::lam(a.clone(), t.clone().sub(Sub::P))),
        Tm::app(Tm::lam(a.clone(), n.clone().sub(Sub::P))),
    );
    let pair = |x: &Tm| Tm::pair(a.clone(), wk(a), x.clone(), x.clone());
    tm(ctx, &Ty::sigma(a.clone(), wk(a)), pair(t), pair(&n));
    tm(ctx, a, Tm::fst(pair(t)), Tm::fst(pair(&n)));
    tm(ctx, a, Tm::snd(pair(t)), Tm::snd(pair(&n)));
    tm(ctx, &Ty::U(level), Tm::code(a.clone()), Tm::code(na.clone()));
    let bctx = ctx.push(Ty::Bool);
    let motive = wk(&wk(a));
    let branch = |x: &Tm| Tm::ite(motive.clone(), x.clone().sub(Sub::P), x.clone().sub(Sub::P), Tm::Q);
    tm(&bctx, &wk(a), branch(t), branch(&n));
    tm(ctx, &Ty::id(a.clone(), t.clone(), t.clone()), Tm::refl(t.clone()), Tm::refl(n.clone()));
    let j = |x: &Tm| Tm::j(a.clone().sub(Sub::wk(2)), x.clone(), Tm::refl(Tm::True));
    tm(ctx, a, j(t), j(&n));
}
