//! Fixed inputs with their exact normal forms.

use ttk::conv::{conv_tm, normalize};
use ttk::surface::{parse_ctx, parse_tm, parse_ty, print_tm};
use ttk::syntax::{Ctx, Tm, Ty};

fn nf(ctx: &str, t: &str) -> String {
    print_tm(&normalize(&parse_ctx(ctx).unwrap(), &parse_tm(t).unwrap()).unwrap())
}

fn conv(ctx: &str, a: &str, t: &str, u: &str) -> bool {
    conv_tm(
        &parse_ctx(ctx).unwrap(),
        &parse_ty(a).unwrap(),
        &parse_tm(t).unwrap(),
        &parse_tm(u).unwrap(),
    )
    .unwrap()
}

#[test]
fn unit_eta() {
    assert_eq!(nf("(ctx (top))", "(v 0)"), "(tt)");
    assert!(conv("(ctx (top) (top))", "(top)", "(v 0)", "(v 1)"));
}

#[test]
fn function_eta() {
    assert_eq!(
        nf("(ctx (arrow (bool) (bool)))", "(v 0)"),
        "(lam (bool) (tmsub (app (v 1)) (ext (id) (bool) (q))))"
    );
    assert!(conv(
        "(ctx (arrow (bool) (bool)))",
        "(arrow (bool) (bool))",
        "(v 0)",
        "(lam (bool) (app (v 0)))"
    ));
}

#[test]
fn pair_eta() {
    assert_eq!(
        nf("(ctx (sigma (bool) (top)))", "(v 0)"),
        "(pair (bool) (top) (fst (q)) (tt))"
    );
}

#[test]
fn beta_rules() {
    assert_eq!(nf("(ctx)", "(dollar (lam (bool) (q)) (bool) (true))"), "(true)");
    assert_eq!(nf("(ctx)", "(fst (pair (bool) (bool) (false) (true)))"), "(false)");
    assert_eq!(nf("(ctx)", "(if (bool) (false) (true) (true))"), "(false)");
    assert_eq!(nf("(ctx)", "(j (bool) (true) (refl (false)))"), "(true)");
}

#[test]
fn stuck_eliminators_stay() {
    assert_eq!(nf("(ctx (bool))", "(if (bool) (true) (false) (v 0))"), "(if (bool) (true) (false) (q))");
}

#[test]
fn substitution_is_pushed_through() {
    assert_eq!(nf("(ctx (bool) (top))", "(tmsub (v 0) (p))"), "(v 1)");
    assert!(conv("(ctx)", "(u 0)", "(code (el (code (bool))))", "(code (bool))"));
}

#[test]
fn universe_levels_are_distinct() {
    let u0 = Ty::U(ttk::syntax::Level(0));
    let u1 = Ty::U(ttk::syntax::Level(1));
    assert!(!ttk::conv::conv_ty(&Ctx::empty(), &u0, &u1).unwrap());
    assert!(conv_tm(&Ctx::empty(), &Ty::U(ttk::syntax::Level(1)), &Tm::code(u0.clone()), &Tm::code(u0)).unwrap());
}
