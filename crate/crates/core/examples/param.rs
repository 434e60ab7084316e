//! The unary parametricity translation: every type becomes a predicate and
//! every term a proof that it satisfies it.

use ttk::conv::Expr;
use ttk::param::{param_ctx, param_tm, param_ty, ParamClass, ParamEntity};
use ttk::surface::{parse_ctx, parse_tm, parse_ty, print_ctx, print_tm, print_ty};

fn show(what: &str, e: ParamEntity) {
    e.verify().expect("translations are well-typed");
    let body = match (&e.payload, &e.classifier) {
        (Expr::Ty(t), ParamClass::Ty(l)) => format!("{}\n  : U {l}", print_ty(t)),
        (Expr::Tm(t), ParamClass::Tm(a)) => format!("{}\n  : {}", print_tm(t), print_ty(a)),
        _ => unreachable!(),
    };
    println!("{what} in {}\n  {body}", print_ctx(&e.ctx));
}

fn main() {
    let empty = parse_ctx("(ctx)").unwrap();
    show("context", param_ctx(&parse_ctx("(ctx (bool) (u 0))").unwrap()).unwrap());
    show("universe", param_ty(&empty, &parse_ty("(u 0)").unwrap()).unwrap());
    show("identity function", param_tm(&empty, &parse_tm("(lam (u 0) (lam (el (q)) (q)))").unwrap()).unwrap());
}
