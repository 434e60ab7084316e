//! Normalization by evaluation: beta, eta and substitution all at once.

use ttk::conv::{conv_tm, normalize};
use ttk::surface::{parse_ctx, parse_tm, parse_ty, print_tm};

fn main() {
    let cases = [
        ("(ctx)", "(dollar (lam (bool) (if (bool) (false) (true) (q))) (bool) (true))"),
        ("(ctx (arrow (bool) (bool)))", "(v 0)"),
        ("(ctx (sigma (bool) (top)))", "(v 0)"),
        ("(ctx (bool) (top))", "(tmsub (v 0) (p))"),
        ("(ctx)", "(j (bool) (true) (refl (false)))"),
    ];
    for (c, t) in cases {
        let ctx = parse_ctx(c).unwrap();
        let n = normalize(&ctx, &parse_tm(t).unwrap()).unwrap();
        println!("{c} |- {t}\n  ~> {}", print_tm(&n));
    }

    // Two functions that agree on every literal but are not convertible.
    let ctx = parse_ctx("(ctx)").unwrap();
    let ty = parse_ty("(arrow (bool) (bool))").unwrap();
    let f = parse_tm("(lam (bool) (if (bool) (true) (false) (q)))").unwrap();
    let g = parse_tm("(lam (bool) (q))").unwrap();
    println!("f == g ? {}", conv_tm(&ctx, &ty, &f, &g).unwrap());
}
