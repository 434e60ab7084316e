//! Turn contexts, types and terms into closed terms of the theory itself.

use ttk::surface::{parse_ctx, parse_tm, parse_ty, print_tm, print_ty};
use ttk::termify::{termify_ctx, termify_tm, termify_ty, TermifiedEntity};

fn show(what: &str, e: TermifiedEntity) {
    e.verify().expect("translations are well-typed");
    println!("{what}\n  {}\n  : {}", print_tm(&e.payload), print_ty(&e.classifier));
}

fn main() {
    let ctx = parse_ctx("(ctx (bool) (idt (bool) (q) (true)))").unwrap();
    show("context", termify_ctx(&ctx).unwrap());
    show("type", termify_ty(&ctx, &parse_ty("(sigma (bool) (top))").unwrap()).unwrap());
    show("term", termify_tm(&ctx, &parse_tm("(refl (v 1))").unwrap()).unwrap());
}
