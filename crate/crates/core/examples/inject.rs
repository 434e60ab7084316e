//! Translations are injective: build a context isomorphism, round-trip
//! entities, and probe a pair with equal images.

use ttk::inject::{build_ctx_iso, check_embedding, injectivity_probe, Embedded, ProbePair};
use ttk::surface::{parse_ctx, parse_tm, parse_ty};

fn main() {
    let ctx = parse_ctx("(ctx (u 0) (el (q)) (bool))").unwrap();
    let iso = build_ctx_iso(&ctx).unwrap();
    println!("iso for {ctx}: round trips {} {}", iso.fwd_bwd_ok, iso.bwd_fwd_ok);

    for x in [
        Embedded::Ty(parse_ty("(idt (el (v 2)) (v 1) (v 1))").unwrap()),
        Embedded::Tm(parse_tm("(pair (bool) (bool) (v 0) (true))").unwrap()),
    ] {
        println!("{x:?}\n  {}", check_embedding(&ctx, &x).unwrap());
    }

    let pair = ProbePair::Tm(
        ctx.clone(),
        parse_ty("(bool)").unwrap(),
        parse_tm("(dollar (lam (bool) (q)) (bool) (v 0))").unwrap(),
        parse_tm("(v 0)").unwrap(),
    );
    println!("probe: {:?}", injectivity_probe(&pair).unwrap());
}
