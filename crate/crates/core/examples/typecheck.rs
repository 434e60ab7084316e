//! Synthesize types for a few closed terms, and show a type error.

use ttk::check::{synth_tm, Scope};
use ttk::conv::normalize_ty;
use ttk::surface::{parse_tm, print_ty};
use ttk::syntax::Ctx;

fn main() {
    let inputs = [
        // The polymorphic identity over codes of the lowest universe.
        "(lam (u 0) (lam (el (q)) (q)))",
        // Negation, by case analysis.
        "(lam (bool) (if (bool) (false) (true) (q)))",
        // A dependent pair whose second component depends on the first.
        "(pair (u 0) (el (q)) (code (bool)) (true))",
        // Ill-typed: applying a function on unit to a boolean.
        "(dollar (lam (top) (q)) (top) (true))",
    ];
    for src in inputs {
        let t = parse_tm(src).expect("example parses");
        match synth_tm(&Scope::empty(), &t) {
            Ok(a) => {
                let a = normalize_ty(&Ctx::empty(), &a).expect("well-typed");
                println!("{src}\n  : {}", print_ty(&a));
            }
            Err(e) => println!("{src}\n  type error: {e}"),
        }
    }
}
