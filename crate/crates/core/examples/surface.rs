//! Parse and print the s-expression syntax, including its sugar.

use ttk::surface::{parse_directive, parse_tm, print_directive, print_tm};

fn main() {
    for src in [
        "(v 2)",
        "(tmsub (q) (comp (p) (p)))",
        "(dollar (lam (bool) (q)) (bool) (true))",
        "(lam (u 0) ; the code\n  (lam (el (q)) (q)))",
    ] {
        let t = parse_tm(src).unwrap();
        println!("{src:?}\n  => {}", print_tm(&t));
    }
    let d = parse_directive("(conv-ty (ctx) (arrow (bool) (top)) (pi (bool) (top)))").unwrap();
    println!("{}", print_directive(&d));
    match parse_tm("(lam (bool))") {
        Ok(_) => unreachable!(),
        Err(e) => println!("error: {e}"),
    }
}
