//! Type-directed random generation of well-typed entities.

use ttk::gen::{Gen, GenConfig};
use ttk::surface::{print_ctx, print_sub, print_tm, print_ty};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let mut gen = Gen::new(GenConfig { seed, ..GenConfig::default() });
    for _ in 0..5 {
        let ctx = gen.gen_ctx().unwrap();
        let (a, level) = gen.gen_ty(&ctx).unwrap();
        let (s, cod) = gen.gen_sub(&ctx).unwrap();
        let (t, ty) = gen.gen_tm_any(&ctx).unwrap();
        println!("{}", print_ctx(&ctx));
        println!("  type  {} : U {level}", print_ty(&a));
        println!("  sub   {} : {}", print_sub(&s), print_ctx(&cod));
        println!("  term  {} : {}", print_tm(&t), print_ty(&ty));
    }
}
