//! Every closed boolean evaluates to a literal, certified by conversion.

use ttk::canon::canonicity_verdict;
use ttk::gen::{Gen, GenConfig};
use ttk::surface::print_tm;
use ttk::suite::canon_corpus;

fn main() {
    let mut gen = Gen::new(GenConfig { seed: 7, ..GenConfig::default() });
    let generated = (0..5).map(|_| gen.gen_closed_bool().unwrap());
    for t in canon_corpus().into_iter().chain(generated) {
        let v = canonicity_verdict(&t).unwrap();
        println!("{:>5} (certified: {})  {}", v.value, v.certified, print_tm(&t));
    }
}
