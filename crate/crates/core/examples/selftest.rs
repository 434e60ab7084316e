//! Run every property suite at a small size and print the pass tables.

use ttk::suite::{run, with_large_stack, SuiteConfig, SuiteKind};

fn main() {
    let cfg = SuiteConfig { seed: 9, count: 10, ..SuiteConfig::default() };
    for kind in SuiteKind::ALL {
        print!("{}", with_large_stack(move || run(kind, &cfg)));
    }
}
