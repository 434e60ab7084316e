//! Instantiate every equation schema once and decide it, directly and after
//! termification.

use ttk::equations::{eq_instance, Schema};
use ttk::gen::{Gen, GenConfig};

fn main() {
    let mut gen = Gen::new(GenConfig { seed: 5, max_nodes: 8, ..GenConfig::default() });
    for &schema in Schema::ALL {
        let inst = eq_instance(&mut gen, schema).unwrap();
        let direct = inst.check().unwrap();
        let termified = inst.check_termified().unwrap();
        println!("{:<12} size {:>3}  holds {direct}  termified {termified}", schema.name(), inst.size());
    }
    let inst = eq_instance(&mut gen, Schema::ALL[0]).unwrap();
    println!("\nfor example:\n{inst}");
}
