//! The derived lemmas shipped with the calculus, instantiated and checked.

use deltalog::calculus::{check_proof, derived_lemmas};
use deltalog::cli::parse_formula;

fn main() {
    let args = ["(neg x)", "(to y z)", "(delta (pre x) (per y))"].map(|s| parse_formula(s).unwrap());
    for l in derived_lemmas() {
        let p = l.instantiate(&args);
        let phi = check_proof(&[], &p).unwrap();
        println!("{:<22} {:>3} steps  {}", l.name, p.steps().len(), phi);
    }
}
