//! Semantic consequence, with counterexamples for refuted goals, and exact
//! optimization of a term over the models of a theory.

use deltalog::cli::{parse_equation, parse_term, parse_theory};
use deltalog::solver::{entails, extremum, EntailResult, Sense};

fn main() {
    let th = parse_theory("(eq (odot x y) 1/2)").unwrap();
    for goal in ["(eq (or x y) 1)", "(eq (and x y) 3/4)", "(eq (to (odot x y) (and x y)) 1)"] {
        match entails(&th, &parse_equation(goal).unwrap()).unwrap() {
            EntailResult::Entailed => println!("{goal}: ENTAILED"),
            EntailResult::Refuted(f) => println!("{goal}: REFUTED at {f}"),
        }
    }

    let t = parse_term("(dist x y)").unwrap();
    for sense in [Sense::Min, Sense::Max] {
        let e = extremum(&t, &th, sense).unwrap();
        println!("{sense:?} of {t} = {} at {}", e.value, e.argpoint);
    }
}
