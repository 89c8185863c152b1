//! Exact evaluation of terms, including δ-terms over eventually periodic
//! sequences.

use deltalog::cli::{parse_assignment, parse_term};
use deltalog::eval::eval;
use deltalog::syntax::{rat, scalar_term, Term};

fn main() {
    let f = parse_assignment("x=1/2,y=1/3").unwrap();
    for text in [
        "(oplus x (neg y))",
        "(delta (pre x) (per 1))",
        "(delta (pre) (per x y))",
        "(dist (pow x 3) (half y))",
        "(scalar 2/7 (or x y))",
    ] {
        let t = parse_term(text).unwrap();
        println!("{text:<28} = {}", eval(&t, &f).unwrap());
    }

    // scalars unfold into δ-terms over their binary expansion
    let third = scalar_term(&rat(1, 3), Term::var("x")).unwrap();
    println!("1/3·x as a δ-term: {third}");
    println!("  at x=1/2: {}", eval(&third, &f).unwrap());
}
