//! Deciding whether a finite theory has a model in `[0,1]`.

use deltalog::cli::parse_theory;
use deltalog::eval::eval;
use deltalog::solver::{satisfiable, SatResult};

fn main() {
    let theories = [
        "(eq (oplus x x) 1)\n(eq (odot y y) 0)\n(eq (dist x y) 1/4)",
        "(eq x 0)\n(eq x 1)",
        "(eq (delta (pre x) (per y)) 3/4)\n(eq (to x y) 0)",
    ];
    for text in theories {
        let th = parse_theory(text).unwrap();
        println!("{}", text.replace('\n', "  "));
        match satisfiable(&th).unwrap() {
            SatResult::Sat(f) => {
                println!("  SAT at {f}");
                for eq in &th.equations {
                    assert_eq!(eval(&eq.lhs, &f).unwrap(), eval(&eq.rhs, &f).unwrap());
                }
            }
            SatResult::Unsat => println!("  UNSAT"),
        }
    }
}
