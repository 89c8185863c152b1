//! Interpolants for jointly inconsistent theories and a multi-point
//! interpolant taking prescribed values on pairwise inconsistent pieces.

use deltalog::cli::{parse_equation, parse_theory};
use deltalog::eval::eval;
use deltalog::meta::{interpolant, multipoint_interpolant, DEFAULT_ITER_CAP};
use deltalog::solver::{entails, satisfiable};
use deltalog::syntax::{rat, Equation, Term};

fn main() {
    let s1 = parse_theory("(eq (odot x y) 1/2)").unwrap();
    let s2 = parse_theory("(eq (oplus x y) 1/2)").unwrap();
    let i = interpolant(&s1, &s2, DEFAULT_ITER_CAP).unwrap();
    println!("interpolant {} ({:?})", i.term, i.kind);
    assert!(entails(&s1, &Equation::is_zero(i.term.clone())).unwrap().is_entailed());
    assert!(entails(&s2, &Equation::is_one(i.term.clone())).unwrap().is_entailed());

    let pieces: Vec<_> = [("(eq x 0)", rat(1, 3)), ("(eq x 1/2)", rat(1, 1)), ("(eq x 1)", rat(1, 5))]
        .into_iter()
        .map(|(t, r)| (parse_theory(t).unwrap(), r))
        .collect();
    let a = multipoint_interpolant(&pieces, DEFAULT_ITER_CAP).unwrap();
    println!("multi-point interpolant {a}");
    for (th, r) in &pieces {
        let f = match satisfiable(th).unwrap() {
            deltalog::solver::SatResult::Sat(f) => f,
            _ => unreachable!(),
        };
        println!("  on {}: {} (want {r})", th.to_string().trim(), eval(&a, &f).unwrap());
        let goal = parse_equation(&format!("(eq (dist {a} {}) 0)", Term::constant(r.clone()))).unwrap();
        assert!(entails(th, &goal).unwrap().is_entailed());
    }
}
