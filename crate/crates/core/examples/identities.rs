//! The defining δ-algebra identities checked on sample instances, and
//! premise bundling: a family of equations `tᵢ ≈ 1` as one δ-equation.

use deltalog::cli::parse_term;
use deltalog::eval::Valuation;
use deltalog::identities::{holds, sides, Identity};
use deltalog::meta::{bundle_theory, unbundled};
use deltalog::solver::entails_all;
use deltalog::syntax::{rat, EpSeq, Term, Theory};

fn main() {
    let (x, y) = (Term::var("x"), Term::var("y"));
    let xs = EpSeq::new(vec![x.clone()], vec![Term::neg(y.clone()), parse_term("(odot x y)").unwrap()]).unwrap();
    let ys = EpSeq::new(vec![], vec![y, x]).unwrap();
    let f = Valuation::new().with("x", rat(3, 5)).unwrap().with("y", rat(1, 7)).unwrap();
    for id in Identity::ALL {
        let (l, r) = sides(id, &xs, &ys);
        println!("{id:<5} {}  {l}  vs  {r}", if holds(id, &xs, &ys, &f).unwrap() { "ok" } else { "FAILED" });
    }

    let family = EpSeq::new(
        vec![parse_term("(to x y)").unwrap()],
        vec![parse_term("(or x (neg y))").unwrap(), parse_term("(to y x)").unwrap()],
    )
    .unwrap();
    let bundled = Theory::new(vec![bundle_theory(&family)]);
    let slots = unbundled(&family);
    println!("bundled: {}", bundled.to_string().trim());
    println!("equivalent to {} slot equations: {}", slots.len(),
        entails_all(&bundled, &slots).unwrap() && entails_all(&slots, &bundled).unwrap());
}
