//! The local deduction theorem: the least `k` with `Σ ⊨ (sᵏ → t) ≈ 1`.

use deltalog::cli::{parse_term, parse_theory};
use deltalog::meta::{deduction_exponent, DEFAULT_ITER_CAP};

fn main() {
    let cases = [
        ("", "x", "(odot x x)"),
        ("", "x", "(pow x 5)"),
        ("(eq y x)", "x", "(odot (odot x y) x)"),
        ("(eq (oplus y y) x)", "x", "(odot y y)"),
    ];
    for (theory, s, t) in cases {
        let th = parse_theory(theory).unwrap();
        let (s, t) = (parse_term(s).unwrap(), parse_term(t).unwrap());
        match deduction_exponent(&th, &s, &t, DEFAULT_ITER_CAP) {
            Ok(k) => println!("Σ = {{{theory}}}  s = {s}  t = {t}  k = {k}"),
            Err(e) => println!("Σ = {{{theory}}}  s = {s}  t = {t}  {e}"),
        }
    }
}
