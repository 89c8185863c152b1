//! Building a derivation with the proof builder, printing it in the proof
//! file format and checking it; then a corrupted copy is rejected.

use deltalog::calculus::{check_proof, AxiomName, Binding, Justification, ProofBuilder};
use deltalog::cli::{parse_formula, parse_proof};
use deltalog::syntax::{EpSeq, Formula};

fn main() {
    let x = parse_formula("x").unwrap();
    let y = parse_formula("(neg y)").unwrap();

    // from x and x → y, derive y; then δ(x, y, y, …) by the δ-rule
    let mut b = ProofBuilder::new();
    let hx = b.hyp(x.clone());
    let hxy = b.hyp(Formula::imp(x.clone(), y.clone()));
    let hy = b.mp(hx, hxy).unwrap();
    b.delta(EpSeq::new(vec![hx], vec![hy]).unwrap()).unwrap();
    // δ(¬(x→x), x, y, …) → ĥδ(x, y, …)
    let seq = EpSeq::new(vec![x.clone()], vec![y.clone()]).unwrap();
    let d4 = b.axiom(AxiomName::D4b, Binding::new().bind("alpha", x.clone()).bind_seq("alphas", seq)).unwrap();
    println!("D4b instance: {}", b.formula(d4).unwrap());
    let proof = b.finish().unwrap();

    let text = proof.to_string();
    println!("{text}");
    let theta = [x.clone(), Formula::imp(x, y)];
    let reread = parse_proof(&text).unwrap();
    println!("ACCEPT: {}", check_proof(&theta, &reread).unwrap());

    let mut broken = reread.clone();
    broken.steps_mut()[2].justification = Justification::ModusPonens { premise: 2, implication: 1 };
    let r = check_proof(&theta, &broken).unwrap_err();
    println!("REJECT step {} {}: {}", r.step, r.reason, r.detail);
}
