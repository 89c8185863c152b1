//! Lattice approximation of sampled functions, with refinement of the grid
//! and the tolerance.

use deltalog::approx::{affine_term, lattice_approximation, SampleSet};
use deltalog::syntax::{rat, Rational};

fn main() {
    println!("2x - 1/2 as a term: {}", affine_term(&rat(2, 1), &rat(-1, 2), 1));

    let parabola = |x: &Rational| x * x;
    for (m, eps) in [(4, rat(1, 4)), (8, rat(1, 8)), (16, rat(1, 16))] {
        let s = SampleSet::grid(m, parabola).unwrap();
        let r = lattice_approximation(&s, &eps).unwrap();
        println!("grid 1/{m}, eps {eps}: max error {}, term size {}", r.max_error, r.term.size());
    }

    // two coordinates, f = max(x1, x2) − x1·x2
    let mut samples = Vec::new();
    for i in 0..=4 {
        for j in 0..=4 {
            let (a, b) = (rat(i, 4), rat(j, 4));
            let f = a.clone().max(b.clone()) - &a * &b;
            samples.push((vec![a, b], f));
        }
    }
    let s = SampleSet::new(2, samples).unwrap();
    let r = lattice_approximation(&s, &rat(1, 8)).unwrap();
    println!("2-d: max error {} over {} samples, term size {}", r.max_error, s.len(), r.term.size());
}
