//! Hom and Ext^1 between twisted representations, with the long exact
//! sequence they sit in.

use quivhom::linalg::Matrix;
use quivhom::twisted::{ext_report, hom_space, TwistData, TwistedRep};
use quivhom::{Quiver, Rationals};

fn main() {
    let f = Rationals;
    // Kronecker quiver with M_a two-dimensional on the first arrow
    let q = Quiver::new(2, vec![(0, 1), (0, 1)]).unwrap();
    let t = TwistData::new(vec![2, 1]).unwrap();
    let v = TwistedRep::new(
        f,
        q.clone(),
        t.clone(),
        vec![1, 1],
        vec![Matrix::from_i64(f, &[&[1, 0]]), Matrix::from_i64(f, &[&[1]])],
    )
    .unwrap();
    let w = TwistedRep::zero_maps(f, q, t, vec![1, 2]).unwrap();
    for (name, a, b) in [("Hom(V, V)", &v, &v), ("Hom(V, W)", &v, &w), ("Hom(W, V)", &w, &v)] {
        let r = ext_report(a, b).unwrap();
        println!("{name}: hom {}, ext1 {}", r.ext0, r.ext1);
    }
    println!(
        "a basis of Hom(V, V) has {} morphisms",
        hom_space(&v, &v).unwrap().len()
    );
    for term in ext_report(&v, &w).unwrap().trace() {
        println!("  {:<28} {}", term.term, term.dim);
    }
}
