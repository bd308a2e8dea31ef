//! `Hom_A(V, I) = Hom(N (x) V_i, L)` for the module `I` coinduced from a
//! vertex of an acyclic quiver.

use quivhom::linalg::Matrix;
use quivhom::twisted::{adjunction_iso, hom_space, TwistData, TwistedRep};
use quivhom::{Quiver, Rationals};

fn main() {
    let f = Rationals;
    let q = Quiver::chain(2);
    let t = TwistData::new(vec![2, 1]).unwrap();
    let v = TwistedRep::new(
        f,
        q.clone(),
        t,
        vec![2, 1, 1],
        vec![Matrix::from_i64(f, &[&[1, 0], &[0, 1]]), Matrix::from_i64(f, &[&[1]])],
    )
    .unwrap();
    let (n, l) = (2, 1);
    for i in 0..q.n_vertices() {
        let adj = adjunction_iso(&v, i, n, l).unwrap();
        let hom = hom_space(&v, &adj.coinduced).unwrap().len();
        println!(
            "vertex {i}: I has dims {:?}, dim Hom_A(V, I) = {hom}, dim Hom(N (x) V_i, L) = {}",
            adj.coinduced.dims(),
            n * v.dim(i) * l
        );
        let round = adj.backward.mul(&adj.forward).unwrap();
        println!(
            "  backward . forward is the identity: {}",
            round == Matrix::identity(f, round.rows())
        );
    }
}
