//! Ext of a twisted sheaf with a nonzero Higgs field, by the long exact
//! sequence and by Cech hypercohomology, across several windows.

use quivhom::p1::{
    cech_hyper_with_window, default_window, ext_quiver_sheaf, BinForm, FormMatrix, QSheafP1, SplitBundle,
};
use quivhom::{Field, Quiver, Rationals};

fn main() {
    let f = Rationals;
    let m = SplitBundle::new(vec![-1]).unwrap();
    let e = SplitBundle::new(vec![0, -1]).unwrap();
    let (source, _) = m.tensor(&e);
    // phi : O(-1) (+) O(-2) -> O (+) O(-1)
    let mut entries = FormMatrix::zero(f, source.clone(), e.clone()).entries().to_vec();
    entries[0][0] = BinForm::monomial(f, 1, 0);
    entries[1][0] = BinForm::constant(f.one());
    entries[1][1] = BinForm::monomial(f, 1, 1);
    let phi = FormMatrix::new(source, e.clone(), entries).unwrap();
    let v = QSheafP1::new(f, Quiver::loop_quiver(), vec![m], vec![e], vec![phi]).unwrap();

    let les = ext_quiver_sheaf(&v, &v).unwrap();
    println!(
        "sequence: {:?} (d0 rank {}, d1 rank {})",
        les.dims(),
        les.rank_delta0,
        les.rank_delta1
    );
    let t = default_window(&v, &v).unwrap();
    for w in [t, t + 1, t + 3] {
        let h = cech_hyper_with_window(&v, &v, w).unwrap();
        println!("Cech window {w}: {:?}, total dims {:?}", h.dims(), h.total_dims);
    }
}
