//! The zero Higgs field on the trivial line bundle, by hand and by the
//! library.
//!
//! The loop quiver with `M = O(-2)` and `V = W = O`. The long exact
//! sequence reads
//!
//! ```text
//! 0 -> Hom(V, W) -> H^0(End O) --d0--> H^0(Hom(O(-2), O))
//!   -> Ext^1(V, W) -> H^1(End O) --d1--> H^1(Hom(O(-2), O)) -> Ext^2(V, W) -> 0
//! ```
//!
//! with `H^0(O) = 1`, `H^0(O(2)) = 3`, `H^1(O) = H^1(O(2)) = 0`. Both
//! Higgs fields are zero, so `d0(f) = f . 0 - 0 . (1 (x) f) = 0` and `d1`
//! has zero source. Hence `Hom = 1`, `Ext^1 = 3 + 0 = 3`, `Ext^2 = 0`,
//! and `chi = 1 - 3 = chi(O, O) - chi(O(-2), O) = 1 - 3`.

use quivhom::p1::{cech_hyper, ext_quiver_sheaf, middle_dims, QSheafP1, SplitBundle};
use quivhom::{PrimeField, Quiver};

fn main() {
    let f = PrimeField::new(101).unwrap();
    let line = |d: i64| SplitBundle::new(vec![d]).unwrap();
    let v = QSheafP1::zero_maps(f, Quiver::loop_quiver(), vec![line(-2)], vec![line(0)]).unwrap();

    let [h0f, h0g, h1f, h1g] = middle_dims(&v, &v);
    println!("H^0 terms {h0f} -> {h0g}, H^1 terms {h1f} -> {h1g}");
    let hand = [h0f, h0g + h1f, h1g];
    let les = ext_quiver_sheaf(&v, &v).unwrap();
    let cech = cech_hyper(&v, &v).unwrap();
    println!("by hand {hand:?}, sequence {:?}, Cech {:?}", les.dims(), cech.dims());
    assert_eq!(hand, [1, 3, 0]);
    assert_eq!(les.dims(), hand);
    assert_eq!(cech.dims(), hand);
}
