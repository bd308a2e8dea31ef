//! Building extensions from Ext^1 classes and testing whether they split.

use quivhom::twisted::{build_extension, ext1_classes, is_split_extension, DeltaLayout, TwistedRep};
use quivhom::{Field, Rationals};

fn main() {
    let f = Rationals;
    let (j1, j2) = (TwistedRep::jordan_block(f, 1), TwistedRep::jordan_block(f, 2));
    let classes = ext1_classes(&j1, &j2).unwrap();
    println!("Ext^1(J1, J2) has dimension {}", classes.len());
    for eta in &classes {
        let e = build_extension(&j1, &j2, eta).unwrap();
        println!(
            "  class {:?}: middle term dims {:?}, split {}",
            fmt(f, eta),
            e.dims(),
            is_split_extension(&e, &j1, &j2).unwrap()
        );
    }
    let zero = vec![f.zero(); DeltaLayout::new(&j1, &j2).codomain_dim];
    let e = build_extension(&j1, &j2, &zero).unwrap();
    println!("  zero class: split {}", is_split_extension(&e, &j1, &j2).unwrap());
}

fn fmt(f: Rationals, v: &[<Rationals as Field>::Elem]) -> Vec<String> {
    v.iter().map(|x| f.format(x)).collect()
}
