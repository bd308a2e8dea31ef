//! Rank, kernel and cokernel over Q and F_p.

use quivhom::linalg::Matrix;
use quivhom::{Field, PrimeField, Rationals};

fn main() {
    let q = Rationals;
    let a = Matrix::from_i64(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    println!("over Q: rank {}, nullity {}", a.rank(), a.nullity());
    for v in a.kernel_basis() {
        let shown: Vec<String> = v.iter().map(|x| q.format(x)).collect();
        println!("  kernel vector [{}]", shown.join(", "));
    }
    println!("  cokernel complement {:?}", a.cokernel_complement());

    // 3 = 0 in F_3, so the same integer matrix drops rank
    let f3 = PrimeField::new(3).unwrap();
    let b = Matrix::from_i64(f3, &[&[1, 2], &[2, 1]]);
    let b_q = Matrix::from_i64(q, &[&[1, 2], &[2, 1]]);
    println!("[[1,2],[2,1]]: rank {} over Q, rank {} over F_3", b_q.rank(), b.rank());
}
