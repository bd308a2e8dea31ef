//! Path enumeration and twisted path dimensions.

use quivhom::twisted::TwistData;
use quivhom::Quiver;

fn main() {
    // two vertices, an arrow each way and a loop at 0
    let q = Quiver::new(2, vec![(0, 1), (1, 0), (0, 0)]).unwrap();
    let twist = TwistData::new(vec![2, 1, 3]).unwrap();
    let table = q.enumerate_paths(3);
    for ((len, head), paths) in table.groups() {
        let dims: usize = paths.iter().map(|p| twist.path_dim(p)).sum();
        println!(
            "length {len}, head {head}: {} paths, twisted dimension {dims}",
            paths.len()
        );
    }
    println!("acyclic: {}", q.is_acyclic());
}
