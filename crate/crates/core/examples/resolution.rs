//! The truncated standard resolution: exactness check and lifting a
//! random cocycle through `d`.

use quivhom::twisted::{apply_d, check_resolution_exactness, lift_beta, random_beta, TwistedRep};
use quivhom::PrimeField;
use rand::SeedableRng;

fn main() {
    let f = PrimeField::new(101).unwrap();
    let j3 = TwistedRep::jordan_block(f, 3);
    for n in 1..=4 {
        let r = check_resolution_exactness(&j3, n).unwrap();
        println!(
            "N={n}: rank eps {}, rank d {} of {}, exact {}",
            r.rank_eps,
            r.rank_d,
            r.right_dim,
            r.all_pass()
        );
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let beta = random_beta(&j3, 3, &mut rng);
    let alpha = lift_beta(&j3, &beta).unwrap();
    println!(
        "lifted beta over 3 degrees; d(alpha) == beta: {}",
        apply_d(&j3, &alpha).unwrap() == beta
    );
}
