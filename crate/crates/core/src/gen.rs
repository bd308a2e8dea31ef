//! Seeded random instances for tests, benchmarks and the `gen` command.

use rand::Rng;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::p1::{BinForm, FormMatrix, QSheafP1, SplitBundle};
use crate::quiver::Quiver;
use crate::twisted::{TwistData, TwistedRep};

/// Upper bounds for random vector-mode instances. Every bound is inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VectorBounds {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_dim: usize,
    pub max_twist: usize,
}

impl Default for VectorBounds {
    fn default() -> Self {
        Self {
            max_vertices: 4,
            max_arrows: 5,
            max_dim: 3,
            max_twist: 2,
        }
    }
}

/// Arrows are drawn independently, so loops and parallel arrows occur.
pub fn random_quiver<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let arrows = (0..rng.gen_range(0..=max_arrows))
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    Quiver::new(n, arrows).expect("endpoints in range")
}

pub fn random_twist<R: Rng + ?Sized>(rng: &mut R, q: &Quiver, max_twist: usize) -> TwistData {
    TwistData::new((0..q.n_arrows()).map(|_| rng.gen_range(1..=max_twist.max(1))).collect()).expect("positive")
}

pub fn random_rep<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    f: F,
    q: &Quiver,
    t: &TwistData,
    max_dim: usize,
) -> TwistedRep<F> {
    let dims: Vec<usize> = (0..q.n_vertices()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps = (0..q.n_arrows())
        .map(|a| {
            let (r, c) = (dims[q.head(a)], t.dim(a) * dims[q.tail(a)]);
            let data = (0..r * c).map(|_| f.sample(rng)).collect();
            Matrix::from_vec(f, r, c, data).expect("sized")
        })
        .collect();
    TwistedRep::new(f, q.clone(), t.clone(), dims, maps).expect("shapes match")
}

/// Two representations of one random quiver with shared twist data.
pub fn random_vector_pair<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    f: F,
    b: &VectorBounds,
) -> (TwistedRep<F>, TwistedRep<F>) {
    let q = random_quiver(rng, b.max_vertices, b.max_arrows);
    let t = random_twist(rng, &q, b.max_twist);
    let v = random_rep(rng, f, &q, &t, b.max_dim);
    let w = random_rep(rng, f, &q, &t, b.max_dim);
    (v, w)
}

/// Upper bounds for random sheaf instances on the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SheafBounds {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_rank: usize,
    /// Twists are drawn from `[-max_twist, max_twist]`.
    pub max_twist: i64,
}

impl Default for SheafBounds {
    fn default() -> Self {
        Self {
            max_vertices: 3,
            max_arrows: 3,
            max_rank: 3,
            max_twist: 3,
        }
    }
}

fn random_bundle<R: Rng + ?Sized>(rng: &mut R, min_rank: usize, b: &SheafBounds) -> SplitBundle {
    let r = rng.gen_range(min_rank..=b.max_rank.max(min_rank));
    SplitBundle::from_unsorted((0..r).map(|_| rng.gen_range(-b.max_twist..=b.max_twist)).collect())
}

pub fn random_form<F: Field, R: Rng + ?Sized>(rng: &mut R, f: F, degree: i64) -> BinForm<F> {
    let coeffs = (0..(degree + 1).max(0)).map(|_| f.sample(rng)).collect();
    BinForm::new(degree, coeffs).expect("sized")
}

pub fn random_form_matrix<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    f: F,
    source: &SplitBundle,
    target: &SplitBundle,
) -> FormMatrix<F> {
    let entries = target
        .twists()
        .iter()
        .map(|t| source.twists().iter().map(|s| random_form(rng, f, t - s)).collect())
        .collect();
    FormMatrix::new(source.clone(), target.clone(), entries).expect("degrees match")
}

pub fn random_sheaf<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    f: F,
    q: &Quiver,
    twists: &[SplitBundle],
    b: &SheafBounds,
) -> QSheafP1<F> {
    let bundles: Vec<SplitBundle> = (0..q.n_vertices()).map(|_| random_bundle(rng, 0, b)).collect();
    let phi = (0..q.n_arrows())
        .map(|a| {
            let (src, _) = twists[a].tensor(&bundles[q.tail(a)]);
            random_form_matrix(rng, f, &src, &bundles[q.head(a)])
        })
        .collect();
    QSheafP1::new(f, q.clone(), twists.to_vec(), bundles, phi).expect("shapes match")
}

/// Two sheaves on one random quiver with shared twisting bundles.
pub fn random_sheaf_pair<F: Field, R: Rng + ?Sized>(rng: &mut R, f: F, b: &SheafBounds) -> (QSheafP1<F>, QSheafP1<F>) {
    let q = random_quiver(rng, b.max_vertices, b.max_arrows);
    let twists: Vec<SplitBundle> = (0..q.n_arrows()).map(|_| random_bundle(rng, 1, b)).collect();
    let v = random_sheaf(rng, f, &q, &twists, b);
    let w = random_sheaf(rng, f, &q, &twists, b);
    (v, w)
}
