//! The adjunction
//!
//! ```text
//! Hom_A(V, Hom(N (x) e_i A, L))  =  Hom(N (x) V_i, L),   f(v)(n (x) x) = g(n (x) x v)
//! ```
//!
//! for finite-dimensional `N`, `L` and an acyclic quiver, where `e_i A` is
//! spanned by the paths ending at `i`. The coinduced module
//! `I = Hom(N (x) e_i A, L)` has `I_j = Hom(N (x) e_i A e_j, L)`, and an arrow
//! acts by precomposition with right multiplication: `(x_a h)(n (x) p) = h(n (x) p x_a)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::{Path, Quiver};

use super::hom::{delta_matrix, DeltaLayout};
use super::rep::{TwistData, TwistedRep};

/// Basis of `e_i A e_j` for every `j`: pairs `(path, tensor index)`.
fn paths_ending_at(q: &Quiver, twist: &TwistData, i: usize) -> Vec<Vec<(Path, usize)>> {
    let table = q.enumerate_paths(q.n_vertices().saturating_sub(1));
    let mut out = vec![Vec::new(); q.n_vertices()];
    for p in table.iter().filter(|p| p.head() == i) {
        for idx in 0..twist.path_dim(p) {
            out[p.tail()].push((p.clone(), idx));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Adjunction<F: Field> {
    /// The coinduced module `Hom(N (x) e_i A, L)`.
    pub coinduced: TwistedRep<F>,
    /// `Hom(N (x) V_i, L) -> (+)_j Hom(V_j, I_j)`, landing in `Hom_A(V, I)`.
    pub forward: Matrix<F>,
    /// `(+)_j Hom(V_j, I_j) -> Hom(N (x) V_i, L)`, evaluation at `e_i`.
    pub backward: Matrix<F>,
}

/// Both directions of the adjunction for `N = k^n`, `L = k^l`.
///
/// Coordinates: `Hom(N (x) V_i, L)` is an `l x (n * dim V_i)` matrix with the
/// `N` index most significant, vectorised column-major; the other side uses
/// the Hom layout of [`delta_matrix`] for the pair `(V, I)`. Every identity
/// of the adjunction is checked before returning.
pub fn adjunction_iso<F: Field>(v: &TwistedRep<F>, i: usize, n_dim: usize, l_dim: usize) -> Result<Adjunction<F>> {
    let q = v.quiver();
    if let Some(c) = q.find_cycle() {
        return Err(Error::CyclicQuiver(c));
    }
    if i >= q.n_vertices() {
        return Err(Error::IndexOutOfRange(format!("vertex {i}")));
    }
    if n_dim == 0 || l_dim == 0 {
        return Err(Error::Validation(
            "adjunction needs positive dimensions for N and L".into(),
        ));
    }
    let f = v.field();
    let twist = v.twist();
    let basis = paths_ending_at(q, twist, i);
    let index: Vec<HashMap<(Path, usize), usize>> = basis
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect())
        .collect();
    let size = |j: usize| l_dim * n_dim * basis[j].len();

    // coordinates of h in I_j: entry (r, nn * D_j + b) at (nn * D_j + b) * l + r
    let coord = |j: usize, nn: usize, b: usize, r: usize| (nn * basis[j].len() + b) * l_dim + r;

    let mut phi = Vec::with_capacity(q.n_arrows());
    for a in 0..q.n_arrows() {
        let (t, h) = (q.tail(a), q.head(a));
        let arrow = q.path(vec![a])?;
        let mut m = Matrix::zeros(f, size(h), twist.dim(a) * size(t));
        for (bh, (p, idx)) in basis[h].iter().enumerate() {
            let pa = p.compose(&arrow).expect("p ends where a starts");
            for ma in 0..twist.dim(a) {
                // a is traversed first, so its factor is least significant
                let bt = index[t][&(pa.clone(), idx * twist.dim(a) + ma)];
                for nn in 0..n_dim {
                    for r in 0..l_dim {
                        m.set(coord(h, nn, bh, r), ma * size(t) + coord(t, nn, bt, r), f.one());
                    }
                }
            }
        }
        phi.push(m);
    }
    let dims: Vec<usize> = (0..q.n_vertices()).map(size).collect();
    let coinduced = TwistedRep::new(f, q.clone(), twist.clone(), dims, phi)?;

    let layout = DeltaLayout::new(v, &coinduced);
    let ni = v.dim(i);
    let g_dim = l_dim * n_dim * ni;
    // g[r, nn * n_i + s] sits at (nn * n_i + s) * l + r
    let g_coord = |nn: usize, s: usize, r: usize| (nn * ni + s) * l_dim + r;

    // f_j(e_u)(n (x) x)[r] = g(n (x) x e_u)[r]
    let mut forward = Matrix::zeros(f, layout.domain_dim, g_dim);
    for j in 0..q.n_vertices() {
        for u in 0..v.dim(j) {
            let mut e = vec![f.zero(); v.dim(j)];
            e[u] = f.one();
            for (b, (p, idx)) in basis[j].iter().enumerate() {
                let xv = v.act_path(p, *idx, j, &e)?;
                for (s, c) in xv.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    for nn in 0..n_dim {
                        for r in 0..l_dim {
                            // f_j is size(j) x dim V_j, column-major
                            let row = layout.vertex_offsets[j] + u * size(j) + coord(j, nn, b, r);
                            let col = g_coord(nn, s, r);
                            let val = f.add(forward.get(row, col), c);
                            forward.set(row, col, val);
                        }
                    }
                }
            }
        }
    }

    // g(n (x) e_s)[r] = f_i(e_s)(n (x) e_i)[r]
    let trivial = index[i][&(Path::trivial(i), 0)];
    let mut backward = Matrix::zeros(f, g_dim, layout.domain_dim);
    for s in 0..ni {
        for nn in 0..n_dim {
            for r in 0..l_dim {
                let col = layout.vertex_offsets[i] + s * size(i) + coord(i, nn, trivial, r);
                backward.set(g_coord(nn, s, r), col, f.one());
            }
        }
    }

    let d = delta_matrix(v, &coinduced)?;
    if !d.mul(&forward)?.is_zero() {
        return Err(Error::Internal("adjunction image is not a morphism".into()));
    }
    if backward.mul(&forward)? != Matrix::identity(f, g_dim) {
        return Err(Error::Internal("backward after forward is not the identity".into()));
    }
    let kernel = d.kernel_basis();
    if kernel.len() != g_dim {
        return Err(Error::Internal(format!(
            "Hom_A(V, I) has dimension {} but Hom(N (x) V_i, L) has {g_dim}",
            kernel.len()
        )));
    }
    for x in &kernel {
        if forward.mul_vec(&backward.mul_vec(x)?)? != *x {
            return Err(Error::Internal("forward after backward is not the identity".into()));
        }
    }
    Ok(Adjunction {
        coinduced,
        forward,
        backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn single_vertex_is_identity() {
        let q = Rationals;
        let quiver = Quiver::new(1, vec![]).unwrap();
        let t = TwistData::untwisted(&quiver);
        let v = TwistedRep::zero_maps(q, quiver, t, vec![2]).unwrap();
        let adj = adjunction_iso(&v, 0, 1, 1).unwrap();
        assert_eq!(adj.forward, Matrix::identity(q, 2));
        assert_eq!(adj.backward, Matrix::identity(q, 2));
    }

    #[test]
    fn triple_at_sink() {
        let q = Rationals;
        let quiver = Quiver::new(2, vec![(1, 0)]).unwrap();
        let t = TwistData::untwisted(&quiver);
        let v = TwistedRep::new(q, quiver, t, vec![1, 1], vec![Matrix::from_i64(q, &[&[1]])]).unwrap();
        let adj = adjunction_iso(&v, 0, 1, 1).unwrap();
        // e_0 A = <e_0, a>: I_0 = k, I_1 = k
        assert_eq!(adj.coinduced.dims(), &[1, 1]);
        assert_eq!(adj.forward.cols(), 1);
    }

    #[test]
    fn rejects_cycles() {
        let f = PrimeField::new(3).unwrap();
        let v = TwistedRep::jordan_block(f, 2);
        assert!(matches!(adjunction_iso(&v, 0, 1, 1), Err(Error::CyclicQuiver(0))));
    }

    fn random_acyclic(seed: u64) -> (TwistedRep<PrimeField>, usize, usize, usize) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = PrimeField::new(101).unwrap();
        let n = rng.gen_range(1..=3);
        let arrows = (0..rng.gen_range(0..=3))
            .filter_map(|_| {
                let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
                (x != y).then(|| (x.min(y), x.max(y)))
            })
            .collect();
        let q = Quiver::new(n, arrows).unwrap();
        let t = TwistData::new((0..q.n_arrows()).map(|_| rng.gen_range(1..=2)).collect()).unwrap();
        let v = crate::gen::random_rep(&mut rng, f, &q, &t, 2);
        let i = rng.gen_range(0..n);
        (v, i, rng.gen_range(1..=2), rng.gen_range(1..=2))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn random_acyclic_adjunctions(seed in any::<u64>()) {
            let (v, i, n, l) = random_acyclic(seed);
            let adj = adjunction_iso(&v, i, n, l).unwrap();
            prop_assert_eq!(adj.backward.rows(), l * n * v.dim(i));
        }
    }
}
