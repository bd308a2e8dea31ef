//! The standard injective resolution of a twisted representation,
//!
//! ```text
//! 0 -> V --eps--> (+)_i Hom(e_i A, V_i) --d--> (+)_a Hom(M_a (x) e_ta A, V_ha) -> 0
//! eps(v)(x) = x v
//! d(alpha)_a = alpha_ha . mu_a - phi_a . (1 (x) alpha_ta)
//! ```
//!
//! truncated to path degree `<= N` on the middle term and `<= N - 1` on the
//! right. A component of `d` in degree `l` reads `alpha` in degrees `l` and
//! `l + 1`, so the truncation is itself an exact sequence.
//!
//! Coordinates are degree-major: all degree-0 blocks (vertex order), then
//! degree 1, and so on. Inside a block `Hom(e_i A_l, V_i)` the matrix is
//! vectorised column-major against the path basis of `e_i A_l`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{unvec_col_major, vec_col_major, Matrix, SparseMatrix};
use crate::quiver::{Path, PathTable, Quiver};

use super::rep::{TwistData, TwistedRep};

/// Path bases of `e_i A_l` for `l <= N` and the multiplication maps
/// `mu_a : M_a (x) e_ta A_l -> e_ha A_{l+1}` in those bases.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    max_degree: usize,
    paths: PathTable,
    /// `[l][i][k]`: offset of the `k`-th path of group `(l, i)` in `e_i A_l`.
    path_offsets: Vec<Vec<Vec<usize>>>,
    /// `[l][i]`: `dim e_i A_l`.
    dims: Vec<Vec<usize>>,
    /// `[a][l][m * dim(e_ta A_l) + b]`: image index in `e_ha A_{l+1}`.
    mu: Vec<Vec<Vec<usize>>>,
}

impl GradedBasis {
    pub fn new(quiver: &Quiver, twist: &TwistData, max_degree: usize) -> Self {
        let n = quiver.n_vertices();
        let paths = quiver.enumerate_paths(max_degree);
        let mut path_offsets = Vec::with_capacity(max_degree + 1);
        let mut dims = Vec::with_capacity(max_degree + 1);
        let mut position: HashMap<&Path, usize> = HashMap::new();
        for l in 0..=max_degree {
            let mut offs_l = Vec::with_capacity(n);
            let mut dims_l = Vec::with_capacity(n);
            for i in 0..n {
                let mut acc = 0;
                let offs: Vec<usize> = paths
                    .get(l, i)
                    .iter()
                    .map(|p| {
                        let o = acc;
                        position.insert(p, o);
                        acc += twist.path_dim(p);
                        o
                    })
                    .collect();
                offs_l.push(offs);
                dims_l.push(acc);
            }
            path_offsets.push(offs_l);
            dims.push(dims_l);
        }
        let mut mu = Vec::with_capacity(quiver.n_arrows());
        for a in 0..quiver.n_arrows() {
            let (t, h) = (quiver.tail(a), quiver.head(a));
            let ta = twist.dim(a);
            let mut per_degree = Vec::with_capacity(max_degree);
            for l in 0..max_degree {
                let src_dim = dims[l][t];
                let mut table = vec![usize::MAX; ta * src_dim];
                for (k, q) in paths.get(l, t).iter().enumerate() {
                    let size = twist.path_dim(q);
                    let src_off = path_offsets[l][t][k];
                    let aq = Path::trivial(h)
                        .compose(&quiver.path(vec![a]).expect("single arrow"))
                        .and_then(|pa| pa.compose(q))
                        .expect("a . q composes");
                    let dst_off = position[&aq];
                    for m in 0..ta {
                        for idx in 0..size {
                            // M_a is the most significant factor of M_{a q}
                            table[m * src_dim + src_off + idx] = dst_off + m * size + idx;
                        }
                    }
                }
                per_degree.push(table);
            }
            mu.push(per_degree);
        }
        Self {
            max_degree,
            paths,
            path_offsets,
            dims,
            mu,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn paths(&self) -> &PathTable {
        &self.paths
    }

    /// `dim e_i A_l`.
    pub fn dim(&self, l: usize, i: usize) -> usize {
        self.dims[l][i]
    }

    pub fn path_offset(&self, l: usize, i: usize, k: usize) -> usize {
        self.path_offsets[l][i][k]
    }

    /// Index of `mu_a(e_m (x) b)` in `e_ha A_{l+1}`, for `b` a basis index
    /// of `e_ta A_l`.
    pub fn mu(&self, a: usize, l: usize, m: usize, b: usize, tail_dim: usize) -> usize {
        self.mu[a][l][m * tail_dim + b]
    }
}

/// Block offsets of the two truncated terms for a given representation.
#[derive(Clone, Debug)]
pub struct ResolutionLayout {
    pub basis: GradedBasis,
    /// `[l][i]`, `l <= N`.
    pub vertex_offsets: Vec<Vec<usize>>,
    /// `[l][a]`, `l <= N - 1`.
    pub arrow_offsets: Vec<Vec<usize>>,
    pub middle_dim: usize,
    pub right_dim: usize,
}

impl ResolutionLayout {
    pub fn new<F: Field>(v: &TwistedRep<F>, max_degree: usize) -> Self {
        let q = v.quiver();
        let basis = GradedBasis::new(q, v.twist(), max_degree);
        let mut acc = 0;
        let mut vertex_offsets = Vec::new();
        for l in 0..=max_degree {
            vertex_offsets.push(
                (0..q.n_vertices())
                    .map(|i| {
                        let o = acc;
                        acc += v.dim(i) * basis.dim(l, i);
                        o
                    })
                    .collect(),
            );
        }
        let middle_dim = acc;
        acc = 0;
        let mut arrow_offsets = Vec::new();
        for l in 0..max_degree {
            arrow_offsets.push(
                (0..q.n_arrows())
                    .map(|a| {
                        let o = acc;
                        acc += v.dim(q.head(a)) * v.twist().dim(a) * basis.dim(l, q.tail(a));
                        o
                    })
                    .collect(),
            );
        }
        Self {
            basis,
            vertex_offsets,
            arrow_offsets,
            middle_dim,
            right_dim: acc,
        }
    }
}

/// Graded pieces of a cochain: `blocks[x][l]` is the degree-`l` matrix of the
/// component indexed by vertex or arrow `x`.
///
/// On vertices the block is `Hom(e_i A_l, V_i)`, of shape
/// `dims[i] x dim(e_i A_l)`. On arrows it is `Hom(M_a (x) e_ta A_l, V_ha)`, of
/// shape `dims[ha] x (twist[a] * dim(e_ta A_l))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMapFamily<F: Field> {
    pub blocks: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> GradedMapFamily<F> {
    /// Number of degrees stored.
    pub fn degrees(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn zero_vertex_family(v: &TwistedRep<F>, basis: &GradedBasis) -> Self {
        let q = v.quiver();
        Self {
            blocks: (0..q.n_vertices())
                .map(|i| {
                    (0..=basis.max_degree())
                        .map(|l| Matrix::zeros(v.field(), v.dim(i), basis.dim(l, i)))
                        .collect()
                })
                .collect(),
        }
    }

    /// Flattens a vertex family into middle-term coordinates.
    pub fn vertex_vector(&self, layout: &ResolutionLayout) -> Vec<F::Elem> {
        let mut out = Vec::with_capacity(layout.middle_dim);
        for l in 0..layout.vertex_offsets.len() {
            for blocks in &self.blocks {
                out.extend(vec_col_major(&blocks[l]));
            }
        }
        out
    }

    /// Flattens an arrow family into right-term coordinates.
    pub fn arrow_vector(&self, layout: &ResolutionLayout) -> Vec<F::Elem> {
        let mut out = Vec::with_capacity(layout.right_dim);
        for l in 0..layout.arrow_offsets.len() {
            for blocks in &self.blocks {
                out.extend(vec_col_major(&blocks[l]));
            }
        }
        out
    }

    pub fn arrows_from_vector(v: &TwistedRep<F>, layout: &ResolutionLayout, x: &[F::Elem]) -> Result<Self> {
        if x.len() != layout.right_dim {
            return Err(Error::dims(layout.right_dim, x.len()));
        }
        let q = v.quiver();
        let blocks = (0..q.n_arrows())
            .map(|a| {
                (0..layout.arrow_offsets.len())
                    .map(|l| {
                        let rows = v.dim(q.head(a));
                        let cols = v.twist().dim(a) * layout.basis.dim(l, q.tail(a));
                        let off = layout.arrow_offsets[l][a];
                        unvec_col_major(v.field(), rows, cols, &x[off..off + rows * cols])
                    })
                    .collect()
            })
            .collect();
        Ok(Self { blocks })
    }
}

/// `eps` and `d` on the degree-`<= N` truncation.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub layout: ResolutionLayout,
    pub eps: SparseMatrix<F>,
    pub d: SparseMatrix<F>,
}

pub fn resolution_matrices<F: Field>(v: &TwistedRep<F>, max_degree: usize) -> Result<Resolution<F>> {
    let f = v.field();
    let q = v.quiver();
    let layout = ResolutionLayout::new(v, max_degree);
    let basis = &layout.basis;

    let mut vertex_cols = Vec::with_capacity(q.n_vertices());
    let mut n_cols = 0;
    for i in 0..q.n_vertices() {
        vertex_cols.push(n_cols);
        n_cols += v.dim(i);
    }

    // eps(v)(x) = x v: column (j, r) evaluates every basis path with tail j on e_r
    let mut eps = Vec::new();
    for l in 0..=max_degree {
        for i in 0..q.n_vertices() {
            let ni = v.dim(i);
            for (k, p) in basis.paths().get(l, i).iter().enumerate() {
                let j = p.tail();
                let off = basis.path_offset(l, i, k);
                for idx in 0..v.twist().path_dim(p) {
                    for r in 0..v.dim(j) {
                        let mut e = vec![f.zero(); v.dim(j)];
                        e[r] = f.one();
                        let w = v.act_path(p, idx, j, &e)?;
                        for (s, x) in w.into_iter().enumerate() {
                            if !f.is_zero(&x) {
                                let row = layout.vertex_offsets[l][i] + (off + idx) * ni + s;
                                eps.push((row, vertex_cols[j] + r, x));
                            }
                        }
                    }
                }
            }
        }
    }
    let eps = SparseMatrix::from_triplets(f, layout.middle_dim, n_cols, eps)?;

    let mut d = Vec::new();
    for l in 0..max_degree {
        for a in 0..q.n_arrows() {
            let (t, h) = (q.tail(a), q.head(a));
            let (nt, nh) = (v.dim(t), v.dim(h));
            let src_dim = basis.dim(l, t);
            let phi = v.phi(a);
            for m in 0..v.twist().dim(a) {
                for b in 0..src_dim {
                    let c = m * src_dim + b;
                    let target = basis.mu(a, l, m, b, src_dim);
                    for r in 0..nh {
                        let row = layout.arrow_offsets[l][a] + c * nh + r;
                        // alpha_h(mu_a(e_m (x) b)) in degree l + 1
                        d.push((row, layout.vertex_offsets[l + 1][h] + target * nh + r, f.one()));
                        // - phi_a(e_m (x) alpha_t(b)) in degree l
                        for rp in 0..nt {
                            let coeff = phi.get(r, m * nt + rp);
                            if !f.is_zero(coeff) {
                                d.push((row, layout.vertex_offsets[l][t] + b * nt + rp, f.neg(coeff)));
                            }
                        }
                    }
                }
            }
        }
    }
    let d = SparseMatrix::from_triplets(f, layout.right_dim, layout.middle_dim, d)?;
    Ok(Resolution { layout, eps, d })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExactnessReport {
    pub eps_injective: bool,
    pub ker_d_eq_im_eps: bool,
    pub d_surjective: bool,
    pub rank_eps: usize,
    pub rank_d: usize,
    pub middle_dim: usize,
    pub right_dim: usize,
}

impl ExactnessReport {
    pub fn all_pass(&self) -> bool {
        self.eps_injective && self.ker_d_eq_im_eps && self.d_surjective
    }
}

/// Decides exactness of the truncated resolution from ranks: `eps`
/// injective, `d . eps = 0` with `nullity(d) = dim V`, and `d` onto.
pub fn check_resolution_exactness<F: Field>(v: &TwistedRep<F>, max_degree: usize) -> Result<ExactnessReport> {
    if max_degree == 0 {
        return Err(Error::Precondition("exactness check needs degree bound N >= 1".into()));
    }
    let res = resolution_matrices(v, max_degree)?;
    let total = v.total_dim();
    let rank_eps = res.eps.rank();
    let rank_d = res.d.rank();
    let composite_zero = res.d.mul_dense(&res.eps.to_dense())?.is_zero();
    let nullity = res.layout.middle_dim - rank_d;
    Ok(ExactnessReport {
        eps_injective: rank_eps == total,
        ker_d_eq_im_eps: composite_zero && nullity == total && rank_eps == total,
        d_surjective: rank_d == res.layout.right_dim,
        rank_eps,
        rank_d,
        middle_dim: res.layout.middle_dim,
        right_dim: res.layout.right_dim,
    })
}

/// Solves `d(alpha) = beta` degree by degree: `alpha` vanishes in degree 0
/// and `alpha_i(x_a (x) x) = x_a alpha_ta(x) + beta_a(x_a (x) x)`.
///
/// `beta` holds degrees `0..N`, the result degrees `0..=N`. The answer is
/// checked against the assembled `d` before it is returned.
pub fn lift_beta<F: Field>(v: &TwistedRep<F>, beta: &GradedMapFamily<F>) -> Result<GradedMapFamily<F>> {
    let q = v.quiver();
    if beta.blocks.len() != q.n_arrows() {
        return Err(Error::dims(q.n_arrows(), beta.blocks.len()));
    }
    let top = if q.n_arrows() == 0 { 0 } else { beta.degrees() };
    let res = resolution_matrices(v, top)?;
    let layout = &res.layout;
    let basis = &layout.basis;
    for (a, blocks) in beta.blocks.iter().enumerate() {
        if blocks.len() != top {
            return Err(Error::dims(top, blocks.len()));
        }
        for (l, m) in blocks.iter().enumerate() {
            let shape = (v.dim(q.head(a)), v.twist().dim(a) * basis.dim(l, q.tail(a)));
            if m.shape() != shape {
                return Err(Error::dims(format!("{shape:?}"), format!("{:?}", m.shape())));
            }
        }
    }

    let f = v.field();
    let mut alpha = GradedMapFamily::zero_vertex_family(v, basis);
    for l in 1..=top {
        for a in 0..q.n_arrows() {
            let (t, h) = (q.tail(a), q.head(a));
            let src_dim = basis.dim(l - 1, t);
            for m in 0..v.twist().dim(a) {
                for b in 0..src_dim {
                    let prev = alpha.blocks[t][l - 1].column(b);
                    let acted = v.apply_arrow(a, m, &prev);
                    let col = basis.mu(a, l - 1, m, b, src_dim);
                    let beta_col = m * src_dim + b;
                    for (r, x) in acted.iter().enumerate() {
                        let val = f.add(x, beta.blocks[a][l - 1].get(r, beta_col));
                        alpha.blocks[h][l].set(r, col, val);
                    }
                }
            }
        }
    }

    let lhs = res.d.mul_vec(&alpha.vertex_vector(layout))?;
    if lhs != beta.arrow_vector(layout) {
        return Err(Error::Internal("d(alpha) differs from beta".into()));
    }
    Ok(alpha)
}

/// Applies the truncated `d` to a vertex family.
pub fn apply_d<F: Field>(v: &TwistedRep<F>, alpha: &GradedMapFamily<F>) -> Result<GradedMapFamily<F>> {
    let top = alpha.degrees().saturating_sub(1);
    let res = resolution_matrices(v, top)?;
    let x = res.d.mul_vec(&alpha.vertex_vector(&res.layout))?;
    GradedMapFamily::arrows_from_vector(v, &res.layout, &x)
}

/// A random `beta` on degrees `0..N`.
pub fn random_beta<F: Field, R: rand::Rng + ?Sized>(
    v: &TwistedRep<F>,
    degrees: usize,
    rng: &mut R,
) -> GradedMapFamily<F> {
    let q = v.quiver();
    let basis = GradedBasis::new(q, v.twist(), degrees);
    let f = v.field();
    GradedMapFamily {
        blocks: (0..q.n_arrows())
            .map(|a| {
                (0..degrees)
                    .map(|l| {
                        let rows = v.dim(q.head(a));
                        let cols = v.twist().dim(a) * basis.dim(l, q.tail(a));
                        let data = (0..rows * cols).map(|_| f.sample(rng)).collect();
                        Matrix::from_vec(f, rows, cols, data).expect("sized")
                    })
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn simple_loop<F: Field>(f: F) -> TwistedRep<F> {
        let q = Quiver::loop_quiver();
        let t = TwistData::untwisted(&q);
        TwistedRep::zero_maps(f, q, t, vec![1]).unwrap()
    }

    #[test]
    fn degree_zero_truncation() {
        let f = PrimeField::new(7).unwrap();
        let v = TwistedRep::jordan_block(f, 3);
        let res = resolution_matrices(&v, 0).unwrap();
        assert_eq!(res.d.rows(), 0);
        assert_eq!(res.eps.rank(), 3);
        assert!(check_resolution_exactness(&v, 0).is_err());
    }

    #[test]
    fn polynomial_example_k_mod_x() {
        // k[x]/(x): eps(1) = (1, 0, 0) on the duals of 1, x, x^2
        let q = Rationals;
        let v = simple_loop(q);
        let res = resolution_matrices(&v, 2).unwrap();
        assert_eq!(res.eps.to_dense(), Matrix::from_i64(q, &[&[1], &[0], &[0]]));
        // d(alpha)(p) = alpha(x p) - x alpha(p), x acting by 0
        assert_eq!(res.d.to_dense(), Matrix::from_i64(q, &[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(res.layout.middle_dim - res.d.rank(), 1);
    }

    #[test]
    fn triple_resolution_is_exact() {
        let q = Rationals;
        let quiver = Quiver::new(2, vec![(1, 0)]).unwrap();
        let t = TwistData::untwisted(&quiver);
        let v = TwistedRep::new(q, quiver, t, vec![1, 1], vec![Matrix::from_i64(q, &[&[1]])]).unwrap();
        for n in 1..=3 {
            let r = check_resolution_exactness(&v, n).unwrap();
            assert!(r.all_pass());
            assert_eq!(r.middle_dim - r.rank_d, 2);
        }
        // e_0 A = {e_0, a}, e_1 A = {e_1}: middle has 3 coordinates, right has 1
        let res = resolution_matrices(&v, 1).unwrap();
        assert_eq!((res.layout.middle_dim, res.layout.right_dim), (3, 1));
    }

    #[test]
    fn zero_representation_is_vacuously_exact() {
        let f = PrimeField::new(5).unwrap();
        let q = Quiver::new(2, vec![(0, 1), (1, 1)]).unwrap();
        let t = TwistData::new(vec![2, 1]).unwrap();
        let v = TwistedRep::zero_maps(f, q, t, vec![0, 0]).unwrap();
        assert!(check_resolution_exactness(&v, 3).unwrap().all_pass());
    }

    #[test]
    fn jordan_two_exact_at_three() {
        let f = PrimeField::new(101).unwrap();
        assert!(check_resolution_exactness(&TwistedRep::jordan_block(f, 2), 3)
            .unwrap()
            .all_pass());
    }

    #[test]
    fn lift_of_zero_is_zero() {
        let f = PrimeField::new(101).unwrap();
        let v = TwistedRep::jordan_block(f, 2);
        let basis = GradedBasis::new(v.quiver(), v.twist(), 3);
        let beta = GradedMapFamily {
            blocks: vec![(0..3).map(|l| Matrix::zeros(f, 2, basis.dim(l, 0))).collect()],
        };
        let alpha = lift_beta(&v, &beta).unwrap();
        assert!(alpha.blocks.iter().flatten().all(Matrix::is_zero));
        assert_eq!(alpha.degrees(), 4);
    }

    #[test]
    fn one_lifting_step_by_hand() {
        // beta = 1 on x (x) 1, i.e. the degree-0 block of the only arrow
        let q = Rationals;
        let v = simple_loop(q);
        let beta = GradedMapFamily {
            blocks: vec![vec![Matrix::from_i64(q, &[&[1]])]],
        };
        let alpha = lift_beta(&v, &beta).unwrap();
        assert_eq!(alpha.blocks[0][0], Matrix::from_i64(q, &[&[0]]));
        assert_eq!(alpha.blocks[0][1], Matrix::from_i64(q, &[&[1]]));
        assert_eq!(apply_d(&v, &alpha).unwrap(), beta);
    }

    #[test]
    fn mu_is_a_bijection_onto_positive_degrees() {
        let q = Quiver::new(2, vec![(0, 1), (1, 0), (1, 1)]).unwrap();
        let t = TwistData::new(vec![2, 1, 2]).unwrap();
        let basis = GradedBasis::new(&q, &t, 3);
        for l in 0..3 {
            for i in 0..2 {
                let mut hit = vec![0; basis.dim(l + 1, i)];
                for a in q.arrows_into(i) {
                    let src = basis.dim(l, q.tail(a));
                    for m in 0..t.dim(a) {
                        for b in 0..src {
                            hit[basis.mu(a, l, m, b, src)] += 1;
                        }
                    }
                }
                assert!(hit.iter().all(|&c| c == 1));
            }
        }
    }

    fn random_rep(seed: u64) -> TwistedRep<PrimeField> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let b = crate::gen::VectorBounds {
            max_vertices: 3,
            max_arrows: 4,
            max_dim: 2,
            max_twist: 2,
        };
        crate::gen::random_vector_pair(&mut rng, PrimeField::new(101).unwrap(), &b).0
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn random_resolutions_are_exact(seed in any::<u64>(), n in 1usize..=3) {
            let v = random_rep(seed);
            prop_assert!(check_resolution_exactness(&v, n).unwrap().all_pass());
        }

        #[test]
        fn lifting_inverts_d(seed in any::<u64>()) {
            let v = random_rep(seed);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let beta = random_beta(&v, 3, &mut rng);
            let alpha = lift_beta(&v, &beta).unwrap();
            if v.quiver().n_arrows() > 0 {
                prop_assert_eq!(apply_d(&v, &alpha).unwrap(), beta);
            }
        }
    }
}
