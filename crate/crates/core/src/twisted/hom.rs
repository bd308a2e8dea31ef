//! Hom and Ext^1 between twisted representations over a field, through the
//! map
//!
//! ```text
//! d : (+)_i Hom(V_i, W_i) -> (+)_a Hom(M_a (x) V_ta, W_ha)
//!     (f_i) |-> (f_ha phi_a - psi_a (1 (x) f_ta))_a
//! ```
//!
//! whose kernel is `Hom(V, W)` and whose cokernel is `Ext^1(V, W)`.
//! Each Hom block is vectorised column-major; blocks follow vertex order on
//! the left and arrow order on the right.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{unvec_col_major, vec_col_major, Matrix};
use crate::sequence::ExtReport;

use super::rep::{RepMorphism, TwistedRep};

/// Offsets of the Hom blocks on both sides of `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaLayout {
    pub vertex_offsets: Vec<usize>,
    pub arrow_offsets: Vec<usize>,
    pub domain_dim: usize,
    pub codomain_dim: usize,
}

impl DeltaLayout {
    pub fn new<F: Field>(v: &TwistedRep<F>, w: &TwistedRep<F>) -> Self {
        let q = v.quiver();
        let mut vertex_offsets = Vec::with_capacity(q.n_vertices());
        let mut acc = 0;
        for i in 0..q.n_vertices() {
            vertex_offsets.push(acc);
            acc += w.dim(i) * v.dim(i);
        }
        let domain_dim = acc;
        let mut arrow_offsets = Vec::with_capacity(q.n_arrows());
        acc = 0;
        for a in 0..q.n_arrows() {
            arrow_offsets.push(acc);
            acc += w.dim(q.head(a)) * v.twist().dim(a) * v.dim(q.tail(a));
        }
        Self {
            vertex_offsets,
            arrow_offsets,
            domain_dim,
            codomain_dim: acc,
        }
    }
}

pub fn delta_matrix<F: Field>(v: &TwistedRep<F>, w: &TwistedRep<F>) -> Result<Matrix<F>> {
    v.check_compatible(w)?;
    let f = v.field();
    let q = v.quiver();
    let layout = DeltaLayout::new(v, w);
    let mut d = Matrix::zeros(f, layout.codomain_dim, layout.domain_dim);
    for a in 0..q.n_arrows() {
        let (t, h) = (q.tail(a), q.head(a));
        let tw = v.twist().dim(a);
        let (nv_t, nv_h, nw_t, nw_h) = (v.dim(t), v.dim(h), w.dim(t), w.dim(h));
        let row0 = layout.arrow_offsets[a];
        let phi = v.phi(a);
        let psi = w.phi(a);
        // target entry (r, c) of the nw_h x (tw * nv_t) block sits at c * nw_h + r
        for c in 0..tw * nv_t {
            for r in 0..nw_h {
                let row = row0 + c * nw_h + r;
                // + f_h[r, k] * phi[k, c]
                for k in 0..nv_h {
                    let col = layout.vertex_offsets[h] + k * nw_h + r;
                    let val = f.add(d.get(row, col), phi.get(k, c));
                    d.set(row, col, val);
                }
                // - psi[r, m * nw_t + s'] * f_t[s', s] with c = m * nv_t + s
                let (m, s) = (c / nv_t.max(1), c % nv_t.max(1));
                for sp in 0..nw_t {
                    let col = layout.vertex_offsets[t] + s * nw_t + sp;
                    let val = f.sub(d.get(row, col), psi.get(r, m * nw_t + sp));
                    d.set(row, col, val);
                }
            }
        }
    }
    Ok(d)
}

/// Splits a domain vector of `d` into its vertex components.
pub fn morphism_from_vector<F: Field>(v: &TwistedRep<F>, w: &TwistedRep<F>, x: &[F::Elem]) -> RepMorphism<F> {
    let layout = DeltaLayout::new(v, w);
    let components = (0..v.quiver().n_vertices())
        .map(|i| {
            let off = layout.vertex_offsets[i];
            let len = w.dim(i) * v.dim(i);
            unvec_col_major(v.field(), w.dim(i), v.dim(i), &x[off..off + len])
        })
        .collect();
    RepMorphism { components }
}

pub fn morphism_to_vector<F: Field>(m: &RepMorphism<F>) -> Vec<F::Elem> {
    m.components.iter().flat_map(vec_col_major).collect()
}

/// Splits a codomain vector of `d` into one map `M_a (x) V_ta -> W_ha` per arrow.
pub fn arrow_maps_from_vector<F: Field>(v: &TwistedRep<F>, w: &TwistedRep<F>, x: &[F::Elem]) -> Vec<Matrix<F>> {
    let q = v.quiver();
    let layout = DeltaLayout::new(v, w);
    (0..q.n_arrows())
        .map(|a| {
            let rows = w.dim(q.head(a));
            let cols = v.twist().dim(a) * v.dim(q.tail(a));
            let off = layout.arrow_offsets[a];
            unvec_col_major(v.field(), rows, cols, &x[off..off + rows * cols])
        })
        .collect()
}

/// Basis of `Hom(V, W)`, each element re-checked against the intertwining
/// equations.
pub fn hom_space<F: Field>(v: &TwistedRep<F>, w: &TwistedRep<F>) -> Result<Vec<RepMorphism<F>>> {
    let d = delta_matrix(v, w)?;
    d.kernel_basis()
        .iter()
        .map(|x| {
            let m = morphism_from_vector(v, w, x);
            if !m.intertwines(v, w)? {
                return Err(Error::Internal("kernel vector fails to intertwine".into()));
            }
            Ok(m)
        })
        .collect()
}

pub fn ext1_dim<F: Field>(v: &TwistedRep<F>, w: &TwistedRep<F>) -> Result<usize> {
    Ok(delta_matrix(v, w)?.cokernel_dim())
}

/// Full sequence data over a field; the `Ext^1` columns of the base vanish.
pub fn ext_report<F: Field>(v: &TwistedRep<F>, w: &TwistedRep<F>) -> Result<ExtReport> {
    let d = delta_matrix(v, w)?;
    Ok(ExtReport::from_ranks(d.cols(), d.rows(), 0, 0, d.rank(), 0))
}

/// Representatives `eta` (codomain vectors of `d`) whose classes form a
/// basis of `Ext^1(V, W)`: standard basis vectors completing the image.
pub fn ext1_classes<F: Field>(v: &TwistedRep<F>, w: &TwistedRep<F>) -> Result<Vec<Vec<F::Elem>>> {
    let d = delta_matrix(v, w)?;
    let f = v.field();
    Ok(d.cokernel_complement()
        .into_iter()
        .map(|i| {
            let mut e = vec![f.zero(); d.rows()];
            e[i] = f.one();
            e
        })
        .collect())
}

/// The extension `0 -> W -> E -> V -> 0` with `E_i = W_i (+) V_i` and
/// `phi^E_a = [[psi_a, eta_a], [0, phi_a]]`.
pub fn build_extension<F: Field>(v: &TwistedRep<F>, w: &TwistedRep<F>, eta: &[F::Elem]) -> Result<TwistedRep<F>> {
    v.check_compatible(w)?;
    let layout = DeltaLayout::new(v, w);
    if eta.len() != layout.codomain_dim {
        return Err(Error::dims(layout.codomain_dim, eta.len()));
    }
    let f = v.field();
    let q = v.quiver();
    let etas = arrow_maps_from_vector(v, w, eta);
    let dims: Vec<usize> = (0..q.n_vertices()).map(|i| w.dim(i) + v.dim(i)).collect();
    let maps = (0..q.n_arrows())
        .map(|a| {
            let (t, h) = (q.tail(a), q.head(a));
            let tw = v.twist().dim(a);
            let (nw_t, nv_t) = (w.dim(t), v.dim(t));
            let ne_t = nw_t + nv_t;
            let mut m = Matrix::zeros(f, dims[h], tw * ne_t);
            for k in 0..tw {
                for s in 0..nw_t {
                    for r in 0..w.dim(h) {
                        m.set(r, k * ne_t + s, w.phi(a).get(r, k * nw_t + s).clone());
                    }
                }
                for s in 0..nv_t {
                    for r in 0..w.dim(h) {
                        m.set(r, k * ne_t + nw_t + s, etas[a].get(r, k * nv_t + s).clone());
                    }
                    for r in 0..v.dim(h) {
                        m.set(w.dim(h) + r, k * ne_t + nw_t + s, v.phi(a).get(r, k * nv_t + s).clone());
                    }
                }
            }
            m
        })
        .collect();
    let e = TwistedRep::new(f, q.clone(), v.twist().clone(), dims, maps)?;
    let (incl, proj) = canonical_maps(&e, v, w);
    if !incl.intertwines(w, &e)? || !proj.intertwines(&e, v)? {
        return Err(Error::Precondition("extension maps are not morphisms".into()));
    }
    Ok(e)
}

/// Inclusion `W -> E` and projection `E -> V` for `E_i = W_i (+) V_i`.
pub fn canonical_maps<F: Field>(
    e: &TwistedRep<F>,
    v: &TwistedRep<F>,
    w: &TwistedRep<F>,
) -> (RepMorphism<F>, RepMorphism<F>) {
    let f = v.field();
    let n = v.quiver().n_vertices();
    let incl = (0..n)
        .map(|i| {
            let mut m = Matrix::zeros(f, e.dim(i), w.dim(i));
            for r in 0..w.dim(i) {
                m.set(r, r, f.one());
            }
            m
        })
        .collect();
    let proj = (0..n)
        .map(|i| {
            let mut m = Matrix::zeros(f, v.dim(i), e.dim(i));
            for r in 0..v.dim(i) {
                m.set(r, w.dim(i) + r, f.one());
            }
            m
        })
        .collect();
    (RepMorphism { components: incl }, RepMorphism { components: proj })
}

/// Whether `E` (from [`build_extension`]) admits a section `s : V -> E`
/// with `proj . s = id`. Decided by solving the linear system for `s`.
pub fn is_split_extension<F: Field>(e: &TwistedRep<F>, v: &TwistedRep<F>, w: &TwistedRep<F>) -> Result<bool> {
    v.check_compatible(w)?;
    v.check_compatible(e)?;
    let q = v.quiver();
    for i in 0..q.n_vertices() {
        if e.dim(i) != w.dim(i) + v.dim(i) {
            return Err(Error::dims(w.dim(i) + v.dim(i), e.dim(i)));
        }
    }
    let f = v.field();
    let intertwine = delta_matrix(v, e)?;
    let layout = DeltaLayout::new(v, e);
    let n_proj: usize = v.dims().iter().map(|n| n * n).sum();
    let mut sys = Matrix::zeros(f, intertwine.rows() + n_proj, layout.domain_dim);
    let mut rhs = vec![f.zero(); intertwine.rows() + n_proj];
    for r in 0..intertwine.rows() {
        for c in 0..intertwine.cols() {
            sys.set(r, c, intertwine.get(r, c).clone());
        }
    }
    // lower block of s_i is the identity: entry (w_i + r, c) of an e_i x v_i matrix
    let mut row = intertwine.rows();
    for i in 0..q.n_vertices() {
        for c in 0..v.dim(i) {
            for r in 0..v.dim(i) {
                let col = layout.vertex_offsets[i] + c * e.dim(i) + w.dim(i) + r;
                sys.set(row, col, f.one());
                if r == c {
                    rhs[row] = f.one();
                }
                row += 1;
            }
        }
    }
    Ok(sys.solve(&rhs)?.is_some())
}
