//! Ext between twisted quiver sheaves through the long exact sequence
//!
//! ```text
//! 0 -> Hom_B -> (+)_i Hom(V_i,W_i) --d0--> (+)_a Hom(M_a V_ta, W_ha)
//!   -> Ext^1_B -> (+)_i Ext^1(V_i,W_i) --d1--> (+)_a Ext^1(M_a V_ta, W_ha) -> Ext^2_B -> 0
//! ```
//!
//! Both `d0` and `d1` come from one sheaf map `delta : C0 -> C1` with
//! `C0 = (+)_i Hom(V_i, W_i)` and `C1 = (+)_a Hom(M_a (x) V_ta, W_ha)`, both split.
//! A summand `O(d)` contributes the monomials `x^b y^(d-b)` with
//! `0 <= b <= d` to `H^0` and the Laurent monomials with `d < b < 0` to `H^1`.
//! Ext^2 of locally free sheaves on a curve vanishes, so the sequence stops.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::sequence::ExtReport;

use super::bundle::{BinForm, FormMatrix, SplitBundle};
use super::qsheaf::QSheafP1;

/// `(dim Hom(E, F), dim Ext^1(E, F))` for split bundles.
pub fn sheaf_hom_ext_dims(e: &SplitBundle, f: &SplitBundle) -> (usize, usize) {
    let mut hom = 0;
    let mut ext = 0;
    for &fi in f.twists() {
        for &ej in e.twists() {
            hom += (fi - ej + 1).max(0) as usize;
            ext += (ej - fi - 1).max(0) as usize;
        }
    }
    (hom, ext)
}

/// `chi(E, F) = sum over summand pairs of (f - e + 1)`.
pub fn chi(e: &SplitBundle, f: &SplitBundle) -> i64 {
    f.twists()
        .iter()
        .flat_map(|fi| e.twists().iter().map(move |ej| fi - ej + 1))
        .sum()
}

/// `dim H^0(O(d))`.
pub fn h0_dim(d: i64) -> usize {
    (d + 1).max(0) as usize
}

/// `dim H^1(O(d))`.
pub fn h1_dim(d: i64) -> usize {
    (-d - 1).max(0) as usize
}

/// Coordinate of `x^b` in the `H^0(O(d))` basis, `x^d` first.
fn h0_index(d: i64, b: i64) -> Option<usize> {
    (0 <= b && b <= d).then(|| (d - b) as usize)
}

/// Coordinate of the class of `x^b` in the `H^1(O(d))` basis, `x^-1` first.
/// Monomials regular on either chart are coboundaries.
fn h1_index(d: i64, b: i64) -> Option<usize> {
    (d < b && b < 0).then(|| (-1 - b) as usize)
}

/// One entry of `delta`: multiplication by `form` from a summand of `C0`
/// into a summand of `C1`.
#[derive(Clone, Debug)]
pub struct DeltaTerm<F: Field> {
    pub source: usize,
    pub target: usize,
    pub form: BinForm<F>,
}

/// The two-term complex `C0 --delta--> C1` as line-bundle summands.
///
/// Summands of `C0` run over vertices and, inside `Hom(V_i, W_i)`,
/// column-major over matrix entries; `C1` does the same over arrows.
#[derive(Clone, Debug)]
pub struct SheafComplex<F: Field> {
    pub c0: Vec<i64>,
    pub c1: Vec<i64>,
    pub c0_offsets: Vec<usize>,
    pub c1_offsets: Vec<usize>,
    pub terms: Vec<DeltaTerm<F>>,
}

impl<F: Field> SheafComplex<F> {
    pub fn new(v: &QSheafP1<F>, w: &QSheafP1<F>) -> Result<Self> {
        v.check_compatible(w)?;
        let f = v.field();
        let q = v.quiver();
        let mut c0 = Vec::new();
        let mut c0_offsets = Vec::with_capacity(q.n_vertices());
        for i in 0..q.n_vertices() {
            c0_offsets.push(c0.len());
            for &vc in v.bundle(i).twists() {
                c0.extend(w.bundle(i).twists().iter().map(|wr| wr - vc));
            }
        }
        let mut c1 = Vec::new();
        let mut c1_offsets = Vec::with_capacity(q.n_arrows());
        for a in 0..q.n_arrows() {
            c1_offsets.push(c1.len());
            for &tc in v.tensor(a).0.twists() {
                c1.extend(w.bundle(q.head(a)).twists().iter().map(|wr| wr - tc));
            }
        }

        let mut terms = Vec::new();
        let mut push = |source: usize, target: usize, form: BinForm<F>| {
            if !form.is_zero(f) {
                terms.push(DeltaTerm { source, target, form });
            }
        };
        for i in 0..q.n_vertices() {
            let (nv, nw) = (v.bundle(i).rank(), w.bundle(i).rank());
            for c in 0..nv {
                for r in 0..nw {
                    let source = c0_offsets[i] + c * nw + r;
                    for a in 0..q.n_arrows() {
                        let nwh = w.bundle(q.head(a)).rank();
                        // f_ha . phi_a
                        if q.head(a) == i {
                            for cp in 0..v.tensor(a).0.rank() {
                                push(source, c1_offsets[a] + cp * nwh + r, v.phi(a).entry(c, cp).clone());
                            }
                        }
                        // - psi_a . (1 (x) f_ta)
                        if q.tail(a) == i {
                            let (_, perm_v) = v.tensor(a);
                            let (_, perm_w) = w.tensor(a);
                            for m in 0..v.twist(a).rank() {
                                let cp = perm_v[m * nv + c];
                                let k = perm_w[m * nw + r];
                                for rp in 0..nwh {
                                    let form = w.phi(a).entry(rp, k).scale(f, &f.neg(&f.one()));
                                    push(source, c1_offsets[a] + cp * nwh + rp, form);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Self {
            c0,
            c1,
            c0_offsets,
            c1_offsets,
            terms,
        })
    }

    /// Largest absolute twist among all summands.
    pub fn max_abs_twist(&self) -> i64 {
        self.c0.iter().chain(&self.c1).map(|d| d.abs()).max().unwrap_or(0)
    }

    fn cohomology_offsets(degrees: &[i64], dim: fn(i64) -> usize) -> (Vec<usize>, usize) {
        let mut acc = 0;
        let offs = degrees
            .iter()
            .map(|&d| {
                let o = acc;
                acc += dim(d);
                o
            })
            .collect();
        (offs, acc)
    }

    fn induced(
        &self,
        f: F,
        dim: fn(i64) -> usize,
        index: fn(i64, i64) -> Option<usize>,
        exponent: fn(i64, usize) -> i64,
    ) -> Matrix<F> {
        let (src, ncols) = Self::cohomology_offsets(&self.c0, dim);
        let (tgt, nrows) = Self::cohomology_offsets(&self.c1, dim);
        let mut m = Matrix::zeros(f, nrows, ncols);
        for t in &self.terms {
            let (ds, dt) = (self.c0[t.source], self.c1[t.target]);
            for u in 0..dim(ds) {
                let b = exponent(ds, u);
                for (e, c) in t.form.terms(f) {
                    if let Some(k) = index(dt, b + e) {
                        let (row, col) = (tgt[t.target] + k, src[t.source] + u);
                        let val = f.add(m.get(row, col), c);
                        m.set(row, col, val);
                    }
                }
            }
        }
        m
    }

    /// `delta` on global sections.
    pub fn delta0(&self, f: F) -> Matrix<F> {
        self.induced(f, h0_dim, h0_index, |d, u| d - u as i64)
    }

    /// `delta` on `H^1`, dropping coboundaries after multiplication.
    pub fn delta1(&self, f: F) -> Matrix<F> {
        self.induced(f, h1_dim, h1_index, |_, u| -1 - u as i64)
    }
}

pub fn delta0_matrix<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>) -> Result<Matrix<F>> {
    Ok(SheafComplex::new(v, w)?.delta0(v.field()))
}

pub fn delta1_matrix<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>) -> Result<Matrix<F>> {
    Ok(SheafComplex::new(v, w)?.delta1(v.field()))
}

/// The four middle dimensions of the sequence, from the twists alone.
pub fn middle_dims<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>) -> [usize; 4] {
    let q = v.quiver();
    let (mut h0f, mut h1f, mut h0g, mut h1g) = (0, 0, 0, 0);
    for i in 0..q.n_vertices() {
        let (h, e) = sheaf_hom_ext_dims(v.bundle(i), w.bundle(i));
        h0f += h;
        h1f += e;
    }
    for a in 0..q.n_arrows() {
        let (h, e) = sheaf_hom_ext_dims(v.tensor(a).0, w.bundle(q.head(a)));
        h0g += h;
        h1g += e;
    }
    [h0f, h0g, h1f, h1g]
}

pub fn ext_quiver_sheaf<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>) -> Result<ExtReport> {
    let f = v.field();
    let complex = SheafComplex::new(v, w)?;
    let d0 = complex.delta0(f);
    let d1 = complex.delta1(f);
    let [h0f, h0g, h1f, h1g] = middle_dims(v, w);
    if d0.shape() != (h0g, h0f) || d1.shape() != (h1g, h1f) {
        return Err(Error::Internal(
            "connecting maps disagree with cohomology dimensions".into(),
        ));
    }
    Ok(ExtReport::from_ranks(h0f, h0g, h1f, h1g, d0.rank(), d1.rank()))
}

/// `sum_i chi(V_i, W_i) - sum_a chi(M_a (x) V_ta, W_ha)`.
pub fn expected_euler<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>) -> i64 {
    let q = v.quiver();
    let vert: i64 = (0..q.n_vertices()).map(|i| chi(v.bundle(i), w.bundle(i))).sum();
    let arr: i64 = (0..q.n_arrows()).map(|a| chi(v.tensor(a).0, w.bundle(q.head(a)))).sum();
    vert - arr
}

/// `ext0 - ext1 + ext2`.
pub fn euler_characteristic<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>) -> Result<i64> {
    Ok(ext_quiver_sheaf(v, w)?.euler())
}

pub fn euler_check<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>) -> Result<bool> {
    Ok(euler_characteristic(v, w)? == expected_euler(v, w))
}

/// Product of form matrices `g . f`.
pub fn compose<F: Field>(field: F, g: &FormMatrix<F>, f: &FormMatrix<F>) -> Result<FormMatrix<F>> {
    if g.source() != f.target() {
        return Err(Error::dims(g.source(), f.target()));
    }
    let entries = (0..g.target().rank())
        .map(|i| {
            (0..f.source().rank())
                .map(|j| {
                    let d = g.target().twist(i) - f.source().twist(j);
                    (0..f.target().rank()).try_fold(BinForm::zero(field, d), |acc, k| {
                        acc.add(field, &g.entry(i, k).mul(field, f.entry(k, j)))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FormMatrix::new(f.source().clone(), g.target().clone(), entries)
}

/// `1 (x) f : M (x) E -> M (x) F` in the sorted bases of both products.
pub fn tensor_identity<F: Field>(field: F, m: &SplitBundle, f: &FormMatrix<F>) -> FormMatrix<F> {
    let (src, perm_s) = m.tensor(f.source());
    let (tgt, perm_t) = m.tensor(f.target());
    let mut entries: Vec<Vec<BinForm<F>>> = tgt
        .twists()
        .iter()
        .map(|t| src.twists().iter().map(|s| BinForm::zero(field, t - s)).collect())
        .collect();
    let (ns, nt) = (f.source().rank(), f.target().rank());
    for k in 0..m.rank() {
        for r in 0..nt {
            for c in 0..ns {
                entries[perm_t[k * nt + r]][perm_s[k * ns + c]] = f.entry(r, c).clone();
            }
        }
    }
    FormMatrix::new(src, tgt, entries).expect("degrees shift together")
}

/// Basis of `Hom_B(V, W)` as families of form matrices, each checked against
/// `f_ha . phi_a = psi_a . (1 (x) f_ta)` by direct multiplication.
pub fn sheaf_hom_space<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>) -> Result<Vec<Vec<FormMatrix<F>>>> {
    let f = v.field();
    let q = v.quiver();
    let complex = SheafComplex::new(v, w)?;
    let kernel = complex.delta0(f).kernel_basis();
    let (offs, _) = SheafComplex::<F>::cohomology_offsets(&complex.c0, h0_dim);
    kernel
        .iter()
        .map(|x| {
            let family: Vec<FormMatrix<F>> = (0..q.n_vertices())
                .map(|i| {
                    let (vb, wb) = (v.bundle(i), w.bundle(i));
                    let entries = (0..wb.rank())
                        .map(|r| {
                            (0..vb.rank())
                                .map(|c| {
                                    let s = complex.c0_offsets[i] + c * wb.rank() + r;
                                    let d = complex.c0[s];
                                    let o = offs[s];
                                    BinForm::new(d, x[o..o + h0_dim(d)].to_vec()).expect("sized")
                                })
                                .collect()
                        })
                        .collect();
                    FormMatrix::new(vb.clone(), wb.clone(), entries).expect("degrees match")
                })
                .collect();
            for a in 0..q.n_arrows() {
                let lhs = compose(f, &family[q.head(a)], v.phi(a))?;
                let lifted = tensor_identity(f, v.twist(a), &family[q.tail(a)]);
                let rhs = compose(f, w.phi(a), &lifted)?;
                if lhs != rhs {
                    return Err(Error::Internal(format!("kernel element fails to commute at arrow {a}")));
                }
            }
            Ok(family)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::quiver::Quiver;

    fn b(t: &[i64]) -> SplitBundle {
        SplitBundle::new(t.to_vec()).unwrap()
    }

    #[test]
    fn line_bundle_hom_ext() {
        assert_eq!(sheaf_hom_ext_dims(&b(&[0]), &b(&[0])), (1, 0));
        assert_eq!(sheaf_hom_ext_dims(&b(&[0]), &b(&[-2])), (0, 1));
        assert_eq!(sheaf_hom_ext_dims(&b(&[-2]), &b(&[0])), (3, 0));
    }

    fn higgs<F: Field>(f: F, v: &[i64]) -> QSheafP1<F> {
        QSheafP1::zero_maps(f, Quiver::loop_quiver(), vec![b(&[-2])], vec![b(v)]).unwrap()
    }

    #[test]
    fn higgs_zero_field() {
        let f = PrimeField::new(101).unwrap();
        let v = higgs(f, &[0]);
        let d0 = delta0_matrix(&v, &v).unwrap();
        assert_eq!(d0.shape(), (3, 1));
        assert!(d0.is_zero());
        let r = ext_quiver_sheaf(&v, &v).unwrap();
        assert_eq!(r.dims(), [1, 3, 0]);
        assert!(euler_check(&v, &v).unwrap());
        assert_eq!(euler_characteristic(&v, &v).unwrap(), -2);
    }

    #[test]
    fn higgs_scalar_field_commutes() {
        let f = Rationals;
        let x2 = BinForm::new(2, vec![f.one(), f.zero(), f.zero()]).unwrap();
        let phi = FormMatrix::new(b(&[-2]), b(&[0]), vec![vec![x2]]).unwrap();
        let v = QSheafP1::new(f, Quiver::loop_quiver(), vec![b(&[-2])], vec![b(&[0])], vec![phi]).unwrap();
        assert_eq!(delta0_matrix(&v, &v).unwrap().rank(), 0);
    }

    #[test]
    fn higgs_split_rank_two() {
        let f = PrimeField::new(101).unwrap();
        let v = higgs(f, &[1, -1]);
        let d1 = delta1_matrix(&v, &v).unwrap();
        // Hom(V, V) has one O(-2) summand
        assert_eq!(d1.cols(), 1);
        assert!(d1.is_zero());
    }

    #[test]
    fn triple_with_identity() {
        let f = Rationals;
        let q = Quiver::new(2, vec![(1, 0)]).unwrap();
        let id = FormMatrix::new(b(&[0]), b(&[0]), vec![vec![BinForm::constant(f.one())]]).unwrap();
        let v = QSheafP1::new(f, q, vec![b(&[0])], vec![b(&[0]), b(&[0])], vec![id]).unwrap();
        let r = ext_quiver_sheaf(&v, &v).unwrap();
        assert_eq!(r.dims(), [1, 0, 0]);
        assert_eq!(euler_characteristic(&v, &v).unwrap(), 1);
        assert!(euler_check(&v, &v).unwrap());
        assert_eq!(sheaf_hom_space(&v, &v).unwrap().len(), 1);
    }

    #[test]
    fn zero_sheaves() {
        let f = PrimeField::new(7).unwrap();
        let v = higgs(f, &[]);
        assert_eq!(ext_quiver_sheaf(&v, &v).unwrap().dims(), [0, 0, 0]);
    }

    #[test]
    fn no_arrows() {
        let f = PrimeField::new(7).unwrap();
        let v = QSheafP1::zero_maps(f, Quiver::new(1, vec![]).unwrap(), vec![], vec![b(&[-2])]).unwrap();
        assert_eq!(ext_quiver_sheaf(&v, &v).unwrap().dims(), [1, 0, 0]);
    }

    #[test]
    fn source_with_vanishing_sections() {
        // 0 <- 1 with M = O, V_1 = O(-2), V_0 = 0: every space is empty
        let f = PrimeField::new(7).unwrap();
        let q = Quiver::new(2, vec![(1, 0)]).unwrap();
        let v = QSheafP1::zero_maps(f, q, vec![b(&[0])], vec![b(&[]), b(&[-2])]).unwrap();
        assert_eq!(delta1_matrix(&v, &v).unwrap().shape(), (0, 0));
    }

    #[test]
    fn connecting_map_on_h1() {
        // loop with M = O(2), V = O(1) + O(-1), phi sending the O(1) summand of
        // M (x) V identically onto O(1): the O(-2) entry of Hom(V, V) hits two
        // different H^1 classes, so d1 has rank one
        let f = Rationals;
        let m = b(&[2]);
        let v = b(&[1, -1]);
        let (t, _) = m.tensor(&v);
        let mut phi = FormMatrix::zero(f, t, v.clone());
        let mut entries = phi.entries().to_vec();
        entries[0][1] = BinForm::constant(f.one());
        phi = FormMatrix::new(phi.source().clone(), v.clone(), entries).unwrap();
        let s = QSheafP1::new(f, Quiver::loop_quiver(), vec![m], vec![v], vec![phi]).unwrap();
        let d1 = delta1_matrix(&s, &s).unwrap();
        assert_eq!(d1.shape(), (5, 1));
        assert_eq!(d1.rank(), 1);
        let r = ext_quiver_sheaf(&s, &s).unwrap();
        assert_eq!(r.ext2, 4);
        assert!(euler_check(&s, &s).unwrap());
    }
}
