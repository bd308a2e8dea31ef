use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::{Path, Quiver};

/// Dimensions of the twisting spaces `M_a`, one per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistData {
    dims: Vec<usize>,
}

impl TwistData {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if let Some(a) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Validation(format!(
                "twist dimension of arrow {a} must be positive"
            )));
        }
        Ok(Self { dims })
    }

    /// Every `M_a` one-dimensional: the ordinary path algebra.
    pub fn untwisted(q: &Quiver) -> Self {
        Self {
            dims: vec![1; q.n_arrows()],
        }
    }

    pub fn dim(&self, a: usize) -> usize {
        self.dims[a]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `dim M_p`: product over the arrows of `p`, 1 for trivial paths.
    pub fn path_dim(&self, p: &Path) -> usize {
        p.arrows().iter().map(|&a| self.dims[a]).product()
    }

    /// Splits a tensor-basis index of `M_p` into one index per arrow, in
    /// traversal order. The factor of the last arrow is most significant.
    pub fn split_index(&self, p: &Path, mut index: usize) -> Result<Vec<usize>> {
        let total = self.path_dim(p);
        if index >= total {
            return Err(Error::IndexOutOfRange(format!(
                "tensor index {index} for path {p} of dimension {total}"
            )));
        }
        Ok(p.arrows()
            .iter()
            .map(|&a| {
                let d = index % self.dims[a];
                index /= self.dims[a];
                d
            })
            .collect())
    }
}

/// A twisted representation: a vector space per vertex and a map
/// `phi_a : M_a (x) V_ta -> V_ha` per arrow.
///
/// The basis of `M_a (x) V_ta` puts the `M_a` index first, so `phi_a` has
/// `dims[ha]` rows and its column `m * dims[ta] + s` is the image of
/// `e_m (x) e_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedRep<F: Field> {
    field: F,
    quiver: Quiver,
    twist: TwistData,
    dims: Vec<usize>,
    phi: Vec<Matrix<F>>,
}

impl<F: Field> TwistedRep<F> {
    pub fn new(field: F, quiver: Quiver, twist: TwistData, dims: Vec<usize>, phi: Vec<Matrix<F>>) -> Result<Self> {
        if twist.dims().len() != quiver.n_arrows() {
            return Err(Error::Validation(format!(
                "{} twist dimensions for {} arrows",
                twist.dims().len(),
                quiver.n_arrows()
            )));
        }
        if dims.len() != quiver.n_vertices() {
            return Err(Error::Validation(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                quiver.n_vertices()
            )));
        }
        if phi.len() != quiver.n_arrows() {
            return Err(Error::Validation(format!(
                "{} arrow maps for {} arrows",
                phi.len(),
                quiver.n_arrows()
            )));
        }
        for (a, m) in phi.iter().enumerate() {
            let shape = (dims[quiver.head(a)], twist.dim(a) * dims[quiver.tail(a)]);
            if m.shape() != shape {
                return Err(Error::Validation(format!(
                    "phi[{a}] has shape {:?}, expected {:?}",
                    m.shape(),
                    shape
                )));
            }
            if m.field() != field {
                return Err(Error::Incompatible(format!("phi[{a}] is over a different field")));
            }
        }
        Ok(Self {
            field,
            quiver,
            twist,
            dims,
            phi,
        })
    }

    /// All arrow maps zero.
    pub fn zero_maps(field: F, quiver: Quiver, twist: TwistData, dims: Vec<usize>) -> Result<Self> {
        let phi = (0..quiver.n_arrows())
            .map(|a| {
                Matrix::zeros(
                    field,
                    *dims.get(quiver.head(a)).unwrap_or(&0),
                    twist.dim(a) * *dims.get(quiver.tail(a)).unwrap_or(&0),
                )
            })
            .collect();
        Self::new(field, quiver, twist, dims, phi)
    }

    /// The `k[x]`-module `k[x]/(x^n)` on the untwisted loop quiver.
    pub fn jordan_block(field: F, n: usize) -> Self {
        let q = Quiver::loop_quiver();
        let mut j = Matrix::zeros(field, n, n);
        for i in 0..n.saturating_sub(1) {
            j.set(i, i + 1, field.one());
        }
        let t = TwistData::untwisted(&q);
        Self::new(field, q, t, vec![n], vec![j]).expect("shapes match")
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn twist(&self) -> &TwistData {
        &self.twist
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn phi(&self, a: usize) -> &Matrix<F> {
        &self.phi[a]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.phi
    }

    /// Same quiver, twist and field.
    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Incompatible("representations over different fields".into()));
        }
        if self.quiver != other.quiver {
            return Err(Error::Incompatible("representations of different quivers".into()));
        }
        if self.twist != other.twist {
            return Err(Error::Incompatible("different twist data".into()));
        }
        Ok(())
    }

    /// The block `phi_a (e_m (x) -) : V_ta -> V_ha`.
    pub fn arrow_slice(&self, a: usize, m: usize) -> Matrix<F> {
        let n = self.dims[self.quiver.tail(a)];
        self.phi[a].submatrix(0, m * n, self.phi[a].rows(), n)
    }

    /// Applies `x v` where `x` is the tensor basis element `index` of `M_p`
    /// and `v` lies in `V_source`. A vector at the wrong vertex is killed,
    /// giving the zero vector of `V_{head p}`.
    pub fn act_path(&self, p: &Path, index: usize, source: usize, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if source >= self.dims.len() {
            return Err(Error::IndexOutOfRange(format!("vertex {source}")));
        }
        if v.len() != self.dims[source] {
            return Err(Error::dims(self.dims[source], v.len()));
        }
        let digits = self.twist.split_index(p, index)?;
        if p.tail() != source {
            return Ok(vec![self.field.zero(); self.dims[p.head()]]);
        }
        let mut cur = v.to_vec();
        for (&a, &m) in p.arrows().iter().zip(&digits) {
            cur = self.apply_arrow(a, m, &cur);
        }
        Ok(cur)
    }

    /// `phi_a(e_m (x) v)` without allocating the slice.
    pub(crate) fn apply_arrow(&self, a: usize, m: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let phi = &self.phi[a];
        let off = m * v.len();
        (0..phi.rows())
            .map(|r| {
                v.iter()
                    .enumerate()
                    .fold(f.zero(), |acc, (s, x)| f.mul_add(&acc, phi.get(r, off + s), x))
            })
            .collect()
    }
}

/// A family `f_i : V_i -> W_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMorphism<F: Field> {
    pub components: Vec<Matrix<F>>,
}

impl<F: Field> RepMorphism<F> {
    pub fn identity(v: &TwistedRep<F>) -> Self {
        Self {
            components: v.dims().iter().map(|&n| Matrix::identity(v.field(), n)).collect(),
        }
    }

    /// Checks `f_ha phi_a = psi_a (1 (x) f_ta)` for every arrow.
    pub fn intertwines(&self, v: &TwistedRep<F>, w: &TwistedRep<F>) -> Result<bool> {
        v.check_compatible(w)?;
        let q = v.quiver();
        if self.components.len() != q.n_vertices() {
            return Err(Error::dims(q.n_vertices(), self.components.len()));
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.shape() != (w.dim(i), v.dim(i)) {
                return Err(Error::dims(
                    format!("{:?}", (w.dim(i), v.dim(i))),
                    format!("{:?}", c.shape()),
                ));
            }
        }
        for a in 0..q.n_arrows() {
            let (t, h) = (q.tail(a), q.head(a));
            let lhs = self.components[h].mul(v.phi(a))?;
            let one_f = tensor_identity(v.field(), v.twist().dim(a), &self.components[t]);
            let rhs = w.phi(a).mul(&one_f)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `1_{k^m} (x) f` with the identity factor most significant.
pub fn tensor_identity<F: Field>(field: F, m: usize, f: &Matrix<F>) -> Matrix<F> {
    let (r, c) = f.shape();
    let mut out = Matrix::zeros(field, m * r, m * c);
    for k in 0..m {
        for i in 0..r {
            for j in 0..c {
                out.set(k * r + i, k * c + j, f.get(i, j).clone());
            }
        }
    }
    out
}
