//! Hypercohomology of `C0 --delta--> C1` from the Cech double complex of the
//! cover `U0 = {x != 0}`, `U1 = {y != 0}`.
//!
//! A section of `O(d)` is a Laurent polynomial in `x^b y^(d-b)`; on `U0` the
//! exponent of `y` is non-negative (`b <= d`), on `U1` the exponent of `x`
//! is (`b >= 0`), and on the overlap `b` is free. Only `b` in `[-T, T]` is
//! kept. `delta` multiplies by forms and so never lowers `b`: terms above
//! the window are dropped, which is the quotient by a subcomplex, and every
//! graded piece outside the window is acyclic once `T > max |d|`.
//!
//! ```text
//! T0 = C(C0)^0            D0 s     = (s1 - s0, delta s)
//! T1 = C(C0)^1 + C(C1)^0  D1 (t,u) = delta t - (u1 - u0)
//! T2 = C(C1)^1
//! ```

use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::linalg::SparseMatrix;

use super::les::SheafComplex;
use super::qsheaf::QSheafP1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HyperReport {
    pub hh0: usize,
    pub hh1: usize,
    pub hh2: usize,
    pub window: i64,
    pub total_dims: [usize; 3],
    pub rank_d0: usize,
    pub rank_d1: usize,
}

impl HyperReport {
    pub fn dims(&self) -> [usize; 3] {
        [self.hh0, self.hh1, self.hh2]
    }
}

/// Offsets of the windowed Cech groups of a list of line bundles.
struct CechLayout {
    t: i64,
    /// per summand: start of the `U0` block, the `U1` block
    zero: Vec<(usize, usize)>,
    /// per summand: start of the overlap block
    one: Vec<usize>,
}

impl CechLayout {
    fn new(degrees: &[i64], t: i64, zero_base: usize, one_base: usize) -> (Self, usize, usize) {
        let mut z = zero_base;
        let mut o = one_base;
        let mut zero = Vec::with_capacity(degrees.len());
        let mut one = Vec::with_capacity(degrees.len());
        for &d in degrees {
            let u0 = z;
            z += (d + t + 1).max(0) as usize;
            zero.push((u0, z));
            z += (t + 1) as usize;
            one.push(o);
            o += (2 * t + 1) as usize;
        }
        (Self { t, zero, one }, z, o)
    }

    fn u0(&self, k: usize, b: i64) -> usize {
        self.zero[k].0 + (b + self.t) as usize
    }

    fn u1(&self, k: usize, b: i64) -> usize {
        self.zero[k].1 + b as usize
    }

    fn overlap(&self, k: usize, b: i64) -> usize {
        self.one[k] + (b + self.t) as usize
    }
}

/// Window half-width used by [`cech_hyper`]: `max |d| + 2`.
pub fn default_window<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>) -> Result<i64> {
    Ok(SheafComplex::new(v, w)?.max_abs_twist() + 2)
}

pub fn cech_hyper<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>) -> Result<HyperReport> {
    cech_hyper_with_window(v, w, default_window(v, w)?)
}

pub fn cech_hyper_with_window<F: Field>(v: &QSheafP1<F>, w: &QSheafP1<F>, t: i64) -> Result<HyperReport> {
    let f = v.field();
    let cx = SheafComplex::new(v, w)?;
    let t = t.max(cx.max_abs_twist() + 1);

    // T0 holds C(C0)^0; T1 holds C(C0)^1 first, then C(C1)^0; T2 holds C(C1)^1
    let (l0, dim_t0, c0_overlap) = CechLayout::new(&cx.c0, t, 0, 0);
    let (l1, c1_zero_end, dim_t2) = CechLayout::new(&cx.c1, t, c0_overlap, 0);
    let dim_t1 = c1_zero_end;

    let one = f.one();
    let minus = f.neg(&one);
    let mut d0 = Vec::new();
    let mut d1 = Vec::new();
    for (k, &d) in cx.c0.iter().enumerate() {
        for b in -t..=d {
            d0.push((l0.overlap(k, b), l0.u0(k, b), minus.clone()));
        }
        for b in 0..=t {
            d0.push((l0.overlap(k, b), l0.u1(k, b), one.clone()));
        }
    }
    for (j, &d) in cx.c1.iter().enumerate() {
        for b in -t..=d {
            d1.push((l1.overlap(j, b), l1.u0(j, b), one.clone()));
        }
        for b in 0..=t {
            d1.push((l1.overlap(j, b), l1.u1(j, b), minus.clone()));
        }
    }
    for term in &cx.terms {
        let (k, j) = (term.source, term.target);
        let dk = cx.c0[k];
        for (e, c) in term.form.terms(f) {
            for b in -t..=dk {
                if b + e <= t {
                    d0.push((l1.u0(j, b + e), l0.u0(k, b), c.clone()));
                }
            }
            for b in 0..=t - e {
                d0.push((l1.u1(j, b + e), l0.u1(k, b), c.clone()));
            }
            for b in -t..=t - e {
                d1.push((l1.overlap(j, b + e), l0.overlap(k, b), c.clone()));
            }
        }
    }
    let d0 = SparseMatrix::from_triplets(f, dim_t1, dim_t0, d0)?;
    let d1 = SparseMatrix::from_triplets(f, dim_t2, dim_t1, d1)?;
    debug_assert!(d1.mul_dense(&d0.to_dense()).map(|m| m.is_zero()).unwrap_or(false));
    let (r0, r1) = (d0.rank(), d1.rank());
    Ok(HyperReport {
        hh0: dim_t0 - r0,
        hh1: dim_t1 - r0 - r1,
        hh2: dim_t2 - r1,
        window: t,
        total_dims: [dim_t0, dim_t1, dim_t2],
        rank_d0: r0,
        rank_d1: r1,
    })
}
