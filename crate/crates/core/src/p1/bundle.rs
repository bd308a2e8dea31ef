//! Split bundles `O(d_1) (+) ... (+) O(d_r)` on the projective line and the
//! maps between them, written as matrices of binary forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

/// Twists in non-increasing order. The empty bundle is the zero sheaf.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SplitBundle {
    twists: Vec<i64>,
}

impl SplitBundle {
    pub fn new(twists: Vec<i64>) -> Result<Self> {
        if let Some(k) = twists.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::Validation(format!(
                "bundle twists must be non-increasing, found {} before {}",
                twists[k],
                twists[k + 1]
            )));
        }
        Ok(Self { twists })
    }

    /// Sorts into canonical order.
    pub fn from_unsorted(mut twists: Vec<i64>) -> Self {
        twists.sort_by(|a, b| b.cmp(a));
        Self { twists }
    }

    pub fn zero() -> Self {
        Self { twists: Vec::new() }
    }

    pub fn line(d: i64) -> Self {
        Self { twists: vec![d] }
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twist(&self, k: usize) -> i64 {
        self.twists[k]
    }

    pub fn is_zero(&self) -> bool {
        self.twists.is_empty()
    }

    /// Shifts every summand by `t`, i.e. `E (x) O(t)`.
    pub fn shift(&self, t: i64) -> Self {
        Self {
            twists: self.twists.iter().map(|d| d + t).collect(),
        }
    }

    /// `self (x) other` in canonical order, with the permutation sending the
    /// product index `m * other.rank() + s` to its sorted position.
    pub fn tensor(&self, other: &Self) -> (Self, Vec<usize>) {
        let raw: Vec<i64> = self
            .twists
            .iter()
            .flat_map(|m| other.twists.iter().map(move |s| m + s))
            .collect();
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&x, &y| raw[y].cmp(&raw[x]));
        let mut perm = vec![0; raw.len()];
        for (pos, &k) in order.iter().enumerate() {
            perm[k] = pos;
        }
        (Self::from_unsorted(raw), perm)
    }
}

impl TryFrom<Vec<i64>> for SplitBundle {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SplitBundle> for Vec<i64> {
    fn from(b: SplitBundle) -> Self {
        b.twists
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.twists.iter().map(|d| format!("O({d})")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// A binary form of degree `d`: coefficients of `x^d, x^(d-1) y, ..., y^d`.
/// A negative degree carries no coefficients and stands for zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinForm<F: Field> {
    degree: i64,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> BinForm<F> {
    pub fn new(degree: i64, coeffs: Vec<F::Elem>) -> Result<Self> {
        let expected = (degree + 1).max(0) as usize;
        if coeffs.len() != expected {
            return Err(Error::dims(
                format!("{expected} coefficients for degree {degree}"),
                coeffs.len(),
            ));
        }
        Ok(Self { degree, coeffs })
    }

    pub fn zero(f: F, degree: i64) -> Self {
        Self {
            degree,
            coeffs: vec![f.zero(); (degree + 1).max(0) as usize],
        }
    }

    /// `x^(d-k) y^k`.
    pub fn monomial(f: F, degree: i64, k: usize) -> Self {
        let mut m = Self::zero(f, degree);
        m.coeffs[k] = f.one();
        m
    }

    pub fn constant(c: F::Elem) -> Self {
        Self {
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self, f: F) -> bool {
        self.coeffs.iter().all(|c| f.is_zero(c))
    }

    /// Nonzero terms as `(x exponent, coefficient)`.
    pub fn terms(&self, f: F) -> impl Iterator<Item = (i64, &F::Elem)> + '_ {
        let d = self.degree;
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| !f.is_zero(c))
            .map(move |(k, c)| (d - k as i64, c))
    }

    pub fn scale(&self, f: F, c: &F::Elem) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| f.mul(c, x)).collect(),
        }
    }

    pub fn add(&self, f: F, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::dims(self.degree, other.degree));
        }
        Ok(Self {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn mul(&self, f: F, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        let mut out = Self::zero(f, degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] = f.mul_add(&out.coeffs[i + j], a, b);
            }
        }
        out
    }
}

/// A map of split bundles: `entries[i][j]` is a form of degree
/// `target[i] - source[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormMatrix<F: Field> {
    source: SplitBundle,
    target: SplitBundle,
    entries: Vec<Vec<BinForm<F>>>,
}

impl<F: Field> FormMatrix<F> {
    pub fn new(source: SplitBundle, target: SplitBundle, entries: Vec<Vec<BinForm<F>>>) -> Result<Self> {
        if entries.len() != target.rank() {
            return Err(Error::dims(format!("{} rows", target.rank()), entries.len()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != source.rank() {
                return Err(Error::dims(format!("{} columns in row {i}", source.rank()), row.len()));
            }
            for (j, e) in row.iter().enumerate() {
                let d = target.twist(i) - source.twist(j);
                if e.degree() != d {
                    return Err(Error::Validation(format!(
                        "entry ({i},{j}) has degree {}, expected {d}",
                        e.degree()
                    )));
                }
            }
        }
        Ok(Self {
            source,
            target,
            entries,
        })
    }

    pub fn zero(f: F, source: SplitBundle, target: SplitBundle) -> Self {
        let entries = target
            .twists()
            .iter()
            .map(|t| source.twists().iter().map(|s| BinForm::zero(f, t - s)).collect())
            .collect();
        Self {
            source,
            target,
            entries,
        }
    }

    pub fn source(&self) -> &SplitBundle {
        &self.source
    }

    pub fn target(&self) -> &SplitBundle {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> &BinForm<F> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<BinForm<F>>] {
        &self.entries
    }

    pub fn is_zero(&self, f: F) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero(f))
    }

    pub fn scale(&self, f: F, c: &F::Elem) -> Self {
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.scale(f, c)).collect())
                .collect(),
        }
    }

    /// Same forms, both bundles shifted by `t`.
    pub fn shift(&self, t: i64) -> Self {
        Self {
            source: self.source.shift(t),
            target: self.target.shift(t),
            entries: self.entries.clone(),
        }
    }
}
