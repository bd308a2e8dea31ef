use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::Quiver;

use super::bundle::{FormMatrix, SplitBundle};

/// A twisted quiver sheaf of split bundles on the projective line: a bundle
/// `V_i` per vertex and `phi_a : M_a (x) V_ta -> V_ha` per arrow.
///
/// The source of `phi_a` is `M_a (x) V_ta` in canonical order; the stored
/// permutation maps the product index `m * rank(V_ta) + s` to it.
#[derive(Clone, Debug, PartialEq)]
pub struct QSheafP1<F: Field> {
    field: F,
    quiver: Quiver,
    twists: Vec<SplitBundle>,
    bundles: Vec<SplitBundle>,
    phi: Vec<FormMatrix<F>>,
    tensors: Vec<(SplitBundle, Vec<usize>)>,
}

impl<F: Field> QSheafP1<F> {
    pub fn new(
        field: F,
        quiver: Quiver,
        twists: Vec<SplitBundle>,
        bundles: Vec<SplitBundle>,
        phi: Vec<FormMatrix<F>>,
    ) -> Result<Self> {
        if twists.len() != quiver.n_arrows() {
            return Err(Error::Validation(format!(
                "{} twisting bundles for {} arrows",
                twists.len(),
                quiver.n_arrows()
            )));
        }
        if let Some(a) = twists.iter().position(SplitBundle::is_zero) {
            return Err(Error::Validation(format!("twisting bundle of arrow {a} is zero")));
        }
        if bundles.len() != quiver.n_vertices() {
            return Err(Error::Validation(format!(
                "{} bundles for {} vertices",
                bundles.len(),
                quiver.n_vertices()
            )));
        }
        if phi.len() != quiver.n_arrows() {
            return Err(Error::Validation(format!(
                "{} maps for {} arrows",
                phi.len(),
                quiver.n_arrows()
            )));
        }
        let tensors: Vec<_> = (0..quiver.n_arrows())
            .map(|a| twists[a].tensor(&bundles[quiver.tail(a)]))
            .collect();
        for (a, p) in phi.iter().enumerate() {
            if p.source() != &tensors[a].0 || p.target() != &bundles[quiver.head(a)] {
                return Err(Error::Validation(format!(
                    "map of arrow {a} goes {} -> {}, expected {} -> {}",
                    p.source(),
                    p.target(),
                    tensors[a].0,
                    bundles[quiver.head(a)]
                )));
            }
        }
        Ok(Self {
            field,
            quiver,
            twists,
            bundles,
            phi,
            tensors,
        })
    }

    /// All maps zero.
    pub fn zero_maps(field: F, quiver: Quiver, twists: Vec<SplitBundle>, bundles: Vec<SplitBundle>) -> Result<Self> {
        let phi = (0..quiver.n_arrows())
            .map(|a| {
                let (t, _) = twists
                    .get(a)
                    .zip(bundles.get(quiver.tail(a)))
                    .map(|(m, v)| m.tensor(v))
                    .unwrap_or_default();
                let target = bundles.get(quiver.head(a)).cloned().unwrap_or_else(SplitBundle::zero);
                FormMatrix::zero(field, t, target)
            })
            .collect();
        Self::new(field, quiver, twists, bundles, phi)
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// `M_a`.
    pub fn twist(&self, a: usize) -> &SplitBundle {
        &self.twists[a]
    }

    pub fn twists(&self) -> &[SplitBundle] {
        &self.twists
    }

    /// `V_i`.
    pub fn bundle(&self, i: usize) -> &SplitBundle {
        &self.bundles[i]
    }

    pub fn bundles(&self) -> &[SplitBundle] {
        &self.bundles
    }

    pub fn phi(&self, a: usize) -> &FormMatrix<F> {
        &self.phi[a]
    }

    pub fn maps(&self) -> &[FormMatrix<F>] {
        &self.phi
    }

    /// `M_a (x) V_ta` and its sorting permutation.
    pub fn tensor(&self, a: usize) -> (&SplitBundle, &[usize]) {
        let (b, p) = &self.tensors[a];
        (b, p)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Incompatible(format!(
                "fields {} and {}",
                self.field.spec(),
                other.field.spec()
            )));
        }
        if self.quiver != other.quiver {
            return Err(Error::Incompatible("different quivers".into()));
        }
        if self.twists != other.twists {
            return Err(Error::Incompatible("different twisting bundles".into()));
        }
        Ok(())
    }

    /// Every `V_i` tensored with `O(t)`; the maps keep their forms.
    pub fn shift(&self, t: i64) -> Self {
        Self::new(
            self.field,
            self.quiver.clone(),
            self.twists.clone(),
            self.bundles.iter().map(|b| b.shift(t)).collect(),
            self.phi.iter().map(|p| p.shift(t)).collect(),
        )
        .expect("shifting preserves shapes")
    }

    /// Every map multiplied by `c`.
    pub fn scale_maps(&self, c: &F::Elem) -> Self {
        Self {
            phi: self.phi.iter().map(|p| p.scale(self.field, c)).collect(),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::p1::BinForm;

    #[test]
    fn higgs_shapes() {
        let f = PrimeField::new(101).unwrap();
        let q = Quiver::loop_quiver();
        let v = QSheafP1::zero_maps(f, q, vec![SplitBundle::line(-2)], vec![SplitBundle::line(0)]).unwrap();
        assert_eq!(v.tensor(0).0.twists(), &[-2]);
        assert_eq!(v.phi(0).entry(0, 0).degree(), 2);
    }

    #[test]
    fn rejects_wrong_source() {
        let f = PrimeField::new(101).unwrap();
        let q = Quiver::loop_quiver();
        let phi = FormMatrix::new(
            SplitBundle::line(0),
            SplitBundle::line(0),
            vec![vec![BinForm::constant(1)]],
        )
        .unwrap();
        let r = QSheafP1::new(f, q, vec![SplitBundle::line(-2)], vec![SplitBundle::line(0)], vec![phi]);
        assert!(matches!(r, Err(Error::Validation(_))));
    }

    #[test]
    fn shift_keeps_map_degrees() {
        let f = PrimeField::new(101).unwrap();
        let q = Quiver::new(2, vec![(1, 0)]).unwrap();
        let b = vec![SplitBundle::new(vec![1, 0]).unwrap(), SplitBundle::line(-1)];
        let v = QSheafP1::zero_maps(f, q, vec![SplitBundle::line(0)], b).unwrap();
        let s = v.shift(3);
        assert_eq!(s.bundle(0).twists(), &[4, 3]);
        assert_eq!(s.phi(0).entry(0, 0).degree(), v.phi(0).entry(0, 0).degree());
    }
}
