//! The long exact sequence relating Ext over the twisted path algebra to
//! vertexwise and arrowwise Ext:
//!
//! ```text
//! 0 -> Hom_B(V,W) -> (+)_i Hom(V_i,W_i) --d0--> (+)_a Hom(M_a V_ta, W_ha)
//!   -> Ext^1_B(V,W) -> (+)_i Ext^1(V_i,W_i) --d1--> (+)_a Ext^1(M_a V_ta, W_ha)
//!   -> Ext^2_B(V,W) -> 0
//! ```
//!
//! The sequence stops after `Ext^2_B` when the base has no `Ext^2` (a point,
//! or locally free sheaves on a curve), so the three groups follow from the
//! four middle dimensions and the two ranks alone.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtReport {
    pub ext0: usize,
    pub ext1: usize,
    pub ext2: usize,
    /// `dim (+)_i Hom(V_i, W_i)`
    pub h0_f: usize,
    /// `dim (+)_a Hom(M_a (x) V_ta, W_ha)`
    pub h0_g: usize,
    /// `dim (+)_i Ext^1(V_i, W_i)`
    pub h1_f: usize,
    /// `dim (+)_a Ext^1(M_a (x) V_ta, W_ha)`
    pub h1_g: usize,
    pub rank_delta0: usize,
    pub rank_delta1: usize,
}

impl ExtReport {
    pub fn from_ranks(
        h0_f: usize,
        h0_g: usize,
        h1_f: usize,
        h1_g: usize,
        rank_delta0: usize,
        rank_delta1: usize,
    ) -> Self {
        assert!(rank_delta0 <= h0_f.min(h0_g) && rank_delta1 <= h1_f.min(h1_g));
        Self {
            ext0: h0_f - rank_delta0,
            ext1: (h0_g - rank_delta0) + (h1_f - rank_delta1),
            ext2: h1_g - rank_delta1,
            h0_f,
            h0_g,
            h1_f,
            h1_g,
            rank_delta0,
            rank_delta1,
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.ext0, self.ext1, self.ext2]
    }

    /// `ext0 - ext1 + ext2`.
    pub fn euler(&self) -> i64 {
        self.ext0 as i64 - self.ext1 as i64 + self.ext2 as i64
    }

    /// The terms of the sequence in order, with the rank of each
    /// connecting map recorded next to its source.
    pub fn trace(&self) -> Vec<SequenceTerm> {
        let t = |name: &str, dim: usize, rank: Option<usize>| SequenceTerm {
            term: name.to_string(),
            dim,
            outgoing_rank: rank,
        };
        vec![
            t("Hom_B(V,W)", self.ext0, None),
            t("(+)_i Hom(V_i,W_i)", self.h0_f, Some(self.rank_delta0)),
            t("(+)_a Hom(M_a*V_ta,W_ha)", self.h0_g, None),
            t("Ext^1_B(V,W)", self.ext1, None),
            t("(+)_i Ext^1(V_i,W_i)", self.h1_f, Some(self.rank_delta1)),
            t("(+)_a Ext^1(M_a*V_ta,W_ha)", self.h1_g, None),
            t("Ext^2_B(V,W)", self.ext2, None),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTerm {
    pub term: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outgoing_rank: Option<usize>,
}
