use nalgebra::DMatrix;

use super::{validate_marked, MixingMatrix, MixingRoute};
use crate::error::Result;
use crate::graph::{Graph, MarkedPartition};
use crate::spectral::{self, eig_projections, SpectralDecomposition};

/// The data of `X \ S` that every closed formula for `M̂` is written in.
#[derive(Debug, Clone)]
pub struct MarkedWalk {
    pub graph: Graph,
    pub partition: MarkedPartition,
    pub degree: usize,
    /// Spectral decomposition of `A(X \ S)`.
    pub spectrum: SpectralDecomposition,
    /// `L_S̄⁻¹ Hᵀ`.
    pub l_inv_ht: DMatrix<f64>,
    /// `Q_S̄⁻¹ Hᵀ`.
    pub q_inv_ht: DMatrix<f64>,
}

/// The summands of `M̂`, each in vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormTerms {
    pub plus_one: DMatrix<f64>,
    pub minus_one: DMatrix<f64>,
    /// `M̂ᵣ`, one per distinct eigenvalue of `A(X \ S)`.
    pub eigen: Vec<DMatrix<f64>>,
}

impl ClosedFormTerms {
    pub fn total(&self) -> DMatrix<f64> {
        self.eigen
            .iter()
            .fold(&self.plus_one + &self.minus_one, |acc, m| acc + m)
    }
}

/// Leading factor of the `[S̄, S]` block in the `(−1)`-eigenspace term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinusOneLeading {
    Laplacian,
    SignlessLaplacian,
}

impl MarkedWalk {
    pub fn new(g: &Graph, marked: &[usize]) -> Result<Self> {
        let (k, marked) = validate_marked(g, marked)?;
        let partition = MarkedPartition::new(g, &marked)?;
        let spectrum = eig_projections(&partition.a_sbar, None)?;
        let ht = partition.h.transpose();
        let l_inv_ht = spectral::solve(&partition.l_sbar, &ht)?;
        let q_inv_ht = spectral::solve(&partition.q_sbar, &ht)?;
        Ok(MarkedWalk {
            graph: g.clone(),
            partition,
            degree: k,
            spectrum,
            l_inv_ht,
            q_inv_ht,
        })
    }

    pub fn k(&self) -> f64 {
        self.degree as f64
    }

    pub fn marked(&self) -> &[usize] {
        &self.partition.marked
    }

    pub fn unmarked(&self) -> &[usize] {
        &self.partition.unmarked
    }

    fn sizes(&self) -> (usize, usize) {
        (self.partition.marked.len(), self.partition.unmarked.len())
    }

    /// `Q_S = kI + A_S`.
    pub fn q_s(&self) -> DMatrix<f64> {
        let s = self.partition.marked.len();
        DMatrix::identity(s, s) * self.k() + &self.partition.a_s
    }

    /// `L_S = kI − A_S`.
    pub fn l_s(&self) -> DMatrix<f64> {
        let s = self.partition.marked.len();
        DMatrix::identity(s, s) * self.k() - &self.partition.a_s
    }

    /// Term for an eigenvalue `±1`, given `W = M_S̄⁻¹Hᵀ` and the `[S̄, S]` leading matrix.
    fn boundary_term(&self, w: &DMatrix<f64>, leading: &DMatrix<f64>) -> DMatrix<f64> {
        let (s, t) = self.sizes();
        let k = self.k();
        let h = &self.partition.h;
        let w2 = w.component_mul(w);
        let hw = h * w;
        let diag = DMatrix::from_diagonal(&hw.diagonal());
        let mut out = DMatrix::zeros(s + t, s + t);
        out.view_mut((0, 0), (s, s))
            .copy_from(&((self.q_s() + h * &w2 - diag * 2.0) / (4.0 * k)));
        out.view_mut((s, 0), (t, s))
            .copy_from(&((h.transpose() - leading * &w2) / (4.0 * k)));
        self.partition.unpermute(&out)
    }

    pub fn plus_one_term(&self) -> DMatrix<f64> {
        self.boundary_term(&self.l_inv_ht, &self.partition.l_sbar)
    }

    pub fn minus_one_term(&self, leading: MinusOneLeading) -> DMatrix<f64> {
        let lead = match leading {
            MinusOneLeading::Laplacian => &self.partition.l_sbar,
            MinusOneLeading::SignlessLaplacian => &self.partition.q_sbar,
        };
        self.boundary_term(&self.q_inv_ht, lead)
    }

    /// `M̂ᵣ` for the `r`-th eigenvalue of `A(X \ S)`.
    pub fn eigen_term(&self, r: usize) -> DMatrix<f64> {
        let (s, t) = self.sizes();
        let k = self.k();
        let lambda = self.spectrum.eigenvalues[r];
        let g = &self.spectrum.projections[r];
        let h = &self.partition.h;
        let gap = k * k - lambda * lambda;

        let mut left = DMatrix::zeros(s + t, t);
        left.view_mut((0, 0), (s, t)).copy_from(&(h * k));
        left.view_mut((s, 0), (t, t)).copy_from(
            &(DMatrix::identity(t, t) * (k * k - 2.0 * lambda * lambda) + &self.partition.a_sbar * k),
        );
        let ght = g * h.transpose();
        let mut right = DMatrix::zeros(t, s + t);
        right
            .view_mut((0, 0), (t, s))
            .copy_from(&(ght.component_mul(&ght) / gap));
        right.view_mut((0, s), (t, t)).copy_from(&g.component_mul(g));
        self.partition.unpermute(&(left * right / (2.0 * gap)))
    }

    pub fn terms(&self) -> ClosedFormTerms {
        ClosedFormTerms {
            plus_one: self.plus_one_term(),
            minus_one: self.minus_one_term(MinusOneLeading::Laplacian),
            eigen: (0..self.spectrum.len()).map(|r| self.eigen_term(r)).collect(),
        }
    }

    pub fn mixing(&self) -> MixingMatrix {
        MixingMatrix::new(
            self.terms().total(),
            MixingRoute::ClosedForm,
            self.partition.marked.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::presets;
    use crate::walk::{projection_contributions, walk_eigensystem};

    #[test]
    fn terms_match_eigenspace_contributions() {
        for (spec, marked) in [("cycle:6", vec![0, 1, 3]), ("petersen", vec![0]), ("complete:4", vec![0, 1])] {
            let g = presets::parse_preset(spec).unwrap();
            let walk = MarkedWalk::new(&g, &marked).unwrap();
            let terms = walk.terms();
            let es = walk_eigensystem(&g, &marked).unwrap();
            let contrib = projection_contributions(&g, &es);
            assert!((&terms.plus_one - &contrib[0]).amax() < 1e-10, "{spec} +1");
            assert!((&terms.minus_one - &contrib[1]).amax() < 1e-10, "{spec} -1");
            for (r, term) in terms.eigen.iter().enumerate() {
                let pair = &contrib[2 + 2 * r] + &contrib[3 + 2 * r];
                assert!((term - pair).amax() < 1e-10, "{spec} r={r}");
            }
        }
    }

    #[test]
    fn five_cycle_column_sums() {
        let m = MarkedWalk::new(&presets::cycle(5).unwrap(), &[0]).unwrap().mixing();
        assert!(m.stochasticity_defect() < 1e-10);
    }
}
