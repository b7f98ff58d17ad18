use nalgebra::DMatrix;

use crate::error::Result;
use crate::graph::{normalize_subset, to_f64, Graph, IncidenceSet};

/// Which coin normalisation was used to build `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinForm {
    /// `U = R((2/k) DtᵀO_S Dt − I)`, defined on `k`-regular graphs only.
    Regular,
    /// `U = R(2 DtᵀΔ^{-1/2} O_S Δ^{-1/2} Dt − I)`, defined on any graph.
    General,
}

/// The walk's arc-space transition matrix `U = (2P₁ − I)(2P₂ − I)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    pub u: DMatrix<f64>,
    /// `P₁ = ½(I + R)`.
    pub p1: DMatrix<f64>,
    /// `P₂`, projection onto uniform vectors on outgoing arcs of unmarked vertices.
    pub p2: DMatrix<f64>,
    pub marked: Vec<usize>,
    pub form: CoinForm,
}

/// Regular-form transition matrix; fails with `NotRegular` on irregular graphs.
pub fn transition_matrix(g: &Graph, marked: &[usize]) -> Result<TransitionMatrix> {
    let k = g.require_regular()?;
    build(g, marked, CoinForm::Regular, &vec![k as f64; g.vertex_count()])
}

/// Transition matrix with Grover coins `(2/deg)J − I` at unmarked vertices of any degree.
pub fn transition_matrix_general(g: &Graph, marked: &[usize]) -> Result<TransitionMatrix> {
    let degrees: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
    build(g, marked, CoinForm::General, &degrees)
}

fn build(g: &Graph, marked: &[usize], form: CoinForm, degrees: &[f64]) -> Result<TransitionMatrix> {
    let marked = normalize_subset(g.vertex_count(), marked)?;
    let inc = IncidenceSet::new(g);
    let dt = to_f64(&inc.dt);
    let r = to_f64(&inc.r);
    let na = g.arc_count();
    let id = DMatrix::<f64>::identity(na, na);

    // Δ^{-1/2} O_S Δ^{-1/2}
    let mut weights = DMatrix::<f64>::zeros(g.vertex_count(), g.vertex_count());
    for v in 0..g.vertex_count() {
        if marked.binary_search(&v).is_err() {
            weights[(v, v)] = 1.0 / degrees[v];
        }
    }
    let p2 = dt.transpose() * weights * &dt;
    let p1 = (&id + &r) * 0.5;
    let coin = &p2 * 2.0 - &id;
    Ok(TransitionMatrix {
        u: r * coin,
        p1,
        p2,
        marked,
        form,
    })
}

impl TransitionMatrix {
    pub fn arc_count(&self) -> usize {
        self.u.nrows()
    }

    /// `‖UᵀU − I‖_max`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.arc_count();
        (self.u.transpose() * &self.u - DMatrix::identity(n, n)).amax()
    }

    /// Largest of `‖P² − P‖_max` and `‖Pᵀ − P‖_max` over both reflection projections.
    pub fn projection_defect(&self) -> f64 {
        [&self.p1, &self.p2]
            .iter()
            .map(|p| ((*p * *p) - *p).amax().max((p.transpose() - *p).amax()))
            .fold(0.0, f64::max)
    }

    /// `‖U − (2P₁ − I)(2P₂ − I)‖_max`.
    pub fn factorization_defect(&self) -> f64 {
        let n = self.arc_count();
        let id = DMatrix::<f64>::identity(n, n);
        (&self.u - (&self.p1 * 2.0 - &id) * (&self.p2 * 2.0 - &id)).amax()
    }
}
