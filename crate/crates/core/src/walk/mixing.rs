use nalgebra::DMatrix;

use super::{transition_matrix_general, validate_marked, MarkedWalk, WalkEigensystem};
use crate::error::{Error, Result};
use crate::graph::{complement, normalize_subset, to_f64, Graph, IncidenceSet};

/// How a mixing matrix was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixingRoute {
    /// Cesàro average of the first `horizon` steps.
    TimeAverage { horizon: usize },
    /// `Σ_θ` contributions of the eigenprojections of `U`.
    ProjectionSum,
    /// Block formulas in the data of `X \ S`.
    ClosedForm,
}

impl MixingRoute {
    pub fn tag(&self) -> &'static str {
        match self {
            MixingRoute::TimeAverage { .. } => "time-average",
            MixingRoute::ProjectionSum => "projection-sum",
            MixingRoute::ClosedForm => "closed-form",
        }
    }
}

/// Average vertex mixing matrix `M̂`; entry `(u, v)` is the average probability
/// of moving from `v` to `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingMatrix {
    pub matrix: DMatrix<f64>,
    pub route: MixingRoute,
    pub marked: Vec<usize>,
    pub unmarked: Vec<usize>,
}

impl MixingMatrix {
    pub(crate) fn new(matrix: DMatrix<f64>, route: MixingRoute, marked: Vec<usize>) -> Self {
        let unmarked = complement(matrix.nrows(), &marked);
        MixingMatrix {
            matrix,
            route,
            marked,
            unmarked,
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.matrix[(u, v)]
    }

    pub fn block(&self, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
        self.matrix.select_rows(rows).select_columns(cols)
    }

    /// `M̂[S, S]`.
    pub fn ss(&self) -> DMatrix<f64> {
        self.block(&self.marked, &self.marked)
    }

    /// `M̂[S, S̄]`.
    pub fn s_sbar(&self) -> DMatrix<f64> {
        self.block(&self.marked, &self.unmarked)
    }

    /// `M̂[S̄, S]`.
    pub fn sbar_s(&self) -> DMatrix<f64> {
        self.block(&self.unmarked, &self.marked)
    }

    /// `M̂[S̄, S̄]`.
    pub fn sbar_sbar(&self) -> DMatrix<f64> {
        self.block(&self.unmarked, &self.unmarked)
    }

    pub fn column_sums(&self) -> Vec<f64> {
        self.matrix.column_iter().map(|c| c.sum()).collect()
    }

    /// `max_v |Σ_u M̂_{u,v} − 1|`.
    pub fn stochasticity_defect(&self) -> f64 {
        self.column_sums()
            .into_iter()
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest distance of an entry outside `[0, 1]`.
    pub fn range_violation(&self) -> f64 {
        self.matrix
            .iter()
            .map(|&x| (-x).max(x - 1.0).max(0.0))
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &MixingMatrix) -> f64 {
        (&self.matrix - &other.matrix).amax()
    }
}

/// Brute-force Cesàro average over `horizon` steps from `x_v = Dtᵀe_v / √deg(v)`.
///
/// Uses the general coin, so any connected graph and any marked set (including
/// none or all vertices) is accepted.
pub fn mixing_time_average(g: &Graph, marked: &[usize], horizon: usize) -> Result<MixingMatrix> {
    if horizon == 0 {
        return Err(Error::InvalidHorizon);
    }
    let marked = normalize_subset(g.vertex_count(), marked)?;
    let u = transition_matrix_general(g, &marked)?.u;
    let na = g.arc_count();
    let n = g.vertex_count();
    // Row-major copy for a tight matvec loop.
    let rows: Vec<f64> = u.transpose().iter().copied().collect();
    let out_arcs: Vec<Vec<usize>> = (0..n).map(|v| g.out_arcs(v)).collect();

    let mut m = DMatrix::zeros(n, n);
    let mut state = vec![0.0; na];
    let mut next = vec![0.0; na];
    let mut acc = vec![0.0; na];
    for v in 0..n {
        state.iter_mut().for_each(|x| *x = 0.0);
        acc.iter_mut().for_each(|x| *x = 0.0);
        let amp = 1.0 / (out_arcs[v].len() as f64).sqrt();
        for &a in &out_arcs[v] {
            state[a] = amp;
        }
        for _ in 0..horizon {
            for (a, x) in acc.iter_mut().zip(&state) {
                *a += x * x;
            }
            for (i, y) in next.iter_mut().enumerate() {
                let row = &rows[i * na..(i + 1) * na];
                *y = row.iter().zip(&state).map(|(r, x)| r * x).sum();
            }
            std::mem::swap(&mut state, &mut next);
        }
        for w in 0..n {
            m[(w, v)] = out_arcs[w].iter().map(|&a| acc[a]).sum::<f64>() / horizon as f64;
        }
    }
    Ok(MixingMatrix::new(m, MixingRoute::TimeAverage { horizon }, marked))
}

/// Per-component contributions `(1/k) Dt |F_θ Dtᵀ|²`, one matrix per eigenvalue of `U`.
pub fn projection_contributions(g: &Graph, es: &WalkEigensystem) -> Vec<DMatrix<f64>> {
    let inc = IncidenceSet::new(g);
    let dt = to_f64(&inc.dt);
    let dt_t = dt.transpose();
    let k = es.degree as f64;
    es.components
        .iter()
        .map(|c| {
            let image = c.projection.mul_real(&dt_t);
            &dt * image.abs_squared() / k
        })
        .collect()
}

/// `M̂` as the sum over eigenprojections of `U`.
pub fn mixing_projection_sum(g: &Graph, marked: &[usize]) -> Result<MixingMatrix> {
    let es = super::walk_eigensystem(g, marked)?;
    Ok(mixing_from_eigensystem(g, &es))
}

pub fn mixing_from_eigensystem(g: &Graph, es: &WalkEigensystem) -> MixingMatrix {
    let n = g.vertex_count();
    let total = projection_contributions(g, es)
        .into_iter()
        .fold(DMatrix::zeros(n, n), |acc, c| acc + c);
    MixingMatrix::new(total, MixingRoute::ProjectionSum, es.marked.clone())
}

/// `M̂ = M̂₁ + M̂₋₁ + Σᵣ M̂ᵣ` from the block formulas.
pub fn mixing_closed_form(g: &Graph, marked: &[usize]) -> Result<MixingMatrix> {
    validate_marked(g, marked)?;
    Ok(MarkedWalk::new(g, marked)?.mixing())
}
