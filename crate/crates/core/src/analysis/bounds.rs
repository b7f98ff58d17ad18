use nalgebra::{DMatrix, DVector};

use super::equitable::{neighborhoods_walk_equitable, EquitMethod};
use crate::error::{Error, Result};
use crate::graph::{Graph, IncidenceSet};
use crate::spectral;
use crate::walk::{MarkedWalk, MixingMatrix};

/// Gap below which a bound counts as attained.
pub const TIGHT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Lower,
    Upper,
}

impl BoundSide {
    pub fn tag(&self) -> &'static str {
        match self {
            BoundSide::Lower => "lower",
            BoundSide::Upper => "upper",
        }
    }
}

/// A bound on a block of `M̂` together with the block itself.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound: DMatrix<f64>,
    pub target: DMatrix<f64>,
    pub side: BoundSide,
    /// `target − bound`, entrywise and signed.
    pub gap: DMatrix<f64>,
    pub tight: bool,
    /// What the combinatorial tightness condition predicts.
    pub predicted_tight: bool,
    pub tol: f64,
    /// Vertex labels of the rows and columns.
    pub labels: Vec<usize>,
}

impl BoundReport {
    fn new(bound: DMatrix<f64>, target: DMatrix<f64>, side: BoundSide, predicted_tight: bool, labels: Vec<usize>) -> Self {
        let gap = &target - &bound;
        let tight = gap.amax() <= TIGHT_TOL;
        BoundReport {
            bound,
            target,
            side,
            gap,
            tight,
            predicted_tight,
            tol: TIGHT_TOL,
            labels,
        }
    }

    /// `‖target − bound‖∞`.
    pub fn max_abs_gap(&self) -> f64 {
        self.gap.amax()
    }

    /// Smallest signed distance on the correct side; negative means violated.
    pub fn min_slack(&self) -> f64 {
        let sign = match self.side {
            BoundSide::Lower => 1.0,
            BoundSide::Upper => -1.0,
        };
        self.gap.iter().map(|g| sign * g).fold(f64::INFINITY, f64::min)
    }

    pub fn holds(&self, slack: f64) -> bool {
        self.min_slack() >= -slack
    }

    pub fn tightness_consistent(&self) -> bool {
        self.tight == self.predicted_tight
    }
}

fn pseudo_inverse_diag(d: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_diagonal(&d.diagonal().map(|x| if x.abs() > 0.5 { 1.0 / x } else { 0.0 }))
}

fn sq(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.component_mul(m)
}

/// Diagonal of row sums.
fn row_sum_diag(m: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_iterator(m.nrows(), m.row_iter().map(|r| r.sum())))
}

impl MarkedWalk {
    fn h_ht_inverse(&self, inv_ht: &DMatrix<f64>) -> DMatrix<f64> {
        &self.partition.h * inv_ht
    }

    /// `L'/L_S̄ = Δ(S, S̄) − H L_S̄⁻¹ Hᵀ`, where `L'` is the Laplacian of `X − E(S)`.
    pub fn laplacian_prime_schur(&self) -> DMatrix<f64> {
        &self.partition.delta_s_sbar - self.h_ht_inverse(&self.l_inv_ht)
    }

    /// `Q'/Q_S̄ = Δ(S, S̄) − H Q_S̄⁻¹ Hᵀ`.
    pub fn signless_prime_schur(&self) -> DMatrix<f64> {
        &self.partition.delta_s_sbar - self.h_ht_inverse(&self.q_inv_ht)
    }

    /// `L/L_S̄ = L_S − H L_S̄⁻¹ Hᵀ`.
    pub fn laplacian_schur(&self) -> DMatrix<f64> {
        self.l_s() - self.h_ht_inverse(&self.l_inv_ht)
    }

    /// `Q/Q_S̄ = Q_S − H Q_S̄⁻¹ Hᵀ`.
    pub fn signless_schur(&self) -> DMatrix<f64> {
        self.q_s() - self.h_ht_inverse(&self.q_inv_ht)
    }
}

/// Lower bound on `M̂[S, S]`, attained exactly when `S` has walk-equitable
/// neighbourhoods in `X \ S`.
pub fn mss_lower_bound(g: &Graph, marked: &[usize]) -> Result<BoundReport> {
    let walk = MarkedWalk::new(g, marked)?;
    mss_lower_bound_for(&walk, &walk.mixing())
}

pub fn mss_lower_bound_for(walk: &MarkedWalk, mhat: &MixingMatrix) -> Result<BoundReport> {
    let p = &walk.partition;
    let k = walk.k();
    let h = &p.h;
    let dagger = pseudo_inverse_diag(&p.delta_s_sbar);
    let q_xs = row_sum_diag(&p.a_s) + &p.a_s;

    let s = p.marked.len();
    let mut eigen = DMatrix::zeros(s, s);
    for (lambda, gr) in walk.spectrum.iter() {
        let hgh = h * gr * h.transpose();
        eigen += sq(&hgh) * (k / (2.0 * (k * k - lambda * lambda).powi(2)));
    }
    let schur = (sq(&walk.laplacian_prime_schur()) + sq(&walk.signless_prime_schur())) / (4.0 * k);
    let bound = q_xs / (2.0 * k) + &dagger * (eigen + schur);

    let predicted = neighborhoods_walk_equitable(&walk.graph, &p.marked, EquitMethod::Eigenprojection)?.equitable;
    Ok(BoundReport::new(bound, mhat.ss(), BoundSide::Lower, predicted, p.marked.clone()))
}

/// Upper bound on `M̂[S, S]`, attained exactly when every marked vertex has at
/// most one unmarked neighbour.
pub fn mss_upper_bound(g: &Graph, marked: &[usize]) -> Result<BoundReport> {
    let walk = MarkedWalk::new(g, marked)?;
    mss_upper_bound_for(&walk, &walk.mixing())
}

pub fn mss_upper_bound_for(walk: &MarkedWalk, mhat: &MixingMatrix) -> Result<BoundReport> {
    let p = &walk.partition;
    let k = walk.k();
    let h = &p.h;
    let t = p.unmarked.len();
    let delta = &p.delta_s_sbar;

    let diag = DMatrix::from_diagonal(&(walk.laplacian_schur() + walk.signless_schur()).diagonal());
    let mut eigen = DMatrix::zeros(t, t);
    for (lambda, gr) in walk.spectrum.iter() {
        eigen += sq(gr) / (k * k - lambda * lambda).powi(2);
    }
    let id = DMatrix::identity(t, t);
    let l_inv = spectral::solve(&p.l_sbar, &id)?;
    let q_inv = spectral::solve(&p.q_sbar, &id)?;
    let inverses = sq(&l_inv) + sq(&q_inv);

    let bound = (diag - walk.l_s()) / (2.0 * k)
        + h * eigen * h.transpose() * delta * (k / 2.0)
        + h * inverses * h.transpose() * delta / (4.0 * k);
    let predicted = delta.diagonal().iter().all(|&d| d <= 1.0 + 1e-12);
    Ok(BoundReport::new(bound, mhat.ss(), BoundSide::Upper, predicted, p.marked.clone()))
}

/// Lower bound on `M̂[S̄, S̄]`, attained exactly when `X \ S` has maximum degree at most one.
pub fn msbar_lower_bound(g: &Graph, marked: &[usize]) -> Result<BoundReport> {
    let walk = MarkedWalk::new(g, marked)?;
    msbar_lower_bound_for(&walk, &walk.mixing())
}

pub fn msbar_lower_bound_for(walk: &MarkedWalk, mhat: &MixingMatrix) -> Result<BoundReport> {
    let p = &walk.partition;
    let k = walk.k();
    let t = p.unmarked.len();
    let dagger = pseudo_inverse_diag(&p.delta_sbar_sbar);
    let mut bound = DMatrix::zeros(t, t);
    for (lambda, gr) in walk.spectrum.iter() {
        let l2 = lambda * lambda;
        let left = DMatrix::identity(t, t) * (k * k - 2.0 * l2) + &dagger * (k * l2);
        bound += left * sq(gr) / (2.0 * (k * k - l2));
    }
    let predicted = p.delta_sbar_sbar.diagonal().iter().all(|&d| d <= 1.0 + 1e-12);
    Ok(BoundReport::new(bound, mhat.sbar_sbar(), BoundSide::Lower, predicted, p.unmarked.clone()))
}

/// Worst violation, over all eigenprojections `G_r` of `A(X \ S)`, of
/// `Δ(S,S̄)†(HG_rHᵀ)∘² ≤ H(G_rHᵀ)∘² ≤ HG_r∘²HᵀΔ(S,S̄)`. Non-positive when the chain holds.
pub fn schur_square_sandwich_violation(walk: &MarkedWalk) -> f64 {
    let p = &walk.partition;
    let h = &p.h;
    let dagger = pseudo_inverse_diag(&p.delta_s_sbar);
    let mut worst = f64::NEG_INFINITY;
    for (_, gr) in walk.spectrum.iter() {
        let ght = gr * h.transpose();
        let low = &dagger * sq(&(h * &ght));
        let mid = h * sq(&ght);
        let high = h * sq(gr) * h.transpose() * &p.delta_s_sbar;
        worst = worst.max((&low - &mid).max()).max((&mid - &high).max());
    }
    worst
}

/// Bounds on the average return probability `M̂_{a,a}` for a single marked vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnProbabilityBounds {
    pub anchor: usize,
    pub bipartite: bool,
    pub value: f64,
    /// The general `[S, S]` lower bound at `S = {a}`.
    pub lower: BoundReport,
    /// The general `[S, S]` upper bound at `S = {a}`, including its `−L_S/(2k) = −½` term.
    pub upper: BoundReport,
    /// `½ Σ (zᵀG_r z)² / (k² − λ_r²)²` plus the odd term.
    pub lower_eigen_form: f64,
    /// `½ Σ (zᵀG_r 𝟙)² / (k + λ_r)²` plus the odd term.
    pub lower_projection_form: f64,
    /// `½ zᵀ Q_S̄⁻¹ (Σ G_r J G_r) Q_S̄⁻¹ z` plus the odd term.
    pub lower_inverse_form: f64,
    /// `zᵀ(Σ G_r J G_r)z / (8k²)` plus the odd term.
    pub corollary: f64,
    /// `1 / (4k² (Q⁻¹)_{a,a}²)` for non-bipartite graphs, else 0.
    pub odd_term: f64,
    /// `(Q⁻¹)_{a,a}` for non-bipartite graphs.
    pub q_inverse_aa: Option<f64>,
    /// `L/L_S̄`, zero for every connected graph.
    pub laplacian_schur: f64,
    /// `Q/Q_S̄`, equal to `1/(Q⁻¹)_{a,a}` or zero.
    pub signless_schur: f64,
    /// The upper bound written without the `−½` term.
    pub upper_without_ls: f64,
    /// The same with `(L_S̄⁻¹)∘²` standing in for `(Q_S̄⁻¹)∘²`.
    pub upper_laplacian_only: f64,
}

pub fn return_probability_bounds(g: &Graph, marked: &[usize]) -> Result<ReturnProbabilityBounds> {
    if marked.len() != 1 {
        let mut m = marked.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.len() != 1 {
            return Err(Error::NotSingleMarked(m.len()));
        }
    }
    let walk = MarkedWalk::new(g, marked)?;
    let mhat = walk.mixing();
    let a = walk.partition.marked[0];
    let k = walk.k();
    let bipartite = g.is_bipartite();
    let t = walk.partition.unmarked.len();

    let z = walk.partition.h.row(0).transpose();
    let ones = DVector::from_element(t, 1.0);
    let q_inv = spectral::solve(&walk.partition.q_sbar, &DMatrix::identity(t, t))?;
    let l_inv = spectral::solve(&walk.partition.l_sbar, &DMatrix::identity(t, t))?;

    let q_inverse_aa = if bipartite {
        None
    } else {
        let q = crate::graph::to_f64(&(IncidenceSet::new(g).delta + g.adjacency()));
        let mut e = DMatrix::zeros(g.vertex_count(), 1);
        e[a] = 1.0;
        Some(spectral::solve(&q, &e)?[a])
    };
    let odd_term = q_inverse_aa.map_or(0.0, |x| 1.0 / (4.0 * k * k * x * x));

    let mut eigen_form = 0.0;
    let mut projection_form = 0.0;
    let mut gjg = DMatrix::zeros(t, t);
    let mut hat_sq = DMatrix::zeros(t, t);
    for (lambda, gr) in walk.spectrum.iter() {
        let zgz = z.dot(&(gr * &z));
        let zg1 = z.dot(&(gr * &ones));
        eigen_form += zgz * zgz / (k * k - lambda * lambda).powi(2);
        projection_form += zg1 * zg1 / (k + lambda).powi(2);
        gjg += gr * DMatrix::from_element(t, t, 1.0) * gr;
        hat_sq += sq(gr) / (k * k - lambda * lambda).powi(2);
    }
    let inverse_form = (&q_inv * &z).dot(&(&gjg * (&q_inv * &z)));
    let elsm = |m: &DMatrix<f64>| z.dot(&(m * &z));

    let lap = sq(&l_inv);
    let sig = sq(&q_inv);
    let odd_upper = q_inverse_aa.map_or(0.0, |x| 1.0 / (2.0 * k * x));
    let upper_without_ls = if bipartite {
        0.5 * elsm(&(&hat_sq * (k * k) + &lap))
    } else {
        0.25 * elsm(&(&hat_sq * (2.0 * k * k) + &lap + &sig)) + odd_upper
    };
    let upper_laplacian_only = 0.5 * elsm(&(&hat_sq * (k * k) + &lap)) + odd_upper;

    let lower = mss_lower_bound_for(&walk, &mhat)?;
    let upper = mss_upper_bound_for(&walk, &mhat)?;
    Ok(ReturnProbabilityBounds {
        anchor: a,
        bipartite,
        value: mhat.get(a, a),
        lower,
        upper,
        lower_eigen_form: 0.5 * eigen_form + odd_term,
        lower_projection_form: 0.5 * projection_form + odd_term,
        lower_inverse_form: 0.5 * inverse_form + odd_term,
        corollary: elsm(&gjg) / (8.0 * k * k) + odd_term,
        odd_term,
        q_inverse_aa,
        laplacian_schur: walk.laplacian_schur()[(0, 0)],
        signless_schur: walk.signless_schur()[(0, 0)],
        upper_without_ls,
        upper_laplacian_only,
    })
}

impl ReturnProbabilityBounds {
    pub fn lower_value(&self) -> f64 {
        self.lower.bound[(0, 0)]
    }

    pub fn upper_value(&self) -> f64 {
        self.upper.bound[(0, 0)]
    }

    /// Largest disagreement among the three lower-bound forms and the general bound.
    pub fn lower_form_spread(&self) -> f64 {
        let forms = [
            self.lower_eigen_form,
            self.lower_projection_form,
            self.lower_inverse_form,
            self.lower_value(),
        ];
        let hi = forms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = forms.iter().copied().fold(f64::INFINITY, f64::min);
        hi - lo
    }
}
