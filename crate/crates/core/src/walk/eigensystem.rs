use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};

use super::{validate_marked, ComplexMatrix};
use crate::error::Result;
use crate::graph::{to_f64, Graph, IncidenceSet, MarkedPartition};
use crate::spectral::{self, eig_projections, SpectralDecomposition};

/// One eigenvalue `e^{iθ}` of `U` with its orthogonal projection.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenComponent {
    /// Phase in `(-π, π]`; `0` and `π` are the real eigenvalues `±1`.
    pub theta: f64,
    pub projection: ComplexMatrix,
    pub multiplicity: usize,
    /// Index `r` of the eigenvalue of `A(X \ S)` this component lifts, if any.
    pub source: Option<usize>,
}

impl EigenComponent {
    pub fn eigenvalue(&self) -> Complex<f64> {
        Complex::from_polar(1.0, self.theta)
    }
}

/// Complete spectral resolution of `U`, derived from the spectrum of `X \ S`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkEigensystem {
    /// Ordered as `F₁`, `F₋₁`, then `F_{θᵣ}`, `F_{-θᵣ}` for each `r`.
    pub components: Vec<EigenComponent>,
    pub adjacency: SpectralDecomposition,
    pub degree: usize,
    pub marked: Vec<usize>,
    /// `|E| − |V| + |S|`.
    pub kernel_dim: usize,
}

pub fn walk_eigensystem(g: &Graph, marked: &[usize]) -> Result<WalkEigensystem> {
    let (k, marked) = validate_marked(g, marked)?;
    let part = MarkedPartition::new(g, &marked)?;
    let spectrum = eig_projections(&part.a_sbar, None)?;
    let inc = IncidenceSet::new(g);
    let dt = to_f64(&inc.dt);
    let dh = to_f64(&inc.dh);
    let r = to_f64(&inc.r);
    let na = g.arc_count();
    let id = DMatrix::<f64>::identity(na, na);
    let kf = k as f64;

    let dt_s = dt.select_rows(&part.unmarked);
    let dh_s = dh.select_rows(&part.unmarked);

    // ½(I ∓ R) − ½ K_∓ᵀ M⁻¹ K_∓ with K_∓ = (Dt ∓ Dh)[S̄, :]
    let boundary = |sign: f64, block: &DMatrix<f64>| -> Result<DMatrix<f64>> {
        let kmat = &dt_s + &dh_s * sign;
        let solved = spectral::solve(block, &kmat)?;
        Ok((&id + &r * sign) * 0.5 - kmat.transpose() * solved * 0.5)
    };
    let f_plus = boundary(-1.0, &part.l_sbar)?;
    let f_minus = boundary(1.0, &part.q_sbar)?;

    let kernel_dim = g.edge_count() + marked.len() - g.vertex_count();
    let mut components = vec![
        EigenComponent {
            theta: 0.0,
            projection: ComplexMatrix::real(f_plus),
            multiplicity: kernel_dim,
            source: None,
        },
        EigenComponent {
            theta: PI,
            projection: ComplexMatrix::real(f_minus),
            multiplicity: kernel_dim,
            source: None,
        },
    ];

    for (idx, ((lambda, gr), &mult)) in spectrum.iter().zip(&spectrum.multiplicities).enumerate() {
        let theta = (lambda / kf).clamp(-1.0, 1.0).acos();
        let scale = 1.0 / (2.0 * kf * theta.sin().powi(2));
        let p = &dt_s - &dh_s * theta.cos();
        let gp = gr * &p;
        let gd = gr * &dh_s;
        let real_part = (p.transpose() * &gp + dh_s.transpose() * &gd * theta.sin().powi(2)) * scale;
        // Imaginary part for +θ; the −θ projection is its conjugate.
        let cross = (dh_s.transpose() * &gp - p.transpose() * &gd) * (-theta.sin() * scale);
        for sign in [1.0, -1.0] {
            components.push(EigenComponent {
                theta: sign * theta,
                projection: ComplexMatrix {
                    re: real_part.clone(),
                    im: &cross * sign,
                },
                multiplicity: mult,
                source: Some(idx),
            });
        }
    }

    Ok(WalkEigensystem {
        components,
        adjacency: spectrum,
        degree: k,
        marked,
        kernel_dim,
    })
}

impl WalkEigensystem {
    pub fn arc_count(&self) -> usize {
        self.components[0].projection.shape().0
    }

    pub fn f_one(&self) -> &DMatrix<f64> {
        &self.components[0].projection.re
    }

    pub fn f_minus_one(&self) -> &DMatrix<f64> {
        &self.components[1].projection.re
    }

    /// `‖Σ_θ F_θ − I‖_max`.
    pub fn completeness_defect(&self) -> f64 {
        let n = self.arc_count();
        let sum = self
            .components
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, c| &acc + &c.projection);
        sum.max_abs_diff(&ComplexMatrix::real(DMatrix::identity(n, n)))
    }

    /// Largest of `‖F² − F‖` and `‖F* − F‖` over all components.
    pub fn projection_defect(&self) -> f64 {
        self.components
            .iter()
            .map(|c| {
                let f = &c.projection;
                f.mul(f).max_abs_diff(f).max(f.adjoint().max_abs_diff(f))
            })
            .fold(0.0, f64::max)
    }

    /// Largest `‖F_θ F_φ‖` over distinct pairs.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.arc_count();
        let zero = ComplexMatrix::zeros(n, n);
        let mut worst: f64 = 0.0;
        for (i, a) in self.components.iter().enumerate() {
            for b in &self.components[i + 1..] {
                worst = worst.max(a.projection.mul(&b.projection).max_abs_diff(&zero));
            }
        }
        worst
    }

    /// `‖U − Σ e^{iθ} F_θ‖_max`.
    pub fn reconstruction_defect(&self, u: &DMatrix<f64>) -> f64 {
        let n = self.arc_count();
        let sum = self
            .components
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, c| &acc + &c.projection.rotate(c.theta));
        sum.max_abs_diff(&ComplexMatrix::real(u.clone()))
    }

    /// Rank of each projection, read off its trace.
    pub fn ranks(&self) -> Vec<usize> {
        self.components
            .iter()
            .map(|c| c.projection.trace_re().round() as usize)
            .collect()
    }

    /// Largest subspace distance between each `F_θ` and the null space of
    /// `U − e^{iθ}I` computed directly from `U`.
    pub fn direct_comparison(&self, u: &DMatrix<f64>) -> f64 {
        self.components
            .iter()
            .map(|c| {
                let direct = direct_eigenprojection(u, c.theta);
                spectral::subspace_distance(&direct, &c.projection.to_complex())
            })
            .fold(0.0, f64::max)
    }
}

/// Projector onto `ker(U − e^{iθ} I)` from a complex SVD of `U − e^{iθ} I`.
pub fn direct_eigenprojection(u: &DMatrix<f64>, theta: f64) -> DMatrix<Complex<f64>> {
    let n = u.nrows();
    let shift = Complex::from_polar(1.0, theta);
    let m = DMatrix::from_fn(n, n, |i, j| {
        Complex::new(u[(i, j)], 0.0) - if i == j { shift } else { Complex::new(0.0, 0.0) }
    });
    spectral::null_space_projector(&m, 1e-8)
}
