//! Real symmetric spectral decompositions grouped into eigenprojections,
//! Schur complements, and a few subspace utilities built on them.

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Distinct eigenvalues (descending) with their orthogonal eigenprojections.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub projections: Vec<DMatrix<f64>>,
    pub multiplicities: Vec<usize>,
    pub group_tol: f64,
}

impl SpectralDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &DMatrix<f64>)> {
        self.eigenvalues.iter().copied().zip(&self.projections)
    }

    /// `Σ f(λᵣ) Gᵣ`.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let n = self.dim();
        self.iter()
            .fold(DMatrix::zeros(n, n), |acc, (lambda, g)| acc + g * f(lambda))
    }
}

/// Default grouping tolerance `1e-8 · max(1, ‖M‖_F)`.
pub fn default_group_tol(m: &DMatrix<f64>) -> f64 {
    1e-8 * m.norm().max(1.0)
}

pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    (m - m.transpose()).amax()
}

/// Eigendecomposition of a symmetric matrix, merging eigenvalues that lie
/// within `group_tol` of their neighbour into one projection.
pub fn eig_projections(m: &DMatrix<f64>, group_tol: Option<f64>) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("eigendecomposition needs a square matrix".into()));
    }
    let skew = asymmetry(m);
    if skew > 1e-12 * m.amax().max(1.0) {
        return Err(Error::NotSymmetric(skew));
    }
    let tol = group_tol.unwrap_or_else(|| default_group_tol(m));
    let n = m.nrows();
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: vec![],
            projections: vec![],
            multiplicities: vec![],
            group_tol: tol,
        });
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(g) if eig.eigenvalues[*g.last().unwrap()] - eig.eigenvalues[i] <= tol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }

    let mut out = SpectralDecomposition {
        eigenvalues: Vec::with_capacity(groups.len()),
        projections: Vec::with_capacity(groups.len()),
        multiplicities: Vec::with_capacity(groups.len()),
        group_tol: tol,
    };
    for g in groups {
        let mean = g.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / g.len() as f64;
        let vecs = eig.eigenvectors.select_columns(&g);
        out.eigenvalues.push(mean);
        out.projections.push(&vecs * vecs.transpose());
        out.multiplicities.push(g.len());
    }
    Ok(out)
}

/// Result of eliminating a trailing block.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurComplement {
    pub matrix: DMatrix<f64>,
    /// 2-norm condition number of the eliminated block (1 when it is empty).
    pub condition: f64,
    /// Indices kept, in increasing order.
    pub kept: Vec<usize>,
}

/// `N / D = A - B D⁻¹ C` where `D = N[split, split]` and `A` is indexed by the
/// complement of `split` (ascending).
pub fn schur_complement(n: &DMatrix<f64>, split: &[usize]) -> Result<SchurComplement> {
    if !n.is_square() {
        return Err(Error::DimensionMismatch("Schur complement needs a square matrix".into()));
    }
    let size = n.nrows();
    let mut seen = vec![false; size];
    for &i in split {
        if i >= size || seen[i] {
            return Err(Error::InvalidVertex(i));
        }
        seen[i] = true;
    }
    let kept: Vec<usize> = (0..size).filter(|&i| !seen[i]).collect();
    if split.is_empty() {
        return Ok(SchurComplement {
            matrix: n.clone(),
            condition: 1.0,
            kept,
        });
    }
    let a = n.select_rows(&kept).select_columns(&kept);
    let b = n.select_rows(&kept).select_columns(split);
    let c = n.select_rows(split).select_columns(&kept);
    let d = n.select_rows(split).select_columns(split);
    let condition = condition_number(&d);
    let x = solve(&d, &c)?;
    Ok(SchurComplement {
        matrix: a - b * x,
        condition,
        kept,
    })
}

/// Solves `D X = rhs` by LU, rejecting numerically singular `D`.
pub fn solve(d: &DMatrix<f64>, rhs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let condition = condition_number(d);
    if !(condition < 1e13) {
        return Err(Error::SingularBlock(condition));
    }
    d.clone().lu().solve(rhs).ok_or(Error::SingularBlock(condition))
}

pub fn condition_number(d: &DMatrix<f64>) -> f64 {
    if d.is_empty() {
        return 1.0;
    }
    let sv = d.clone().singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Smallest eigenvalue of the symmetric part.
pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigenvalues().min()
}

pub fn is_psd(m: &DMatrix<f64>, tol: f64) -> bool {
    asymmetry(m) <= tol && min_eigenvalue(m) >= -tol
}

/// Number of singular values above `tol · max(1, σ_max)`.
pub fn numerical_rank<T: ComplexField<RealField = f64>>(m: &DMatrix<T>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let cut = tol * sv.max().max(1.0);
    sv.iter().filter(|&&s| s > cut).count()
}

pub fn nullity<T: ComplexField<RealField = f64>>(m: &DMatrix<T>, tol: f64) -> usize {
    m.ncols() - numerical_rank(m, tol)
}

/// Orthogonal projector onto the column space of `m`.
pub fn column_space_projector<T: ComplexField<RealField = f64>>(m: &DMatrix<T>, tol: f64) -> DMatrix<T> {
    let rows = m.nrows();
    if m.ncols() == 0 {
        return DMatrix::zeros(rows, rows);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let cut = tol * svd.singular_values.max().max(1.0);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > cut)
        .collect();
    let basis = u.select_columns(&keep);
    &basis * basis.adjoint()
}

/// Orthogonal projector onto the null space of `m`.
pub fn null_space_projector<T: ComplexField<RealField = f64>>(m: &DMatrix<T>, tol: f64) -> DMatrix<T> {
    let cols = m.ncols();
    let row_space = column_space_projector(&m.adjoint(), tol);
    DMatrix::identity(cols, cols) - row_space
}

/// Spectral-norm distance between two orthogonal projectors.
pub fn subspace_distance<T: ComplexField<RealField = f64>>(p: &DMatrix<T>, q: &DMatrix<T>) -> f64 {
    let diff = p - q;
    if diff.is_empty() {
        return 0.0;
    }
    diff.singular_values().max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn path_adjacency(n: usize) -> DMatrix<f64> {
        DMatrix::from_fn(n, n, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 })
    }

    fn brute_force_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
        // Jacobi rotations, independent of the library eigensolver.
        let n = m.nrows();
        let mut a = m.clone();
        for _ in 0..200 {
            for p in 0..n {
                for q in p + 1..n {
                    if a[(p, q)].abs() < 1e-15 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    let mut rot = DMatrix::identity(n, n);
                    rot[(p, p)] = c;
                    rot[(q, q)] = c;
                    rot[(p, q)] = s;
                    rot[(q, p)] = -s;
                    a = rot.transpose() * &a * &rot;
                }
            }
        }
        let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
        ev.sort_by(|x, y| y.total_cmp(x));
        ev
    }

    #[test]
    fn identity_has_one_projection() {
        let d = eig_projections(&DMatrix::identity(3, 3), None).unwrap();
        assert_eq!(d.eigenvalues.len(), 1);
        assert_abs_diff_eq!(d.eigenvalues[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.projections[0], DMatrix::identity(3, 3), epsilon = 1e-12);
    }

    #[test]
    fn path_three() {
        let a = path_adjacency(3);
        let oracle = brute_force_eigenvalues(&a);
        let d = eig_projections(&a, None).unwrap();
        assert_eq!(d.multiplicities, vec![1, 1, 1]);
        for (got, want) in d.eigenvalues.iter().zip(&oracle) {
            assert_abs_diff_eq!(*got, *want, epsilon = 1e-10);
        }
        let sqrt2 = 2f64.sqrt();
        for (got, want) in d.eigenvalues.iter().zip([sqrt2, 0.0, -sqrt2]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn four_cycle_multiplicities() {
        let a = DMatrix::from_fn(4, 4, |i, j| {
            if (i + 1) % 4 == j || (j + 1) % 4 == i { 1.0 } else { 0.0 }
        });
        let oracle = brute_force_eigenvalues(&a);
        assert_abs_diff_eq!(oracle[1], oracle[2], epsilon = 1e-10);
        let d = eig_projections(&a, None).unwrap();
        assert_eq!(d.multiplicities, vec![1, 2, 1]);
        for (got, want) in d.eigenvalues.iter().zip([2.0, 0.0, -2.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(eig_projections(&m, None), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn two_by_two_schur() {
        let (a, b, c, d) = (3.0, 2.0, -1.5, 4.0);
        let n = DMatrix::from_row_slice(2, 2, &[a, b, c, d]);
        let s = schur_complement(&n, &[1]).unwrap();
        assert_abs_diff_eq!(s.matrix[(0, 0)], a - b * c / d, epsilon = 1e-15);
        assert_eq!(s.kept, vec![0]);
    }

    #[test]
    fn degenerate_splits() {
        let n = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        assert_eq!(schur_complement(&n, &[]).unwrap().matrix, n);
        assert_eq!(schur_complement(&n, &[0, 1]).unwrap().matrix.shape(), (0, 0));
        let singular = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 0.0]);
        assert!(matches!(schur_complement(&singular, &[1]), Err(Error::SingularBlock(_))));
        assert!(schur_complement(&n, &[2]).is_err());
    }

    #[test]
    fn projector_helpers() {
        let m = DMatrix::from_row_slice(3, 2, &[1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let p = column_space_projector(&m, 1e-12);
        let mut want = DMatrix::zeros(3, 3);
        want[(0, 0)] = 1.0;
        assert_abs_diff_eq!(p, want, epsilon = 1e-12);
        assert_eq!(numerical_rank(&m, 1e-12), 1);
        assert_eq!(nullity(&m, 1e-12), 1);
        let q = null_space_projector(&m.transpose(), 1e-12);
        assert_abs_diff_eq!(q, DMatrix::identity(3, 3) - want, epsilon = 1e-12);
        assert_abs_diff_eq!(subspace_distance(&p, &p), 0.0, epsilon = 1e-14);
    }
}
