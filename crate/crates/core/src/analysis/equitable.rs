use nalgebra::DMatrix;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{normalize_subset, Graph, Subgraph};
use crate::spectral::eig_projections;
use crate::walk::validate_marked;

const PROJECTION_TOL: f64 = 1e-9;

/// How walk-equitability is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquitMethod {
    /// Exact walk counts of lengths `0..n`.
    WalkMatrix,
    /// Columns of `E_r P` constant on each subset.
    Eigenprojection,
}

impl EquitMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            EquitMethod::WalkMatrix => "walk-matrix",
            EquitMethod::Eigenprojection => "eigenprojection",
        }
    }
}

/// Why a collection fails to be walk-equitable. Vertices are parent labels
/// and `u`, `v` both lie in `collection[within]`.
#[derive(Debug, Clone, PartialEq)]
pub enum EquitWitness {
    /// `u` and `v` have different numbers of walks of length `length` into `collection[target]`.
    WalkCount {
        length: usize,
        u: usize,
        v: usize,
        within: usize,
        target: usize,
        counts: (BigInt, BigInt),
    },
    /// Column `target` of `E_r P` differs at `u` and `v`.
    Projection {
        eigenvalue: f64,
        u: usize,
        v: usize,
        within: usize,
        target: usize,
        values: (f64, f64),
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkEquitReport {
    /// Subsets in parent labels, each sorted.
    pub collection: Vec<Vec<usize>>,
    pub equitable: bool,
    pub witness: Option<EquitWitness>,
    pub method: EquitMethod,
}

/// `W_T = (z, Az, …, A^{n−1}z)` for the characteristic vector `z` of `t`
/// (parent labels), with exact entries.
pub fn walk_matrix(y: &Subgraph, t: &[usize]) -> Result<DMatrix<BigInt>> {
    let n = y.len();
    let local = y.local_set(t)?;
    let mut z = vec![BigInt::from(0); n];
    for i in local {
        z[i] = BigInt::from(1);
    }
    let adj = y.adjacency();
    let mut w = DMatrix::from_element(n, n, BigInt::from(0));
    for m in 0..n {
        for i in 0..n {
            w[(i, m)] = z[i].clone();
        }
        z = (0..n)
            .map(|i| (0..n).filter(|&j| adj[(i, j)] != 0).map(|j| &z[j]).sum())
            .collect();
    }
    Ok(w)
}

pub fn is_walk_equitable(y: &Subgraph, collection: &[Vec<usize>], method: EquitMethod) -> Result<WalkEquitReport> {
    if collection.is_empty() {
        return Err(Error::EmptyCollection);
    }
    let mut sorted = Vec::with_capacity(collection.len());
    let mut locals = Vec::with_capacity(collection.len());
    for set in collection {
        let s = normalize_subset(usize::MAX, set)?;
        locals.push(y.local_set(&s)?);
        sorted.push(s);
    }
    let witness = match method {
        EquitMethod::WalkMatrix => walk_count_witness(y, &sorted, &locals)?,
        EquitMethod::Eigenprojection => projection_witness(y, &locals)?,
    };
    Ok(WalkEquitReport {
        collection: sorted,
        equitable: witness.is_none(),
        witness,
        method,
    })
}

fn walk_count_witness(y: &Subgraph, sets: &[Vec<usize>], locals: &[Vec<usize>]) -> Result<Option<EquitWitness>> {
    let labels = y.labels();
    let walks: Vec<DMatrix<BigInt>> = sets.iter().map(|s| walk_matrix(y, s)).collect::<Result<_>>()?;
    for length in 0..y.len() {
        for (target, w) in walks.iter().enumerate() {
            for (within, cell) in locals.iter().enumerate() {
                if let Some((&first, rest)) = cell.split_first() {
                    for &other in rest {
                        if w[(first, length)] != w[(other, length)] {
                            return Ok(Some(EquitWitness::WalkCount {
                                length,
                                u: labels[first],
                                v: labels[other],
                                within,
                                target,
                                counts: (w[(first, length)].clone(), w[(other, length)].clone()),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn projection_witness(y: &Subgraph, locals: &[Vec<usize>]) -> Result<Option<EquitWitness>> {
    let labels = y.labels();
    let spectrum = eig_projections(&y.adjacency_f64(), None)?;
    for (lambda, e) in spectrum.iter() {
        for (target, cell_t) in locals.iter().enumerate() {
            let col: Vec<f64> = (0..y.len()).map(|i| cell_t.iter().map(|&j| e[(i, j)]).sum()).collect();
            for (within, cell) in locals.iter().enumerate() {
                if let Some((&first, rest)) = cell.split_first() {
                    for &other in rest {
                        if (col[first] - col[other]).abs() > PROJECTION_TOL {
                            return Ok(Some(EquitWitness::Projection {
                                eigenvalue: lambda,
                                u: labels[first],
                                v: labels[other],
                                within,
                                target,
                                values: (col[first], col[other]),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The sets `N(a) \ S` for `a ∈ S`, in the order of sorted `S`.
pub fn unmarked_neighborhoods(g: &Graph, marked: &[usize]) -> Result<Vec<Vec<usize>>> {
    let marked = normalize_subset(g.vertex_count(), marked)?;
    Ok(marked
        .iter()
        .map(|&a| {
            g.neighbors(a)
                .iter()
                .copied()
                .filter(|v| marked.binary_search(v).is_err())
                .collect()
        })
        .collect())
}

/// Walk-equitability of `{N(a) \ S : a ∈ S}` in `X \ S`.
pub fn neighborhoods_walk_equitable(g: &Graph, marked: &[usize], method: EquitMethod) -> Result<WalkEquitReport> {
    let (_, marked) = validate_marked(g, marked)?;
    let y = g.delete_vertices(&marked)?;
    is_walk_equitable(&y, &unmarked_neighborhoods(g, &marked)?, method)
}

/// `G_r x = ± G_r y` for every eigenprojection of `A(Y)`, with one sign per `r`.
fn images_agree_up_to_sign(y: &Subgraph, x: &[f64], z: &[f64]) -> Result<bool> {
    let spectrum = eig_projections(&y.adjacency_f64(), None)?;
    let xv = nalgebra::DVector::from_column_slice(x);
    let zv = nalgebra::DVector::from_column_slice(z);
    Ok(spectrum.projections.iter().all(|e| {
        let (gx, gz) = (e * &xv, e * &zv);
        (&gx - &gz).amax() <= PROJECTION_TOL || (&gx + &gz).amax() <= PROJECTION_TOL
    }))
}

/// Strong cospectrality of `u` and `v` (parent labels) in `Y`.
pub fn strongly_cospectral(y: &Subgraph, u: usize, v: usize) -> Result<bool> {
    let (lu, lv) = (y.local(u)?, y.local(v)?);
    if lu == lv {
        return Ok(true);
    }
    let mut x = vec![0.0; y.len()];
    let mut z = vec![0.0; y.len()];
    x[lu] = 1.0;
    z[lv] = 1.0;
    images_agree_up_to_sign(y, &x, &z)
}

/// Strong cospectrality in `X \ S` of the characteristic vectors of
/// `N(a) \ S` and `N(b) \ S`.
pub fn neighborhood_strongly_cospectral(g: &Graph, marked: &[usize], a: usize, b: usize) -> Result<bool> {
    let marked = normalize_subset(g.vertex_count(), marked)?;
    for v in [a, b] {
        if marked.binary_search(&v).is_err() {
            return Err(Error::InvalidVertex(v));
        }
    }
    if a == b {
        return Ok(true);
    }
    let y = g.delete_vertices(&marked)?;
    let indicator = |w: usize| -> Vec<f64> {
        let mut x = vec![0.0; y.len()];
        for &n in g.neighbors(w) {
            if let Ok(i) = y.local(n) {
                x[i] = 1.0;
            }
        }
        x
    };
    images_agree_up_to_sign(&y, &indicator(a), &indicator(b))
}
