use nalgebra::DMatrix;

use super::equitable::{neighborhood_strongly_cospectral, neighborhoods_walk_equitable, EquitMethod, WalkEquitReport};
use crate::error::{Error, Result};
use crate::graph::{check_permutation, Graph};
use crate::spectral;
use crate::walk::{mixing_closed_form, validate_marked, MarkedWalk, MixingMatrix};

const CLASSIFY_TOL: f64 = 1e-9;
const COMMUTE_TOL: f64 = 1e-10;

/// The three conditions characterising a uniform `M̂[S, S]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformConditions {
    pub two_marked: bool,
    pub odd_cycle_or_bipartite: bool,
    pub neighborhood_strongly_cospectral: bool,
}

impl UniformConditions {
    pub fn all(&self) -> bool {
        self.two_marked && self.odd_cycle_or_bipartite && self.neighborhood_strongly_cospectral
    }
}

/// Symmetric, positive semidefinite and uniform tests on `M̂[S, S]`, with the
/// combinatorial conditions that predict them under walk-equitable neighbourhoods.
#[derive(Debug, Clone, PartialEq)]
pub struct MssClassification {
    pub symmetric: bool,
    pub psd: bool,
    pub uniform: bool,
    pub degree_separating: bool,
    pub walk_equitable: bool,
    /// Every pair of marked vertices is neighbourhood-strongly-cospectral.
    pub neighborhood_strongly_cospectral: bool,
    pub uniform_conditions: UniformConditions,
    pub theorem_consistent: bool,
    pub asymmetry: f64,
    pub min_eigenvalue: f64,
    pub equitability: WalkEquitReport,
}

pub fn classify_mss(g: &Graph, marked: &[usize]) -> Result<MssClassification> {
    let walk = MarkedWalk::new(g, marked)?;
    classify_mss_for(&walk, &walk.mixing())
}

pub fn classify_mss_for(walk: &MarkedWalk, mhat: &MixingMatrix) -> Result<MssClassification> {
    let g = &walk.graph;
    let marked = &walk.partition.marked;
    let m = mhat.ss();
    let asymmetry = (&m - m.transpose()).amax();
    let symmetric = asymmetry <= CLASSIFY_TOL;
    let min_eigenvalue = spectral::min_eigenvalue(&((&m + m.transpose()) * 0.5));
    let psd = symmetric && min_eigenvalue >= -CLASSIFY_TOL;
    let first = m[(0, 0)];
    let uniform = m.iter().all(|x| (x - first).abs() <= CLASSIFY_TOL);

    let equitability = neighborhoods_walk_equitable(g, marked, EquitMethod::Eigenprojection)?;
    let walk_equitable = equitability.equitable;
    let degree_separating = is_degree_separating(g, marked)?;
    let mut nsc = true;
    for (i, &a) in marked.iter().enumerate() {
        for &b in &marked[i + 1..] {
            nsc &= neighborhood_strongly_cospectral(g, marked, a, b)?;
        }
    }
    let uniform_conditions = UniformConditions {
        two_marked: marked.len() == 2,
        odd_cycle_or_bipartite: g.is_odd_cycle() || g.is_bipartite(),
        neighborhood_strongly_cospectral: nsc,
    };

    let theorem_consistent = !walk_equitable
        || (symmetric == degree_separating
            && psd == degree_separating
            && (marked.len() < 2 || uniform == uniform_conditions.all()));

    Ok(MssClassification {
        symmetric,
        psd,
        uniform,
        degree_separating,
        walk_equitable,
        neighborhood_strongly_cospectral: nsc,
        uniform_conditions,
        theorem_consistent,
        asymmetry,
        min_eigenvalue,
        equitability,
    })
}

/// Marked vertices with different numbers of unmarked neighbours have those
/// neighbours in different components of `X \ S`.
pub fn is_degree_separating(g: &Graph, marked: &[usize]) -> Result<bool> {
    let (_, marked) = validate_marked(g, marked)?;
    let mut component = vec![usize::MAX; g.vertex_count()];
    for (c, comp) in g.components(&marked).iter().enumerate() {
        for &v in comp {
            component[v] = c;
        }
    }
    let touched: Vec<(usize, Vec<usize>)> = marked
        .iter()
        .map(|&a| {
            let nbrs: Vec<usize> = g
                .neighbors(a)
                .iter()
                .copied()
                .filter(|v| marked.binary_search(v).is_err())
                .collect();
            let mut comps: Vec<usize> = nbrs.iter().map(|&v| component[v]).collect();
            comps.sort_unstable();
            comps.dedup();
            (nbrs.len(), comps)
        })
        .collect();
    for (i, (du, cu)) in touched.iter().enumerate() {
        for (dv, cv) in &touched[i + 1..] {
            if du != dv && cu.iter().any(|c| cv.contains(c)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AutomorphismCheck {
    pub commutes: bool,
    /// An entry `(u, v)` with `M̂_{u,v} ≠ M̂_{π(u),π(v)}`.
    pub witness: Option<(usize, usize)>,
    pub max_defect: f64,
}

/// Checks that `perm` (sending `v` to `perm[v]`) is an automorphism fixing
/// `S`, then that it commutes with `M̂`.
pub fn automorphism_check(g: &Graph, marked: &[usize], perm: &[usize]) -> Result<AutomorphismCheck> {
    let n = g.vertex_count();
    check_permutation(n, perm)?;
    let (_, marked) = validate_marked(g, marked)?;
    if g.edges().iter().any(|&(u, v)| !g.is_adjacent(perm[u], perm[v])) {
        return Err(Error::NotAutomorphism);
    }
    let mut image: Vec<usize> = marked.iter().map(|&v| perm[v]).collect();
    image.sort_unstable();
    if image != marked {
        return Err(Error::DoesNotFixS);
    }
    let m = mixing_closed_form(g, &marked)?.matrix;
    let permuted = DMatrix::from_fn(n, n, |u, v| m[(perm[u], perm[v])]);
    let diff = &permuted - &m;
    let max_defect = diff.amax();
    let witness = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .find(|&(u, v)| diff[(u, v)].abs() > COMMUTE_TOL);
    Ok(AutomorphismCheck {
        commutes: witness.is_none(),
        witness,
        max_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, presets};

    #[test]
    fn five_cycle_adjacent_pair_is_uniform() {
        let c = classify_mss(&presets::cycle(5).unwrap(), &[0, 1]).unwrap();
        assert!(c.walk_equitable);
        assert!(c.uniform && c.uniform_conditions.all());
        assert!(c.theorem_consistent);
    }

    #[test]
    fn four_cycle_opposite_pair() {
        let c = classify_mss(&presets::cycle(4).unwrap(), &[0, 2]).unwrap();
        assert!(c.symmetric && c.psd && c.degree_separating && c.theorem_consistent);
    }

    #[test]
    fn single_edge_is_trivial() {
        let c = classify_mss(&build_graph(2, &[(0, 1)]).unwrap(), &[0]).unwrap();
        assert!(c.symmetric && c.psd && c.uniform && c.theorem_consistent);
    }

    #[test]
    fn six_cycle_three_marks_not_equitable() {
        let c = classify_mss(&presets::cycle(6).unwrap(), &[0, 1, 3]).unwrap();
        assert!(!c.walk_equitable);
        assert!(c.equitability.witness.is_some());
        assert!(c.theorem_consistent);
    }

    #[test]
    fn degree_separation() {
        // In C6 \ {0, 1, 3}, vertex 3 has two unmarked neighbours, 0 and 1 one each;
        // 2 is isolated, while 4 and 5 share a component.
        let c6 = presets::cycle(6).unwrap();
        assert!(!is_degree_separating(&c6, &[0, 1, 3]).unwrap());
        assert!(is_degree_separating(&c6, &[0, 3]).unwrap());
    }

    #[test]
    fn automorphisms_of_four_cycle() {
        let c4 = presets::cycle(4).unwrap();
        assert!(automorphism_check(&c4, &[0, 2], &[2, 3, 0, 1]).unwrap().commutes);
        assert!(automorphism_check(&c4, &[0, 2], &[0, 1, 2, 3]).unwrap().commutes);
        assert_eq!(automorphism_check(&c4, &[0, 2], &[1, 2, 3, 0]), Err(Error::DoesNotFixS));
        assert_eq!(automorphism_check(&c4, &[0, 2], &[0, 2, 1, 3]), Err(Error::NotAutomorphism));
    }
}
