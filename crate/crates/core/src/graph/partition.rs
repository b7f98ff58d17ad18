use nalgebra::{DMatrix, DVector};

use super::{complement, normalize_subset, to_f64, Graph};
use crate::error::Result;

/// Blocks of the adjacency and incidence data under the `(S, S̄)` split.
///
/// Matrices over vertices use the order `marked` then `unmarked`; blocks
/// indexed by `S̄` follow `unmarked`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedPartition {
    pub marked: Vec<usize>,
    pub unmarked: Vec<usize>,
    pub degree: Option<usize>,
    /// `A[S, S]`.
    pub a_s: DMatrix<f64>,
    /// `A[S, S̄]`.
    pub h: DMatrix<f64>,
    /// `A[S̄, S̄]`, the adjacency matrix of `X \ S`.
    pub a_sbar: DMatrix<f64>,
    /// `L[S̄, S̄]` with `L = Δ - A`.
    pub l_sbar: DMatrix<f64>,
    /// `Q[S̄, S̄]` with `Q = Δ + A`.
    pub q_sbar: DMatrix<f64>,
    /// Rows of the vertex-edge incidence indexed by `S̄`.
    pub b_sbar: DMatrix<i64>,
    /// Rows of the signed vertex-edge incidence indexed by `S̄`.
    pub c_sbar: DMatrix<i64>,
    /// Diagonal `|S| x |S|`: unmarked neighbour counts.
    pub delta_s_sbar: DMatrix<f64>,
    /// Diagonal `|S̄| x |S̄|`: unmarked neighbour counts.
    pub delta_sbar_sbar: DMatrix<f64>,
    /// Identity with its `[S, S]` block zeroed, in original vertex order.
    pub o_s: DMatrix<f64>,
}

impl MarkedPartition {
    pub fn new(g: &Graph, marked: &[usize]) -> Result<Self> {
        let n = g.vertex_count();
        let marked = normalize_subset(n, marked)?;
        let unmarked = complement(n, &marked);
        let adj = to_f64(&g.adjacency());
        let deg: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
        let a_s = adj.select_rows(&marked).select_columns(&marked);
        let h = adj.select_rows(&marked).select_columns(&unmarked);
        let a_sbar = adj.select_rows(&unmarked).select_columns(&unmarked);
        let deg_sbar = DMatrix::from_diagonal(&DVector::from_iterator(
            unmarked.len(),
            unmarked.iter().map(|&u| deg[u]),
        ));
        let l_sbar = &deg_sbar - &a_sbar;
        let q_sbar = &deg_sbar + &a_sbar;

        let mut b = DMatrix::zeros(n, g.edge_count());
        let mut c = DMatrix::zeros(n, g.edge_count());
        for (j, &(u, v)) in g.edges().iter().enumerate() {
            b[(u, j)] = 1;
            b[(v, j)] = 1;
            c[(u, j)] = 1;
            c[(v, j)] = -1;
        }
        let delta_s_sbar = DMatrix::from_diagonal(&DVector::from_iterator(
            marked.len(),
            h.row_iter().map(|row| row.sum()),
        ));
        let delta_sbar_sbar = DMatrix::from_diagonal(&DVector::from_iterator(
            unmarked.len(),
            a_sbar.row_iter().map(|row| row.sum()),
        ));
        let mut o_s = DMatrix::identity(n, n);
        for &s in &marked {
            o_s[(s, s)] = 0.0;
        }
        Ok(MarkedPartition {
            b_sbar: b.select_rows(&unmarked),
            c_sbar: c.select_rows(&unmarked),
            degree: g.regular_degree(),
            marked,
            unmarked,
            a_s,
            h,
            a_sbar,
            l_sbar,
            q_sbar,
            delta_s_sbar,
            delta_sbar_sbar,
            o_s,
        })
    }

    /// Vertex labels in `(S, S̄)` order.
    pub fn order(&self) -> Vec<usize> {
        self.marked.iter().chain(&self.unmarked).copied().collect()
    }

    /// Reassembles `[[A_S, H], [Hᵀ, A_S̄]]` in `(S, S̄)` order.
    pub fn permuted_adjacency(&self) -> DMatrix<f64> {
        let (s, t) = (self.marked.len(), self.unmarked.len());
        let mut a = DMatrix::zeros(s + t, s + t);
        a.view_mut((0, 0), (s, s)).copy_from(&self.a_s);
        a.view_mut((0, s), (s, t)).copy_from(&self.h);
        a.view_mut((s, 0), (t, s)).copy_from(&self.h.transpose());
        a.view_mut((s, s), (t, t)).copy_from(&self.a_sbar);
        a
    }

    /// Scatters a matrix given in `(S, S̄)` order back to vertex order.
    pub fn unpermute(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let order = self.order();
        let mut out = DMatrix::zeros(m.nrows(), m.ncols());
        for (i, &vi) in order.iter().enumerate() {
            for (j, &vj) in order.iter().enumerate() {
                out[(vi, vj)] = m[(i, j)];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::presets;

    #[test]
    fn four_cycle_alternate_vertices() {
        let p = MarkedPartition::new(&presets::cycle(4).unwrap(), &[0, 2]).unwrap();
        assert_eq!(p.h, DMatrix::from_element(2, 2, 1.0));
        assert_eq!(p.a_sbar, DMatrix::zeros(2, 2));
        assert_eq!(p.delta_s_sbar, DMatrix::identity(2, 2) * 2.0);
        assert_eq!(p.unmarked, vec![1, 3]);
    }

    #[test]
    fn five_cycle_minus_a_vertex_is_a_path() {
        let p = MarkedPartition::new(&presets::cycle(5).unwrap(), &[0]).unwrap();
        let path = DMatrix::from_row_slice(
            4,
            4,
            &[0., 1., 0., 0., 1., 0., 1., 0., 0., 1., 0., 1., 0., 0., 1., 0.],
        );
        assert_eq!(p.a_sbar, path);
        assert_eq!(p.delta_s_sbar, DMatrix::from_element(1, 1, 2.0));
    }

    #[test]
    fn empty_marked_set() {
        let g = presets::cycle(5).unwrap();
        let p = MarkedPartition::new(&g, &[]).unwrap();
        assert_eq!(p.o_s, DMatrix::identity(5, 5));
        assert_eq!(p.h.nrows(), 0);
        assert_eq!(p.a_sbar, to_f64(&g.adjacency()));
    }

    #[test]
    fn blocks_reassemble_adjacency() {
        let g = presets::petersen();
        let p = MarkedPartition::new(&g, &[7, 2, 4]).unwrap();
        assert_eq!(p.unpermute(&p.permuted_adjacency()), to_f64(&g.adjacency()));
        for (i, &a) in p.marked.iter().enumerate() {
            let outside = g.neighbors(a).iter().filter(|v| !p.marked.contains(v)).count();
            assert_eq!(p.delta_s_sbar[(i, i)], outside as f64);
        }
    }

    #[test]
    fn invalid_vertex() {
        let g = presets::cycle(4).unwrap();
        assert_eq!(
            MarkedPartition::new(&g, &[9]),
            Err(crate::error::Error::InvalidVertex(9))
        );
    }
}
