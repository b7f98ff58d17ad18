use nalgebra::DMatrix;

use super::Graph;

/// Integer incidence matrices of a graph under its canonical orderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceSet {
    /// Tail-arc incidence, `|V| x |arcs|`.
    pub dt: DMatrix<i64>,
    /// Head-arc incidence, `|V| x |arcs|`.
    pub dh: DMatrix<i64>,
    /// Arc reversal permutation.
    pub r: DMatrix<i64>,
    /// Arc-edge incidence.
    pub m: DMatrix<i64>,
    /// Signed arc-edge incidence: `+1` on the arc along the orientation.
    pub n: DMatrix<i64>,
    /// Vertex-edge incidence.
    pub b: DMatrix<i64>,
    /// Signed vertex-edge incidence: `+1` at the tail, `-1` at the head.
    pub c: DMatrix<i64>,
    pub a: DMatrix<i64>,
    pub delta: DMatrix<i64>,
}

impl IncidenceSet {
    pub fn new(g: &Graph) -> Self {
        let nv = g.vertex_count();
        let ne = g.edge_count();
        let na = g.arc_count();
        let mut dt = DMatrix::zeros(nv, na);
        let mut dh = DMatrix::zeros(nv, na);
        let mut r = DMatrix::zeros(na, na);
        let mut m = DMatrix::zeros(na, ne);
        let mut n = DMatrix::zeros(na, ne);
        let mut b = DMatrix::zeros(nv, ne);
        let mut c = DMatrix::zeros(nv, ne);
        for (j, &(u, v)) in g.edges().iter().enumerate() {
            let (fwd, back) = (2 * j, 2 * j + 1);
            dt[(u, fwd)] = 1;
            dh[(v, fwd)] = 1;
            dt[(v, back)] = 1;
            dh[(u, back)] = 1;
            r[(fwd, back)] = 1;
            r[(back, fwd)] = 1;
            m[(fwd, j)] = 1;
            m[(back, j)] = 1;
            n[(fwd, j)] = 1;
            n[(back, j)] = -1;
            b[(u, j)] = 1;
            b[(v, j)] = 1;
            c[(u, j)] = 1;
            c[(v, j)] = -1;
        }
        let degrees: Vec<i64> = g.degrees().into_iter().map(|d| d as i64).collect();
        IncidenceSet {
            dt,
            dh,
            r,
            m,
            n,
            b,
            c,
            a: g.adjacency(),
            delta: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(degrees)),
        }
    }

    /// Names of the incidence identities that fail; empty when all hold.
    pub fn identity_failures(&self) -> Vec<&'static str> {
        let na = self.r.nrows();
        let id = DMatrix::<i64>::identity(na, na);
        let checks: [(&'static str, bool); 13] = [
            ("DtR = Dh", &self.dt * &self.r == self.dh),
            ("DhR = Dt", &self.dh * &self.r == self.dt),
            ("RM = M", &self.r * &self.m == self.m),
            ("RN = -N", &self.r * &self.n == -&self.n),
            ("MM^T = I + R", &self.m * self.m.transpose() == &id + &self.r),
            ("NN^T = I - R", &self.n * self.n.transpose() == &id - &self.r),
            ("DtDt^T = Delta", &self.dt * self.dt.transpose() == self.delta),
            ("DhDh^T = Delta", &self.dh * self.dh.transpose() == self.delta),
            ("DtDh^T = A", &self.dt * self.dh.transpose() == self.a),
            ("DhDt^T = A", &self.dh * self.dt.transpose() == self.a),
            ("DtM = B", &self.dt * &self.m == self.b),
            ("DhM = B", &self.dh * &self.m == self.b),
            ("DtN = C = -DhN", &self.dt * &self.n == self.c && -(&self.dh * &self.n) == self.c),
        ];
        checks.into_iter().filter(|(_, ok)| !ok).map(|(name, _)| name).collect()
    }
}

/// Lossless widening of an integer matrix.
pub fn to_f64(m: &DMatrix<i64>) -> DMatrix<f64> {
    m.map(|x| x as f64)
}
