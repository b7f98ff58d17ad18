//! The marked-vertex walk: transition matrix, eigensystem, and the average
//! vertex mixing matrix by time averaging, by eigenprojections, and by
//! closed block formulas.

mod closed_form;
mod complex;
mod eigensystem;
mod mixing;
mod transition;

pub use closed_form::{ClosedFormTerms, MarkedWalk, MinusOneLeading};
pub use complex::ComplexMatrix;
pub use eigensystem::{direct_eigenprojection, walk_eigensystem, EigenComponent, WalkEigensystem};
pub use mixing::{
    mixing_closed_form, mixing_from_eigensystem, mixing_projection_sum, mixing_time_average,
    projection_contributions, MixingMatrix, MixingRoute,
};
pub use transition::{transition_matrix, transition_matrix_general, CoinForm, TransitionMatrix};

use crate::error::{Error, Result};
use crate::graph::{normalize_subset, Graph};

/// Checks the preconditions shared by the spectral routes: `k`-regular graph
/// and `1 <= |S| <= n - 1`. Returns `k` and the sorted marked set.
pub fn validate_marked(g: &Graph, marked: &[usize]) -> Result<(usize, Vec<usize>)> {
    let marked = normalize_subset(g.vertex_count(), marked)?;
    let k = g.require_regular()?;
    if marked.is_empty() {
        return Err(Error::EmptyMarkedSet);
    }
    if marked.len() == g.vertex_count() {
        return Err(Error::FullMarkedSet);
    }
    Ok((k, marked))
}
