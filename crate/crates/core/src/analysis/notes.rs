use super::bounds::{msbar_lower_bound_for, return_probability_bounds};
use crate::error::Result;
use crate::walk::{projection_contributions, walk_eigensystem, MarkedWalk, MinusOneLeading, MixingMatrix};

/// A printed constant or formula checked against what the computation gives.
#[derive(Debug, Clone, PartialEq)]
pub struct Adjudication {
    pub topic: &'static str,
    /// Vertex or block the comparison refers to.
    pub location: String,
    pub displayed: f64,
    pub computed: f64,
    /// True when the printed value agrees with the computation.
    pub displayed_holds: bool,
}

const AGREE_TOL: f64 = 1e-10;

fn note(topic: &'static str, location: String, displayed: f64, computed: f64) -> Adjudication {
    Adjudication {
        topic,
        location,
        displayed,
        computed,
        displayed_holds: (displayed - computed).abs() <= AGREE_TOL,
    }
}

/// Checks the printed constants that apply to this marked walk.
pub fn adjudications(walk: &MarkedWalk, mhat: &MixingMatrix) -> Result<Vec<Adjudication>> {
    let mut out = Vec::new();
    let g = &walk.graph;
    let p = &walk.partition;
    let k = walk.k();

    // Unmarked block when X \ S is a matching plus isolated vertices.
    let msbar = msbar_lower_bound_for(walk, mhat)?;
    if msbar.predicted_tight {
        for (i, &u) in p.unmarked.iter().enumerate() {
            match p.delta_sbar_sbar[(i, i)] as usize {
                0 => out.push(note(
                    "isolated unmarked vertex: displayed 1/(2k^2) vs M[u,u]",
                    format!("({u},{u})"),
                    1.0 / (2.0 * k * k),
                    mhat.get(u, u),
                )),
                _ => {
                    let j = (0..p.unmarked.len())
                        .find(|&j| p.a_sbar[(i, j)] != 0.0)
                        .expect("matched vertex has a partner");
                    let v = p.unmarked[j];
                    if u < v {
                        out.push(note(
                            "matched unmarked pair: (k+2)/(4(k+1)) vs M[u,v]",
                            format!("({u},{v})"),
                            (k + 2.0) / (4.0 * (k + 1.0)),
                            mhat.get(u, v),
                        ));
                        let gr = walk
                            .spectrum
                            .iter()
                            .find(|(l, _)| (l - 1.0).abs() < 1e-9)
                            .map(|(_, gr)| gr[(i, j)].powi(2))
                            .unwrap_or(f64::NAN);
                        out.push(note(
                            "matched unmarked pair: displayed G∘² entry 1/2 vs computed",
                            format!("({u},{v})"),
                            0.5,
                            gr,
                        ));
                    }
                }
            }
        }
    }

    if p.marked.len() == 1 {
        let r = return_probability_bounds(g, &p.marked)?;
        let a = p.marked[0];
        out.push(note(
            "single marked vertex: upper bound as displayed (no -L_S/(2k) term) vs with it",
            format!("({a},{a})"),
            r.upper_without_ls,
            r.upper_value(),
        ));
    }

    // Leading factor of the [S̄, S] block of the (−1)-eigenspace term.
    let es = walk_eigensystem(g, &p.marked)?;
    let contrib = &projection_contributions(g, &es)[1];
    let laplacian = (walk.minus_one_term(MinusOneLeading::Laplacian) - contrib).amax();
    let signless = (walk.minus_one_term(MinusOneLeading::SignlessLaplacian) - contrib).amax();
    out.push(Adjudication {
        topic: "(-1)-term [Sbar,S] leading factor: L_Sbar (displayed) error vs Q_Sbar error",
        location: "block".into(),
        displayed: laplacian,
        computed: signless,
        displayed_holds: laplacian <= AGREE_TOL,
    });
    Ok(out)
}
