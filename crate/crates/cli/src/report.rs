//! Builds the JSON report. Every number goes through [`num`] so the output is
//! byte-identical across runs.

use nalgebra::DMatrix;
use serde_json::{json, Map, Number, Value};

use qwalk_core::analysis::{
    adjudications, classify_mss_for, msbar_lower_bound_for, mss_lower_bound_for, mss_upper_bound_for,
    neighborhoods_walk_equitable, return_probability_bounds, BoundReport, EquitMethod, EquitWitness,
};
use qwalk_core::eigenbasis::{combinatorial_bases, BasisVectorKind, KernelBasis};
use qwalk_core::walk::{
    mixing_projection_sum, mixing_time_average, transition_matrix, walk_eigensystem, MarkedWalk, MixingMatrix,
};
use qwalk_core::Graph;

use crate::args::Section;

/// 17 significant digits in scientific notation.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let x = if x == 0.0 { 0.0 } else { x };
    Value::Number(format!("{x:.16e}").parse::<Number>().expect("formatted float is a JSON number"))
}

fn labelled(m: &DMatrix<f64>, rows: &[Value], cols: &[Value]) -> Value {
    let data: Vec<Value> = (0..m.nrows())
        .map(|i| Value::Array((0..m.ncols()).map(|j| num(m[(i, j)])).collect()))
        .collect();
    json!({ "rows": rows, "cols": cols, "data": data })
}

fn vertex_labels(v: &[usize]) -> Vec<Value> {
    v.iter().map(|&x| json!(x)).collect()
}

pub fn vertex_matrix(m: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> Value {
    labelled(m, &vertex_labels(rows), &vertex_labels(cols))
}

fn arc_labels(g: &Graph) -> Vec<Value> {
    (0..g.arc_count())
        .map(|a| {
            let (t, h) = g.arc(a);
            json!(format!("{t}->{h}"))
        })
        .collect()
}

/// The full report plus whether any self-check failed.
pub struct Report {
    pub document: Value,
    pub invariant_violations: Vec<String>,
    pub mixing: MixingMatrix,
}

pub struct Options {
    pub sections: Vec<Section>,
    pub horizon: usize,
    pub tol: f64,
    pub emit_u: bool,
    pub source: String,
}

pub fn run_report(g: &Graph, marked: &[usize], opts: &Options) -> qwalk_core::Result<Report> {
    let walk = MarkedWalk::new(g, marked)?;
    let mhat = walk.mixing();
    let marked = walk.marked().to_vec();
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let kernel_dim = g.edge_count() + marked.len() - g.vertex_count();
    let mut violations = Vec::new();
    let mut doc = Map::new();

    doc.insert(
        "metadata".into(),
        json!({
            "source": opts.source,
            "n": g.vertex_count(),
            "edges": g.edge_count(),
            "k": walk.degree,
            "marked": marked,
            "marked_count": marked.len(),
            "bipartite": g.is_bipartite(),
            "connected": true,
            "sections": opts.sections.iter().map(|s| format!("{s:?}").to_lowercase()).collect::<Vec<_>>(),
            "tolerance": num(opts.tol),
        }),
    );

    if opts.emit_u {
        let u = transition_matrix(g, &marked)?.u;
        let arcs = arc_labels(g);
        doc.insert("transition".into(), labelled(&u, &arcs, &arcs));
    }

    if opts.sections.contains(&Section::Mixing) {
        let proj = mixing_projection_sum(g, &marked)?;
        let agreement = mhat.max_abs_diff(&proj);
        if agreement > opts.tol {
            violations.push(format!("closed form and projection sum differ by {agreement:e}"));
        }
        let mut mixing = Map::new();
        mixing.insert("closed_form".into(), vertex_matrix(&mhat.matrix, &all, &all));
        mixing.insert("projection_sum".into(), vertex_matrix(&proj.matrix, &all, &all));
        mixing.insert("route_agreement".into(), num(agreement));
        if opts.horizon > 0 {
            let avg = mixing_time_average(g, &marked, opts.horizon)?;
            mixing.insert(
                "time_average".into(),
                json!({
                    "horizon": opts.horizon,
                    "matrix": vertex_matrix(&avg.matrix, &all, &all),
                    "max_abs_diff": num(mhat.max_abs_diff(&avg)),
                }),
            );
        }
        mixing.insert("stochasticity_defect".into(), num(mhat.stochasticity_defect()));
        mixing.insert("range_violation".into(), num(mhat.range_violation()));
        mixing.insert("vertex_cut_zeros".into(), vertex_cut_zeros(g, &marked, &mhat));

        let es = walk_eigensystem(g, &marked)?;
        let ranks = es.ranks();
        let phases: Vec<Value> = es
            .components
            .iter()
            .zip(&ranks)
            .map(|(c, &rank)| {
                json!({
                    "theta": num(c.theta),
                    "multiplicity": c.multiplicity,
                    "rank": rank,
                    "adjacency_eigenvalue": c.source.map(|r| num(es.adjacency.eigenvalues[r])),
                })
            })
            .collect();
        let dims_ok = ranks[0] == kernel_dim && ranks[1] == kernel_dim;
        if !dims_ok {
            violations.push(format!("±1 eigenspace ranks {:?} differ from {kernel_dim}", &ranks[..2]));
        }
        mixing.insert(
            "eigen".into(),
            json!({
                "phases": phases,
                "expected_pm1_dimension": kernel_dim,
                "pm1_dimension_check": dims_ok,
                "completeness_defect": num(es.completeness_defect()),
                "projection_defect": num(es.projection_defect()),
            }),
        );
        doc.insert("mixing".into(), Value::Object(mixing));
    }

    if opts.sections.contains(&Section::Bounds) {
        let lower = mss_lower_bound_for(&walk, &mhat)?;
        let upper = mss_upper_bound_for(&walk, &mhat)?;
        let msbar = msbar_lower_bound_for(&walk, &mhat)?;
        let mut bounds = Map::new();
        bounds.insert("mss_lower".into(), bound_json(&lower));
        bounds.insert("mss_upper".into(), bound_json(&upper));
        bounds.insert("msbar_lower".into(), bound_json(&msbar));
        bounds.insert("upper_tight".into(), json!(upper.tight));
        bounds.insert("lower_tight".into(), json!(lower.tight));
        if marked.len() == 1 {
            let r = return_probability_bounds(g, &marked)?;
            bounds.insert(
                "return_probability".into(),
                json!({
                    "vertex": r.anchor,
                    "value": num(r.value),
                    "lower": num(r.lower_value()),
                    "upper": num(r.upper_value()),
                    "lower_eigen_form": num(r.lower_eigen_form),
                    "lower_projection_form": num(r.lower_projection_form),
                    "lower_inverse_form": num(r.lower_inverse_form),
                    "corollary": num(r.corollary),
                    "odd_term": num(r.odd_term),
                    "upper_without_ls": num(r.upper_without_ls),
                }),
            );
        }
        let notes: Vec<Value> = adjudications(&walk, &mhat)?
            .into_iter()
            .map(|a| {
                json!({
                    "topic": a.topic,
                    "location": a.location,
                    "displayed": num(a.displayed),
                    "computed": num(a.computed),
                    "displayed_holds": a.displayed_holds,
                })
            })
            .collect();
        bounds.insert("notes".into(), Value::Array(notes));
        doc.insert("bounds".into(), Value::Object(bounds));
    }

    if opts.sections.contains(&Section::Bases) {
        let b = combinatorial_bases(g, &marked)?;
        let es = walk_eigensystem(g, &marked)?;
        let mut bases = Map::new();
        bases.insert("anchor".into(), json!(b.structure.anchor));
        bases.insert(
            "tree".into(),
            Value::Array(b.structure.tree.iter().map(|&e| json!(g.edge(e))).collect()),
        );
        bases.insert("expected_dimension".into(), json!(kernel_dim));
        for kb in [&b.ker_c, &b.ker_b, &b.eig_plus, &b.eig_minus] {
            let verified = kb.verify_exact(g, &marked)?;
            if !verified || kb.dim() != kernel_dim {
                violations.push(format!("{} basis failed verification", kb.space));
            }
            let mut entry = basis_json(g, kb);
            entry.insert("verified".into(), json!(verified));
            bases.insert(kb.space.tag().into(), Value::Object(entry));
        }
        bases.insert("eigPlus_span_distance".into(), num(b.eig_plus.span_distance(es.f_one())));
        bases.insert("eigMinus_span_distance".into(), num(b.eig_minus.span_distance(es.f_minus_one())));
        doc.insert("bases".into(), Value::Object(bases));
    }

    if opts.sections.contains(&Section::Classify) {
        let c = classify_mss_for(&walk, &mhat)?;
        let exact = neighborhoods_walk_equitable(g, &marked, EquitMethod::WalkMatrix)?;
        if exact.equitable != c.walk_equitable {
            violations.push("walk-matrix and eigenprojection equitability tests disagree".into());
        }
        doc.insert(
            "classification".into(),
            json!({
                "symmetric": c.symmetric,
                "psd": c.psd,
                "uniform": c.uniform,
                "degreeSeparating": c.degree_separating,
                "walkEquitable": c.walk_equitable,
                "neighborhoodStronglyCospectral": c.neighborhood_strongly_cospectral,
                "uniformConditions": {
                    "twoMarked": c.uniform_conditions.two_marked,
                    "oddCycleOrBipartite": c.uniform_conditions.odd_cycle_or_bipartite,
                    "neighborhoodStronglyCospectral": c.uniform_conditions.neighborhood_strongly_cospectral,
                },
                "theoremConsistent": c.theorem_consistent,
                "asymmetry": num(c.asymmetry),
                "minEigenvalue": num(c.min_eigenvalue),
                "neighborhoods": c.equitability.collection,
                "witness": witness_json(c.equitability.witness.as_ref()),
                "walkCountWitness": witness_json(exact.witness.as_ref()),
            }),
        );
    }

    doc.insert(
        "self_checks".into(),
        json!({ "passed": violations.is_empty(), "violations": violations }),
    );
    Ok(Report {
        document: Value::Object(doc),
        invariant_violations: violations,
        mixing: mhat,
    })
}

/// Pairs of unmarked vertices separated by `S`; their `M̂` entries vanish.
fn vertex_cut_zeros(g: &Graph, marked: &[usize], m: &MixingMatrix) -> Value {
    let comps = g.components(marked);
    if comps.len() < 2 {
        return json!({ "separated_pairs": 0, "max_entry": num(0.0) });
    }
    let mut pairs = 0usize;
    let mut worst: f64 = 0.0;
    for (i, a) in comps.iter().enumerate() {
        for b in &comps[i + 1..] {
            for &u in a {
                for &v in b {
                    pairs += 2;
                    worst = worst.max(m.get(u, v).abs()).max(m.get(v, u).abs());
                }
            }
        }
    }
    json!({
        "note": "S is a vertex cut: M entries between separated unmarked vertices are zero",
        "components": comps,
        "separated_pairs": pairs,
        "max_entry": num(worst),
    })
}

fn bound_json(r: &BoundReport) -> Value {
    json!({
        "side": r.side.tag(),
        "bound": vertex_matrix(&r.bound, &r.labels, &r.labels),
        "value": vertex_matrix(&r.target, &r.labels, &r.labels),
        "gap": vertex_matrix(&r.gap, &r.labels, &r.labels),
        "max_abs_gap": num(r.max_abs_gap()),
        "min_slack": num(r.min_slack()),
        "tight": r.tight,
        "predicted_tight": r.predicted_tight,
    })
}

fn basis_json(g: &Graph, kb: &KernelBasis) -> Map<String, Value> {
    let on_arcs = kb.vectors.first().is_some_and(|v| v.len() == g.arc_count() && g.arc_count() != g.edge_count());
    let vectors: Vec<Value> = kb
        .vectors
        .iter()
        .zip(&kb.kinds)
        .map(|(v, kind)| {
            let support: Vec<Value> = v
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    let (a, b) = if on_arcs { g.arc(i) } else { g.edge(i) };
                    json!({ "from": a, "to": b, "value": x })
                })
                .collect();
            json!({ "kind": kind_json(g, kind), "support": support })
        })
        .collect();
    let mut m = Map::new();
    m.insert("indexed_by".into(), json!(if on_arcs { "arc" } else { "edge" }));
    m.insert("alphabet".into(), json!(kb.alphabet.tag()));
    m.insert("in_alphabet".into(), json!(kb.entries_in_alphabet()));
    m.insert("dimension".into(), json!(kb.dim()));
    m.insert("gram_determinant".into(), json!(kb.gram_determinant().to_string()));
    m.insert("vectors".into(), Value::Array(vectors));
    m
}

fn kind_json(g: &Graph, kind: &BasisVectorKind) -> Value {
    match kind {
        BasisVectorKind::Cycle { edge } => json!({ "cycle": g.edge(*edge) }),
        BasisVectorKind::OddPair { edge } => json!({ "odd_pair": g.edge(*edge) }),
        BasisVectorKind::AnchorPath { target } => json!({ "anchor_path": target }),
        BasisVectorKind::AnchorOddCycle => json!("anchor_odd_cycle"),
    }
}

fn witness_json(w: Option<&EquitWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(EquitWitness::WalkCount { length, u, v, within, target, counts }) => json!({
            "walk_length": length,
            "u": u,
            "v": v,
            "within": within,
            "target": target,
            "counts": [counts.0.to_string(), counts.1.to_string()],
        }),
        Some(EquitWitness::Projection { eigenvalue, u, v, within, target, values }) => json!({
            "eigenvalue": num(*eigenvalue),
            "u": u,
            "v": v,
            "within": within,
            "target": target,
            "values": [num(values.0), num(values.1)],
        }),
    }
}

/// Gnuplot `matrix nonuniform`-style table: `row col value`, blank line between rows.
pub fn gnuplot_table(m: &MixingMatrix) -> String {
    let mut out = String::from("# row col value\n");
    for u in 0..m.n() {
        for v in 0..m.n() {
            out.push_str(&format!("{u} {v} {:.16e}\n", m.get(u, v)));
        }
        out.push('\n');
    }
    out
}

pub fn csv(m: &MixingMatrix) -> String {
    let n = m.n();
    let mut out = String::from("vertex");
    for v in 0..n {
        out.push_str(&format!(",{v}"));
    }
    out.push('\n');
    for u in 0..n {
        out.push_str(&u.to_string());
        for v in 0..n {
            out.push_str(&format!(",{:.16e}", m.get(u, v)));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_have_seventeen_digits() {
        assert_eq!(num(0.25).to_string(), "2.5000000000000000e-1");
        assert_eq!(num(-0.0).to_string(), "0.0000000000000000e+0");
        assert_eq!(num(f64::NAN), Value::Null);
        let x = 1.0 / 3.0;
        let back: f64 = num(x).to_string().parse().unwrap();
        assert_eq!(back, x);
    }
}
