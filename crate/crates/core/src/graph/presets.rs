//! Named graph families: `cycle:N`, `complete:N`, `path:N`, `cube`,
//! `hypercube:D`, `petersen`, `prism:N`.

use super::Graph;
use crate::error::{Error, Result};

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::UnknownPreset(format!("cycle:{n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::new(n, &edges)
}

/// The `d`-dimensional hypercube; vertices adjacent when labels differ in one bit.
pub fn hypercube(d: u32) -> Result<Graph> {
    if d == 0 || d > 16 {
        return Err(Error::UnknownPreset(format!("hypercube:{d}")));
    }
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Graph::new(n, &edges)
}

/// Outer 5-cycle on `0..5`, spokes `i ~ i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &edges).expect("Petersen graph is valid")
}

/// Two `n`-cycles `0..n` and `n..2n` joined by the matching `i ~ i+n`.
pub fn prism(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::UnknownPreset(format!("prism:{n}")));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    Graph::new(2 * n, &edges)
}

/// Parses `NAME` or `NAME:ARG`.
pub fn parse_preset(spec: &str) -> Result<Graph> {
    let unknown = || Error::UnknownPreset(spec.to_string());
    let (name, arg) = match spec.split_once(':') {
        Some((name, arg)) => (name.trim(), Some(arg.trim())),
        None => (spec.trim(), None),
    };
    let num = || -> Result<usize> { arg.and_then(|a| a.parse().ok()).ok_or_else(unknown) };
    match name {
        "cycle" => cycle(num()?),
        "path" => path(num()?),
        "complete" => complete(num()?),
        "hypercube" => hypercube(u32::try_from(num()?).map_err(|_| unknown())?),
        "prism" => prism(num()?),
        "cube" if arg.is_none() => hypercube(3),
        "petersen" if arg.is_none() => Ok(petersen()),
        _ => Err(unknown()),
    }
}
