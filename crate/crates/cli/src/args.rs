use std::path::PathBuf;

use clap::{ArgGroup, Parser, ValueEnum};

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Edgelist,
    Graph6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Section {
    Mixing,
    Bounds,
    Bases,
    Classify,
    All,
}

/// Average mixing report for a discrete quantum walk with marked vertices.
#[derive(Debug, Parser)]
#[command(name = "qwalk-mix", version)]
#[command(group(ArgGroup::new("source").required(true).args(["graph", "preset"])))]
pub struct Cli {
    /// Graph file.
    #[arg(long)]
    pub graph: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "edgelist")]
    pub format: Format,

    /// Named graph: cycle:N, path:N, complete:N, hypercube:D, prism:N, cube, petersen.
    #[arg(long)]
    pub preset: Option<String>,

    /// Marked vertices: a comma list such as `0,2`, or `first:K` for `0..K`.
    #[arg(long, required = true)]
    pub marked: String,

    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub sections: Vec<Section>,

    /// Time-average horizon for the brute-force oracle; 0 skips it.
    #[arg(long = "oracle-T", default_value_t = 0)]
    pub oracle_t: usize,

    /// Route-agreement tolerance (default 1e-8, or QWALK_TOL).
    #[arg(long, env = "QWALK_TOL")]
    pub tol: Option<f64>,

    /// Print M̂ as a gnuplot-compatible table instead of the report.
    #[arg(long)]
    pub table: bool,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also write M̂ as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,

    /// Include the transition matrix U in the report.
    #[arg(long)]
    pub emit_u: bool,
}

/// The validated request.
#[derive(Debug, Clone, PartialEq)]
pub struct Request {
    pub source: Source,
    pub marked: MarkedSpec,
    pub sections: Vec<Section>,
    pub horizon: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File { path: PathBuf, format: Format },
    Preset(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkedSpec {
    List(Vec<usize>),
    First(usize),
}

impl MarkedSpec {
    pub fn resolve(&self) -> Vec<usize> {
        match self {
            MarkedSpec::List(v) => v.clone(),
            MarkedSpec::First(k) => (0..*k).collect(),
        }
    }
}

pub fn parse_marked(s: &str) -> Result<MarkedSpec, String> {
    if let Some(k) = s.strip_prefix("first:") {
        return k
            .trim()
            .parse()
            .map(MarkedSpec::First)
            .map_err(|e| format!("--marked first:K: {e}"));
    }
    let items: Result<Vec<usize>, _> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("--marked `{t}`: {e}")))
        .collect();
    let items = items?;
    if items.is_empty() {
        return Err("--marked is empty".into());
    }
    Ok(MarkedSpec::List(items))
}

impl Cli {
    pub fn request(&self) -> Result<Request, String> {
        let source = match (&self.graph, &self.preset) {
            (Some(path), None) => Source::File {
                path: path.clone(),
                format: self.format,
            },
            (None, Some(p)) => Source::Preset(p.clone()),
            _ => return Err("give exactly one of --graph and --preset".into()),
        };
        let mut sections = self.sections.clone();
        if sections.is_empty() {
            return Err("--sections is empty".into());
        }
        if sections.contains(&Section::All) {
            sections = vec![Section::Mixing, Section::Bounds, Section::Bases, Section::Classify];
        }
        sections.sort();
        sections.dedup();
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(format!("tolerance must be positive, got {tol}"));
        }
        Ok(Request {
            source,
            marked: parse_marked(&self.marked)?,
            sections,
            horizon: self.oracle_t,
            tol,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Request, String> {
        let cli = Cli::try_parse_from(std::iter::once("qwalk-mix").chain(args.iter().copied())).map_err(|e| e.to_string())?;
        cli.request()
    }

    #[test]
    fn edge_list_with_sections() {
        let r = parse(&["--graph", "c4.edges", "--marked", "0,2", "--sections", "mixing,bounds"]).unwrap();
        assert_eq!(r.marked, MarkedSpec::List(vec![0, 2]));
        assert_eq!(r.sections, vec![Section::Mixing, Section::Bounds]);
        assert_eq!(r.horizon, 0);
    }

    #[test]
    fn graph6_with_oracle() {
        let r = parse(&["--graph", "x.g6", "--format", "graph6", "--marked", "0", "--oracle-T", "20000"]).unwrap();
        assert_eq!(r.horizon, 20000);
        assert!(matches!(r.source, Source::File { format: Format::Graph6, .. }));
        assert_eq!(r.sections.len(), 4);
    }

    #[test]
    fn missing_marked_is_usage_error() {
        assert!(parse(&["--preset", "cycle:4"]).is_err());
        assert!(parse(&["--marked", "0"]).is_err());
        assert!(parse(&["--preset", "cycle:4", "--graph", "a", "--marked", "0"]).is_err());
    }

    #[test]
    fn marked_forms() {
        assert_eq!(parse_marked("first:3").unwrap().resolve(), vec![0, 1, 2]);
        assert_eq!(parse_marked(" 3, 1").unwrap().resolve(), vec![3, 1]);
        assert!(parse_marked("a").is_err());
        assert!(parse_marked(",").is_err());
    }
}
