mod args;
mod report;

use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Request, Source};
use qwalk_core::graph::io::{parse_edge_list, parse_graph6};
use qwalk_core::graph::presets::parse_preset;
use qwalk_core::Graph;

const EXIT_USAGE: u8 = 1;
const EXIT_INVARIANT: u8 = 2;
const EXIT_INPUT: u8 = 3;

fn load_graph(req: &Request) -> Result<(Graph, String), String> {
    match &req.source {
        Source::Preset(p) => parse_preset(p).map(|g| (g, format!("preset {p}"))).map_err(|e| e.to_string()),
        Source::File { path, format } => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let g = match format {
                args::Format::Edgelist => parse_edge_list(&text),
                args::Format::Graph6 => parse_graph6(&text),
            }
            .map_err(|e| format!("{}: {e}", path.display()))?;
            let name = path.file_name().map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into());
            Ok((g, name))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let req = match cli.request() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let (g, source) = match load_graph(&req) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let marked = req.marked.resolve();
    // Reject bad input before any numerical work so it maps to the input exit code.
    if let Err(e) = qwalk_core::walk::validate_marked(&g, &marked) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    let opts = report::Options {
        sections: req.sections.clone(),
        horizon: req.horizon,
        tol: req.tol,
        emit_u: cli.emit_u,
        source,
    };
    let rep = match report::run_report(&g, &marked, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVARIANT);
        }
    };

    let body = if cli.table {
        report::gnuplot_table(&rep.mixing)
    } else {
        let mut s = serde_json::to_string_pretty(&rep.document).expect("report serializes");
        s.push('\n');
        s
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    };
    let written = written.and_then(|_| match &cli.csv {
        Some(path) => fs::write(path, report::csv(&rep.mixing)).map_err(|e| format!("{}: {e}", path.display())),
        None => Ok(()),
    });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    for v in &rep.invariant_violations {
        eprintln!("invariant violation: {v}");
    }
    if rep.invariant_violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INVARIANT)
    }
}
