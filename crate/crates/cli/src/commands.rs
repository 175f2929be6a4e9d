use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use gedspace::alignment::Alignment;
use gedspace::geometry::{GraphSpace, MeanOptions};
use gedspace::kernel::{edit_kernel, gram_matrix, induced_metric_with_witness, kernel_trick_metric, GramKind};
use gedspace::suites::run_suite;
use gedspace::{parse_graph, serialize_graph, AttributedGraph, MorphismClass, Padding};

use crate::config::RunConfig;
use crate::error::CliError;

pub fn read_graph(path: &Path) -> Result<AttributedGraph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_graph(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn read_graphs(paths: &[PathBuf]) -> Result<Vec<AttributedGraph>, CliError> {
    paths.iter().map(|p| read_graph(p)).collect()
}

/// Writes to the configured output path, or to `out` when there is none.
fn emit(cfg: &RunConfig, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

pub fn dist(cfg: &RunConfig, a: &Path, b: &Path, witness: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let x = read_graph(a)?;
    let y = read_graph(b)?;
    let mut text = String::new();
    match cfg.class {
        MorphismClass::All => {
            let nearest = induced_metric_with_witness(&x, &y, cfg.score, &cfg.edit_config())?;
            text.push_str(&format!("{:.12}\n", nearest.distance));
            if witness {
                text.push_str(&format!("witness {}\n", nearest.witness));
            }
        }
        MorphismClass::Compact => {
            if witness {
                return Err(CliError::Config("--witness requires --class all for dist".into()));
            }
            let d = kernel_trick_metric(&x, &y, cfg.score, cfg.class, &cfg.edit_config())?;
            text.push_str(&format!("{d:.12}\n"));
        }
    }
    emit(cfg, &text, out)
}

pub fn kernel(cfg: &RunConfig, a: &Path, b: &Path, witness: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let x = read_graph(a)?;
    let y = read_graph(b)?;
    let k = edit_kernel(&x, &y, cfg.score, cfg.class, &cfg.edit_config())?;
    let mut text = format!("{:.12}\n", k.value);
    if witness {
        text.push_str(&format!("witness {}\n", k.witness));
    }
    emit(cfg, &text, out)
}

/// Decimal rendering with 12 significant digits.
pub fn significant(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{:.*}", decimals, v + 0.0)
}

fn validate_distances(d: &[Vec<f64>], tol: f64) -> Result<(), CliError> {
    let n = d.len();
    for i in 0..n {
        if d[i][i] != 0.0 {
            return Err(CliError::Failed(format!("distance matrix: nonzero diagonal at {i}")));
        }
        for j in 0..n {
            if d[i][j] < 0.0 || (d[i][j] - d[j][i]).abs() > 1e-12 {
                return Err(CliError::Failed(format!("distance matrix: entry ({i},{j}) breaks symmetry or sign")));
            }
            for k in 0..n {
                if d[i][k] > d[i][j] + d[j][k] + tol {
                    return Err(CliError::Failed(format!("distance matrix: triangle ({i},{j},{k}) violated")));
                }
            }
        }
    }
    Ok(())
}

pub fn gram(cfg: &RunConfig, dir: &Path, kind: GramKind, out: &mut dyn Write) -> Result<(), CliError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Lib(gedspace::Error::EmptyInput));
    }
    let graphs = read_graphs(&paths)?;
    let matrix = gram_matrix(&graphs, kind, cfg.score, cfg.class, &cfg.edit_config())?;
    if kind == GramKind::Distance {
        validate_distances(&matrix, cfg.tol)?;
    }
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(paths.iter().map(|p| p.file_name().unwrap_or_default().to_string_lossy().into_owned()))?;
    for row in &matrix {
        writer.write_record(row.iter().map(|&v| significant(v)))?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::io("<csv>", e.into_error()))?;
    emit(cfg, &String::from_utf8(bytes).expect("csv output is utf-8"), out)
}

pub fn align(cfg: &RunConfig, center: &Path, files: &[PathBuf], out: &mut dyn Write) -> Result<(), CliError> {
    let z = read_graph(center)?;
    let graphs = read_graphs(files)?;
    let order = match cfg.order {
        Some(n) => n,
        None => graphs.iter().map(|g| g.order()).fold(z.order(), usize::max),
    };
    let alignment = Alignment::new(&z, order, cfg.guard)?;
    let aligned = graphs
        .iter()
        .map(|g| alignment.align(g).map(|a| a.matrix.to_nested()))
        .collect::<gedspace::Result<Vec<_>>>()?;
    let mut text = serde_json::to_string(&aligned).expect("finite reals serialize");
    text.push('\n');
    emit(cfg, &text, out)
}

pub fn mean(
    cfg: &RunConfig,
    files: &[PathBuf],
    max_iter: usize,
    restarts: usize,
    out: &mut dyn Write,
    log: &mut dyn Write,
) -> Result<(), CliError> {
    let graphs = read_graphs(files)?;
    let space = GraphSpace {
        padding: match cfg.padding {
            Padding::PairwiseSum => Padding::Bound(cfg.order),
            p => p,
        },
        guard: cfg.guard,
    };
    let options = MeanOptions {
        max_iter,
        restarts,
        seed: cfg.seed,
    };
    let result = space.sample_mean(&graphs, &options)?;
    let mut graph_text = serialize_graph(&result.mean);
    graph_text.push('\n');
    let mut report = String::new();
    for (i, f) in result.trace.iter().enumerate() {
        report.push_str(&format!("iteration {i} frechet {f:.12}\n"));
    }
    if !result.converged {
        report.push_str(&format!("warning: no fixed point after {} iterations\n", result.iterations));
    }
    // The graph takes stdout unless it goes to a file; the trace takes the other stream.
    match &cfg.output {
        Some(path) => {
            out.write_all(report.as_bytes()).map_err(stdout_err)?;
            fs::write(path, graph_text).map_err(|e| CliError::io(path, e))
        }
        None => {
            log.write_all(report.as_bytes()).map_err(|e| CliError::io("<stderr>", e))?;
            out.write_all(graph_text.as_bytes()).map_err(stdout_err)
        }
    }
}

pub fn check(cfg: &RunConfig, suite: &str, trials: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let report = run_suite(suite, trials, cfg.seed, cfg.tol)?;
    emit(cfg, &format!("{report}\n"), out)?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("suite {suite} reported failures")))
    }
}
