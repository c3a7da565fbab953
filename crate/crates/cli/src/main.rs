//! `potalg`: closed-form spectra and bound states of the minimal-length
//! oscillator family, the independent discretized cross-check, and the
//! residual verification suites, emitted as deterministic CSV or JSON.

mod config;
mod emit;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use potalg::verify::{run_suite, CheckResult, Suite};
use potalg::{
    closed_form_spectrum, dirac_energy, dirac_upper_problem, eigenfunction, energy,
    harmonic_energy, harmonic_g, lowest_eigenvalues, to_sturm, AlgebraicFunction, Branch, DiracGup,
    HarmonicGup,
};

use config::{pick, FileConfig};
use emit::{csv_field, float, json_str};

#[derive(Parser)]
#[command(
    name = "potalg",
    version,
    about = "Spectra and bound states of the minimal-length oscillator family, \
             with an independent discretized cross-check",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage or \
                  validation error, 3 I/O error."
)]
struct Cli {
    /// JSON file supplying defaults for any omitted flag
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Write the result here instead of stdout; a relative path is joined
    /// under POTALG_OUT_DIR when that variable is set
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Output format (default json)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energy levels for one coupling
    Spectrum {
        /// Tower label g (default 1)
        #[arg(long, allow_negative_numbers = true)]
        g: Option<f64>,
        /// Deformation parameter, must be positive (default 1)
        #[arg(long)]
        beta: Option<f64>,
        /// Highest level index to emit (default 5)
        #[arg(long = "n-max")]
        n_max: Option<u32>,
    },
    /// Sample one bound state on a momentum grid
    Eigenfunction {
        /// Tower label g, must be positive (default 1)
        #[arg(long)]
        g: Option<f64>,
        /// Deformation parameter, must be positive (default 1)
        #[arg(long)]
        beta: Option<f64>,
        /// Level index (default 0)
        #[arg(long)]
        n: Option<u32>,
        /// Left end of the momentum grid (default -5)
        #[arg(long = "p-min", allow_negative_numbers = true)]
        p_min: Option<f64>,
        /// Right end of the momentum grid (default 5)
        #[arg(long = "p-max", allow_negative_numbers = true)]
        p_max: Option<f64>,
        /// Number of grid points, at least 2 (default 101)
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Run residual suites; nonzero exit on any failure
    Verify {
        /// Suite to run, repeatable; omit to run all of them
        #[arg(long)]
        suite: Vec<String>,
    },
    /// Discretized spectrum next to the closed form
    Oracle {
        /// Tower label g, at least 1/2 (default 1)
        #[arg(long)]
        g: Option<f64>,
        /// Deformation parameter, must be positive (default 1)
        #[arg(long)]
        beta: Option<f64>,
        /// Interior grid size, at least 16 (default 4096)
        #[arg(long = "N")]
        n_grid: Option<usize>,
        /// Number of levels to extract (default 5)
        #[arg(long)]
        k: Option<usize>,
    },
    /// Deformed harmonic oscillator levels with oracle deltas
    Harmonic {
        /// Particle mass (default 1)
        #[arg(long)]
        mass: Option<f64>,
        /// Oscillator frequency (default 1)
        #[arg(long)]
        omega: Option<f64>,
        /// Reduced Planck constant (default 1)
        #[arg(long)]
        hbar: Option<f64>,
        /// Deformation parameter, must be positive (default 1)
        #[arg(long)]
        beta: Option<f64>,
        /// Highest level index to emit (default 5)
        #[arg(long = "n-max")]
        n_max: Option<u32>,
        /// Oracle grid size (default 4096)
        #[arg(long = "N")]
        n_grid: Option<usize>,
    },
    /// Dirac oscillator levels on a chosen branch, with oracle deltas
    Dirac {
        /// Particle mass (default 1)
        #[arg(long)]
        mass: Option<f64>,
        /// Oscillator frequency (default 1)
        #[arg(long)]
        omega: Option<f64>,
        /// Reduced Planck constant (default 1)
        #[arg(long)]
        hbar: Option<f64>,
        /// Speed of light (default 1)
        #[arg(long)]
        c: Option<f64>,
        /// Deformation parameter, must be positive (default 1)
        #[arg(long)]
        beta: Option<f64>,
        /// Highest level index to emit (default 5)
        #[arg(long = "n-max")]
        n_max: Option<u32>,
        /// Oracle grid size (default 4096)
        #[arg(long = "N")]
        n_grid: Option<usize>,
        /// Energy branch (default plus)
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
    },
}

fn main() -> ExitCode {
    ExitCode::from(run())
}

fn run() -> u8 {
    let cli = Cli::parse();
    let file = match config::load(cli.config.as_deref()) {
        Ok(f) => f,
        Err(e) => return usage(&e),
    };
    let format = match resolve_format(cli.format, &file) {
        Ok(f) => f,
        Err(e) => return usage(&e),
    };
    let out = cli.output.as_deref();

    let rendered = match cli.command {
        Command::Spectrum { g, beta, n_max } => spectrum_cmd(g, beta, n_max, &file, format),
        Command::Eigenfunction { g, beta, n, p_min, p_max, samples } => {
            eigenfunction_cmd(g, beta, n, p_min, p_max, samples, &file, format)
        }
        Command::Oracle { g, beta, n_grid, k } => oracle_cmd(g, beta, n_grid, k, &file, format),
        Command::Harmonic { mass, omega, hbar, beta, n_max, n_grid } => {
            harmonic_cmd(mass, omega, hbar, beta, n_max, n_grid, &file, format)
        }
        Command::Dirac { mass, omega, hbar, c, beta, n_max, n_grid, branch } => {
            dirac_cmd(mass, omega, hbar, c, beta, n_max, n_grid, branch, &file, format)
        }
        Command::Verify { suite } => return verify_cmd(suite, &file, format, out),
    };

    match rendered {
        Ok(text) => match emit::write_out(out, &text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                3
            }
        },
        Err(e) => usage(&e),
    }
}

fn usage(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    2
}

fn require(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_owned())
    }
}

fn resolve_format(flag: Option<Format>, file: &FileConfig) -> Result<Format, String> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match file.format.as_deref() {
        None => Ok(Format::Json),
        Some("json") => Ok(Format::Json),
        Some("csv") => Ok(Format::Csv),
        Some(other) => Err(format!("unknown format '{other}' in config (expected csv or json)")),
    }
}

fn resolve_branch(flag: Option<BranchArg>, file: &FileConfig) -> Result<Branch, String> {
    if let Some(b) = flag {
        return Ok(match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        });
    }
    match file.branch.as_deref() {
        None => Ok(Branch::Plus),
        Some("plus") => Ok(Branch::Plus),
        Some("minus") => Ok(Branch::Minus),
        Some(other) => Err(format!("unknown branch '{other}' in config (expected plus or minus)")),
    }
}

fn check_beta(beta: f64) -> Result<(), String> {
    require(beta.is_finite() && beta > 0.0, "beta must be positive and finite")
}

fn function_json(f: &AlgebraicFunction) -> String {
    let coeffs: Vec<String> = f.coeffs().iter().map(|c| float(*c)).collect();
    format!(
        "{{\"beta\":{},\"s\":{},\"coeffs\":[{}]}}",
        float(f.beta()),
        float(f.s()),
        coeffs.join(",")
    )
}

fn spectrum_cmd(
    g: Option<f64>,
    beta: Option<f64>,
    n_max: Option<u32>,
    file: &FileConfig,
    format: Format,
) -> Result<String, String> {
    let g = pick(g, file.g, 1.0);
    let beta = pick(beta, file.beta, 1.0);
    let n_max = pick(n_max, file.n_max, 5);
    check_beta(beta)?;
    require(g.is_finite(), "g must be finite")?;

    let result = closed_form_spectrum(g, beta, n_max);
    Ok(match format {
        Format::Csv => {
            let mut text = String::from("n,E\n");
            for (n, e) in &result.lines {
                text.push_str(&format!("{n},{}\n", float(*e)));
            }
            text
        }
        Format::Json => {
            let lines: Vec<String> =
                result.lines.iter().map(|(n, e)| format!("[{n},{}]", float(*e))).collect();
            format!(
                "{{\"params\":{{\"command\":\"spectrum\",\"g\":{},\"beta\":{},\"n_max\":{}}},\
                 \"source\":{},\"lines\":[{}]}}\n",
                float(g),
                float(beta),
                n_max,
                json_str(result.source.as_str()),
                lines.join(",")
            )
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn eigenfunction_cmd(
    g: Option<f64>,
    beta: Option<f64>,
    n: Option<u32>,
    p_min: Option<f64>,
    p_max: Option<f64>,
    samples: Option<usize>,
    file: &FileConfig,
    format: Format,
) -> Result<String, String> {
    let g = pick(g, file.g, 1.0);
    let beta = pick(beta, file.beta, 1.0);
    let n = pick(n, file.n, 0);
    let p_min = pick(p_min, file.p_min, -5.0);
    let p_max = pick(p_max, file.p_max, 5.0);
    let samples = pick(samples, file.samples, 101);
    check_beta(beta)?;
    require(g.is_finite() && g > 0.0, "bound states require g > 0")?;
    require(p_min.is_finite() && p_max.is_finite() && p_min < p_max, "need p_min < p_max")?;
    require(samples >= 2, "need at least 2 samples")?;

    let f = eigenfunction(n, g, beta);
    let e = energy(n, g, beta);
    let step = (p_max - p_min) / (samples - 1) as f64;
    let grid: Vec<(f64, f64)> =
        (0..samples).map(|i| p_min + step * i as f64).map(|p| (p, f.eval(p))).collect();

    Ok(match format {
        Format::Csv => {
            let mut text = String::from("p,psi\n");
            for (p, psi) in &grid {
                text.push_str(&format!("{},{}\n", float(*p), float(*psi)));
            }
            text
        }
        Format::Json => {
            let samples_json: Vec<String> =
                grid.iter().map(|(p, psi)| format!("[{},{}]", float(*p), float(*psi))).collect();
            format!(
                "{{\"params\":{{\"command\":\"eigenfunction\",\"g\":{},\"beta\":{},\"n\":{},\
                 \"p_min\":{},\"p_max\":{},\"samples\":{}}},\"energy\":{},\"function\":{},\
                 \"samples\":[{}]}}\n",
                float(g),
                float(beta),
                n,
                float(p_min),
                float(p_max),
                samples,
                float(e),
                function_json(&f),
                samples_json.join(",")
            )
        }
    })
}

fn oracle_cmd(
    g: Option<f64>,
    beta: Option<f64>,
    n_grid: Option<usize>,
    k: Option<usize>,
    file: &FileConfig,
    format: Format,
) -> Result<String, String> {
    let g = pick(g, file.g, 1.0);
    let beta = pick(beta, file.beta, 1.0);
    let n_grid = pick(n_grid, file.n_grid, 4096);
    let k = pick(k, file.k, 5);
    check_beta(beta)?;
    require(g.is_finite(), "g must be finite")?;
    require(k >= 1, "k must be at least 1")?;

    let t = to_sturm(g, beta, n_grid).map_err(|e| e.to_string())?;
    let levels = lowest_eigenvalues(&t, k).map_err(|e| e.to_string())?;

    // Per-level deviation scaled by the level's own magnitude (n+1)²β, so
    // the ground state does not divide by zero.
    let rows: Vec<(u32, f64, f64, f64)> = levels
        .iter()
        .enumerate()
        .map(|(i, lam)| {
            let n = i as u32;
            let reference = energy(n, g, beta);
            let unit = f64::from(n + 1).powi(2) * beta;
            (n, *lam, reference, (lam - reference).abs() / unit)
        })
        .collect();
    let max_rel = rows.iter().fold(0.0_f64, |acc, r| acc.max(r.3));

    Ok(match format {
        Format::Csv => {
            let mut text = String::from("n,oracle,closed_form,rel_error\n");
            for (n, lam, reference, rel) in &rows {
                text.push_str(&format!(
                    "{n},{},{},{}\n",
                    float(*lam),
                    float(*reference),
                    float(*rel)
                ));
            }
            text
        }
        Format::Json => {
            let lines: Vec<String> = rows
                .iter()
                .map(|(n, lam, reference, rel)| {
                    format!(
                        "{{\"n\":{n},\"oracle\":{},\"closed_form\":{},\"rel_error\":{}}}",
                        float(*lam),
                        float(*reference),
                        float(*rel)
                    )
                })
                .collect();
            format!(
                "{{\"params\":{{\"command\":\"oracle\",\"g\":{},\"beta\":{},\"N\":{},\"k\":{}}},\
                 \"boundary_warning\":{},\"lines\":[{}],\"max_rel_error\":{}}}\n",
                float(g),
                float(beta),
                n_grid,
                k,
                t.boundary_warning(),
                lines.join(","),
                float(max_rel)
            )
        }
    })
}

/// Discretized levels mapped to physical energies, or `None` with a reason
/// when the discretization cannot run at these parameters.
fn model_oracle(
    g: f64,
    beta: f64,
    n_grid: usize,
    count: usize,
    to_physical: impl Fn(f64) -> f64,
) -> Result<(Vec<f64>, bool), String> {
    let t = to_sturm(g, beta, n_grid).map_err(|e| e.to_string())?;
    let levels = lowest_eigenvalues(&t, count).map_err(|e| e.to_string())?;
    let warning = t.boundary_warning();
    Ok((levels.into_iter().map(to_physical).collect(), warning))
}

/// CSV body shared by the two physical models: closed-form levels with
/// oracle columns, which stay empty when the oracle is unavailable.
fn model_csv(lines: &[(u32, f64)], oracle: Option<&[f64]>) -> String {
    let mut text = String::from("n,E,oracle,rel_error\n");
    for (i, (n, e)) in lines.iter().enumerate() {
        match oracle {
            Some(levels) => {
                let rel = (levels[i] - e).abs() / e.abs();
                text.push_str(&format!("{n},{},{},{}\n", float(*e), float(levels[i]), float(rel)));
            }
            None => text.push_str(&format!("{n},{},,\n", float(*e))),
        }
    }
    text
}

/// JSON fragment for the oracle block of the two physical models.
fn model_oracle_json(lines: &[(u32, f64)], oracle: Option<&[f64]>, warning: bool) -> String {
    match oracle {
        None => "null".to_owned(),
        Some(levels) => {
            let deltas: Vec<String> = lines
                .iter()
                .enumerate()
                .map(|(i, (n, e))| format!("[{n},{}]", float((levels[i] - e).abs() / e.abs())))
                .collect();
            let max_delta = lines
                .iter()
                .enumerate()
                .fold(0.0_f64, |acc, (i, (_, e))| acc.max((levels[i] - e).abs() / e.abs()));
            format!(
                "{{\"deltas\":[{}],\"max_delta\":{},\"boundary_warning\":{}}}",
                deltas.join(","),
                float(max_delta),
                warning
            )
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn harmonic_cmd(
    mass: Option<f64>,
    omega: Option<f64>,
    hbar: Option<f64>,
    beta: Option<f64>,
    n_max: Option<u32>,
    n_grid: Option<usize>,
    file: &FileConfig,
    format: Format,
) -> Result<String, String> {
    let mass = pick(mass, file.mass, 1.0);
    let omega = pick(omega, file.omega, 1.0);
    let hbar = pick(hbar, file.hbar, 1.0);
    let beta = pick(beta, file.beta, 1.0);
    let n_max = pick(n_max, file.n_max, 5);
    let n_grid = pick(n_grid, file.n_grid, 4096);

    let model = HarmonicGup::new(mass, omega, hbar, beta).map_err(|e| e.to_string())?;
    let g = harmonic_g(&model);
    let lines: Vec<(u32, f64)> = (0..=n_max).map(|n| (n, harmonic_energy(n, &model))).collect();

    let scale = 0.5 * mass * hbar * hbar * omega * omega;
    let (oracle, warning) =
        model_oracle(g, beta, n_grid, lines.len(), |lam| scale * (lam + g * beta))?;

    Ok(match format {
        Format::Csv => model_csv(&lines, Some(&oracle)),
        Format::Json => {
            let lines_json: Vec<String> =
                lines.iter().map(|(n, e)| format!("[{n},{}]", float(*e))).collect();
            format!(
                "{{\"params\":{{\"command\":\"harmonic\",\"mass\":{},\"omega\":{},\"hbar\":{},\
                 \"beta\":{},\"n_max\":{},\"N\":{}}},\"g\":{},\"beta\":{},\"lines\":[{}],\
                 \"oracle\":{}}}\n",
                float(mass),
                float(omega),
                float(hbar),
                float(beta),
                n_max,
                n_grid,
                float(g),
                float(beta),
                lines_json.join(","),
                model_oracle_json(&lines, Some(&oracle), warning)
            )
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn dirac_cmd(
    mass: Option<f64>,
    omega: Option<f64>,
    hbar: Option<f64>,
    c: Option<f64>,
    beta: Option<f64>,
    n_max: Option<u32>,
    n_grid: Option<usize>,
    branch: Option<BranchArg>,
    file: &FileConfig,
    format: Format,
) -> Result<String, String> {
    let mass = pick(mass, file.mass, 1.0);
    let omega = pick(omega, file.omega, 1.0);
    let hbar = pick(hbar, file.hbar, 1.0);
    let c = pick(c, file.c, 1.0);
    let beta = pick(beta, file.beta, 1.0);
    let n_max = pick(n_max, file.n_max, 5);
    let n_grid = pick(n_grid, file.n_grid, 4096);
    let branch = resolve_branch(branch, file)?;

    let model = DiracGup::new(mass, omega, hbar, c, beta).map_err(|e| e.to_string())?;
    let problem = dirac_upper_problem(&model).map_err(|e| e.to_string())?;
    let lines: Vec<(u32, f64)> =
        (0..=n_max).map(|n| (n, dirac_energy(n, &model, branch))).collect();

    // The discretization needs g ≥ 1/2; a stronger deformation pushes the
    // label below that, so the closed form ships without oracle columns.
    let oracle = match model_oracle(problem.g, beta, n_grid, lines.len(), |lam| {
        problem.energy_from_eigenvalue(lam, branch)
    }) {
        Ok((levels, warning)) => Some((levels, warning)),
        Err(e) => {
            eprintln!("note: oracle unavailable at these parameters: {e}");
            None
        }
    };
    let (levels, warning) = match &oracle {
        Some((levels, warning)) => (Some(levels.as_slice()), *warning),
        None => (None, false),
    };

    Ok(match format {
        Format::Csv => model_csv(&lines, levels),
        Format::Json => {
            let lines_json: Vec<String> =
                lines.iter().map(|(n, e)| format!("[{n},{}]", float(*e))).collect();
            format!(
                "{{\"params\":{{\"command\":\"dirac\",\"mass\":{},\"omega\":{},\"hbar\":{},\
                 \"c\":{},\"beta\":{},\"n_max\":{},\"N\":{},\"branch\":{}}},\"g\":{},\
                 \"beta\":{},\"lines\":[{}],\"oracle\":{}}}\n",
                float(mass),
                float(omega),
                float(hbar),
                float(c),
                float(beta),
                n_max,
                n_grid,
                json_str(branch.as_str()),
                float(problem.g),
                float(beta),
                lines_json.join(","),
                model_oracle_json(&lines, levels, warning)
            )
        }
    })
}

fn verify_cmd(
    suite_flags: Vec<String>,
    file: &FileConfig,
    format: Format,
    out: Option<&Path>,
) -> u8 {
    let names: Vec<String> =
        if suite_flags.is_empty() { file.suite.clone().unwrap_or_default() } else { suite_flags };
    let suites: Vec<Suite> = if names.is_empty() {
        Suite::ALL.to_vec()
    } else {
        let mut picked = Vec::with_capacity(names.len());
        for name in &names {
            match Suite::parse(name) {
                Some(s) => picked.push(s),
                None => {
                    let valid: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                    return usage(&format!(
                        "unknown suite '{name}' (expected one of: {})",
                        valid.join(", ")
                    ));
                }
            }
        }
        picked
    };

    let results: Vec<CheckResult> = suites.iter().flat_map(|s| run_suite(*s)).collect();
    println!("{:<16} {:<68} {:>11} {:>10}  status", "suite", "check", "residual", "tolerance");
    for r in &results {
        println!(
            "{:<16} {:<68} {:>11} {:>10}  {}",
            r.suite,
            r.name,
            format!("{:.3e}", r.residual),
            format!("{:.1e}", r.tolerance),
            if r.passed { "PASS" } else { "FAIL" }
        );
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} checks, {} failed", results.len(), failed);

    if out.is_some() {
        let text = match format {
            Format::Csv => verify_csv(&results),
            Format::Json => verify_json(&suites, &results, failed),
        };
        if let Err(e) = emit::write_out(out, &text) {
            eprintln!("error: {e}");
            return 3;
        }
    }
    u8::from(failed > 0)
}

fn verify_csv(results: &[CheckResult]) -> String {
    let mut text = String::from("suite,check,residual,tolerance,passed,note\n");
    for r in results {
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.suite,
            csv_field(&r.name),
            float(r.residual),
            float(r.tolerance),
            r.passed,
            csv_field(&r.note)
        ));
    }
    text
}

fn verify_json(suites: &[Suite], results: &[CheckResult], failed: usize) -> String {
    let suite_names: Vec<String> = suites.iter().map(|s| json_str(s.name())).collect();
    let rows: Vec<String> = results
        .iter()
        .map(|r| {
            format!(
                "{{\"suite\":{},\"check\":{},\"residual\":{},\"tolerance\":{},\"passed\":{},\
                 \"note\":{}}}",
                json_str(r.suite),
                json_str(&r.name),
                float(r.residual),
                float(r.tolerance),
                r.passed,
                json_str(&r.note)
            )
        })
        .collect();
    format!(
        "{{\"params\":{{\"command\":\"verify\",\"suite\":[{}]}},\"results\":[{}],\
         \"checks\":{},\"failed\":{}}}\n",
        suite_names.join(","),
        rows.join(","),
        results.len(),
        failed
    )
}
