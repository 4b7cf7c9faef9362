//! `hybrident`: sweep and analysis front end for the hybrid-entanglement
//! library. Every command is deterministic given its flags; re-running
//! produces byte-identical output. Sweep rows are emitted row-major over
//! the declared axes.
//!
//! Exit codes: 0 success, 1 operational failure, 2 validation failure
//! (oracle deviation beyond tolerance), 64 usage error.

mod output;
mod sweep;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex;
use output::{write_output, Cell, Format, Table};
use rand::Rng;
use rand::SeedableRng;
use rayon::prelude::*;
use std::path::PathBuf;
use sweep::{resolve_axes, Axis, Range, UsageError};

use hybrident::channels::{thermal_dilation_output, zero_temp_output, ChannelParams};
use hybrident::fock::{wigner_point, wigner_point_quadrature, TruncatedFockSpace};
use hybrident::gram::{inverse_gram_schmidt, numerical_rank};
use hybrident::measures::{
    concurrence, embed_pure, embed_state, entropy_of_entanglement, log_negativity,
    tripartite_tangle, Cut,
};
use hybrident::states::{classify, HybridState};
use hybrident::witness::{
    moments_from_density, s_closed_thermal, s_prime_geometric, sv_determinant, witness_threshold,
    WitnessVerdict,
};
use hybrident::Error as LibError;

const EXIT_VALIDATION: i32 = 2;
const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "hybrident",
    version,
    about = "Classify, embed, quantify, and witness qudit-qumode hybrid entanglement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Clone)]
struct SweepOpts {
    /// Axis range start:stop; repeat once per axis or once for all
    #[arg(long = "range")]
    ranges: Vec<Range>,
    /// Axis step count (>= 2); repeat once per axis or once for all
    #[arg(long = "steps")]
    steps: Vec<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix, rank, and inverse Gram-Schmidt embedding of a state file
    Gs {
        /// Hybrid-state JSON file
        #[arg(long)]
        input: PathBuf,
        /// Rank/pivot tolerance
        #[arg(long, default_value_t = 1e-10)]
        rank_tol: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Entropy of entanglement of the qutrit-qumode example vs amplitude
    EntropySweep {
        #[command(flatten)]
        sweep: SweepOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Logarithmic negativity of the mixed qubit-qumode example over (p, alpha)
    LognegGrid {
        #[command(flatten)]
        sweep: SweepOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Thermal-channel witness: determinant over (alpha, n_th), threshold
    /// surface, or per-eta detection regions
    ThermalWitness {
        /// Transmissivity (determinant mode)
        #[arg(long, default_value_t = 2.0 / 3.0)]
        eta: f64,
        /// Emit the detection-threshold surface over (alpha, eta) instead
        #[arg(long, conflicts_with = "regions")]
        surface: bool,
        /// Comma-separated eta list; emit threshold curves over alpha per eta
        #[arg(long, value_delimiter = ',')]
        regions: Vec<f64>,
        #[command(flatten)]
        sweep: SweepOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Wootters concurrence of the damped (zero-temperature) output over (alpha, eta)
    ThermalConcurrence {
        #[command(flatten)]
        sweep: SweepOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Geometric-mixture witness bound s' over (x, alpha)
    GeometricWitness {
        #[command(flatten)]
        sweep: SweepOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Tripartite tangle quantities over the two overlaps
    TangleGrid {
        #[command(flatten)]
        sweep: SweepOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Fock-oracle determinant vs closed form over a parameter grid
    OracleCompare {
        /// Fock cutoff of the validation space
        #[arg(long, env = "HYBRIDENT_CUTOFF", default_value_t = 40)]
        cutoff: usize,
        /// Extra simulation levels beyond the cutoff
        #[arg(long, default_value_t = 10)]
        buffer: usize,
        /// Maximum admissible |s_numeric - s_closed|
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Additional random grid points
        #[arg(long, default_value_t = 0)]
        random_points: usize,
        /// Seed for the random grid points
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Wigner function of a single-mode state over an (x, p) grid
    Wigner {
        /// State: vacuum | fock:N | coherent:RE (or RE,IM) | cat:ALPHA | thermal:NTH
        #[arg(long, default_value = "vacuum")]
        state: String,
        /// Fock cutoff of the evaluation space
        #[arg(long, env = "HYBRIDENT_CUTOFF", default_value_t = 24)]
        cutoff: usize,
        /// Cross-check N random grid points against the defining-integral
        /// quadrature (reports to stderr; deviation > 1e-6 exits 2)
        #[arg(long, default_value_t = 0)]
        check: usize,
        /// Seed for cross-check point selection
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        sweep: SweepOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through the error too
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            if e.downcast_ref::<UsageError>().is_some() {
                eprintln!("usage error: {e}");
                std::process::exit(EXIT_USAGE);
            }
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gs {
            input,
            rank_tol,
            output,
        } => cmd_gs(&input, rank_tol, &output),
        Command::EntropySweep { sweep, output } => cmd_entropy_sweep(&sweep, &output),
        Command::LognegGrid { sweep, output } => cmd_logneg_grid(&sweep, &output),
        Command::ThermalWitness {
            eta,
            surface,
            regions,
            sweep,
            output,
        } => cmd_thermal_witness(eta, surface, &regions, &sweep, &output),
        Command::ThermalConcurrence { sweep, output } => cmd_thermal_concurrence(&sweep, &output),
        Command::GeometricWitness { sweep, output } => cmd_geometric_witness(&sweep, &output),
        Command::TangleGrid { sweep, output } => cmd_tangle_grid(&sweep, &output),
        Command::OracleCompare {
            cutoff,
            buffer,
            tol,
            random_points,
            seed,
            output,
        } => cmd_oracle_compare(cutoff, buffer, tol, random_points, seed, &output),
        Command::Wigner {
            state,
            cutoff,
            check,
            seed,
            sweep,
            output,
        } => cmd_wigner(&state, cutoff, check, seed, &sweep, &output),
    }
}

fn fmt_complex(z: Complex<f64>) -> String {
    format!("{:+.11e}{:+.11e}i", z.re, z.im)
}

fn cmd_gs(input: &PathBuf, rank_tol: f64, output: &OutputOpts) -> Result<i32> {
    let text = output::read_input(input)?;
    let state: HybridState<f64> = HybridState::from_json_str(&text).map_err(|e| match e {
        LibError::Parse { .. } => anyhow!(UsageError(format!("{input:?}: {e}"))),
        other => anyhow!(other),
    })?;
    if state.family().is_some() {
        return Err(anyhow!(UsageError(
            "family-tagged states have no finite qumode list to orthonormalize".into()
        )));
    }
    let gram = state.qumode_gram()?;
    let embedding = inverse_gram_schmidt(&gram, rank_tol)?;
    let eigen_rank = numerical_rank(&gram, rank_tol);
    if eigen_rank != embedding.rank() {
        eprintln!(
            "note: eigenvalue rank {eigen_rank} differs from pivot rank {} at tol {rank_tol:e}",
            embedding.rank()
        );
    }
    let n = gram.n();

    match output.format {
        Format::Csv => {
            let mut table = Table::new(vec!["section", "i", "j", "re", "im"]);
            for i in 0..n {
                for j in 0..n {
                    let z = gram.entries()[(i, j)];
                    table.push(vec![
                        Cell::S("gram".into()),
                        Cell::I(i as i64),
                        Cell::I(j as i64),
                        Cell::F(z.re),
                        Cell::F(z.im),
                    ]);
                }
            }
            table.push(vec![
                Cell::S("rank".into()),
                Cell::I(embedding.rank() as i64),
                Cell::I(0),
                Cell::F(0.0),
                Cell::F(0.0),
            ]);
            for i in 0..n {
                for (j, &z) in embedding.row(i).iter().enumerate() {
                    table.push(vec![
                        Cell::S("embedding".into()),
                        Cell::I(i as i64),
                        Cell::I(j as i64),
                        Cell::F(z.re),
                        Cell::F(z.im),
                    ]);
                }
            }
            table.emit(output.format, output.out.as_ref())?;
        }
        Format::Json => {
            let gram_json: Vec<Vec<[f64; 2]>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let z = gram.entries()[(i, j)];
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect();
            let emb_json: Vec<Vec<[f64; 2]>> = (0..n)
                .map(|i| embedding.row(i).iter().map(|z| [z.re, z.im]).collect())
                .collect();
            let classification = classify(&state, rank_tol)?;
            let obj = serde_json::json!({
                "gram": gram_json,
                "rank": embedding.rank(),
                "embedding": emb_json,
                "rank_tol": rank_tol,
                "verdict": format!("{:?}", classification.verdict),
            });
            let mut text = serde_json::to_string_pretty(&obj)?;
            text.push('\n');
            write_output(output.out.as_ref(), &text)?;
        }
    }
    // Human-readable summary on stderr so piped CSV stays clean.
    eprintln!("states: {n}, rank: {}", embedding.rank());
    for i in 0..n {
        let row: Vec<String> = embedding.row(i).iter().map(|&z| fmt_complex(z)).collect();
        eprintln!("row {i}: {}", row.join("  "));
    }
    Ok(0)
}

fn cmd_entropy_sweep(sweep: &SweepOpts, output: &OutputOpts) -> Result<i32> {
    let axes = [Axis {
        name: "alpha",
        default_start: 0.0,
        default_stop: 3.0,
        default_steps: 61,
        min: 0.0,
        max: 20.0,
    }];
    let grids = resolve_axes(&axes, &sweep.ranges, &sweep.steps).map_err(|e| anyhow!(e))?;
    let rows: Vec<Vec<Cell>> = grids[0]
        .par_iter()
        .map(|&alpha| {
            let s = hybrident::states::qutrit_cat_state(alpha);
            let psi = embed_pure(&s, 0).expect("finite state embeds");
            let rank = psi.len() / 3;
            let e = entropy_of_entanglement(&psi, (3, rank)).expect("embedded vector is unit norm");
            vec![Cell::F(alpha), Cell::F(e)]
        })
        .collect();
    let mut table = Table::new(vec!["alpha", "ebits"]);
    for r in rows {
        table.push(r);
    }
    table.emit(output.format, output.out.as_ref())?;
    Ok(0)
}

fn cmd_logneg_grid(sweep: &SweepOpts, output: &OutputOpts) -> Result<i32> {
    let axes = [
        Axis {
            name: "p",
            default_start: 0.0,
            default_stop: 1.0,
            default_steps: 21,
            min: 0.0,
            max: 1.0,
        },
        Axis {
            name: "alpha",
            default_start: 0.0,
            default_stop: 3.0,
            default_steps: 31,
            min: 0.0,
            max: 20.0,
        },
    ];
    let grids = resolve_axes(&axes, &sweep.ranges, &sweep.steps).map_err(|e| anyhow!(e))?;
    let points: Vec<(f64, f64)> = grids[0]
        .iter()
        .flat_map(|&p| grids[1].iter().map(move |&a| (p, a)))
        .collect();
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|&(p, alpha)| {
            let s = hybrident::states::mixed_qubit_cat_state(p, alpha).expect("valid mixture");
            let rho = embed_state(&s).expect("DV-like state embeds");
            let e = log_negativity(&rho, Cut::B).expect("bipartite");
            vec![Cell::F(p), Cell::F(alpha), Cell::F(e)]
        })
        .collect();
    let mut table = Table::new(vec!["p", "alpha", "e_n"]);
    for r in rows {
        table.push(r);
    }
    table.emit(output.format, output.out.as_ref())?;
    Ok(0)
}

fn cmd_thermal_witness(
    eta: f64,
    surface: bool,
    regions: &[f64],
    sweep: &SweepOpts,
    output: &OutputOpts,
) -> Result<i32> {
    let alpha_axis = Axis {
        name: "alpha",
        default_start: 0.05,
        default_stop: 1.5,
        default_steps: 50,
        min: 0.0,
        max: 20.0,
    };
    if surface {
        // Threshold surface over (alpha, eta).
        let axes = [
            alpha_axis,
            Axis {
                name: "eta",
                default_start: 0.05,
                default_stop: 0.95,
                default_steps: 46,
                min: 0.0,
                max: 1.0,
            },
        ];
        let grids = resolve_axes(&axes, &sweep.ranges, &sweep.steps).map_err(|e| anyhow!(e))?;
        let mut table = Table::new(vec!["alpha", "eta", "n_th_threshold"]);
        for &a in &grids[0] {
            for &e in &grids[1] {
                let thr = match witness_threshold(a, e) {
                    Ok(v) => v,
                    Err(LibError::DegenerateEta) => f64::INFINITY,
                    Err(err) => return Err(anyhow!(err)),
                };
                table.push(vec![Cell::F(a), Cell::F(e), Cell::F(thr)]);
            }
        }
        table.emit(output.format, output.out.as_ref())?;
        return Ok(0);
    }
    if !regions.is_empty() {
        // Per-eta boundary curves over alpha.
        let axes = [alpha_axis];
        let grids = resolve_axes(&axes, &sweep.ranges, &sweep.steps).map_err(|e| anyhow!(e))?;
        let mut table = Table::new(vec!["eta", "alpha", "n_th_threshold"]);
        for &e in regions {
            if !(0.0..=1.0).contains(&e) {
                return Err(anyhow!(UsageError(format!("eta = {e} outside [0, 1]"))));
            }
            for &a in &grids[0] {
                let thr = match witness_threshold(a, e) {
                    Ok(v) => v,
                    Err(LibError::DegenerateEta) => f64::INFINITY,
                    Err(err) => return Err(anyhow!(err)),
                };
                table.push(vec![Cell::F(e), Cell::F(a), Cell::F(thr)]);
            }
        }
        table.emit(output.format, output.out.as_ref())?;
        return Ok(0);
    }
    // Determinant values over (alpha, n_th) at fixed eta.
    if !(0.0..=1.0).contains(&eta) {
        return Err(anyhow!(UsageError(format!("eta = {eta} outside [0, 1]"))));
    }
    let axes = [
        alpha_axis,
        Axis {
            name: "n_th",
            default_start: 0.0,
            default_stop: 0.5,
            default_steps: 26,
            min: 0.0,
            max: 1e6,
        },
    ];
    let grids = resolve_axes(&axes, &sweep.ranges, &sweep.steps).map_err(|e| anyhow!(e))?;
    let mut table = Table::new(vec!["alpha", "n_th", "s", "detected"]);
    for &a in &grids[0] {
        for &n in &grids[1] {
            let params = ChannelParams::new(Complex::new(a, 0.0), eta, n)?;
            let report = s_closed_thermal(&params);
            table.push(vec![
                Cell::F(a),
                Cell::F(n),
                Cell::F(report.s_value),
                Cell::I((report.verdict == WitnessVerdict::EntanglementDetected) as i64),
            ]);
        }
    }
    table.emit(output.format, output.out.as_ref())?;
    Ok(0)
}

fn cmd_thermal_concurrence(sweep: &SweepOpts, output: &OutputOpts) -> Result<i32> {
    let axes = [
        Axis {
            name: "alpha",
            default_start: 0.01,
            default_stop: 2.0,
            default_steps: 50,
            min: 0.0,
            max: 20.0,
        },
        Axis {
            name: "eta",
            default_start: 0.0,
            default_stop: 1.0,
            default_steps: 26,
            min: 0.0,
            max: 1.0,
        },
    ];
    let grids = resolve_axes(&axes, &sweep.ranges, &sweep.steps).map_err(|e| anyhow!(e))?;
    let points: Vec<(f64, f64)> = grids[0]
        .iter()
        .flat_map(|&a| grids[1].iter().map(move |&e| (a, e)))
        .collect();
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|&(a, e)| {
            let rho = zero_temp_output(Complex::new(a, 0.0), e).expect("valid eta");
            let c = concurrence(&rho).expect("two-qubit state");
            vec![Cell::F(a), Cell::F(e), Cell::F(c)]
        })
        .collect();
    let mut table = Table::new(vec!["alpha", "eta", "concurrence"]);
    for r in rows {
        table.push(r);
    }
    table.emit(output.format, output.out.as_ref())?;
    Ok(0)
}

fn cmd_geometric_witness(sweep: &SweepOpts, output: &OutputOpts) -> Result<i32> {
    let axes = [
        Axis {
            name: "x",
            default_start: 0.02,
            default_stop: 0.9,
            default_steps: 45,
            min: 1e-9,
            max: 1.0 - 1e-9,
        },
        Axis {
            name: "alpha",
            default_start: 0.0,
            default_stop: 2.0,
            default_steps: 41,
            min: 0.0,
            max: 20.0,
        },
    ];
    let grids = resolve_axes(&axes, &sweep.ranges, &sweep.steps).map_err(|e| anyhow!(e))?;
    let mut table = Table::new(vec!["x", "alpha", "s_prime", "detected"]);
    for &x in &grids[0] {
        for &a in &grids[1] {
            let report = s_prime_geometric(x, a)?;
            table.push(vec![
                Cell::F(x),
                Cell::F(a),
                Cell::F(report.s_value),
                Cell::I((report.verdict == WitnessVerdict::EntanglementDetected) as i64),
            ]);
        }
    }
    table.emit(output.format, output.out.as_ref())?;
    Ok(0)
}

fn cmd_tangle_grid(sweep: &SweepOpts, output: &OutputOpts) -> Result<i32> {
    let mk = |name| Axis {
        name,
        default_start: 0.0,
        default_stop: 1.0,
        default_steps: 26,
        min: -1.0,
        max: 1.0,
    };
    let axes = [mk("q_phi"), mk("q_psi")];
    let grids = resolve_axes(&axes, &sweep.ranges, &sweep.steps).map_err(|e| anyhow!(e))?;
    let mut table = Table::new(vec![
        "q_phi", "q_psi", "tau_res", "c2_ab", "c2_ac", "c2_total",
    ]);
    for &qp in &grids[0] {
        for &qs in &grids[1] {
            let r = tripartite_tangle(Complex::new(qp, 0.0), Complex::new(qs, 0.0))?;
            table.push(vec![
                Cell::F(qp),
                Cell::F(qs),
                Cell::F(r.tau_res),
                Cell::F(r.c2_ab),
                Cell::F(r.c2_ac),
                Cell::F(r.c2_total),
            ]);
        }
    }
    table.emit(output.format, output.out.as_ref())?;
    Ok(0)
}

fn cmd_oracle_compare(
    cutoff: usize,
    buffer: usize,
    tol: f64,
    random_points: usize,
    seed: u64,
    output: &OutputOpts,
) -> Result<i32> {
    let mut points: Vec<(f64, f64, f64)> = Vec::new();
    for &a in &[0.2, 0.44, 0.8] {
        for &e in &[1.0 / 3.0, 2.0 / 3.0] {
            for &n in &[0.0, 0.1, 0.3] {
                points.push((a, e, n));
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_points {
        points.push((
            rng.gen_range(0.05..1.0),
            rng.gen_range(0.1..0.9),
            rng.gen_range(0.0..0.4),
        ));
    }

    let space = TruncatedFockSpace::<f64>::new(cutoff);
    let results: Vec<Result<(f64, f64)>> = points
        .par_iter()
        .map(|&(a, e, n)| {
            let params = ChannelParams::new(Complex::new(a, 0.0), e, n)?;
            let rho = thermal_dilation_output(&params, &space, buffer)?;
            let moments = moments_from_density(&rho, &space)?;
            let s_num = sv_determinant(&moments)?;
            let s_cl = s_closed_thermal(&params).s_value;
            Ok((s_num, s_cl))
        })
        .collect();

    let mut table = Table::new(vec![
        "alpha",
        "eta",
        "n_th",
        "s_numeric",
        "s_closed",
        "abs_diff",
    ]);
    let mut worst = 0.0f64;
    for ((a, e, n), res) in points.iter().zip(results) {
        let (s_num, s_cl) = res?;
        let diff = (s_num - s_cl).abs();
        worst = worst.max(diff);
        table.push(vec![
            Cell::F(*a),
            Cell::F(*e),
            Cell::F(*n),
            Cell::F(s_num),
            Cell::F(s_cl),
            Cell::F(diff),
        ]);
    }
    table.emit(output.format, output.out.as_ref())?;
    eprintln!(
        "oracle-compare: {} points, worst |s_numeric - s_closed| = {worst:.3e} (tol {tol:.1e})",
        points.len()
    );
    if worst > tol {
        eprintln!("VALIDATION FAILED: deviation exceeds tolerance");
        return Ok(EXIT_VALIDATION);
    }
    Ok(0)
}

fn parse_state_spec(
    spec: &str,
    space: &TruncatedFockSpace<f64>,
) -> Result<hybrident::linalg::CMatrix<f64>> {
    use hybrident::linalg::{normalize, outer};
    let usage = |msg: String| anyhow!(UsageError(msg));
    let pure = |v: Vec<Complex<f64>>| outer(&v, &v);
    let (kind, arg) = match spec.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (spec, None),
    };
    match kind {
        "vacuum" => Ok(pure(space.vacuum())),
        "fock" => {
            let n: usize = arg
                .ok_or_else(|| usage("fock:N needs a photon number".into()))?
                .parse()
                .map_err(|_| usage(format!("bad photon number in '{spec}'")))?;
            if n >= space.dim() {
                return Err(usage(format!("fock:{n} exceeds the cutoff {}", space.cutoff())));
            }
            Ok(pure(space.fock_vector(n)))
        }
        "coherent" => {
            let arg = arg.ok_or_else(|| usage("coherent:RE[,IM] needs an amplitude".into()))?;
            let (re, im) = match arg.split_once(',') {
                Some((r, i)) => (
                    r.parse::<f64>().map_err(|_| usage(format!("bad amplitude '{arg}'")))?,
                    i.parse::<f64>().map_err(|_| usage(format!("bad amplitude '{arg}'")))?,
                ),
                None => (
                    arg.parse::<f64>().map_err(|_| usage(format!("bad amplitude '{arg}'")))?,
                    0.0,
                ),
            };
            Ok(pure(space.coherent_vector(Complex::new(re, im))?))
        }
        "cat" => {
            let a: f64 = arg
                .ok_or_else(|| usage("cat:ALPHA needs an amplitude".into()))?
                .parse()
                .map_err(|_| usage(format!("bad amplitude in '{spec}'")))?;
            let plus = space.coherent_vector(Complex::new(a, 0.0))?;
            let minus = space.coherent_vector(Complex::new(-a, 0.0))?;
            let mut v: Vec<Complex<f64>> =
                plus.iter().zip(minus.iter()).map(|(&p, &m)| p + m).collect();
            normalize(&mut v);
            Ok(pure(v))
        }
        "thermal" => {
            let n: f64 = arg
                .ok_or_else(|| usage("thermal:NTH needs a mean photon number".into()))?
                .parse()
                .map_err(|_| usage(format!("bad mean photon number in '{spec}'")))?;
            Ok(space.thermal_state(n)?)
        }
        other => Err(usage(format!(
            "unknown state '{other}'; use vacuum | fock:N | coherent:RE[,IM] | cat:ALPHA | thermal:NTH"
        ))),
    }
}

fn cmd_wigner(
    state: &str,
    cutoff: usize,
    check: usize,
    seed: u64,
    sweep: &SweepOpts,
    output: &OutputOpts,
) -> Result<i32> {
    let mk = |name| Axis {
        name,
        default_start: -4.0,
        default_stop: 4.0,
        default_steps: 61,
        min: -100.0,
        max: 100.0,
    };
    let axes = [mk("x"), mk("p")];
    let grids = resolve_axes(&axes, &sweep.ranges, &sweep.steps).map_err(|e| anyhow!(e))?;
    let space = TruncatedFockSpace::<f64>::new(cutoff.max(2));
    let rho = parse_state_spec(state, &space)?;

    let points: Vec<(f64, f64)> = grids[0]
        .iter()
        .flat_map(|&x| grids[1].iter().map(move |&p| (x, p)))
        .collect();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&(x, p)| wigner_point(&rho, x, p))
        .collect();
    let mut table = Table::new(vec!["x", "p", "w"]);
    for (&(x, p), &w) in points.iter().zip(values.iter()) {
        table.push(vec![Cell::F(x), Cell::F(p), Cell::F(w)]);
    }
    table.emit(output.format, output.out.as_ref())?;

    if check > 0 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (x0, x1) = (grids[0][0], *grids[0].last().unwrap());
        let (p0, p1) = (grids[1][0], *grids[1].last().unwrap());
        let mut worst = 0.0f64;
        for _ in 0..check {
            let x = rng.gen_range(x0..=x1);
            let p = rng.gen_range(p0..=p1);
            let wk = wigner_point(&rho, x, p);
            let wq = wigner_point_quadrature(&rho, x, p);
            worst = worst.max((wk - wq).abs());
        }
        eprintln!("wigner: kernel vs quadrature at {check} points, worst diff {worst:.3e}");
        if worst > 1e-6 {
            eprintln!("VALIDATION FAILED: kernel deviates from the defining integral");
            return Ok(EXIT_VALIDATION);
        }
    }
    Ok(0)
}
