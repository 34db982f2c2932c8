//! Implementations behind the CLI subcommands.

use std::fs;
use std::path::Path;

use ndarray::Array2;

use dephasing::canonical::canonicalize;
use dephasing::feasibility::{constraint_report, invert_rates};
use dephasing::model::{
    effective_frequencies, propagate, rates_from_operators, DensityMatrix, RateTable,
};
use dephasing::multiqubit::{
    bell_state, cluster_state, concurrence, register_rate_table, scan_report, two_qubit_rate_table,
    RegisterRateSpec, PSD_TOL,
};

use crate::formats::{fmt_float, parse_json, to_json, OperatorSetDoc, RateTableDoc, ReportDoc};
use crate::{CliError, Initial, Preset};

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

fn read_rate_table(path: &Path) -> Result<RateTable, CliError> {
    let doc: RateTableDoc = parse_json(&read_text(path)?, &path.display().to_string())?;
    doc.to_table()
}

fn read_operator_doc(path: &Path) -> Result<OperatorSetDoc, CliError> {
    parse_json(&read_text(path)?, &path.display().to_string())
}

pub fn cmd_rates(input: &Path, output: &Path) -> Result<(), CliError> {
    let ops = read_operator_doc(input)?.to_operator_set()?;
    let table = rates_from_operators(&ops);
    write_text(output, &to_json(&RateTableDoc::from_table(&table)))
}

pub fn cmd_canonicalize(input: &Path, output: &Path) -> Result<(), CliError> {
    let ops = read_operator_doc(input)?.to_operator_set()?;
    let canonical = canonicalize(&ops);
    write_text(
        output,
        &to_json(&OperatorSetDoc::from_canonical(&canonical)),
    )
}

pub fn cmd_check(input: &Path, output: &Path, tol: Option<f64>) -> Result<(), CliError> {
    let table = read_rate_table(input)?;
    let report = constraint_report(&table, tol)
        .map_err(|e| CliError::input(format!("{}: {e}", input.display())))?;
    write_text(
        output,
        &to_json(&ReportDoc::from_report(table.dims(), &report)),
    )?;
    println!(
        "{}: {}",
        input.display(),
        if report.feasible() {
            "feasible"
        } else {
            "infeasible"
        }
    );
    Ok(())
}

pub fn cmd_invert(input: &Path, output: &Path, tol: Option<f64>) -> Result<(), CliError> {
    let table = read_rate_table(input)?;
    let report = constraint_report(&table, tol)
        .map_err(|e| CliError::input(format!("{}: {e}", input.display())))?;
    if !report.feasible() {
        write_text(
            output,
            &to_json(&ReportDoc::from_report(table.dims(), &report)),
        )?;
        let detail = report
            .first_violated_level()
            .map(|lvl| format!(" (first violation at level {lvl})"))
            .unwrap_or_default();
        return Err(CliError::violation(format!(
            "rate table is not realizable by pure dephasing{detail}; \
             constraint report written to {}",
            output.display()
        )));
    }
    let canonical = invert_rates(&table, tol)
        .map_err(|e| CliError::input(format!("inversion failed unexpectedly: {e}")))?;
    let mut doc = OperatorSetDoc::from_canonical(&canonical);
    doc.report = Some(ReportDoc::from_report(table.dims(), &report));
    write_text(output, &to_json(&doc))
}

pub struct SimulateArgs {
    pub preset: Option<Preset>,
    pub rates: Option<std::path::PathBuf>,
    pub model: Option<std::path::PathBuf>,
    pub initial: Initial,
    pub gamma: f64,
    pub mu: Option<f64>,
    pub gamma14: Option<f64>,
    pub gamma23: Option<f64>,
    pub t_max: Option<f64>,
    pub points: usize,
}

pub fn cmd_simulate(args: &SimulateArgs, output: &Path) -> Result<(), CliError> {
    let sources =
        args.preset.is_some() as u8 + args.rates.is_some() as u8 + args.model.is_some() as u8;
    if sources != 1 {
        return Err(CliError::input(
            "choose exactly one of --preset, --rates, --model".into(),
        ));
    }
    if args.points < 2 {
        return Err(CliError::input("--points must be at least 2".into()));
    }
    if args.gamma < 0.0 || !args.gamma.is_finite() {
        return Err(CliError::input(
            "--gamma must be a finite non-negative rate".into(),
        ));
    }

    let default_span = if args.gamma > 0.0 {
        5.0 / args.gamma
    } else {
        5.0
    };
    let t_max = args.t_max.unwrap_or(default_span);
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(CliError::input("--t-max must be positive".into()));
    }
    let grid = linspace(0.0, t_max, args.points);

    let (rates, freqs, initial) = match args.preset {
        Some(Preset::Bell) => {
            let g14 = args.gamma14.unwrap_or(1.0);
            let rates = two_qubit_table(0.0, 0.0, g14)?;
            (rates, Array2::zeros((4, 4)), bell_state())
        }
        Some(Preset::Cluster) => {
            let (g23, g14) = match args.mu {
                Some(mu) => (mu * args.gamma, mu * args.gamma),
                None => (args.gamma23.unwrap_or(0.0), args.gamma14.unwrap_or(0.0)),
            };
            let rates = two_qubit_table(args.gamma, g23, g14)?;
            (rates, Array2::zeros((4, 4)), cluster_state())
        }
        Some(Preset::Fig2) => {
            let mu = args.mu.unwrap_or(2.0);
            if mu < 0.0 {
                return Err(CliError::input("--mu must be non-negative".into()));
            }
            let rates = two_qubit_table(args.gamma, mu * args.gamma, mu * args.gamma)?;
            let initial = DensityMatrix::uniform(4).map_err(|e| CliError::input(e.to_string()))?;
            (rates, Array2::zeros((4, 4)), initial)
        }
        None => {
            let (rates, freqs) = if let Some(path) = &args.rates {
                let table = read_rate_table(path)?;
                let n = table.dims();
                let freqs = effective_frequencies(&vec![0.0; n], &table)
                    .map_err(|e| CliError::input(e.to_string()))?;
                (table, freqs)
            } else {
                let doc = read_operator_doc(args.model.as_ref().expect("model path"))?;
                let model = doc.to_model()?;
                let table = rates_from_operators(model.ops());
                let freqs = effective_frequencies(model.levels(), &table)
                    .map_err(|e| CliError::input(e.to_string()))?;
                (table, freqs)
            };
            let initial = initial_state(args.initial, rates.dims())?;
            (rates, freqs, initial)
        }
    };

    let mut rows = Vec::with_capacity(grid.len());
    for &t in &grid {
        let state = propagate(&rates, &freqs, &initial, t)
            .map_err(|e| CliError::input(format!("propagation failed: {e}")))?;
        rows.push((t, state));
    }
    write_trajectory_csv(output, &rows)
}

fn initial_state(initial: Initial, dims: usize) -> Result<DensityMatrix, CliError> {
    match initial {
        Initial::Uniform => {
            DensityMatrix::uniform(dims).map_err(|e| CliError::input(e.to_string()))
        }
        Initial::Bell | Initial::Cluster if dims != 4 => Err(CliError::input(format!(
            "--initial {} needs a 4-level (two-qubit) system, got {dims} levels",
            if matches!(initial, Initial::Bell) {
                "bell"
            } else {
                "cluster"
            }
        ))),
        Initial::Bell => Ok(bell_state()),
        Initial::Cluster => Ok(cluster_state()),
    }
}

fn two_qubit_table(gamma: f64, gamma23: f64, gamma14: f64) -> Result<RateTable, CliError> {
    two_qubit_rate_table(gamma, gamma23, gamma14).map_err(|e| CliError::input(e.to_string()))
}

fn write_trajectory_csv(output: &Path, rows: &[(f64, DensityMatrix)]) -> Result<(), CliError> {
    let dims = rows.first().map(|(_, s)| s.dims()).unwrap_or(0);
    let with_concurrence = dims == 4;
    let mut text = String::from("t,min_eigenvalue");
    if with_concurrence {
        text.push_str(",concurrence");
    }
    for m in 1..=dims {
        for n in 1..=dims {
            text.push_str(&format!(",abs_rho_{m}_{n}"));
        }
    }
    text.push('\n');
    for (t, state) in rows {
        let min_eig = state
            .min_eigenvalue()
            .map_err(|e| CliError::input(e.to_string()))?;
        text.push_str(&fmt_float(*t));
        text.push(',');
        text.push_str(&fmt_float(min_eig));
        if with_concurrence {
            text.push(',');
            // concurrence is undefined for non-physical snapshots; leave the
            // field empty once positivity is violated beyond tolerance
            if min_eig >= -PSD_TOL {
                let c = concurrence(state).map_err(|e| CliError::input(e.to_string()))?;
                text.push_str(&fmt_float(c));
            }
        }
        for m in 0..dims {
            for n in 0..dims {
                text.push(',');
                text.push_str(&fmt_float(state.entry(m, n).norm()));
            }
        }
        text.push('\n');
    }
    write_text(output, &text)
}

pub struct ScanArgs {
    pub qubits: usize,
    pub gamma: f64,
    pub mu1_max: f64,
    pub mu1_points: usize,
    pub mu2_max: f64,
    pub mu2_points: usize,
}

pub fn cmd_scan(args: &ScanArgs, output: &Path) -> Result<(), CliError> {
    if args.gamma < 0.0 || !args.gamma.is_finite() {
        return Err(CliError::input(
            "--gamma must be a finite non-negative rate".into(),
        ));
    }
    if args.mu1_points < 2 || (args.qubits == 3 && args.mu2_points < 2) {
        return Err(CliError::input("grids need at least 2 points".into()));
    }
    if args.mu1_max <= 0.0 || args.mu2_max <= 0.0 {
        return Err(CliError::input("grid maxima must be positive".into()));
    }
    let mu1_grid = linspace(0.0, args.mu1_max, args.mu1_points);
    let mut text = String::from("mu1,mu2,feasible,first_violated_level\n");
    match args.qubits {
        2 => {
            for &mu1 in &mu1_grid {
                let spec = RegisterRateSpec::new(2, vec![args.gamma, mu1 * args.gamma])
                    .map_err(|e| CliError::input(e.to_string()))?;
                let report = constraint_report(&register_rate_table(&spec), None)
                    .map_err(|e| CliError::input(e.to_string()))?;
                push_scan_row(
                    &mut text,
                    mu1,
                    0.0,
                    report.feasible(),
                    report.first_violated_level(),
                );
            }
        }
        3 => {
            let mu2_grid = linspace(0.0, args.mu2_max, args.mu2_points);
            for &mu1 in &mu1_grid {
                for &mu2 in &mu2_grid {
                    let report = scan_report(mu1, mu2, args.gamma)
                        .map_err(|e| CliError::input(e.to_string()))?;
                    push_scan_row(
                        &mut text,
                        mu1,
                        mu2,
                        report.feasible(),
                        report.first_violated_level(),
                    );
                }
            }
        }
        other => {
            return Err(CliError::input(format!(
                "--qubits must be 2 or 3, got {other}"
            )))
        }
    }
    write_text(output, &text)
}

fn push_scan_row(text: &mut String, mu1: f64, mu2: f64, feasible: bool, first: Option<usize>) {
    text.push_str(&fmt_float(mu1));
    text.push(',');
    text.push_str(&fmt_float(mu2));
    text.push(',');
    text.push(if feasible { '1' } else { '0' });
    text.push(',');
    if let Some(level) = first {
        text.push_str(&level.to_string());
    }
    text.push('\n');
}

fn linspace(start: f64, end: f64, points: usize) -> Vec<f64> {
    let step = (end - start) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                end
            } else {
                start + step * i as f64
            }
        })
        .collect()
}
