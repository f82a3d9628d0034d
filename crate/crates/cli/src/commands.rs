use std::collections::BTreeMap;

use rayon::prelude::*;
use unruh_core::qstate::pauli4_encode_with_tolerance;
use unruh_core::two_atom::POSITIVITY_DRIFT_TOL;
use unruh_core::{
    asymptotic_concurrence, asymptotic_state, asymptotic_two_atom, build_collective_liouvillian,
    concurrence, evolve_state, evolve_two_atom, excitation_rate, fourier_g, fourier_g_numeric,
    kossakowski_large_acceleration, kossakowski_scalar, transition_probability, BlochVector,
    CollectiveLiouvillian, IntegratorOptions, KossakowskiCoefficients, KossakowskiMatrix,
    Propagation, QuadratureConfig, SingleAtomParams, StationaryMethod, TrajectoryParams,
    TwoAtomState, UnitVector,
};

use crate::args::{
    Builder, CorrelationsArgs, PropagationKind, Quantity, RateArgs, SingleArgs, SweepArgs, TwoArgs,
};
use crate::parse::{parse_assignment, parse_axis, parse_bloch, parse_init};
use crate::table::{Cell, Table};
use crate::CliError;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn numerical(e: impl std::fmt::Display) -> CliError {
    CliError::Numerical(e.to_string())
}

fn time_grid(t_max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(CliError::Usage(format!(
            "--t-max must be finite and non-negative, got {t_max}"
        )));
    }
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    Ok((0..=steps)
        .map(|k| t_max * k as f64 / steps as f64)
        .collect())
}

pub fn correlations(args: &CorrelationsArgs) -> Result<Table, CliError> {
    let beta = args.temperature.beta_u();
    let params = TrajectoryParams::from_beta_u(beta, args.epsilon).map_err(usage)?;
    let quad = QuadratureConfig::default();
    let mut columns = vec!["lambda", "beta_u", "g_closed"];
    if args.numeric {
        columns.extend(["g_numeric", "abs_diff"]);
    }
    let mut table = Table::new(columns);
    for &lambda in &args.lambda {
        let closed = fourier_g(lambda, beta).map_err(usage)?;
        let mut row: Vec<Cell> = vec![lambda.into(), beta.into(), closed.into()];
        if args.numeric {
            let numeric = fourier_g_numeric(lambda, &params, &quad).map_err(numerical)?;
            row.extend([numeric.into(), (numeric - closed).abs().into()]);
        }
        table.push(row);
    }
    Ok(table)
}

pub fn single(args: &SingleArgs) -> Result<Table, CliError> {
    let n = parse_axis(&args.n)?;
    let p = SingleAtomParams::scalar(args.omega, args.temperature.beta_u(), n).map_err(usage)?;
    let r0 = parse_bloch(&args.rho0, &n)?;
    let rf = args
        .observable
        .as_deref()
        .map(|s| parse_bloch(s, &n))
        .transpose()?;
    let times = time_grid(args.t_max, args.steps)?;

    let mut columns = vec!["kind", "t", "r1", "r2", "r3"];
    if rf.is_some() {
        columns.push("p_if");
    }
    let mut table = Table::new(columns);
    let row = |kind: &str, t: Cell, r: &BlochVector, p: Option<f64>| {
        let v = r.as_vector();
        let mut row = vec![kind.into(), t, v.x.into(), v.y.into(), v.z.into()];
        row.extend(p.map(Cell::Num));
        row
    };
    for t in times {
        let r = evolve_state(&p, &r0, t).map_err(numerical)?;
        let prob = rf
            .as_ref()
            .map(|rf| transition_probability(&p, &r0, rf, t))
            .transpose()
            .map_err(numerical)?;
        table.push(row("sample", t.into(), &r, prob));
    }
    let r_inf = asymptotic_state(&p).map_err(numerical)?;
    let prob = rf.as_ref().map(|rf| 0.5 * (1.0 + r_inf.dot(rf)));
    table.push(row("asymptote", Cell::Missing, &r_inf, prob));
    Ok(table)
}

pub fn rate(args: &RateArgs) -> Result<Table, CliError> {
    let beta = args.temperature.beta_u();
    let mut table = Table::new(vec!["omega", "beta_u", "a", "b", "c", "gamma"]);
    table.push(rate_row(args.omega, beta)?);
    Ok(table)
}

fn rate_row(omega: f64, beta: f64) -> Result<Vec<Cell>, CliError> {
    let p = SingleAtomParams::scalar(omega, beta, UnitVector::z()).map_err(usage)?;
    Ok(vec![
        omega.into(),
        beta.into(),
        p.a().into(),
        p.b().into(),
        p.c().into(),
        excitation_rate(&p).into(),
    ])
}

fn two_atom_row(
    kind: &str,
    t: Cell,
    s: &TwoAtomState,
    asym: &TwoAtomState,
) -> Result<Vec<Cell>, CliError> {
    let rho = pauli4_encode_with_tolerance(s, POSITIVITY_DRIFT_TOL).map_err(numerical)?;
    Ok(vec![
        kind.into(),
        t,
        s.tau().into(),
        s.min_eigenvalue().into(),
        concurrence(&rho).into(),
        (s.components() - asym.components()).amax().into(),
    ])
}

pub fn two(args: &TwoArgs) -> Result<Table, CliError> {
    let n = parse_axis(&args.n)?;
    let beta = args.temperature.beta_u();
    let k = match args.builder {
        Builder::Large => kossakowski_large_acceleration(args.omega, beta, &n),
        Builder::Full => kossakowski_scalar(args.omega, beta, &n),
    }
    .map_err(usage)?;
    let l = build_collective_liouvillian(&k, &n).map_err(usage)?;
    let s0 = parse_init(&args.init)?;
    let times = time_grid(args.t_max, args.steps)?;
    let propagation = match args.propagation {
        PropagationKind::Exact => Propagation::Exact,
        PropagationKind::Adaptive => Propagation::Adaptive(IntegratorOptions::default()),
    };

    let asym = asymptotic_two_atom(&l, s0.tau(), StationaryMethod::NullSpace).map_err(numerical)?;
    let mut table = Table::new(vec![
        "kind",
        "t",
        "tau",
        "min_eigenvalue",
        "concurrence",
        "asym_residual",
    ]);
    for t in times {
        let s = evolve_two_atom(&l, &s0, t, propagation).map_err(numerical)?;
        table.push(two_atom_row("sample", t.into(), &s, &asym)?);
    }
    table.push(two_atom_row("asymptote", Cell::Missing, &asym, &asym)?);
    Ok(table)
}

impl Quantity {
    /// Parameters with their defaults, in column order.
    fn parameters(self) -> &'static [(&'static str, f64)] {
        match self {
            Quantity::Concurrence => &[("tau", -1.0), ("r", 1.0)],
            Quantity::Rate => &[("omega", 1.0), ("beta_u", 1.0)],
            Quantity::Transition => &[("omega", 1.0), ("beta_u", 1.0), ("t", 1.0)],
        }
    }

    fn outputs(self) -> &'static [&'static str] {
        match self {
            Quantity::Concurrence => &["concurrence", "closed_form"],
            Quantity::Rate => &["gamma"],
            Quantity::Transition => &["probability"],
        }
    }

    fn evaluate(self, p: &BTreeMap<&str, f64>) -> Result<Vec<f64>, CliError> {
        match self {
            Quantity::Concurrence => {
                let (tau, r) = (p["tau"], p["r"]);
                let l = structured_liouvillian(r)?;
                let s = asymptotic_two_atom(&l, tau, StationaryMethod::NullSpace).map_err(usage)?;
                let rho =
                    pauli4_encode_with_tolerance(&s, POSITIVITY_DRIFT_TOL).map_err(numerical)?;
                Ok(vec![
                    concurrence(&rho),
                    asymptotic_concurrence(tau, r).map_err(usage)?,
                ])
            }
            Quantity::Rate => {
                let p = SingleAtomParams::scalar(p["omega"], p["beta_u"], UnitVector::z())
                    .map_err(usage)?;
                Ok(vec![excitation_rate(&p)])
            }
            Quantity::Transition => {
                let n = UnitVector::z();
                let params = SingleAtomParams::scalar(p["omega"], p["beta_u"], n).map_err(usage)?;
                let (ground, excited) = (BlochVector::pure(&-n), BlochVector::pure(&n));
                let prob =
                    transition_probability(&params, &ground, &excited, p["t"]).map_err(usage)?;
                Ok(vec![prob])
            }
        }
    }
}

/// Collective generator with `A = 1`, `B = R`, `C = 0` along `z`.
fn structured_liouvillian(r: f64) -> Result<CollectiveLiouvillian, CliError> {
    let n = UnitVector::z();
    let k = KossakowskiMatrix::from_coefficients(
        KossakowskiCoefficients {
            a: 1.0,
            b: r,
            c: 0.0,
        },
        &n,
    );
    build_collective_liouvillian(&k, &n).map_err(usage)
}

pub fn sweep(args: &SweepArgs) -> Result<Table, CliError> {
    let defaults = args.of.parameters();
    let known = |key: &str| defaults.iter().find(|(k, _)| *k == key).map(|(k, _)| *k);
    let swept = known(&args.param).ok_or_else(|| {
        let names: Vec<&str> = defaults.iter().map(|(k, _)| *k).collect();
        CliError::Usage(format!(
            "cannot sweep {:?}; expected one of {}",
            args.param,
            names.join(", ")
        ))
    })?;
    if !(args.start.is_finite() && args.stop.is_finite() && args.start <= args.stop) {
        return Err(CliError::Usage(format!(
            "need finite start <= stop, got {} and {}",
            args.start, args.stop
        )));
    }
    if args.points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    let mut fixed: BTreeMap<&str, f64> = defaults.iter().copied().collect();
    for assignment in &args.fixed {
        let (key, value) = parse_assignment(assignment)?;
        let key =
            known(&key).ok_or_else(|| CliError::Usage(format!("unknown parameter {key:?}")))?;
        if key == swept {
            return Err(CliError::Usage(format!("{key} is both swept and fixed")));
        }
        fixed.insert(key, value);
    }

    let grid: Vec<f64> = match args.points {
        1 => vec![args.start],
        m => (0..m)
            .map(|k| args.start + (args.stop - args.start) * k as f64 / (m - 1) as f64)
            .collect(),
    };
    let quantity = args.of;
    let results: Vec<_> = grid
        .par_iter()
        .map(|&x| {
            let mut p = fixed.clone();
            p.insert(swept, x);
            let value = quantity.evaluate(&p);
            (p, value)
        })
        .collect();

    let mut columns = vec!["index"];
    columns.extend(defaults.iter().map(|(k, _)| *k));
    columns.extend(quantity.outputs());
    columns.push("error");
    let mut table = Table::new(columns);
    for (index, (p, value)) in results.into_iter().enumerate() {
        let mut row: Vec<Cell> = vec![index.into()];
        row.extend(defaults.iter().map(|(k, _)| Cell::Num(p[k])));
        match value {
            Ok(v) => {
                row.extend(v.into_iter().map(Cell::Num));
                row.push(Cell::Missing);
            }
            Err(e) => {
                row.extend(quantity.outputs().iter().map(|_| Cell::Missing));
                row.push(Cell::Text(e.to_string()));
            }
        }
        table.push(row);
    }
    Ok(table)
}
