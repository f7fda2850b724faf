use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use emergence::geometry::{emergent_geometry, DistanceParams, GeometryConfig};
use emergence::io::{
    distance_csv, embedding_csv, embedding_json, expansion_csv, matrix_to_json, mereology_json, mi_graph_csv,
    parse_hamiltonian, parse_state, profile_csv, state_to_json,
};
use emergence::locality::{k_locality_test, local_factorization_search, locality_profile, operator_expansion, Multipartition};
use emergence::mereology::{factorization_objective_with, mereology_search_with, BipartiteSplit, ObjectiveConfig};
use emergence::models::{ModelKind, ModelSpec};
use emergence::optim::{SearchOptions, StepSchedule};
use emergence::quantum::{diagonalize, schrodinger_evolve_dense_with, Factorization, OdeOptions};
use emergence::{Hamiltonian, State};
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;
use crate::output::{write_atomic, Status};

pub struct Outcome {
    pub config: Value,
    pub status: Status,
    pub result: Value,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(path.display().to_string(), e))
}

fn load_hamiltonian(path: &Path) -> Result<Hamiltonian, CliError> {
    Ok(parse_hamiltonian(&read(path)?)?)
}

fn load_state(path: &Path) -> Result<State, CliError> {
    Ok(parse_state(&read(path)?)?)
}

fn write_opt(path: &Option<std::path::PathBuf>, contents: impl FnOnce() -> Result<String, CliError>) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, &contents()?),
        None => Ok(()),
    }
}

fn config_of<S: serde::Serialize>(args: &S) -> Value {
    serde_json::to_value(args).expect("arguments serialize to JSON")
}

fn positive(name: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--{name} must be a positive finite number, got {x}")))
    }
}

fn at_least_one(name: &str, x: usize) -> Result<(), CliError> {
    if x == 0 {
        Err(CliError::Usage(format!("--{name} must be at least 1")))
    } else {
        Ok(())
    }
}

pub fn model(args: &ModelArgs, seed: u64) -> Result<Outcome, CliError> {
    let spec = match &args.spec {
        Some(path) => serde_json::from_str::<ModelSpec>(&read(path)?).map_err(emergence::Error::from)?,
        None => {
            let kind: ModelKind = args.kind.expect("clap enforces --kind without --spec").into();
            let mut parameters = BTreeMap::new();
            let mut put = |name: &str, v: Option<f64>| {
                if let Some(v) = v {
                    parameters.insert(name.to_string(), v);
                }
            };
            put("n", args.n.map(|n| n as f64));
            put("J", args.coupling);
            put("g", args.field);
            put("dim", args.dim.map(|d| d as f64));
            put("mass", args.mass);
            put("omega", args.omega);
            if args.periodic {
                parameters.insert("periodic".into(), 1.0);
            }
            ModelSpec { kind, parameters, seed }
        }
    };
    let built = spec.build::<f64>()?;
    if args.frame_out.is_some() && built.frame.is_none() {
        return Err(CliError::Usage("--frame-out applies to scrambled models only".into()));
    }
    write_atomic(&args.output, &matrix_to_json(built.hamiltonian.matrix()))?;
    write_opt(&args.frame_out, || Ok(matrix_to_json(built.frame.as_ref().unwrap())))?;

    let mut config = config_of(args);
    config["model"] = serde_json::to_value(&spec).map_err(emergence::Error::from)?;
    Ok(Outcome {
        config,
        status: Status::Ok,
        result: json!({
            "dim": built.hamiltonian.dim(),
            "frobenius_norm": built.hamiltonian.frobenius_norm(),
            "trace": built.hamiltonian.trace(),
        }),
    })
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Outcome, CliError> {
    positive("tol", args.tol)?;
    let h = load_hamiltonian(&args.hamiltonian)?;
    let eig = diagonalize(&h);
    let e = eig.spectrum.energies();
    let scale = e.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let gaps: Vec<f64> = e.windows(2).map(|w| w[1] - w[0]).collect();
    let degenerate = gaps.iter().any(|&g| g < args.tol * scale);
    let ground_degenerate = gaps.first().is_some_and(|&g| g < args.tol * scale);

    if args.vectors.is_some() && degenerate {
        return Err(emergence::Error::DegenerateSpectrum.into());
    }
    if args.ground_state.is_some() && ground_degenerate {
        return Err(emergence::Error::DegenerateSpectrum.into());
    }
    write_opt(&args.vectors, || Ok(matrix_to_json(&eig.frame)))?;
    write_opt(&args.ground_state, || Ok(state_to_json(&eig.eigenstate(0))))?;

    Ok(Outcome {
        config: config_of(args),
        status: Status::Ok,
        result: json!({
            "dim": e.len(),
            "energies": e,
            "degenerate": degenerate,
            "ground_degenerate": ground_degenerate,
            "min_gap": gaps.iter().copied().reduce(f64::min),
        }),
    })
}

pub fn evolve(args: &EvolveArgs) -> Result<Outcome, CliError> {
    if !args.t.is_finite() {
        return Err(CliError::Usage("--t must be finite".into()));
    }
    positive("tol", args.tol)?;
    let h = load_hamiltonian(&args.hamiltonian)?;
    let psi = load_state(&args.state)?;
    if h.dim() != psi.dim() {
        return Err(emergence::Error::DimensionMismatch { expected: h.dim(), found: psi.dim() }.into());
    }
    let out = if args.t == 0.0 {
        psi.clone()
    } else {
        match args.method {
            Method::Spectral => diagonalize(&h).evolve(&psi, args.t)?,
            Method::Ode => {
                let opts = OdeOptions { rtol: args.tol, atol: args.tol, ..OdeOptions::default() };
                schrodinger_evolve_dense_with(&h, &psi, args.t, opts)?
            }
        }
    };
    write_atomic(&args.output, &state_to_json(&out))?;
    Ok(Outcome {
        config: config_of(args),
        status: Status::Ok,
        result: json!({
            "dim": out.dim(),
            "norm": out.norm(),
            "energy": h.expectation(&out)?,
            "overlap_with_initial": out.overlap(&psi).norm(),
        }),
    })
}

pub fn mereology(args: &MereologyArgs, seed: u64) -> Result<Outcome, CliError> {
    let h = load_hamiltonian(&args.hamiltonian)?;
    if args.ds < 2 || h.dim() % args.ds != 0 || h.dim() / args.ds < 2 {
        return Err(CliError::Usage(format!(
            "--ds {} must divide the dimension {} into two factors of at least 2",
            args.ds,
            h.dim()
        )));
    }
    at_least_one("pointer-budget", args.pointer_budget)?;
    for (name, w) in [("entanglement-weight", args.entanglement_weight), ("delocalization-weight", args.delocalization_weight)] {
        if !(w.is_finite() && w >= 0.0) {
            return Err(CliError::Usage(format!("--{name} must be non-negative")));
        }
    }
    let d_e = h.dim() / args.ds;
    let objective = ObjectiveConfig {
        entanglement_weight: args.entanglement_weight,
        delocalization_weight: args.delocalization_weight,
        pointer_budget: args.pointer_budget,
        pointer_seed: seed,
    };
    let report = if args.no_search {
        factorization_objective_with(&h, &BipartiteSplit::identity(args.ds, d_e)?, &objective)?.1
    } else {
        at_least_one("restarts", args.restarts)?;
        at_least_one("budget", args.budget)?;
        let options = SearchOptions::new(args.restarts, args.budget, seed);
        mereology_search_with(&h, args.ds, d_e, &options, &objective, &StepSchedule::default())?
    };

    write_opt(&args.frame_out, || Ok(matrix_to_json(report.split.frame())))?;
    write_opt(&args.trace_out, || {
        let mut s = String::from("iteration,objective\n");
        for (i, v) in &report.search_trace {
            s.push_str(&format!("{i},{v:e}\n"));
        }
        Ok(s)
    })?;

    let met = args.tol.is_none_or(|tol| report.objective <= tol);
    let mut config = config_of(args);
    config["d_e"] = json!(d_e);
    Ok(Outcome {
        config,
        status: if met { Status::Ok } else { Status::BelowThreshold },
        result: mereology_json(&report),
    })
}

pub fn locality(args: &LocalityArgs, seed: u64) -> Result<Outcome, CliError> {
    let h = load_hamiltonian(&args.hamiltonian)?;
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(CliError::Usage("--tol must be non-negative".into()));
    }
    let natural = Multipartition::identity(args.dims.clone())?;
    natural.check_dim(h.dim())?;
    let (natural_local, natural_fraction) = k_locality_test(&h, &natural, args.k, Some(args.tol))?;

    let (partition, fraction, trace) = if args.search {
        at_least_one("restarts", args.restarts)?;
        at_least_one("budget", args.budget)?;
        let found = local_factorization_search(&h, &args.dims, args.k, args.restarts, args.budget, seed)?;
        (found.partition, found.nonlocal_fraction, Some(found.trace))
    } else {
        (natural, natural_fraction, None)
    };
    let expansion = operator_expansion(&h, &partition)?;
    let profile = locality_profile(&expansion);

    write_opt(&args.profile_out, || Ok(profile_csv(&profile)?))?;
    write_opt(&args.expansion_out, || Ok(expansion_csv(&expansion, args.coefficient_floor)?))?;
    write_opt(&args.frame_out, || Ok(matrix_to_json(partition.frame())))?;

    let met = !args.search || fraction <= args.tol;
    Ok(Outcome {
        config: config_of(args),
        status: if met { Status::Ok } else { Status::BelowThreshold },
        result: json!({
            "natural_frame": { "k_local": natural_local, "nonlocal_fraction": natural_fraction },
            "nonlocal_fraction": fraction,
            "k_local": fraction <= args.tol,
            "weight_by_order": profile.weight_by_order,
            "total_weight": profile.total(),
            "search_trace": trace,
        }),
    })
}

pub fn geometry(args: &GeometryArgs) -> Result<Outcome, CliError> {
    positive("l0", args.l0)?;
    positive("i-floor", args.i_floor)?;
    positive("tau", args.tau)?;
    at_least_one("m-max", args.m_max)?;
    let d_cap = args.d_cap.unwrap_or(50.0 * args.l0);
    positive("d-cap", d_cap)?;

    let psi = match (&args.state, &args.hamiltonian) {
        (Some(path), _) => load_state(path)?,
        (None, Some(path)) => diagonalize(&load_hamiltonian(path)?).ground_state()?,
        (None, None) => unreachable!("clap requires --state or --hamiltonian"),
    };
    let regions = Factorization::identity(args.dims.clone())?;
    regions.check_dim(psi.dim())?;
    let config = GeometryConfig {
        distance: DistanceParams { l0: args.l0, i_floor: args.i_floor, d_cap: Some(d_cap) },
        m_max: args.m_max,
        tau: args.tau,
    };
    let geo = emergent_geometry(&psi, &regions, &config)?;

    write_opt(&args.mi_out, || Ok(mi_graph_csv(&geo.mi)?))?;
    write_opt(&args.distances_out, || Ok(distance_csv(&geo.distances)?))?;
    write_opt(&args.embedding_out, || Ok(embedding_csv(&geo.embedding)?))?;

    let mut resolved = config_of(args);
    resolved["d_cap"] = json!(d_cap);
    Ok(Outcome {
        config: resolved,
        status: Status::Ok,
        result: json!({
            "n_regions": geo.mi.n_regions(),
            "max_mutual_information": geo.mi.max_off_diagonal(),
            "embedding": embedding_json(&geo.embedding),
        }),
    })
}
