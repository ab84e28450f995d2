//! One trial of one grid point, reduced to a value per requested output.

use z2lab::circuits::{run_trial, sample_bond_lattice, sample_quasi_ghz, ModelConfig, ModelError, ModelKind, Rates};
use z2lab::classical::{sample_history, sample_toric_history, ClassicalParams, ToricParams};
use z2lab::decoders::located::{decode_located, decode_located_classical};
use z2lab::decoders::membrane::decode_membrane;
use z2lab::decoders::mwpm::{decode_mwpm_repetition, decode_mwpm_toric, decode_mwpm_trial};
use z2lab::decoders::path_sum::{decode_path_sum, decode_path_sum_trial};
use z2lab::decoders::DecodeVerdict;
use z2lab::observables::{bipartite_mutual_information, chi_pm, chi_sg, mutual_information, OrderProbe, RegionSpec, Subsystem};
use z2lab::percolation::{cluster_stats, Geometry, LatticeError, SpeciesFilter};
use z2lab::rng::TrialRng;
use z2lab::stabilizer::StabilizerState;

use crate::config::{Command, ExperimentConfig, GridPoint, ModelName};

#[derive(Debug, thiserror::Error)]
pub enum KernelError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn geometry(dim: usize, l: usize) -> Geometry {
    if dim == 1 {
        Geometry::Ring { l }
    } else {
        Geometry::Torus { lx: l, ly: l }
    }
}

fn observable<P: OrderProbe + ?Sized>(name: &str, state: &P) -> f64 {
    let l = state.num_sites();
    let regions = RegionSpec::antipodal_eighths(l);
    match name {
        "chi_sg" => chi_sg(state, &regions),
        "chi_pm" => chi_pm(state, &regions),
        "mi_ab" => mutual_information(state, &regions.a, &regions.b) as f64,
        "mi_half" => bipartite_mutual_information(state, l / 2) as f64,
        "s_half" => state.entropy_bits(&(0..l / 2).collect::<Vec<_>>()) as f64,
        _ => unreachable!("validated observable"),
    }
}

fn success(v: DecodeVerdict) -> f64 {
    v.success as u8 as f64
}

/// Classical rate of an `X` dephasing channel applied with probability `p_x_e`
/// is `p_x_e / 2`, so Clifford trajectories use `p_x_e = 2 p_err`.
pub fn clifford_repetition_config(dim: usize, l: usize, steps: usize, p_zz: f64, p_err: f64) -> ModelConfig {
    ModelConfig {
        kind: if dim == 1 { ModelKind::Baseline1D } else { ModelKind::Repetition2D },
        geometry: geometry(dim, l),
        steps,
        rates: Rates::repetition(p_zz, (2.0 * p_err).min(1.0)),
        faulty: false,
    }
}

/// Values of every configured output for one trial.
pub fn run_point(cfg: &ExperimentConfig, pt: &GridPoint, rng: &mut TrialRng) -> Result<Vec<f64>, KernelError> {
    let g = geometry(cfg.dim, pt.l);
    if cfg.command == Command::Percolation {
        let rates = match cfg.model {
            ModelName::Repetition => Rates::repetition(pt.rate("p_zz"), (2.0 * pt.rate("p_err")).min(1.0)),
            _ => Rates::baseline(pt.rate("p_zz"), pt.rate("q")),
        };
        return percolation(cfg, pt, &rates, rng);
    }
    match cfg.model {
        ModelName::Classical => {
            let mut params = ClassicalParams::new(g, pt.steps, pt.rate("p_zz"), pt.rate("p_err"));
            if cfg.faulty {
                params = params.faulty();
            }
            let h = sample_history(&params, rng);
            Ok(cfg
                .outputs
                .iter()
                .map(|d| match d.as_str() {
                    "path-sum" => success(decode_path_sum(&h)),
                    "mwpm" => success(decode_mwpm_repetition(&h)),
                    _ => success(decode_located_classical(&h)),
                })
                .collect())
        }
        ModelName::Repetition => {
            let mc = clifford_repetition_config(cfg.dim, pt.l, pt.steps, pt.rate("p_zz"), pt.rate("p_err"));
            let initial = StabilizerState::zero_state(mc.num_qubits());
            let trial = run_trial(&mc, &initial, rng)?;
            cfg.outputs
                .iter()
                .map(|d| {
                    let mut t = trial.clone();
                    let v = match d.as_str() {
                        "path-sum" => decode_path_sum_trial(&mut t, &initial, rng)?,
                        "mwpm" => decode_mwpm_trial(&mut t, &initial, rng)?,
                        _ => decode_located(&mut t, &initial, rng)?,
                    };
                    Ok(success(v))
                })
                .collect()
        }
        ModelName::Toric => {
            let params = ToricParams {
                lx: pt.l,
                ly: pt.l,
                steps: pt.steps,
                p_plaq: pt.rate("p_plaq"),
                p_err: pt.rate("p_err"),
                p_faulty: if cfg.faulty { pt.rate("p_err") } else { 0.0 },
            };
            let h = sample_toric_history(&params, rng);
            Ok(cfg
                .outputs
                .iter()
                .map(|d| if d == "mwpm" { success(decode_mwpm_toric(&h)) } else { success(decode_membrane(&h)) })
                .collect())
        }
        ModelName::Baseline => {
            let q = sample_quasi_ghz(g, pt.steps, &Rates::baseline(pt.rate("p_zz"), pt.rate("q")), rng);
            Ok(cfg.outputs.iter().map(|o| observable(o, &q)).collect())
        }
        ModelName::Perturbed | ModelName::Ladder => {
            let (kind, rates) = if cfg.model == ModelName::Perturbed {
                (ModelKind::Perturbed1D, Rates::perturbed(pt.rate("p_zz"), pt.rate("q"), pt.rate("p_u")))
            } else {
                (ModelKind::Ladder, Rates::ladder(pt.rate("p_zz"), pt.rate("q"), pt.rate("p_bath")))
            };
            let mc = ModelConfig { kind, geometry: g, steps: pt.steps, rates, faulty: false };
            let initial = StabilizerState::plus_state(mc.num_qubits());
            let out = run_trial(&mc, &initial, rng)?;
            let view = Subsystem { state: &out.final_state, l: pt.l };
            Ok(cfg.outputs.iter().map(|o| observable(o, &view)).collect())
        }
    }
}

fn percolation(cfg: &ExperimentConfig, pt: &GridPoint, rates: &Rates, rng: &mut TrialRng) -> Result<Vec<f64>, KernelError> {
    let lat = sample_bond_lattice(geometry(cfg.dim, pt.l), pt.steps, rates, rng);
    let stats = cluster_stats(&lat, SpeciesFilter::coherent())?;
    let volume = (lat.num_sites() * lat.num_slices()) as f64;
    Ok(cfg
        .outputs
        .iter()
        .map(|o| match o.as_str() {
            "spans_time" => stats.spans_time() as u8 as f64,
            "spans_space" => stats.spans_space() as u8 as f64,
            _ => stats.largest() as f64 / volume,
        })
        .collect())
}
