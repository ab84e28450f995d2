//! One function per acceptance criterion.

use std::sync::OnceLock;
use std::time::Instant;

use z2lab::circuits::{
    circuit_to_bonds, encode_logical, final_readout, run_trial, sample_quasi_ghz, LayerKind, Logical, MeasurementRecord,
    ModelConfig, ModelKind, Op, Rates,
};
use z2lab::classical::{sample_history, sample_toric_history, ClassicalParams, ToricParams};
use z2lab::decoders::located::{decode_located, spanning_sign};
use z2lab::decoders::membrane::decode_membrane;
use z2lab::decoders::mwpm::{decode_mwpm_repetition, decode_mwpm_toric};
use z2lab::decoders::path_sum::{decode_path_sum, decode_path_sum_trial};
use z2lab::decoders::recovery::verify_recovery_conditions;
use z2lab::observables::{bipartite_mutual_information, chi_pm, chi_sg, log_chord, RegionSpec};
use z2lab::oracles::dense::DensityMatrix;
use z2lab::oracles::suites::all_suites;
use z2lab::pauli::{Pauli, PauliString};
use z2lab::percolation::Geometry;
use z2lab::rng::trial_rng;
use z2lab::scaling::{estimate_threshold, mean_crossing, CollapseParams, EnsembleCurves};
use z2lab::stabilizer::StabilizerState;
use z2lab_cli::kernels::clifford_repetition_config;

use crate::support::{curves, ensemble, grid, linear_fit, mean_err, table, within, Verdict};

const RESAMPLES: usize = 100;

fn ring(l: usize) -> Geometry {
    Geometry::Ring { l }
}

fn torus(l: usize) -> Geometry {
    Geometry::Torus { lx: l, ly: l }
}

fn success(b: bool) -> f64 {
    b as u8 as f64
}

fn baseline_curves(seed: u64, ps: &[f64], chi: fn(&z2lab::percolation::QuasiGhz, &RegionSpec) -> f64) -> EnsembleCurves {
    curves(seed, &[64, 128, 256], ps, 2000, |l, p, rng| {
        let q = sample_quasi_ghz(ring(l), 4 * l, &Rates::baseline(p, 0.5), rng);
        chi(&q, &RegionSpec::antipodal_eighths(l))
    })
}

fn percolation_fit(curves: &EnsembleCurves, p_c: f64, crossing_required: bool) -> Verdict {
    let init = CollapseParams { p_c, nu: 4.0 / 3.0, gamma: 1.0 / 3.0 };
    let fixed = estimate_threshold(curves, init, [true, false, false], RESAMPLES, 1);
    let free = estimate_threshold(curves, init, [true, true, false], RESAMPLES, 2);
    match (fixed, free) {
        (Ok(f), Ok(g)) => {
            let mut parts = vec![Verdict::new(
                within(f.p_c.value, p_c, 0.010),
                format!("collapse p_c = {:.4} +- {:.4} at gamma = 1/3, nu = 4/3", f.p_c.value, f.p_c.err),
            )];
            parts.push(Verdict::new(
                !crossing_required || within(f.crossing.value, p_c, 0.010),
                format!("crossing of chi L^-1/3 at {:.4} +- {:.4}", f.crossing.value, f.crossing.err),
            ));
            parts.push(Verdict::new(
                true,
                format!("free-nu fit p_c = {:.4}, nu = {:.2} +- {:.2}", g.p_c.value, g.nu.value, g.nu.err),
            ));
            parts.push(Verdict::new(true, table(curves)));
            Verdict::all(parts)
        }
        (Err(e), _) | (_, Err(e)) => Verdict::new(false, format!("fit failed: {e}; {}", table(curves))),
    }
}

/// Spin-glass boundary at q = 1/2.
pub fn c01() -> Verdict {
    percolation_fit(&baseline_curves(101, &grid(0.47, 0.01, 7), chi_sg), 0.5, true)
}

/// Paramagnet boundary at q = 1/2.
pub fn c02() -> Verdict {
    percolation_fit(&baseline_curves(102, &grid(0.30, 0.01, 7), chi_pm), 1.0 / 3.0, false)
}

fn path_sum_1d(l: usize, steps: usize, p_err: f64, trials: u64, seed: u64, grid: u64) -> (f64, f64) {
    let acc = ensemble(seed, grid, trials, |rng| {
        success(decode_path_sum(&sample_history(&ClassicalParams::new(ring(l), steps, 0.6, p_err), rng)).success)
    });
    mean_err(&acc)
}

/// Decreasing within `k` standard errors between neighbours, and overall by more than `k`.
fn decreasing(series: &[(f64, f64)], k: f64) -> bool {
    let step_ok = series.windows(2).all(|w| w[1].0 - w[0].0 <= k * w[0].1.hypot(w[1].1));
    let (first, last) = (series[0], series[series.len() - 1]);
    step_ok && first.0 - last.0 > k * first.1.hypot(last.1)
}

fn fmt_series(sizes: &[usize], s: &[(f64, f64)]) -> String {
    sizes.iter().zip(s).map(|(l, (m, e))| format!("L={l}: {m:.4}({e:.4})")).collect::<Vec<_>>().join(", ")
}

/// 1+1d path-sum decoding at p_zz = 0.6.
pub fn c03() -> Verdict {
    let sizes = [32usize, 64, 128, 256, 512];
    let mut parts = Vec::new();
    let clean: Vec<(f64, f64)> = sizes.iter().enumerate().map(|(i, &l)| path_sum_1d(l, l, 0.0, 1000, 301, i as u64)).collect();
    parts.push(Verdict::new(clean.iter().all(|s| s.0 == 1.0), format!("p_err = 0, T = L: {}", fmt_series(&sizes, &clean))));
    for (k, p) in [0.02, 0.05].into_iter().enumerate() {
        let s: Vec<(f64, f64)> =
            sizes.iter().enumerate().map(|(i, &l)| path_sum_1d(l, l, p, 10_000, 302 + k as u64, i as u64)).collect();
        let above_half = s.iter().all(|(m, e)| *m > 0.5 - 2.0 * e);
        parts.push(Verdict::new(
            decreasing(&s, 2.0) && above_half,
            format!("p_err = {p}, T = L, decreasing towards 1/2: {}", fmt_series(&sizes, &s)),
        ));
    }
    // the rates of the T = L part are gated; p_err = 0.1 is reported only
    for (p, seed, gated) in [(0.02, 312, true), (0.05, 310, true), (0.1, 311, false)] {
        let s: Vec<(f64, f64)> = sizes
            .iter()
            .enumerate()
            .map(|(i, &l)| path_sum_1d(l, (4.0 * (l as f64).ln()).round() as usize, p, 10_000, seed, i as u64))
            .collect();
        let (a, b) = (s[s.len() - 2], s[s.len() - 1]);
        let flat = (a.0 - b.0).abs() <= 2.0 * a.1.hypot(b.1);
        let label = if gated { "saturated" } else { "reported" };
        parts.push(Verdict::new(
            flat || !gated,
            format!("p_err = {p}, T = 4 ln L, {label} (two largest L within 2 sigma: {flat}): {}", fmt_series(&sizes, &s)),
        ));
    }
    Verdict::all(parts)
}

fn path_sum_2d_curves(seed: u64, ps: &[f64], faulty: bool, trials: u64) -> EnsembleCurves {
    curves(seed, &[8, 12, 16, 24, 32], ps, trials, |l, p, rng| {
        let mut params = ClassicalParams::new(torus(l), 4 * l, 0.6, p);
        if faulty {
            params = params.faulty();
        }
        success(decode_path_sum(&sample_history(&params, rng)).success)
    })
}

fn threshold_fit(curves: &EnsembleCurves, p_c: f64, seed: u64) -> Result<(f64, f64, f64, f64), String> {
    let init = CollapseParams { p_c, nu: 2.0, gamma: 0.0 };
    let est = estimate_threshold(curves, init, [true, true, false], RESAMPLES, seed).map_err(|e| e.to_string())?;
    Ok((est.crossing.value, est.crossing.err, est.nu.value, est.nu.err))
}

/// Threshold and exponent of the 2+1d decoder; shared with the faulty criterion.
fn c04_data() -> &'static (EnsembleCurves, Result<(f64, f64, f64, f64), String>) {
    static DATA: OnceLock<(EnsembleCurves, Result<(f64, f64, f64, f64), String>)> = OnceLock::new();
    DATA.get_or_init(|| {
        let c = path_sum_2d_curves(401, &grid(0.19, 0.01, 7), false, 2000);
        let fit = threshold_fit(&c, 0.21, 3);
        (c, fit)
    })
}

/// 2+1d path-sum threshold with T = L check periods.
pub fn c04() -> Verdict {
    let (c, fit) = c04_data();
    match *fit {
        Ok((x, xe, nu, nue)) => Verdict::all(vec![
            Verdict::new(within(x, 0.205, 0.015), format!("crossing {x:.4} +- {xe:.4}")),
            Verdict::new((1.5..=2.5).contains(&nu), format!("collapse nu = {nu:.2} +- {nue:.2}")),
            Verdict::new(true, table(c)),
        ]),
        Err(ref e) => Verdict::new(false, format!("fit failed: {e}; {}", table(c))),
    }
}

/// Faulty check outcomes lower the threshold but keep the exponent.
pub fn c05() -> Verdict {
    let c = path_sum_2d_curves(501, &grid(0.10, 0.01, 7), true, 2000);
    let faulty = threshold_fit(&c, 0.13, 4);
    let (_, clean) = c04_data();
    match (faulty, clean.clone()) {
        (Ok((x, xe, nu, nue)), Ok((_, _, nu0, nue0))) => Verdict::all(vec![
            Verdict::new(x < 0.205 && x > 0.0, format!("faulty crossing {x:.4} +- {xe:.4}")),
            Verdict::new(
                (nu - nu0).abs() <= 2.0 * nue.hypot(nue0) || (1.5..=2.5).contains(&nu),
                format!("nu = {nu:.2} +- {nue:.2} vs perfect {nu0:.2} +- {nue0:.2}"),
            ),
            Verdict::new(true, table(&c)),
        ]),
        (Err(e), _) | (_, Err(e)) => Verdict::new(false, format!("fit failed: {e}; {}", table(&c))),
    }
}

fn clifford_path_sum(dim: usize, l: usize, steps: usize, p_err: f64, rng: &mut z2lab::rng::TrialRng) -> f64 {
    let mc = clifford_repetition_config(dim, l, steps, 0.6, p_err);
    let initial = StabilizerState::zero_state(mc.num_qubits());
    let mut trial = run_trial(&mc, &initial, rng).expect("valid model");
    success(decode_path_sum_trial(&mut trial, &initial, rng).expect("valid record").success)
}

/// Classical histories and Clifford trajectories give the same success curves.
pub fn c06() -> Verdict {
    let mut parts = Vec::new();
    let cases: [(usize, &[usize], usize, &[f64]); 2] =
        [(1, &[16, 32, 64, 128], 1, &[0.0, 0.05, 0.1, 0.15, 0.2]), (2, &[4, 6, 8], 4, &[0.1, 0.2])];
    for (dim, sizes, mult, ps) in cases {
        let geom = if dim == 1 { ring } else { torus };
        let trials = if dim == 1 { 1000 } else { 400 };
        let classical = curves(601 + dim as u64, sizes, ps, trials, |l, p, rng| {
            success(decode_path_sum(&sample_history(&ClassicalParams::new(geom(l), mult * l, 0.6, p), rng)).success)
        });
        let clifford = curves(611 + dim as u64, sizes, ps, trials, |l, p, rng| clifford_path_sum(dim, l, mult * l, p, rng));
        let mut worst: f64 = 0.0;
        for (a, b) in classical.points().iter().zip(clifford.points()) {
            let sigma = a.stderr.hypot(b.stderr);
            let z = if sigma > 0.0 { (a.mean - b.mean).abs() / sigma } else if a.mean == b.mean { 0.0 } else { f64::INFINITY };
            worst = worst.max(z);
        }
        parts.push(Verdict::new(
            worst <= 3.0,
            format!("{dim}d largest deviation {worst:.2} sigma; classical {} ; clifford {}", table(&classical), table(&clifford)),
        ));
    }
    let sizes = [16usize, 32, 64, 128];
    let above: Vec<(f64, f64)> = sizes
        .iter()
        .enumerate()
        .map(|(i, &l)| mean_err(&ensemble(621, i as u64, 300, |rng| clifford_path_sum(1, l, l, 0.4, rng))))
        .collect();
    let last = above[above.len() - 1];
    parts.push(Verdict::new(
        decreasing(&above, 2.0) && last.0 <= 0.02,
        format!("clifford p_err = 0.4 (above percolation) tends to 0: {}", fmt_series(&sizes, &above)),
    ));
    Verdict::all(parts)
}

fn crossing(c: &EnsembleCurves) -> Option<f64> {
    mean_crossing(c, 0.0)
}

/// Matching thresholds of the repetition and toric codes.
pub fn c07() -> Verdict {
    let mut parts = Vec::new();
    let rep = curves(701, &[8, 16, 32, 64], &grid(0.10, 0.01, 7), 1500, |l, p, rng| {
        success(decode_mwpm_repetition(&sample_history(&ClassicalParams::new(ring(l), l, 1.0 - p, p), rng)).success)
    });
    let x = crossing(&rep);
    parts.push(Verdict::new(
        x.is_some_and(|x| within(x, 0.13, 0.02)),
        format!("1+1d p_zz = 1 - p_err crossing {x:.4?}; {}", table(&rep)),
    ));
    let faulty = curves(702, &[8, 16, 32, 64], &grid(0.07, 0.01, 7), 1500, |l, p, rng| {
        let params = ClassicalParams::new(ring(l), l, 1.0, p).faulty();
        success(decode_mwpm_repetition(&sample_history(&params, rng)).success)
    });
    let x = crossing(&faulty);
    parts.push(Verdict::new(x.is_some_and(|x| x >= 0.09), format!("faulty p_zz = 1 crossing {x:.4?}; {}", table(&faulty))));
    let toric_point = |l: usize, p: f64, rng: &mut z2lab::rng::TrialRng| {
        let params = ToricParams { lx: l, ly: l, steps: l, p_plaq: 1.0 - p, p_err: p, p_faulty: 0.0 };
        success(decode_mwpm_toric(&sample_toric_history(&params, rng)).success)
    };
    let toric = curves(703, &[8, 12, 16, 24], &grid(0.025, 0.005, 7), 400, toric_point);
    let x = crossing(&toric);
    parts.push(Verdict::new(
        x.is_some_and(|x| (0.02..=0.06).contains(&x)),
        format!("toric crossing {x:.4?}; {}", table(&toric)),
    ));
    let plateau = mean_err(&ensemble(704, 0, 2000, |rng| toric_point(16, 0.15, rng)));
    parts.push(Verdict::new(
        within(plateau.0, 0.25, 0.02),
        format!("toric plateau at p_err = 0.15, L = 16: {:.4} +- {:.4}", plateau.0, plateau.1),
    ));
    Verdict::all(parts)
}

fn dense_replay(record: &MeasurementRecord, rho: &mut DensityMatrix) -> Vec<f64> {
    let n = record.num_qubits;
    let check = |kind: LayerKind, bond: usize| {
        let LayerKind::Checks(axis) = kind else { panic!("check outside a check layer") };
        let (a, b) = record.geometry.bond_sites(axis, bond);
        PauliString::zz(n, a, b)
    };
    let mut probs = Vec::new();
    for layer in &record.layers {
        for op in &layer.ops {
            match *op {
                Op::MeasureZZ { bond, outcome, .. } => probs.push(rho.project(&check(layer.kind, bond), outcome)),
                Op::DephaseZZ { bond } => rho.dephase(&check(layer.kind, bond)),
                Op::MeasureX { site, outcome } => probs.push(rho.project(&PauliString::single(n, site, Pauli::X), outcome)),
                Op::DephaseX { site } => rho.dephase(&PauliString::single(n, site, Pauli::X)),
                Op::MeasureZ { site, outcome } => probs.push(rho.project(&PauliString::single(n, site, Pauli::Z), outcome)),
                Op::Gate { sites, gate } => rho.apply_gate(&gate, &sites[..gate.arity()]),
                Op::FlipX { site } => rho.apply_pauli(&PauliString::single(n, site, Pauli::X)),
                Op::MeasureStab { .. } => panic!("toric op in a repetition record"),
            }
        }
    }
    probs
}

/// Located decoding is exact whenever a spanning path exists.
pub fn c08() -> Verdict {
    let mut parts = Vec::new();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for (l, target) in [(4usize, 500usize), (6, 500), (8, 100)] {
        let g = ring(l);
        let cfg = ModelConfig { kind: ModelKind::Baseline1D, geometry: g, steps: l, rates: Rates::baseline(0.7, 0.5), faulty: false };
        let init = encode_logical(Logical::I, ModelKind::Baseline1D, g).expect("code model");
        let branches: Vec<DensityMatrix> = Logical::ALL
            .iter()
            .map(|&b| DensityMatrix::from_generators(l, encode_logical(b, ModelKind::Baseline1D, g).expect("code model").generators()))
            .collect();
        let (mut done, mut k) = (0, 0u64);
        while done < target {
            let mut rng = trial_rng(801, l as u64, k);
            k += 1;
            let mut out = run_trial(&cfg, &init, &mut rng).expect("valid model");
            final_readout(&mut out, &mut rng).expect("valid state");
            let lattice = circuit_to_bonds(&out.record).expect("repetition record");
            if spanning_sign(&lattice).is_none() {
                continue;
            }
            done += 1;
            let recovery = match verify_recovery_conditions(&out.record) {
                Ok(r) => r.recovery.expect("spanning path present"),
                Err(e) => {
                    failures.push(format!("L={l} trial {k}: {e}"));
                    continue;
                }
            };
            let mut born: Option<Vec<f64>> = None;
            for (b, rho0) in branches.iter().enumerate() {
                let mut rho = rho0.clone();
                let probs = dense_replay(&out.record, &mut rho);
                if born.as_ref().is_some_and(|p0| p0.iter().zip(&probs).any(|(x, y)| (x - y).abs() > 1e-12)) || probs.contains(&0.0) {
                    failures.push(format!("L={l} trial {k} branch {b}: outcome probabilities differ"));
                }
                born.get_or_insert(probs);
                rho.apply_pauli(&recovery);
                let d = rho.trace_distance_bound(rho0);
                if d >= 1e-10 {
                    failures.push(format!("L={l} trial {k} branch {b}: recovered state off by {d:e}"));
                }
            }
        }
        checked += done;
    }
    parts.push(Verdict::new(
        failures.is_empty() && checked >= 1000,
        format!("{checked} spanning trajectories at L in {{4, 6, 8}}, four branches each, {} mismatches {:?}", failures.len(), failures.iter().take(3).collect::<Vec<_>>()),
    ));
    let (mut spanning, mut ok) = (0u64, 0u64);
    for (i, l) in [16usize, 32, 64].into_iter().enumerate() {
        let g = ring(l);
        let cfg = ModelConfig { kind: ModelKind::Baseline1D, geometry: g, steps: l, rates: Rates::baseline(0.7, 0.5), faulty: false };
        for branch in Logical::ALL {
            let init = encode_logical(branch, ModelKind::Baseline1D, g).expect("code model");
            for k in 0..250 {
                let mut rng = trial_rng(802, (4 * i + branch as usize) as u64, k);
                let mut out = run_trial(&cfg, &init, &mut rng).expect("valid model");
                let v = decode_located(&mut out, &init, &mut rng).expect("valid record");
                if v.predicted[0].is_some() {
                    spanning += 1;
                    ok += v.success as u64;
                }
            }
        }
    }
    parts.push(Verdict::new(
        spanning > 0 && ok == spanning,
        format!("tableau recovery at L in {{16, 32, 64}}: {ok}/{spanning} spanning trials restored"),
    ));
    Verdict::all(parts)
}

/// Randomized equivalence suites against the oracles.
pub fn c09() -> Verdict {
    let reports = all_suites(901);
    Verdict::all(
        reports
            .iter()
            .map(|r| Verdict::new(r.passed(), format!("{}: {}/{} cases", r.name, r.cases - r.failures.len(), r.cases)))
            .collect(),
    )
}

/// Slope of `(1/4) I(A : complement)` in nats against the log chord distance.
fn mi_slope(p: f64, q: f64, seed: u64) -> (f64, String) {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut notes = Vec::new();
    for (i, l) in [128usize, 256, 512].into_iter().enumerate() {
        let cuts: Vec<usize> = [l / 32, l / 16, l / 8, l / 4, 3 * l / 8, l / 2].to_vec();
        let trials = 400;
        let sums: Vec<Vec<f64>> = (0..trials)
            .map(|k| {
                let mut rng = trial_rng(seed, i as u64, k);
                let s = sample_quasi_ghz(ring(l), 4 * l, &Rates::baseline(p, q), &mut rng);
                cuts.iter().map(|&x| bipartite_mutual_information(&s, x) as f64).collect()
            })
            .collect();
        let (slope, _) = {
            let (mut cx, mut cy) = (Vec::new(), Vec::new());
            for (j, &x) in cuts.iter().enumerate() {
                let mean = sums.iter().map(|v| v[j]).sum::<f64>() / trials as f64;
                let y = 0.25 * mean * std::f64::consts::LN_2;
                cx.push(log_chord(l, x));
                cy.push(y);
                xs.push(log_chord(l, x));
                ys.push(y);
            }
            linear_fit(&cx, &cy)
        };
        notes.push(format!("L={l}: {slope:.4}"));
    }
    let (slope, _) = linear_fit(&xs, &ys);
    (slope, notes.join(", "))
}

/// Critical entanglement coefficients.
pub fn c10() -> Verdict {
    let h = 3f64.sqrt() * std::f64::consts::LN_2 / (4.0 * std::f64::consts::PI);
    let mut parts = Vec::new();
    for (k, (name, p, q, target)) in [
        ("SG-PM (1/2, 0)", 0.5, 0.0, h),
        ("SG-Trivial (1/2, 1/2)", 0.5, 0.5, h / 2.0),
        ("PM-Trivial (1/3, 1/2)", 1.0 / 3.0, 0.5, h / 2.0),
    ]
    .into_iter()
    .enumerate()
    {
        let (slope, notes) = mi_slope(p, q, 1001 + k as u64);
        parts.push(Verdict::new(
            within(slope, target, 0.15 * target),
            format!("{name}: slope {slope:.4} vs {target:.4} ({notes})"),
        ));
    }
    Verdict::all(parts)
}

/// Membrane sums lose to growing systems even at small error rates.
pub fn c11() -> Verdict {
    let sizes = [6usize, 8, 12, 16];
    let s: Vec<(f64, f64)> = sizes
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            mean_err(&ensemble(1101, i as u64, 2000, |rng| {
                let params = ToricParams { lx: l, ly: l, steps: 2 * l, p_plaq: 0.99, p_err: 0.01, p_faulty: 0.0 };
                success(decode_membrane(&sample_toric_history(&params, rng)).success)
            }))
        })
        .collect();
    Verdict::new(decreasing(&s, 2.0), format!("p_err = 0.01: {}", fmt_series(&sizes, &s)))
}

/// Seconds per decode for histories of one geometry, best of three passes.
fn decode_time(g: Geometry, steps: usize, count: u64) -> f64 {
    let histories: Vec<_> = (0..count)
        .map(|k| sample_history(&ClassicalParams::new(g, steps, 0.6, 0.05), &mut trial_rng(1201, steps as u64, k)))
        .collect();
    (0..3)
        .map(|_| {
            let t0 = Instant::now();
            let ok: usize = histories.iter().map(|h| decode_path_sum(h).success as usize).sum();
            std::hint::black_box(ok);
            t0.elapsed().as_secs_f64() / count as f64
        })
        .fold(f64::INFINITY, f64::min)
}

/// Decode time against spacetime volume.
pub fn c12() -> Verdict {
    let mut parts = Vec::new();
    let cases: [(&str, Vec<(Geometry, usize, f64)>); 2] = [
        ("1+1d, T = L", [64usize, 128, 256].iter().map(|&l| (ring(l), l, (l * l) as f64)).collect()),
        ("2+1d, T = 4L", [10usize, 16, 25].iter().map(|&l| (torus(l), 4 * l, (l * l * 4 * l) as f64)).collect()),
    ];
    for (name, pts) in cases {
        let (mut lv, mut lt) = (Vec::new(), Vec::new());
        let mut notes = Vec::new();
        for (g, steps, vol) in pts {
            let t = decode_time(g, steps, 40);
            notes.push(format!("V={vol:.0}: {:.3} ms", t * 1e3));
            lv.push(vol.ln());
            lt.push(t.ln());
        }
        let range = (lv[lv.len() - 1] - lv[0]).exp();
        let (slope, _) = linear_fit(&lv, &lt);
        parts.push(Verdict::new(
            slope < 2.0 && range >= 15.0,
            format!("{name}: time ~ V^{slope:.2} over a {range:.1}x volume range ({})", notes.join(", ")),
        ));
    }
    Verdict::all(parts)
}
