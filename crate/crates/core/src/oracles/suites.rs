//! Randomized equivalence suites between the fast code paths and the oracles.
//!
//! Each suite draws its cases from a seeded stream and reports every mismatch
//! instead of stopping at the first one.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::brute::{bfs_clusters, enumerate_membranes, enumerate_paths, min_pairing_weight};
use super::dense::DensityMatrix;
use crate::circuits::toric::ToricLayout;
use crate::circuits::{circuit_to_bonds, run_trial, ModelConfig, ModelKind, Rates};
use crate::clifford::{all_one_qubit, all_two_qubit, sample};
use crate::decoders::membrane::{membrane_backbone, membrane_sum_sign, ToricLogical};
use crate::decoders::mwpm::match_defects;
use crate::decoders::path_sum::{path_sum_exact, Backbone, CheckLayer};
use crate::pauli::{Pauli, PauliString, Sign};
use crate::percolation::{cluster_stats, Axis, Geometry, SpeciesFilter};
use crate::stabilizer::StabilizerState;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Largest trace-distance bound accepted between tableau and density matrix.
pub const TRACE_TOLERANCE: f64 = 1e-10;

pub fn random_pauli<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PauliString {
    loop {
        let mut p = PauliString::identity(n);
        for j in 0..n {
            p.set(j, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..4)]);
        }
        if !p.is_identity_up_to_phase() {
            return if rng.gen() { p.negated() } else { p };
        }
    }
}

/// Random gates, measurements and dephasing on `n <= 10` qubits, comparing the
/// tableau with the density matrix after every step and the entropies at the end.
pub fn stabilizer_vs_dense(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let n = 1 + case % 10;
        let steps = if n > 8 { 12 } else { 30 };
        let mut st = StabilizerState::zero_state(n);
        let mut rho = DensityMatrix::from_generators(n, st.generators());
        let mut fail = |msg: String| failures.push(format!("case {case} (n = {n}): {msg}"));
        for step in 0..steps {
            match rng.gen_range(0..5) {
                0 => {
                    let g = sample(all_one_qubit(), &mut rng);
                    let s = rng.gen_range(0..n);
                    st.apply_gate(&g, &[s]).expect("valid site");
                    rho.apply_gate(&g, &[s]);
                }
                1 | 2 if n >= 2 => {
                    let g = sample(all_two_qubit(), &mut rng);
                    let a = rng.gen_range(0..n);
                    let b = (a + rng.gen_range(1..n)) % n;
                    st.apply_gate(&g, &[a, b]).expect("valid sites");
                    rho.apply_gate(&g, &[a, b]);
                }
                3 => {
                    let p = random_pauli(n, &mut rng);
                    let before = rho.expectation(&p);
                    let m = st.measure(&p, &mut rng).expect("valid operator");
                    let prob = rho.project(&p, m.outcome);
                    let expected = (1.0 + m.outcome.to_i8() as f64 * before) / 2.0;
                    let born = if m.random { 0.5 } else { 1.0 };
                    if (prob - expected).abs() > 1e-10 || (prob - born).abs() > 1e-10 {
                        fail(format!("step {step}: outcome probability {prob}, tableau says {born}"));
                    }
                }
                _ => {
                    let p = random_pauli(n, &mut rng);
                    st.dephase(&p).expect("valid operator");
                    rho.dephase(&p);
                }
            }
            let d = DensityMatrix::from_generators(n, st.generators()).trace_distance_bound(&rho);
            if d >= TRACE_TOLERANCE {
                fail(format!("step {step}: trace distance bound {d:e}"));
                break;
            }
        }
        for _ in 0..4 {
            let region: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            let (a, b) = (st.entropy(&region) as f64, rho.entropy(&region));
            if (a - b).abs() > 1e-8 {
                fail(format!("entropy of {region:?}: {a} vs {b}"));
            }
        }
    }
    SuiteReport { name: "stabilizer vs dense matrix", cases, failures }
}

fn random_layers<R: Rng + ?Sized>(rng: &mut R, g: Geometry, count: usize, p_meas: f64) -> Vec<CheckLayer> {
    (0..count)
        .map(|_| CheckLayer {
            axis: if g.dim() == 2 && rng.gen_bool(0.5) { Axis::Y } else { Axis::X },
            outcomes: (0..g.num_sites()).map(|_| rng.gen_bool(p_meas).then(|| Sign::from_parity(rng.gen_bool(0.3)))).collect(),
        })
        .collect()
}

/// Path sums on backbones up to 5 x 5 against explicit path lists.
pub fn path_sum_vs_enumeration(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let geoms = [
        Geometry::Ring { l: 3 },
        Geometry::Ring { l: 5 },
        Geometry::Torus { lx: 3, ly: 3 },
        Geometry::Torus { lx: 4, ly: 5 },
        Geometry::Torus { lx: 5, ly: 5 },
    ];
    let mut failures = Vec::new();
    for case in 0..cases {
        let g = geoms[case % geoms.len()];
        let t = 1 + case % 5;
        let b = Backbone::new(g, random_layers(&mut rng, g, t, [0.3, 0.6, 0.9, 1.0][case % 4]));
        if path_sum_exact(&b) != enumerate_paths(&b) {
            failures.push(format!("case {case}: {g:?} with {t} layers"));
        }
    }
    SuiteReport { name: "path sum vs path enumeration", cases, failures }
}

/// Matchings of up to 8 defects against all pairings.
pub fn blossom_vs_pairing(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let n = 2 * (1 + case % 4);
        let pts: Vec<[i64; 3]> = (0..n).map(|_| [0; 3].map(|_| rng.gen_range(0..6))).collect();
        let dist = |i: usize, j: usize| (0..3).map(|k| pts[i][k].abs_diff(pts[j][k])).sum::<u64>();
        let got = match_defects(n, dist).weight;
        let want = min_pairing_weight(n, &dist);
        if got != want {
            failures.push(format!("case {case}: matching weight {got}, optimum {want}"));
        }
    }
    SuiteReport { name: "blossom vs exhaustive pairing", cases, failures }
}

/// Membrane sums on a 3 x 3 torus with three record layers against all loop sequences.
pub fn membrane_vs_enumeration(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lay = ToricLayout::new(3, 3);
    let mut failures = Vec::new();
    for case in 0..cases {
        let p = [0.4, 0.7, 1.0][case % 3];
        let records: Vec<Vec<Option<Sign>>> = (0..3)
            .map(|_| (0..9).map(|_| rng.gen_bool(p).then(|| Sign::from_parity(rng.gen_bool(0.3)))).collect())
            .collect();
        for logical in [ToricLogical::Z1, ToricLogical::Z2] {
            let b = membrane_backbone(&lay, &records, logical);
            let want = enumerate_membranes(b.geometry(), b.layers());
            let want_sign = match want.sign() {
                num_bigint::Sign::Minus => Some(Sign::Minus),
                num_bigint::Sign::Plus => Some(Sign::Plus),
                num_bigint::Sign::NoSign => None,
            };
            let exact = path_sum_exact(&b);
            let ends: BigInt = (0..3)
                .map(|k| match logical {
                    ToricLogical::Z1 => exact[3 * k].clone(),
                    ToricLogical::Z2 => exact[k].clone(),
                })
                .product();
            if ends != want || membrane_sum_sign(&lay, &records, logical).sign != want_sign {
                failures.push(format!("case {case} {logical:?}: {ends} vs {want}"));
            }
        }
    }
    SuiteReport { name: "membrane sum vs membrane enumeration", cases, failures }
}

/// Union-find cluster labels and spanning flags against breadth-first search.
pub fn union_find_vs_bfs(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let g = if case % 2 == 0 { Geometry::Ring { l: 6 + case % 7 } } else { Geometry::Torus { lx: 3 + case % 3, ly: 4 } };
        let config = ModelConfig {
            kind: if g.dim() == 1 { ModelKind::Baseline1D } else { ModelKind::Repetition2D },
            geometry: g,
            steps: 4 + case % 9,
            rates: Rates { p_zz_e: 0.15, ..Rates::baseline(0.4 + 0.01 * (case % 30) as f64, 0.3) },
            faulty: false,
        };
        let out = run_trial(&config, &StabilizerState::plus_state(g.num_sites()), &mut rng).expect("valid model");
        let lat = circuit_to_bonds(&out.record).expect("measurement-only record");
        for filter in [SpeciesFilter::coherent(), SpeciesFilter::clusters()] {
            let uf = cluster_stats(&lat, filter).expect("primal filter");
            let (labels, info) = bfs_clusters(&lat, filter);
            let same_partition = labels.len() == uf.labels.len()
                && (0..labels.len()).all(|v| {
                    (v + 1..labels.len()).all(|w| (uf.labels[v] == uf.labels[w]) == (labels[v] == labels[w]))
                });
            let mut sizes: Vec<usize> = info.iter().map(|c| c.0).collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            let flags = uf.spans_time() == info.iter().any(|c| c.1 && c.2)
                && uf.spans_space() == info.iter().any(|c| c.3 || c.4);
            if !same_partition || uf.sizes() != sizes || !flags {
                failures.push(format!("case {case} {g:?} {filter:?}"));
            }
        }
    }
    SuiteReport { name: "union-find vs breadth-first search", cases, failures }
}

/// Every suite at its default size.
pub fn all_suites(seed: u64) -> Vec<SuiteReport> {
    vec![
        stabilizer_vs_dense(seed, 60),
        path_sum_vs_enumeration(seed, 200),
        blossom_vs_pairing(seed, 300),
        membrane_vs_enumeration(seed, 40),
        union_find_vs_bfs(seed, 100),
    ]
}
