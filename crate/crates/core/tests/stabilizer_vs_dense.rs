use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use z2lab::clifford::{all_one_qubit, all_two_qubit, sample};
use z2lab::oracles::dense::DensityMatrix;
use z2lab::pauli::{Pauli, PauliString, Sign};
use z2lab::stabilizer::StabilizerState;

fn random_pauli(n: usize, rng: &mut impl Rng) -> PauliString {
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

/// Runs a random trajectory on both simulators and compares after every step.
fn compare_trajectory(seed: u64, n: usize, steps: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = StabilizerState::zero_state(n);
    let mut rho = DensityMatrix::from_generators(n, st.generators());
    for step in 0..steps {
        match rng.gen_range(0..5) {
            0 => {
                let g = sample(all_one_qubit(), &mut rng);
                let s = rng.gen_range(0..n);
                st.apply_gate(&g, &[s]).unwrap();
                rho.apply_gate(&g, &[s]);
            }
            1 | 2 if n >= 2 => {
                let g = sample(all_two_qubit(), &mut rng);
                let a = rng.gen_range(0..n);
                let mut b = rng.gen_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                st.apply_gate(&g, &[a, b]).unwrap();
                rho.apply_gate(&g, &[a, b]);
            }
            3 => {
                let p = random_pauli(n, &mut rng);
                let before = rho.expectation(&p);
                let m = st.measure(&p, &mut rng).unwrap();
                let prob = rho.project(&p, m.outcome);
                let expected = (1.0 + m.outcome.to_i8() as f64 * before) / 2.0;
                assert!((prob - expected).abs() < 1e-10);
                if m.random {
                    assert!((prob - 0.5).abs() < 1e-10, "step {step}: random outcome with p={prob}");
                } else {
                    assert!((prob - 1.0).abs() < 1e-10, "step {step}: fixed outcome with p={prob}");
                }
            }
            _ => {
                let p = random_pauli(n, &mut rng);
                st.dephase(&p).unwrap();
                rho.dephase(&p);
            }
        }
        st.check_invariants().unwrap();
        let from_tableau = DensityMatrix::from_generators(n, st.generators());
        let dist = from_tableau.trace_distance_bound(&rho);
        assert!(dist < 1e-10, "seed {seed} step {step}: trace distance bound {dist}");
    }
    // entropies of random regions
    for _ in 0..6 {
        let region: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let s_tab = st.entropy(&region) as f64;
        let s_dense = rho.entropy(&region);
        assert!((s_tab - s_dense).abs() < 1e-8, "entropy {region:?}: {s_tab} vs {s_dense}");
    }
}

#[test]
fn random_circuits_match_dense_oracle() {
    for seed in 0..120u64 {
        let n = 2 + (seed as usize % 5);
        compare_trajectory(seed, n, 40);
    }
}

#[test]
fn eight_qubit_trajectories() {
    for seed in 500..506u64 {
        compare_trajectory(seed, 8, 30);
    }
}

#[test]
fn ghz_on_four_qubits_matches_state_vector() {
    use num_complex::Complex64;
    let mut st = StabilizerState::plus_state(4);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut signs = Vec::new();
    for j in 0..3 {
        signs.push(st.measure(&PauliString::zz(4, j, j + 1), &mut rng).unwrap().outcome);
    }
    // amplitude on |b> and its complement with parities set by the outcomes
    let mut b = 0usize;
    for (j, s) in signs.iter().enumerate() {
        let prev = (b >> j) & 1;
        let bit = prev ^ s.is_minus() as usize;
        b |= bit << (j + 1);
    }
    let mut psi = vec![Complex64::new(0.0, 0.0); 16];
    psi[b] = Complex64::new(1.0, 0.0);
    psi[b ^ 15] = Complex64::new(1.0, 0.0);
    let want = DensityMatrix::from_vector(4, &psi);
    let got = DensityMatrix::from_generators(4, st.generators());
    assert!(got.trace_distance_bound(&want) < 1e-10);
}

#[test]
fn independent_zz_measurements_are_fair() {
    // Z1Z2 on |+>|+> is uniformly random and idempotent when repeated
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trials = 4000;
    let mut minus = 0;
    for _ in 0..trials {
        let mut st = StabilizerState::plus_state(2);
        let zz = PauliString::zz(2, 0, 1);
        let m1 = st.measure(&zz, &mut rng).unwrap();
        let m2 = st.measure(&zz, &mut rng).unwrap();
        assert_eq!(m1.outcome, m2.outcome);
        assert!(!m2.random);
        minus += m1.outcome.is_minus() as usize;
    }
    let frac = minus as f64 / trials as f64;
    let sigma = (0.25 / trials as f64).sqrt();
    assert!((frac - 0.5).abs() < 4.0 * sigma, "fraction {frac}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_under_random_operations(seed in any::<u64>(), n in 1usize..40, steps in 1usize..120) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut st = StabilizerState::plus_state(n);
        for _ in 0..steps {
            let p = random_pauli(n, &mut rng);
            match rng.gen_range(0..4) {
                0 => { st.measure(&p, &mut rng).unwrap(); }
                1 => { st.dephase(&p).unwrap(); }
                2 => {
                    let g = sample(all_one_qubit(), &mut rng);
                    st.apply_gate(&g, &[rng.gen_range(0..n)]).unwrap();
                }
                _ if n >= 2 => {
                    let g = sample(all_two_qubit(), &mut rng);
                    let a = rng.gen_range(0..n);
                    let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
                    st.apply_gate(&g, &[a, b]).unwrap();
                }
                _ => {}
            }
            prop_assert!(st.check_invariants().is_ok());
            prop_assert!(st.num_generators() <= n);
            for g in st.generators() {
                prop_assert_eq!(st.contains(g), Some(Sign::Plus));
            }
            let all: Vec<usize> = (0..n).collect();
            prop_assert_eq!(st.entropy(&all), n - st.num_generators());
        }
    }

    #[test]
    fn measurement_is_idempotent(seed in any::<u64>(), n in 1usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut st = StabilizerState::maximally_mixed(n);
        for _ in 0..n {
            let p = random_pauli(n, &mut rng);
            let a = st.measure(&p, &mut rng).unwrap();
            let b = st.measure(&p, &mut rng).unwrap();
            prop_assert_eq!(a.outcome, b.outcome);
            prop_assert!(!b.random);
        }
    }
}
