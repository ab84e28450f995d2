use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use z2lab::circuits::{sample_quasi_ghz, Rates};
use z2lab::clifford::{all_one_qubit, all_two_qubit, sample};
use z2lab::observables::{chi_pm, chi_sg, mutual_information, MeanAccumulator, RegionSpec};
use z2lab::oracles::dense::DensityMatrix;
use z2lab::percolation::Geometry;
use z2lab::stabilizer::StabilizerState;

/// The dual of a run ending on a site layer ends on a check layer, so the
/// spin-glass side stops one step earlier.
fn chi_ensemble(p: f64, seed: u64, sg: bool) -> MeanAccumulator {
    let l = 32;
    let steps = if sg { 4 * l - 1 } else { 4 * l };
    let regions = RegionSpec::antipodal_eighths(l);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = MeanAccumulator::default();
    for _ in 0..2000 {
        let q = sample_quasi_ghz(Geometry::Ring { l }, steps, &Rates::baseline(p, 0.0), &mut rng);
        acc.push(if sg { chi_sg(&q, &regions) } else { chi_pm(&q, &regions) });
    }
    acc
}

#[test]
fn kramers_wannier_swaps_spin_glass_and_paramagnet() {
    for (k, a) in [0.35, 0.5, 0.65].into_iter().enumerate() {
        let sg = chi_ensemble(a, 10 + k as u64, true);
        let pm = chi_ensemble(1.0 - a, 20 + k as u64, false);
        let sigma = sg.stderr().unwrap().hypot(pm.stderr().unwrap());
        let gap = (sg.mean() - pm.mean()).abs();
        assert!(gap <= 3.0 * sigma, "a = {a}: {} vs {} (sigma {sigma})", sg.mean(), pm.mean());
    }
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StabilizerState {
    let mut st = StabilizerState::zero_state(n);
    for _ in 0..3 * n {
        if rng.gen_bool(0.3) {
            st.apply_gate(&sample(all_one_qubit(), rng), &[rng.gen_range(0..n)]).unwrap();
        } else {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            st.apply_gate(&sample(all_two_qubit(), rng), &[a, b]).unwrap();
        }
    }
    st
}

#[test]
fn mutual_information_matches_dense_and_grows_with_the_region() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..60 {
        let n = 4 + trial % 7;
        let st = random_state(n, &mut rng);
        let rho = DensityMatrix::from_generators(n, st.generators());
        let mut sites: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            sites.swap(i, rng.gen_range(0..=i));
        }
        let na = rng.gen_range(1..n);
        let nb = rng.gen_range(1..=n - na);
        let (a, b) = (&sites[..na], &sites[na..na + nb]);
        let ab: Vec<usize> = a.iter().chain(b).copied().collect();
        let dense = rho.entropy(a) + rho.entropy(b) - rho.entropy(&ab);
        let i_ab = mutual_information(&st, a, b);
        assert!((i_ab as f64 - dense).abs() < 1e-8, "trial {trial}: {i_ab} vs {dense}");
        for k in 1..na {
            assert!(mutual_information(&st, &a[..k], b) <= i_ab);
        }
    }
}

