use cyclic_factor_core::arithmetic::{factorize, gcd, mod_pow, multiplicative_order};
use cyclic_factor_core::group::{
    compose, coset_partition, crt_reconstruct, crt_residues, inverse, slice_coordinates,
    slice_recompose, subgroup_compose, subgroup_decompose, CyclicGroup, ExtendedGroupSpec,
    SliceConvention,
};
use cyclic_factor_core::hidden_subgroup::{oracle_eval, OracleSpec};
use cyclic_factor_core::representations::{
    project, project_via_primes, translation_phase_check, GroupFunction, IrrepLabel,
};
use cyclic_factor_core::ring_salc::{compare_with_fourier_modes, RingSpec};
use cyclic_factor_core::shor_sim::{
    dense_qft_distribution, extract_period, measure_bottom, prepare_uniform, qft_distribution,
    RegisterConfig, RegisterMode,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn function(values: Vec<(f64, f64)>) -> GroupFunction {
    GroupFunction::new(
        values
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect(),
    )
    .unwrap()
}

fn group_function(max_order: usize) -> impl Strategy<Value = GroupFunction> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=max_order).prop_map(function)
}

fn coprime_pair(max_n: u64) -> impl Strategy<Value = (u64, u64)> {
    (3..=max_n)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_filter("coprime", |&(n, a)| gcd(a as u128, n as u128) == 1)
}

proptest! {
    #[test]
    fn group_axioms(m in 1u64..1_000_000, x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let g = CyclicGroup::new(m).unwrap();
        let (x, y, z) = (g.element_mod(x), g.element_mod(y), g.element_mod(z));
        prop_assert_eq!(
            compose(compose(x, y).unwrap(), z).unwrap(),
            compose(x, compose(y, z).unwrap()).unwrap()
        );
        prop_assert_eq!(compose(x, g.identity()).unwrap(), x);
        prop_assert!(compose(x, inverse(x)).unwrap().is_identity());
        prop_assert_eq!(compose(x, y).unwrap(), compose(y, x).unwrap());
    }

    #[test]
    fn crt_round_trip(n in 2u64..5000, k in any::<u64>()) {
        let g = CyclicGroup::new(n).unwrap();
        let e = g.element_mod(k);
        prop_assert_eq!(crt_reconstruct(g, &crt_residues(e).unwrap()).unwrap(), e);
        if factorize(n as u128).unwrap().is_square_free() {
            let coords = subgroup_decompose(e).unwrap();
            prop_assert_eq!(subgroup_compose(g, &coords).unwrap(), e);
        } else {
            prop_assert!(subgroup_decompose(e).is_err());
        }
    }

    #[test]
    fn slices_round_trip((n, a) in coprime_pair(500), x in 0u64..1_000_000) {
        let spec = ExtendedGroupSpec::new(n, a).unwrap();
        for conv in [SliceConvention::ByN, SliceConvention::ByA] {
            let (i, j) = slice_coordinates(x, &spec, conv);
            prop_assert_eq!(slice_recompose(i, j, &spec, conv).unwrap(), x % spec.order());
        }
    }

    #[test]
    fn cosets_partition_the_group(m in 1u64..400, k in any::<u64>()) {
        let g = CyclicGroup::new(m).unwrap();
        let cosets = coset_partition(g, g.element_mod(k)).unwrap();
        let mut all: Vec<u64> = cosets.iter().flat_map(|c| c.members.iter().map(|e| e.index())).collect();
        prop_assert!(cosets.windows(2).all(|w| w[0].members.len() == w[1].members.len()));
        all.sort_unstable();
        prop_assert_eq!(all, (0..m).collect::<Vec<_>>());
    }

    #[test]
    fn projectors_are_a_resolution_of_identity(f in group_function(40)) {
        let m = f.order();
        let mut sum = GroupFunction::zeros(m);
        for label in IrrepLabel::all(m) {
            let p = project(label, &f).unwrap();
            prop_assert!(project(label, &p).unwrap().max_abs_diff(&p).unwrap() < 1e-10);
            let other = IrrepLabel::new((label.j() + 1) % m, m).unwrap();
            if other != label {
                prop_assert!(project(other, &p).unwrap().norm() < 1e-10);
            }
            sum = sum.add(&p).unwrap();
        }
        prop_assert!(sum.max_abs_diff(&f).unwrap() < 1e-10);
    }

    #[test]
    fn prime_path_equals_direct_projection(f in group_function(70), j in any::<u64>()) {
        let m = f.order();
        prop_assume!(m >= 2);
        let fac = factorize(m as u128).unwrap();
        prop_assume!(fac.is_square_free());
        let label = IrrepLabel::new(j % m, m).unwrap();
        let direct = project(label, &f).unwrap();
        let via = project_via_primes(label, &f, &fac).unwrap();
        prop_assert!(via.max_abs_diff(&direct).unwrap() < 1e-10);
    }

    #[test]
    fn projected_functions_pick_up_the_bloch_phase(f in group_function(40), j in any::<u64>()) {
        let m = f.order();
        let label = IrrepLabel::new(j % m, m).unwrap();
        prop_assert!(translation_phase_check(label, &f, 1e-12).unwrap().passed);
    }

    #[test]
    fn oracle_labels_agree_with_modular_residue((n, a) in coprime_pair(1000), x in 0u64..40) {
        let spec = OracleSpec::new(n, a).unwrap();
        if let Ok(label) = oracle_eval(&spec, x) {
            prop_assert_eq!(label.beta.get(), mod_pow(a as u128, x, n as u128).unwrap());
        }
    }

    #[test]
    fn closed_form_qft_matches_dense((n, a) in coprime_pair(60), q in 1u32..10, pick in any::<u64>()) {
        let config = RegisterConfig::new(n, a, RegisterMode::PowerOfTwo, Some(1 << q)).unwrap();
        let state = prepare_uniform(config).unwrap();
        prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
        let branches = state.branches();
        let w = branches[(pick % branches.len() as u64) as usize].residue;
        let collapsed = measure_bottom(&state, Some(w), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let fast = qft_distribution(&collapsed);
        let slow = dense_qft_distribution(&collapsed.to_dense()).unwrap();
        prop_assert!((fast.total() - 1.0).abs() < 1e-12);
        for (p, s) in fast.probabilities().iter().zip(slow.probabilities()) {
            prop_assert!((p - s).abs() < 1e-10);
        }
    }

    #[test]
    fn exact_comb_when_order_divides_register((n, a) in coprime_pair(200), pick in any::<u64>()) {
        let r = multiplicative_order(a as u128, n as u128).unwrap();
        prop_assume!(r.is_power_of_two());
        let m = (r * 64).max(2);
        let config = RegisterConfig::new(n, a, RegisterMode::PowerOfTwo, Some(m)).unwrap();
        let state = prepare_uniform(config).unwrap();
        let w = state.branches()[(pick % r) as usize].residue;
        let dist = qft_distribution(&measure_bottom(&state, Some(w), &mut ChaCha8Rng::seed_from_u64(0)).unwrap());
        for (v, &p) in dist.probabilities().iter().enumerate() {
            let want = if (v as u64).is_multiple_of(m / r) { 1.0 / r as f64 } else { 0.0 };
            prop_assert!((p - want).abs() < 1e-12);
        }
    }

    #[test]
    fn extracted_periods_are_periods((n, a) in coprime_pair(300), q in 4u32..16, v in any::<u64>()) {
        let m = 1u64 << q;
        if let Some(r) = extract_period(v % m, m, n, a) {
            prop_assert!(r >= 1 && r <= n);
            prop_assert_eq!(mod_pow(a as u128, r, n as u128).unwrap(), 1);
        }
    }

    #[test]
    fn ring_spectrum_matches_fourier_modes(n in 2usize..24, t in -2.0f64..-0.1, alpha in -1.0f64..1.0) {
        let spec = RingSpec::new(n, alpha, t).unwrap();
        let (energy_err, projector_err) = compare_with_fourier_modes(&spec, 1e-8);
        prop_assert!(energy_err < 1e-8);
        prop_assert!(projector_err < 1e-8);
    }
}
