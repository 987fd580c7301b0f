mod common;

use common::*;
use pathseq::invariants::{connectivity, hyper_zagreb, path_count, power, sum_connectivity};
use pathseq::{
    check_t7_conditions, check_t8_conditions, distinguish, generalized_invariant, generalized_mu,
    mu_coefficient, reconstruct_generalized, reconstruct_starlike, starlike_family,
    starlike_invariant, Distinction, GenStarlikeSpec, InvariantFunction, InvariantProfile,
    StarlikeSpec, TreeSpec, DEFAULT_TOL,
};
use proptest::prelude::*;

fn spec_of(lengths: &[usize]) -> StarlikeSpec {
    StarlikeSpec::from_lengths(lengths).unwrap()
}

fn index_by(i: usize) -> InvariantFunction {
    [connectivity(), sum_connectivity(), hyper_zagreb()][i % 3].clone()
}

/// Branch lengths for a starlike tree with 3 to 7 branches.
fn lengths() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=6, 3..=7)
}

/// Two indices into the starlike family on `n` vertices.
fn same_size_pair() -> impl Strategy<Value = (usize, usize, usize)> {
    (5usize..=16).prop_flat_map(|n| {
        let k = starlike_family(n).len();
        (Just(n), 0..k, 0..k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn closed_form_matches_reference(ls in lengths(), alpha in -2.0f64..2.0) {
        let spec = spec_of(&ls);
        let f = power(alpha);
        let censuses = all_censuses(&starlike_graph(&spec));
        prop_assert_eq!(censuses.len(), spec.longest_path() + 1);
        for (h, c) in censuses.iter().enumerate() {
            let expected: f64 = c
                .iter()
                .map(|(seq, &n)| n as f64 * seq.iter().map(|&x| (x as f64).powf(alpha)).product::<f64>())
                .sum();
            let got = starlike_invariant(&spec, h, &f);
            prop_assert!(rel_close(got, expected, 1e-10), "h={} {} vs {}", h, got, expected);
        }
    }

    /// Branches longer than h only matter through n and m.
    #[test]
    fn longer_branches_are_invisible(
        h in 2usize..=5,
        short in prop::collection::vec(1usize..=5, 1..=4),
        long in prop::collection::vec(0usize..=4, 2..=3),
    ) {
        let short: Vec<usize> = short.into_iter().map(|l| l.min(h)).collect();
        let a_long: Vec<usize> = long.iter().map(|&e| h + 1 + e).collect();
        let total: usize = a_long.iter().sum();
        let mut b_long = vec![h + 1; a_long.len() - 1];
        b_long.push(total - (h + 1) * (a_long.len() - 1));
        let a = spec_of(&[short.clone(), a_long].concat());
        let b = spec_of(&[short, b_long].concat());
        for f in [connectivity(), hyper_zagreb()] {
            let (x, y) = (starlike_invariant(&a, h, &f), starlike_invariant(&b, h, &f));
            prop_assert!(rel_close(x, y, 1e-12), "{} vs {}: {} {}", a, b, x, y);
        }
        let ra = &all_censuses(&starlike_graph(&a))[h];
        let rb = &all_censuses(&starlike_graph(&b))[h];
        prop_assert_eq!(ra, rb);
    }

    /// Swapping a branch of length h + 1 for one of length h, with the lost
    /// vertex moved to a long branch, shifts the order-h value by mu.
    #[test]
    fn order_h_value_is_affine_in_l_h(
        h in 1usize..=5,
        short in prop::collection::vec(1usize..=5, 1..=3),
        extra in 0usize..=3,
        which in 0usize..3,
    ) {
        let short: Vec<usize> = short.into_iter().filter(|&l| l < h).collect();
        let f = index_by(which);
        let swaps = 3;
        let spec_k = |k: usize| {
            let mut ls = short.clone();
            ls.extend(std::iter::repeat_n(h, k));
            ls.extend(std::iter::repeat_n(h + 1, swaps - k));
            ls.push(h + 1 + extra + k);
            spec_of(&ls)
        };
        let m = spec_k(0).root_degree();
        let mu = mu_coefficient(&f, h, m);
        let base = starlike_invariant(&spec_k(0), h, &f);
        for k in 1..=swaps {
            let v = starlike_invariant(&spec_k(k), h, &f);
            let expected = base + k as f64 * mu;
            prop_assert!(
                (v - expected).abs() <= 1e-9 * v.abs().max(expected.abs()).max(1.0),
                "k={} {} vs {}", k, v, expected
            );
            let reference = weighted(&all_censuses(&starlike_graph(&spec_k(k)))[h], ref_connectivity);
            prop_assert!(rel_close(starlike_invariant(&spec_k(k), h, &connectivity()), reference, 1e-10));
        }
    }

    #[test]
    fn generalized_value_is_affine_in_l_h(
        h in 1usize..=4,
        clique in 3usize..=5,
        which in 0usize..3,
    ) {
        let f = index_by(which);
        let spec_k = |k: usize| {
            let mut ls = if h > 1 { vec![1] } else { vec![] };
            ls.extend(std::iter::repeat_n(h, k));
            ls.extend(std::iter::repeat_n(h + 1, 3 - k));
            ls.push(h + 2 + k);
            GenStarlikeSpec::new(clique, spec_of(&ls)).unwrap()
        };
        let m = spec_k(0).star().root_degree();
        let mu = generalized_mu(&f, h, m, clique);
        let base = generalized_invariant(&spec_k(0), h, &f);
        for k in 1..=3 {
            let v = generalized_invariant(&spec_k(k), h, &f);
            let expected = base + k as f64 * mu;
            prop_assert!((v - expected).abs() <= 1e-9 * v.abs().max(expected.abs()).max(1.0));
        }
    }

    #[test]
    fn distinguish_is_symmetric((n, i, j) in same_size_pair(), which in 0usize..3) {
        let family = starlike_family(n);
        let (a, b) = (family[i].clone(), family[j].clone());
        let f = index_by(which);
        let (ta, tb): (TreeSpec, TreeSpec) = (a.clone().into(), b.clone().into());
        let ab = distinguish(&ta, &tb, &f, DEFAULT_TOL).unwrap();
        let ba = distinguish(&tb, &ta, &f, DEFAULT_TOL).unwrap();
        match (&ab, &ba) {
            (Distinction::Separated { order: x, .. }, Distinction::Separated { order: y, .. }) => {
                prop_assert_eq!(x, y)
            }
            (Distinction::Indistinguishable { .. }, Distinction::Indistinguishable { .. }) => {}
            _ => prop_assert!(false, "asymmetric: {:?} / {:?}", ab, ba),
        }
        prop_assert_eq!(ab.separated(), a != b);
    }

    #[test]
    fn corrupted_profiles_are_rejected(ls in lengths(), at in 0usize..40, up in any::<bool>(), which in 0usize..3) {
        let spec = spec_of(&ls);
        let f = index_by(which);
        let rf = qualifying()[which % 3].1;
        let mut values = profile(&starlike_graph(&spec), rf);
        let h = at % values.len();
        let bump = 10.0 * DEFAULT_TOL * values[h].abs().max(1.0) * if up { 1.5 } else { -1.5 };
        values[h] += bump;
        let res = reconstruct_starlike(spec.vertex_count(), &InvariantProfile::new(values), &f, DEFAULT_TOL);
        prop_assert!(res.is_err(), "accepted corrupted profile at h={}: {:?}", h, res);
    }

    #[test]
    fn generalized_round_trip(clique in 3usize..=5, ls in lengths(), which in 0usize..3) {
        let spec = GenStarlikeSpec::new(clique, spec_of(&ls)).unwrap();
        let f = index_by(which);
        let rf = qualifying()[which % 3].1;
        let values = profile(&generalized_graph(&spec), rf);
        let res = reconstruct_generalized(
            spec.vertex_count(), spec.max_degree(), &InvariantProfile::new(values), &f, DEFAULT_TOL,
        ).unwrap();
        prop_assert_eq!(res.spec, spec);
    }

    #[test]
    fn passing_scans_pass_on_subdomains(x in 4usize..=64, t in 0usize..=32, which in 0usize..3) {
        let f = index_by(which);
        prop_assert!(check_t7_conditions(&f, x, t, DEFAULT_TOL).passed());
        prop_assert!(check_t8_conditions(&f, x, t, DEFAULT_TOL).passed());
    }
}

#[test]
fn constant_index_cannot_fix_the_root() {
    let spec = spec_of(&[1, 2, 2]);
    let values = profile(&starlike_graph(&spec), ref_path_count);
    let err = reconstruct_starlike(
        6,
        &InvariantProfile::new(values),
        &path_count(),
        DEFAULT_TOL,
    )
    .unwrap_err();
    assert_eq!(err.kind(), "AmbiguousRoot");
}
