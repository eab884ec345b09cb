use covlab::spectra::{dirac_count, generalized_j_set, j_set, Generator, SpectrumFamily};
use proptest::prelude::*;

const HORIZON: usize = 2_000;

/// `g(x) = 1 + b (1 − x)^c`: positive and strictly decreasing on [0, 1].
fn power_generator(b: f64, c: f64) -> Generator {
    Generator::new(format!("1+{b}*pow(1-x,{c})"), move |x| {
        1.0 + b * (1.0 - x).powf(c)
    })
    .unwrap()
}

fn family_strategy() -> impl Strategy<Value = SpectrumFamily> {
    prop_oneof![
        (0.1f64..10.0).prop_map(|l| SpectrumFamily::identity(l).unwrap()),
        (0.05f64..5.0, 0.3f64..3.0)
            .prop_map(|(b, c)| SpectrumFamily::generator(power_generator(b, c))),
        (1.01f64..4.0, 0.05f64..1.0)
            .prop_map(|(h, f)| SpectrumFamily::two_block(h, 1.0, f).unwrap()),
        (0.05f64..0.95, 0.0f64..3.0).prop_map(|(d, extra)| {
            let g = power_generator(1.0, 1.0);
            SpectrumFamily::dirac_mixture(d, 2.0 + extra, g).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn j_sets_nest_and_contain_the_top(fam in family_strategy(), p in 1usize..100) {
        let a = j_set(&fam, p, HORIZON).unwrap();
        let b = j_set(&fam, p + 1, HORIZON).unwrap();
        prop_assert!(a.is_subset_of(&b), "{}: p = {p}", fam.describe());
        prop_assert!(a.contains(1));
        prop_assert!(a.quantifier_truncated);
    }

    #[test]
    fn dirac_atoms_are_clustered(d in 0.05f64..0.95, extra in 0.0f64..3.0, p in 1usize..150) {
        let fam = SpectrumFamily::dirac_mixture(d, 2.0 + extra, power_generator(1.0, 1.0)).unwrap();
        let phi = j_set(&fam, p, HORIZON).unwrap().cardinal;
        prop_assert!(phi >= dirac_count(d, p), "delta = {d}, p = {p}: phi = {phi}");
    }

    #[test]
    fn flatter_spectra_dominate(b in 0.05f64..5.0, c in 0.3f64..3.0, theta in 0.05f64..1.0, p in 1usize..80) {
        // (g(i/p)/g(1/p))^θ ≥ g(i/p)/g(1/p) for θ ≤ 1
        let g = power_generator(b, c);
        let flat = Generator::new("flat", move |x| (1.0 + b * (1.0 - x).powf(c)).powf(theta)).unwrap();
        let base = j_set(&SpectrumFamily::generator(g), p, HORIZON).unwrap();
        let dominating = j_set(&SpectrumFamily::generator(flat), p, HORIZON).unwrap();
        prop_assert!(base.is_subset_of(&dominating));
    }

    #[test]
    fn generalized_set_with_top_sequence(fam in family_strategy(), p in 1usize..60) {
        let top = |m: usize| Some(fam.spectrum_at(m).unwrap().largest());
        let g = generalized_j_set(&fam, top, p, HORIZON).unwrap();
        prop_assert_eq!(g, j_set(&fam, p, HORIZON).unwrap());
    }
}
