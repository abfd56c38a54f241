use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tansec_core::hilbert::critical_s;
use tansec_core::secant::{defect_table, expected_hf, secant_rank, table_cells, terracini_matrix};
use tansec_core::transfer::{check_instance, TransferInstance};
use tansec_core::{Ambient, BiPoint, DenseMatrix, MonteCarlo, PrimeField, SchemeComponent, SchemeSpec, TangentPair};

fn random_points(f: &PrimeField, s: u32, rng: &mut ChaCha8Rng) -> Vec<(BiPoint, TangentPair)> {
    (0..s).map(|_| (BiPoint::random(f, rng), TangentPair::random(f, rng))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_never_exceeds_expected_and_grows_with_trials(seed in any::<u64>(), a in 1u32..7, b in 1u32..5, s in 1u32..8) {
        prop_assume!(a * b > 1);
        let f = PrimeField::default();
        let mut last = 0;
        for trials in 1..4 {
            let r = secant_rank(&MonteCarlo::new(f, seed, trials), a, b, s);
            prop_assert!(r.computed_hf <= r.expected_hf);
            prop_assert!(r.computed_hf >= last);
            prop_assert_eq!(r.defect, r.expected_hf - r.computed_hf);
            last = r.computed_hf;
        }
    }

    #[test]
    fn column_scaling_keeps_rank(seed in any::<u64>(), a in 1u32..6, b in 1u32..6, s in 1u32..6) {
        prop_assume!(a * b > 1);
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = terracini_matrix(&f, &random_points(&f, s, &mut rng), a, b);
        let scale: Vec<_> = (0..m.ncols()).map(|_| f.random_nonzero(&mut rng)).collect();
        let rows = m.rows().iter().map(|r| r.iter().zip(&scale).map(|(&x, &c)| f.mul(x, c)).collect()).collect();
        prop_assert_eq!(DenseMatrix::from_rows(f, m.ncols(), rows).rank(), m.rank());
    }

    /// Terracini rank against an independent route: the same points pushed
    /// to the plane, where conditions come from Taylor coefficients, minus
    /// what the two fat points impose.
    #[test]
    fn terracini_rank_matches_plane_image(seed in any::<u64>(), a in 1u32..9, b in 1u32..9) {
        prop_assume!(a * b > 1);
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = critical_s(a, b).1.min(6);
        let points = random_points(&f, s, &mut rng);
        let comps = points.iter().map(|&(support, cosupport)| SchemeComponent::ThreeTwoP1P1 { support, cosupport }).collect();
        let x = SchemeSpec::new(&f, Ambient::Biprojective, comps).unwrap();
        let o = check_instance(&f, &TransferInstance::new(&f, x, a, b).unwrap()).unwrap();
        prop_assert_eq!(terracini_matrix(&f, &points, a, b).rank() + o.fixed_points_hf, o.target_hf);
    }
}

#[test]
fn rank_grows_by_five_until_the_space_fills() {
    let mc = MonteCarlo::new(PrimeField::default(), 11, 3);
    for (a, b) in [(3, 2), (4, 3), (6, 2), (5, 5)] {
        let n = ((a + 1) * (b + 1)) as usize;
        let ranks: Vec<_> = (1..=critical_s(a, b).1 + 1).map(|s| secant_rank(&mc, a, b, s).computed_hf).collect();
        assert!(ranks.windows(2).all(|w| w[0] <= w[1]), "({a},{b}) {ranks:?}");
        for (k, &r) in ranks.iter().enumerate() {
            let s = k + 1;
            if 5 * s <= n {
                assert_eq!(r, 5 * s, "({a},{b}) s={s}");
            }
        }
        assert_eq!(*ranks.last().unwrap(), n);
    }
}

#[test]
fn expected_values() {
    assert_eq!(expected_hf(2, 2, 1), 5);
    assert_eq!(expected_hf(2, 2, 2), 9);
    assert_eq!(expected_hf(10, 10, 24), 120);
    assert_eq!(expected_hf(10, 10, 25), 121);
}

#[test]
fn table_is_ordered_and_reproducible() {
    let mc = MonteCarlo::new(PrimeField::default(), 5, 2);
    let cells = table_cells(5, 3);
    assert!(cells.windows(2).all(|w| w[0] < w[1]));
    assert!(cells.iter().all(|&(a, b, s)| b <= a && a * b > 1 && s >= 1 && s <= critical_s(a, b).1));
    let t1 = defect_table(&mc, 5, 3);
    assert_eq!(t1.iter().map(|r| (r.a, r.b, r.s)).collect::<Vec<_>>(), cells);
    assert_eq!(t1, defect_table(&mc, 5, 3));
    assert!(t1.iter().all(|r| r.defect == 0));
}
