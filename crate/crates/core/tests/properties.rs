use brieskorn::arith::{multiplicity_at_one, Rational};
use brieskorn::classify::{inertia, pham_matrix, sphere_graph_test};
use brieskorn::exponents::{kappa, milnor_number, ExponentList};
use brieskorn::floer::maslov_principal;
use brieskorn::homology::{randell_homology, smith_homology, AbelianGroup};
use brieskorn::mec::{mec_general, mec_sum, realize_mec, MecSummand};
use brieskorn::milnor::alexander_polynomial;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn exponents(max_len: usize, max_entry: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2..=max_entry, 2..=max_len)
}

fn list(v: &[u64]) -> ExponentList {
    ExponentList::new(v.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn invariants_ignore_order(v in exponents(5, 9), seed in any::<u64>()) {
        let a = list(&v);
        let mut w = v.clone();
        let len = w.len();
        w.rotate_left((seed as usize) % len);
        if seed % 2 == 0 {
            w.reverse();
        }
        let b = list(&w);
        prop_assert_eq!(milnor_number(&a), milnor_number(&b));
        prop_assert_eq!(kappa(&a, a.full()), kappa(&b, b.full()));
        prop_assert_eq!(maslov_principal(&a), maslov_principal(&b));
        prop_assert_eq!(a.canonical(), b.canonical());
        prop_assert_eq!(
            sphere_graph_test(&a).ok().map(|s| s.homeomorphic_sphere),
            sphere_graph_test(&b).ok().map(|s| s.homeomorphic_sphere)
        );
        if !maslov_principal(&a).is_zero() {
            prop_assert_eq!(mec_general(&a).unwrap(), mec_general(&b).unwrap());
        }
    }

    #[test]
    fn alexander_degree_and_kappa(v in exponents(4, 8)) {
        let a = list(&v);
        let delta = alexander_polynomial(&a).unwrap();
        prop_assert_eq!(BigInt::from(delta.degree().unwrap_or(0)), milnor_number(&a));
        prop_assert_eq!(BigInt::from(multiplicity_at_one(&delta).unwrap()), kappa(&a, a.full()));
    }

    #[test]
    fn randell_matches_smith_form(v in exponents(5, 5)) {
        let a = list(&v);
        prop_assume!(a.len() >= 3 && milnor_number(&a) <= BigInt::from(60));
        prop_assert_eq!(randell_homology(&a).unwrap(), smith_homology(&a).unwrap());
    }

    #[test]
    fn nullity_of_even_forms_is_kappa(v in exponents(5, 4)) {
        let a = list(&v);
        prop_assume!(a.n().is_multiple_of(2) && milnor_number(&a) <= BigInt::from(200));
        let m = pham_matrix(&a).unwrap();
        let (p, q) = inertia(&m).unwrap();
        prop_assert_eq!(BigInt::from(m.size() - p - q), kappa(&a, a.full()));
    }

    #[test]
    fn realized_values_come_back(num in -40i64..40, den in 1i64..40) {
        let x = Rational::new(BigInt::from(num), BigInt::from(den));
        let recipe = realize_mec(&x).unwrap();
        prop_assert_eq!(recipe.chi_m(), &x);
        let summands: Vec<MecSummand> = recipe
            .terms()
            .iter()
            .flat_map(|(a, k)| std::iter::repeat_n(MecSummand::List(a.clone()), *k as usize))
            .collect();
        prop_assert_eq!(mec_sum(&summands, recipe.n()).unwrap(), x);
    }

    #[test]
    fn torsion_orders_multiply(xs in prop::collection::vec(1u64..50, 0..5), ys in prop::collection::vec(1u64..50, 0..5)) {
        let g = xs.iter().fold(AbelianGroup::trivial(), |acc, &q| acc.direct_sum(&AbelianGroup::cyclic(q)));
        let h = ys.iter().fold(AbelianGroup::trivial(), |acc, &q| acc.direct_sum(&AbelianGroup::cyclic(q)));
        let both = g.direct_sum(&h);
        prop_assert_eq!(both.torsion_order(), g.torsion_order() * h.torsion_order());
        prop_assert_eq!(both.free_rank(), 0);
    }

    #[test]
    fn cli_json_is_stable(v in exponents(4, 7)) {
        let mut argv: Vec<String> = vec!["brieskorn".into(), "homology".into()];
        argv.extend(v.iter().map(u64::to_string));
        argv.push("--json".into());
        let out = brieskorn::cli::run(argv);
        prop_assert_eq!(out.code, 0);
        let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let mut again = serde_json::to_string_pretty(&value).unwrap();
        again.push('\n');
        prop_assert_eq!(again, out.stdout);
    }
}
