use num::{One, Zero};
use proptest::prelude::*;

use freelie::lie::{is_lie, lie_coordinates, lyndon_basis};
use freelie::ncalg::{qi, simplex_monomial_integral, Poly, Scalar, Word};
use freelie::operators::{ant, delta, delta_a, g_homotopy, p_project, s_retract};
use freelie::oracle::{matrix_eval, Assignment, RatMatrix};
use freelie::series::{exp_trunc, log_trunc};
use freelie::syntax::{format, parse};
use freelie::Letter;

fn poly_strategy(max_arity: usize, max_degree: usize) -> impl Strategy<Value = Poly> {
    (1..=max_arity).prop_flat_map(move |n| {
        let term = (
            prop::collection::vec(1..=n as u32, 0..=max_degree),
            -4i64..=4,
        );
        prop::collection::vec(term, 0..=4).prop_map(move |terms| {
            terms.into_iter().fold(Poly::zero(n), |acc, (w, c)| {
                &acc + &Poly::monomial(n, Word::from_indices(&w), qi(c)).unwrap()
            })
        })
    })
}

fn homogeneous_strategy(max_arity: usize, max_degree: usize) -> impl Strategy<Value = Poly> {
    (1..=max_arity, 0..=max_degree).prop_flat_map(|(n, d)| {
        let term = (prop::collection::vec(1..=n as u32, d), -4i64..=4);
        prop::collection::vec(term, 1..=4).prop_map(move |terms| {
            terms.into_iter().fold(Poly::zero(n), |acc, (w, c)| {
                &acc + &Poly::monomial(n, Word::from_indices(&w), qi(c)).unwrap()
            })
        })
    })
}

/// `∫_{Δ_k} Π t_i^{a_i}` by integrating out the last coordinate:
/// the slice at `t_k` is `(1 − t_k) Δ_{k−1}`, and the Beta integral is
/// expanded binomially.
fn iterated_simplex_integral(a: &[u32]) -> Scalar {
    let Some((&last, rest)) = a.split_last() else {
        return Scalar::one();
    };
    let inner = iterated_simplex_integral(rest);
    let m = rest.len() as u32 + rest.iter().sum::<u32>();
    // ∫_0^1 t^last (1 − t)^m dt = Σ_j C(m, j) (−1)^j / (last + j + 1)
    let mut beta = Scalar::zero();
    let mut binom = Scalar::one();
    for j in 0..=m {
        let term = &binom / qi(i64::from(last + j + 1));
        if j % 2 == 0 {
            beta += term;
        } else {
            beta -= term;
        }
        binom = binom * qi(i64::from(m - j)) / qi(i64::from(j + 1));
    }
    inner * beta
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplex_integral_matches_iteration(a in prop::collection::vec(0u32..=4, 0..=4)) {
        prop_assert_eq!(simplex_monomial_integral(&a), iterated_simplex_integral(&a));
    }

    #[test]
    fn delta_squares_to_zero(f in poly_strategy(4, 4)) {
        prop_assert!(delta(&delta(&f).unwrap()).unwrap().is_zero());
        prop_assert!(delta_a(&delta_a(&f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn simplicial_homotopy(f in poly_strategy(4, 4)) {
        let lhs = &s_retract(&delta(&f).unwrap()).unwrap() + &delta(&s_retract(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, f);
    }

    #[test]
    fn projectors_are_idempotent(f in poly_strategy(3, 3)) {
        let p = p_project(&f).unwrap();
        prop_assert_eq!(&p_project(&p).unwrap(), &p);
        let a = ant(&f).unwrap();
        prop_assert_eq!(ant(&a).unwrap(), a);
    }

    #[test]
    fn chain_homotopy(f in poly_strategy(3, 3)) {
        let lhs = &g_homotopy(&delta(&f).unwrap()).unwrap() + &delta(&g_homotopy(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, &f - &p_project(&f).unwrap());
    }

    #[test]
    fn operators_preserve_degree(f in homogeneous_strategy(3, 3)) {
        prop_assume!(!f.is_zero());
        let d = f.homogeneous_degree().unwrap();
        for img in [delta(&f).unwrap(), p_project(&f).unwrap(), g_homotopy(&f).unwrap(), delta_a(&f).unwrap()] {
            prop_assert!(img.is_zero() || img.homogeneous_degree() == Some(d));
        }
    }

    #[test]
    fn parse_format_round_trip(f in poly_strategy(4, 4)) {
        prop_assert_eq!(parse(&format(&f), Some(f.arity())).unwrap(), f);
    }

    #[test]
    fn lyndon_combinations_are_lie(
        (n, d) in (1usize..=3, 1usize..=4),
        seed in prop::collection::vec(-3i64..=3, 20),
    ) {
        let basis = lyndon_basis(n, d);
        let coords: Vec<Scalar> = seed.iter().take(basis.len()).map(|&c| qi(c)).collect();
        let coords: Vec<Scalar> = coords.into_iter().chain(std::iter::repeat(qi(0))).take(basis.len()).collect();
        let f = basis.combine(&coords);
        prop_assert!(f.is_zero() || is_lie(&f));
        prop_assert_eq!(lie_coordinates(&f, &basis).unwrap(), coords);
    }

    #[test]
    fn exp_log_round_trip(f in poly_strategy(2, 3)) {
        let f = f.filter(|w| !w.is_empty());
        let back = log_trunc(&exp_trunc(&f, 4).unwrap(), 4).unwrap();
        prop_assert_eq!(back, f.truncate(4));
    }

    #[test]
    fn matrix_eval_is_multiplicative(
        f in poly_strategy(2, 3),
        g in poly_strategy(2, 3),
        entries in prop::collection::vec(-5i64..=5, 8),
    ) {
        let n = f.arity().max(g.arity());
        let (f, g) = (f.with_arity(n).unwrap(), g.with_arity(n).unwrap());
        let m = |i: usize| RatMatrix::from_rows(vec![
            vec![qi(entries[i]), qi(entries[i + 1])],
            vec![qi(entries[i + 2]), qi(entries[i + 3])],
        ]);
        let a = Assignment::new(2).with(Letter::x(1), m(0)).with(Letter::x(2), m(4));
        let lhs = matrix_eval(&(&f * &g), &a).unwrap();
        let rhs = matrix_eval(&f, &a).unwrap().mul(&matrix_eval(&g, &a).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
