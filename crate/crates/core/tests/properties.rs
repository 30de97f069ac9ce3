use lds4_core::factor::{factor_standard, verify_factorization};
use lds4_core::polyalg::{
    char_poly_exact, companion, kron_poly, recognize_standard, standard_poly, IntMatrix, IntPoly, StandardParams,
};
use lds4_core::salem::{binet_coefficients, in_salem_strip};
use lds4_core::seqcore::{divisibility_check, lucas_u, product_sequence, LucasParams};
use lds4_core::{compose_lucas, Ball};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn monic(lower: Vec<i64>) -> IntPoly {
    let mut c = lower;
    c.push(1);
    IntPoly::from_i64(&c)
}

fn int_matrix(dim: usize, entries: &[i64]) -> IntMatrix {
    let rows: Vec<Vec<i64>> = entries.chunks(dim).map(|r| r.to_vec()).collect();
    IntMatrix::from_rows(&rows)
}

fn det_shifted(m: &IntMatrix, k: i64) -> BigInt {
    let d = m.dim();
    let rows: Vec<Vec<i64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let a: i64 = m.get(i, j).try_into().unwrap();
                    if i == j {
                        k - a
                    } else {
                        -a
                    }
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows).determinant()
}

fn lucas() -> impl Strategy<Value = LucasParams> {
    (-12i64..=12, -12i64..=12)
        .prop_filter("k != 0", |&(_, k)| k != 0)
        .prop_map(|(h, k)| LucasParams::new(h, k).unwrap())
}

/// Brute-force standard-pattern test on small coefficients.
fn brute_force_standard(c: &[i64; 4]) -> bool {
    let [c0, c1, _c2, c3] = *c;
    let p = -c3;
    (-60i64..=60).any(|r| r != 0 && r * r == c0 && c1 == -p * r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lucas_sequences_are_divisibility_sequences(params in lucas()) {
        let w = params.terms(41);
        prop_assert!(divisibility_check(&w).is_empty());
    }

    #[test]
    fn lucas_closed_form_matches_recurrence(params in lucas(), n in 0u64..60) {
        let w = params.terms(n as usize + 1);
        prop_assert_eq!(&lucas_u(params, n), w.get(n).unwrap());
    }

    #[test]
    fn companion_round_trip(lower in prop::collection::vec(-50i64..=50, 1..=8)) {
        let f = monic(lower);
        prop_assert_eq!(char_poly_exact(&companion(&f).unwrap()), f);
    }

    #[test]
    fn char_poly_matches_determinant_oracle(
        (dim, entries) in (1usize..=5).prop_flat_map(|d| (Just(d), prop::collection::vec(-9i64..=9, d * d)))
    ) {
        let m = int_matrix(dim, &entries);
        let chi = char_poly_exact(&m);
        prop_assert_eq!(chi.degree(), dim);
        for k in -2..=(dim as i64 + 1) {
            prop_assert_eq!(chi.eval(&BigInt::from(k)), det_shifted(&m, k));
        }
    }

    #[test]
    fn kron_is_commutative(
        f in prop::collection::vec(-9i64..=9, 1..=3),
        g in prop::collection::vec(-9i64..=9, 1..=3),
    ) {
        let (f, g) = (monic(f), monic(g));
        prop_assert_eq!(kron_poly(&f, &g).unwrap(), kron_poly(&g, &f).unwrap());
    }

    #[test]
    fn kron_roots_are_pairwise_products(
        a in prop::collection::vec(-6i64..=6, 1..=3),
        b in prop::collection::vec(-6i64..=6, 1..=3),
    ) {
        let from_roots = |roots: &[i64]| {
            roots.iter().fold(IntPoly::from_i64(&[1]), |acc, &x| acc.mul(&IntPoly::linear(BigInt::from(x))))
        };
        let products: Vec<i64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        prop_assert_eq!(kron_poly(&from_roots(&a), &from_roots(&b)).unwrap(), from_roots(&products));
    }

    #[test]
    fn recognition_round_trip(p in -40i64..=40, q in -40i64..=40, r in -40i64..=40) {
        prop_assume!(r != 0);
        let sp = StandardParams::from_i64(p, q, r).unwrap();
        let rec = recognize_standard(&standard_poly(&sp)).unwrap().unwrap();
        prop_assert!(rec.params == sp || rec.alternate.as_ref() == Some(&sp));
        prop_assert_eq!(standard_poly(&rec.params), standard_poly(&sp));
    }

    #[test]
    fn recognition_matches_brute_force(
        c in prop::array::uniform4(-30i64..=30),
        seed in prop::array::uniform3(-5i64..=5),
        standard in any::<bool>(),
    ) {
        let c = if standard && seed[2] != 0 {
            let [p, q, r] = seed;
            [r * r, -p * r, q + 2 * r, -p]
        } else {
            c
        };
        let f = monic(c.to_vec());
        let got = recognize_standard(&f).unwrap().is_some();
        prop_assert_eq!(got, brute_force_standard(&c));
    }

    #[test]
    fn composed_sequence_is_product(a in lucas(), b in lucas()) {
        let (sp, ic) = compose_lucas(a, b);
        let product = product_sequence(&a.terms(25), &b.terms(25)).unwrap();
        prop_assert_eq!(&sp.recurrence().terms(25), &product);
        prop_assert_eq!(&ic.terms[..], &product.terms[..4]);
    }

    #[test]
    fn salem_reciprocal_symmetry(p in 1i64..=15, dq in 0i64..60) {
        let q = -2 * p - 3 + dq;
        prop_assume!(in_salem_strip(p, q));
        let sq = binet_coefficients(p, q, 128).unwrap();
        prop_assert!((&sq.alpha * &sq.alpha_inv).contains_int(&BigInt::one()));
        prop_assert!(sq.unit_circle_defect().contains_zero());
        let g = standard_poly(&sq.params());
        let rev: Vec<BigInt> = g.coeffs().iter().rev().cloned().collect();
        prop_assert_eq!(g.coeffs(), &rev[..]);
        prop_assert!(Ball::one(128).lt(&sq.alpha));
    }

    #[test]
    fn composed_quartics_factor(a in lucas(), b in lucas()) {
        let (sp, _) = compose_lucas(a, b);
        if let Ok(fact) = factor_standard(&sp, 256) {
            let any_pair_verifies = fact.pairs.iter().any(|pair| verify_factorization(&sp, pair, 12, 256).holds());
            prop_assert!(any_pair_verifies, "{}", sp);
        }
    }
}

#[test]
fn zero_window_is_trivially_divisible() {
    let w = lds4_core::SequenceWindow::new(0, vec![BigInt::zero(); 5]).unwrap();
    assert!(divisibility_check(&w).is_empty());
}
