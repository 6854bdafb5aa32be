use hitchin_core::equivariance::act_poly;
use hitchin_core::harness::signed_perm_fixed_oracle;
use hitchin_core::hitchin::{hb_product, HitchinPoint, RootMultiset};
use hitchin_core::matrix::Matrix;
use hitchin_core::poly::{GradedPoly, LinearForm, Monomial, YPoly};
use hitchin_core::split::{total_split, SplitConfig, SplitOutcome};
use hitchin_core::torus::{fixed_locus, AffineTorusMap, CodimConvention};
use hitchin_core::{Field, Scalar};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::prime(5).unwrap()),
        Just(Field::prime(7).unwrap()),
    ]
}

fn scalar(field: Field, num: i64, den: i64) -> Scalar {
    let den = field.from_i64(den);
    field.from_i64(num).div(&den).unwrap_or_else(|| field.from_i64(num))
}

/// Terms as (variable multiset, numerator, denominator).
type RawTerms = Vec<(Vec<usize>, i64, i64)>;

fn raw_terms(max_deg: usize) -> impl Strategy<Value = RawTerms> {
    prop::collection::vec(
        (prop::collection::vec(0usize..3, 0..=max_deg), -6i64..=6, 1i64..=4),
        0..6,
    )
}

fn build(field: Field, d: usize, raw: &RawTerms) -> GradedPoly {
    GradedPoly::from_terms(
        field,
        d,
        raw.iter().map(|(vars, n, den)| {
            let mut e = vec![0u32; d];
            for &v in vars {
                e[v % d] += 1;
            }
            (Monomial::new(e), scalar(field, *n, *den))
        }),
    )
}

/// Homogeneous of degree `k`: every term gets exactly `k` variables.
fn homogeneous(field: Field, d: usize, k: usize, seeds: &[(u64, i64)]) -> GradedPoly {
    GradedPoly::from_terms(
        field,
        d,
        seeds.iter().map(|&(mut code, c)| {
            let mut e = vec![0u32; d];
            for _ in 0..k {
                e[(code % d as u64) as usize] += 1;
                code /= d as u64;
            }
            (Monomial::new(e), field.from_i64(c))
        }),
    )
}

fn point(field: Field, d: usize, r: usize, seeds: &[(u64, i64)]) -> HitchinPoint {
    let coeffs = (1..=r)
        .map(|k| homogeneous(field, d, k, &seeds[(k - 1) * 3..k * 3]))
        .collect();
    HitchinPoint::new(field, d, coeffs).unwrap()
}

fn form(field: Field, coeffs: &[i64]) -> LinearForm {
    LinearForm::from_i64(field, coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in field(), d in 1usize..=3, a in raw_terms(3), b in raw_terms(3), c in raw_terms(3)) {
        let (a, b, c) = (build(f, d, &a), build(f, d, &b), build(f, d, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &GradedPoly::one(f, d), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        f in field(),
        a in raw_terms(3),
        b in raw_terms(3),
        x in prop::collection::vec((-5i64..=5, 1i64..=3), 3),
    ) {
        let (a, b) = (build(f, 3, &a), build(f, 3, &b));
        let x: Vec<Scalar> = x.iter().map(|&(n, den)| scalar(f, n, den)).collect();
        let (va, vb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        prop_assert_eq!((&a * &b).eval(&x).unwrap(), &va * &vb);
        prop_assert_eq!((&a + &b).eval(&x).unwrap(), &va + &vb);
    }

    #[test]
    fn divrem_by_linear_reconstructs(
        f in field(),
        r in 1usize..=4,
        seeds in prop::collection::vec((0u64..1000, -5i64..=5), 12),
        t in prop::collection::vec(-4i64..=4, 2),
    ) {
        let s = point(f, 2, r, &seeds).to_ypoly();
        let t = form(f, &t);
        let (q, rem) = s.divrem_linear(&t);
        let mut coeffs = q.mul(&YPoly::linear(&t)).coeffs().to_vec();
        coeffs[0] = &coeffs[0] + &rem;
        prop_assert_eq!(YPoly::new(f, 2, coeffs), s.clone());
        let at_t = s
            .coeffs()
            .iter()
            .enumerate()
            .fold(GradedPoly::zero(f, 2), |acc, (j, c)| &acc + &(c * &t.to_poly().pow(j as u32)));
        prop_assert_eq!(rem, at_t);
    }

    #[test]
    fn action_composes(
        f in field(),
        p in raw_terms(3),
        g in prop::collection::vec(-2i64..=2, 9),
        h in prop::collection::vec(-2i64..=2, 9),
    ) {
        let p = build(f, 3, &p);
        let rows = |v: &[i64]| Matrix::from_i64(f, &[&v[0..3], &v[3..6], &v[6..9]]);
        let (g, h) = (rows(&g), rows(&h));
        prop_assert_eq!(act_poly(&g, &act_poly(&h, &p)), act_poly(&g.mul(&h), &p));
        prop_assert_eq!(act_poly(&Matrix::identity(f, 3), &p), p.clone());
    }

    #[test]
    fn hb_product_is_commutative_and_associative(
        f in field(),
        ra in 1usize..=3,
        rb in 1usize..=3,
        rc in 1usize..=2,
        seeds in prop::collection::vec((0u64..1000, -5i64..=5), 27),
    ) {
        let a = point(f, 2, ra, &seeds[0..9]);
        let b = point(f, 2, rb, &seeds[9..18]);
        let c = point(f, 2, rc, &seeds[18..27]);
        prop_assert_eq!(hb_product(&a, &b).unwrap(), hb_product(&b, &a).unwrap());
        prop_assert_eq!(
            hb_product(&hb_product(&a, &b).unwrap(), &c).unwrap(),
            hb_product(&a, &hb_product(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(hb_product(&a, &b).unwrap().rank(), ra + rb);
    }

    #[test]
    fn split_recovers_root_multisets(
        f in field(),
        roots in prop::collection::vec(prop::collection::vec(-5i64..=5, 2), 1..=5),
        seed in any::<u64>(),
    ) {
        let roots: Vec<LinearForm> = roots.iter().map(|c| form(f, c)).collect();
        let s = HitchinPoint::from_roots(f, 2, &roots);
        match total_split(&s, SplitConfig { seed, max_retries: 32 }) {
            SplitOutcome::Split(found) => prop_assert_eq!(found, RootMultiset::new(roots)),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn torus_fixed_loci_match_oracle_and_conjugation(
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
        signs in prop::collection::vec(prop::bool::ANY, 3),
        halves in prop::collection::vec(0i64..2, 3),
        conj in Just(vec![0usize, 1, 2]).prop_shuffle(),
        conj_signs in prop::collection::vec(prop::bool::ANY, 3),
        shift in prop::collection::vec(0i64..4, 3),
    ) {
        let signed = |p: &[usize], s: &[bool]| -> Vec<Vec<i64>> {
            (0..3)
                .map(|i| (0..3).map(|j| if p[i] == j { if s[i] { -1 } else { 1 } } else { 0 }).collect())
                .collect()
        };
        let a = signed(&perm, &signs);
        let rows: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
        let b: Vec<(i64, i64)> = halves.iter().map(|&h| (h, 2)).collect();
        let g = AffineTorusMap::from_i64(&rows, &b).unwrap();
        let c = signed(&conj, &conj_signs);
        let crow: Vec<&[i64]> = c.iter().map(Vec::as_slice).collect();
        let cb: Vec<(i64, i64)> = shift.iter().map(|&s| (s, 4)).collect();
        let h = AffineTorusMap::from_i64(&crow, &cb).unwrap();

        let report = fixed_locus(&g, CodimConvention::Real).unwrap();
        let (nonempty, codim) = signed_perm_fixed_oracle(&g).expect("signed permutation");
        prop_assert_eq!(report.nonempty, nonempty);
        if nonempty {
            prop_assert_eq!(report.codim, Some(codim));
        }
        let conjugated = h.compose(&g).compose(&h.inverse());
        prop_assert_eq!(fixed_locus(&conjugated, CodimConvention::Real).unwrap(), report);
    }
}
