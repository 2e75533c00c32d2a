//! Property suites over random inputs, plus a few exact global
//! inequalities that need big-integer arithmetic.

mod support;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use multidrop_core::field::GaussianRational;
use multidrop_core::linalg::{poly_matrix_determinant, ExactMatrix};
use multidrop_core::multidrop::{upper_bound_count, verify_certificate, MultidropCertificate, RankOneTerm};
use multidrop_core::poly::{MultivariatePoly, UnivariatePoly};
use multidrop_core::tensor::{linear_combination, FlatteningSpec, Tensor};

use support::{laplace_det, naive_rank};

fn rational_strategy() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=6)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn scalar_strategy() -> impl Strategy<Value = GaussianRational> {
    (rational_strategy(), rational_strategy()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn small_int_scalar() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4).prop_map(GaussianRational::from_int)
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(small_int_scalar(), rows * cols)
        .prop_map(move |entries| ExactMatrix::new(rows, cols, entries).unwrap())
}

fn univariate_strategy(max_deg: usize) -> impl Strategy<Value = UnivariatePoly> {
    proptest::collection::vec(small_int_scalar(), 1..=max_deg + 1).prop_map(UnivariatePoly::new)
}

/// Random homogeneous polynomial of the given degree in `nvars` variables.
fn homogeneous_strategy(nvars: usize, degree: u32) -> impl Strategy<Value = MultivariatePoly> {
    let exps = proptest::collection::vec(0..=degree, nvars - 1).prop_map(move |cuts| {
        // spread `degree` over nvars slots
        let mut exps: Vec<u32> = Vec::with_capacity(nvars);
        let mut remaining = degree;
        for c in cuts {
            let e = c.min(remaining);
            exps.push(e);
            remaining -= e;
        }
        exps.push(remaining);
        exps
    });
    proptest::collection::vec((exps, small_int_scalar()), 1..=6).prop_map(move |terms| {
        let mut f = MultivariatePoly::zero(nvars);
        for (e, c) in terms {
            f.add_term(e, c);
        }
        f
    })
}

fn point_strategy(n: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    proptest::collection::vec(small_int_scalar(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.checked_inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in scalar_strategy()) {
        let s = a.to_string();
        let back: GaussianRational = s.parse().unwrap();
        prop_assert_eq!(back.to_string(), s);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rank_equals_transpose_rank_and_naive(m in matrix_strategy(3, 4)) {
        let r = m.rank();
        prop_assert_eq!(r, m.transpose().rank());
        prop_assert_eq!(r, naive_rank(&m));
    }

    #[test]
    fn determinant_matches_laplace(m in matrix_strategy(3, 3)) {
        prop_assert_eq!(m.determinant().unwrap(), laplace_det(&m));
    }

    #[test]
    fn poly_det_commutes_with_evaluation(
        rows in proptest::collection::vec(univariate_strategy(2), 9),
        x in small_int_scalar(),
    ) {
        let m: Vec<Vec<UnivariatePoly>> = rows.chunks(3).map(|c| c.to_vec()).collect();
        let det = poly_matrix_determinant(&m, None).unwrap();
        let at_x = ExactMatrix::from_fn(3, 3, |r, c| m[r][c].evaluate(&x));
        prop_assert_eq!(det.evaluate(&x), at_x.determinant().unwrap());
    }

    #[test]
    fn restriction_is_multiplicative(
        f in homogeneous_strategy(3, 2),
        h in homogeneous_strategy(3, 3),
        base in point_strategy(3),
        dir in point_strategy(3),
    ) {
        prop_assume!(!multidrop_core::poly::proportional(&base, &dir));
        let product = f.mul(&h).unwrap();
        let lhs = product.restrict_to_line(&base, &dir).unwrap();
        let rhs = f
            .restrict_to_line(&base, &dir)
            .unwrap()
            .mul(&h.restrict_to_line(&base, &dir).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn restriction_vanishes_at_zero_iff_point_on_hypersurface(
        f in homogeneous_strategy(3, 3),
        base in point_strategy(3),
        dir in point_strategy(3),
    ) {
        prop_assume!(!multidrop_core::poly::proportional(&base, &dir));
        let g = f.restrict_to_line(&base, &dir).unwrap();
        prop_assume!(!g.is_zero());
        let vanishes = f.evaluate(&base).unwrap().is_zero();
        prop_assert_eq!(g.multiplicity_at_zero().unwrap() >= 1, vanishes);
    }

    #[test]
    fn restriction_degree_is_total_degree_when_leading_survives(
        f in homogeneous_strategy(3, 3),
        base in point_strategy(3),
        dir in point_strategy(3),
    ) {
        prop_assume!(!multidrop_core::poly::proportional(&base, &dir));
        prop_assume!(!f.is_zero());
        // the leading coefficient of f(base + t dir) is f(dir)
        prop_assume!(!f.evaluate(&dir).unwrap().is_zero());
        let g = f.restrict_to_line(&base, &dir).unwrap();
        prop_assert_eq!(g.degree(), Some(3));
    }

    #[test]
    fn squaring_preserves_distinct_root_count(f in univariate_strategy(4)) {
        prop_assume!(!f.is_zero());
        prop_assume!(f.degree() != Some(0));
        let sq = f.mul(&f);
        prop_assert_eq!(
            sq.distinct_root_count().unwrap(),
            f.distinct_root_count().unwrap()
        );
    }

    #[test]
    fn rank_one_detection_matches_reconstruction(
        factors in proptest::collection::vec(proptest::collection::vec(small_int_scalar(), 2), 3),
        noise in proptest::collection::vec(small_int_scalar(), 8),
    ) {
        // genuine rank-one tensors are recognized
        let t = Tensor::rank_one(&factors).unwrap();
        if !t.is_zero() {
            prop_assert!(t.is_rank_one());
        }
        // arbitrary tensors: is_rank_one agrees with an explicit
        // reconstruction from the first nonzero fiber
        let candidate = Tensor::new(vec![2, 2, 2], noise).unwrap();
        prop_assert_eq!(candidate.is_rank_one(), reconstructs_as_rank_one(&candidate));
    }

    #[test]
    fn kronecker_rank_multiplicativity(
        a in proptest::collection::vec(small_int_scalar(), 8),
        b in proptest::collection::vec(small_int_scalar(), 8),
    ) {
        let s = Tensor::new(vec![2, 2, 2], a).unwrap();
        let t = Tensor::new(vec![2, 2, 2], b).unwrap();
        let rs = s.flatten(&FlatteningSpec::standard([0])).unwrap().rank();
        let rt = t.flatten(&FlatteningSpec::standard([0])).unwrap().rank();
        let rp = s
            .tensor_product(&t)
            .flatten(&FlatteningSpec::standard([0, 3]))
            .unwrap()
            .rank();
        prop_assert_eq!(rp, rs * rt);
    }
}

/// Test-only oracle: a tensor is rank one iff it equals the outer product
/// built from its first nonzero entry's fibers.
fn reconstructs_as_rank_one(t: &Tensor) -> bool {
    let dims = t.dims().to_vec();
    let Some(first) = (0..t.entries().len()).find(|&i| !t.entries()[i].is_zero()) else {
        return false; // zero tensor
    };
    // decode the flat index
    let mut idx = vec![0usize; dims.len()];
    let mut rem = first;
    for (k, d) in dims.iter().enumerate().rev() {
        idx[k] = rem % d;
        rem /= d;
    }
    let pivot = t.get(&idx).clone();
    // factor vectors: vary one mode at a time through the pivot entry
    let factors: Vec<Vec<GaussianRational>> = dims
        .iter()
        .enumerate()
        .map(|(mode, &d)| {
            (0..d)
                .map(|i| {
                    let mut at = idx.clone();
                    at[mode] = i;
                    t.get(&at).clone()
                })
                .collect()
        })
        .collect();
    let outer = Tensor::rank_one(&factors).unwrap();
    // outer = t * pivot^(order-1) when t is rank one
    let mut scale = GaussianRational::one();
    for _ in 1..dims.len() {
        scale = &scale * &pivot;
    }
    outer == t.scale(&scale)
}

#[test]
fn corrupted_certificate_fails_with_exact_residual() {
    let mut terms = multidrop_core::catalog::t_minus_z_terms();
    terms[0].factors[0][0] = "5/2".parse().unwrap(); // perturb one coefficient
    let cert = MultidropCertificate::new(
        multidrop_core::catalog::tensor_t(),
        multidrop_core::catalog::tensor_z(),
        4,
        2,
        Some(multidrop_core::catalog::t_minus_2z_terms()),
        Some(terms),
    )
    .unwrap();
    let report = verify_certificate(&cert);
    assert!(!report.pass());
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].name, "q1_decomposition_sums_to_p_minus_z");
    assert!(failed[0].detail.contains("residual"), "{}", failed[0].detail);
}

#[test]
fn certificate_with_wrong_claimed_bound_fails() {
    let mut cert = multidrop_core::catalog::t_certificate();
    cert.claimed_upper_bound = BigUint::from(23u32);
    let report = verify_certificate(&cert);
    assert!(!report.pass());
    assert!(report
        .checks
        .iter()
        .any(|c| c.name == "claimed_bound_matches_formula" && !c.pass));
}

#[test]
fn rank_one_term_helper_materializes_products() {
    let term = RankOneTerm {
        factors: vec![
            vec![GaussianRational::from_int(2), GaussianRational::from_int(1)],
            vec![GaussianRational::from_int(3), GaussianRational::from_int(-1)],
        ],
    };
    let t = term.materialize().unwrap();
    assert_eq!(t.get(&[0, 0]), &GaussianRational::from_int(6));
    assert_eq!(t.get(&[1, 1]), &GaussianRational::from_int(-1));
}

/// B(r,k) converges to r+1 from below: exact big-integer comparisons at
/// k = 200 (within 0.1) and k = 2000 (within 0.01).
#[test]
fn bound_b_converges_to_r_plus_1() {
    for r in 1..=10u64 {
        let n200 = upper_bound_count(r, 200).unwrap();
        // B(r,200) > r + 0.9  <=>  N * 10^200 > (10r+9)^200
        let lhs = &n200 * BigUint::from(10u32).pow(200);
        let rhs = BigUint::from(10 * r + 9).pow(200);
        assert!(lhs > rhs, "B({r},200) > {r}.9");
        // and B < r + 1 always: N < (r+1)^k
        assert!(n200 < BigUint::from(r + 1).pow(200));

        let n2000 = upper_bound_count(r, 2000).unwrap();
        // B(r,2000) > r + 0.99  <=>  N * 100^2000 > (100r+99)^2000
        let lhs = &n2000 * BigUint::from(100u32).pow(2000);
        let rhs = BigUint::from(100 * r + 99).pow(2000);
        assert!(lhs > rhs, "B({r},2000) > {r}.99");
    }
}

#[test]
fn tensor_power_expansion_rejects_oversized_requests() {
    let p = Tensor::new(
        vec![3, 3, 3],
        (0..27).map(GaussianRational::from_int).collect(),
    )
    .unwrap();
    let err = multidrop_core::multidrop::expand_power(&p, &p, 12);
    assert!(matches!(
        err,
        Err(multidrop_core::multidrop::MultidropError::PowerTooLarge { .. })
    ));
}

#[test]
fn linear_combination_of_decomposition_is_exact_under_scaling() {
    // scaling every term by c scales the sum by c
    let terms = multidrop_core::catalog::t_minus_z_terms();
    let c: GaussianRational = "3/7".parse().unwrap();
    let scaled: Vec<Tensor> = terms
        .iter()
        .map(|t| t.materialize().unwrap().scale(&c))
        .collect();
    let weighted: Vec<(GaussianRational, &Tensor)> = scaled
        .iter()
        .map(|t| (GaussianRational::one(), t))
        .collect();
    let sum = linear_combination(&weighted).unwrap();
    let t = multidrop_core::catalog::tensor_t();
    let z = multidrop_core::catalog::tensor_z();
    let t_minus_z = linear_combination(&[
        (GaussianRational::one(), &t),
        (GaussianRational::from_int(-1), &z),
    ])
    .unwrap();
    assert_eq!(sum, t_minus_z.scale(&c));
}
