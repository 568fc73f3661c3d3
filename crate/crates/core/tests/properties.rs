use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use repnum::arith::{kronecker, p2, positivity_f, sigma_twisted, sigma_u, DirichletCharacter};
use repnum::basis::{assemble_basis, declared_dimensions, supported_spaces, BasisError};
use repnum::decomp::{decompose, solve_on_rows};
use repnum::etagen::{eta_series, gen_eta_series};
use repnum::genfun::{form_series, normalized_form_series, FormSpec};
use repnum::modmeta::space_meta;
use repnum::oracle::{check_odd_square_bijection, check_squared_convolution, check_squared_odd, count};
use repnum::qseries::{q, qi, FracQSeries, Q};

const PREC: usize = 12;

fn series() -> impl Strategy<Value = FracQSeries> {
    prop::collection::vec(-20i64..=20, PREC).prop_map(|c| FracQSeries::from_ints(Q::zero(), &c).unwrap())
}

fn unit_series() -> impl Strategy<Value = FracQSeries> {
    (prop::sample::select(vec![-1i64, 1]), prop::collection::vec(-9i64..=9, PREC - 1)).prop_map(|(lead, rest)| {
        let mut c = vec![lead];
        c.extend(rest);
        FracQSeries::from_ints(Q::zero(), &c).unwrap()
    })
}

fn rational_in(lo: i64, hi: i64) -> impl Strategy<Value = Q> {
    (1i64..=360).prop_flat_map(move |d| (lo * d..=hi * d).prop_map(move |n| q(n, d)))
}

fn small_coeffs(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=6, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()), a.mul(&b).add(&a.mul(&c)).unwrap());
        prop_assert_eq!(a.sub(&a).unwrap(), FracQSeries::zero(PREC));
    }

    #[test]
    fn mul_is_convolution(a in series(), b in series()) {
        let p = a.mul(&b);
        for n in 0..PREC {
            let direct: Q = (0..=n).map(|i| &a.coeffs()[i] * &b.coeffs()[n - i]).sum();
            prop_assert_eq!(&p.coeffs()[n], &direct);
        }
    }

    #[test]
    fn invert_two_sided(a in unit_series()) {
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.mul(&inv), FracQSeries::one(PREC));
        prop_assert_eq!(inv.mul(&a), FracQSeries::one(PREC));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn positivity_lemma(x in rational_in(0, 10)) {
        let f = positivity_f(&x);
        prop_assert!(f >= Q::zero(), "f({}) = {}", x, f);
        prop_assert_eq!(positivity_f(&(&x + qi(1))), f);
        prop_assert!(p2(&x) >= q(-1, 12));
        prop_assert_eq!(p2(&(&x + qi(1))), p2(&x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn duplication(delta in 1u64..=8, g_raw in 0u64..8, c in 1u64..=4) {
        let g = g_raw % delta;
        let lhs = gen_eta_series(delta, g, 40).dilate(c as usize).truncate(40);
        let rhs = gen_eta_series(c * delta, c * g, 40);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kronecker_multiplicative(
        m in prop::sample::select(vec![-3i64, -4, -7, -8, -24, 5, 8, 12, 13, 24]),
        a in -60i64..=60,
        b in -60i64..=60,
    ) {
        prop_assert_eq!(kronecker(m, a * b), kronecker(m, a) * kronecker(m, b));
    }

    #[test]
    fn trivial_twist_is_sigma(k in 0u32..=5, n in 1u64..=300) {
        let one = DirichletCharacter::TRIVIAL;
        prop_assert_eq!(sigma_twisted(k, &one, &one, n), sigma_u(k, n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn series_matches_oracle(sq in prop::collection::vec(1u64..=4, 0..=2), tri in small_coeffs(3)) {
        let spec = FormSpec::new(vec![], sq, tri, None).unwrap();
        let s = form_series(&spec, 41);
        for n in 0..=40u64 {
            prop_assert_eq!(s.coeffs()[n as usize].clone(), Q::from_integer(BigInt::from(count(&spec, n))), "n = {}", n);
        }
    }

    #[test]
    fn odd_square_bijection(c in small_coeffs(4), n in 0u64..=25) {
        prop_assert!(check_odd_square_bijection(&c, n));
    }

    #[test]
    fn squared_relations(c in small_coeffs(2), n in 0u64..=20) {
        prop_assert!(check_squared_odd(&c, n));
        prop_assert!(check_squared_convolution(&c, n));
    }

    #[test]
    fn weight_is_half_variable_count(tri in small_coeffs(6)) {
        let spec = FormSpec::triangular(&tri).unwrap();
        if let Ok(meta) = space_meta(&spec) {
            prop_assert_eq!(2 * meta.weight as usize, spec.variable_count());
        }
    }
}

#[test]
fn eta_inverse() {
    for delta in 1..=6 {
        let e = eta_series(delta, 50);
        assert_eq!(e.mul(&e.invert().unwrap()).coeffs(), FracQSeries::one(50).coeffs());
    }
}

#[test]
fn every_supported_basis() {
    for (k, n, d) in supported_spaces() {
        let b = match assemble_basis(k, n, d) {
            Ok(b) => b,
            Err(BasisError::IncompleteBasis { .. }) => continue,
            Err(e) => panic!("M{k}({n},{d}): {e}"),
        };
        let (e, s) = declared_dimensions(k, n, d).unwrap();
        assert_eq!(b.dim(), e + s, "{}", b.tag());
        for (label, col) in b.labels().iter().zip(b.columns(b.sturm() + 1).unwrap()).skip(e) {
            assert!(col[0].is_zero(), "{label} has a constant term");
        }
    }
}

#[test]
fn decomposition_round_trip_and_uniqueness() {
    for spec in ["tri=1^2 2 4", "sq=1 3; tri=2 6", "tri=1^5 3", "tri=1 3 4^2 6^2", "sq=1^2 2; tri=2^2 4"] {
        let spec: FormSpec = spec.parse().unwrap();
        let meta = space_meta(&spec).unwrap();
        let basis = assemble_basis(meta.weight, meta.level, meta.disc()).unwrap();
        let prec = 2 * basis.sturm() + 8;
        let (target, _) = normalized_form_series(&spec, prec).unwrap();
        let d = decompose(&target, &basis, prec).unwrap();
        assert_eq!(d.reconstruct(prec).unwrap(), target.truncate(prec), "{spec}");
        let later: Vec<usize> = (basis.sturm() / 2..basis.sturm() + basis.dim() + 4).collect();
        let mut rows: Vec<usize> = (0..basis.dim()).collect();
        rows.extend(later);
        assert_eq!(solve_on_rows(&target, &basis, &rows).unwrap(), d.coefficients(), "{spec}");
    }
}

#[test]
fn table_one_constant_balance() {
    let s: Q = [q(1, 120), q(-3, 40), q(-2, 15), q(6, 5)].into_iter().sum();
    assert!(s.is_one());
}
