use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Zero};
use polyadjoint_core::norms::{sup_norm, BallNorm, NormConfig};
use polyadjoint_core::{delta_apply, delta_materialize, HomPoly, PolyMap, Rational, Scalar, SizeCap};
use proptest::prelude::*;

fn naive_eval(p: &HomPoly<Rational>, x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (alpha, c) in p.terms() {
        let mut t = c.clone();
        for (xi, &a) in x.iter().zip(alpha.exponents()) {
            for _ in 0..a {
                t *= xi;
            }
        }
        acc += t;
    }
    acc
}

fn rat(v: i64) -> Rational {
    BigRational::from_integer(v.into())
}

fn poly(dim: usize, degree: u32, coeffs: &[i64]) -> HomPoly<Rational> {
    let n = polyadjoint_core::multi_index::basis_len(dim, degree);
    HomPoly::from_coeffs(dim, degree, coeffs.iter().cycle().take(n).map(|&c| rat(c)).collect()).unwrap()
}

fn small() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjoint_matches_direct_evaluation(
        d in 1usize..=3, e in 1usize..=3, m in 1u32..=2, n in 1u32..=2, k in 1u32..=2,
        pc in small(), qc in small(), xs in prop::collection::vec(-4i64..=4, 3),
    ) {
        let comps: Vec<_> = (0..e).map(|i| {
            let mut c = pc.clone();
            c.rotate_left(i % pc.len());
            poly(d, m, &c)
        }).collect();
        let p = PolyMap::new(comps.clone()).unwrap();
        let q = poly(e, k, &qc);
        let x: Vec<Rational> = xs[..d].iter().map(|&v| rat(v)).collect();
        let px: Vec<Rational> = comps.iter().map(|c| naive_eval(c, &x)).collect();
        let mut expected = Rational::one();
        let base = naive_eval(&q, &px);
        for _ in 0..n {
            expected *= &base;
        }
        let image = delta_apply(&p, n, k, &q).unwrap();
        prop_assert_eq!(image.degree(), m * n * k);
        prop_assert_eq!(naive_eval(&image, &x), expected.clone());
        let md = delta_materialize(&p, n, k, SizeCap::default()).unwrap();
        prop_assert_eq!(naive_eval(&md.apply(&q).unwrap(), &x), expected);
    }

    #[test]
    fn adjoint_scales_by_power(m in 1u32..=2, n in 1u32..=3, k in 1u32..=2, lam in -3i64..=3, pc in small(), qc in small()) {
        let p = PolyMap::new(vec![poly(2, m, &pc), poly(2, m, &qc)]).unwrap();
        let q = poly(2, k, &qc);
        let lhs = delta_apply(&p.scale(&rat(lam)), n, k, &q).unwrap();
        let rhs = delta_apply(&p, n, k, &q).unwrap().scale(&rat(lam).powu(k * n));
        prop_assert_eq!(lhs, rhs);
    }
}

fn cfg() -> NormConfig {
    NormConfig { restarts: 16, samples: 1 << 12, seed: 3, ..NormConfig::default() }
}

#[test]
fn linear_sup_norm_matches_largest_singular_value() {
    let cases: [&[&[f64]]; 4] = [
        &[&[1.0, 2.0], &[3.0, 4.0]],
        &[&[0.5, -1.5, 2.0], &[1.0, 0.25, -0.75]],
        &[&[2.0], &[-1.0], &[0.5]],
        &[&[1.0, 1.0, 1.0], &[1.0, -1.0, 0.0], &[0.0, 2.0, -3.0]],
    ];
    for rows in cases {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        let a = DMatrix::from_row_slice(rows.len(), rows[0].len(), &rows.concat());
        let sigma = a.singular_values().max();
        let est = sup_norm(&PolyMap::linear(&rows).unwrap(), &cfg()).unwrap();
        assert!((est.value - sigma).abs() <= 1e-9 * sigma, "{} vs {sigma}", est.value);
        assert!(est.lower_bound_certified);
        assert!(est.value <= est.upper_bound);
    }
}

#[test]
fn quadratic_sup_norm_matches_dense_grid() {
    // P(x, y) = (x^2 - 3xy, 2xy + y^2 / 2)
    let p = PolyMap::new(vec![
        HomPoly::from_coeffs(2, 2, vec![1.0, -3.0, 0.0]).unwrap(),
        HomPoly::from_coeffs(2, 2, vec![0.0, 2.0, 0.5]).unwrap(),
    ])
    .unwrap();
    let steps = 200_000;
    let grid = (0..steps)
        .map(|i| {
            let t = std::f64::consts::PI * i as f64 / steps as f64;
            let (x, y) = (t.cos(), t.sin());
            let (a, b) = (x * x - 3.0 * x * y, 2.0 * x * y + 0.5 * y * y);
            (a * a + b * b).sqrt()
        })
        .fold(0.0, f64::max);
    let est = sup_norm(&p, &cfg()).unwrap();
    assert!(est.value >= grid * (1.0 - 1e-12), "{} < {grid}", est.value);
    assert!(est.value <= grid * (1.0 + 1e-8), "{} > {grid}", est.value);
}

#[test]
fn linf_norm_of_linear_form_is_l1_of_weights() {
    let w = vec![1.5, -2.0, 0.25];
    let est = sup_norm(&PolyMap::linear(std::slice::from_ref(&w)).unwrap(), &NormConfig { ball: BallNorm::LInf, ..cfg() }).unwrap();
    assert!((est.value - 3.75).abs() <= 1e-12);
    assert!(est.heuristic);
}
