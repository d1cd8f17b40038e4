use biquotient::algebra::{haar_unitary, CMatrix, LieVector, Quaternion};
use biquotient::cheeger::{self, PairKind, SymmetricPairContext, Tolerances};
use biquotient::eschenburg::{self, EschParams, LocusKind};
use biquotient::{bazaikin, torus};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn pair_strategy() -> impl Strategy<Value = PairKind> {
    prop_oneof![
        Just(PairKind::Su3U2),
        Just(PairKind::Su5U4),
        Just(PairKind::S3S3Diag)
    ]
}

fn template(pair: PairKind) -> LieVector<f64> {
    match pair.matrix_dim() {
        Some(n) => LieVector::i_diag(&vec![0.0; n]),
        None => LieVector::quat_pair(Quaternion::zero(), Quaternion::zero()),
    }
}

fn random_vector(pair: PairKind, rng: &mut ChaCha8Rng) -> LieVector<f64> {
    let t = template(pair);
    let n = t.basis_like().len();
    let coords: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    LieVector::from_coordinates(&t, &coords)
}

fn close(a: &LieVector<f64>, b: &LieVector<f64>, tol: f64) -> bool {
    a.sub(b).unwrap().norm() <= tol * (1.0 + a.norm() + b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_identity(pair in pair_strategy(), seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (random_vector(pair, &mut r), random_vector(pair, &mut r), random_vector(pair, &mut r));
        let j = x.bracket(&y.bracket(&z).unwrap()).unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap()).unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap()).unwrap();
        prop_assert!(j.norm() < 1e-10 * (1.0 + x.norm() * y.norm() * z.norm()));
        prop_assert!(close(&x.bracket(&y).unwrap(), &y.bracket(&x).unwrap().scale(-1.0), 1e-14));
    }

    #[test]
    fn inner0_is_bi_invariant(n in 3usize..=5, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let pair = if n == 3 { PairKind::Su3U2 } else { PairKind::Su5U4 };
        let n = pair.matrix_dim().unwrap();
        let (x, y, z) = (random_vector(pair, &mut r), random_vector(pair, &mut r), random_vector(pair, &mut r));
        let g: CMatrix<f64> = haar_unitary(n, &mut r).unwrap();
        let lhs = x.ad(&g).unwrap().inner0(&y.ad(&g).unwrap()).unwrap();
        prop_assert!((lhs - x.inner0(&y).unwrap()).abs() < 1e-9 * (1.0 + x.norm() * y.norm()));
        // ad-invariance: <[x,y],z> = <x,[y,z]>
        let a = x.bracket(&y).unwrap().inner0(&z).unwrap();
        let b = x.inner0(&y.bracket(&z).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-9 * (1.0 + x.norm() * y.norm() * z.norm()));
    }

    #[test]
    fn symmetric_pair_splitting(pair in pair_strategy(), lambda in 0.05f64..0.95, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let ctx = SymmetricPairContext::new(pair, lambda).unwrap();
        let (x, y) = (random_vector(pair, &mut r), random_vector(pair, &mut r));
        let (xk, xp) = ctx.split(&x).unwrap();
        let (_, yp) = ctx.split(&y).unwrap();
        prop_assert!(xk.inner0(&xp).unwrap().abs() < 1e-10 * (1.0 + x.norm_sqr()));
        // [p, p] ⊂ k and [k, p] ⊂ p
        let (pk, pp) = ctx.split(&xp.bracket(&yp).unwrap()).unwrap();
        prop_assert!(pp.norm() < 1e-10 * (1.0 + pk.norm()));
        let (mk, _) = ctx.split(&xk.bracket(&yp).unwrap()).unwrap();
        prop_assert!(mk.norm() < 1e-10 * (1.0 + x.norm() * y.norm()));
        prop_assert!(close(&ctx.phi(&ctx.phi_inv(&x).unwrap()).unwrap(), &x, 1e-12));
        let s1 = ctx.inner1(&x, &y).unwrap();
        let s2 = ctx.inner1(&y, &x).unwrap();
        prop_assert!((s1 - s2).abs() < 1e-10 * (1.0 + x.norm() * y.norm()));
        prop_assert!(ctx.inner1(&x, &x).unwrap() > 0.0);
    }

    #[test]
    fn horizontal_lift_is_isometric(pair in pair_strategy(), lambda in 0.05f64..0.95, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let ctx = SymmetricPairContext::new(pair, lambda).unwrap();
        let w = random_vector(pair, &mut r);
        let (x, z) = ctx.horizontal_lift(&w).unwrap();
        // it lifts w, and is orthogonal to the kernel {(V, V)}
        prop_assert!(close(&x.sub(&z).unwrap(), &w, 1e-12));
        let (xk, _) = ctx.split(&x).unwrap();
        let ortho = xk.add(&z.scale(ctx.t())).unwrap();
        prop_assert!(ortho.norm() < 1e-10 * (1.0 + w.norm()));
        let n = ctx.product_norm(&x, &z);
        prop_assert!((n * n - ctx.inner1(&w, &w).unwrap()).abs() < 1e-9 * (1.0 + w.norm_sqr()));
    }

    #[test]
    fn flat_partners_are_flat(pair in pair_strategy(), lambda in 0.1f64..0.9, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let ctx = SymmetricPairContext::new(pair, lambda).unwrap();
        let y = match pair.matrix_dim() {
            Some(n) => {
                let d: Vec<f64> = (0..n).map(|i| i as f64 - (n as f64 - 1.0) / 2.0).collect();
                LieVector::i_diag(&d)
            }
            None => LieVector::quat_pair(Quaternion::random_unit_imag(&mut r), Quaternion::zero()),
        };
        let partners = cheeger::flat_partners(&ctx, &y, std::slice::from_ref(&y)).unwrap();
        prop_assert!(!partners.is_empty());
        for x in &partners {
            prop_assert!(cheeger::plane_zero_curvature(&ctx, x, &y).unwrap());
            prop_assert!(cheeger::lifted_bracket_oracle(&ctx, x, &y).unwrap());
        }
    }

    #[test]
    fn eschenburg_class_is_symmetric(p in prop::array::uniform3(-5i64..=5), q0 in -5i64..=5, q1 in -5i64..=5) {
        let q2 = p.iter().sum::<i64>() - q0 - q1;
        let params = EschParams::new(p, [q0, q1, q2]).unwrap();
        prop_assume!(eschenburg::is_free(&params));
        let class = eschenburg::classify_curvature(&params).unwrap().class;
        for img in params.orbit() {
            prop_assert_eq!(eschenburg::classify_curvature(&img).unwrap().class, class);
        }
        prop_assert_eq!(eschenburg::classify_curvature(&params.shifted(7)).unwrap().class, class);
    }

    #[test]
    fn bazaikin_class_is_symmetric(q in prop::array::uniform5((-5i64..=5).prop_map(|x| 2 * x + 1))) {
        let params = bazaikin::BazParams::new(q).unwrap();
        prop_assume!(bazaikin::is_free(&params).unwrap());
        let cls = bazaikin::classify_curvature(&params).unwrap();
        let inv = bazaikin::invariants(&params).ok();
        for s in biquotient::algebra::permutations(5) {
            for img in [params.permuted(&s), params.permuted(&s).negated()] {
                let other = bazaikin::classify_curvature(&img).unwrap();
                prop_assert_eq!(other.class, cls.class);
                prop_assert_eq!(other.boundary_n, cls.boundary_n);
                prop_assert_eq!(bazaikin::invariants(&img).ok(), inv);
            }
        }
    }

    #[test]
    fn quaternion_norm_is_multiplicative(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let a: Quaternion<f64> = Quaternion::random_unit(&mut r).scale(2.5);
        let b: Quaternion<f64> = Quaternion::random_unit(&mut r).scale(0.3);
        prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-12);
        let u = torus::adjoint_i(&a.normalized()).unwrap();
        prop_assert!(u.is_imaginary() && (u.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn f32_pipeline_smoke() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let ctx = SymmetricPairContext::<f32>::default_for(PairKind::Su3U2);
    let tol = Tolerances::<f32>::default();
    let e0 = eschenburg::e0();
    let a: CMatrix<f32> = eschenburg::zero_locus_point(&e0, LocusKind::E0Det, &mut r).unwrap();
    let (found, rep) = eschenburg::has_horizontal_zero_plane(&e0, &a, &ctx, &tol).unwrap();
    assert!(found);
    assert!(rep.witness.unwrap().validated);
    let b: CMatrix<f32> = haar_unitary(3, &mut r).unwrap();
    let range = eschenburg::y1_range(&eschenburg::w11(), &b);
    let r64 = eschenburg::y1_range(
        &eschenburg::w11(),
        &CMatrix::from_fn(3, |i, j| {
            let z = b[(i, j)];
            num_complex::Complex::new(z.re as f64, z.im as f64)
        }),
    );
    assert!((range.min as f64 - r64.min).abs() < 1e-4);

    let bp = bazaikin::BazParams::new([1, 1, 1, 1, -1]).unwrap();
    let ctx5 = SymmetricPairContext::<f32>::default_for(PairKind::Su5U4);
    let a5: CMatrix<f32> = bazaikin::a55_locus_point(&mut r).unwrap();
    let (found, rep) = bazaikin::has_horizontal_zero_plane(&bp, &a5, &ctx5, &tol).unwrap();
    assert!(found && rep.witness.unwrap().validated);

    let act = torus::TorusAction::Ab { a: 1, b: 1 };
    let (q1, q2) = torus::hypersurface_point::<f32, _>(&mut r);
    assert_ne!(
        torus::zero_plane_status(&act, &q1, &q2).unwrap(),
        torus::ZeroPlaneStatus::None
    );
}
