use nalgebra::DMatrix;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use rotweb::ckt::coefficients::CktCoefficients;
use rotweb::ckt::{assemble_ckt, killing_obstruction, trace_free_reduce, tsn_check, verify_ckt};
use rotweb::exactmath::{
    int, poly_gcd, rat, real_root_count, squarefree_decomposition, MultiPoly, Rational, RationalFunction, UniPoly,
};
use rotweb::group::{apply, apply_quartic, compose, from_gl2, inverse, substitute_f64, to_gl2, GroupElement, Mat2};
use rotweb::quartic::{classify_by_roots, hessian, invariants, root_structure, BinaryQuartic};
use rotweb::rotational::{
    assemble_rotational, cyclide_factored_residual, cyclide_surface_residual, eigenvalues_at, RotParams,
};
use rotweb::separability::{compatibility_form, dkdv_check, solve_compatible, Potential};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn small() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_small() -> impl Strategy<Value = Rational> {
    small().prop_filter("nonzero", |r| !r.is_zero())
}

fn uni(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|c| UniPoly::from_ints(&c))
}

fn params() -> impl Strategy<Value = RotParams> {
    prop::array::uniform6(-9i64..=9).prop_map(RotParams::from_ints)
}

fn quartic() -> impl Strategy<Value = BinaryQuartic> {
    prop::array::uniform5(-9i64..=9).prop_map(BinaryQuartic::from_ints).prop_filter("nonzero quartic", |q| !q.is_zero())
}

fn group_element() -> impl Strategy<Value = GroupElement> {
    (small(), small(), nonzero_small(), nonzero_small(), small(), any::<bool>())
        .prop_map(|(a0, a1, a2, a3, a4, d)| GroupElement::new(a0, a1, a2, a3, a4, d).unwrap())
}

fn linear_or_quadratic() -> impl Strategy<Value = UniPoly> {
    prop_oneof![
        (nonzero_small(), small()).prop_map(|(a, b)| UniPoly::new(vec![b, a])),
        (nonzero_small(), small(), small()).prop_map(|(a, b, c)| UniPoly::new(vec![c, b, a])),
    ]
}

/// Float oracle: companion eigenvalues, polished by Newton steps, counted as
/// real when the imaginary part is below 1e-9.
fn oracle_real_roots(p: &UniPoly) -> usize {
    let c: Vec<f64> = p.coeffs().iter().map(|r| r.to_f64().unwrap()).collect();
    let n = c.len() - 1;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / c[n];
    }
    let eig =
        nalgebra::Schur::try_new(m, f64::EPSILON, 10_000).expect("companion Schur converges").complex_eigenvalues();
    let eval = |z: num_complex::Complex64| c.iter().rev().fold(num_complex::Complex64::zero(), |acc, &a| acc * z + a);
    let deval = |z: num_complex::Complex64| {
        (1..=n).rev().fold(num_complex::Complex64::zero(), |acc, i| acc * z + c[i] * i as f64)
    };
    eig.iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..5 {
                let d = deval(z);
                if d.norm() > 0.0 {
                    z -= eval(z) / d;
                }
            }
            z
        })
        .filter(|z| z.im.abs() < 1e-9)
        .count()
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn gcd_divides_both(p in uni(5), q in uni(5)) {
        prop_assume!(!p.is_zero() || !q.is_zero());
        let g = poly_gcd(&p, &q).unwrap();
        prop_assert!(g.divides(&p) && g.divides(&q));
        let bound = p.degree().unwrap_or(usize::MAX).min(q.degree().unwrap_or(usize::MAX));
        prop_assert!(g.degree().unwrap() <= bound);
    }

    #[test]
    fn squarefree_reassembles(factors in prop::collection::vec((linear_or_quadratic(), 1u32..=3), 1..=3)) {
        let p = factors.iter().fold(UniPoly::constant(int(1)), |acc, (f, e)| &acc * &f.pow(*e));
        let back = squarefree_decomposition(&p)
            .unwrap()
            .iter()
            .fold(UniPoly::constant(int(1)), |acc, (f, e)| &acc * &f.pow(*e));
        let ratio = p.leading().unwrap() / back.leading().unwrap();
        prop_assert_eq!(back.scale(&ratio), p);
    }

    #[test]
    fn real_root_count_matches_oracle(c in prop::array::uniform5(-20i64..=20)) {
        prop_assume!(c[4] != 0);
        let p = UniPoly::from_ints(&c);
        prop_assume!(poly_gcd(&p, &p.derivative()).unwrap().degree() == Some(0));
        prop_assert_eq!(real_root_count(&p).unwrap(), oracle_real_roots(&p));
    }

    #[test]
    fn trace_free_reduction_gives_traceless_ckt(v in prop::collection::vec(-3i64..=3, 35)) {
        let coords: Vec<Rational> = v.into_iter().map(int).collect();
        let c = CktCoefficients::from_free_coordinates(&coords).unwrap();
        let reduced = trace_free_reduce(&c).unwrap();
        let k = assemble_ckt(&reduced).unwrap();
        prop_assert!(k.trace().is_zero());
        prop_assert!(verify_ckt(&k).holds);
    }

    #[test]
    fn tsn_ignores_metric_multiples(p in params(), f in prop::array::uniform4(-5i64..=5)) {
        let [x, y, z] = MultiPoly::coords();
        let shift = &(&x.scale(&int(f[0])) + &(&y * &z).scale(&int(f[1]))) + &(&z * &z).scale(&int(f[2]));
        let shift = &shift + &MultiPoly::constant(int(f[3]));
        let k = assemble_rotational(&p);
        prop_assert_eq!(tsn_check(&k), tsn_check(&k.plus_metric_multiple(&shift)));
    }

    #[test]
    fn cyclide_identity_holds(p in params(), h in small(), pt in prop::array::uniform3(small())) {
        let rho2 = &pt[0] * &pt[0] + &pt[1] * &pt[1];
        prop_assume!(!rho2.is_zero());
        let factored = cyclide_factored_residual(&p, &h, &pt).unwrap();
        prop_assert_eq!(cyclide_surface_residual(&p, &h, &pt) * rho2, factored);
    }

    #[test]
    fn c33_does_not_change_the_web(p in params(), c in small()) {
        let mut shifted = p.clone();
        shifted.c33 = c;
        prop_assert_eq!(p.quartic(), shifted.quartic());
    }

    #[test]
    fn group_action_laws(q in quartic(), g in group_element()) {
        let image = apply_quartic(&g, &q).unwrap();
        let (a, b) = (invariants(&q), invariants(&image));
        prop_assert_eq!(&b.i, &(&g.a3 * &g.a3 * &a.i));
        prop_assert_eq!(&b.j, &(&g.a3 * &g.a3 * &g.a3 * &a.j));
        if !a.j.is_zero() {
            prop_assert_eq!(a.f, b.f);
        }
        prop_assert_eq!(classify_by_roots(&q).unwrap(), classify_by_roots(&image).unwrap());
    }

    #[test]
    fn composition_acts_consistently(p in params(), g1 in group_element(), g2 in group_element()) {
        let direct = apply(&g1, &apply(&g2, &p).unwrap()).unwrap();
        prop_assert_eq!(apply(&compose(&g1, &g2).unwrap(), &p).unwrap(), direct);
        let back = apply(&inverse(&g1).unwrap(), &apply(&g1, &p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn gl2_round_trip(g in group_element()) {
        prop_assume!(g.a3.is_positive());
        let q = BinaryQuartic::from_ints([1, -2, 3, 5, -1]);
        let m = to_gl2(&g).unwrap();
        let via_matrix = substitute_f64(&q.to_f64(), &m);
        let via_action = apply_quartic(&g, &q).unwrap().to_f64();
        for (a, b) in via_matrix.iter().zip(&via_action) {
            prop_assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
        }
        let exact = Mat2::new(g.a2.clone(), g.a0.clone(), g.a1.clone(), int(1));
        prop_assume!(!exact.determinant().is_zero());
        let h = from_gl2(&exact).unwrap();
        prop_assert_eq!(apply_quartic(&h, &q).unwrap(), rotweb::group::substitute(&q, &exact));
        let back = to_gl2(&h).unwrap();
        let e = exact.to_f64();
        let sign = if (back.alpha * e.alpha + back.beta * e.beta + back.gamma * e.gamma + back.delta * e.delta) < 0.0 { -1.0 } else { 1.0 };
        for (a, b) in [(back.alpha, e.alpha), (back.beta, e.beta), (back.gamma, e.gamma), (back.delta, e.delta)] {
            prop_assert!((sign * a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn discriminant_detects_repeated_roots(q in prop::array::uniform5(-3i64..=3)) {
        let q = BinaryQuartic::from_ints(q);
        prop_assume!(!q.is_zero());
        let s = root_structure(&q).unwrap();
        prop_assert_eq!(invariants(&q).delta.is_zero(), s.has_repeated_root());
        prop_assert_eq!(hessian(&q).is_zero(), s.is_quadruple());
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn compatible_members_are_closed(c in 1i64..=3) {
        let pot = Potential::toroidal_example(&int(c));
        for b in solve_compatible(&pot).unwrap().basis {
            prop_assert!(rotweb::ckt::is_closed(&compatibility_form(&b, &pot).unwrap()));
        }
    }

    #[test]
    fn solution_space_ignores_representation(a in 1i64..=4, b in -3i64..=3) {
        let [x, _, z] = MultiPoly::coords();
        let base = Potential::toroidal_example(&int(1));
        let common = &(&x * &x) + &(&z.scale(&int(b)) + &MultiPoly::constant(int(a)));
        let num = base.v.numerator() * &common;
        let den = base.v.denominator() * &common;
        let inflated = Potential::new(RationalFunction::new(num, den).unwrap(), base.energy.clone());
        let (s0, s1) = (solve_compatible(&base).unwrap(), solve_compatible(&inflated).unwrap());
        prop_assert_eq!(s0.dimension(), s1.dimension());
        prop_assert!(s0.basis.iter().all(|p| s1.contains(p)));
    }

    #[test]
    fn killing_paths_agree(tail in prop::array::uniform4(-9i64..=9), v in prop::array::uniform3(-3i64..=3)) {
        let p = RotParams::from_ints([0, 0, tail[0], tail[1], tail[2], tail[3]]);
        let k = assemble_rotational(&p);
        prop_assert!(killing_obstruction(&k).unwrap().is_zero());
        let [x, y, z] = MultiPoly::coords();
        let rho2 = &(&x * &x) + &(&y * &y);
        let poly = &(&rho2.scale(&int(v[0])) + &(&z * &z).scale(&int(v[1]))) + &z.scale(&int(v[2]));
        let vf = RationalFunction::polynomial(poly);
        let via_dkdv = dkdv_check(&k, &vf).unwrap();
        let phi = rotweb::separability::homotopy_potential(&verify_ckt(&k).k);
        let killing = k.plus_metric_multiple(&-&phi);
        let form = killing.apply_form(&rotweb::ckt::OneForm::gradient(&vf));
        prop_assert_eq!(via_dkdv, rotweb::ckt::is_closed(&form));
    }
}

#[test]
fn on_axis_eigenvalues_coincide_at_roots() {
    use rotweb::rotational::catalog::catalog;
    use rotweb::rotational::singular_polynomial;
    let mut checked = 0;
    for row in catalog() {
        for z in singular_polynomial(&row.params).rational_roots().unwrap_or_default() {
            let ev = eigenvalues_at(&row.params, &[int(0), int(0), z]).unwrap();
            assert!(ev.lambda1.is_zero() && ev.a.is_zero() && ev.b.is_zero(), "{}", row.name);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn killing_obstruction_vanishes_exactly_on_killing_blocks() {
    let mut c = CktCoefficients::zero();
    c.a[0][0] = int(2);
    c.a[1][2] = int(1);
    c.a[2][1] = int(1);
    c.b[0][1] = int(3);
    c.c[2][2] = int(-1);
    assert!(killing_obstruction(&assemble_ckt(&c).unwrap()).unwrap().is_zero());
    for offset in [22, 30] {
        let mut v = vec![int(0); 35];
        v[offset] = int(1);
        let k = assemble_ckt(&CktCoefficients::from_free_coordinates(&v).unwrap()).unwrap();
        assert!(!killing_obstruction(&k).unwrap().is_zero(), "offset {offset}");
    }
}
