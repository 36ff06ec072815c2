//! Acceptance suite: one PASS/FAIL line per criterion, with timings.
//!
//! Run with `cargo test -p rotweb --test acceptance`. The process exits
//! non-zero when any criterion fails.

use std::time::{Duration, Instant};

use nalgebra::{DMatrix, Matrix3, SymmetricEigen};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rotweb::ckt::basis::expected_commutator;
use rotweb::ckt::symmetry::{span_rank, trace_free_coordinates};
use rotweb::ckt::{
    assemble_ckt, ckt_dimension, killing_obstruction, lie_derivative, scan_symmetry, symmetry_subspace, tsn_check,
    tsn_filter, Ckv, SymTensorField, SymmetryMode, VectorField,
};
use rotweb::exactmath::{int, rat, MultiPoly, Rational};
use rotweb::group::{apply, covariance_residual, GroupElement};
use rotweb::quartic::{
    classify_by_invariants, classify_by_roots, covariant_l, form_sign, hessian, invariants, root_structure,
    BinaryQuartic, FormSign, WebType,
};
use rotweb::rotational::catalog::{check_catalog, Catalog};
use rotweb::rotational::{
    assemble_rotational, eigenvalues_at, extract_parameters, rotational_eigencondition, singular_polynomial, RotParams,
};
use rotweb::separability::{classify_potential, solve_compatible, Potential};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_params(r: &mut ChaCha8Rng, bound: i64) -> RotParams {
    RotParams::from_ints(std::array::from_fn(|_| r.gen_range(-bound..=bound)))
}

fn nonzero(r: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = r.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-6..=6), r.gen_range(1..=4))
}

fn random_group_element(r: &mut ChaCha8Rng) -> GroupElement {
    GroupElement::new(
        small_rational(r),
        small_rational(r),
        rat(nonzero(r, 5), r.gen_range(1..=3)),
        rat(nonzero(r, 5), r.gen_range(1..=3)),
        small_rational(r),
        r.gen_bool(0.5),
    )
    .expect("a₂ and a₃ are nonzero")
}

fn c1_dimensions() -> Outcome {
    let d = ckt_dimension(3, 2).map_err(|e| e.to_string())?;
    ensure(d.to_string() == "35", || format!("ckt_dimension(3,2) = {d}"))?;
    let d1 = ckt_dimension(3, 1).map_err(|e| e.to_string())?;
    ensure(d1.to_string() == "10", || format!("ckt_dimension(3,1) = {d1}"))?;

    let fields: Vec<(Ckv, VectorField)> = Ckv::ALL.iter().map(|&c| (c, c.field())).collect();
    ensure(fields.len() == 10, || format!("{} conformal Killing vectors", fields.len()))?;
    for (c, v) in &fields {
        ensure(v.conformal_factor().is_some(), || format!("{c:?} is not conformal"))?;
    }
    let mut entries = 0;
    for (a, va) in &fields {
        for (b, vb) in &fields {
            let expected = expected_commutator(*a, *b)
                .into_iter()
                .fold(VectorField::zero(), |acc, (coef, c)| &acc + &c.field().scale(&coef));
            ensure(va.commutator(vb) == expected, || format!("[{a:?}, {b:?}] differs from the table"))?;
            entries += 1;
        }
    }
    Ok(format!("d = 35, 10 CKVs, {entries} commutator entries"))
}

fn random_metric_multiple(r: &mut ChaCha8Rng) -> MultiPoly {
    let mut terms = Vec::new();
    for i in 0..=2u32 {
        for j in 0..=(2 - i) {
            for k in 0..=(2 - i - j) {
                terms.push(([i, j, k], int(r.gen_range(-9..=9))));
            }
        }
    }
    MultiPoly::from_terms(terms)
}

fn c2_rotational_family() -> Outcome {
    let mut r = rng(2);
    let r3 = Ckv::R(2).field();
    let mut tsn_time = Duration::ZERO;
    for n in 0..1000 {
        let p = random_params(&mut r, 9);
        let k = assemble_rotational(&p);
        ensure(lie_derivative(&r3, &k).is_zero(), || format!("case {n}: ℒ_R₃K ≠ 0 for {p}"))?;
        let t = Instant::now();
        let normal = tsn_check(&k);
        tsn_time += t.elapsed();
        ensure(normal, || format!("case {n}: TSN fails for {p}"))?;
        ensure(rotational_eigencondition(&k), || format!("case {n}: R₃ is not an eigenvector for {p}"))?;
        let back = extract_parameters(&k).map_err(|e| format!("case {n}: {e}"))?;
        ensure(back == p, || format!("case {n}: extracted {back} from {p}"))?;
        let shifted = k.plus_metric_multiple(&random_metric_multiple(&mut r));
        let back = extract_parameters(&shifted).map_err(|e| format!("case {n} (shifted): {e}"))?;
        ensure(back == p, || format!("case {n}: extracted {back} after metric shift of {p}"))?;
    }
    Ok(format!("1000 cases; tsn_check total {:.2?}", tsn_time))
}

fn expected_catalog_type(name: &str) -> Option<WebType> {
    use WebType::*;
    Some(match name {
        "Bi-cyclide" => BiCyclide,
        "Flat-ring cyclide" | "Cap cyclide" => FlatRingCyclide,
        "Disk cyclide" => DiskCyclide,
        "Toroidal" => Toroidal,
        "Bispherical" | "Spherical" => Bispherical,
        "Inverse prolate spheroidal" | "Prolate spheroidal" => InverseProlateSpheroidal,
        "Inverse oblate spheroidal" | "Oblate spheroidal" => InverseOblateSpheroidal,
        "Tangent spheres" | "Circular cylindrical" => TangentSphere,
        "Cardioid" | "Parabolical" => Cardioid,
        _ => return None,
    })
}

fn c3_catalog() -> Outcome {
    let catalog = Catalog::builtin();
    let mut summary = Vec::new();
    for overrides in [vec![], vec!["a=2", "k=1/3"]] {
        let scales = catalog
            .default_scales()
            .and_then(|s| s.with_overrides(overrides.iter().copied()))
            .map_err(|e| e.to_string())?;
        let entries = catalog.instantiate(&scales).map_err(|e| e.to_string())?;
        ensure(entries.len() == 15, || format!("{} catalog rows", entries.len()))?;
        let checks = check_catalog(&entries);
        let mut equivalences = 0;
        for c in &checks {
            let oracle = expected_catalog_type(&c.name).ok_or_else(|| format!("unknown row {}", c.name))?;
            ensure(c.classified_type == Some(oracle), || {
                format!("{}: classified {:?}, expected {oracle:?}", c.name, c.classified_type)
            })?;
            ensure(c.passes(), || format!("{}: row check failed: {:?}", c.name, c.error))?;
            if let Some(target) = &c.equivalent_to {
                equivalences += 1;
                ensure(expected_catalog_type(target) == Some(oracle), || format!("{} ≁ {target}", c.name))?;
                let w = c.witness.as_ref().ok_or_else(|| format!("{}: no witness", c.name))?;
                ensure(w.holds, || format!("{}: witness fails: {}", c.name, w.detail))?;
                let discrete_row = entries.iter().any(|e| {
                    e.name == c.name && e.equivalence.as_ref().is_some_and(|q| q.transformation == "discrete inversion")
                });
                ensure(!discrete_row || w.kind == "exact", || {
                    format!("{}: discrete row needs an exact witness", c.name)
                })?;
            }
        }
        ensure(equivalences == 6, || format!("{equivalences} equivalences"))?;
        summary.push(format!(
            "[{}] 15/15 rows, 6 witnesses",
            if overrides.is_empty() { "a=1,k=1/2" } else { "a=2,k=1/3" }
        ));
    }
    Ok(summary.join(" "))
}

fn c4_toroidal_potential() -> Outcome {
    let pot = Potential::toroidal_example(&int(1));
    let sol = solve_compatible(&pot).map_err(|e| e.to_string())?;
    let h_member = RotParams::from_array([rat(1, 2), int(0), int(1), int(0), int(0), rat(1, 2)]);
    let c_member = RotParams::from_ints([0, 0, 0, 1, 0, 0]);
    ensure(sol.dimension() == 2, || format!("solution dimension {}", sol.dimension()))?;
    ensure(sol.contains(&h_member) && sol.contains(&c_member), || "family mismatch".into())?;

    let q = BinaryQuartic::new([rat(1, 2), int(0), int(1), int(0), rat(1, 2)]);
    let inv = invariants(&q);
    ensure(inv.i == int(4) && inv.j == int(16) && inv.delta.is_zero(), || format!("invariants {inv:?}"))?;
    ensure(covariant_l(&q).is_zero(), || "L-covariant nonzero".into())?;
    let h = hessian(&q);
    ensure(h == BinaryQuartic::from_ints([12, 0, 24, 0, 12]), || format!("Hessian {:?}", h.coeffs()))?;
    let sign = form_sign(h.form()).map_err(|e| e.to_string())?;
    ensure(sign == FormSign::PsdNonzero, || format!("Hessian sign {sign:?}"))?;

    let cls = classify_potential(&pot).map_err(|e| e.to_string())?;
    ensure(cls.web_type == Some(WebType::Toroidal), || format!("classified {:?}", cls.web_type))?;
    let found = cls.quartic.ok_or("no quartic")?;
    let normalized = found.scale(&found.coeff(2).recip());
    ensure(normalized == q, || format!("normalized quartic {:?}", normalized.coeffs()))?;
    Ok("family {(H/2,0,H,C₃₃,0,H/2)}, I=4, J=16, Δ=0, Toroidal".into())
}

fn c5_group_laws() -> Outcome {
    let mut r = rng(5);
    let inversion = GroupElement::sphere_inversion();
    let mut f_checks = 0;
    for n in 0..1000 {
        let p = random_params(&mut r, 9);
        if p.quartic().is_zero() {
            continue;
        }
        let g = random_group_element(&mut r);
        let image = apply(&g, &p).map_err(|e| format!("case {n}: {e}"))?;
        for _ in 0..3 {
            let z = small_rational(&mut r);
            match covariance_residual(&g, &p, &z) {
                Ok(res) => ensure(res.is_zero(), || format!("case {n}: residual {res} at z = {z}"))?,
                Err(_) => continue,
            }
        }
        let (before, after) = (invariants(&p.quartic()), invariants(&image.quartic()));
        let a3 = &g.a3;
        ensure(after.i == a3 * a3 * &before.i, || format!("case {n}: I scaling"))?;
        ensure(after.j == a3 * a3 * a3 * &before.j, || format!("case {n}: J scaling"))?;
        if !before.j.is_zero() {
            f_checks += 1;
            ensure(after.f == before.f, || format!("case {n}: F changed"))?;
        }
        let (s0, s1) = (
            root_structure(&p.quartic()).map_err(|e| e.to_string())?,
            root_structure(&image.quartic()).map_err(|e| e.to_string())?,
        );
        ensure(s0.real_multiplicities() == s1.real_multiplicities() && s0.complex_pairs == s1.complex_pairs, || {
            format!("case {n}: root partition changed")
        })?;
        let inv = invariants(&apply(&inversion, &p).map_err(|e| e.to_string())?.quartic());
        ensure(inv.i == before.i && inv.j == before.j, || format!("case {n}: discrete inversion moved I, J"))?;
    }
    Ok(format!("1000 cases, {f_checks} with J ≠ 0"))
}

/// One representative per type, written through its roots on ℝP¹.
fn representative(t: WebType) -> BinaryQuartic {
    use WebType::*;
    BinaryQuartic::from_ints(match t {
        BiCyclide => [1, 0, -5, 0, 4],
        FlatRingCyclide => [1, 0, 5, 0, 4],
        DiskCyclide => [1, 0, 0, 0, -1],
        InverseProlateSpheroidal => [1, 0, -1, 0, 0],
        InverseOblateSpheroidal => [1, 0, 1, 0, 0],
        Toroidal => [1, 0, 2, 0, 1],
        Bispherical => [1, 0, -2, 0, 1],
        Cardioid => [1, -1, 0, 0, 0],
        TangentSphere => [1, 0, 0, 0, 0],
    })
}

/// Eigenvalues of the companion matrix; a random similarity is applied when
/// the plain Schur iteration stalls.
fn companion_roots(coeffs_low_first: &[f64]) -> Vec<(f64, f64)> {
    let n = coeffs_low_first.len() - 1;
    let lead = coeffs_low_first[n];
    let mut c = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        c[(i, n - 1)] = -coeffs_low_first[i] / lead;
    }
    let mut r = rng(99);
    let mut m = c.clone();
    for _ in 0..20 {
        if let Some(s) = nalgebra::Schur::try_new(m.clone(), f64::EPSILON, 5000) {
            return s.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect();
        }
        let p = DMatrix::<f64>::from_fn(n, n, |i, j| if i == j { 1.0 } else { r.gen_range(-0.5..0.5) });
        let pinv = p.clone().try_inverse().expect("near-identity matrix is invertible");
        m = &p * &c * pinv;
    }
    panic!("companion eigenvalues did not converge");
}

fn float_type(q: &BinaryQuartic) -> WebType {
    let c = q.to_f64();
    let low_first: Vec<f64> = c.iter().rev().copied().collect();
    let mut deg = 4;
    while low_first[deg] == 0.0 {
        deg -= 1;
    }
    let roots = companion_roots(&low_first[..=deg]);
    let scale = roots.iter().fold(1.0f64, |m, &(re, im)| m.max(re.hypot(im)));
    let real = roots.iter().filter(|&&(_, im)| im.abs() <= 1e-7 * scale).count() + (4 - deg);
    match real {
        4 => WebType::BiCyclide,
        2 => WebType::DiskCyclide,
        0 => WebType::FlatRingCyclide,
        other => panic!("odd number {other} of real roots"),
    }
}

fn c6_cross_validation() -> Outcome {
    let mut r = rng(6);
    let mut recovered = 0;
    let mut disagreements = Vec::new();
    for t in WebType::ALL {
        let rep = representative(t);
        for _ in 0..100 {
            let g = random_group_element(&mut r);
            let q = rotweb::group::apply_quartic(&g, &rep).map_err(|e| e.to_string())?;
            let by_roots = classify_by_roots(&q).map_err(|e| e.to_string())?;
            if by_roots == t {
                recovered += 1;
            }
            let by_table = classify_by_invariants(&q).map(|c| c.web_type);
            if by_table.as_ref().ok() != Some(&Some(by_roots)) {
                disagreements.push(serde_json::json!({
                    "quartic": q,
                    "roots": by_roots.label(),
                    "table": by_table.map(|t| format!("{t:?}")).unwrap_or_else(|e| e.to_string()),
                }));
            }
        }
    }
    for d in &disagreements {
        println!("    audit finding: {d}");
    }
    ensure(recovered == 900, || format!("roots recovered {recovered}/900"))?;
    ensure(disagreements.is_empty(), || format!("{} invariant-table findings (listed above)", disagreements.len()))?;

    let mut checked = 0;
    while checked < 1000 {
        let q = BinaryQuartic::from_ints(std::array::from_fn(|_| r.gen_range(-9..=9)));
        if q.is_zero() || invariants(&q).delta.is_zero() {
            continue;
        }
        let exact = classify_by_roots(&q).map_err(|e| e.to_string())?;
        let float = float_type(&q);
        ensure(exact == float, || format!("{:?}: exact {exact:?}, float {float:?}", q.coeffs()))?;
        checked += 1;
    }
    Ok("900/900 by roots, 0 invariant-table findings, 1000/1000 float agreement".to_string())
}

/// The reference translation-invariant family, with the symmetry axis moved
/// from the first coordinate to the third: `(x, y, z) ↦ (z, x, y)`.
fn reference_x_family() -> Vec<SymTensorField> {
    let [x, y, _] = MultiPoly::coords();
    let c = |v: i64| MultiPoly::constant(int(v));
    let q = |n: i64, d: i64| rat(n, d);
    // (K₁₁, K₂₂, K₃₃, K₂₃) in the reference frame with transverse coordinates (u, v) = (x, y).
    let members: Vec<[MultiPoly; 4]> = vec![
        [c(-1), c(1), c(0), c(0)],
        [c(-1), c(0), c(1), c(0)],
        [c(0), c(0), c(0), c(1)],
        [y.scale(&q(1, 2)), y.scale(&int(-1)), y.scale(&q(1, 2)), x.scale(&q(3, 4))],
        [x.scale(&q(-1, 2)), x.scale(&q(-1, 2)), x.clone(), y.scale(&q(-3, 4))],
        [
            &(&x * &x) + &(&y * &y),
            &(&x * &x) - &(&y * &y).scale(&int(2)),
            &(&y * &y) - &(&x * &x).scale(&int(2)),
            (&x * &y).scale(&int(3)),
        ],
    ];
    members
        .into_iter()
        .map(|[k11, k22, k33, k23]| {
            SymTensorField::from_fn(|i, j| match (i, j) {
                (2, 2) => k11.clone(),
                (0, 0) => k22.clone(),
                (1, 1) => k33.clone(),
                (0, 1) | (1, 0) => k23.clone(),
                _ => MultiPoly::zero(),
            })
        })
        .collect()
}

fn c7_symmetry() -> Outcome {
    let r3 = Ckv::R(2).field();
    let rot = symmetry_subspace(&r3, SymmetryMode::HZero).map_err(|e| e.to_string())?;
    let rot_dim = rot[0].basis.len();
    ensure(rot_dim == 9, || format!("R₃ kernel dimension {rot_dim}"))?;
    let filtered = tsn_filter(&r3, &rot[0].basis).map_err(|e| e.to_string())?;
    ensure(filtered.dimension == Some(6), || format!("TSN-filtered dimension {:?}", filtered.dimension))?;

    let x3 = symmetry_subspace(&Ckv::X(2).field(), SymmetryMode::HZero).map_err(|e| e.to_string())?;
    let mut coords = Vec::new();
    for b in &x3[0].basis {
        let k = assemble_ckt(b).map_err(|e| e.to_string())?;
        for comp in k.components() {
            ensure(comp.terms().all(|(m, _)| m.exps()[2] == 0 && m.degree() <= 2), || {
                format!("X₃-invariant component {comp} depends on z or has degree > 2")
            })?;
        }
        ensure(killing_obstruction(&k).map_err(|e| e.to_string())?.is_zero(), || "Killing obstruction".into())?;
        coords.push(trace_free_coordinates(&k).ok_or("member outside the trace-free space")?);
    }
    let kernel_rank = span_rank(&coords);
    for (i, member) in reference_x_family().iter().enumerate() {
        let c =
            trace_free_coordinates(member).ok_or_else(|| format!("reference member {i} is not a trace-free CKT"))?;
        let mut extended = coords.clone();
        extended.push(c);
        ensure(span_rank(&extended) == kernel_rank, || format!("reference member {i} is outside the kernel"))?;
    }

    let scan = scan_symmetry(&Ckv::D.field(), SymmetryMode::HConstant).map_err(|e| e.to_string())?;
    let hs: Vec<Rational> = scan.eigenspaces.iter().map(|e| e.h.clone()).collect();
    let total: usize = scan.eigenspaces.iter().map(|e| e.basis.len()).sum();
    ensure(hs.len() == 5 && hs.iter().all(|h| h.is_integer()), || format!("D eigenvalues {hs:?}"))?;
    ensure(scan.irrational_real_eigenvalues == 0 && total == 35, || format!("D eigenspaces cover {total}/35"))?;
    Ok(format!(
        "R₃: 9 → 6; X₃: kernel {kernel_rank} ⊇ reference 6-parameter family; D: h ∈ {{{}}}",
        hs.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ")
    ))
}

fn to_f(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn float_spectrum(k: &SymTensorField, point: [f64; 3]) -> Vec<f64> {
    let m = k.eval_f64(point);
    let mat = Matrix3::from_fn(|i, j| m[i][j]);
    sorted(SymmetricEigen::new(mat).eigenvalues.iter().copied().collect())
}

fn c8_eigenvalues() -> Outcome {
    let mut r = rng(8);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let point: [Rational; 3] = std::array::from_fn(|_| rat(r.gen_range(-20..=20), r.gen_range(1..=5)));
        if (&point[0] * &point[0] + &point[1] * &point[1]).is_zero() {
            continue;
        }
        let p = random_params(&mut r, 9);
        let exact = eigenvalues_at(&p, &point).map_err(|e| e.to_string())?;
        let ours = sorted(exact.to_f64().to_vec());
        let theirs = float_spectrum(&assemble_rotational(&p), point.clone().map(|c| to_f(&c)));
        let scale = theirs.iter().fold(f64::MIN_POSITIVE, |m, v| m.max(v.abs()));
        for (a, b) in ours.iter().zip(&theirs) {
            let rel = (a - b).abs() / scale;
            worst = worst.max(rel);
            ensure(rel <= 1e-10, || format!("{p} at {point:?}: {ours:?} vs {theirs:?}"))?;
        }
        n += 1;
    }
    for _ in 0..50 {
        let p = random_params(&mut r, 9);
        let z = rat(r.gen_range(-20..=20), r.gen_range(1..=5));
        let q = singular_polynomial(&p).eval(&z);
        let ev = eigenvalues_at(&p, &[int(0), int(0), z.clone()]).map_err(|e| e.to_string())?;
        let half = rat(1, 2);
        let (l2, l3) = (&half * (&q + q.abs()), &half * (&q - q.abs()));
        let sq = ev.b.clone();
        ensure(ev.lambda1.is_zero() && ev.a == q && sq == &q * &q, || format!("{p} on axis at z = {z}"))?;
        let expected = sorted(vec![0.0, to_f(&l2), to_f(&l3)]);
        let got = sorted(ev.to_f64().to_vec());
        ensure(expected.iter().zip(&got).all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs().max(1.0)), || {
            format!("on-axis {got:?} vs {expected:?}")
        })?;
    }
    Ok(format!("100 off-axis points, worst relative error {worst:.1e}; 50 on-axis points"))
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "dimensions, CKV basis, commutators",
            limit: Duration::from_secs(1),
            run: c1_dimensions,
        },
        Criterion {
            id: 2,
            name: "rotational family round trips",
            limit: Duration::from_secs(60),
            run: c2_rotational_family,
        },
        Criterion { id: 3, name: "catalog reproduction", limit: Duration::from_secs(10), run: c3_catalog },
        Criterion {
            id: 4,
            name: "toroidal potential example",
            limit: Duration::from_secs(5),
            run: c4_toroidal_potential,
        },
        Criterion { id: 5, name: "group-action laws", limit: Duration::from_secs(60), run: c5_group_laws },
        Criterion { id: 6, name: "classifier cross-validation", limit: Duration::MAX, run: c6_cross_validation },
        Criterion { id: 7, name: "symmetry scans", limit: Duration::from_secs(120), run: c7_symmetry },
        Criterion { id: 8, name: "eigenvalue formulas", limit: Duration::MAX, run: c8_eigenvalues },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; exceeded {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({}) [{:.3}s] {detail}", c.id, c.name, elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {} ({}) [{:.3}s] {why}", c.id, c.name, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
