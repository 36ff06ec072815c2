//! Reduction to the representatives `I.`–`V.` with an approximate group
//! element found by matching roots on ℝP¹ with a real Möbius map.

use num_complex::Complex64;

use serde::Serialize;

use super::{classify_by_roots, invariants, BinaryQuartic, WebType};
use crate::error::{Error, Result};
use crate::exactmath::numeric::{complex_roots, complex_roots_f64};
use crate::exactmath::rational::{serde_str, to_f64};
use crate::exactmath::{int, rat, squarefree_decomposition, Rational, UniPoly};
use crate::group::{from_gl2_f64, FloatGroupElement, Mat2};

const WITNESS_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum CanonicalForm {
    /// `(1, 0, μ, 0, 1)`
    I,
    /// `(1, 0, μ, 0, −1)`
    II,
    /// `(1, 0, ν, 0, 0)`
    III,
    /// `(0, 1, 0, 0, 0)`
    IV,
    /// `(1, 0, 0, 0, 0)`
    V,
}

/// A real root of `polynomial` inside `(lo, hi]`, exact when rational.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AlgebraicReal {
    pub polynomial: UniPoly,
    #[serde(with = "serde_str")]
    pub lo: Rational,
    #[serde(with = "serde_str")]
    pub hi: Rational,
    #[serde(serialize_with = "ser_opt")]
    pub exact: Option<Rational>,
    pub approx: f64,
}

fn ser_opt<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl AlgebraicReal {
    pub fn rational(r: Rational) -> Self {
        let approx = to_f64(&r);
        Self {
            polynomial: UniPoly::new(vec![-r.clone(), int(1)]),
            lo: r.clone(),
            hi: r.clone(),
            exact: Some(r),
            approx,
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Canonical {
    pub form: CanonicalForm,
    /// `μ` for forms I and II, `ν` for form III.
    pub parameter: Option<AlgebraicReal>,
    pub web_type: WebType,
    /// The representative's coefficients `(M₃₃, L₃, H, D₃, A₃₃)`.
    pub representative: [f64; 5],
    /// Maps the input quartic onto the representative.
    pub witness: FloatGroupElement,
    /// Largest coefficient error after applying the witness, relative to
    /// the representative's largest coefficient.
    pub witness_error: f64,
}

pub fn canonical_form(q: &BinaryQuartic) -> Result<Canonical> {
    let web_type = classify_by_roots(q)?;
    let (form, candidates) = match web_type {
        WebType::BiCyclide | WebType::FlatRingCyclide => {
            (CanonicalForm::I, mu_candidates(q, CanonicalForm::I, web_type)?)
        }
        WebType::DiskCyclide => (CanonicalForm::II, mu_candidates(q, CanonicalForm::II, web_type)?),
        WebType::Toroidal => (CanonicalForm::I, vec![AlgebraicReal::rational(int(2))]),
        WebType::Bispherical => (CanonicalForm::I, vec![AlgebraicReal::rational(int(-2))]),
        WebType::InverseProlateSpheroidal => (CanonicalForm::III, vec![AlgebraicReal::rational(int(-1))]),
        WebType::InverseOblateSpheroidal => (CanonicalForm::III, vec![AlgebraicReal::rational(int(1))]),
        WebType::Cardioid | WebType::TangentSphere => {
            (if web_type == WebType::Cardioid { CanonicalForm::IV } else { CanonicalForm::V }, Vec::new())
        }
    };
    let dst = projective_roots(q)?;
    if candidates.is_empty() {
        return reduce_to(q, web_type, form, None, &dst);
    }
    let mut last_err = None;
    for parameter in candidates {
        match reduce_to(q, web_type, form, Some(parameter), &dst) {
            Ok(c) => return Ok(c),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one candidate was tried"))
}

fn reduce_to(
    q: &BinaryQuartic,
    web_type: WebType,
    form: CanonicalForm,
    parameter: Option<AlgebraicReal>,
    dst: &[(Point, u32)],
) -> Result<Canonical> {
    let param = parameter.as_ref().map_or(0.0, |p| p.approx);
    let representative = match form {
        CanonicalForm::I => [1.0, 0.0, param, 0.0, 1.0],
        CanonicalForm::II => [1.0, 0.0, param, 0.0, -1.0],
        CanonicalForm::III => [1.0, 0.0, param, 0.0, 0.0],
        CanonicalForm::IV => [0.0, 1.0, 0.0, 0.0, 0.0],
        CanonicalForm::V => [1.0, 0.0, 0.0, 0.0, 0.0],
    };
    let exact_param = parameter.as_ref().and_then(|p| p.exact.clone());
    let exact_rep = match (form, exact_param) {
        (CanonicalForm::IV, _) => Some(BinaryQuartic::from_ints([0, 1, 0, 0, 0])),
        (CanonicalForm::V, _) => Some(BinaryQuartic::from_ints([1, 0, 0, 0, 0])),
        (CanonicalForm::I, Some(mu)) => Some(BinaryQuartic::new([int(1), int(0), mu, int(0), int(1)])),
        (CanonicalForm::II, Some(mu)) => Some(BinaryQuartic::new([int(1), int(0), mu, int(0), int(-1)])),
        (CanonicalForm::III, Some(nu)) => Some(BinaryQuartic::new([int(1), int(0), nu, int(0), int(0)])),
        _ => None,
    };
    let src = match &exact_rep {
        Some(rep) => projective_roots(rep)?,
        None => simple_roots_f64(&representative),
    };
    let (witness, witness_error) = find_witness(q, &representative, &src, dst)?;
    Ok(Canonical { form, parameter, web_type, representative, witness, witness_error })
}

/// Solutions `μ` of `F(Q) = F(representative)` in the range allotted to
/// the web type, ascending. Only some of them are reachable by a real map.
fn mu_candidates(q: &BinaryQuartic, form: CanonicalForm, web_type: WebType) -> Result<Vec<AlgebraicReal>> {
    let inv = invariants(q);
    let mu = UniPoly::z();
    let mu2 = &mu * &mu;
    let mu3 = &mu2 * &mu;
    let (ic, jc) = match form {
        CanonicalForm::I => (&mu2 + &UniPoly::constant(int(12)), &mu.scale(&int(72)) - &mu3.scale(&int(2))),
        _ => (&mu2 - &UniPoly::constant(int(12)), &(-mu.scale(&int(72))) - &mu3.scale(&int(2))),
    };
    let i3 = &inv.i * &inv.i * &inv.i;
    let j2 = &inv.j * &inv.j;
    let equation = &(&jc * &jc).scale(&i3) - &(&(&ic * &ic) * &ic).scale(&j2);
    if equation.is_zero() {
        return Err(Error::Consistency(format!("invariant equation for μ degenerates for {q}")));
    }
    let equation = equation.squarefree_part()?.primitive_integer();
    let in_range = |lo: &Rational, hi: &Rational| -> Option<bool> {
        let (m2, p2) = (int(-2), int(2));
        match web_type {
            WebType::BiCyclide => decide(lo, hi, &[&m2], |x| x < &m2),
            WebType::FlatRingCyclide => decide(lo, hi, &[&m2, &p2], |x| x > &m2 && x != &p2),
            _ => Some(true),
        }
    };
    let rational = equation.rational_roots()?;
    let mut out = Vec::new();
    for (lo, hi) in equation.isolate_real_roots()? {
        let (mut lo, mut hi) = (lo, hi);
        let verdict = loop {
            if let Some(v) = in_range(&lo, &hi) {
                break v;
            }
            let width = (&hi - &lo) / int(16);
            (lo, hi) = equation.refine_root(&lo, &hi, &width);
        };
        if !verdict {
            continue;
        }
        let exact = rational.iter().find(|r| (lo < **r && **r <= hi) || (lo == hi && **r == lo)).cloned();
        let (flo, fhi) = equation.refine_root(&lo, &hi, &rat(1, 1 << 60));
        let approx = exact.as_ref().map_or_else(|| (to_f64(&flo) + to_f64(&fhi)) / 2.0, to_f64);
        out.push(AlgebraicReal { polynomial: equation.clone(), lo, hi, exact, approx });
    }
    if out.is_empty() {
        return Err(Error::Consistency(format!("no admissible μ for {q} of type {web_type}")));
    }
    Ok(out)
}

/// Whether every point of `(lo, hi]` satisfies `pred`, once the interval
/// avoids the listed boundary points; `None` asks for refinement.
fn decide(lo: &Rational, hi: &Rational, bounds: &[&Rational], pred: impl Fn(&Rational) -> bool) -> Option<bool> {
    if lo != hi && bounds.iter().any(|b| lo < *b && *b <= hi) {
        return None;
    }
    Some(pred(hi))
}

type Point = [Complex64; 2];

fn projective_roots(q: &BinaryQuartic) -> Result<Vec<(Point, u32)>> {
    let poly = q.dehomogenize();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomposition(&poly)? {
        for z in complex_roots(&factor) {
            out.push(([z, one], mult));
        }
    }
    let at_infinity = 4 - poly.degree().unwrap_or(0) as u32;
    if at_infinity > 0 {
        out.push(([one, zero], at_infinity));
    }
    Ok(out)
}

fn simple_roots_f64(c: &[f64; 5]) -> Vec<(Point, u32)> {
    let one = Complex64::new(1.0, 0.0);
    complex_roots_f64(&[c[4], c[3], c[2], c[1], c[0]]).into_iter().map(|z| ([z, one], 1)).collect()
}

fn proj_distance(a: &Point, b: &Point) -> f64 {
    let cross = a[0] * b[1] - a[1] * b[0];
    let na = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
    let nb = (b[0].norm_sqr() + b[1].norm_sqr()).sqrt();
    cross.norm() / (na * nb)
}

fn pad(points: &mut Vec<(Point, u32)>) {
    let candidates = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0), (2.0, 1.0), (1.0, 2.0), (3.0, 1.0)];
    for (u, v) in candidates {
        if points.len() >= 3 {
            break;
        }
        let p = [Complex64::new(u, 0.0), Complex64::new(v, 0.0)];
        if points.iter().all(|(q, _)| proj_distance(q, &p) > 1e-3) {
            points.push((p, 0));
        }
    }
}

type CMat = [[Complex64; 2]; 2];

/// Columns scaled so `e₁ ↦ p₁`, `e₂ ↦ p₂`, `(1,1) ↦ p₃`.
fn frame(p: &[Point; 3]) -> Option<CMat> {
    let det = p[0][0] * p[1][1] - p[1][0] * p[0][1];
    if det.norm() < 1e-14 {
        return None;
    }
    let a = (p[2][0] * p[1][1] - p[1][0] * p[2][1]) / det;
    let b = (p[0][0] * p[2][1] - p[2][0] * p[0][1]) / det;
    Some([[p[0][0] * a, p[1][0] * b], [p[0][1] * a, p[1][1] * b]])
}

fn cmul(a: &CMat, b: &CMat) -> CMat {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn cinv(a: &CMat) -> CMat {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]
}

fn capply(a: &CMat, p: &Point) -> Point {
    [a[0][0] * p[0] + a[0][1] * p[1], a[1][0] * p[0] + a[1][1] * p[1]]
}

/// Removes the complex phase of a projective matrix if it is real.
fn realify(m: &CMat) -> Option<Mat2<f64>> {
    let entries = [m[0][0], m[0][1], m[1][0], m[1][1]];
    let big = entries.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm()))?;
    let phase = big / big.norm();
    let scaled: Vec<Complex64> = entries.iter().map(|e| e / phase / big.norm()).collect();
    if scaled.iter().any(|e| e.im.abs() > 1e-7) {
        return None;
    }
    Some(Mat2 { alpha: scaled[0].re, beta: scaled[1].re, gamma: scaled[2].re, delta: scaled[3].re })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn find_witness(
    q: &BinaryQuartic,
    representative: &[f64; 5],
    src: &[(Point, u32)],
    dst: &[(Point, u32)],
) -> Result<(FloatGroupElement, f64)> {
    if src.len() != dst.len() {
        return Err(Error::Consistency(format!(
            "root counts differ: {} distinct roots versus {} for the representative",
            dst.len(),
            src.len()
        )));
    }
    let (mut src, mut dst) = (src.to_vec(), dst.to_vec());
    pad(&mut src);
    pad(&mut dst);
    let qf = {
        let c = q.to_f64();
        let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        c.map(|v| v / scale)
    };
    let rep_scale = representative.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut best: Option<(FloatGroupElement, f64)> = None;
    for perm in permutations(dst.len()) {
        if perm.iter().enumerate().any(|(i, &j)| src[i].1 != dst[j].1) {
            continue;
        }
        let Some(fs) = frame(&[src[0].0, src[1].0, src[2].0]) else { continue };
        let Some(fd) = frame(&[dst[perm[0]].0, dst[perm[1]].0, dst[perm[2]].0]) else { continue };
        let t = cmul(&fd, &cinv(&fs));
        let consistent = (3..src.len()).all(|i| proj_distance(&capply(&t, &src[i].0), &dst[perm[i]].0) < 1e-6);
        if !consistent {
            continue;
        }
        let Some(m) = realify(&t) else { continue };
        let Ok(mut g) = from_gl2_f64(&m) else { continue };
        let image = g.apply_quartic(&qf);
        let (k, _) = representative
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .expect("five coefficients");
        let ratio = image[k] / representative[k];
        if ratio == 0.0 || !ratio.is_finite() {
            continue;
        }
        g.a3 /= ratio;
        let image = g.apply_quartic(&qf);
        let err = image.iter().zip(representative).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / rep_scale;
        if best.as_ref().is_none_or(|(_, e)| err < *e) {
            best = Some((g, err));
        }
    }
    let (mut g, err) =
        best.ok_or_else(|| Error::Consistency(format!("no real Möbius map carries {q} to its representative")))?;
    if err > WITNESS_TOLERANCE {
        return Err(Error::Consistency(format!("witness for {q} misses the representative by {err:e}")));
    }
    // The witness was computed on the normalized quartic.
    let c = q.to_f64();
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    g.a3 /= scale;
    Ok((g, err))
}
