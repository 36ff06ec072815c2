//! The group generated by translations and continuous inversions along the
//! axis, dilations, tensor scaling, `R₃⊙R₃` shifts and the unit-sphere
//! inversion, acting on rotational CKT parameters.
//!
//! An element is stored in the normal form "discrete inversion (optional),
//! then the continuous part `(a₀, a₁, a₂, a₃, a₄)`". On the quartic it acts
//! as `Q ↦ λ·Q∘A` with `λ = a₃/a₂²` and
//! `A = Sᵈ·[[1, −a₁], [−a₀, a₁a₀ + a₂]]`, `S` the coordinate swap.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rational::{serde_str, to_f64};
use crate::exactmath::{int, Rational, UniPoly};
use crate::quartic::{BinaryForm, BinaryQuartic};
use crate::rotational::RotParams;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupElement {
    #[serde(with = "serde_str")]
    pub a0: Rational,
    #[serde(with = "serde_str")]
    pub a1: Rational,
    #[serde(with = "serde_str")]
    pub a2: Rational,
    #[serde(with = "serde_str")]
    pub a3: Rational,
    #[serde(with = "serde_str")]
    pub a4: Rational,
    pub discrete: bool,
}

impl Default for GroupElement {
    fn default() -> Self {
        Self::identity()
    }
}

impl GroupElement {
    pub fn new(a0: Rational, a1: Rational, a2: Rational, a3: Rational, a4: Rational, discrete: bool) -> Result<Self> {
        let g = Self { a0, a1, a2, a3, a4, discrete };
        g.validate()?;
        Ok(g)
    }

    pub fn identity() -> Self {
        Self {
            a0: Rational::zero(),
            a1: Rational::zero(),
            a2: Rational::one(),
            a3: Rational::one(),
            a4: Rational::zero(),
            discrete: false,
        }
    }

    pub fn continuous_inversion(a0: Rational) -> Self {
        Self { a0, ..Self::identity() }
    }

    pub fn translation(a1: Rational) -> Self {
        Self { a1, ..Self::identity() }
    }

    pub fn dilation(a2: Rational) -> Self {
        Self { a2, ..Self::identity() }
    }

    pub fn tensor_scaling(a3: Rational) -> Self {
        Self { a3, ..Self::identity() }
    }

    pub fn r3_shift(a4: Rational) -> Self {
        Self { a4, ..Self::identity() }
    }

    pub fn sphere_inversion() -> Self {
        Self { discrete: true, ..Self::identity() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.a2.is_zero() {
            return Err(Error::Domain("group element needs a₂ ≠ 0".into()));
        }
        if self.a3.is_zero() {
            return Err(Error::Domain("group element needs a₃ ≠ 0".into()));
        }
        Ok(())
    }

    /// `λ = a₃/a₂²`.
    pub fn quartic_scale(&self) -> Rational {
        &self.a3 / (&self.a2 * &self.a2)
    }

    /// `A = Sᵈ·N`, the linear substitution realizing the action on `Q`.
    pub fn matrix(&self) -> Mat2<Rational> {
        let n =
            Mat2 { alpha: Rational::one(), beta: -&self.a1, gamma: -&self.a0, delta: &self.a1 * &self.a0 + &self.a2 };
        if self.discrete {
            n.swap_rows()
        } else {
            n
        }
    }

    /// Normal form of the element acting as `Q ↦ λ·Q∘m` with shift `a₄`.
    fn from_matrix(m: &Mat2<Rational>, lambda: &Rational, a4: Rational) -> Result<Self> {
        let det = m.determinant();
        if det.is_zero() {
            return Err(Error::Domain("singular 2×2 matrix".into()));
        }
        let (discrete, m) = if m.alpha.is_zero() { (true, m.swap_rows()) } else { (false, m.clone()) };
        let c = m.alpha.clone();
        let a1 = -&m.beta / &c;
        let a0 = -&m.gamma / &c;
        let a2 = m.determinant() / (&c * &c);
        let c2 = &c * &c;
        let a3 = lambda * &c2 * &c2 * &a2 * &a2;
        Ok(Self { a0, a1, a2, a3, a4, discrete })
    }

    fn shifted_c33_law(&self) -> (Rational, Rational) {
        (self.a3.clone(), self.a4.clone())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a0={}, a1={}, a2={}, a3={}, a4={}{})",
            self.a0,
            self.a1,
            self.a2,
            self.a3,
            self.a4,
            if self.discrete { ", discrete" } else { "" }
        )
    }
}

/// `[[α, β], [γ, δ]]` acting on column vectors `(X, Y)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Mat2<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub delta: T,
}

impl<T: Clone> Mat2<T> {
    pub fn swap_rows(&self) -> Self {
        Self {
            alpha: self.gamma.clone(),
            beta: self.delta.clone(),
            gamma: self.alpha.clone(),
            delta: self.beta.clone(),
        }
    }
}

impl Mat2<Rational> {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, delta: Rational) -> Self {
        Self { alpha, beta, gamma, delta }
    }

    pub fn from_ints(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        Self::new(int(alpha), int(beta), int(gamma), int(delta))
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn determinant(&self) -> Rational {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            alpha: &self.alpha * &rhs.alpha + &self.beta * &rhs.gamma,
            beta: &self.alpha * &rhs.beta + &self.beta * &rhs.delta,
            gamma: &self.gamma * &rhs.alpha + &self.delta * &rhs.gamma,
            delta: &self.gamma * &rhs.beta + &self.delta * &rhs.delta,
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.determinant();
        if det.is_zero() {
            return None;
        }
        Some(Self {
            alpha: &self.delta / &det,
            beta: -&self.beta / &det,
            gamma: -&self.gamma / &det,
            delta: &self.alpha / &det,
        })
    }

    pub fn to_f64(&self) -> Mat2<f64> {
        Mat2 {
            alpha: to_f64(&self.alpha),
            beta: to_f64(&self.beta),
            gamma: to_f64(&self.gamma),
            delta: to_f64(&self.delta),
        }
    }
}

impl Mat2<f64> {
    pub fn determinant(&self) -> f64 {
        self.alpha * self.delta - self.beta * self.gamma
    }

    pub fn scale(&self, s: f64) -> Self {
        Mat2 { alpha: s * self.alpha, beta: s * self.beta, gamma: s * self.gamma, delta: s * self.delta }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mat2 {
            alpha: self.alpha * rhs.alpha + self.beta * rhs.gamma,
            beta: self.alpha * rhs.beta + self.beta * rhs.delta,
            gamma: self.gamma * rhs.alpha + self.delta * rhs.gamma,
            delta: self.gamma * rhs.beta + self.delta * rhs.delta,
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.determinant();
        (det != 0.0).then(|| Mat2 {
            alpha: self.delta / det,
            beta: -self.beta / det,
            gamma: -self.gamma / det,
            delta: self.alpha / det,
        })
    }
}

/// `Q(αX + βY, γX + δY)`.
pub fn substitute(q: &BinaryQuartic, m: &Mat2<Rational>) -> BinaryQuartic {
    let u = BinaryForm::new(vec![m.alpha.clone(), m.beta.clone()]);
    let v = BinaryForm::new(vec![m.gamma.clone(), m.delta.clone()]);
    let mut u_pows = vec![BinaryForm::from_ints(&[1])];
    let mut v_pows = vec![BinaryForm::from_ints(&[1])];
    for k in 1..=4 {
        u_pows.push(u_pows[k - 1].mul(&u));
        v_pows.push(v_pows[k - 1].mul(&v));
    }
    let mut out = BinaryForm::zero(4);
    for (i, c) in q.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&u_pows[4 - i].mul(&v_pows[i]).scale(c));
        }
    }
    BinaryQuartic::from_form(out).expect("substitution preserves degree")
}

/// Floating-point `Q(αX + βY, γX + δY)`.
pub fn substitute_f64(q: &[f64; 5], m: &Mat2<f64>) -> [f64; 5] {
    let lin = |a: f64, b: f64| [a, b];
    let mul = |p: &[f64], r: &[f64]| {
        let mut out = vec![0.0; p.len() + r.len() - 1];
        for (i, x) in p.iter().enumerate() {
            for (j, y) in r.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let u = lin(m.alpha, m.beta);
    let v = lin(m.gamma, m.delta);
    let mut u_pows = vec![vec![1.0]];
    let mut v_pows = vec![vec![1.0]];
    for k in 1..=4 {
        let nu = mul(&u_pows[k - 1], &u);
        let nv = mul(&v_pows[k - 1], &v);
        u_pows.push(nu);
        v_pows.push(nv);
    }
    let mut out = [0.0; 5];
    for (i, c) in q.iter().enumerate() {
        let term = mul(&u_pows[4 - i], &v_pows[i]);
        for (k, t) in term.iter().enumerate() {
            out[k] += c * t;
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// Applies the element through the explicit transformation equations built
/// from `P(a₀) = A₃₃a₀⁴ − D₃a₀³ + Ha₀² − L₃a₀ + M₃₃` and its normalized
/// derivatives `P⁽ʰ⁾ = P^{(h)}/h!`.
pub fn apply(g: &GroupElement, p: &RotParams) -> Result<RotParams> {
    g.validate()?;
    let src = if g.discrete {
        RotParams::new(p.a33.clone(), p.d3.clone(), p.h.clone(), p.c33.clone(), p.l3.clone(), p.m33.clone())
    } else {
        p.clone()
    };
    let poly = UniPoly::new(vec![src.m33.clone(), -&src.l3, src.h.clone(), -&src.d3, src.a33.clone()]);
    let mut taylor = Vec::with_capacity(5);
    let mut deriv = poly;
    let mut factorial = Rational::one();
    for h in 0..5 {
        if h > 0 {
            deriv = deriv.derivative();
            factorial *= int(h as i64);
        }
        taylor.push(deriv.eval(&g.a0) / &factorial);
    }
    let lambda = g.quartic_scale();
    let new_alpha = |i: usize| -> Rational {
        let sign = if i.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        let sum = (0..=i).fold(Rational::zero(), |acc, h| {
            acc + int(binomial(4 - h, i - h))
                * &taylor[h]
                * num_traits::pow(g.a1.clone(), i - h)
                * num_traits::pow(g.a2.clone(), h)
        });
        &lambda * sign * sum
    };
    let m33 = new_alpha(0);
    let l3 = new_alpha(1);
    let h = new_alpha(2);
    let d3 = new_alpha(3);
    let a33 = new_alpha(4);
    let c33 = &g.a4 + &g.a3 * &src.c33 + (&h - &g.a3 * &src.h) / int(3);
    Ok(RotParams { m33, l3, h, c33, d3, a33 })
}

/// The quartic part of [`apply`] computed as `λ·Q∘A`.
pub fn apply_quartic(g: &GroupElement, q: &BinaryQuartic) -> Result<BinaryQuartic> {
    g.validate()?;
    Ok(substitute(q, &g.matrix()).scale(&g.quartic_scale()))
}

/// The element acting as `g₁` after `g₂`.
pub fn compose(g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
    g1.validate()?;
    g2.validate()?;
    let m = g2.matrix().mul(&g1.matrix());
    let lambda = g1.quartic_scale() * g2.quartic_scale();
    let (s1, t1) = g1.shifted_c33_law();
    let (_, t2) = g2.shifted_c33_law();
    let g = GroupElement::from_matrix(&m, &lambda, &s1 * &t2 + &t1)?;
    debug_assert_eq!(g.a3, &g1.a3 * &g2.a3);
    Ok(g)
}

pub fn inverse(g: &GroupElement) -> Result<GroupElement> {
    g.validate()?;
    let m = g.matrix().inverse().ok_or_else(|| Error::Domain("singular group matrix".into()))?;
    let lambda = g.quartic_scale().recip();
    GroupElement::from_matrix(&m, &lambda, -&g.a4 / &g.a3)
}

/// The real matrix `(a₃/a₂²)^{1/4}·Sᵈ·N`, whose substitution action alone
/// reproduces the action on the quartic.
pub fn to_gl2(g: &GroupElement) -> Result<Mat2<f64>> {
    g.validate()?;
    if !g.a3.is_positive() {
        return Err(Error::Domain("to_gl2 requires a₃ > 0".into()));
    }
    let s = to_f64(&g.quartic_scale()).powf(0.25);
    Ok(g.matrix().to_f64().scale(s))
}

/// The element whose action on quartics is `Q ↦ Q∘m`.
pub fn from_gl2(m: &Mat2<Rational>) -> Result<GroupElement> {
    GroupElement::from_matrix(m, &Rational::one(), Rational::zero())
}

/// Floating-point group element, used for canonicalization witnesses.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct FloatGroupElement {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub discrete: bool,
}

impl FloatGroupElement {
    pub fn from_exact(g: &GroupElement) -> Self {
        Self {
            a0: to_f64(&g.a0),
            a1: to_f64(&g.a1),
            a2: to_f64(&g.a2),
            a3: to_f64(&g.a3),
            a4: to_f64(&g.a4),
            discrete: g.discrete,
        }
    }

    pub fn matrix(&self) -> Mat2<f64> {
        let n = Mat2 { alpha: 1.0, beta: -self.a1, gamma: -self.a0, delta: self.a1 * self.a0 + self.a2 };
        if self.discrete {
            n.swap_rows()
        } else {
            n
        }
    }

    pub fn apply_quartic(&self, q: &[f64; 5]) -> [f64; 5] {
        let lambda = self.a3 / (self.a2 * self.a2);
        substitute_f64(q, &self.matrix()).map(|c| lambda * c)
    }
}

/// Float counterpart of [`from_gl2`].
pub fn from_gl2_f64(m: &Mat2<f64>) -> Result<FloatGroupElement> {
    if m.determinant() == 0.0 || !m.determinant().is_finite() {
        return Err(Error::Domain("singular 2×2 matrix".into()));
    }
    let (discrete, m) = if m.alpha == 0.0 { (true, m.swap_rows()) } else { (false, *m) };
    let c = m.alpha;
    let a2 = m.determinant() / (c * c);
    Ok(FloatGroupElement { a0: -m.gamma / c, a1: -m.beta / c, a2, a3: m.determinant().powi(2), a4: 0.0, discrete })
}

/// A point of ℝP¹.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisPoint {
    Finite(#[serde(with = "serde_str")] Rational),
    Infinity,
}

impl fmt::Display for AxisPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisPoint::Finite(z) => write!(f, "{z}"),
            AxisPoint::Infinity => f.write_str("∞"),
        }
    }
}

/// `z̃ = ((a₂ + a₁a₀)z + a₁)/(a₀z + 1)`, preceded by `z ↦ 1/z` when discrete.
pub fn axis_action(g: &GroupElement, z: &AxisPoint) -> AxisPoint {
    let z = if g.discrete {
        match z {
            AxisPoint::Infinity => AxisPoint::Finite(Rational::zero()),
            AxisPoint::Finite(v) if v.is_zero() => AxisPoint::Infinity,
            AxisPoint::Finite(v) => AxisPoint::Finite(v.recip()),
        }
    } else {
        z.clone()
    };
    let top_coeff = &g.a2 + &g.a1 * &g.a0;
    match z {
        AxisPoint::Infinity => {
            if g.a0.is_zero() {
                AxisPoint::Infinity
            } else {
                AxisPoint::Finite(top_coeff / &g.a0)
            }
        }
        AxisPoint::Finite(v) => {
            let den = &g.a0 * &v + Rational::one();
            if den.is_zero() {
                AxisPoint::Infinity
            } else {
                AxisPoint::Finite((top_coeff * &v + &g.a1) / den)
            }
        }
    }
}

/// `d(z)⁴·q̃(z̃) − a₃a₂²·q(z)` with `d(z) = a₀z + 1`, or `z + a₀` when the
/// element starts with the sphere inversion. Identically zero.
pub fn covariance_residual(g: &GroupElement, p: &RotParams, z: &Rational) -> Result<Rational> {
    let image = axis_action(g, &AxisPoint::Finite(z.clone()));
    let AxisPoint::Finite(zt) = image else {
        return Err(Error::Domain(format!("z = {z} is a pole of the axis map")));
    };
    let d = if g.discrete { z + &g.a0 } else { &g.a0 * z + Rational::one() };
    let q = crate::rotational::singular_polynomial(p);
    let qt = crate::rotational::singular_polynomial(&apply(g, p)?);
    let d2 = &d * &d;
    Ok(&d2 * &d2 * qt.eval(&zt) - &g.a3 * &g.a2 * &g.a2 * q.eval(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn g(a: [i64; 5], discrete: bool) -> GroupElement {
        GroupElement::new(int(a[0]), int(a[1]), int(a[2]), int(a[3]), int(a[4]), discrete).unwrap()
    }

    #[test]
    fn apply_examples() {
        let p = RotParams::from_ints([3, -1, 2, 5, 7, 4]);
        assert_eq!(apply(&GroupElement::identity(), &p).unwrap(), p);
        let q = RotParams::from_ints([1, 1, 1, 0, 1, 1]);
        let out = apply(&g([0, 0, 2, 1, 0], false), &q).unwrap();
        assert_eq!([out.m33, out.l3, out.h, out.d3, out.a33], [rat(1, 4), rat(1, 2), int(1), int(2), int(4)]);
        let cyl = RotParams::from_ints([0, 0, 0, -1, 0, 1]);
        assert_eq!(apply(&GroupElement::sphere_inversion(), &cyl).unwrap(), RotParams::from_ints([1, 0, 0, -1, 0, 0]));
        assert!(GroupElement::new(int(0), int(0), int(0), int(1), int(0), false).is_err());
    }

    #[test]
    fn action_equations_match_substitution() {
        let p = RotParams::from_ints([2, -3, 1, 0, 5, -1]);
        for el in [g([1, 2, 3, 2, 0], false), g([-2, 1, -1, -3, 4], true), g([0, 5, 2, 1, 0], false)] {
            assert_eq!(apply(&el, &p).unwrap().quartic(), apply_quartic(&el, &p.quartic()).unwrap());
        }
    }

    #[test]
    fn composition_and_inverse() {
        let p = RotParams::from_ints([1, 2, -3, 4, -5, 6]);
        let g1 = g([1, -2, 3, 2, 1], false);
        let g2 = g([2, 1, -1, -3, 5], true);
        let c = compose(&g1, &g2).unwrap();
        assert_eq!(apply(&c, &p).unwrap(), apply(&g1, &apply(&g2, &p).unwrap()).unwrap());
        for el in [g1, g2] {
            let back = apply(&inverse(&el).unwrap(), &apply(&el, &p).unwrap()).unwrap();
            assert_eq!(back, p);
        }
        let inv = GroupElement::sphere_inversion();
        assert_eq!(compose(&inv, &inv).unwrap(), GroupElement::identity());
    }

    #[test]
    fn continuous_inversion_is_conjugated_translation() {
        let p = RotParams::from_ints([1, -2, 3, 1, 4, -1]);
        let a = rat(3, 2);
        let inv = GroupElement::sphere_inversion();
        let conj = compose(&inv, &compose(&GroupElement::translation(a.clone()), &inv).unwrap()).unwrap();
        assert_eq!(conj, GroupElement::continuous_inversion(a.clone()));
        assert_eq!(apply(&conj, &p).unwrap(), apply(&GroupElement::continuous_inversion(a), &p).unwrap());
    }

    #[test]
    fn gl2_bridge() {
        let m = to_gl2(&GroupElement::identity()).unwrap();
        assert_eq!(m, Mat2 { alpha: 1.0, beta: 0.0, gamma: 0.0, delta: 1.0 });
        let m = to_gl2(&GroupElement::sphere_inversion()).unwrap();
        assert_eq!(m, Mat2 { alpha: 0.0, beta: 1.0, gamma: 1.0, delta: 0.0 });
        assert!(to_gl2(&GroupElement::tensor_scaling(int(-1))).is_err());
        assert_eq!(from_gl2(&Mat2::identity()).unwrap(), GroupElement::identity());
        assert_eq!(from_gl2(&Mat2::from_ints(0, 1, 1, 0)).unwrap(), GroupElement::sphere_inversion());
        let m = Mat2::from_ints(2, -1, 3, 4);
        let q = BinaryQuartic::from_ints([1, 2, -1, 0, 3]);
        assert_eq!(apply_quartic(&from_gl2(&m).unwrap(), &q).unwrap(), substitute(&q, &m));
        let el = g([1, 2, -3, 5, 0], false);
        let back = from_gl2_f64(&to_gl2(&el).unwrap()).unwrap();
        for (x, y) in [(back.a0, 1.0), (back.a1, 2.0), (back.a2, -3.0), (back.a3, 5.0)] {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn axis_examples() {
        let z = AxisPoint::Finite(int(2));
        assert_eq!(axis_action(&GroupElement::identity(), &z), z);
        assert_eq!(axis_action(&GroupElement::translation(int(3)), &z), AxisPoint::Finite(int(5)));
        assert_eq!(axis_action(&GroupElement::sphere_inversion(), &AxisPoint::Finite(int(0))), AxisPoint::Infinity);
    }

    #[test]
    fn covariance_examples() {
        let p = RotParams::from_ints([1, 2, -3, 0, 5, -2]);
        for el in [GroupElement::identity(), g([2, -1, 3, -2, 1], false), g([-1, 3, 2, 5, 0], true)] {
            for z in [-3, 1, 2, 7] {
                match covariance_residual(&el, &p, &int(z)) {
                    Ok(r) => assert!(r.is_zero()),
                    Err(Error::Domain(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert!(covariance_residual(&GroupElement::continuous_inversion(int(1)), &p, &int(-1)).is_err());
    }
}
