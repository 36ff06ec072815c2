//! The six-parameter family of rotationally symmetric CKTs about the
//! `z`-axis: assembly, parameter extraction, eigenvalues, the singular
//! quartic and the coordinate surfaces.

pub mod catalog;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ckt::coefficients::basis_product;
use crate::ckt::{lie_derivative, tsn_check, Ckv, SymTensorField};
use crate::error::{Error, Result};
use crate::exactmath::rational::{parse_rational, serde_str};
use crate::exactmath::{int, rat, MultiPoly, Rational, UniPoly};
use crate::quartic::BinaryQuartic;

/// `K = M₃₃ I₃⊙I₃ + L₃ D⊙I₃ + H D⊙D + C₃₃ R₃⊙R₃ + D₃ D⊙X₃ + A₃₃ X₃⊙X₃`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct RotParams {
    #[serde(rename = "M33", with = "serde_str")]
    pub m33: Rational,
    #[serde(rename = "L3", with = "serde_str")]
    pub l3: Rational,
    #[serde(rename = "H", with = "serde_str")]
    pub h: Rational,
    #[serde(rename = "C33", with = "serde_str")]
    pub c33: Rational,
    #[serde(rename = "D3", with = "serde_str")]
    pub d3: Rational,
    #[serde(rename = "A33", with = "serde_str")]
    pub a33: Rational,
}

impl RotParams {
    pub fn new(m33: Rational, l3: Rational, h: Rational, c33: Rational, d3: Rational, a33: Rational) -> Self {
        Self { m33, l3, h, c33, d3, a33 }
    }

    pub fn from_array(v: [Rational; 6]) -> Self {
        let [m33, l3, h, c33, d3, a33] = v;
        Self { m33, l3, h, c33, d3, a33 }
    }

    pub fn from_ints(v: [i64; 6]) -> Self {
        Self::from_array(v.map(int))
    }

    /// Order `(M₃₃, L₃, H, C₃₃, D₃, A₃₃)`.
    pub fn to_array(&self) -> [Rational; 6] {
        [self.m33.clone(), self.l3.clone(), self.h.clone(), self.c33.clone(), self.d3.clone(), self.a33.clone()]
    }

    pub const NAMES: [&'static str; 6] = ["M33", "L3", "H", "C33", "D3", "A33"];

    /// Parses six comma-separated rationals, optionally wrapped in brackets.
    pub fn parse_list(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let vals = inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        let arr: [Rational; 6] = vals.try_into().map_err(|v: Vec<Rational>| {
            Error::Parse(format!("expected 6 parameters (M33, L3, H, C33, D3, A33), got {}", v.len()))
        })?;
        Ok(Self::from_array(arr))
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(Zero::is_zero)
    }

    /// The binary quartic `M₃₃X⁴ + L₃X³Y + HX²Y² + D₃XY³ + A₃₃Y⁴`.
    pub fn quartic(&self) -> BinaryQuartic {
        BinaryQuartic::new([self.m33.clone(), self.l3.clone(), self.h.clone(), self.d3.clone(), self.a33.clone()])
    }

    /// `C₃₃ − H/3`, the combination on which the group acts affinely.
    pub fn shifted_c33(&self) -> Rational {
        &self.c33 - &self.h / int(3)
    }
}

impl fmt::Display for RotParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.to_array().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", v.join(", "))
    }
}

pub fn assemble_rotational(p: &RotParams) -> SymTensorField {
    let terms = [
        (&p.m33, Ckv::I(2), Ckv::I(2)),
        (&p.l3, Ckv::D, Ckv::I(2)),
        (&p.h, Ckv::D, Ckv::D),
        (&p.c33, Ckv::R(2), Ckv::R(2)),
        (&p.d3, Ckv::D, Ckv::X(2)),
        (&p.a33, Ckv::X(2), Ckv::X(2)),
    ];
    terms
        .iter()
        .filter(|(c, _, _)| !c.is_zero())
        .fold(SymTensorField::zero(), |acc, (c, v, w)| &acc + &basis_product(*v, *w).scale(c))
}

/// Reads the parameters off the components; blind to `K + f g`.
pub fn extract_parameters(k: &SymTensorField) -> Result<RotParams> {
    if !is_metric_multiple(&lie_derivative(&Ckv::R(2).field(), k)) {
        return Err(Error::Validation(
            "extract_parameters: ℒ_R₃ K ≠ 0 modulo the metric (tensor is not invariant under rotation about the z-axis)".into(),
        ));
    }
    if !tsn_check(k) {
        return Err(Error::Validation("extract_parameters: TSN conditions fail (eigenvectors are not normal)".into()));
    }
    let k12 = k.get(0, 1);
    let k13 = k.get(0, 2);
    let h = k13.coeff([1, 0, 1]);
    let p = RotParams {
        m33: k12.coeff([1, 1, 2]) * rat(1, 4),
        l3: k12.coeff([1, 1, 1]) * rat(1, 2),
        c33: &h - k12.coeff([1, 1, 0]),
        d3: k13.coeff([1, 0, 0]) * int(2),
        a33: (k.get(2, 2) - k.get(1, 1)).coeff([0, 0, 0]),
        h,
    };
    if !is_metric_multiple(&(k - &assemble_rotational(&p))) {
        return Err(Error::Validation(
            "extract_parameters: tensor differs from the rotational family by more than a multiple of the metric"
                .into(),
        ));
    }
    Ok(p)
}

fn is_metric_multiple(t: &SymTensorField) -> bool {
    let f = t.get(0, 0);
    t.get(1, 1) == f && t.get(2, 2) == f && t.get(0, 1).is_zero() && t.get(0, 2).is_zero() && t.get(1, 2).is_zero()
}

/// `q(z) = M₃₃z⁴ + L₃z³ + Hz² + D₃z + A₃₃`.
pub fn singular_polynomial(p: &RotParams) -> UniPoly {
    UniPoly::new(vec![p.a33.clone(), p.d3.clone(), p.h.clone(), p.l3.clone(), p.m33.clone()])
}

/// Eigenvalues at a point: `λ₁` exactly and `λ₂,₃ = (A ± √B)/2` as `(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotEigenvalues {
    #[serde(with = "serde_str")]
    pub lambda1: Rational,
    #[serde(rename = "A", with = "serde_str")]
    pub a: Rational,
    #[serde(rename = "B", with = "serde_str")]
    pub b: Rational,
}

impl RotEigenvalues {
    /// Floating-point `(λ₁, λ₂, λ₃)`.
    pub fn to_f64(&self) -> [f64; 3] {
        use crate::exactmath::rational::to_f64;
        let a = to_f64(&self.a);
        let s = to_f64(&self.b).max(0.0).sqrt();
        [to_f64(&self.lambda1), (a + s) / 2.0, (a - s) / 2.0]
    }
}

pub fn eigenvalues_at(p: &RotParams, point: &[Rational; 3]) -> Result<RotEigenvalues> {
    let [x, y, z] = point;
    let rho2 = x * x + y * y;
    if rho2.is_zero() {
        let q = singular_polynomial(p).eval(z);
        return Ok(RotEigenvalues { lambda1: Rational::zero(), b: &q * &q, a: q });
    }
    let r2 = &rho2 + z * z;
    let r4 = &r2 * &r2;
    let a = &r4 * &p.m33 + z * &r2 * &p.l3 + &r2 * &p.h + z * &p.d3 + &p.a33;
    let inner1 = &r2 * &p.l3
        + int(2) * z * &p.h
        + (int(4) * z * z - &r2) / &r2 * &p.d3
        + int(4) * z * (int(2) * z * z - &r2) / &r4 * &p.a33;
    let inner2 = &r4 * &p.m33
        + z * &r2 * &p.l3
        + (int(2) * z * z - &r2) * &p.h
        + z * (int(4) * z * z - int(3) * &r2) / &r2 * &p.d3
        + (&r4 - int(8) * z * z * (&r2 - z * z)) / &r4 * &p.a33;
    let b = &rho2 * &inner1 * &inner1 + &inner2 * &inner2;
    if b.is_negative() {
        return Err(Error::Consistency(format!("negative discriminant B = {b} off the axis")));
    }
    Ok(RotEigenvalues { lambda1: &p.c33 * &rho2, a, b })
}

/// The expanded quartic equation of the `h`-coordinate surfaces, evaluated
/// at a point. Off the axis it equals `([2(h−C₃₃)ρ² + A]² − B) / ρ²` with
/// `ρ² = x² + y²`.
pub fn cyclide_surface_residual(p: &RotParams, h: &Rational, point: &[Rational; 3]) -> Rational {
    let [x, y, z] = point;
    let rho2 = x * x + y * y;
    let r2 = &rho2 + z * z;
    let ch = &p.c33 - h;
    let (m, l, hh, d, a) = (&p.m33, &p.l3, &p.h, &p.d3, &p.a33);
    (int(4) * (hh - &ch) * m - l * l) * &r2 * &r2
        + (int(8) * m * d - int(4) * &ch * l) * &r2 * z
        + (int(2) * l * d - int(4) * &ch * hh) * &r2
        + int(16) * m * a * z * z
        + int(4) * &ch * &ch * &rho2
        + (int(8) * l * a - int(4) * &ch * d) * z
        - d * d
        + int(4) * (hh - &ch) * a
}

/// `[2(h−C₃₃)ρ² + A]² − B` at a point; defined everywhere except the origin
/// is handled through the on-axis eigenvalue formula.
pub fn cyclide_factored_residual(p: &RotParams, h: &Rational, point: &[Rational; 3]) -> Result<Rational> {
    let ev = eigenvalues_at(p, point)?;
    let rho2 = &point[0] * &point[0] + &point[1] * &point[1];
    let lhs = int(2) * (h - &p.c33) * rho2 + ev.a;
    Ok(&lhs * &lhs - ev.b)
}

/// `(K·R₃) × R₃ = 0`: the rotation generator is an eigenvector of `K`.
pub fn rotational_eigencondition(k: &SymTensorField) -> bool {
    let r3 = Ckv::R(2).field();
    k.apply(&r3).cross(&r3).is_zero()
}

/// `K + f·g` for a polynomial `f`; convenience for equivalence tests.
pub fn add_metric_multiple(k: &SymTensorField, f: &MultiPoly) -> SymTensorField {
    k.plus_metric_multiple(f)
}
