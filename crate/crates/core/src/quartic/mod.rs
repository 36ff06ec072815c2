//! Binary quartics `Q(X,Y) = M₃₃X⁴ + L₃X³Y + HX²Y² + D₃XY³ + A₃₃Y⁴`:
//! invariants, covariants, real root structure and the nine web types.

mod canonical;
mod form;
mod roots;
mod table;

pub use canonical::{canonical_form, AlgebraicReal, Canonical, CanonicalForm};
pub use form::{form_sign, BinaryForm, FormSign};
pub use roots::{classify_by_roots, root_structure, RealFactor, RootStructure, WebType};
pub use table::{classify_by_invariants, invariant_table_decision, AuditEntry, InvariantClassification};

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rational::{parse_rational, serde_str};
use crate::exactmath::{int, Rational, UniPoly};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BinaryQuartic {
    form: BinaryForm,
}

impl BinaryQuartic {
    /// Coefficients in the order `(M₃₃, L₃, H, D₃, A₃₃)`.
    pub fn new(coeffs: [Rational; 5]) -> Self {
        Self { form: BinaryForm::new(coeffs.to_vec()) }
    }

    pub fn from_ints(c: [i64; 5]) -> Self {
        Self::new(c.map(int))
    }

    pub fn from_form(form: BinaryForm) -> Result<Self> {
        if form.degree() != 4 {
            return Err(Error::Domain(format!("expected a quartic form, got degree {}", form.degree())));
        }
        Ok(Self { form })
    }

    /// Five comma-separated rationals.
    pub fn parse_list(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let vals = inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        let arr: [Rational; 5] = vals.try_into().map_err(|v: Vec<Rational>| {
            Error::Parse(format!("expected 5 quartic coefficients (M33, L3, H, D3, A33), got {}", v.len()))
        })?;
        Ok(Self::new(arr))
    }

    pub fn coeffs(&self) -> [Rational; 5] {
        std::array::from_fn(|i| self.form.coeffs()[i].clone())
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.form.coeffs()[i]
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { form: self.form.scale(c) }
    }

    /// `q(z) = Q(z, 1)`.
    pub fn dehomogenize(&self) -> UniPoly {
        self.form.dehomogenize()
    }

    /// `Q(Y, X)`, the effect of the unit-sphere inversion.
    pub fn swapped(&self) -> Self {
        let mut c = self.coeffs();
        c.reverse();
        Self::new(c)
    }

    pub fn to_f64(&self) -> [f64; 5] {
        let v = self.form.to_f64();
        [v[0], v[1], v[2], v[3], v[4]]
    }

    pub(crate) fn require_nonzero(&self, op: &str) -> Result<()> {
        if self.is_zero() {
            Err(Error::Domain(format!("{op}: the zero quartic has no root structure")))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for BinaryQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.form.fmt(f)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Invariants {
    #[serde(rename = "I", with = "serde_str")]
    pub i: Rational,
    #[serde(rename = "J", with = "serde_str")]
    pub j: Rational,
    /// `4I³ − J²`.
    #[serde(rename = "Delta", with = "serde_str")]
    pub delta: Rational,
    /// `I³/J²`, absent when `J = 0`.
    #[serde(rename = "F", with = "opt_str")]
    pub f: Option<Rational>,
}

mod opt_str {
    use super::Rational;
    use crate::exactmath::rational::format_rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }
}

pub fn invariants(q: &BinaryQuartic) -> Invariants {
    let [m, l, h, d, a] = q.coeffs();
    let i = int(12) * &a * &m - int(3) * &l * &d + &h * &h;
    let j = int(72) * &a * &m * &h - int(27) * &a * &l * &l - int(27) * &d * &d * &m + int(9) * &d * &l * &h
        - int(2) * &h * &h * &h;
    let i3 = &i * &i * &i;
    let delta = int(4) * &i3 - &j * &j;
    let f = (!j.is_zero()).then(|| &i3 / (&j * &j));
    Invariants { i, j, delta, f }
}

/// `Q_XX·Q_YY − Q_XY²`.
pub fn hessian(q: &BinaryQuartic) -> BinaryQuartic {
    let qx = q.form.partial_x();
    let qy = q.form.partial_y();
    let qxx = qx.partial_x();
    let qyy = qy.partial_y();
    let qxy = qx.partial_y();
    let h = qxx.mul(&qyy).sub(&qxy.mul(&qxy));
    BinaryQuartic { form: h }
}

/// `I·H − 6J·Q`.
pub fn covariant_l(q: &BinaryQuartic) -> BinaryQuartic {
    let inv = invariants(q);
    let h = hessian(q);
    BinaryQuartic { form: h.form.scale(&inv.i).sub(&q.form.scale(&(int(6) * &inv.j))) }
}

/// `12H² − I·Q²`, of degree eight.
pub fn covariant_m(q: &BinaryQuartic) -> BinaryForm {
    let inv = invariants(q);
    let h = hessian(q);
    h.form.mul(&h.form).scale(&int(12)).sub(&q.form.mul(&q.form).scale(&inv.i))
}
