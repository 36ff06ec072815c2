//! Homogeneous binary forms `Σ cᵢ X^{n−i} Yⁱ` with exact coefficients.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rational::to_f64;
use crate::exactmath::{int, real_root_count, squarefree_decomposition, Rational, UniPoly};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BinaryForm {
    #[serde(with = "crate::exactmath::unipoly::coeff_list")]
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    /// `coeffs[i]` multiplies `X^{n−i} Yⁱ`; the degree is `coeffs.len() − 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![Rational::zero(); degree + 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn partial_x(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::zero(0);
        }
        Self::new((0..n).map(|i| &self.coeffs[i] * int((n - i) as i64)).collect())
    }

    pub fn partial_y(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::zero(0);
        }
        Self::new((1..=n).map(|i| &self.coeffs[i] * int(i as i64)).collect())
    }

    /// `F(z, 1)`.
    pub fn dehomogenize(&self) -> UniPoly {
        let n = self.degree();
        UniPoly::new((0..=n).map(|p| self.coeffs[n - p].clone()).collect())
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let n = self.degree();
        let mut total = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                total += c * num_traits::pow(x.clone(), n - i) * num_traits::pow(y.clone(), i);
            }
        }
        total
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match (n - i, i) {
                (0, 0) => String::new(),
                (a, 0) => power("X", a),
                (0, b) => power("Y", b),
                (a, b) => format!("{}*{}", power("X", a), power("Y", b)),
            };
            let mag = c.abs();
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (mono.is_empty(), mag == int(1)) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn power(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// Global sign behaviour of an even-degree form on ℝ².
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormSign {
    IdenticallyZero,
    PsdNonzero,
    NsdNonzero,
    Indefinite,
}

/// Decides semidefiniteness exactly: the form keeps one sign iff every real
/// linear factor, `Y` included, occurs to an even power.
pub fn form_sign(form: &BinaryForm) -> Result<FormSign> {
    let n = form.degree();
    if n % 2 == 1 {
        return Err(Error::Domain(format!("form_sign needs an even-degree form, got degree {n}")));
    }
    if form.is_zero() {
        return Ok(FormSign::IdenticallyZero);
    }
    let q = form.dehomogenize();
    let finite_degree = q.degree().unwrap_or(0);
    if (n - finite_degree) % 2 == 1 {
        return Ok(FormSign::Indefinite);
    }
    for (factor, mult) in squarefree_decomposition(&q)? {
        if mult % 2 == 1 && real_root_count(&factor)? > 0 {
            return Ok(FormSign::Indefinite);
        }
    }
    let sample = (0i64..)
        .map(int)
        .map(|z| q.eval(&z))
        .find(|v| !v.is_zero())
        .expect("a nonzero polynomial has finitely many roots");
    Ok(if sample.is_positive() { FormSign::PsdNonzero } else { FormSign::NsdNonzero })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partials_and_products() {
        let q = BinaryForm::from_ints(&[1, 2, 3, 4, 5]);
        assert_eq!(q.partial_x(), BinaryForm::from_ints(&[4, 6, 6, 4]));
        assert_eq!(q.partial_y(), BinaryForm::from_ints(&[2, 6, 12, 20]));
        let sq = BinaryForm::from_ints(&[1, 1]).mul(&BinaryForm::from_ints(&[1, -1]));
        assert_eq!(sq, BinaryForm::from_ints(&[1, 0, -1]));
        assert_eq!(q.dehomogenize(), UniPoly::from_ints(&[5, 4, 3, 2, 1]));
        assert_eq!(q.eval(&int(1), &int(2)), int(1 + 4 + 12 + 32 + 80));
    }

    #[test]
    fn sign_examples() {
        let p = BinaryForm::from_ints(&[48, 0, 96, 0, 48]);
        assert_eq!(form_sign(&p).unwrap(), FormSign::PsdNonzero);
        let n = BinaryForm::from_ints(&[-48, 0, 96, 0, -48]);
        assert_eq!(form_sign(&n).unwrap(), FormSign::NsdNonzero);
        let i = BinaryForm::from_ints(&[1, 0, 0, 0, -1]);
        assert_eq!(form_sign(&i).unwrap(), FormSign::Indefinite);
        assert_eq!(form_sign(&BinaryForm::zero(4)).unwrap(), FormSign::IdenticallyZero);
        // X³Y changes sign across Y = 0 and X = 0.
        assert_eq!(form_sign(&BinaryForm::from_ints(&[0, 1, 0, 0, 0])).unwrap(), FormSign::Indefinite);
        // X²Y² is psd with root at infinity of even multiplicity.
        assert_eq!(form_sign(&BinaryForm::from_ints(&[0, 0, 1, 0, 0])).unwrap(), FormSign::PsdNonzero);
        assert!(form_sign(&BinaryForm::from_ints(&[1, 0, 0])).is_ok());
        assert!(form_sign(&BinaryForm::from_ints(&[1, 0, 0, 1])).is_err());
    }
}
