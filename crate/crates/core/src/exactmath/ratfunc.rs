//! Quotients of polynomials in `x, y, z`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `num / den` with the denominator normalised to leading coefficient 1.
/// No multivariate gcd is taken: common factors are cancelled only when
/// one side divides the other exactly.
#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        Ok(Self::normalised(num, den))
    }

    pub fn polynomial(p: MultiPoly) -> Self {
        Self { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::polynomial(MultiPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::polynomial(MultiPoly::zero())
    }

    fn normalised(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(q) = num.div_exact(&den) {
            return Self::polynomial(q);
        }
        let lead = den.leading_term().unwrap().1.clone();
        let inv = lead.recip();
        Self { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        self.den.as_constant().filter(|c| c.is_one()).map(|_| &self.num)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalised(self.num.scale(c), self.den.clone())
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        Self::normalised(&self.num * p, self.den.clone())
    }

    /// Quotient rule.
    pub fn partial(&self, var: usize) -> Self {
        if self.den.as_constant().is_some() {
            return Self::normalised(self.num.partial(var), self.den.clone());
        }
        let top = &self.num.partial(var) * &self.den - &self.num * &self.den.partial(var);
        Self::normalised(top, &self.den * &self.den)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let e = n.unsigned_abs();
        Ok(Self::normalised(base.num.pow(e), base.den.pow(e)))
    }

    /// Evaluates at a point; `None` when the denominator vanishes there.
    pub fn eval(&self, point: &[Rational; 3]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn eval_f64(&self, point: [f64; 3]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }
}

/// Smallest product of the given denominators found by reusing one that
/// is already a multiple of the next; otherwise multiplies them.
pub fn common_denominator<'a>(dens: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for d in dens {
        if d.as_constant().is_some() || acc.is_multiple_of(d) {
            continue;
        }
        if d.is_multiple_of(&acc) {
            acc = d.clone();
        } else {
            acc = &acc * d;
        }
    }
    acc
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_polynomial() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        Self::polynomial(p)
    }
}

fn combine(a: &RationalFunction, b: &RationalFunction, subtract: bool) -> RationalFunction {
    let den = common_denominator([&a.den, &b.den]);
    let lift = |r: &RationalFunction| {
        let m = den.div_exact(&r.den).expect("common denominator divides");
        &r.num * &m
    };
    let (na, nb) = (lift(a), lift(b));
    let num = if subtract { na - nb } else { na + nb };
    RationalFunction::normalised(num, den)
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        combine(self, rhs, false)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        combine(self, rhs, true)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalised(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = Result<RationalFunction>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::int;

    #[test]
    fn arithmetic_cancels_and_compares() {
        let [x, y, _] = MultiPoly::coords();
        let one = MultiPoly::one();
        let f = RationalFunction::new(one.clone(), &x + &y).unwrap();
        let g = RationalFunction::new(&x - &y, &(&x + &y) * &(&x + &y)).unwrap();
        let sum = &f + &g;
        assert_eq!(sum.denominator(), &(&(&x + &y) * &(&x + &y)));
        let expected = RationalFunction::new(x.scale(&int(2)), &(&x + &y) * &(&x + &y)).unwrap();
        assert_eq!(sum, expected);
        assert!((&f - &f).is_zero());
        let back = RationalFunction::new(&x * &x - &y * &y, &x + &y).unwrap();
        assert_eq!(back.as_polynomial(), Some(&(&x - &y)));
        assert!(RationalFunction::new(one, MultiPoly::zero()).is_err());
    }

    #[test]
    fn quotient_rule() {
        let [x, _, _] = MultiPoly::coords();
        let f = RationalFunction::new(MultiPoly::one(), x.clone()).unwrap();
        let df = f.partial(0);
        let expected = RationalFunction::new(-MultiPoly::one(), &x * &x).unwrap();
        assert_eq!(df, expected);
    }
}
