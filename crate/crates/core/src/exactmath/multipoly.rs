//! Sparse polynomials in `x, y, z` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{denominator_lcm, Rational};

/// Exponent triple packed into one word, 8 bits per variable.
///
/// Packing keeps products of monomials a single integer addition as long
/// as no exponent exceeds 255.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(i: u32, j: u32, k: u32) -> Self {
        assert!(i < 256 && j < 256 && k < 256, "exponent overflow");
        Monomial((i << 16) | (j << 8) | k)
    }

    pub fn exps(self) -> [u32; 3] {
        [(self.0 >> 16) & 0xff, (self.0 >> 8) & 0xff, self.0 & 0xff]
    }

    pub fn degree(self) -> u32 {
        self.exps().iter().sum()
    }

    fn times(self, other: Monomial) -> Monomial {
        let (a, b) = (self.exps(), other.exps());
        Monomial::new(a[0] + b[0], a[1] + b[1], a[2] + b[2])
    }

    fn divides(self, other: Monomial) -> bool {
        let (a, b) = (self.exps(), other.exps());
        (0..3).all(|i| a[i] <= b[i])
    }

    fn quotient(self, divisor: Monomial) -> Monomial {
        let (a, b) = (self.exps(), divisor.exps());
        Monomial::new(a[0] - b[0], a[1] - b[1], a[2] - b[2])
    }

    /// Graded-lexicographic sort key.
    fn grlex(self) -> (u32, [u32; 3]) {
        (self.degree(), self.exps())
    }
}

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// The coordinate `x` (0), `y` (1) or `z` (2).
    pub fn var(index: usize) -> Self {
        let mut e = [0; 3];
        e[index] = 1;
        Self::term(Monomial::new(e[0], e[1], e[2]), Rational::one())
    }

    pub fn coords() -> [Self; 3] {
        [Self::var(0), Self::var(1), Self::var(2)]
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; 3], Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(Monomial::new(e[0], e[1], e[2]), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: [u32; 3]) -> Rational {
        self.terms.get(&Monomial::new(e[0], e[1], e[2])).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Leading term in graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().max_by_key(|(m, _)| m.grlex()).map(|(m, c)| (*m, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.exps();
            if e[var] == 0 {
                continue;
            }
            let factor = Rational::from_integer(BigInt::from(e[var]));
            e[var] -= 1;
            out.insert(Monomial::new(e[0], e[1], e[2]), c * factor);
        }
        Self { terms: out }
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut powers: [Vec<Rational>; 3] = Default::default();
        let maxdeg = self.degree().unwrap_or(0) as usize;
        for (v, p) in powers.iter_mut().enumerate() {
            p.push(Rational::one());
            for i in 1..=maxdeg {
                let next = &p[i - 1] * &point[v];
                p.push(next);
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let e = m.exps();
            acc += c * &powers[0][e[0] as usize] * &powers[1][e[1] as usize] * &powers[2][e[2] as usize];
        }
        acc
    }

    pub fn eval_f64(&self, point: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let e = m.exps();
                super::rational::to_f64(c)
                    * point[0].powi(e[0] as i32)
                    * point[1].powi(e[1] as i32)
                    * point[2].powi(e[2] as i32)
            })
            .sum()
    }

    /// Substitutes polynomials for the three coordinates.
    pub fn compose(&self, subs: &[MultiPoly; 3]) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exps();
            let t = subs[0].pow(e[0]) * &subs[1].pow(e[1]) * &subs[2].pow(e[2]);
            acc += &t.scale(c);
        }
        acc
    }

    /// Integer-coefficient view: `self = content_den⁻¹ · Σ n_m m` with the
    /// common denominator returned first.
    fn integer_view(&self) -> (BigInt, Vec<(Monomial, BigInt)>) {
        let den = denominator_lcm(self.terms.values());
        let terms = self.terms.iter().map(|(m, c)| (*m, c.numer() * (&den / c.denom()))).collect();
        (den, terms)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Rational {
        let (den, ints) = self.integer_view();
        let g = ints.iter().fold(BigInt::zero(), |acc, (_, n)| acc.gcd(n));
        if g.is_zero() {
            return Rational::one();
        }
        Rational::new(g, den)
    }

    /// Exact quotient `self / divisor` if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lead_m, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            if !lead_m.divides(m) {
                return None;
            }
            let qm = m.quotient(lead_m);
            let qc = c / lead_c;
            let step = MultiPoly::term(qm, qc.clone());
            rem -= &(&step * divisor);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn is_multiple_of(&self, other: &MultiPoly) -> bool {
        self.div_exact(other).is_some()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| std::cmp::Reverse(m.grlex()));
        for (idx, (m, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = c.abs();
            let e = m.exps();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for (v, name) in ["x", "y", "z"].iter().enumerate() {
                match e[v] {
                    0 => {}
                    1 => factors.push((*name).to_string()),
                    p => factors.push(format!("{name}^{p}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        // Multiply integer images and divide once at the end; this avoids
        // a gcd per partial product.
        let (da, ta) = self.integer_view();
        let (db, tb) = rhs.integer_view();
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &ta {
            for (mb, cb) in &tb {
                let prod = ca * cb;
                *acc.entry(ma.times(*mb)).or_default() += prod;
            }
        }
        let den = da * db;
        let terms =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, Rational::new(c, den.clone()))).collect();
        MultiPoly { terms }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}
forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

macro_rules! owned_variants {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}
owned_variants!(Add, add);
owned_variants!(Sub, sub);
owned_variants!(Mul, mul);
