//! Dense univariate polynomials over the rationals and exact real-root
//! machinery: gcd, square-free decomposition, Sturm sequences, isolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{simplest_between, to_f64, Rational};
use crate::error::{Error, Result};

/// Coefficients low degree first; the last stored coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct UniPoly {
    #[serde(with = "coeff_list")]
    coeffs: Vec<Rational>,
}

pub(crate) mod coeff_list {
    use super::Rational;
    use crate::exactmath::rational::{format_rational, parse_rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let mut out =
            raw.iter().map(|t| parse_rational(t).map_err(serde::de::Error::custom)).collect::<Result<Vec<_>, _>>()?;
        while out.last().is_some_and(num_traits::Zero::is_zero) {
            out.pop();
        }
        Ok(out)
    }
}

/// Sign of a polynomial value, including at ±∞.
fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * z + c)
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z + to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * c;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    /// `Q(X, Y) = Y^n · p(X/Y)` reversed: coefficients of `zⁿ p(1/z)`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(self.degree().is_none_or(|d| d <= n));
        let mut c = self.coeffs.clone();
        c.resize(n + 1, Rational::zero());
        c.reverse();
        Self::new(c)
    }

    /// Sign at `+∞` (`positive = true`) or `−∞`.
    fn sign_at_infinity(&self, positive: bool) -> i8 {
        match (self.leading(), self.degree()) {
            (Some(l), Some(d)) => {
                let s = sign(l);
                if positive || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        }
    }

    /// Sturm sequence `p, p′, −rem(p, p′), …`.
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps sign changes intact and shrinks entries.
            let lead = r.leading().unwrap().abs();
            seq.push(-r.scale(&lead.recip()));
        }
        if seq.last().unwrap().is_zero() {
            seq.pop();
        }
        seq
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots_between(&self, lo: &Rational, hi: &Rational) -> usize {
        let seq = self.sturm_sequence();
        let at = |x: &Rational| changes(seq.iter().map(|p| sign(&p.eval(x))));
        at(lo).saturating_sub(at(hi))
    }

    /// Upper bound on the absolute value of all complex roots (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let max = self.coeffs.iter().take(self.coeffs.len() - 1).map(|c| c.abs()).max().unwrap_or_else(Rational::zero);
        Rational::one() + max / lead
    }

    /// Disjoint isolating intervals `(lo, hi]`, one per distinct real root,
    /// sorted ascending. An interval with `lo == hi` is an exact rational root.
    pub fn isolate_real_roots(&self) -> Result<Vec<(Rational, Rational)>> {
        if self.is_zero() {
            return Err(Error::Domain("root isolation of the zero polynomial".into()));
        }
        let sf = self.squarefree_part()?;
        let seq = sf.sturm_sequence();
        let at = |x: &Rational| changes(seq.iter().map(|p| sign(&p.eval(x))));
        let b = sf.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b, None::<usize>)];
        while let Some((lo, hi, known)) = stack.pop() {
            let n = known.unwrap_or_else(|| at(&lo).saturating_sub(at(&hi)));
            match n {
                0 => {}
                1 => {
                    if sf.eval(&hi).is_zero() {
                        out.push((hi.clone(), hi));
                    } else {
                        out.push((lo, hi));
                    }
                }
                _ => {
                    let mid = (&lo + &hi) / Rational::from_integer(2.into());
                    stack.push((lo, mid.clone(), None));
                    stack.push((mid, hi, None));
                }
            }
        }
        out.sort_by(|a, b| a.1.cmp(&b.1));
        Ok(out)
    }

    /// Narrows an isolating interval `(lo, hi]` until its width is at most
    /// `width`. The polynomial must be square-free.
    pub fn refine_root(&self, lo: &Rational, hi: &Rational, width: &Rational) -> (Rational, Rational) {
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        if lo == hi {
            return (lo, hi);
        }
        let s_hi = sign(&self.eval(&hi));
        if s_hi == 0 {
            return (hi.clone(), hi);
        }
        let two = Rational::from_integer(2.into());
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / &two;
            let s = sign(&self.eval(&mid));
            if s == 0 {
                return (mid.clone(), mid);
            }
            if s == s_hi {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// All rational roots, found by narrowing each isolating interval and
    /// testing its simplest rational.
    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        let sf = self.squarefree_part()?;
        let mut roots = Vec::new();
        for (lo, hi) in sf.isolate_real_roots()? {
            if lo == hi {
                roots.push(lo);
                continue;
            }
            if let Some(r) = sf.rational_root_in(&lo, &hi) {
                roots.push(r);
            }
        }
        Ok(roots)
    }

    fn rational_root_in(&self, lo: &Rational, hi: &Rational) -> Option<Rational> {
        // A rational root p/q of an integer polynomial has q | leading
        // coefficient; once the interval is narrower than 1/(2·lead²) the
        // root is the simplest rational inside it.
        let ints = self.primitive_integer();
        let lead = ints.leading().unwrap().abs();
        let target = (&lead * &lead * Rational::from_integer(4.into())).recip();
        let (mut a, mut b) = (lo.clone(), hi.clone());
        let mut width = &b - &a;
        loop {
            // The interval is open at `a`.
            let s = simplest_between(&a, &b);
            if s != a && self.eval(&s).is_zero() {
                return Some(s);
            }
            if width <= target {
                return None;
            }
            width /= Rational::from_integer(16.into());
            let (na, nb) = self.refine_root(&a, &b, &width);
            if na == nb {
                return Some(na);
            }
            a = na;
            b = nb;
        }
    }

    /// Rescaled copy with coprime integer coefficients and positive leading
    /// coefficient.
    pub fn primitive_integer(&self) -> UniPoly {
        use num_integer::Integer;
        let den = super::rational::denominator_lcm(self.coeffs.iter());
        let ints: Vec<_> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |a, b| a.gcd(b));
        if g.is_zero() {
            return Self::zero();
        }
        let g = if ints.last().unwrap().is_negative() { -g } else { g };
        Self::new(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
    }

    /// `p / gcd(p, p′)`, made monic.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::Domain("square-free part of the zero polynomial".into()));
        }
        if self.degree() == Some(0) {
            return Ok(Self::constant(Rational::one()));
        }
        let g = poly_gcd(self, &self.derivative())?;
        Ok(self.div_rem(&g).0.monic())
    }
}

fn changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Monic greatest common divisor.
pub fn poly_gcd(p: &UniPoly, q: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::Domain("gcd of two zero polynomials".into()));
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b).1;
        a = b;
        b = if r.is_zero() { r } else { r.monic() };
    }
    Ok(a.monic())
}

/// Yun's algorithm. Factors are monic, square-free and pairwise coprime;
/// their product with multiplicities equals `p` up to its leading coefficient.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::Domain("square-free decomposition of the zero polynomial".into()));
    }
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = poly_gcd(p, &dp)?;
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut mult = 1;
    loop {
        let a = poly_gcd(&b, &d)?;
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), mult));
        }
        b = b.div_rem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        mult += 1;
    }
    Ok(out)
}

/// Number of distinct real roots. Non-square-free input is reduced first.
pub fn real_root_count(p: &UniPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain("real root count of the zero polynomial".into()));
    }
    let sf = p.squarefree_part()?;
    let seq = sf.sturm_sequence();
    let minus = changes(seq.iter().map(|s| s.sign_at_infinity(false)));
    let plus = changes(seq.iter().map(|s| s.sign_at_infinity(true)));
    Ok(minus.saturating_sub(plus))
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let a = c.abs();
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}z", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}z^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}
