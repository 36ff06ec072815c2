//! The ten conformal Killing vectors of flat 3-space: translations `Xᵢ`,
//! rotations `Rᵢ`, the dilation `D` and the special conformal fields `Iᵢ`.
//! The Levi-Civita symbol is normalised by `ε₁₂₃ = +1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactmath::{int, MultiPoly, Rational};

use super::field::VectorField;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Ckv {
    X(usize),
    R(usize),
    D,
    I(usize),
}

/// `ε_{ijk}` with `ε₀₁₂ = +1` (zero-based indices).
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

impl Ckv {
    pub const ALL: [Ckv; 10] =
        [Ckv::X(0), Ckv::X(1), Ckv::X(2), Ckv::R(0), Ckv::R(1), Ckv::R(2), Ckv::D, Ckv::I(0), Ckv::I(1), Ckv::I(2)];

    pub fn field(self) -> VectorField {
        let x = MultiPoly::coords();
        match self {
            Ckv::X(i) => {
                let mut c: [MultiPoly; 3] = Default::default();
                c[i] = MultiPoly::one();
                VectorField::new(c)
            }
            Ckv::R(i) => VectorField::new(std::array::from_fn(|k| {
                (0..3).fold(MultiPoly::zero(), |acc, j| acc + x[j].scale(&int(levi_civita(i, j, k))))
            })),
            Ckv::D => VectorField::new(x),
            Ckv::I(i) => {
                let r2 = (0..3).fold(MultiPoly::zero(), |acc, j| acc + &x[j] * &x[j]);
                VectorField::new(std::array::from_fn(|k| {
                    let t = (&x[i] * &x[k]).scale(&int(2));
                    if k == i {
                        t - &r2
                    } else {
                        t
                    }
                }))
            }
        }
    }

    /// The factor `f` in `ℒ_V g = f g`.
    pub fn conformal_factor(self) -> MultiPoly {
        match self {
            Ckv::X(_) | Ckv::R(_) => MultiPoly::zero(),
            Ckv::D => MultiPoly::constant(int(2)),
            Ckv::I(i) => MultiPoly::var(i).scale(&int(4)),
        }
    }
}

impl fmt::Display for Ckv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ckv::X(i) => write!(f, "X{}", i + 1),
            Ckv::R(i) => write!(f, "R{}", i + 1),
            Ckv::D => write!(f, "D"),
            Ckv::I(i) => write!(f, "I{}", i + 1),
        }
    }
}

impl FromStr for Ckv {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "D" {
            return Ok(Ckv::D);
        }
        let mut chars = s.chars();
        let kind = chars.next();
        let idx: Option<usize> = chars.as_str().parse().ok().filter(|i| (1..=3).contains(i));
        match (kind, idx) {
            (Some('X'), Some(i)) => Ok(Ckv::X(i - 1)),
            (Some('R'), Some(i)) => Ok(Ckv::R(i - 1)),
            (Some('I'), Some(i)) => Ok(Ckv::I(i - 1)),
            _ => Err(Error::Parse(format!("unknown conformal Killing vector {s:?}"))),
        }
    }
}

/// The basis in the order `X₁, X₂, X₃, R₁, R₂, R₃, D, I₁, I₂, I₃`.
pub fn ckv_basis() -> Vec<VectorField> {
    Ckv::ALL.iter().map(|v| v.field()).collect()
}

/// Expected bracket `[a, b]` as a linear combination of basis fields.
pub fn expected_commutator(a: Ckv, b: Ckv) -> Vec<(Rational, Ckv)> {
    use Ckv::*;
    let delta = |i: usize, j: usize| i64::from(i == j);
    let eps_sum = |i: usize, j: usize, sign: i64, wrap: fn(usize) -> Ckv| {
        (0..3)
            .filter(|&k| levi_civita(i, j, k) != 0)
            .map(|k| (int(sign * levi_civita(i, j, k)), wrap(k)))
            .collect::<Vec<_>>()
    };
    let neg = |v: Vec<(Rational, Ckv)>| v.into_iter().map(|(c, f)| (-c, f)).collect();
    match (a, b) {
        (X(_), X(_)) | (D, D) | (I(_), I(_)) => vec![],
        (X(i), R(j)) => eps_sum(i, j, -1, X),
        (R(i), X(j)) => neg(expected_commutator(X(j), R(i))),
        (X(i), D) => vec![(int(1), X(i))],
        (D, X(i)) => vec![(int(-1), X(i))],
        (X(i), I(j)) => {
            let mut v = eps_sum(i, j, -2, R);
            if delta(i, j) == 1 {
                v.push((int(2), D));
            }
            v
        }
        (I(j), X(i)) => neg(expected_commutator(X(i), I(j))),
        (R(i), R(j)) => eps_sum(i, j, -1, R),
        (R(_), D) | (D, R(_)) => vec![],
        (R(i), I(j)) => eps_sum(i, j, -1, I),
        (I(j), R(i)) => neg(expected_commutator(R(i), I(j))),
        (D, I(i)) => vec![(int(1), I(i))],
        (I(i), D) => vec![(int(-1), I(i))],
    }
}
