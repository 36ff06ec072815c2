//! The conformal Killing equation, its Killing reduction, Lie derivatives
//! and the dimension count.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::field::{OneForm, SymTensorField, TwoForm, VectorField};
use crate::error::{Error, Result};
use crate::exactmath::{rat, MultiPoly};

#[derive(Clone, Debug)]
pub struct CktVerdict {
    pub holds: bool,
    /// `kᵢ = (∂ᵢ tr K + 2 ∂ⱼ Kⱼᵢ) / 5`, the vector that `K` would have to
    /// satisfy `∂₍ᵢKⱼₖ₎ = k₍ᵢδⱼₖ₎` with.
    pub k: VectorField,
}

/// The conformal vector obtained by contracting the CKT equation.
pub fn conformal_vector(k: &SymTensorField) -> VectorField {
    let tr = k.trace();
    let fifth = rat(1, 5);
    let two = rat(2, 1);
    VectorField::new(std::array::from_fn(|i| {
        let div = (0..3).fold(MultiPoly::zero(), |acc, j| acc + k.get(j, i).partial(j));
        (tr.partial(i) + div.scale(&two)).scale(&fifth)
    }))
}

/// Checks `∂ᵢKⱼₗ + ∂ⱼKₗᵢ + ∂ₗKᵢⱼ = kᵢδⱼₗ + kⱼδₗᵢ + kₗδᵢⱼ` for all index triples.
pub fn verify_ckt(k: &SymTensorField) -> CktVerdict {
    let kv = conformal_vector(k);
    let mut holds = true;
    'outer: for i in 0..3 {
        for j in i..3 {
            for l in j..3 {
                let lhs = k.get(j, l).partial(i) + k.get(l, i).partial(j) + k.get(i, j).partial(l);
                let mut rhs = MultiPoly::zero();
                if j == l {
                    rhs += &kv.comps[i];
                }
                if l == i {
                    rhs += &kv.comps[j];
                }
                if i == j {
                    rhs += &kv.comps[l];
                }
                if lhs != rhs {
                    holds = false;
                    break 'outer;
                }
            }
        }
    }
    CktVerdict { holds, k: kv }
}

/// The two-form `d k♭`; it vanishes exactly when the class of `K` modulo
/// multiples of the metric contains a Killing tensor.
pub fn killing_obstruction(k: &SymTensorField) -> Result<TwoForm> {
    let verdict = verify_ckt(k);
    if !verdict.holds {
        return Err(Error::Domain("tensor is not a conformal Killing tensor".into()));
    }
    Ok(OneForm::from_vector(&verdict.k).exterior_derivative())
}

/// `(ℒ_V K)ⁱʲ = Vᵏ∂ₖKⁱʲ − Kᵏʲ∂ₖVⁱ − Kⁱᵏ∂ₖVʲ`.
pub fn lie_derivative(v: &VectorField, k: &SymTensorField) -> SymTensorField {
    let grad_v: [[MultiPoly; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|c| v.comps[i].partial(c)));
    SymTensorField::from_fn(|i, j| {
        let mut out = v.derive(k.get(i, j));
        for c in 0..3 {
            out -= &(k.get(c, j) * &grad_v[i][c]);
            out -= &(k.get(i, c) * &grad_v[j][c]);
        }
        out
    })
}

/// Dimension of the space of trace-free conformal Killing tensors of
/// valence `p` on `n`-dimensional flat space.
pub fn ckt_dimension(n: u32, p: u32) -> Result<BigUint> {
    if n < 3 || p < 1 {
        return Err(Error::Domain(format!("dimension formula needs n ≥ 3 and p ≥ 1, got n = {n}, p = {p}")));
    }
    let fact = |m: u32| (1..=m).fold(BigUint::one(), |acc, i| acc * i);
    let num = fact(n + p - 3)
        * fact(n + p - 2)
        * BigUint::from(n + 2 * p - 2)
        * BigUint::from(n + 2 * p - 1)
        * BigUint::from(n + 2 * p);
    let den = fact(p) * fact(p + 1) * fact(n - 2) * fact(n);
    if !(&num % &den).is_zero() {
        return Err(Error::Consistency("dimension formula produced a non-integer".into()));
    }
    Ok(num / den)
}
