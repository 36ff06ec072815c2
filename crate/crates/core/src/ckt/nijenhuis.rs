//! Nijenhuis torsion of a symmetric tensor and the three
//! Tonolo–Schouten–Nijenhuis (TSN) conditions for normal eigenvectors.

use super::field::SymTensorField;
use crate::exactmath::{rat, MultiPoly};

/// `Nⁱⱼₖ = ½Kⁱₗ(∂ₖKˡⱼ − ∂ⱼKˡₖ) + ½(Kˡⱼ∂ₗKⁱₖ − Kˡₖ∂ₗKⁱⱼ)`, antisymmetric in
/// `j, k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisTensor {
    comps: [[[MultiPoly; 3]; 3]; 3],
}

impl NijenhuisTensor {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &MultiPoly {
        &self.comps[i][j][k]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().flatten().all(MultiPoly::is_zero)
    }
}

/// First derivatives `∂ₖKᵢⱼ`, indexed `[k][slot]` through `get`.
struct Gradient {
    d: [[[MultiPoly; 3]; 3]; 3],
}

impl Gradient {
    fn new(k: &SymTensorField) -> Self {
        Self { d: std::array::from_fn(|c| std::array::from_fn(|i| std::array::from_fn(|j| k.get(i, j).partial(c)))) }
    }

    /// `∂_c K_{ij}`.
    fn of(&self, c: usize, i: usize, j: usize) -> &MultiPoly {
        &self.d[c][i][j]
    }
}

/// `Nⁱⱼₖ` for one ordered pair `(j, k)`.
fn component(k: &SymTensorField, grad: &Gradient, i: usize, j: usize, kk: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for l in 0..3 {
        let torsion = grad.of(kk, l, j) - grad.of(j, l, kk);
        if !torsion.is_zero() {
            out += &(k.get(i, l) * &torsion);
        }
        let a = k.get(l, j) * grad.of(l, i, kk);
        let b = k.get(l, kk) * grad.of(l, i, j);
        out += &(a - b);
    }
    out.scale(&rat(1, 2))
}

pub fn nijenhuis(k: &SymTensorField) -> NijenhuisTensor {
    let grad = Gradient::new(k);
    let mut comps: [[[MultiPoly; 3]; 3]; 3] = Default::default();
    for i in 0..3 {
        for (j, kk) in [(0, 1), (0, 2), (1, 2)] {
            let n = component(k, &grad, i, j, kk);
            comps[i][kk][j] = -&n;
            comps[i][j][kk] = n;
        }
    }
    NijenhuisTensor { comps }
}

/// Cyclic triples `(j, k, i)`; in three dimensions the total
/// antisymmetrisation of `Nˡⱼₖ Tᵢₗ` reduces to their sum.
const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

/// The three TSN polynomials `Σ_cyc Nˡⱼₖ Tᵢₗ` for `T = g, K, K²`.
/// All three vanish identically exactly when the eigenvectors are normal.
pub fn tsn_conditions(k: &SymTensorField) -> [MultiPoly; 3] {
    let n = nijenhuis(k);
    let first = first_condition(&n);
    let (second, third) = higher_conditions(k, &n);
    [first, second, third]
}

fn first_condition(n: &NijenhuisTensor) -> MultiPoly {
    CYCLIC.iter().fold(MultiPoly::zero(), |acc, &(j, kk, i)| acc + n.get(i, j, kk))
}

/// `Pᵐ = Σₗ Nˡⱼₖ Kₘₗ` for each cyclic `(j, k)` is shared by the `K` and `K²`
/// conditions: the second is `Σ P^i`, the third `Σ Kᵢₘ Pᵐ`.
fn higher_conditions(k: &SymTensorField, n: &NijenhuisTensor) -> (MultiPoly, MultiPoly) {
    let mut second = MultiPoly::zero();
    let mut third = MultiPoly::zero();
    for &(j, kk, i) in &CYCLIC {
        let p: [MultiPoly; 3] =
            std::array::from_fn(|m| (0..3).fold(MultiPoly::zero(), |acc, l| acc + n.get(l, j, kk) * k.get(m, l)));
        second += &p[i];
        for (m, pm) in p.iter().enumerate() {
            third += &(k.get(i, m) * pm);
        }
    }
    (second, third)
}

/// Evaluates a single TSN condition (0: metric, 1: `K`, 2: `K²`).
pub fn tsn_condition(k: &SymTensorField, which: usize) -> MultiPoly {
    let n = nijenhuis(k);
    match which {
        0 => first_condition(&n),
        1 => higher_conditions(k, &n).0,
        2 => higher_conditions(k, &n).1,
        _ => panic!("there are three TSN conditions"),
    }
}

/// True when all three TSN conditions vanish identically.
pub fn tsn_check(k: &SymTensorField) -> bool {
    let n = nijenhuis(k);
    if !first_condition(&n).is_zero() {
        return false;
    }
    let (second, third) = higher_conditions(k, &n);
    second.is_zero() && third.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ckt::basis::Ckv;
    use crate::ckt::coefficients::basis_product;
    use crate::exactmath::MultiPoly;

    #[test]
    fn constant_and_metric_tensors_have_no_torsion() {
        assert!(nijenhuis(&SymTensorField::metric()).is_zero());
        assert!(tsn_check(&SymTensorField::metric()));
    }

    #[test]
    fn diagonal_fixture() {
        // K = diag(y, 1, 1): N¹₁₂ = ½K¹¹(∂₂K¹¹) − ½K²₂∂₂K¹₁ = ½y − ½ = (y − 1)/2
        let [_, y, _] = MultiPoly::coords();
        let k = SymTensorField::from_fn(|i, j| match (i, j) {
            (0, 0) => y.clone(),
            (a, b) if a == b => MultiPoly::one(),
            _ => MultiPoly::zero(),
        });
        let n = nijenhuis(&k);
        let expected = (&y - &MultiPoly::one()).scale(&rat(1, 2));
        assert_eq!(n.get(0, 0, 1), &expected);
        assert_eq!(n.get(0, 1, 0), &-&expected);
        // Diagonal tensors have coordinate eigenvectors, which are normal.
        assert!(tsn_check(&k));
    }

    #[test]
    fn rotational_sample_is_normal() {
        let k = basis_product(Ckv::R(2), Ckv::R(2)).plus_metric_multiple(&MultiPoly::one());
        assert!(tsn_check(&k));
    }
}
