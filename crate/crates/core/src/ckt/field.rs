//! Vector fields, symmetric contravariant 2-tensors and differential forms
//! with polynomial (or rational-function) Cartesian components.

use std::array;
use std::ops::{Add, Sub};

use crate::exactmath::{MultiPoly, Rational, RationalFunction};

/// Polynomial vector field `(V¹, V², V³)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VectorField {
    pub comps: [MultiPoly; 3],
}

impl VectorField {
    pub fn new(comps: [MultiPoly; 3]) -> Self {
        Self { comps }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MultiPoly::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(array::from_fn(|i| self.comps[i].scale(c)))
    }

    pub fn eval(&self, point: &[Rational; 3]) -> [Rational; 3] {
        array::from_fn(|i| self.comps[i].eval(point))
    }

    pub fn divergence(&self) -> MultiPoly {
        (0..3).fold(MultiPoly::zero(), |acc, i| acc + self.comps[i].partial(i))
    }

    /// Directional derivative `Vʲ ∂ⱼ f`.
    pub fn derive(&self, f: &MultiPoly) -> MultiPoly {
        (0..3).fold(MultiPoly::zero(), |acc, j| acc + &self.comps[j] * &f.partial(j))
    }

    /// Lie bracket `[V, W]ⁱ = Vʲ∂ⱼWⁱ − Wʲ∂ⱼVⁱ`.
    pub fn commutator(&self, other: &VectorField) -> VectorField {
        VectorField::new(array::from_fn(|i| self.derive(&other.comps[i]) - other.derive(&self.comps[i])))
    }

    /// The factor `f` with `ℒ_V g = f g`, or `None` if `V` is not conformal.
    pub fn conformal_factor(&self) -> Option<MultiPoly> {
        let f = self.comps[0].partial(0).scale(&Rational::from_integer(2.into()));
        for i in 0..3 {
            for j in i..3 {
                let lg = self.comps[j].partial(i) + self.comps[i].partial(j);
                let expected = if i == j { f.clone() } else { MultiPoly::zero() };
                if lg != expected {
                    return None;
                }
            }
        }
        Some(f)
    }

    pub fn cross(&self, other: &VectorField) -> VectorField {
        let (a, b) = (&self.comps, &other.comps);
        VectorField::new([&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]])
    }

    /// `dV♭`, as the curl `(∂₂V₃ − ∂₃V₂, ∂₃V₁ − ∂₁V₃, ∂₁V₂ − ∂₂V₁)`.
    pub fn curl(&self) -> VectorField {
        let v = &self.comps;
        VectorField::new([
            v[2].partial(1) - v[1].partial(2),
            v[0].partial(2) - v[2].partial(0),
            v[1].partial(0) - v[0].partial(1),
        ])
    }
}

impl Add<&VectorField> for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField::new(array::from_fn(|i| &self.comps[i] + &rhs.comps[i]))
    }
}

impl Sub<&VectorField> for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField::new(array::from_fn(|i| &self.comps[i] - &rhs.comps[i]))
    }
}

/// Index pairs of the six independent components, in storage order.
pub const SYM_INDEX: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

fn slot(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 0) => 0,
        (0, 1) => 1,
        (0, 2) => 2,
        (1, 1) => 3,
        (1, 2) => 4,
        (2, 2) => 5,
        _ => unreachable!("index out of range"),
    }
}

/// Symmetric tensor field stored as `K₁₁, K₁₂, K₁₃, K₂₂, K₂₃, K₃₃`.
/// With the flat metric the index position is immaterial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SymTensorField {
    comps: [MultiPoly; 6],
}

impl SymTensorField {
    pub fn from_components(comps: [MultiPoly; 6]) -> Self {
        Self { comps }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        Self { comps: array::from_fn(|s| f(SYM_INDEX[s].0, SYM_INDEX[s].1)) }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The flat metric `δⁱʲ`.
    pub fn metric() -> Self {
        Self::from_fn(|i, j| if i == j { MultiPoly::one() } else { MultiPoly::zero() })
    }

    /// `(V⊙W)ⁱʲ = ½(VⁱWʲ + VʲWⁱ)`.
    pub fn symmetric_product(v: &VectorField, w: &VectorField) -> Self {
        let half = Rational::new(1.into(), 2.into());
        Self::from_fn(|i, j| {
            if i == j {
                &v.comps[i] * &w.comps[i]
            } else {
                (&v.comps[i] * &w.comps[j] + &v.comps[j] * &w.comps[i]).scale(&half)
            }
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.comps[slot(i, j)]
    }

    pub fn components(&self) -> &[MultiPoly; 6] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MultiPoly::is_zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.comps.iter().filter_map(MultiPoly::degree).max()
    }

    pub fn trace(&self) -> MultiPoly {
        self.get(0, 0) + self.get(1, 1) + self.get(2, 2)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { comps: array::from_fn(|s| self.comps[s].scale(c)) }
    }

    pub fn scale_poly(&self, f: &MultiPoly) -> Self {
        Self { comps: array::from_fn(|s| &self.comps[s] * f) }
    }

    /// `K + f g`.
    pub fn plus_metric_multiple(&self, f: &MultiPoly) -> Self {
        let mut out = self.clone();
        for i in 0..3 {
            out.comps[slot(i, i)] += f;
        }
        out
    }

    /// Trace-free representative `K − ⅓ tr K · g` of the class of `K`.
    pub fn trace_free_part(&self) -> Self {
        let third = Rational::new((-1).into(), 3.into());
        self.plus_metric_multiple(&self.trace().scale(&third))
    }

    /// `(K·V)ⁱ = Kⁱʲ Vʲ`.
    pub fn apply(&self, v: &VectorField) -> VectorField {
        VectorField::new(array::from_fn(|i| {
            (0..3).fold(MultiPoly::zero(), |acc, j| acc + self.get(i, j) * &v.comps[j])
        }))
    }

    /// `(K ω)ᵢ = Kᵢⱼ ωⱼ` for a one-form with rational-function components.
    pub fn apply_form(&self, w: &OneForm) -> OneForm {
        OneForm::new(array::from_fn(|i| {
            (0..3).fold(RationalFunction::zero(), |acc, j| &acc + &w.comps[j].mul_poly(self.get(i, j)))
        }))
    }

    /// Matrix product `K·L` of two fields (symmetric when they commute, as
    /// for `K·K`).
    pub fn square(&self) -> Self {
        Self::from_fn(|i, j| (0..3).fold(MultiPoly::zero(), |acc, l| acc + self.get(i, l) * self.get(l, j)))
    }

    pub fn eval(&self, point: &[Rational; 3]) -> [[Rational; 3]; 3] {
        let vals: [Rational; 6] = array::from_fn(|s| self.comps[s].eval(point));
        array::from_fn(|i| array::from_fn(|j| vals[slot(i, j)].clone()))
    }

    pub fn eval_f64(&self, point: [f64; 3]) -> [[f64; 3]; 3] {
        let vals: [f64; 6] = array::from_fn(|s| self.comps[s].eval_f64(point));
        array::from_fn(|i| array::from_fn(|j| vals[slot(i, j)]))
    }
}

impl Add<&SymTensorField> for &SymTensorField {
    type Output = SymTensorField;
    fn add(self, rhs: &SymTensorField) -> SymTensorField {
        SymTensorField { comps: array::from_fn(|s| &self.comps[s] + &rhs.comps[s]) }
    }
}

impl Sub<&SymTensorField> for &SymTensorField {
    type Output = SymTensorField;
    fn sub(self, rhs: &SymTensorField) -> SymTensorField {
        SymTensorField { comps: array::from_fn(|s| &self.comps[s] - &rhs.comps[s]) }
    }
}

/// One-form `ωᵢ dxⁱ` with rational-function components.
#[derive(Clone, PartialEq, Debug)]
pub struct OneForm {
    pub comps: [RationalFunction; 3],
}

impl OneForm {
    pub fn new(comps: [RationalFunction; 3]) -> Self {
        Self { comps }
    }

    pub fn from_vector(v: &VectorField) -> Self {
        Self::new(array::from_fn(|i| RationalFunction::polynomial(v.comps[i].clone())))
    }

    pub fn gradient(f: &RationalFunction) -> Self {
        Self::new(array::from_fn(|i| f.partial(i)))
    }

    pub fn scale_by(&self, f: &RationalFunction) -> Self {
        Self::new(array::from_fn(|i| &self.comps[i] * f))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RationalFunction::is_zero)
    }

    /// Exterior derivative, reported through its three independent
    /// components on `dx²∧dx³, dx³∧dx¹, dx¹∧dx²`.
    pub fn exterior_derivative(&self) -> TwoForm {
        let w = &self.comps;
        TwoForm::new([
            &w[2].partial(1) - &w[1].partial(2),
            &w[0].partial(2) - &w[2].partial(0),
            &w[1].partial(0) - &w[0].partial(1),
        ])
    }
}

impl Add<&OneForm> for &OneForm {
    type Output = OneForm;
    fn add(self, rhs: &OneForm) -> OneForm {
        OneForm::new(array::from_fn(|i| &self.comps[i] + &rhs.comps[i]))
    }
}

impl Sub<&OneForm> for &OneForm {
    type Output = OneForm;
    fn sub(self, rhs: &OneForm) -> OneForm {
        OneForm::new(array::from_fn(|i| &self.comps[i] - &rhs.comps[i]))
    }
}

/// Two-form on 3-space stored by its components on
/// `dx²∧dx³, dx³∧dx¹, dx¹∧dx²`.
#[derive(Clone, PartialEq, Debug)]
pub struct TwoForm {
    pub comps: [RationalFunction; 3],
}

impl TwoForm {
    pub fn new(comps: [RationalFunction; 3]) -> Self {
        Self { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RationalFunction::is_zero)
    }

    /// Antisymmetric matrix `Fᵢⱼ` of the form.
    pub fn matrix_entry(&self, i: usize, j: usize) -> RationalFunction {
        match (i, j) {
            (1, 2) => self.comps[0].clone(),
            (2, 1) => -&self.comps[0],
            (2, 0) => self.comps[1].clone(),
            (0, 2) => -&self.comps[1],
            (0, 1) => self.comps[2].clone(),
            (1, 0) => -&self.comps[2],
            _ => RationalFunction::zero(),
        }
    }
}

/// Convenience: the one-form is closed.
pub fn is_closed(w: &OneForm) -> bool {
    w.exterior_derivative().is_zero()
}
