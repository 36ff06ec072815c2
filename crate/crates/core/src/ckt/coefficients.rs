//! Coefficients of a CKT written as a combination of symmetric products of
//! conformal Killing vectors, and the 35 free coordinates of the trace-free
//! subspace.

use std::array;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::basis::{levi_civita, Ckv};
use super::field::{SymTensorField, VectorField};
use crate::error::{Error, Result};
use crate::exactmath::rational::serde_str;
use crate::exactmath::{int, rat, Rational};

pub type Mat3 = [[Rational; 3]; 3];
pub type Vec3 = [Rational; 3];

fn zero_mat() -> Mat3 {
    array::from_fn(|_| array::from_fn(|_| Rational::zero()))
}

fn zero_vec() -> Vec3 {
    array::from_fn(|_| Rational::zero())
}

fn trace(m: &Mat3) -> Rational {
    &m[0][0] + &m[1][1] + &m[2][2]
}

/// Coefficient blocks of
/// `K = A·X⊙X + B·X⊙R + C·R⊙R + D·X⊙D + E·X⊙I + F·R⊙D + G·R⊙I + H·D⊙D + L·D⊙I + M·I⊙I`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CktCoefficients {
    #[serde(rename = "A", with = "mat_str")]
    pub a: Mat3,
    #[serde(rename = "B", with = "mat_str")]
    pub b: Mat3,
    #[serde(rename = "C", with = "mat_str")]
    pub c: Mat3,
    #[serde(rename = "D", with = "vec_str")]
    pub d: Vec3,
    #[serde(rename = "E", with = "mat_str")]
    pub e: Mat3,
    #[serde(rename = "F", with = "vec_str")]
    pub f: Vec3,
    #[serde(rename = "G", with = "mat_str")]
    pub g: Mat3,
    #[serde(rename = "Hscalar", with = "serde_str")]
    pub h: Rational,
    #[serde(rename = "L", with = "vec_str")]
    pub l: Vec3,
    #[serde(rename = "M", with = "mat_str")]
    pub m: Mat3,
}

mod mat_str {
    use super::Mat3;
    use crate::exactmath::rational::{format_rational, parse_rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &Mat3, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Mat3, D::Error> {
        let rows = <[[String; 3]; 3]>::deserialize(d)?;
        let mut out = super::zero_mat();
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = parse_rational(&rows[i][j]).map_err(serde::de::Error::custom)?;
            }
        }
        Ok(out)
    }
}

mod vec_str {
    use super::Vec3;
    use crate::exactmath::rational::{format_rational, parse_rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Vec3, s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec3, D::Error> {
        let raw = <[String; 3]>::deserialize(d)?;
        let mut out = super::zero_vec();
        for i in 0..3 {
            out[i] = parse_rational(&raw[i]).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

impl Default for CktCoefficients {
    fn default() -> Self {
        Self {
            a: zero_mat(),
            b: zero_mat(),
            c: zero_mat(),
            d: zero_vec(),
            e: zero_mat(),
            f: zero_vec(),
            g: zero_mat(),
            h: Rational::zero(),
            l: zero_vec(),
            m: zero_mat(),
        }
    }
}

/// Number of free coordinates of the trace-free CKT space.
pub const TRACE_FREE_DIM: usize = 35;

/// Unordered index pairs used for symmetric trace-free blocks (`A`, `M`):
/// the two diagonal entries `11`, `22` and the three off-diagonal ones.
const SYM_FREE: [(usize, usize); 5] = [(0, 0), (1, 1), (0, 1), (0, 2), (1, 2)];
/// Ordered pairs for trace-free general blocks (`B`, `G`).
const GEN_FREE: [(usize, usize); 8] = [(0, 0), (1, 1), (0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

impl CktCoefficients {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn validate_symmetry(&self) -> Result<()> {
        for (name, m) in [("A", &self.a), ("C", &self.c), ("M", &self.m)] {
            for i in 0..3 {
                for j in i + 1..3 {
                    if m[i][j] != m[j][i] {
                        return Err(Error::Validation(format!(
                            "coefficient block {name} is not symmetric at ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a trace-free coefficient set from its 35 free coordinates:
    /// trace-free `A` (5), trace-free `B` (8), `E` (9), trace-free `G` (8),
    /// trace-free `M` (5). `D`, `L`, `C` follow from `B`, `G`, `E`.
    pub fn from_free_coordinates(v: &[Rational]) -> Result<Self> {
        if v.len() != TRACE_FREE_DIM {
            return Err(Error::Validation(format!("expected {TRACE_FREE_DIM} free coordinates, got {}", v.len())));
        }
        let mut c = Self::zero();
        let mut it = v.iter().cloned();
        let sym_block = |it: &mut dyn Iterator<Item = Rational>| {
            let mut m = zero_mat();
            for &(i, j) in &SYM_FREE {
                let val = it.next().unwrap();
                m[i][j] = val.clone();
                m[j][i] = val;
            }
            m[2][2] = -(&m[0][0] + &m[1][1]);
            m
        };
        let gen_block = |it: &mut dyn Iterator<Item = Rational>| {
            let mut m = zero_mat();
            for &(i, j) in &GEN_FREE {
                m[i][j] = it.next().unwrap();
            }
            m[2][2] = -(&m[0][0] + &m[1][1]);
            m
        };
        c.a = sym_block(&mut it);
        c.b = gen_block(&mut it);
        for i in 0..3 {
            for j in 0..3 {
                c.e[i][j] = it.next().unwrap();
            }
        }
        c.g = gen_block(&mut it);
        c.m = sym_block(&mut it);
        c.apply_trace_free_relations();
        Ok(c)
    }

    /// Reads the 35 free coordinates back; only meaningful for coefficient
    /// sets in trace-free normal form.
    pub fn free_coordinates(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(TRACE_FREE_DIM);
        v.extend(SYM_FREE.iter().map(|&(i, j)| self.a[i][j].clone()));
        v.extend(GEN_FREE.iter().map(|&(i, j)| self.b[i][j].clone()));
        v.extend(self.e.iter().flatten().cloned());
        v.extend(GEN_FREE.iter().map(|&(i, j)| self.g[i][j].clone()));
        v.extend(SYM_FREE.iter().map(|&(i, j)| self.m[i][j].clone()));
        v
    }

    /// Overwrites `D`, `L`, `C` (and clears `F`, `H`) from `B`, `G`, `E`:
    /// `Dᵢ = Bⱼₖ εₖⱼᵢ`, `Lᵢ = Gₗₘ εₘₗᵢ`, `Cᵢⱼ = Eᵢⱼ + Eⱼᵢ − ½ Eₖₖ δᵢⱼ`.
    fn apply_trace_free_relations(&mut self) {
        let half = rat(1, 2);
        let e_tr = trace(&self.e);
        for i in 0..3 {
            let mut d = Rational::zero();
            let mut l = Rational::zero();
            for j in 0..3 {
                for k in 0..3 {
                    let eps = levi_civita(k, j, i);
                    if eps != 0 {
                        d += &self.b[j][k] * int(eps);
                        l += &self.g[j][k] * int(eps);
                    }
                }
            }
            self.d[i] = d;
            self.l[i] = l;
            for j in 0..3 {
                let mut cij = &self.e[i][j] + &self.e[j][i];
                if i == j {
                    cij -= &half * &e_tr;
                }
                self.c[i][j] = cij;
            }
        }
        self.f = zero_vec();
        self.h = Rational::zero();
    }

    /// Whether the coefficients are in trace-free normal form.
    pub fn satisfies_trace_free_relations(&self) -> bool {
        let mut copy = self.clone();
        copy.apply_trace_free_relations();
        copy == *self
            && trace(&self.a).is_zero()
            && trace(&self.b).is_zero()
            && trace(&self.g).is_zero()
            && trace(&self.m).is_zero()
    }
}

/// Cached symmetric products of basis fields, indexed by `Ckv::ALL` order.
fn products() -> &'static Vec<Vec<SymTensorField>> {
    static CACHE: OnceLock<Vec<Vec<SymTensorField>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let fields: Vec<VectorField> = Ckv::ALL.iter().map(|v| v.field()).collect();
        fields.iter().map(|v| fields.iter().map(|w| SymTensorField::symmetric_product(v, w)).collect()).collect()
    })
}

fn index_of(v: Ckv) -> usize {
    Ckv::ALL.iter().position(|&w| w == v).unwrap()
}

/// The tensor `V⊙W` for two basis fields.
pub fn basis_product(v: Ckv, w: Ckv) -> &'static SymTensorField {
    &products()[index_of(v)][index_of(w)]
}

/// Expands the coefficient blocks into Cartesian components.
pub fn assemble_ckt(c: &CktCoefficients) -> Result<SymTensorField> {
    c.validate_symmetry()?;
    let mut terms: Vec<(&Rational, Ckv, Ckv)> = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            terms.push((&c.a[i][j], Ckv::X(i), Ckv::X(j)));
            terms.push((&c.b[i][j], Ckv::X(i), Ckv::R(j)));
            terms.push((&c.c[i][j], Ckv::R(i), Ckv::R(j)));
            terms.push((&c.e[i][j], Ckv::X(i), Ckv::I(j)));
            terms.push((&c.g[i][j], Ckv::R(i), Ckv::I(j)));
            terms.push((&c.m[i][j], Ckv::I(i), Ckv::I(j)));
        }
        terms.push((&c.d[i], Ckv::X(i), Ckv::D));
        terms.push((&c.f[i], Ckv::R(i), Ckv::D));
        terms.push((&c.l[i], Ckv::D, Ckv::I(i)));
    }
    terms.push((&c.h, Ckv::D, Ckv::D));
    let mut k = SymTensorField::zero();
    for (coef, v, w) in terms {
        if !coef.is_zero() {
            k = &k + &basis_product(v, w).scale(coef);
        }
    }
    Ok(k)
}

/// Coefficients of the trace-free representative `K − ⅓ tr K · g` of the
/// class of the assembled tensor, in trace-free normal form.
pub fn trace_free_reduce(c: &CktCoefficients) -> Result<CktCoefficients> {
    let k = assemble_ckt(c)?;
    let coords = super::symmetry::trace_free_coordinates(&k.trace_free_part())
        .ok_or_else(|| Error::Consistency("trace-free part of an assembled tensor left the CKT space".into()))?;
    CktCoefficients::from_free_coordinates(&coords)
}
