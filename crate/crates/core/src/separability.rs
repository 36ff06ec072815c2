//! Compatibility of rotational CKTs with a scalar potential at fixed energy.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::ckt::{is_closed, killing_obstruction, verify_ckt, OneForm, SymTensorField, VectorField};
use crate::error::{Error, Result};
use crate::exactmath::linalg::QMatrix;
use crate::exactmath::{int, Monomial, MultiPoly, Rational, RationalFunction};
use crate::expr::parse_expression;
use crate::quartic::{classify_by_roots, BinaryQuartic, WebType};
use crate::rotational::{assemble_rotational, RotParams};

#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    pub v: RationalFunction,
    pub energy: Rational,
}

impl Potential {
    pub fn new(v: RationalFunction, energy: Rational) -> Self {
        Self { v, energy }
    }

    /// Parses `v` over `x, y, z` and the named constants.
    pub fn parse(v: &str, energy: Rational, constants: &BTreeMap<String, Rational>) -> Result<Self> {
        Ok(Self::new(parse_expression(v, constants)?, energy))
    }

    /// `V = −4c² / ((x²+y²+z²−c²)² + 4c²z²)`, which separates at `E = 0`
    /// in toroidal coordinates.
    pub fn toroidal_example(c: &Rational) -> Self {
        let [x, y, z] = MultiPoly::coords();
        let c2 = MultiPoly::constant(c * c);
        let r2c = &(&(&x * &x) + &(&y * &y)) + &(&(&z * &z) - &c2);
        let den = &(&r2c * &r2c) + &(&(&z * &z) * &c2).scale(&int(4));
        let num = MultiPoly::constant(-(c * c) * int(4));
        Self::new(RationalFunction::new(num, den).expect("denominator is nonzero"), Rational::zero())
    }
}

/// `(E − V) k♭ − K dV`, where `k` is the conformal vector of `K`.
pub fn compatibility_form_tensor(k: &SymTensorField, pot: &Potential) -> Result<OneForm> {
    let verdict = verify_ckt(k);
    if !verdict.holds {
        return Err(Error::Domain("compatibility form needs a conformal Killing tensor".into()));
    }
    let e_minus_v = &RationalFunction::constant(pot.energy.clone()) - &pot.v;
    let kflat = OneForm::from_vector(&verdict.k).scale_by(&e_minus_v);
    let kdv = k.apply_form(&OneForm::gradient(&pot.v));
    Ok(&kflat - &kdv)
}

pub fn compatibility_form(p: &RotParams, pot: &Potential) -> Result<OneForm> {
    compatibility_form_tensor(&assemble_rotational(p), pot)
}

/// The solutions form a linear subspace of parameter space; the particular
/// solution is always zero and is kept for a uniform affine description.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamSolution {
    pub particular: RotParams,
    pub basis: Vec<RotParams>,
    /// `R₃⊙R₃` lies in the solution space.
    pub c33_free: bool,
    pub equations: usize,
}

impl ParamSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, p: &RotParams) -> bool {
        let mut rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.to_array().to_vec()).collect();
        let rank = QMatrix::from_rows(rows.clone()).rank();
        rows.push(p.to_array().to_vec());
        QMatrix::from_rows(rows).rank() == rank
    }

    /// Rank of the projection of the solutions onto `(M₃₃, L₃, H, D₃, A₃₃)`.
    pub fn quartic_rank(&self) -> usize {
        self.quartic_span().len()
    }

    fn quartic_span(&self) -> Vec<Vec<Rational>> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        let rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.quartic().coeffs().to_vec()).collect();
        let ech = QMatrix::from_rows(rows).echelon();
        ech.rows.into_iter().take(ech.pivots.len()).collect()
    }
}

/// The curl-type numerator of `d((E−V)k♭ − K dV)` for `V = n/d`.
///
/// With `W = (E d − n) d k − K (d ∇n − n ∇d)` the form equals `W/d²`, so it
/// is closed iff `d·curl W − 2 ∇d × W = 0`.
fn closure_numerator(k: &SymTensorField, n: &MultiPoly, d: &MultiPoly, energy: &Rational) -> Result<VectorField> {
    let verdict = verify_ckt(k);
    if !verdict.holds {
        return Err(Error::Domain("compatibility needs a conformal Killing tensor".into()));
    }
    let e_d_minus_n = &d.scale(energy) - n;
    let factor = &e_d_minus_n * d;
    let grad = |f: &MultiPoly| VectorField::new(std::array::from_fn(|i| f.partial(i)));
    let (gn, gd) = (grad(n), grad(d));
    let dv_num = VectorField::new(std::array::from_fn(|i| &(d * &gn.comps[i]) - &(n * &gd.comps[i])));
    let kdv = k.apply(&dv_num);
    let w = VectorField::new(std::array::from_fn(|i| &(&factor * &verdict.k.comps[i]) - &kdv.comps[i]));
    let curl = w.curl();
    let cross = gd.cross(&w);
    Ok(VectorField::new(std::array::from_fn(|i| &(d * &curl.comps[i]) - &cross.comps[i].scale(&int(2)))))
}

pub fn solve_compatible(pot: &Potential) -> Result<ParamSolution> {
    let n = pot.v.numerator();
    let d = pot.v.denominator();
    let columns: Vec<VectorField> = (0..6)
        .map(|i| {
            let mut unit = [0i64; 6];
            unit[i] = 1;
            closure_numerator(&assemble_rotational(&RotParams::from_ints(unit)), n, d, &pot.energy)
        })
        .collect::<Result<_>>()?;
    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for col in &columns {
        for (c, comp) in col.comps.iter().enumerate() {
            for (m, _) in comp.terms() {
                let next = index.len();
                index.entry((c, m)).or_insert(next);
            }
        }
    }
    let mut rows = vec![vec![Rational::zero(); 6]; index.len()];
    for (j, col) in columns.iter().enumerate() {
        for (c, comp) in col.comps.iter().enumerate() {
            for (m, coeff) in comp.terms() {
                rows[index[&(c, m)]][j] = coeff.clone();
            }
        }
    }
    let equations = rows.len();
    let kernel = if rows.is_empty() {
        (0..6).map(|j| QMatrix::identity(6).column(j)).collect()
    } else {
        QMatrix::from_rows(rows).kernel()
    };
    let basis: Vec<RotParams> =
        kernel.into_iter().map(|v| RotParams::from_array(std::array::from_fn(|i| v[i].clone()))).collect();
    let mut solution = ParamSolution { particular: RotParams::default(), basis, c33_free: false, equations };
    solution.c33_free = solution.contains(&RotParams::from_ints([0, 0, 0, 1, 0, 0]));
    Ok(solution)
}

/// `d(K̃ dV) = 0` for the Killing tensor `K̃ = K − φg` in the class of `K`.
pub fn dkdv_check(k: &SymTensorField, v: &RationalFunction) -> Result<bool> {
    let obstruction = killing_obstruction(k)?;
    if !obstruction.is_zero() {
        return Err(Error::Validation(
            "dkdv_check needs a Killing tensor modulo the metric; use solve_compatible for conformal Killing tensors"
                .into(),
        ));
    }
    let phi = homotopy_potential(&verify_ckt(k).k);
    let killing = k.plus_metric_multiple(&-&phi);
    Ok(is_closed(&killing.apply_form(&OneForm::gradient(v))))
}

/// `φ` with `∇φ = v` for a closed polynomial field, normalized by `φ(0) = 0`.
pub fn homotopy_potential(v: &VectorField) -> MultiPoly {
    let mut phi = MultiPoly::zero();
    for (i, comp) in v.comps.iter().enumerate() {
        for (m, c) in comp.terms() {
            let mut e = m.exps();
            e[i] += 1;
            let deg = e.iter().sum::<u32>() as i64;
            phi.add_term(Monomial::new(e[0], e[1], e[2]), c / int(deg));
        }
    }
    phi
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PotentialClassification {
    pub solution: ParamSolution,
    pub web_type: Option<WebType>,
    pub quartic: Option<BinaryQuartic>,
    pub diagnostics: String,
}

pub fn classify_potential(pot: &Potential) -> Result<PotentialClassification> {
    let solution = solve_compatible(pot)?;
    let span = solution.quartic_span();
    let (web_type, quartic, diagnostics) = match span.len() {
        0 => (
            None,
            None,
            format!(
                "no characteristic member: the {}-dimensional solution space has zero quartic part",
                solution.dimension()
            ),
        ),
        1 => {
            let q = BinaryQuartic::new(std::array::from_fn(|i| span[0][i].clone()));
            let t = classify_by_roots(&q)?;
            (Some(t), Some(q), format!("one-dimensional quartic part; web type {t}"))
        }
        r => (None, None, format!("underdetermined: the quartic part of the solution space has dimension {r}")),
    };
    Ok(PotentialClassification { solution, web_type, quartic, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn constant_potential(v: i64, e: i64) -> Potential {
        Potential::new(RationalFunction::constant(int(v)), int(e))
    }

    #[test]
    fn potential_free_form_is_k_flat() {
        let p = RotParams::from_ints([1, 2, 3, 4, 5, 6]);
        let w = compatibility_form(&p, &constant_potential(0, 1)).unwrap();
        let k = verify_ckt(&assemble_rotational(&p)).k;
        assert_eq!(w, OneForm::from_vector(&k));
    }

    #[test]
    fn rotational_tensor_kills_rotational_gradient() {
        let [x, y, _] = MultiPoly::coords();
        let v = RationalFunction::polynomial(&(&x * &x) + &(&y * &y));
        let k = assemble_rotational(&RotParams::from_ints([0, 0, 0, 1, 0, 0]));
        assert!(k.apply_form(&OneForm::gradient(&v)).is_zero());
        assert!(dkdv_check(&k, &v).unwrap());
        assert!(dkdv_check(&SymTensorField::metric(), &v).unwrap());
    }

    #[test]
    fn toroidal_example_family() {
        let sol = solve_compatible(&Potential::toroidal_example(&int(1))).unwrap();
        assert_eq!(sol.dimension(), 2);
        assert!(sol.c33_free);
        assert!(sol.contains(&RotParams::from_array([rat(1, 2), int(0), int(1), int(0), int(0), rat(1, 2)])));
        let r = classify_potential(&Potential::toroidal_example(&int(1))).unwrap();
        assert_eq!(r.web_type, Some(WebType::Toroidal));
    }

    #[test]
    fn free_particle_cases() {
        let sol = solve_compatible(&constant_potential(0, 1)).unwrap();
        let same = solve_compatible(&constant_potential(3, 5)).unwrap();
        assert_eq!(sol.dimension(), same.dimension());
        assert!(sol.basis.iter().all(|b| same.contains(b)));
        let r = classify_potential(&constant_potential(0, 0)).unwrap();
        assert!(r.web_type.is_none() && r.diagnostics.contains("underdetermined"));
    }

    #[test]
    fn homotopy_inverts_gradient() {
        let [x, y, z] = MultiPoly::coords();
        let f = &(&(&x * &y) * &z) + &(&z * &z).scale(&int(3));
        let g = VectorField::new(std::array::from_fn(|i| f.partial(i)));
        assert_eq!(homotopy_potential(&g), f);
    }

    #[test]
    fn basis_members_pass_direct_closedness() {
        let pot = Potential::toroidal_example(&int(1));
        let sol = solve_compatible(&pot).unwrap();
        for b in &sol.basis {
            assert!(is_closed(&compatibility_form(b, &pot).unwrap()));
        }
        let outside = RotParams::from_ints([1, 0, 0, 0, 0, 0]);
        assert!(!sol.contains(&outside));
        assert!(!is_closed(&compatibility_form(&outside, &pot).unwrap()));
    }

    #[test]
    fn rescaling_potential_preserves_solutions() {
        let base = Potential::toroidal_example(&int(2));
        let scaled = Potential::new(base.v.scale(&int(7)), int(0));
        let (a, b) = (solve_compatible(&base).unwrap(), solve_compatible(&scaled).unwrap());
        assert_eq!(a.dimension(), b.dimension());
        assert!(a.basis.iter().all(|p| b.contains(p)));
    }
}
