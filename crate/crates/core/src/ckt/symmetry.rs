//! Infinitesimal symmetries `ℒ_V K = hK` on the 35-dimensional space of
//! trace-free CKTs, with `h` constant.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use super::coefficients::{assemble_ckt, CktCoefficients, TRACE_FREE_DIM};
use super::conformal::lie_derivative;
use super::field::{SymTensorField, VectorField};
use super::nijenhuis::tsn_condition;
use crate::error::{Error, Result};
use crate::exactmath::linalg::is_zero_vec;
use crate::exactmath::rational::serde_str;
use crate::exactmath::{int, Monomial, QMatrix, Rational, UniPoly};

/// Monomials of degree at most four, the support of every trace-free CKT.
fn monomials() -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=4u32 {
        for i in (0..=d).rev() {
            for j in (0..=d - i).rev() {
                out.push(Monomial::new(i, j, d - i - j));
            }
        }
    }
    out
}

struct TraceFreeSpace {
    basis: Vec<SymTensorField>,
    rows: BTreeMap<(usize, Monomial), usize>,
    full: QMatrix,
    pivot_rows: Vec<usize>,
    inverse: QMatrix,
}

impl TraceFreeSpace {
    fn build() -> Self {
        let basis: Vec<SymTensorField> = (0..TRACE_FREE_DIM)
            .map(|i| {
                let mut v = vec![Rational::zero(); TRACE_FREE_DIM];
                v[i] = int(1);
                let c = CktCoefficients::from_free_coordinates(&v).expect("35 coordinates");
                assemble_ckt(&c).expect("normal form is symmetric")
            })
            .collect();
        let mut rows = BTreeMap::new();
        for slot in 0..6 {
            for m in monomials() {
                let n = rows.len();
                rows.insert((slot, m), n);
            }
        }
        let cols: Vec<Vec<Rational>> =
            basis.iter().map(|k| vectorize_with(&rows, k).expect("basis tensors have degree ≤ 4")).collect();
        let full = QMatrix::from_columns(&cols);
        let pivot_rows = full.transpose().echelon().pivots;
        assert_eq!(pivot_rows.len(), TRACE_FREE_DIM, "trace-free basis is independent");
        let sub = QMatrix::from_rows(pivot_rows.iter().map(|&r| full.row(r).to_vec()).collect());
        let inverse = sub.inverse().expect("pivot rows give an invertible block");
        Self { basis, rows, full, pivot_rows, inverse }
    }

    fn coordinates(&self, k: &SymTensorField) -> Option<Vec<Rational>> {
        let b = vectorize_with(&self.rows, k)?;
        let sub: Vec<Rational> = self.pivot_rows.iter().map(|&r| b[r].clone()).collect();
        let c = self.inverse.mul_vec(&sub);
        (self.full.mul_vec(&c) == b).then_some(c)
    }
}

fn vectorize_with(rows: &BTreeMap<(usize, Monomial), usize>, k: &SymTensorField) -> Option<Vec<Rational>> {
    let mut v = vec![Rational::zero(); rows.len()];
    for (slot, comp) in k.components().iter().enumerate() {
        for (m, c) in comp.terms() {
            v[*rows.get(&(slot, m))?] = c.clone();
        }
    }
    Some(v)
}

fn space() -> &'static TraceFreeSpace {
    static SPACE: OnceLock<TraceFreeSpace> = OnceLock::new();
    SPACE.get_or_init(TraceFreeSpace::build)
}

/// The assembled tensors of the 35 unit free coordinates.
pub fn trace_free_basis() -> &'static [SymTensorField] {
    &space().basis
}

/// Free coordinates of a trace-free CKT, or `None` if `K` is not one.
pub fn trace_free_coordinates(k: &SymTensorField) -> Option<Vec<Rational>> {
    space().coordinates(k)
}

/// Matrix of `K ↦ ℒ_V K` on the free coordinates.
pub fn lie_matrix(v: &VectorField) -> Result<QMatrix> {
    let cols = trace_free_basis()
        .iter()
        .map(|b| {
            trace_free_coordinates(&lie_derivative(v, b)).ok_or_else(|| {
                Error::Domain(
                    "the field does not preserve trace-free CKTs; it is not a conformal Killing vector".into(),
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::from_columns(&cols))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryMode {
    /// `ℒ_V K = 0`.
    HZero,
    /// `ℒ_V K = hK` for some constant `h`.
    HConstant,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryEigenspace {
    #[serde(with = "serde_str")]
    pub h: Rational,
    pub basis: Vec<CktCoefficients>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryScan {
    pub mode: SymmetryMode,
    /// Characteristic polynomial of the Lie-derivative matrix (constant `h`).
    pub characteristic_polynomial: Option<UniPoly>,
    pub eigenspaces: Vec<SymmetryEigenspace>,
    /// Real eigenvalues that are irrational; no eigenspace is reported for them.
    pub irrational_real_eigenvalues: usize,
}

fn eigenspace(t: &QMatrix, h: &Rational) -> Result<SymmetryEigenspace> {
    let basis = t
        .sub_scalar_identity(h)
        .kernel()
        .iter()
        .map(|v| CktCoefficients::from_free_coordinates(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(SymmetryEigenspace { h: h.clone(), basis })
}

pub fn scan_symmetry(v: &VectorField, mode: SymmetryMode) -> Result<SymmetryScan> {
    let t = lie_matrix(v)?;
    match mode {
        SymmetryMode::HZero => Ok(SymmetryScan {
            mode,
            characteristic_polynomial: None,
            eigenspaces: vec![eigenspace(&t, &Rational::zero())?],
            irrational_real_eigenvalues: 0,
        }),
        SymmetryMode::HConstant => {
            let cp = t.charpoly();
            let roots = cp.rational_roots()?;
            let real = crate::exactmath::real_root_count(&cp)?;
            let eigenspaces = roots.iter().map(|h| eigenspace(&t, h)).collect::<Result<Vec<_>>>()?;
            Ok(SymmetryScan {
                mode,
                characteristic_polynomial: Some(cp),
                eigenspaces,
                irrational_real_eigenvalues: real - roots.len(),
            })
        }
    }
}

/// Eigenspaces of `K ↦ ℒ_V K`: the kernel for [`SymmetryMode::HZero`], every
/// rational eigenvalue with its eigenspace for [`SymmetryMode::HConstant`].
pub fn symmetry_subspace(v: &VectorField, mode: SymmetryMode) -> Result<Vec<SymmetryEigenspace>> {
    Ok(scan_symmetry(v, mode)?.eigenspaces)
}

/// Outcome of restricting a symmetry subspace to normal tensors.
#[derive(Clone, Debug, Serialize)]
pub struct TsnFilter {
    /// Every member of the whole subspace satisfies the TSN conditions.
    pub whole_space_normal: bool,
    /// Basis of the members for which `V` is an eigenvector of `K`.
    pub eigenvector_basis: Vec<CktCoefficients>,
    /// The TSN conditions were certified to hold on all of that span.
    pub eigenvector_span_normal: bool,
    /// Dimension of the largest certified normal subspace found.
    pub dimension: Option<usize>,
}

/// Checks that the TSN conditions hold identically on `span(basis)`.
///
/// The `d`-th condition (`d = 2, 3, 4` for `g, K, K²`) is a homogeneous
/// form of degree `d` in the span coordinates, so it vanishes identically
/// once it vanishes on the lattice `{a ∈ ℕᵐ : |a| = d}`.
pub fn tsn_holds_on_span(basis: &[SymTensorField]) -> bool {
    if basis.is_empty() {
        return true;
    }
    for which in 0..3 {
        let degree = which + 2;
        let mut ok = true;
        for_each_composition(basis.len(), degree, &mut |a| {
            if !ok {
                return;
            }
            let k = combine(basis, a);
            if !tsn_condition(&k, which).is_zero() {
                ok = false;
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

fn combine(basis: &[SymTensorField], coeffs: &[u32]) -> SymTensorField {
    basis
        .iter()
        .zip(coeffs)
        .filter(|(_, &c)| c != 0)
        .fold(SymTensorField::zero(), |acc, (b, &c)| &acc + &b.scale(&int(c.into())))
}

fn for_each_composition(parts: usize, total: usize, f: &mut dyn FnMut(&[u32])) {
    fn go(buf: &mut Vec<u32>, parts: usize, left: usize, f: &mut dyn FnMut(&[u32])) {
        if buf.len() + 1 == parts {
            buf.push(left as u32);
            f(buf);
            buf.pop();
            return;
        }
        for take in 0..=left {
            buf.push(take as u32);
            go(buf, parts, left - take, f);
            buf.pop();
        }
    }
    go(&mut Vec::with_capacity(parts), parts, total, f);
}

/// Members of `span(space)` for which `V` is an eigenvector, i.e.
/// `(K·V) × V = 0`.
pub fn eigenvector_subspace(v: &VectorField, space: &[CktCoefficients]) -> Result<Vec<CktCoefficients>> {
    let tensors = space.iter().map(assemble_ckt).collect::<Result<Vec<_>>>()?;
    let images: Vec<VectorField> = tensors.iter().map(|k| k.apply(v).cross(v)).collect();
    let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for img in &images {
        for (c, p) in img.comps.iter().enumerate() {
            for (m, _) in p.terms() {
                let n = rows.len();
                rows.entry((c, m)).or_insert(n);
            }
        }
    }
    let cols: Vec<Vec<Rational>> = images
        .iter()
        .map(|img| {
            let mut col = vec![Rational::zero(); rows.len()];
            for (c, p) in img.comps.iter().enumerate() {
                for (m, coef) in p.terms() {
                    col[rows[&(c, m)]] = coef.clone();
                }
            }
            col
        })
        .collect();
    let kernel = if rows.is_empty() {
        (0..space.len()).map(|i| (0..space.len()).map(|j| int(i64::from(i == j))).collect()).collect()
    } else {
        QMatrix::from_columns(&cols).kernel()
    };
    kernel
        .iter()
        .map(|combo| {
            let mut free = vec![Rational::zero(); TRACE_FREE_DIM];
            for (c, member) in combo.iter().zip(space) {
                if c.is_zero() {
                    continue;
                }
                for (slot, x) in free.iter_mut().zip(member.free_coordinates()) {
                    *slot += c * x;
                }
            }
            CktCoefficients::from_free_coordinates(&free)
        })
        .collect()
}

/// Normal members of a symmetry subspace: the whole space if it is normal,
/// otherwise the span where `V` is an eigenvector, each certified exactly.
pub fn tsn_filter(v: &VectorField, space: &[CktCoefficients]) -> Result<TsnFilter> {
    let tensors = space.iter().map(assemble_ckt).collect::<Result<Vec<_>>>()?;
    let whole = passes_spot_checks(&tensors) && tsn_holds_on_span(&tensors);
    let eig = eigenvector_subspace(v, space)?;
    let eig_tensors = eig.iter().map(assemble_ckt).collect::<Result<Vec<_>>>()?;
    let eig_normal = whole || tsn_holds_on_span(&eig_tensors);
    let dimension = if whole {
        Some(space.len())
    } else if eig_normal {
        Some(eig.len())
    } else {
        None
    };
    Ok(TsnFilter { whole_space_normal: whole, eigenvector_basis: eig, eigenvector_span_normal: eig_normal, dimension })
}

/// Cheap screen with a few fixed combinations; `false` means some member
/// of the span certainly violates the TSN conditions.
fn passes_spot_checks(tensors: &[SymTensorField]) -> bool {
    let samples: [&[i64]; 3] = [&[1, 2, -1, 3, -2, 1, 1, -3, 2, 1], &[2, -1, 1, 1, 3, -2, 1, 2, -1, 1], &[1; 10]];
    samples.iter().all(|s| {
        let k = tensors
            .iter()
            .enumerate()
            .fold(SymTensorField::zero(), |acc, (i, b)| &acc + &b.scale(&int(s[i % s.len()])));
        super::nijenhuis::tsn_check(&k)
    })
}

/// Columns of `coords` as a matrix, for rank comparisons between spans.
pub fn span_rank(coords: &[Vec<Rational>]) -> usize {
    if coords.is_empty() || coords.iter().all(|c| is_zero_vec(c)) {
        return 0;
    }
    QMatrix::from_columns(coords).rank()
}
