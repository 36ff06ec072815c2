//! Floating-point root finding used only as an oracle and for approximate
//! canonicalisation witnesses. Nothing here feeds a certified decision.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::rational::to_f64;
use super::unipoly::UniPoly;

/// Imaginary parts below this (after polishing) count as real.
pub const REAL_TOLERANCE: f64 = 1e-9;

/// All complex roots of `p` from the eigenvalues of its companion matrix,
/// each polished by a few Newton steps.
pub fn complex_roots(p: &UniPoly) -> Vec<Complex64> {
    let coeffs: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    complex_roots_f64(&coeffs)
}

/// As [`complex_roots`] for coefficients given low degree first.
///
/// The unshifted QR iteration can stall on symmetric root patterns such as
/// `z⁴ + z² + 1`, so the roots of `p(z + s)` are tried for a few shifts.
pub fn complex_roots_f64(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|v| *v == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    for shift in [0.0, 0.371, -0.613, 1.129, -1.87] {
        if let Some(roots) = companion_eigenvalues(&taylor_shift(&c, shift)) {
            return roots.into_iter().map(|z| polish(&c, z + shift)).collect();
        }
    }
    panic!("companion eigenvalues failed to converge for {c:?}");
}

/// Coefficients of `p(z + s)`.
fn taylor_shift(c: &[f64], s: f64) -> Vec<f64> {
    let mut out = c.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            out[j] += s * out[j + 1];
        }
    }
    out
}

fn companion_eigenvalues(c: &[f64]) -> Option<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -c[i] / lead;
    }
    let schur = nalgebra::linalg::Schur::try_new(comp, f64::EPSILON, 2000)?;
    Some(schur.complex_eigenvalues().iter().copied().collect())
}

fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn polish(c: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(c, z);
        if dp.norm() == 0.0 || !dp.norm().is_finite() {
            break;
        }
        let step = p / dp;
        if !step.norm().is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Counts roots whose imaginary part is below [`REAL_TOLERANCE`].
pub fn float_real_root_count(p: &UniPoly) -> usize {
    complex_roots(p).iter().filter(|z| z.im.abs() < REAL_TOLERANCE).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_roots_of_simple_quartic() {
        let p = UniPoly::from_ints(&[4, 0, -5, 0, 1]);
        let mut re: Vec<f64> = complex_roots(&p).iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (got, want) in re.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert_eq!(float_real_root_count(&UniPoly::from_ints(&[1, 0, 1])), 0);
    }
}
