//! Dense matrices over the rationals: fraction-free row reduction, kernels,
//! determinants and characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{denominator_lcm, Rational};
use super::unipoly::UniPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of row reduction: a basis of the row space in echelon form and
/// the pivot column of each basis row.
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let nrows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn sub_scalar_identity(&self, h: &Rational) -> QMatrix {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= h;
        }
        m
    }

    /// Fraction-free Gauss–Jordan elimination. Each row is scaled to a
    /// primitive integer vector, eliminated with integer cross-multiplication
    /// and re-made primitive, so entries stay small.
    pub fn echelon(&self) -> Echelon {
        let mut rows: Vec<Vec<BigInt>> =
            (0..self.rows).map(|i| primitive(self.row(i))).filter(|r| r.iter().any(|v| !v.is_zero())).collect();
        let mut pivots = Vec::new();
        let mut done = 0;
        for col in 0..self.cols {
            let Some(p) = (done..rows.len()).filter(|&r| !rows[r][col].is_zero()).min_by_key(|&r| rows[r][col].bits())
            else {
                continue;
            };
            rows.swap(done, p);
            let pivot_row = rows[done].clone();
            let a = pivot_row[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == done || row[col].is_zero() {
                    continue;
                }
                let b = row[col].clone();
                let g = a.gcd(&b);
                let (fa, fb) = (&a / &g, &b / &g);
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &fa - y * &fb;
                }
                make_primitive(row);
            }
            pivots.push(col);
            done += 1;
            if done == rows.len() {
                break;
            }
        }
        rows.truncate(done);
        let rows = rows
            .into_iter()
            .zip(&pivots)
            .map(|(r, &c)| {
                let lead = Rational::from_integer(r[c].clone());
                r.into_iter().map(|v| Rational::from_integer(v) / &lead).collect()
            })
            .collect();
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right null space `{v : A v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = -row[free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `A v = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![Rational::zero(); self.cols];
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            v[p] = row[self.cols].clone();
        }
        Some(v)
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let ech = aug.echelon();
        if ech.pivots.len() != n || ech.pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        Some(QMatrix::from_rows(ech.rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &piv;
                for j in c..n {
                    let v = &f * &m[(c, j)];
                    m[(r, j)] -= v;
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(zI − A)` via reduction to upper
    /// Hessenberg form followed by the standard three-term recurrence.
    pub fn charpoly(&self) -> UniPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let piv = h[(m, m - 1)].clone();
            for i in m + 1..n {
                if h[(i, m - 1)].is_zero() {
                    continue;
                }
                let u = &h[(i, m - 1)] / &piv;
                for j in 0..n {
                    let v = &u * &h[(m, j)];
                    h[(i, j)] -= v;
                }
                for r in 0..n {
                    let v = &u * &h[(r, i)];
                    h[(r, m)] += v;
                }
            }
        }
        // p[k] is the characteristic polynomial of the leading k×k block.
        let mut p = vec![UniPoly::constant(Rational::one())];
        for m in 0..n {
            let lin = UniPoly::new(vec![-h[(m, m)].clone(), Rational::one()]);
            let mut next = &lin * &p[m];
            let mut t = Rational::one();
            for i in 1..=m {
                t *= &h[(m - i + 1, m - i)];
                if t.is_zero() {
                    break;
                }
                let c = &h[(m - i, m)] * &t;
                next = &next - &p[m - i].scale(&c);
            }
            p.push(next);
        }
        p.pop().unwrap()
    }
}

fn primitive(row: &[Rational]) -> Vec<BigInt> {
    let den = denominator_lcm(row.iter());
    let mut out: Vec<BigInt> = row.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v /= &g;
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// True when every entry of the vector is zero.
pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Rescales a vector so its entries are coprime integers with the first
/// nonzero entry positive. Useful for presenting kernel bases.
pub fn normalise_direction(v: &[Rational]) -> Vec<Rational> {
    let mut ints = primitive(v);
    if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints.into_iter().map(Rational::from_integer).collect()
}
