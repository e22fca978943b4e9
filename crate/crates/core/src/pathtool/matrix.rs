use std::fmt;

use crate::error::{Error, Result};
use crate::value_algebra::{Capability, ValueAlgebra, Weight};

/// A dense matrix of weights from one value algebra.
///
/// Square matrices are indexed by vertex pairs. Rectangular ones appear
/// only as blocks inside [`matrix_star`].
#[derive(Clone)]
pub struct Matrix {
    alg: ValueAlgebra,
    rows: usize,
    cols: usize,
    data: Vec<Weight>,
}

impl PartialEq for Matrix {
    fn eq(&self, o: &Matrix) -> bool {
        self.alg.name() == o.alg.name() && self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.alg.format(self.get(r, c))).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(alg: &ValueAlgebra, rows: usize, cols: usize) -> Self {
        Matrix { alg: alg.clone(), rows, cols, data: vec![alg.zero(); rows * cols] }
    }

    pub fn identity(alg: &ValueAlgebra, n: usize) -> Self {
        let mut m = Matrix::zero(alg, n, n);
        for i in 0..n {
            m.set(i, i, alg.one());
        }
        m
    }

    /// Row-major weights. Errors unless every row has the same length.
    pub fn from_rows(alg: &ValueAlgebra, rows: Vec<Vec<Weight>>) -> Result<Self> {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Mismatch("ragged matrix rows".into()));
        }
        Ok(Matrix { alg: alg.clone(), rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn algebra(&self) -> &ValueAlgebra {
        &self.alg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The side length of a square matrix.
    pub fn n(&self) -> usize {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> Weight {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, w: Weight) {
        self.data[r * self.cols + c] = w;
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shapes differ");
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| self.alg.add(a, b)).collect();
        Matrix { alg: self.alg.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix shapes differ");
        let mut m = Matrix::zero(&self.alg, self.rows, o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                let mut acc = self.alg.zero();
                for k in 0..self.cols {
                    acc = self.alg.add(acc, self.alg.mul(self.get(r, k), o.get(k, c)));
                }
                m.set(r, c, acc);
            }
        }
        m
    }

    fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut m = Matrix::zero(&self.alg, r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                m.set(r - r0, c - c0, self.get(r, c));
            }
        }
        m
    }

    fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c));
            }
        }
    }
}

/// Conway's block star. The last row and column split off a `1×1` block
/// `D`, with `A` the rest:
///
/// ```text
/// [A B]*   [ (A+BD*C)*         A*B(D+CA*B)* ]
/// [C D]  = [ D*C(A+BD*C)*      (D+CA*B)*    ]
/// ```
pub fn matrix_star(m: &Matrix) -> Result<Matrix> {
    m.alg.require(Capability::Star)?;
    if m.rows != m.cols || m.rows == 0 {
        return Err(Error::Mismatch(format!("matrix star needs a non-empty square matrix, got {}x{}", m.rows, m.cols)));
    }
    Ok(star_rec(m))
}

fn star_rec(m: &Matrix) -> Matrix {
    let n = m.rows;
    if n == 1 {
        let mut r = m.clone();
        r.set(0, 0, m.alg.star(m.get(0, 0)));
        return r;
    }
    let k = n - 1;
    let a = m.block(0, k, 0, k);
    let b = m.block(0, k, k, n);
    let c = m.block(k, n, 0, k);
    let d = m.block(k, n, k, n);
    let a_star = star_rec(&a);
    let d_star = star_rec(&d);
    let tl = star_rec(&a.add(&b.mul(&d_star).mul(&c)));
    let br = star_rec(&d.add(&c.mul(&a_star).mul(&b)));
    let tr = a_star.mul(&b).mul(&br);
    let bl = d_star.mul(&c).mul(&tl);
    let mut out = Matrix::zero(&m.alg, n, n);
    out.paste(0, 0, &tl);
    out.paste(0, k, &tr);
    out.paste(k, 0, &bl);
    out.paste(k, k, &br);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value_algebra::{make_boolean, make_min_plus};

    #[test]
    fn one_by_one() {
        let alg = make_min_plus();
        let m = Matrix::from_rows(&alg, vec![vec![Weight::Int(4)]]).unwrap();
        assert_eq!(matrix_star(&m).unwrap().get(0, 0), Weight::Int(0));
    }

    #[test]
    fn three_cycle_is_full() {
        let alg = make_boolean();
        let (t, f) = (Weight::Bool(true), Weight::Bool(false));
        let m = Matrix::from_rows(&alg, vec![vec![f, t, f], vec![f, f, t], vec![t, f, f]]).unwrap();
        let s = matrix_star(&m).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| s.get(i, j) == t)), "{s:?}");
    }

    #[test]
    fn chain_distances() {
        let alg = make_min_plus();
        let inf = Weight::Inf;
        let m = Matrix::from_rows(
            &alg,
            vec![vec![inf, Weight::Int(2), inf], vec![inf, inf, Weight::Int(3)], vec![inf, inf, inf]],
        )
        .unwrap();
        let s = matrix_star(&m).unwrap();
        assert_eq!(s.get(0, 2), Weight::Int(5));
        assert_eq!(s.get(2, 0), inf);
        assert_eq!(s.get(1, 1), Weight::Int(0));
    }

    #[test]
    fn shape_errors() {
        let alg = make_boolean();
        assert!(matrix_star(&Matrix::zero(&alg, 2, 3)).is_err());
        assert!(matrix_star(&Matrix::zero(&alg, 0, 0)).is_err());
        assert!(Matrix::from_rows(&alg, vec![vec![Weight::Bool(true)], vec![]]).is_err());
    }
}
