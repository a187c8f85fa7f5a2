use super::poly::LaurentPoly;
use super::ring::{Eisenstein, Integers, ModP, Ring};
use crate::error::{Error, Result};

/// Largest matrix side accepted anywhere.
pub const MAX_DIM: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly<R>>,
}

impl<R: Ring> PolyMatrix<R> {
    pub fn new(ring: R, rows: Vec<Vec<LaurentPoly<R>>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Domain("matrix rows have different lengths".into()));
        }
        if n > MAX_DIM || m > MAX_DIM {
            return Err(Error::Domain(format!("matrix larger than {MAX_DIM}x{MAX_DIM}")));
        }
        if rows.iter().flatten().any(|e| *e.ring() != ring) {
            return Err(Error::Domain("matrix entries over different rings".into()));
        }
        Ok(PolyMatrix {
            ring,
            rows: n,
            cols: m,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly<R>) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        PolyMatrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let r = ring.clone();
        PolyMatrix::from_fn(ring, rows, cols, |_, _| LaurentPoly::zero(r.clone()))
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let r = ring.clone();
        PolyMatrix::from_fn(ring, n, n, |i, j| {
            if i == j {
                LaurentPoly::one(r.clone())
            } else {
                LaurentPoly::zero(r.clone())
            }
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<R> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly<R>) {
        self.entries[i * self.cols + j] = v;
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Domain(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(PolyMatrix::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.get(i, j).add(other.get(i, j))
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(PolyMatrix::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.get(i, j).sub(other.get(i, j))
        }))
    }

    pub fn scale(&self, c: &LaurentPoly<R>) -> Self {
        PolyMatrix::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Domain("inner dimensions differ".into()));
        }
        Ok(PolyMatrix::from_fn(self.ring.clone(), self.rows, other.cols, |i, j| {
            (0..self.cols).fold(LaurentPoly::zero(self.ring.clone()), |acc, k| {
                acc.add(&self.get(i, k).mul(other.get(k, j)))
            })
        }))
    }

    pub fn transpose(&self) -> Self {
        PolyMatrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The `h × w` submatrix with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        PolyMatrix::from_fn(self.ring.clone(), h, w, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Assembles a matrix from a grid of equally sized square blocks.
    pub fn from_blocks(grid: &[Vec<&Self>]) -> Result<Self> {
        let first = grid
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::Domain("empty block grid".into()))?;
        let b = first.rows;
        if grid.iter().flatten().any(|m| m.rows != b || m.cols != b) || grid.iter().any(|r| r.len() != grid[0].len()) {
            return Err(Error::Domain("blocks must be square and equally sized".into()));
        }
        let (h, w) = (grid.len(), grid[0].len());
        Ok(PolyMatrix::from_fn(first.ring.clone(), h * b, w * b, |i, j| {
            grid[i / b][j / b].get(i % b, j % b).clone()
        }))
    }

    pub fn map<S: Ring>(&self, target: S, f: impl Fn(&LaurentPoly<R>) -> LaurentPoly<S>) -> PolyMatrix<S> {
        PolyMatrix {
            ring: target,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination in `R[s, s⁻¹]`.
    pub fn det(&self) -> Result<LaurentPoly<R>> {
        if !self.is_square() {
            return Err(Error::Domain(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let ring = self.ring.clone();
        if n == 0 {
            return Ok(LaurentPoly::one(ring));
        }
        let mut m: Vec<Vec<LaurentPoly<R>>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one(ring.clone());
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(LaurentPoly::zero(ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num
                        .div_exact(&prev)
                        .ok_or_else(|| Error::Invariant("Bareiss step was not exact".into()))?;
                }
                m[i][k] = LaurentPoly::zero(ring.clone());
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Determinant by cofactor expansion along the first row. Exponential;
    /// meant as an independent check on small matrices.
    pub fn det_cofactor(&self) -> Result<LaurentPoly<R>> {
        if !self.is_square() {
            return Err(Error::Domain("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(self.ring.clone()));
        }
        let mut total = LaurentPoly::zero(self.ring.clone());
        for j in 0..n {
            let minor = PolyMatrix::from_fn(self.ring.clone(), n - 1, n - 1, |a, b| {
                self.get(a + 1, if b < j { b } else { b + 1 }).clone()
            });
            let term = self.get(0, j).mul(&minor.det_cofactor()?);
            total = if j % 2 == 0 { total.add(&term) } else { total.sub(&term) };
        }
        Ok(total)
    }

    pub fn display_var(&self, var: char) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).display_var(var))
                    .collect::<Vec<_>>()
                    .join("; ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl PolyMatrix<Integers> {
    pub fn reduce_mod(&self, ring: ModP) -> PolyMatrix<ModP> {
        self.map(ring, |p| p.reduce_mod(ring))
    }

    pub fn to_eisenstein(&self) -> PolyMatrix<Eisenstein> {
        self.map(Eisenstein, |p| p.to_eisenstein())
    }

    /// Splits a `kb × kb` matrix whose block rows are the cyclic left shifts
    /// of its first block row, in any order, and returns that first row.
    pub fn circulant_blocks(&self, k: usize) -> Result<Vec<PolyMatrix<Integers>>> {
        if !self.is_square() || k == 0 || !self.rows.is_multiple_of(k) || self.rows == 0 {
            return Err(Error::Domain(format!(
                "a {}x{} matrix does not split into {k}x{k} square blocks",
                self.rows, self.cols
            )));
        }
        let b = self.rows / k;
        let blocks: Vec<Vec<PolyMatrix<Integers>>> = (0..k)
            .map(|i| (0..k).map(|j| self.block(i * b, j * b, b, b)).collect())
            .collect();
        let first = blocks[0].clone();
        let shifts: Vec<Vec<PolyMatrix<Integers>>> = (0..k)
            .map(|s| (0..k).map(|j| first[(j + s) % k].clone()).collect())
            .collect();
        let mut used = vec![false; k];
        for row in &blocks {
            match (0..k).find(|&s| !used[s] && shifts[s] == *row) {
                Some(s) => used[s] = true,
                None => {
                    return Err(Error::Domain(format!(
                        "block rows are not cyclic shifts of one another ({k} blocks of size {b})"
                    )))
                }
            }
        }
        Ok(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> LaurentPoly<Integers> {
        LaurentPoly::from_ints(Integers, 0, c)
    }

    fn mat(rows: Vec<Vec<LaurentPoly<Integers>>>) -> PolyMatrix<Integers> {
        PolyMatrix::new(Integers, rows).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(PolyMatrix::identity(Integers, 4).det().unwrap(), z(&[1]));
        let m = mat(vec![vec![z(&[-2, 1]), z(&[-1])], vec![z(&[-1]), z(&[-2, 1])]]);
        assert_eq!(m.det().unwrap(), z(&[3, -4, 1]));
        let m3 = ModP::new(3).unwrap();
        let d = m.reduce_mod(m3).det().unwrap();
        assert!(d.associated(&z(&[-1, 1]).reduce_mod(m3)));
        assert!(mat(vec![vec![z(&[1]), z(&[1])]]).det().is_err());
    }

    #[test]
    fn pivoting_and_laurent_entries() {
        let m = mat(vec![
            vec![z(&[0]), z(&[1]), z(&[0])],
            vec![LaurentPoly::from_ints(Integers, -1, &[1]), z(&[0]), z(&[2])],
            vec![z(&[0]), z(&[3]), z(&[0, 1])],
        ]);
        assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
    }

    #[test]
    fn circulant_block_detection() {
        let a = mat(vec![vec![z(&[0, 1])]]);
        let b = mat(vec![vec![z(&[1])]]);
        let c = mat(vec![vec![z(&[2])]]);
        let t = PolyMatrix::from_blocks(&[vec![&a, &b, &c], vec![&c, &a, &b], vec![&b, &c, &a]]).unwrap();
        assert_eq!(t.circulant_blocks(3).unwrap(), vec![a.clone(), b.clone(), c.clone()]);
        let bad = PolyMatrix::from_blocks(&[vec![&a, &b, &c], vec![&a, &b, &c], vec![&b, &c, &a]]).unwrap();
        assert!(bad.circulant_blocks(3).is_err());
        assert!(t.circulant_blocks(2).is_err());
    }
}
