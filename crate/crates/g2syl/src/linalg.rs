//! Dense linear algebra over `F_q` for the small systems that arise here.

use crate::ffield::Fq;
#[cfg(test)]
use crate::ffield::Field;

/// Row-major `rows × cols` matrix over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<'f> {
    pub rows: usize,
    pub cols: usize,
    pub e: Vec<Fq<'f>>,
}

impl<'f> Matrix<'f> {
    pub fn from_rows(rows: &[Vec<Fq<'f>>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Matrix { rows: r, cols: c, e: rows.iter().flatten().copied().collect() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq<'f> {
        self.e[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq<'f>) {
        self.e[i * self.cols + j] = v;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.e.swap(r * self.cols + j, pr * self.cols + j);
            }
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = self.get(r, j) * inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let f = self.get(i, c);
                if i != r && !f.is_zero() {
                    for j in 0..self.cols {
                        let v = self.get(i, j) - f * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Fq<'f>>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let field = self.e.first().map(|x| x.field());
        let Some(field) = field else { return Vec::new() };
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![field.zero(); self.cols];
                v[fc] = field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, fc);
                }
                v
            })
            .collect()
    }
}
