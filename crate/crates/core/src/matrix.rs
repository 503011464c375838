//! Dense matrices over [`Fp`]: rank, kernels and random left-kernel sampling.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Fp;

/// Row-major dense matrix over the prime field.
#[derive(Clone, PartialEq, Eq)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fp>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: FFMatrix,
    pub pivots: Vec<usize>,
}

impl FFMatrix {
    pub fn zeros(rows: usize, cols: usize) -> FFMatrix {
        FFMatrix {
            rows,
            cols,
            data: vec![Fp::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> FFMatrix {
        let mut m = FFMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Fp::ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is not `rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, data: Vec<Fp>) -> FFMatrix {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        FFMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> FFMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| Fp::from_i64(v)));
        }
        FFMatrix::from_entries(r, c, data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Fp] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Fp] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut t = FFMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// `M · v`.
    pub fn mul_vec(&self, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(Fp::ZERO, |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    /// `wᵀ · M`.
    pub fn vec_mul(&self, w: &[Fp]) -> Vec<Fp> {
        assert_eq!(w.len(), self.rows);
        let mut out = vec![Fp::ZERO; self.cols];
        for (r, &wr) in w.iter().enumerate() {
            if wr.is_zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o += wr * a;
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// Gauss-Jordan elimination. Pivots on the first nonzero entry of each column.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == m.rows {
                break;
            }
            let Some(found) = (prow..m.rows).find(|&r| !m.data[r * cols + c].is_zero()) else {
                continue;
            };
            m.swap_rows(prow, found);
            let inv = m.data[prow * cols + c].inv().expect("pivot is nonzero");
            for x in &mut m.data[prow * cols + c..(prow + 1) * cols] {
                *x *= inv;
            }
            let (before, rest) = m.data.split_at_mut(prow * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let pivot_tail = &pivot_row[c..];
            for row in before.chunks_exact_mut(cols).chain(after.chunks_exact_mut(cols)) {
                let f = row[c];
                if f.is_zero() {
                    continue;
                }
                for (x, &p) in row[c..].iter_mut().zip(pivot_tail) {
                    *x -= f * p;
                }
            }
            pivots.push(c);
            prow += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of `{v : M·v = 0}`; empty when `M` has full column rank.
    pub fn right_kernel_basis(&self) -> Vec<Vec<Fp>> {
        self.echelon().kernel_basis()
    }

    /// A basis of `{w : wᵀ·M = 0}`.
    pub fn left_kernel_basis(&self) -> Vec<Vec<Fp>> {
        self.transpose().right_kernel_basis()
    }

    /// A uniformly random combination of a left-kernel basis, with coefficients
    /// drawn from the nonzero field elements. `None` when the left kernel is trivial.
    pub fn random_left_kernel_vector(&self, seed: u64) -> Option<Vec<Fp>> {
        let basis = self.left_kernel_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_combination(&basis, &mut rng)
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Right kernel read off the reduced form: one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Fp>> {
        let m = &self.reduced;
        let mut is_pivot = vec![false; m.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..m.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Fp::ZERO; m.cols];
                v[f] = Fp::ONE;
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = -m.data[r * m.cols + f];
                }
                v
            })
            .collect()
    }
}

/// Random combination `Σ c_i b_i` with each `c_i` uniform in `[1, p-1]`.
pub fn random_combination<R: rand::Rng + ?Sized>(basis: &[Vec<Fp>], rng: &mut R) -> Option<Vec<Fp>> {
    let first = basis.first()?;
    let mut out = vec![Fp::ZERO; first.len()];
    for b in basis {
        let c = Fp::random_nonzero(rng);
        for (o, &x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    Some(out)
}

impl std::ops::Index<(usize, usize)> for FFMatrix {
    type Output = Fp;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Fp {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FFMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Fp {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FFMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}
