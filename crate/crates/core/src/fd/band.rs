//! Banded LU factorization with partial pivoting.
//!
//! Row i keeps columns `[i - kl, i + kl + ku]`: the original band plus room
//! for the fill-in that row interchanges push into the upper triangle.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn new(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        BandMatrix {
            n,
            kl,
            ku,
            width,
            data: vec![0.0; n * width],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, c: usize) -> usize {
        debug_assert!(c + self.kl >= i && c <= i + self.kl + self.ku);
        i * self.width + (c + self.kl - i)
    }

    /// Adds `v` at (i, c). Panics outside the declared band.
    pub fn add(&mut self, i: usize, c: usize, v: f64) {
        assert!(
            c + self.kl >= i && c <= i + self.ku && c < self.n,
            "entry ({i}, {c}) outside band"
        );
        let k = self.idx(i, c);
        self.data[k] += v;
    }

    pub fn get(&self, i: usize, c: usize) -> f64 {
        if c + self.kl < i || c > i + self.kl + self.ku || c >= self.n {
            0.0
        } else {
            self.data[self.idx(i, c)]
        }
    }

    fn row_range(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.kl)..(i + self.ku + 1).min(self.n)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row_range(i).map(|c| self.get(i, c) * x[c]).sum())
            .collect()
    }

    /// Max-norm of row i over its band.
    fn row_max(&self, i: usize) -> f64 {
        self.row_range(i)
            .map(|c| self.get(i, c).abs())
            .fold(0.0, f64::max)
    }

    /// Factors in place of a copy. The matrix is expected to be
    /// row-equilibrated already (see [`solve_banded`]).
    pub fn factor(&self) -> Result<BandLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let mut a = self.clone();
        let mut pivots = vec![0usize; n];
        let mut mult = vec![0.0; n * kl.max(1)];
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = a.get(k, k).abs();
            for r in k + 1..=last_row {
                let v = a.get(r, k).abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(Error::SingularSystem(format!("zero pivot in column {k} of {n}")));
            }
            pivots[k] = p;
            let last_col = (k + kl + ku).min(n - 1);
            if p != k {
                for c in k..=last_col {
                    let (ik, ip) = (a.idx(k, c), a.idx(p, c));
                    a.data.swap(ik, ip);
                }
            }
            let piv = a.data[a.idx(k, k)];
            for r in k + 1..=last_row {
                let irk = a.idx(r, k);
                let l = a.data[irk] / piv;
                a.data[irk] = 0.0;
                mult[k * kl + (r - k - 1)] = l;
                if l != 0.0 {
                    for c in k + 1..=last_col {
                        let v = a.data[a.idx(k, c)];
                        let irc = a.idx(r, c);
                        a.data[irc] -= l * v;
                    }
                }
            }
        }
        Ok(BandLu {
            u: a,
            pivots,
            mult,
        })
    }
}

/// Factors of a [`BandMatrix`], applied step by step as in the elimination.
#[derive(Debug, Clone)]
pub struct BandLu {
    u: BandMatrix,
    pivots: Vec<usize>,
    mult: Vec<f64>,
}

impl BandLu {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let (n, kl, ku) = (self.u.n, self.u.kl, self.u.ku);
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.pivots[k]);
            let xk = x[k];
            for r in k + 1..=(k + kl).min(n - 1) {
                x[r] -= self.mult[k * kl + (r - k - 1)] * xk;
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for c in i + 1..=(i + kl + ku).min(n - 1) {
                s -= self.u.get(i, c) * x[c];
            }
            x[i] = s / self.u.get(i, i);
        }
        x
    }
}

/// Outcome of [`solve_banded`].
#[derive(Debug, Clone)]
pub struct BandSolve {
    pub x: Vec<f64>,
    /// ‖Ax - b‖∞ / (‖A‖∞‖x‖∞ + ‖b‖∞) of the equilibrated system.
    pub residual: f64,
}

/// Row-equilibrates, factors, solves and applies two steps of iterative
/// refinement.
pub fn solve_banded(mut a: BandMatrix, mut b: Vec<f64>) -> Result<BandSolve> {
    let n = a.n;
    if b.len() != n {
        return Err(Error::InvalidInput("right-hand side length mismatch".into()));
    }
    for i in 0..n {
        let s = a.row_max(i);
        if s == 0.0 {
            return Err(Error::SingularSystem(format!("row {i} is identically zero")));
        }
        for c in a.row_range(i) {
            let k = a.idx(i, c);
            a.data[k] /= s;
        }
        b[i] /= s;
    }
    let lu = a.factor()?;
    let mut x = lu.solve(&b);
    for _ in 0..2 {
        let ax = a.mul_vec(&x);
        let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        let dx = lu.solve(&r);
        x.iter_mut().zip(&dx).for_each(|(xi, di)| *xi += di);
    }
    let ax = a.mul_vec(&x);
    let rmax = b.iter().zip(&ax).map(|(bi, ai)| (bi - ai).abs()).fold(0.0, f64::max);
    let xmax = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let bmax = b.iter().map(|v| v.abs()).fold(0.0, f64::max);
    // rows are scaled to unit max, so ‖A‖∞ ≤ kl + ku + 1
    let anorm = (0..n)
        .map(|i| a.row_range(i).map(|c| a.get(i, c).abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let denom = anorm * xmax + bmax;
    let residual = if rmax == 0.0 { 0.0 } else { rmax / denom };
    if !x.iter().all(|v| v.is_finite()) {
        return Err(Error::SingularSystem("non-finite solution".into()));
    }
    Ok(BandSolve { x, residual })
}
