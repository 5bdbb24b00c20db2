//! Banded LU with partial pivoting.
//!
//! Row `i` stores columns `i−kl ..= i+ku+kl`; the extra `kl` upper diagonals
//! hold fill-in from row interchanges.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self { n, kl, ku, width, data: vec![0.0; n * width] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.kl, self.ku)
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n || j + self.kl < i || j > i + self.ku + self.kl {
            return None;
        }
        Some(i * self.width + j + self.kl - i)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.data[s])
    }

    /// Panics when `(i, j)` lies outside the declared band.
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        assert!(j + self.kl >= i && j <= i + self.ku, "entry ({i}, {j}) outside band");
        let s = self.slot(i, j).expect("index in range");
        self.data[s] += value;
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        assert!(j + self.kl >= i && j <= i + self.ku, "entry ({i}, {j}) outside band");
        let s = self.slot(i, j).expect("index in range");
        self.data[s] = value;
    }

    pub fn clear_row(&mut self, i: usize) {
        let w = self.width;
        self.data[i * w..(i + 1) * w].fill(0.0);
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for (i, yi) in y.iter_mut().enumerate() {
            let lo = i.saturating_sub(self.kl);
            let hi = (i + self.ku).min(self.n - 1);
            let mut s = 0.0;
            for j in lo..=hi {
                s += self.data[i * self.width + j + self.kl - i] * x[j];
            }
            *yi = s;
        }
        y
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn factor(mut self) -> Result<BandLu> {
        let (n, kl, ku, w) = (self.n, self.kl, self.ku, self.width);
        let mut piv = vec![0usize; n];
        let mut umax: f64 = 0.0;
        let mut umin = f64::INFINITY;
        let a = &mut self.data;
        for k in 0..n {
            let last = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = a[k * w + kl].abs();
            for i in k + 1..=last {
                let v = a[i * w + k + kl - i].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            piv[k] = p;
            if best == 0.0 || !best.is_finite() {
                return Err(Error::Singular { row: k });
            }
            let jmax = (k + kl + ku).min(n - 1);
            if p != k {
                for j in k..=jmax {
                    a.swap(k * w + j + kl - k, p * w + j + kl - p);
                }
            }
            let pivot = a[k * w + kl];
            umax = umax.max(pivot.abs());
            umin = umin.min(pivot.abs());
            for i in k + 1..=last {
                let ik = i * w + k + kl - i;
                let l = a[ik] / pivot;
                a[ik] = l;
                if l != 0.0 {
                    for j in k + 1..=jmax {
                        a[i * w + j + kl - i] -= l * a[k * w + j + kl - k];
                    }
                }
            }
        }
        Ok(BandLu { m: self, piv, pivot_ratio: umax / umin })
    }
}

#[derive(Debug, Clone)]
pub struct BandLu {
    m: BandMatrix,
    piv: Vec<usize>,
    pivot_ratio: f64,
}

impl BandLu {
    /// Ratio of the largest to the smallest pivot, a cheap conditioning proxy.
    pub fn pivot_ratio(&self) -> f64 {
        self.pivot_ratio
    }

    pub fn dim(&self) -> usize {
        self.m.n
    }

    pub fn solve_in_place(&self, b: &mut [f64]) {
        let (n, kl, ku, w) = (self.m.n, self.m.kl, self.m.ku, self.m.width);
        let a = &self.m.data;
        assert_eq!(b.len(), n);
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            if bk != 0.0 {
                for i in k + 1..=(k + kl).min(n - 1) {
                    b[i] -= a[i * w + k + kl - i] * bk;
                }
            }
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in i + 1..=(i + kl + ku).min(n - 1) {
                s -= a[i * w + j + kl - i] * b[j];
            }
            b[i] = s / a[i * w + kl];
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_band(n: usize, kl: usize, ku: usize, seed: u64) -> BandMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = BandMatrix::zeros(n, kl, ku);
        for i in 0..n {
            for j in i.saturating_sub(kl)..=(i + ku).min(n - 1) {
                m.set(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        m
    }

    #[test]
    fn needs_pivoting() {
        // zero leading entry forces a row swap
        let mut m = BandMatrix::zeros(3, 1, 1);
        m.set(0, 0, 0.0);
        m.set(0, 1, 1.0);
        m.set(1, 0, 2.0);
        m.set(1, 1, 1.0);
        m.set(1, 2, 1.0);
        m.set(2, 1, 1.0);
        m.set(2, 2, 3.0);
        let x = [1.0, -2.0, 0.5];
        let b = m.matvec(&x);
        let lu = m.factor().unwrap();
        let y = lu.solve(&b);
        for (p, q) in x.iter().zip(&y) {
            assert!((p - q).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_is_reported() {
        let m = BandMatrix::zeros(4, 1, 1);
        assert!(matches!(m.factor(), Err(Error::Singular { row: 0 })));
    }

    proptest! {
        #[test]
        fn solves_random_banded(n in 1usize..40, kl in 0usize..5, ku in 0usize..5, seed in 0u64..1000) {
            let m = random_band(n, kl, ku, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let b = m.matvec(&x);
            if let Ok(lu) = m.clone().factor() {
                prop_assume!(lu.pivot_ratio() < 1e8);
                let y = lu.solve(&b);
                let r = m.matvec(&y);
                let scale = b.iter().fold(1.0f64, |s, v| s.max(v.abs()));
                for (p, q) in r.iter().zip(&b) {
                    prop_assert!((p - q).abs() < 1e-9 * scale * lu.pivot_ratio());
                }
            }
        }
    }
}
