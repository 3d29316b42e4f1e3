//! Dense linear algebra over a prime field F_p, p < 2^31.

use crate::IntMat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

#[inline]
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod p");
    powmod(a, p - 2, p)
}

/// Dense matrix over F_p (p an odd-or-even prime below 2^31), row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMat {
    p: u64,
    rows: usize,
    cols: usize,
    d: Vec<u64>,
}

impl FpMat {
    pub fn new(p: u64, rows: usize, cols: usize, d: Vec<u64>) -> Self {
        assert!(is_prime_u64(p), "modulus {} is not prime", p);
        assert!(p < (1 << 31), "modulus too large");
        assert_eq!(d.len(), rows * cols);
        let d = d.into_iter().map(|x| x % p).collect();
        FpMat { p, rows, cols, d }
    }

    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMat::new(p, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = FpMat::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Reduce an integer matrix mod p.
    pub fn from_int(a: &IntMat, p: u64) -> Self {
        assert!(is_prime_u64(p), "modulus {} is not prime", p);
        let pb = BigInt::from(p);
        let d: Vec<u64> = a
            .entries()
            .iter()
            .map(|x| x.mod_floor(&pb).to_u64().expect("reduced value fits u64"))
            .collect();
        FpMat { p, rows: a.rows(), cols: a.cols(), d }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.d[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.d[r * self.cols + c] = v % self.p;
    }

    pub fn entries(&self) -> &[u64] {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn add(&self, o: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols, self.p), (o.rows, o.cols, o.p));
        let d = self
            .d
            .iter()
            .zip(&o.d)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        FpMat { p: self.p, rows: self.rows, cols: self.cols, d }
    }

    pub fn sub(&self, o: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols, self.p), (o.rows, o.cols, o.p));
        let d = self
            .d
            .iter()
            .zip(&o.d)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect();
        FpMat { p: self.p, rows: self.rows, cols: self.cols, d }
    }

    pub fn scale(&self, k: u64) -> FpMat {
        let k = k % self.p;
        let d = self.d.iter().map(|a| mulmod(*a, k, self.p)).collect();
        FpMat { p: self.p, rows: self.rows, cols: self.cols, d }
    }

    pub fn mul(&self, o: &FpMat) -> FpMat {
        assert_eq!(self.cols, o.rows);
        assert_eq!(self.p, o.p);
        let p = self.p;
        let mut out = vec![0u64; self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if b != 0 {
                        let idx = i * o.cols + j;
                        out[idx] = (out[idx] + mulmod(a, b, p)) % p;
                    }
                }
            }
        }
        FpMat { p, rows: self.rows, cols: o.cols, d: out }
    }

    /// Reduced row echelon form; returns (rref, pivot column list).
    pub fn rref(&self) -> (FpMat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.p;
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let mut piv = None;
            for i in row..m.rows {
                if m.at(i, col) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(pi) = piv else { continue };
            if pi != row {
                for j in 0..m.cols {
                    m.d.swap(row * m.cols + j, pi * m.cols + j);
                }
            }
            let inv = inv_mod(m.at(row, col), p);
            for j in col..m.cols {
                let v = mulmod(m.at(row, j), inv, p);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i != row && m.at(i, col) != 0 {
                    let f = m.at(i, col);
                    for j in col..m.cols {
                        let v = (m.at(i, j) + p - mulmod(f, m.at(row, j), p)) % p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant via Gaussian elimination.
    pub fn det(&self) -> u64 {
        assert!(self.rows == self.cols);
        let mut m = self.clone();
        let p = m.p;
        let n = m.rows;
        let mut det = 1u64 % p;
        for col in 0..n {
            let mut piv = None;
            for i in col..n {
                if m.at(i, col) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(pi) = piv else { return 0 };
            if pi != col {
                for j in 0..n {
                    m.d.swap(col * n + j, pi * n + j);
                }
                det = (p - det) % p;
            }
            let pv = m.at(col, col);
            det = mulmod(det, pv, p);
            let inv = inv_mod(pv, p);
            for i in col + 1..n {
                if m.at(i, col) != 0 {
                    let f = mulmod(m.at(i, col), inv, p);
                    for j in col..n {
                        let v = (m.at(i, j) + p - mulmod(f, m.at(col, j), p)) % p;
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    /// Rows form a basis of `{ x : self * x^T = 0 }` over F_p.
    pub fn right_kernel(&self) -> FpMat {
        let (r, pivots) = self.rref();
        let p = self.p;
        let free: Vec<usize> =
            (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FpMat::zero(p, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (ri, &pc) in pivots.iter().enumerate() {
                let v = r.at(ri, fc);
                if v != 0 {
                    out.set(k, pc, p - v);
                }
            }
        }
        out
    }

    /// Rows form a basis of `{ x : x * self = 0 }` over F_p.
    pub fn left_kernel(&self) -> FpMat {
        self.transpose().right_kernel()
    }

    pub fn inverse(&self) -> Option<FpMat> {
        assert!(self.rows == self.cols);
        let n = self.rows;
        let mut aug = FpMat::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = FpMat::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.at(i, n + j));
            }
        }
        Some(out)
    }

    /// One solution x of `x * self = b` (row convention), or None.
    pub fn solve_left(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.cols);
        let p = self.p;
        // Solve y * A = b by rref of A with a tracking identity block.
        let n = self.rows;
        let mut aug = FpMat::zero(p, n, self.cols + n);
        for i in 0..n {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, self.cols + i, 1);
        }
        let (r, _) = aug.rref();
        // Express b in terms of the echelon rows of A.
        let mut residual: Vec<u64> = b.iter().map(|x| x % p).collect();
        let mut y = vec![0u64; n];
        for i in 0..n {
            // Leading column of echelon row i within the A-part.
            let lead = (0..self.cols).find(|&j| r.at(i, j) != 0);
            let Some(lc) = lead else { continue };
            let f = mulmod(residual[lc], inv_mod(r.at(i, lc), p), p);
            if f != 0 {
                for j in 0..self.cols {
                    residual[j] = (residual[j] + p - mulmod(f, r.at(i, j), p)) % p;
                }
                for k in 0..n {
                    y[k] = (y[k] + mulmod(f, r.at(i, self.cols + k), p)) % p;
                }
            }
        }
        if residual.iter().any(|&x| x != 0) {
            return None;
        }
        Some(y)
    }
}

/// Rank of an integer matrix reduced mod p.
pub fn rank_mod_p(a: &IntMat, p: u64) -> usize {
    FpMat::from_int(a, p).rank()
}

/// Determinant of an integer matrix mod p (fast probabilistic filter for
/// unimodularity searches).
pub fn det_mod_p(a: &IntMat, p: u64) -> u64 {
    FpMat::from_int(a, p).det()
}
