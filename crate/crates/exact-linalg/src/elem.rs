//! Generic exact-elimination core.
//!
//! The same Hermite/Smith/Bareiss code runs over two scalar types: checked
//! `i128` (fast, fails on overflow) and `BigInt` (infallible). Public wrappers
//! try the fast path first and restart over `BigInt` when it overflows.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

pub(crate) trait Elem: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn neg_checked(&self) -> Option<Self>;
    fn add_checked(&self, o: &Self) -> Option<Self>;
    fn sub_checked(&self, o: &Self) -> Option<Self>;
    fn mul_checked(&self, o: &Self) -> Option<Self>;
    /// Exact division; caller guarantees divisibility.
    fn exact_div(&self, o: &Self) -> Option<Self>;
    /// q with self - q*o in [0, |o|).
    fn div_floor_euclid(&self, o: &Self) -> Option<Self>;
    /// q minimizing |self - q*o|.
    fn div_round(&self, o: &Self) -> Option<Self>;
    fn abs_cmp(&self, o: &Self) -> Ordering;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Elem for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn neg_checked(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn add_checked(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub_checked(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul_checked(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        self.checked_div(*o)
    }
    fn div_floor_euclid(&self, o: &Self) -> Option<Self> {
        self.checked_div_euclid(*o)
    }
    fn div_round(&self, o: &Self) -> Option<Self> {
        let q0 = self.checked_div_euclid(*o)?;
        let r0 = self.checked_sub(q0.checked_mul(*o)?)?; // r0 in [0, |o|)
        if (r0 as u128) * 2 > o.unsigned_abs() {
            if *o > 0 {
                q0.checked_add(1)
            } else {
                q0.checked_sub(1)
            }
        } else {
            Some(q0)
        }
    }
    fn abs_cmp(&self, o: &Self) -> Ordering {
        self.unsigned_abs().cmp(&o.unsigned_abs())
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        let v = b.to_i128()?;
        // Keep headroom so the first few row operations rarely overflow.
        if v.unsigned_abs() <= 1u128 << 100 {
            Some(v)
        } else {
            None
        }
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Elem for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn neg_checked(&self) -> Option<Self> {
        Some(-self)
    }
    fn add_checked(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub_checked(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul_checked(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn div_floor_euclid(&self, o: &Self) -> Option<Self> {
        use num_integer::Integer;
        let q0 = self.div_floor(o);
        let r0 = self - &q0 * o;
        // div_floor leaves a remainder with the sign of o; shift into [0, |o|).
        if r0.is_negative() {
            if o.is_negative() {
                Some(q0 + 1)
            } else {
                Some(q0 - 1)
            }
        } else {
            Some(q0)
        }
    }
    fn div_round(&self, o: &Self) -> Option<Self> {
        let q0 = self.div_floor_euclid(o)?;
        let r0 = self - &q0 * o;
        if &r0 * 2 > o.abs() {
            if o.is_negative() {
                Some(q0 - 1)
            } else {
                Some(q0 + 1)
            }
        } else {
            Some(q0)
        }
    }
    fn abs_cmp(&self, o: &Self) -> Ordering {
        self.abs().cmp(&o.abs())
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Internal row-major matrix over the elimination scalar.
pub(crate) struct MatE<E> {
    pub rows: usize,
    pub cols: usize,
    pub d: Vec<E>,
}

impl<E: Elem> MatE<E> {
    pub fn from_big(m: &crate::IntMat) -> Option<Self> {
        let d: Option<Vec<E>> = m.entries().iter().map(E::from_big).collect();
        Some(MatE { rows: m.rows(), cols: m.cols(), d: d? })
    }

    pub fn identity(n: usize) -> Self {
        let mut d = vec![E::zero(); n * n];
        for i in 0..n {
            d[i * n + i] = E::one();
        }
        MatE { rows: n, cols: n, d }
    }

    pub fn to_big(&self) -> crate::IntMat {
        crate::IntMat::new(
            self.rows,
            self.cols,
            self.d.iter().map(|x| x.to_big()).collect(),
        )
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &E {
        &self.d[r * self.cols + c]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.d.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.d.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, r: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.d[r * self.cols + j].neg_checked()?;
            self.d[r * self.cols + j] = v;
        }
        Some(())
    }

    /// row[i] -= q * row[k]
    pub fn row_sub_scaled(&mut self, i: usize, k: usize, q: &E) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        for j in 0..self.cols {
            let t = self.d[k * self.cols + j].mul_checked(q)?;
            let v = self.d[i * self.cols + j].sub_checked(&t)?;
            self.d[i * self.cols + j] = v;
        }
        Some(())
    }

    /// col[i] -= q * col[k]
    pub fn col_sub_scaled(&mut self, i: usize, k: usize, q: &E) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        for r in 0..self.rows {
            let t = self.d[r * self.cols + k].mul_checked(q)?;
            let v = self.d[r * self.cols + i].sub_checked(&t)?;
            self.d[r * self.cols + i] = v;
        }
        Some(())
    }

    /// row[i] += row[k]
    pub fn row_add(&mut self, i: usize, k: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.d[i * self.cols + j].add_checked(&self.d[k * self.cols + j])?;
            self.d[i * self.cols + j] = v;
        }
        Some(())
    }
}

pub(crate) struct HnfResult<E> {
    pub h: MatE<E>,
    pub u: MatE<E>,
    pub pivots: Vec<(usize, usize)>,
}

/// Row-style Hermite normal form. Pivots positive, entries above each pivot
/// reduced into [0, pivot), zero rows at the bottom, `u * input = h` with
/// `u` unimodular. Returns None on scalar overflow.
pub(crate) fn hnf_core<E: Elem>(mut a: MatE<E>) -> Option<HnfResult<E>> {
    let (r, c) = (a.rows, a.cols);
    let mut u = MatE::<E>::identity(r);
    let mut row = 0usize;
    let mut pivots = Vec::new();
    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            // Pick the row with the smallest nonzero |entry| in this column.
            let mut best: Option<usize> = None;
            for i in row..r {
                if !a.at(i, col).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if a.at(i, col).abs_cmp(a.at(b, col)) == Ordering::Less {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(p) = best else { break };
            a.swap_rows(row, p);
            u.swap_rows(row, p);
            let mut clean = true;
            for i in row + 1..r {
                if !a.at(i, col).is_zero() {
                    let q = a.at(i, col).div_round(a.at(row, col))?;
                    a.row_sub_scaled(i, row, &q)?;
                    u.row_sub_scaled(i, row, &q)?;
                    if !a.at(i, col).is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                // Single nonzero remains at (row, col): normalize and reduce above.
                if a.at(row, col).is_neg() {
                    a.negate_row(row)?;
                    u.negate_row(row)?;
                }
                for i in 0..row {
                    if !a.at(i, col).is_zero() {
                        let q = a.at(i, col).div_floor_euclid(a.at(row, col))?;
                        a.row_sub_scaled(i, row, &q)?;
                        u.row_sub_scaled(i, row, &q)?;
                    }
                }
                pivots.push((row, col));
                row += 1;
                break;
            }
        }
    }
    Some(HnfResult { h: a, u, pivots })
}

pub(crate) struct SnfResult<E> {
    pub d: MatE<E>,
    pub u: MatE<E>,
    pub v: MatE<E>,
}

/// Smith normal form: `u * input * v = d` with `u`, `v` unimodular and the
/// diagonal nonnegative with each entry dividing the next.
pub(crate) fn snf_core<E: Elem>(mut a: MatE<E>) -> Option<SnfResult<E>> {
    let (r, c) = (a.rows, a.cols);
    let mut u = MatE::<E>::identity(r);
    let mut v = MatE::<E>::identity(c);
    let n = r.min(c);
    let mut t = 0usize;
    while t < n {
        // Locate the smallest nonzero |entry| in the trailing submatrix.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a.at(i, j).is_zero() {
                    best = match best {
                        None => Some((i, j)),
                        Some((bi, bj)) => {
                            if a.at(i, j).abs_cmp(a.at(bi, bj)) == Ordering::Less {
                                Some((i, j))
                            } else {
                                Some((bi, bj))
                            }
                        }
                    };
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        // Clear row and column t; re-pivot whenever a remainder survives.
        let mut clean = true;
        for i in t + 1..r {
            if !a.at(i, t).is_zero() {
                let q = a.at(i, t).div_round(a.at(t, t))?;
                a.row_sub_scaled(i, t, &q)?;
                u.row_sub_scaled(i, t, &q)?;
                if !a.at(i, t).is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..c {
            if !a.at(t, j).is_zero() {
                let q = a.at(t, j).div_round(a.at(t, t))?;
                a.col_sub_scaled(j, t, &q)?;
                v.col_sub_scaled(j, t, &q)?;
                if !a.at(t, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold in any entry the pivot does not divide.
        let mut fixed = true;
        'scan: for i in t + 1..r {
            for j in t + 1..c {
                if !a.at(i, j).is_zero() {
                    let q = a.at(i, j).div_floor_euclid(a.at(t, t))?;
                    let rem = a.at(i, j).sub_checked(&a.at(t, t).mul_checked(&q)?)?;
                    if !rem.is_zero() {
                        a.row_add(t, i)?;
                        u.row_add(t, i)?;
                        fixed = false;
                        break 'scan;
                    }
                }
            }
        }
        if !fixed {
            continue;
        }
        if a.at(t, t).is_neg() {
            a.negate_row(t)?;
            u.negate_row(t)?;
        }
        t += 1;
    }
    Some(SnfResult { d: a, u, v })
}

/// Fraction-free Bareiss determinant.
pub(crate) fn det_bareiss<E: Elem>(mut a: MatE<E>) -> Option<E> {
    let n = a.rows;
    if n == 0 {
        return Some(E::one());
    }
    let mut sign_neg = false;
    let mut prev = E::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            let mut found = None;
            for i in k + 1..n {
                if !a.at(i, k).is_zero() {
                    found = Some(i);
                    break;
                }
            }
            match found {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign_neg = !sign_neg;
                }
                None => return Some(E::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = a.at(i, j).mul_checked(a.at(k, k))?;
                let t2 = a.at(i, k).mul_checked(a.at(k, j))?;
                let num = t1.sub_checked(&t2)?;
                let val = num.exact_div(&prev)?;
                a.d[i * n + j] = val;
            }
            a.d[i * n + k] = E::zero();
        }
        prev = a.at(k, k).clone();
    }
    let d = a.at(n - 1, n - 1).clone();
    if sign_neg {
        d.neg_checked()
    } else {
        Some(d)
    }
}
