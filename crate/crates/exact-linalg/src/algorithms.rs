use crate::elem::{det_bareiss, hnf_core, snf_core, MatE};
use crate::{AbInv, IntMat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Row-style Hermite normal form: returns `(H, U)` with `U * A = H`,
/// `U` unimodular, pivots positive, entries above each pivot reduced into
/// `[0, pivot)`, and zero rows at the bottom.
pub fn hermite_normal_form(a: &IntMat) -> (IntMat, IntMat) {
    let (h, u, _) = hnf_full(a);
    (h, u)
}

/// Hermite normal form together with the pivot (row, col) positions.
pub fn hnf_with_pivots(a: &IntMat) -> (IntMat, IntMat, Vec<(usize, usize)>) {
    hnf_full(a)
}

fn hnf_full(a: &IntMat) -> (IntMat, IntMat, Vec<(usize, usize)>) {
    if let Some(m) = MatE::<i128>::from_big(a) {
        if let Some(res) = hnf_core(m) {
            return (res.h.to_big(), res.u.to_big(), res.pivots);
        }
    }
    let m = MatE::<BigInt>::from_big(a).expect("BigInt conversion is total");
    let res = hnf_core(m).expect("BigInt elimination cannot overflow");
    (res.h.to_big(), res.u.to_big(), res.pivots)
}

/// Rank over the rationals (= number of Hermite pivots).
pub fn rank(a: &IntMat) -> usize {
    hnf_full(a).2.len()
}

/// Smith normal form data: `u * a * v = d`, diagonal nonnegative, each
/// entry dividing the next.
pub struct SmithForm {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl SmithForm {
    /// Diagonal entries, including any zeros.
    pub fn diag(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.at(i, i).clone()).collect()
    }

    /// Nonzero invariant factors in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diag().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

pub fn smith_normal_form(a: &IntMat) -> SmithForm {
    if let Some(m) = MatE::<i128>::from_big(a) {
        if let Some(res) = snf_core(m) {
            return SmithForm { d: res.d.to_big(), u: res.u.to_big(), v: res.v.to_big() };
        }
    }
    let m = MatE::<BigInt>::from_big(a).expect("BigInt conversion is total");
    let res = snf_core(m).expect("BigInt elimination cannot overflow");
    SmithForm { d: res.d.to_big(), u: res.u.to_big(), v: res.v.to_big() }
}

/// Determinant of a square matrix (fraction-free elimination).
pub fn det(a: &IntMat) -> BigInt {
    assert!(a.is_square(), "determinant of a non-square matrix");
    if let Some(m) = MatE::<i128>::from_big(a) {
        if let Some(d) = det_bareiss(m) {
            return BigInt::from(d);
        }
    }
    let m = MatE::<BigInt>::from_big(a).expect("BigInt conversion is total");
    det_bareiss(m).expect("BigInt elimination cannot overflow")
}

pub fn is_unimodular(a: &IntMat) -> bool {
    a.is_square() && det(a).abs() == BigInt::from(1)
}

/// Rows form a basis of `{ x : A * x^T = 0 }` (the right kernel, stored as
/// row vectors). The basis spans a saturated sublattice: any integer vector
/// killed by `A` is an integer combination of these rows.
pub fn kernel_basis(a: &IntMat) -> IntMat {
    left_kernel_basis(&a.transpose())
}

/// Rows form a basis of `{ x : x * A = 0 }` (the left kernel). Saturated for
/// the same reason: the rows of `U` matching zero rows of the Hermite form
/// extend to a basis of the full row space of `U`, which is all of Z^rows.
pub fn left_kernel_basis(a: &IntMat) -> IntMat {
    let (h, u, pivots) = hnf_full(a);
    let rank = pivots.len();
    let rows = h.rows();
    if rank == rows {
        return IntMat::zero(0, a.rows());
    }
    let idx: Vec<usize> = (rank..rows).collect();
    u.select_rows(&idx)
}

/// Integral solution `X` of `X * A = B` (row-vector maps); `None` when no
/// integral solution exists.
pub fn solve_left(a: &IntMat, b: &IntMat) -> Option<IntMat> {
    assert_eq!(a.cols(), b.cols(), "solve_left: column count mismatch");
    let (h, u, pivots) = hnf_full(a);
    let mut out = IntMat::zero(b.rows(), a.rows());
    for r in 0..b.rows() {
        let mut residual: Vec<BigInt> = b.row_slice(r).to_vec();
        let mut coeffs = vec![BigInt::zero(); h.rows()];
        for &(pi, pj) in &pivots {
            let p = h.at(pi, pj);
            let (q, rem) = num_integer::Integer::div_rem(&residual[pj], p);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for j in 0..h.cols() {
                    let hv = h.at(pi, j);
                    if !hv.is_zero() {
                        residual[j] -= &q * hv;
                    }
                }
            }
            coeffs[pi] = q;
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        // x = coeffs * U solves x * A = row.
        for j in 0..a.rows() {
            let mut s = BigInt::zero();
            for (i, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    s += c * u.at(i, j);
                }
            }
            out.set(r, j, s);
        }
    }
    Some(out)
}

/// Integral solution `X` of `A * X = B`; `None` when no integral solution
/// exists.
pub fn solve(a: &IntMat, b: &IntMat) -> Option<IntMat> {
    assert_eq!(a.rows(), b.rows(), "solve: row count mismatch");
    solve_left(&a.transpose(), &b.transpose()).map(|x| x.transpose())
}

/// Structure of the quotient `Z^rows / (column span of A)`, i.e. the cokernel
/// of the column-vector map `x -> A * x`.
pub fn cokernel_invariants(a: &IntMat) -> AbInv {
    if a.cols() == 0 {
        return AbInv::free(a.rows());
    }
    let sf = smith_normal_form(a);
    let nonzero: Vec<BigInt> = sf.invariant_factors();
    let torsion: Vec<BigInt> =
        nonzero.iter().filter(|d| **d > BigInt::from(1)).cloned().collect();
    AbInv::new(torsion, a.rows() - nonzero.len())
}

/// Structure of the quotient `Z^cols / (row span of A)`, the natural cokernel
/// in the row-vector convention used for lattice maps.
pub fn row_cokernel_invariants(a: &IntMat) -> AbInv {
    cokernel_invariants(&a.transpose())
}

/// True when the rows of `a` are independent and span a saturated sublattice
/// (every invariant factor is 1).
pub fn is_saturated_basis(a: &IntMat) -> bool {
    if a.rows() == 0 {
        return true;
    }
    let sf = smith_normal_form(a);
    let diag = sf.diag();
    diag.len() == a.rows().min(a.cols())
        && a.rows() <= a.cols()
        && diag.iter().all(|d| *d == BigInt::from(1))
}

/// Basis rows of `{ x in Z^dim : x * B = 0 for every block B }`, intersecting
/// the left kernels one block at a time so the working dimension shrinks as
/// constraints accumulate. Each block must have `dim` rows... the current
/// kernel is carried as a saturated row basis, so the result is saturated.
pub fn left_kernel_intersection(
    dim: usize,
    blocks: impl IntoIterator<Item = IntMat>,
) -> IntMat {
    let mut basis: Option<IntMat> = None; // None = all of Z^dim
    for b in blocks {
        assert_eq!(b.rows(), dim, "constraint block has wrong height");
        let reduced = match &basis {
            None => b,
            Some(k) => {
                if k.rows() == 0 {
                    return IntMat::zero(0, dim);
                }
                k.mul(&b)
            }
        };
        let ker = left_kernel_basis(&reduced);
        basis = Some(match basis {
            None => ker,
            Some(k) => ker.mul(&k),
        });
    }
    basis.unwrap_or_else(|| IntMat::identity(dim))
}

/// Basis rows of the intersection of two row-span lattices. The inputs are
/// generating sets (rows need not be independent); the output rows are an
/// independent basis in Hermite form. The intersection of non-saturated
/// lattices is in general not saturated, and no saturation is applied.
pub fn lattice_intersection(a: &IntMat, b: &IntMat) -> IntMat {
    assert_eq!(a.cols(), b.cols(), "lattice_intersection: width mismatch");
    let ha = nonzero_hnf_rows(a);
    let hb = nonzero_hnf_rows(b);
    if ha.rows() == 0 || hb.rows() == 0 {
        return IntMat::zero(0, a.cols());
    }
    // (c, d) with c * ha = d * hb <=> (c | d) in the left kernel of
    // [ha; -hb]; the intersection is then { c * ha }.
    let stacked = IntMat::vstack(&[&ha, &hb.neg()]);
    let ker = left_kernel_basis(&stacked);
    if ker.rows() == 0 {
        return IntMat::zero(0, a.cols());
    }
    let c = ker.submatrix(0, ker.rows(), 0, ha.rows());
    nonzero_hnf_rows(&c.mul(&ha))
}

/// The nonzero rows of the Hermite form: a canonical independent basis of the
/// row-span lattice.
pub fn nonzero_hnf_rows(a: &IntMat) -> IntMat {
    let (h, _, pivots) = hnf_full(a);
    let idx: Vec<usize> = (0..pivots.len()).collect();
    h.select_rows(&idx)
}
