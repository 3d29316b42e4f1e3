//! Exact integer and mod-p linear algebra kernel.
//!
//! Provides the dense arbitrary-precision matrix type [`IntMat`] together
//! with the elimination algorithms every higher layer relies on: Hermite and
//! Smith normal forms with unimodular transforms, saturated kernel bases,
//! exact linear solving, cokernel structure ([`AbInv`]), fraction-free
//! determinants, and dense `F_p` linear algebra ([`FpMat`]).
//!
//! All integer results are exact. Hot paths run over checked `i128` and
//! transparently restart over `BigInt` on overflow.

mod abinv;
mod algorithms;
mod elem;
mod intmat;
mod modp;

pub use abinv::AbInv;
pub use algorithms::{
    cokernel_invariants, det, hermite_normal_form, hnf_with_pivots, is_saturated_basis,
    is_unimodular, kernel_basis, lattice_intersection, left_kernel_basis,
    left_kernel_intersection, nonzero_hnf_rows, rank, row_cokernel_invariants,
    smith_normal_form, solve, solve_left, SmithForm,
};
pub use intmat::IntMat;
pub use modp::{det_mod_p, inv_mod, is_prime_u64, rank_mod_p, FpMat};

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_i64_rows(rows)
    }

    #[test]
    fn hnf_identity_is_fixed_point() {
        let i3 = IntMat::identity(3);
        let (h, u) = hermite_normal_form(&i3);
        assert_eq!(h, i3);
        assert_eq!(u, i3);
    }

    #[test]
    fn hnf_pivot_normalization() {
        let a = m(&[vec![0], vec![3]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, m(&[vec![3], vec![0]]));
        assert_eq!(u.mul(&a), h);
        assert!(is_unimodular(&u));
    }

    #[test]
    fn hnf_already_reduced() {
        let a = m(&[vec![2, 4], vec![0, 6]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, a);
        assert!(u.is_identity());
    }

    #[test]
    fn hnf_reduces_above_pivot() {
        let a = m(&[vec![1, 7], vec![0, 5]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, m(&[vec![1, 2], vec![0, 5]]));
        assert_eq!(u.mul(&a), h);
    }

    #[test]
    fn snf_coprime_diagonal() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let sf = smith_normal_form(&a);
        assert_eq!(sf.diag(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(sf.u.mul(&a).mul(&sf.v), sf.d);
        assert!(is_unimodular(&sf.u));
        assert!(is_unimodular(&sf.v));
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMat::zero(2, 3);
        let sf = smith_normal_form(&a);
        assert!(sf.d.is_zero());
    }

    #[test]
    fn snf_homogeneous_diagonal() {
        let a = m(&[vec![2, 0], vec![0, 2]]);
        let sf = smith_normal_form(&a);
        assert_eq!(sf.diag(), vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn kernel_of_sum_functional() {
        let a = m(&[vec![1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.rows(), 1);
        // (1,-1) up to sign.
        let v: Vec<i64> = vec![1, -1];
        let got: Vec<BigInt> = k.row_slice(0).to_vec();
        let want: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let negwant: Vec<BigInt> = v.iter().map(|&x| BigInt::from(-x)).collect();
        assert!(got == want || got == negwant);
    }

    #[test]
    fn kernel_of_identity_empty() {
        let k = kernel_basis(&IntMat::identity(4));
        assert_eq!(k.rows(), 0);
        assert_eq!(k.cols(), 4);
    }

    #[test]
    fn kernel_is_saturated() {
        // (2,2) has the same kernel as (1,1): saturation divides out the 2.
        let a = m(&[vec![2, 2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.rows(), 1);
        let e0 = k.at(0, 0).clone();
        let e1 = k.at(0, 1).clone();
        assert_eq!(e0.magnitude().to_string(), "1");
        assert_eq!(e0, -e1);
        assert!(is_saturated_basis(&k));
    }

    #[test]
    fn solve_identity() {
        let b = m(&[vec![3], vec![4]]);
        let x = solve(&IntMat::identity(2), &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_parity_obstruction() {
        let a = m(&[vec![2]]);
        let b = m(&[vec![1]]);
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn solve_underdetermined() {
        let a = m(&[vec![1, 1]]);
        let b = m(&[vec![5]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn solve_left_matches_row_convention() {
        let a = m(&[vec![1, 2], vec![0, 3]]);
        let b = m(&[vec![2, 7], vec![1, 5]]);
        let x = solve_left(&a, &b).unwrap();
        assert_eq!(x.mul(&a), b);
    }

    #[test]
    fn cokernel_two_torsion() {
        let a = m(&[vec![2, 0], vec![0, 2]]);
        let inv = cokernel_invariants(&a);
        assert_eq!(inv, AbInv::elementary(2, 2));
        assert_eq!(format!("{}", inv), "(2,2)");
    }

    #[test]
    fn cokernel_trivial() {
        let a = m(&[vec![1]]);
        assert!(cokernel_invariants(&a).is_trivial());
        assert_eq!(format!("{}", cokernel_invariants(&a)), "()");
    }

    #[test]
    fn cokernel_cyclic_six() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(cokernel_invariants(&a), AbInv::cyclic(6));
    }

    #[test]
    fn cokernel_free_part() {
        // 3 rows, column span of rank 1 with index 2 in its saturation.
        let a = m(&[vec![2], vec![0], vec![0]]);
        let inv = cokernel_invariants(&a);
        assert_eq!(inv.free_rank(), 2);
        assert_eq!(inv.torsion(), &[BigInt::from(2)]);
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&IntMat::identity(5)), BigInt::from(1));
        let swap = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(det(&swap), BigInt::from(-1));
        let two = m(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(det(&two), BigInt::from(4));
    }

    #[test]
    fn rank_mod_p_examples() {
        let two_i3 = m(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        assert_eq!(rank_mod_p(&two_i3, 2), 0);
        assert_eq!(rank_mod_p(&IntMat::identity(3), 3), 3);
        let ones = m(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(rank_mod_p(&ones, 2), 1);
    }

    #[test]
    fn unimodular_inverse_round_trip() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        let inv = a.unimodular_inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        let b = m(&[vec![2, 0], vec![0, 1]]);
        assert!(b.unimodular_inverse().is_none());
    }

    #[test]
    fn kron_mixed_product() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let b = m(&[vec![0, 1], vec![1, 0]]);
        let c = m(&[vec![1, 1], vec![0, 1]]);
        let d = m(&[vec![2, 0], vec![1, 1]]);
        // (A kron B)(C kron D) = (AC) kron (BD)
        let lhs = a.kron(&b).mul(&c.kron(&d));
        let rhs = a.mul(&c).kron(&b.mul(&d));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fp_mat_kernel_and_inverse() {
        let a = m(&[vec![1, 1], vec![1, 1]]);
        let f = FpMat::from_int(&a, 2);
        assert_eq!(f.rank(), 1);
        let k = f.right_kernel();
        assert_eq!(k.rows(), 1);
        assert!(f.mul(&k.transpose()).is_zero());

        let g = FpMat::from_int(&m(&[vec![1, 2], vec![3, 4]]), 5);
        let gi = g.inverse().unwrap();
        assert_eq!(g.mul(&gi), FpMat::identity(5, 2));
    }

    #[test]
    fn fp_solve_left() {
        let a = FpMat::from_int(&m(&[vec![1, 2], vec![3, 4]]), 7);
        let b = vec![5u64, 6u64];
        let x = a.solve_left(&b).unwrap();
        // verify x * a = b mod 7
        let xm = FpMat::new(7, 1, 2, x);
        let prod = xm.mul(&a);
        assert_eq!(prod.entries(), &b[..]);
    }

    #[test]
    fn negative_entries_reduce_mod_p() {
        let a = m(&[vec![-1]]);
        let f = FpMat::from_int(&a, 3);
        assert_eq!(f.at(0, 0), 2);
    }

    #[test]
    fn big_entry_fallback() {
        // Entries beyond the i128 fast path trigger the BigInt restart.
        let huge = BigInt::parse_bytes(b"170141183460469231731687303715884105729", 10)
            .unwrap(); // 2^127 + 1
        let a = IntMat::new(
            2,
            2,
            vec![huge.clone(), BigInt::from(1), BigInt::from(1), BigInt::from(1)],
        );
        assert_eq!(det(&a), &huge - 1);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a), h);
    }

    #[test]
    fn kernel_intersection_of_blocks() {
        // constraints x1 = x2 and x2 = x3 inside Z^3
        let b1 = m(&[vec![1], vec![-1], vec![0]]);
        let b2 = m(&[vec![0], vec![1], vec![-1]]);
        let k = left_kernel_intersection(3, vec![b1, b2]);
        assert_eq!(k.rows(), 1);
        let r = k.row_slice(0);
        assert_eq!(r[0], r[1]);
        assert_eq!(r[1], r[2]);
        assert!(r[0] == BigInt::from(1) || r[0] == BigInt::from(-1));
        // no constraints: the whole space
        assert_eq!(left_kernel_intersection(2, Vec::new()), IntMat::identity(2));
        // contradictory-but-linear: only zero survives
        let full = left_kernel_intersection(2, vec![m(&[vec![1, 0], vec![0, 1]])]);
        assert_eq!(full.rows(), 0);
    }

    #[test]
    fn lattice_intersections() {
        // (2Z x Z) meet (Z x 3Z) = 2Z x 3Z
        let a = m(&[vec![2, 0], vec![0, 1]]);
        let b = m(&[vec![1, 0], vec![0, 3]]);
        let i = lattice_intersection(&a, &b);
        assert_eq!(i, m(&[vec![2, 0], vec![0, 3]]));
        // span{(1,1)} meet span{(1,-1)} = {0}
        let c = lattice_intersection(&m(&[vec![1, 1]]), &m(&[vec![1, -1]]));
        assert_eq!(c.rows(), 0);
        // span{(1,1)} meet 2Z^2 = span{(2,2)}
        let d = lattice_intersection(
            &m(&[vec![1, 1]]),
            &m(&[vec![2, 0], vec![0, 2]]),
        );
        assert_eq!(d, m(&[vec![2, 2]]));
        // generating sets with dependent rows are fine
        let e = lattice_intersection(
            &m(&[vec![1, 0], vec![1, 0], vec![0, 1]]),
            &m(&[vec![5, 0], vec![0, 5]]),
        );
        assert_eq!(e, m(&[vec![5, 0], vec![0, 5]]));
    }
}
