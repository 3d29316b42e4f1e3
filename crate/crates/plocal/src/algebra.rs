//! Finite-dimensional unital algebras over a prime field, presented by a
//! matrix basis with a precomputed multiplication table in coordinates.

use exact_linalg::{FpMat, IntMat};
use lattices::{hom_basis, GLattice};

/// A finite-dimensional associative unital algebra over `F_p`.
///
/// Elements are coordinate vectors over a fixed basis of `n x n` matrices
/// mod p. All products of basis elements are expressed back in coordinates
/// once, so element arithmetic never touches the matrices again.
#[derive(Clone)]
pub struct FpAlgebra {
    p: u64,
    module_dim: usize,
    basis: Vec<FpMat>,
    /// Coordinates of the multiplicative identity in `basis`.
    identity: Vec<u64>,
    /// `table[i * dim + j]` = coordinates of `basis[i] * basis[j]`.
    table: Vec<Vec<u64>>,
}

impl FpAlgebra {
    /// Builds the algebra spanned by `basis` inside `n x n` matrices mod p.
    ///
    /// Panics if the span is not linearly independent, not closed under
    /// multiplication, or does not contain the identity matrix. A zero-length
    /// basis with `module_dim` arbitrary yields the zero ring (where 0 = 1).
    pub fn from_matrix_basis(p: u64, basis: Vec<FpMat>, module_dim: usize) -> FpAlgebra {
        assert!(p >= 2 && is_prime(p), "modulus must be prime, got {p}");
        let n = module_dim;
        for b in &basis {
            assert_eq!(b.p(), p, "basis matrix has mismatched modulus");
            assert!(
                b.rows() == n && b.cols() == n,
                "basis matrix is {}x{}, expected {n}x{n}",
                b.rows(),
                b.cols()
            );
        }
        let dim = basis.len();
        let mut flat = FpMat::zero(p, dim, n * n);
        for (i, b) in basis.iter().enumerate() {
            for (k, &v) in b.entries().iter().enumerate() {
                flat.set(i, k, v);
            }
        }
        assert_eq!(
            flat.rank(),
            dim,
            "matrix basis must be linearly independent mod {p}"
        );
        let identity = if dim == 0 {
            Vec::new()
        } else {
            flat.solve_left(FpMat::identity(p, n).entries())
                .expect("identity matrix must lie in the span of the basis")
        };
        let mut table = Vec::with_capacity(dim * dim);
        for bi in &basis {
            for bj in &basis {
                let prod = bi.mul(bj);
                let coords = flat
                    .solve_left(prod.entries())
                    .expect("basis products must stay inside the span");
                table.push(coords);
            }
        }
        let a = FpAlgebra { p, module_dim: n, basis, identity, table };
        a.spot_check_associativity();
        a
    }

    /// Associativity of the coordinate table on basis triples. Products of
    /// matrices associate automatically; this guards the coordinate solves.
    fn spot_check_associativity(&self) {
        let m = self.dim();
        let triples: Vec<(usize, usize, usize)> = if m <= 8 {
            (0..m)
                .flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k))))
                .collect()
        } else {
            // Deterministic sparse sample for larger algebras.
            (0..64)
                .map(|t| {
                    let x = (t * 2654435761u64 as usize) % (m * m * m);
                    (x / (m * m), (x / m) % m, x % m)
                })
                .collect()
        };
        for (i, j, k) in triples {
            let left = self.mul_coords(self.table_at(i, j), self.unit_coords(k).as_slice());
            let right = self.mul_coords(self.unit_coords(i).as_slice(), self.table_at(j, k));
            assert_eq!(left, right, "multiplication table is not associative");
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Dimension of the algebra over `F_p`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Side length of the matrices the basis lives in.
    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn basis(&self) -> &[FpMat] {
        &self.basis
    }

    /// Coordinates of the multiplicative identity.
    pub fn identity_coords(&self) -> &[u64] {
        &self.identity
    }

    pub fn zero_coords(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    /// Coordinate vector of the `k`-th basis element.
    pub fn unit_coords(&self, k: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        v[k] = 1;
        v
    }

    fn table_at(&self, i: usize, j: usize) -> &[u64] {
        &self.table[i * self.dim() + j]
    }

    /// Product of two elements in coordinates.
    pub fn mul_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let m = self.dim();
        let p = self.p;
        let mut out = vec![0u64; m];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = (xi * yj) % p;
                let t = self.table_at(i, j);
                for (o, &tk) in out.iter_mut().zip(t.iter()) {
                    *o = (*o + c * tk) % p;
                }
            }
        }
        out
    }

    pub fn add_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| (a + b) % self.p).collect()
    }

    pub fn is_idempotent(&self, x: &[u64]) -> bool {
        self.mul_coords(x, x) == x
    }

    /// Whether `x^(2^k) = 0` for some `k` with `2^k >= dim + 1`; for elements
    /// of an algebra of this dimension that is exactly nilpotency.
    pub fn is_nilpotent(&self, x: &[u64]) -> bool {
        let mut cur = x.to_vec();
        let mut bound = 1usize;
        loop {
            if cur.iter().all(|&c| c == 0) {
                return true;
            }
            if bound > self.dim() {
                return false;
            }
            cur = self.mul_coords(&cur, &cur);
            bound *= 2;
        }
    }

    /// The element as an actual matrix mod p.
    pub fn to_matrix(&self, x: &[u64]) -> FpMat {
        let n = self.module_dim;
        let mut out = FpMat::zero(self.p, n, n);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.basis[i].scale(c));
            }
        }
        out
    }

    /// Matrix of left multiplication by `z` on the algebra itself, in the row
    /// convention: `coords(z * y) = coords(y) * L`.
    pub fn left_mul_matrix(&self, z: &[u64]) -> FpMat {
        let m = self.dim();
        let mut l = FpMat::zero(self.p, m, m);
        for j in 0..m {
            let row = self.mul_coords(z, &self.unit_coords(j));
            for (k, &v) in row.iter().enumerate() {
                l.set(j, k, v);
            }
        }
        l
    }

    /// Entrywise integer lift of `left_mul_matrix` with entries in `[0, p)`.
    pub fn left_mul_lift(&self, z: &[u64]) -> IntMat {
        let l = self.left_mul_matrix(z);
        let m = self.dim();
        let mut out = IntMat::zero(m, m);
        for i in 0..m {
            for j in 0..m {
                out.set(i, j, l.at(i, j).into());
            }
        }
        out
    }
}

/// Endomorphism ring of the lattice reduced mod p: the saturated integer
/// basis of `Hom_G(M, M)` stays linearly independent mod p and spans a
/// multiplicatively closed subspace, giving `End(M)/p End(M)` faithfully.
pub fn endo_mod_p(m: &GLattice, p: u64) -> FpAlgebra {
    let homs = hom_basis(m, m);
    let basis = homs.iter().map(|h| FpMat::from_int(h, p)).collect();
    FpAlgebra::from_matrix_basis(p, basis, m.rank())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
