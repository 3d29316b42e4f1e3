//! Degree shift for second cohomology.
//!
//! Embed M into the coinduced module `T = functions G -> M`, where sigma
//! translates positions: `(t . sigma)_y = t_(y sigma^-1)`. T is a direct sum
//! of copies of the regular module, so it is cohomologically trivial for
//! every subgroup, and the quotient `C = T / M` (M embedded via
//! `m |-> (m a(x^-1))_x`, split over Z by the identity coordinate) satisfies
//! `H^2(H, M) = H^1(H, C)` simultaneously for all subgroups H.

use exact_linalg::{AbInv, IntMat};
use lattices::{zero_lattice, GLattice};
use matgroups::FinGroup;

use crate::cocycle::h1;

/// The quotient module C on the coordinate blocks x != id, with the action
/// renormalized back into the section `t_id = 0`:
/// `(c . sigma)_x = c_(x sigma^-1) - c_(sigma^-1) a(x^-1)`.
pub fn coinduced_shift(m: &GLattice) -> GLattice {
    let g = m.group().clone();
    let n = g.order();
    let r = m.rank();
    if n == 1 || r == 0 {
        return zero_lattice(&g);
    }
    let id = g.id();
    let slot = |x: usize| if x < id { x } else { x - 1 };
    let rc = (n - 1) * r;
    let mut action = Vec::with_capacity(n);
    for sigma in 0..n {
        let mut a = IntMat::zero(rc, rc);
        // translation part: block y feeds block y*sigma
        for y in 0..n {
            if y == id {
                continue;
            }
            let t = g.mul(y, sigma);
            if t == id {
                continue;
            }
            for i in 0..r {
                a.set(slot(y) * r + i, slot(t) * r + i, 1.into());
            }
        }
        // renormalization: the block that would land on the identity
        // coordinate is pushed back along the embedding of M
        if sigma != id {
            let ystar = g.inv(sigma);
            for x in 0..n {
                if x == id {
                    continue;
                }
                let block = m.act(g.inv(x));
                for i in 0..r {
                    for j in 0..r {
                        let v = a
                            .at(slot(ystar) * r + i, slot(x) * r + j)
                            .clone()
                            - block.at(i, j);
                        a.set(slot(ystar) * r + i, slot(x) * r + j, v);
                    }
                }
            }
        }
        action.push(a);
    }
    GLattice::from_action(g, action, format!("shift({})", m.tag()))
        .expect("coinduced quotient is a representation")
}

/// `H^2(G, M)` through the degree shift.
pub fn h2(m: &GLattice) -> AbInv {
    h1(&coinduced_shift(m))
}
