//! Group cohomology of lattices over finite integral matrix groups.
//!
//! Everything is exact integer linear algebra: `H^1` through explicit
//! cocycles on generators, Tate cohomology in degrees 0 and -1 from fixed
//! vectors and norms, `H^2` through a coinduced degree shift that works for
//! all subgroups at once, and the subgroups of classes that die on every
//! cyclic subgroup (`sha_omega1`, `sha_omega2`). Flabby and coflabby
//! predicates run the corresponding vanishing tests over a whole subgroup
//! catalog.

mod cocycle;
mod flabbiness;
mod sha;
mod shift;
mod tate;

pub use cocycle::{cocycle_data, h1, CocycleData};
pub use flabbiness::{h1_class_vector, h2_perm_class, is_coflabby, is_flabby};
pub use sha::{cyclic_generator, sha_omega1, sha_omega2};
pub use shift::{coinduced_shift, h2};
pub use tate::{tate_h0, tate_hm1};
