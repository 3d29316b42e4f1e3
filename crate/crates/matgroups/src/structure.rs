//! Heuristic structure names for small finite groups ("C6", "Q8", "S4",
//! "C3 : C8", "C2 x S4", ...). Best-effort display strings for catalogs and
//! reports; equality testing should use group invariants, not these names.

use crate::bitset::BitSet;
use crate::fingroup::{abelian_invariants, subgroup_table, FinGroup};
use crate::subgroups::{normal_subgroups, subgroup_catalog};

pub fn structure_name(g: &impl FinGroup) -> String {
    let n = g.order();
    if n == 1 {
        return "1".to_string();
    }
    // cyclic
    if (0..n).any(|x| g.element_order(x) == n) {
        return format!("C{}", n);
    }
    if g.is_abelian() {
        let inv = abelian_invariants(g);
        return inv
            .torsion()
            .iter()
            .map(|d| format!("C{}", d))
            .collect::<Vec<_>>()
            .join(" x ");
    }
    let orders: Vec<usize> = (0..n).map(|x| g.element_order(x)).collect();
    let count = |o: usize| orders.iter().filter(|&&x| x == o).count();
    // quaternion group: order 8, unique involution, non-cyclic
    if n == 8 && count(2) == 1 {
        return "Q8".to_string();
    }
    if n == 6 {
        return "S3".to_string();
    }
    if n == 12 && count(2) == 3 && count(3) == 8 {
        return "A4".to_string();
    }
    if n == 24 && count(2) == 9 && count(3) == 8 && count(4) == 6 {
        return "S4".to_string();
    }
    // dihedral: index-2 cyclic subgroup + inverting involution
    if n % 2 == 0 {
        if let Some(r) = (0..n).find(|&x| g.element_order(x) == n / 2) {
            let dihedral = (0..n).any(|s| {
                g.element_order(s) == 2 && g.conj(r, s) == g.inv(r)
            });
            if dihedral && n / 2 > 2 {
                return format!("D{}", n);
            }
        }
    }
    // direct product: smallest nontrivial normal subgroup with a normal
    // complement
    let catalog = subgroup_catalog(g);
    let normals = normal_subgroups(&catalog);
    for a in &normals {
        if a.order == 1 || a.order == n {
            continue;
        }
        for b in &normals {
            if a.order * b.order != n {
                continue;
            }
            if a.elems.intersection(&b.elems).count() == 1 {
                let (ta, _) = subgroup_table(g, &a.elems);
                let (tb, _) = subgroup_table(g, &b.elems);
                return format!("{} x {}", structure_name(&ta), structure_name(&tb));
            }
        }
    }
    // split extension by a cyclic complement: N : K, preferring small N
    for a in &normals {
        if a.order == 1 || a.order == n {
            continue;
        }
        let k_order = n / a.order;
        // cyclic complement generated by one element
        for x in 0..n {
            if g.element_order(x) != k_order {
                continue;
            }
            let mut k = BitSet::new(n);
            let mut y = g.id();
            loop {
                k.insert(y);
                y = g.mul(y, x);
                if y == g.id() {
                    break;
                }
            }
            if k.intersection(&a.elems).count() == 1 {
                let (ta, _) = subgroup_table(g, &a.elems);
                return format!("{} : C{}", structure_name(&ta), k_order);
            }
        }
    }
    format!("order {} nonabelian", n)
}
