//! Subgroup enumeration and conjugacy-class catalogs.
//!
//! Enumeration walks the subgroup lattice bottom-up: every subgroup is
//! reached from a smaller one by adjoining a cyclic subgroup of prime-power
//! order (if all prime-power-order elements of S lay in a proper subgroup H,
//! they could not generate S). Deduplication is by element bit set.

use crate::bitset::BitSet;
use crate::fingroup::{
    closure_from_gens, conjugate_subgroup, small_generating_set, FinGroup,
};
use crate::group::MatGroup;
use crate::DEFAULT_ELEMENT_CAP;
use std::collections::{HashMap, HashSet};

/// A subgroup of a parent group, identified by element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elems: BitSet,
    pub gens: Vec<usize>,
    pub order: usize,
}

impl Subgroup {
    pub fn from_bitset(g: &impl FinGroup, elems: BitSet) -> Subgroup {
        let gens = small_generating_set(g, &elems);
        let order = elems.count();
        Subgroup { elems, gens, order }
    }

    pub fn from_gens(g: &impl FinGroup, gens: &[usize]) -> Subgroup {
        let elems = closure_from_gens(g, gens);
        let order = elems.count();
        Subgroup { elems, gens: gens.to_vec(), order }
    }

    pub fn trivial(g: &impl FinGroup) -> Subgroup {
        let mut elems = BitSet::new(g.order());
        elems.insert(g.id());
        Subgroup { elems, gens: Vec::new(), order: 1 }
    }

    pub fn full(g: &impl FinGroup) -> Subgroup {
        let all: Vec<usize> = (0..g.order()).collect();
        let elems = BitSet::from_indices(g.order(), &all);
        Subgroup::from_bitset(g, elems)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.contains(i)
    }

    /// Standalone matrix group generated by this subgroup's elements.
    pub fn to_matgroup(&self, parent: &MatGroup) -> MatGroup {
        if self.order == 1 {
            return MatGroup::trivial(parent.degree());
        }
        let gens: Vec<_> = self
            .gens
            .iter()
            .map(|&i| parent.element(i).clone())
            .collect();
        MatGroup::close(&gens, DEFAULT_ELEMENT_CAP).expect("subgroup closes")
    }

    pub fn is_normal(&self, g: &impl FinGroup) -> bool {
        for c in 0..g.order() {
            for x in self.elems.iter() {
                if !self.elems.contains(g.conj(x, c)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Cyclic subgroups of prime-power order, each with its least generator.
fn zuppos(g: &impl FinGroup) -> Vec<(BitSet, usize)> {
    let n = g.order();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for x in 0..n {
        let o = g.element_order(x);
        if o == 1 || !is_prime_power(o) {
            continue;
        }
        let cyc = closure_from_gens(g, &[x]);
        let key = cyc.indices();
        if seen.insert(key) {
            out.push((cyc, x));
        }
    }
    // deterministic: by (order, least generator index)
    out.sort_by_key(|(b, x)| (b.count(), *x));
    out
}

fn is_prime_power(mut n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true // n itself prime
}

/// Every subgroup of g, as bit sets (deterministic discovery order).
pub fn all_subgroups(g: &impl FinGroup) -> Vec<BitSet> {
    let n = g.order();
    let zs = zuppos(g);
    let mut trivial = BitSet::new(n);
    trivial.insert(g.id());
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut list: Vec<(BitSet, Vec<usize>)> = Vec::new();
    seen.insert(trivial.clone());
    list.push((trivial, Vec::new()));
    let mut qpos = 0;
    while qpos < list.len() {
        let (helems, hgens) = list[qpos].clone();
        qpos += 1;
        for (zset, zgen) in &zs {
            if zset.is_subset(&helems) {
                continue;
            }
            let mut gens = hgens.clone();
            gens.push(*zgen);
            let closure = closure_from_gens(g, &gens);
            if seen.insert(closure.clone()) {
                list.push((closure, gens));
            }
        }
    }
    list.into_iter().map(|(b, _)| b).collect()
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Representative: the member with the lexicographically least sorted
    /// element-index list.
    pub rep: Subgroup,
    /// All members of the class, sorted by element-index list.
    pub members: Vec<BitSet>,
    pub order: usize,
}

impl SubgroupClass {
    pub fn is_normal(&self) -> bool {
        self.members.len() == 1
    }
}

/// Ordered subgroup conjugacy-class catalog. Classes are sorted by
/// (order, sorted element-order multiset, least member index list); the first
/// class is the trivial subgroup, the last is the whole group.
pub struct SubgroupCatalog {
    pub classes: Vec<SubgroupClass>,
    class_by_subgroup: HashMap<BitSet, usize>,
}

impl SubgroupCatalog {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of an arbitrary subgroup (any member of any class).
    pub fn class_of(&self, elems: &BitSet) -> Option<usize> {
        self.class_by_subgroup.get(elems).copied()
    }

    /// Index of the class containing the whole group.
    pub fn full_class(&self) -> usize {
        self.classes.len() - 1
    }
}

/// Build the ordered catalog of subgroup conjugacy classes.
pub fn subgroup_catalog(g: &impl FinGroup) -> SubgroupCatalog {
    let subs = all_subgroups(g);
    catalog_from_subgroups(g, subs)
}

fn catalog_from_subgroups(g: &impl FinGroup, subs: Vec<BitSet>) -> SubgroupCatalog {
    let mut assigned: HashMap<BitSet, usize> = HashMap::new();
    let mut classes_raw: Vec<Vec<BitSet>> = Vec::new();
    let full: Vec<usize> = (0..g.order()).collect();
    let full_set = BitSet::from_indices(g.order(), &full);
    let conjugators = small_generating_set(g, &full_set);
    for s in subs {
        if assigned.contains_key(&s) {
            continue;
        }
        let ci = classes_raw.len();
        let mut members = vec![s.clone()];
        assigned.insert(s.clone(), ci);
        let mut qpos = 0;
        while qpos < members.len() {
            let cur = members[qpos].clone();
            qpos += 1;
            for &c in &conjugators {
                let conj = conjugate_subgroup(g, &cur, c);
                if !assigned.contains_key(&conj) {
                    assigned.insert(conj.clone(), ci);
                    members.push(conj);
                }
            }
        }
        members.sort_by_key(|b| b.indices());
        classes_raw.push(members);
    }

    // canonical class order
    let mut keyed: Vec<(usize, Vec<usize>, Vec<usize>, usize)> = classes_raw
        .iter()
        .enumerate()
        .map(|(i, members)| {
            let rep = &members[0];
            let mut orders: Vec<usize> =
                rep.iter().map(|x| g.element_order(x)).collect();
            orders.sort_unstable();
            (rep.count(), orders, rep.indices(), i)
        })
        .collect();
    keyed.sort();

    let mut classes = Vec::with_capacity(keyed.len());
    let mut class_by_subgroup = HashMap::new();
    for (new_idx, (order, _, _, old_idx)) in keyed.iter().enumerate() {
        let members = classes_raw[*old_idx].clone();
        for m in &members {
            class_by_subgroup.insert(m.clone(), new_idx);
        }
        let rep = Subgroup::from_bitset(g, members[0].clone());
        classes.push(SubgroupClass { rep, members, order: *order });
    }
    SubgroupCatalog { classes, class_by_subgroup }
}

/// A Sylow p-subgroup, as a subgroup of g.
pub fn sylow(g: &impl FinGroup, catalog: &SubgroupCatalog, p: usize) -> Subgroup {
    let mut pv = 1usize;
    while g.order() % (pv * p) == 0 {
        pv *= p;
    }
    for cl in &catalog.classes {
        if cl.order == pv {
            return cl.rep.clone();
        }
    }
    unreachable!("Sylow subgroup of order {pv} must exist");
}

/// The centre, as a subgroup.
pub fn centre(g: &impl FinGroup) -> Subgroup {
    let n = g.order();
    let mut elems = BitSet::new(n);
    for x in 0..n {
        if (0..n).all(|y| g.mul(x, y) == g.mul(y, x)) {
            elems.insert(x);
        }
    }
    Subgroup::from_bitset(g, elems)
}

/// All normal subgroups (classes of size one), ascending by order.
pub fn normal_subgroups(catalog: &SubgroupCatalog) -> Vec<Subgroup> {
    catalog
        .classes
        .iter()
        .filter(|c| c.is_normal())
        .map(|c| c.rep.clone())
        .collect()
}

/// Largest normal subgroup N such that subgroups with equal product set H*N
/// always carry equal labels. `labels[k]` labels catalog class k; the check
/// runs over every subgroup in every class.
pub fn maximal_invariant_normal_subgroup<L: PartialEq>(
    g: &impl FinGroup,
    catalog: &SubgroupCatalog,
    labels: &[L],
) -> Subgroup {
    assert_eq!(labels.len(), catalog.classes.len());
    let mut normals = normal_subgroups(catalog);
    normals.sort_by_key(|n| std::cmp::Reverse(n.order));
    for n in normals {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut ok = true;
        'outer: for (ci, cl) in catalog.classes.iter().enumerate() {
            for h in &cl.members {
                // product set H*N
                let mut prod = BitSet::new(g.order());
                for hx in h.iter() {
                    for nx in n.elems.iter() {
                        prod.insert(g.mul(hx, nx));
                    }
                }
                let key = prod.indices();
                match seen.get(&key) {
                    None => {
                        seen.insert(key, ci);
                    }
                    Some(&cj) => {
                        if labels[cj] != labels[ci] {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if ok {
            return n;
        }
    }
    unreachable!("the trivial subgroup always satisfies the invariance check")
}
