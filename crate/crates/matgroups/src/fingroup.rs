//! Abstract finite groups presented by multiplication tables, plus the
//! generic algorithms (closure, quotients, derived subgroups, isomorphism
//! backtracking) shared by matrix groups, quotient groups and subgroup
//! tables.

use crate::bitset::BitSet;
use exact_linalg::AbInv;
use std::collections::HashMap;

/// A finite group whose elements are indices `0..order()` with an explicit
/// multiplication law.
pub trait FinGroup {
    fn order(&self) -> usize;
    fn id(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.id() {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    fn conj(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), x), by)
    }

    fn is_abelian(&self) -> bool {
        let n = self.order();
        for a in 0..n {
            for b in a + 1..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }
}

/// Finite group stored as an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct TableGroup {
    order: usize,
    id: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl TableGroup {
    pub fn from_table(order: usize, id: usize, table: Vec<u32>) -> Self {
        assert_eq!(table.len(), order * order);
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] as usize == id {
                    inv[a] = b as u32;
                }
            }
        }
        assert!(inv.iter().all(|&x| x != u32::MAX), "not a group table");
        TableGroup { order, id, table, inv }
    }

    pub fn trivial() -> Self {
        TableGroup { order: 1, id: 0, table: vec![0], inv: vec![0] }
    }
}

impl FinGroup for TableGroup {
    fn order(&self) -> usize {
        self.order
    }
    fn id(&self) -> usize {
        self.id
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
}

/// Subgroup generated by `gens`, as a bit set of element indices.
pub fn closure_from_gens(g: &impl FinGroup, gens: &[usize]) -> BitSet {
    let mut seen = BitSet::new(g.order());
    seen.insert(g.id());
    let mut queue = vec![g.id()];
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    seen
}

/// Deterministic small generating set for a subgroup given as a bit set:
/// greedily extend by the lowest-index element not yet generated.
pub fn small_generating_set(g: &impl FinGroup, sub: &BitSet) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut have = BitSet::new(g.order());
    have.insert(g.id());
    loop {
        let missing = sub.iter().find(|&i| !have.contains(i));
        match missing {
            None => return gens,
            Some(i) => {
                gens.push(i);
                have = closure_from_gens(g, &gens);
            }
        }
    }
}

/// Conjugate of a subgroup bit set: { c^{-1} x c : x in sub }.
pub fn conjugate_subgroup(g: &impl FinGroup, sub: &BitSet, c: usize) -> BitSet {
    let mut out = BitSet::new(g.order());
    for x in sub.iter() {
        out.insert(g.conj(x, c));
    }
    out
}

/// Derived subgroup [S, S] of the subgroup `sub` (as a bit set): the closure
/// of all commutators of members.
pub fn derived_subgroup(g: &impl FinGroup, sub: &BitSet) -> BitSet {
    let members = sub.indices();
    let mut comms: Vec<usize> = Vec::new();
    let mut seen = BitSet::new(g.order());
    for &a in &members {
        for &b in &members {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            if seen.insert(c) {
                comms.push(c);
            }
        }
    }
    // Closure inside sub (commutators of members lie in sub when sub is a
    // subgroup, and the derived subgroup is their closure).
    closure_from_gens_within(g, &comms)
}

fn closure_from_gens_within(g: &impl FinGroup, gens: &[usize]) -> BitSet {
    closure_from_gens(g, gens)
}

/// The multiplication table of a subgroup, reindexed to `0..|sub|`, plus the
/// sorted member list mapping local -> parent indices.
pub fn subgroup_table(g: &impl FinGroup, sub: &BitSet) -> (TableGroup, Vec<usize>) {
    let members = sub.indices();
    let mut local = HashMap::new();
    for (i, &m) in members.iter().enumerate() {
        local.insert(m, i);
    }
    let n = members.len();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = g.mul(members[i], members[j]);
            table[i * n + j] = *local
                .get(&p)
                .expect("bit set not closed under multiplication")
                as u32;
        }
    }
    let id = local[&g.id()];
    (TableGroup::from_table(n, id, table), members)
}

/// Quotient of `g` by a normal subgroup (bit set). Returns the coset table
/// group, the coset index of every element, and sorted coset member lists.
pub fn quotient_table(
    g: &impl FinGroup,
    normal: &BitSet,
) -> (TableGroup, Vec<usize>, Vec<Vec<usize>>) {
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let ci = cosets.len();
        let members: Vec<usize> = normal.iter().map(|m| g.mul(m, x)).collect();
        let mut sorted = members;
        sorted.sort_unstable();
        for &m in &sorted {
            coset_of[m] = ci;
        }
        cosets.push(sorted);
    }
    let q = cosets.len();
    let mut table = vec![0u32; q * q];
    for (i, ci) in cosets.iter().enumerate() {
        for (j, cj) in cosets.iter().enumerate() {
            table[i * q + j] = coset_of[g.mul(ci[0], cj[0])] as u32;
        }
    }
    let id = coset_of[g.id()];
    (TableGroup::from_table(q, id, table), coset_of, cosets)
}

/// Invariant factors of a finite abelian group, from element-order counts:
/// for each prime p, the number of elements of order dividing p^k determines
/// the p-primary type.
pub fn abelian_invariants(g: &impl FinGroup) -> AbInv {
    assert!(g.is_abelian(), "abelian_invariants on a non-abelian group");
    let n = g.order();
    if n == 1 {
        return AbInv::trivial();
    }
    let orders: Vec<usize> = (0..n).map(|x| g.element_order(x)).collect();
    // primes dividing n
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    // For each prime: exponent-k counts give the number of cyclic factors of
    // order >= p^k; assemble per-prime factor lists.
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        let mut counts = Vec::new(); // counts[k] = #elements with order dividing p^(k+1)
        let mut pk = p;
        loop {
            let c = orders.iter().filter(|&&o| pk % o == 0).count();
            counts.push(c);
            if c == orders.iter().filter(|&&o| is_p_power(o, p)).count() {
                break;
            }
            pk *= p;
        }
        // number of factors with exponent >= k: log_p(counts[k-1]/counts[k-2])
        let mut factors: Vec<u64> = Vec::new();
        let mut prev = 1usize;
        for (k, &c) in counts.iter().enumerate() {
            let ratio = c / prev;
            let mut cnt = 0usize;
            let mut r = ratio;
            while r > 1 {
                r /= p;
                cnt += 1;
            }
            // cnt = number of cyclic factors with exponent >= k+1
            factors.push(cnt as u64);
            prev = c;
            let _ = k;
        }
        // factors[k] = number of cyclic p-factors with exponent > k
        let mut list = Vec::new();
        for (k, &cnt) in factors.iter().enumerate() {
            let next = factors.get(k + 1).copied().unwrap_or(0);
            let exactly = cnt - next;
            for _ in 0..exactly {
                list.push((p as u64).pow((k + 1) as u32));
            }
        }
        list.sort_unstable();
        per_prime.push(list);
    }
    // Combine primary parts into a divisibility chain, largest factors last.
    let max_len = per_prime.iter().map(|l| l.len()).max().unwrap_or(0);
    let mut chain: Vec<u64> = vec![1; max_len];
    for list in &per_prime {
        // align largest with largest
        for (i, &f) in list.iter().rev().enumerate() {
            let pos = max_len - 1 - i;
            chain[pos] *= f;
        }
    }
    let torsion: Vec<num_bigint::BigInt> = chain
        .into_iter()
        .filter(|&d| d > 1)
        .map(num_bigint::BigInt::from)
        .collect();
    AbInv::new(torsion, 0)
}

fn is_p_power(mut o: usize, p: usize) -> bool {
    while o > 1 {
        if o % p != 0 {
            return false;
        }
        o /= p;
    }
    true
}

/// Abelianization invariants of a subgroup (bit set) of g.
pub fn abelianization(g: &impl FinGroup, sub: &BitSet) -> AbInv {
    let (tg, members) = subgroup_table(g, sub);
    let der_parent = derived_subgroup(g, sub);
    // reindex derived subgroup into the local table
    let mut local = BitSet::new(tg.order());
    for (i, &m) in members.iter().enumerate() {
        if der_parent.contains(m) {
            local.insert(i);
        }
    }
    let (q, _, _) = quotient_table(&tg, &local);
    abelian_invariants(&q)
}

/// Element conjugacy classes: sorted class member lists, ordered by least
/// member.
pub fn element_conjugacy_classes(g: &impl FinGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let ci = classes.len();
        let mut members = Vec::new();
        let mut queue = vec![x];
        class_of[x] = ci;
        members.push(x);
        while let Some(y) = queue.pop() {
            for c in 0..n {
                let z = g.conj(y, c);
                if class_of[z] == usize::MAX {
                    class_of[z] = ci;
                    members.push(z);
                    queue.push(z);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

/// All isomorphisms source -> target as index maps, found by backtracking
/// over generator images (pruned by element order and conjugacy-class size).
/// `limit` bounds how many are collected (None = all).
pub fn isomorphisms(
    src: &impl FinGroup,
    dst: &impl FinGroup,
    limit: Option<usize>,
) -> Vec<Vec<u32>> {
    if src.order() != dst.order() {
        return Vec::new();
    }
    let n = src.order();
    if n == 1 {
        return vec![vec![0]];
    }
    // deterministic generating set of src
    let full = BitSet::from_indices(n, &(0..n).collect::<Vec<_>>());
    let gens = small_generating_set(src, &full);

    // invariants for pruning
    let src_classes = element_conjugacy_classes(src);
    let mut src_csize = vec![0usize; n];
    for cl in &src_classes {
        for &x in cl {
            src_csize[x] = cl.len();
        }
    }
    let dst_classes = element_conjugacy_classes(dst);
    let mut dst_csize = vec![0usize; n];
    for cl in &dst_classes {
        for &x in cl {
            dst_csize[x] = cl.len();
        }
    }
    let src_ord: Vec<usize> = (0..n).map(|x| src.element_order(x)).collect();
    let dst_ord: Vec<usize> = (0..n).map(|x| dst.element_order(x)).collect();

    let mut results: Vec<Vec<u32>> = Vec::new();
    let mut images: Vec<usize> = Vec::new();

    fn try_extend(
        src: &impl FinGroup,
        dst: &impl FinGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<u32>> {
        // Closure-with-images over the subgroup generated by the assigned
        // generators; None on any inconsistency.
        let n = src.order();
        let mut map = vec![u32::MAX; n];
        map[src.id()] = dst.id() as u32;
        let mut frontier = vec![src.id()];
        let mut seen = vec![src.id()];
        while let Some(x) = frontier.pop() {
            for (k, &g) in gens.iter().enumerate().take(images.len()) {
                let y = src.mul(x, g);
                let fy = dst.mul(map[x] as usize, images[k]);
                if map[y] == u32::MAX {
                    map[y] = fy as u32;
                    frontier.push(y);
                    seen.push(y);
                } else if map[y] != fy as u32 {
                    return None;
                }
            }
        }
        let _ = seen;
        Some(map)
    }

    fn dfs(
        src: &impl FinGroup,
        dst: &impl FinGroup,
        gens: &[usize],
        src_ord: &[usize],
        dst_ord: &[usize],
        src_csize: &[usize],
        dst_csize: &[usize],
        images: &mut Vec<usize>,
        results: &mut Vec<Vec<u32>>,
        limit: Option<usize>,
    ) {
        if let Some(l) = limit {
            if results.len() >= l {
                return;
            }
        }
        if images.len() == gens.len() {
            if let Some(map) = try_extend(src, dst, gens, images) {
                let n = src.order();
                if map.iter().all(|&x| x != u32::MAX) {
                    // bijectivity
                    let mut hit = vec![false; n];
                    let mut bij = true;
                    for &v in &map {
                        if hit[v as usize] {
                            bij = false;
                            break;
                        }
                        hit[v as usize] = true;
                    }
                    // full homomorphism check
                    if bij {
                        let mut ok = true;
                        'outer: for a in 0..n {
                            for b in 0..n {
                                if map[src.mul(a, b)] as usize
                                    != dst.mul(map[a] as usize, map[b] as usize)
                                {
                                    ok = false;
                                    break 'outer;
                                }
                            }
                        }
                        if ok {
                            results.push(map);
                        }
                    }
                }
            }
            return;
        }
        let g = gens[images.len()];
        for cand in 0..dst.order() {
            if dst_ord[cand] != src_ord[g] || dst_csize[cand] != src_csize[g] {
                continue;
            }
            images.push(cand);
            if try_extend(src, dst, gens, images).is_some() {
                dfs(
                    src, dst, gens, src_ord, dst_ord, src_csize, dst_csize, images,
                    results, limit,
                );
            }
            images.pop();
            if let Some(l) = limit {
                if results.len() >= l {
                    return;
                }
            }
        }
    }

    dfs(
        src,
        dst,
        &gens,
        &src_ord,
        &dst_ord,
        &src_csize,
        &dst_csize,
        &mut images,
        &mut results,
        limit,
    );
    results
}
