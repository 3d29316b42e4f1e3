//! Matrix-group layer tests: closure determinism, table consistency,
//! subgroup catalogs, centres, Sylow subgroups, automorphisms, quotients and
//! subdirect products, pinned against the bundled degree-4 groups.

use exact_linalg::IntMat;
use matgroups::*;

fn m4(rows: [[i64; 4]; 4]) -> IntMat {
    IntMat::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// Generators of the order-24 group with cyclic Sylow-2 (C3 : C8).
fn g_i47() -> MatGroup {
    let l1 = m4([[0, 1, 0, -1], [0, 0, -1, 1], [-1, 0, 0, 1], [0, 1, 0, 0]]);
    let l4 = m4([[0, 0, -1, 0], [-1, 0, 0, 0], [1, 1, 1, -2], [0, 1, 0, -1]]);
    MatGroup::close(&[l1, l4], DEFAULT_ELEMENT_CAP).unwrap()
}

/// Generators of the order-24 group with quaternion Sylow-2 (C3 x Q8).
fn g_n4137() -> MatGroup {
    let l1 = m4([[0, 1, 0, -1], [0, 0, -1, 1], [-1, 0, 0, 1], [0, 1, 0, 0]]);
    let l2 = m4([[0, 0, -1, 0], [-1, -1, -1, 2], [1, 0, 0, 0], [0, -1, -1, 1]]);
    MatGroup::close(&[l1, l2], DEFAULT_ELEMENT_CAP).unwrap()
}

fn c2_group() -> MatGroup {
    let neg = IntMat::from_i64_rows(&[vec![-1, 0], vec![0, -1]]);
    MatGroup::close(&[neg], DEFAULT_ELEMENT_CAP).unwrap()
}

#[test]
fn close_sign_group() {
    let g = c2_group();
    assert_eq!(g.order(), 2);
    assert_eq!(g.degree(), 2);
}

#[test]
fn close_order_24_cyclic_sylow() {
    let g = g_i47();
    assert_eq!(g.order(), 24);
}

#[test]
fn close_order_24_quaternion_sylow() {
    let g = g_n4137();
    assert_eq!(g.order(), 24);
    assert_eq!(structure_name(&g), "C3 x Q8");
}

#[test]
fn close_rejects_non_unimodular() {
    let bad = IntMat::from_i64_rows(&[vec![2, 0], vec![0, 1]]);
    assert!(matches!(
        MatGroup::close(&[bad], 100),
        Err(GroupError::NonUnimodular { .. })
    ));
}

#[test]
fn close_respects_cap() {
    let g = g_i47();
    let gens: Vec<IntMat> = g
        .generator_indices()
        .iter()
        .map(|&i| g.element(i).clone())
        .collect();
    assert!(matches!(
        MatGroup::close(&gens, 10),
        Err(GroupError::CapExceeded { cap: 10 })
    ));
}

#[test]
fn canonical_order_is_generator_order_independent() {
    let l1 = m4([[0, 1, 0, -1], [0, 0, -1, 1], [-1, 0, 0, 1], [0, 1, 0, 0]]);
    let l4 = m4([[0, 0, -1, 0], [-1, 0, 0, 0], [1, 1, 1, -2], [0, 1, 0, -1]]);
    let a = MatGroup::close(&[l1.clone(), l4.clone()], 100).unwrap();
    let b = MatGroup::close(&[l4, l1], 100).unwrap();
    assert_eq!(a.elements(), b.elements());
}

#[test]
fn multiplication_table_matches_matrix_products() {
    let g = g_i47();
    for a in 0..g.order() {
        for b in 0..g.order() {
            let prod = g.element(a).mul(g.element(b));
            assert_eq!(g.index_of(&prod), Some(g.mul(a, b)));
        }
        assert_eq!(g.mul(a, g.inv(a)), g.id());
    }
}

#[test]
fn evaluate_words_reproduces_elements() {
    let g = g_n4137();
    let gen_mats: Vec<IntMat> = g
        .generator_indices()
        .iter()
        .map(|&i| g.element(i).clone())
        .collect();
    let images = g.evaluate_words(
        IntMat::identity(g.degree()),
        &gen_mats,
        |a, b| a.mul(b),
    );
    for (i, img) in images.iter().enumerate() {
        assert_eq!(img, g.element(i));
    }
}

#[test]
fn subgroup_catalog_trivial_group() {
    let g = MatGroup::trivial(3);
    let cat = subgroup_catalog(&g);
    assert_eq!(cat.len(), 1);
}

#[test]
fn subgroup_catalog_sign_group() {
    let cat = subgroup_catalog(&c2_group());
    assert_eq!(cat.len(), 2);
    assert_eq!(cat.classes[0].order, 1);
    assert_eq!(cat.classes[1].order, 2);
}

#[test]
fn subgroup_catalog_order24_cyclic_sylow() {
    let g = g_i47();
    let cat = subgroup_catalog(&g);
    assert_eq!(cat.len(), 8);
    let orders: Vec<usize> = cat.classes.iter().map(|c| c.order).collect();
    assert_eq!(orders, vec![1, 2, 3, 4, 6, 8, 12, 24]);
    // every proper class is cyclic; the full group is C3 : C8
    let names: Vec<String> = cat
        .classes
        .iter()
        .map(|c| {
            let (tg, _) = subgroup_table(&g, &c.rep.elems);
            structure_name(&tg)
        })
        .collect();
    assert_eq!(
        names,
        vec!["1", "C2", "C3", "C4", "C6", "C8", "C12", "C3 : C8"]
    );
}

#[test]
fn sylow_subgroups() {
    let g = g_i47();
    let cat = subgroup_catalog(&g);
    let sy2 = sylow(&g, &cat, 2);
    assert_eq!(sy2.order, 8);
    let (t2, _) = subgroup_table(&g, &sy2.elems);
    assert_eq!(structure_name(&t2), "C8");

    let h = g_n4137();
    let cath = subgroup_catalog(&h);
    let sy2h = sylow(&h, &cath, 2);
    assert_eq!(sy2h.order, 8);
    let (t2h, _) = subgroup_table(&h, &sy2h.elems);
    assert_eq!(structure_name(&t2h), "Q8");

    let c2 = c2_group();
    let catc = subgroup_catalog(&c2);
    assert_eq!(sylow(&c2, &catc, 3).order, 1);
}

#[test]
fn centres() {
    let g = g_i47();
    let z = centre(&g);
    assert_eq!(z.order, 4);
    let (tz, _) = subgroup_table(&g, &z.elems);
    assert_eq!(structure_name(&tz), "C4");

    let h = g_n4137();
    let zh = centre(&h);
    assert_eq!(zh.order, 6);
    let (tzh, _) = subgroup_table(&h, &zh.elems);
    assert_eq!(structure_name(&tzh), "C6");

    let c2 = c2_group();
    assert_eq!(centre(&c2).order, 2);
}

#[test]
fn automorphism_groups() {
    let g = g_i47();
    let auts = automorphisms(&g, 200).unwrap();
    assert_eq!(auts.len(), 24);
    assert_eq!(inner_count(&auts), 6);

    let h = g_n4137();
    let auth = automorphisms(&h, 200).unwrap();
    assert_eq!(auth.len(), 48);

    let c2 = c2_group();
    let autc = automorphisms(&c2, 200).unwrap();
    assert_eq!(autc.len(), 1);
}

#[test]
fn automorphisms_preserve_table() {
    let g = g_i47();
    for a in automorphisms(&g, 200).unwrap() {
        for x in 0..g.order() {
            for y in 0..g.order() {
                assert_eq!(
                    a.apply(g.mul(x, y)),
                    g.mul(a.apply(x), a.apply(y))
                );
            }
        }
    }
}

#[test]
fn quotients() {
    let g = g_i47();
    let cat = subgroup_catalog(&g);
    // G/G trivial
    let full = Subgroup::full(&g);
    let q = quotient(&g, &full).unwrap();
    assert_eq!(q.order(), 1);
    // G/1 = G
    let triv = Subgroup::trivial(&g);
    let q1 = quotient(&g, &triv).unwrap();
    assert_eq!(q1.order(), 24);
    // G / Z = S3
    let z = centre(&g);
    let qz = quotient(&g, &z).unwrap();
    assert_eq!(qz.order(), 6);
    assert_eq!(structure_name(&qz), "S3");
    // non-normal subgroup rejected: C8 has three conjugates
    let c8 = cat.classes.iter().find(|c| c.order == 8).unwrap();
    assert!(c8.members.len() > 1);
    assert!(quotient(&g, &c8.rep).is_err());
}

#[test]
fn derived_subgroup_and_abelianization() {
    let g = g_i47();
    let full_bits = Subgroup::full(&g).elems;
    let der = derived_subgroup(&g, &full_bits);
    assert_eq!(der.count(), 3); // commutator subgroup C3
    let ab = abelianization(&g, &full_bits);
    assert_eq!(ab, exact_linalg::AbInv::cyclic(8));

    let h = g_n4137();
    let cath = subgroup_catalog(&h);
    let sy2 = sylow(&h, &cath, 2); // Q8
    let ab2 = abelianization(&h, &sy2.elems);
    assert_eq!(ab2, exact_linalg::AbInv::elementary(2, 2));
}

#[test]
fn goursat_klein_four_self_pair() {
    // C2 x C2 self-pair: diagonal and full product.
    let neg = IntMat::from_i64_rows(&[vec![-1]]);
    let c2 = MatGroup::close(&[neg], 10).unwrap();
    let list = goursat_subdirect_products(&c2, &c2);
    assert_eq!(list.len(), 2);
    let orders: Vec<usize> = list.iter().map(|s| s.order()).collect();
    assert_eq!(orders, vec![2, 4]);
    for s in &list {
        assert!(validate_subdirect(s, &c2, &c2));
    }
    let brute = subdirect_products_brute(&c2, &c2);
    assert_eq!(list, brute);
}

#[test]
fn goursat_matches_brute_force_s3() {
    let r = IntMat::from_i64_rows(&[vec![0, -1], vec![1, -1]]);
    let s = IntMat::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
    let s3 = MatGroup::close(&[r, s], 100).unwrap();
    let list = goursat_subdirect_products(&s3, &s3);
    let brute = subdirect_products_brute(&s3, &s3);
    assert_eq!(list, brute);
    for sd in &list {
        assert!(validate_subdirect(sd, &s3, &s3));
    }
    // graphs of the 6 automorphisms collapse to |Out| + ... : at minimum the
    // diagonal (order 6) and the full product (order 36) appear.
    assert!(list.iter().any(|s| s.order() == 6));
    assert!(list.iter().any(|s| s.order() == 36));
}

#[test]
fn graph_iso_extraction() {
    let g = g_i47();
    let list = goursat_subdirect_products(&g, &g);
    for s in &list {
        if s.order() == g.order() {
            let iso = s.graph_iso(&g, &g).expect("order-|G| subdirect is a graph");
            // must be an automorphism of g
            for x in 0..g.order() {
                for y in 0..g.order() {
                    assert_eq!(iso[g.mul(x, y)], g.mul(iso[x], iso[y]));
                }
            }
        }
        assert!(validate_subdirect(s, &g, &g));
    }
}

#[test]
fn ambient_matgroup_realizes_subdirect() {
    let neg = IntMat::from_i64_rows(&[vec![-1]]);
    let c2 = MatGroup::close(&[neg], 10).unwrap();
    let list = goursat_subdirect_products(&c2, &c2);
    for s in &list {
        let amb = s.ambient_matgroup(&c2, &c2, 100).unwrap();
        assert_eq!(amb.order(), s.order());
        assert_eq!(amb.degree(), 2);
    }
}

#[test]
fn maximal_invariant_normal_subgroup_extremes() {
    let g = g_i47();
    let cat = subgroup_catalog(&g);
    // injective labels: only the trivial subgroup works
    let inj: Vec<usize> = (0..cat.len()).collect();
    let n = maximal_invariant_normal_subgroup(&g, &cat, &inj);
    assert_eq!(n.order, 1);
    // constant labels: the whole group works
    let cst = vec![0usize; cat.len()];
    let n2 = maximal_invariant_normal_subgroup(&g, &cat, &cst);
    assert_eq!(n2.order, 24);
}

#[test]
fn abelian_invariants_from_tables() {
    // C6 as a matrix group: -1 in degree 1 times the order-3 rotation.
    let six = IntMat::from_i64_rows(&[vec![0, -1], vec![1, -1]]);
    let neg = IntMat::from_i64_rows(&[vec![-1, 0], vec![0, -1]]);
    let c6 = MatGroup::close(&[six.mul(&neg)], 100).unwrap();
    assert_eq!(c6.order(), 6);
    assert_eq!(abelian_invariants(&c6), exact_linalg::AbInv::cyclic(6));
    assert_eq!(structure_name(&c6), "C6");
}

#[test]
fn coset_partition_action_and_orbits() {
    use matgroups::{
        coset_orbit_sizes, coset_perm, fixed_coset_count, right_cosets,
    };
    let g = g_i47();
    let cat = subgroup_catalog(&g);
    // pick the order-8 cyclic Sylow 2-subgroup: index 3, so 3 cosets
    let h = sylow(&g, &cat, 2);
    assert_eq!(h.order, 8);
    let (cosets, coset_of) = right_cosets(&g, &h.elems);
    assert_eq!(cosets.len(), 3);
    for c in &cosets {
        assert_eq!(c.len(), 8);
    }
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            assert_eq!(coset_of[x], i);
        }
    }
    // identity fixes every coset; the action of any element is a permutation
    let idp = coset_perm(&g, &cosets, &coset_of, g.id());
    assert_eq!(idp, vec![0, 1, 2]);
    for e in 0..g.order() {
        let mut p = coset_perm(&g, &cosets, &coset_of, e);
        assert_eq!(fixed_coset_count(&g, &cosets, &coset_of, e),
            p.iter().enumerate().filter(|(i, &j)| *i == j).count());
        p.sort_unstable();
        assert_eq!(p, vec![0, 1, 2]);
    }
    // H itself acting on its 3 cosets: fixes its own coset; the other two
    // form orbits whose sizes divide 8 and sum to 2 -> sizes [1,1,1] or
    // [1,2]; the full group acts transitively: one orbit of size 3.
    let sizes_h = coset_orbit_sizes(&g, &cosets, &coset_of, &h.gens);
    assert_eq!(sizes_h.iter().sum::<usize>(), 3);
    assert!(sizes_h[0] == 1);
    let all: Vec<usize> = g.generator_indices().to_vec();
    assert_eq!(coset_orbit_sizes(&g, &cosets, &coset_of, &all), vec![3]);
}
