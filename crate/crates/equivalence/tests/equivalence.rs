use std::sync::Arc;

use equivalence::{
    affine_det_probe, assemble_side, aut_glnz, block_search, certificate_space,
    choose_solution, combo_search, coordinate_components, lattice_iso_search,
    merge_blocks, modp_obstruction, possibility_basis, prime_divisors,
    row_blocks, side_split, small_degree_test, stably_equivalent_decision,
    verify_certificate, verify_intertwiner, wsec_screen, z_membership,
    AutOptions, BlockStrategy, DecisionOptions, IsoStatus, ModpVerdict,
    PossibilityOptions, PossibilityStatus, ProbeMode, ProbeResult,
    SearchBudget, StableDecision,
};
use exact_linalg::{det, is_unimodular, solve_left, IntMat};
use lattices::{
    hom_basis, lattice_of_group, permutation_lattice, trivial_lattice, twist,
    zero_lattice, GLattice,
};
use matgroups::{
    automorphisms, goursat_subdirect_products, inner_count, subgroup_catalog,
    FinGroup, MatGroup,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn m(rows: &[Vec<i64>]) -> IntMat {
    IntMat::from_i64_rows(rows)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn c1() -> Arc<MatGroup> {
    Arc::new(MatGroup::close(&[IntMat::identity(1)], 4).unwrap())
}

fn c2() -> Arc<MatGroup> {
    Arc::new(MatGroup::close(&[m(&[vec![-1]])], 16).unwrap())
}

fn s3() -> Arc<MatGroup> {
    Arc::new(
        MatGroup::close(
            &[m(&[vec![0, -1], vec![1, -1]]), m(&[vec![0, 1], vec![1, 0]])],
            16,
        )
        .unwrap(),
    )
}

fn i47() -> Arc<MatGroup> {
    let l1 = m(&[
        vec![0, 1, 0, -1],
        vec![0, 0, -1, 1],
        vec![-1, 0, 0, 1],
        vec![0, 1, 0, 0],
    ]);
    let l4 = m(&[
        vec![0, 0, -1, 0],
        vec![-1, 0, 0, 0],
        vec![1, 1, 1, -2],
        vec![0, 1, 0, -1],
    ]);
    Arc::new(MatGroup::close(&[l1, l4], 2304).unwrap())
}

fn q8c3_pair() -> (Arc<MatGroup>, GLattice, GLattice) {
    let l1 = m(&[
        vec![0, 1, 0, -1],
        vec![0, 0, -1, 1],
        vec![-1, 0, 0, 1],
        vec![0, 1, 0, 0],
    ]);
    let l2 = m(&[
        vec![0, 0, -1, 0],
        vec![-1, -1, -1, 2],
        vec![1, 0, 0, 0],
        vec![0, -1, -1, 1],
    ]);
    let l2t = m(&[
        vec![0, 1, 0, 0],
        vec![-1, 0, 0, 0],
        vec![-1, -1, -1, 2],
        vec![-1, 0, -1, 1],
    ]);
    let g = Arc::new(MatGroup::close(&[l1.clone(), l2.clone()], 2304).unwrap());
    let lat = GLattice::new(g.clone(), &[l1.clone(), l2], "M").unwrap();
    let lat_t = GLattice::new(g.clone(), &[l1, l2t], "Mt").unwrap();
    (g, lat, lat_t)
}

fn conjugate(lat: &GLattice, b: &IntMat) -> GLattice {
    let binv = b.unimodular_inverse().expect("unimodular");
    let images: Vec<IntMat> = lat
        .group()
        .generator_indices()
        .iter()
        .map(|&gi| binv.mul(lat.act(gi)).mul(b))
        .collect();
    GLattice::new(lat.group().clone(), &images, "conj").unwrap()
}

// ---------------------------------------------------------------- screening

#[test]
fn unit_vector_solves_when_sides_agree() {
    let g = s3();
    let cat = subgroup_catalog(g.as_ref());
    let lat = lattice_of_group(&g);
    let pb = possibility_basis(&cat, &lat, &lat, &PossibilityOptions::default());
    assert_eq!(pb.status, PossibilityStatus::Viable);
    let mut unit = vec![0i64; pb.width()];
    *unit.last_mut().unwrap() = 1;
    assert!(pb.contains(&big(&unit)));
}

#[test]
fn unit_vector_solves_with_h2_columns() {
    let g = c2();
    let cat = subgroup_catalog(g.as_ref());
    let lat = lattice_of_group(&g);
    let opts = PossibilityOptions { use_h2: true, h2_order_cap: 8 };
    let pb = possibility_basis(&cat, &lat, &lat, &opts);
    assert_eq!(pb.status, PossibilityStatus::Viable);
    let mut unit = vec![0i64; pb.width()];
    *unit.last_mut().unwrap() = 1;
    assert!(pb.contains(&big(&unit)));
}

#[test]
fn sign_lattice_is_not_stably_permutation() {
    // Rank-one sign action of the order-two group: the trace equation at the
    // nontrivial element and the Tate count at the full subgroup force a
    // zero kernel, worked out by hand.
    let g = c2();
    let cat = subgroup_catalog(g.as_ref());
    let sign = GLattice::new(g.clone(), &[m(&[vec![-1]])], "sign").unwrap();
    let zero = zero_lattice(&g);
    let pb = possibility_basis(&cat, &sign, &zero, &PossibilityOptions::default());
    assert_eq!(pb.status, PossibilityStatus::Impossible);

    let report =
        stably_equivalent_decision(&cat, &sign, &zero, &DecisionOptions::default());
    assert!(report.decision.is_not_equivalent());
}

#[test]
fn sign_summand_blocks_stable_permutation_shape() {
    let g = c2();
    let cat = subgroup_catalog(g.as_ref());
    let sign = GLattice::new(g.clone(), &[m(&[vec![-1]])], "sign").unwrap();
    let reg = permutation_lattice(&g, &cat, 0).lattice;
    let both = lattices::direct_sum(&[&sign, &reg]).unwrap();
    let zero = zero_lattice(&g);
    let pb = possibility_basis(&cat, &both, &zero, &PossibilityOptions::default());
    assert_eq!(pb.status, PossibilityStatus::Impossible);
}

#[test]
fn choose_solution_reaches_unit_b() {
    let basis = m(&[vec![1, 0, 2], vec![0, 1, 3]]);
    let v = choose_solution(&basis, &[1, 1, 4]).expect("unit b reachable");
    assert!(v.last().unwrap().is_one());
    let as_row = IntMat::from_rows(vec![v.clone()]);
    assert!(solve_left(&basis, &as_row).is_some(), "stays in the row lattice");
}

#[test]
fn choose_solution_none_without_unit_b() {
    let basis = m(&[vec![0, 0, 2]]);
    assert!(choose_solution(&basis, &[1, 1, 4]).is_none());
}

#[test]
fn side_split_follows_signs() {
    let (lhs, rhs) = side_split(&big(&[0, 0, 1]));
    assert!(lhs.perm_classes.is_empty() && rhs.perm_classes.is_empty());
    assert_eq!((lhs.left_copies, lhs.right_copies), (1, 0));
    assert_eq!((rhs.left_copies, rhs.right_copies), (0, 1));

    let (lhs, rhs) = side_split(&big(&[1, 1, 1, 0, -1, 0, 0, 0, -1]));
    assert_eq!(lhs.perm_classes, vec![(0, 1), (1, 1), (2, 1)]);
    assert_eq!((lhs.left_copies, lhs.right_copies), (0, 1));
    assert_eq!(rhs.perm_classes, vec![(4, 1)]);
    assert_eq!((rhs.left_copies, rhs.right_copies), (1, 0));

    let (lhs, rhs) = side_split(&big(&[0, 0, 0]));
    assert!(lhs.is_empty() && rhs.is_empty());

    let (lhs, rhs) = side_split(&big(&[2, -3, 0, 1]));
    assert_eq!(lhs.perm_classes, vec![(0, 2)]);
    assert_eq!(rhs.perm_classes, vec![(1, 3)]);
    assert_eq!((lhs.left_copies, rhs.right_copies), (1, 1));
}

// ----------------------------------------------------------- side assembly

#[test]
fn assemble_side_sums_permutation_ranks() {
    let g = c2();
    let cat = subgroup_catalog(g.as_ref());
    let zero = zero_lattice(&g);
    // catalog of the order-two group: trivial subgroup first, full group second
    assert_eq!(cat.classes.len(), 2);
    assert_eq!(cat.classes[0].order, 1);
    let reg = permutation_lattice(&g, &cat, 0).lattice;
    assert_eq!(reg.rank(), 2);
    let desc = equivalence::SideDescriptor {
        perm_classes: vec![(0, 1), (1, 2)],
        left_copies: 1,
        right_copies: 0,
    };
    let side = assemble_side(&g, &cat, &desc, &reg, &zero);
    assert_eq!(side.rank(), 2 + 2 * 1 + 2);

    let empty = equivalence::SideDescriptor {
        perm_classes: vec![],
        left_copies: 0,
        right_copies: 0,
    };
    assert_eq!(assemble_side(&g, &cat, &empty, &reg, &zero).rank(), 0);
}

#[test]
fn certificate_space_of_equal_trivial_sides() {
    let g = c1();
    let cat = subgroup_catalog(g.as_ref());
    let t = trivial_lattice(&g, 1);
    let space = certificate_space(&g, &cat, &big(&[0, 1]), &t, &t);
    assert_eq!(space.dim(), 1);
    assert_eq!(space.lhs.rank(), 1);
    assert_eq!(space.rhs.rank(), 1);
    assert_eq!(space.basis[0], IntMat::identity(1));
}

#[test]
fn coordinate_components_split_direct_sums() {
    let g = c2();
    let cat = subgroup_catalog(g.as_ref());
    let sign = GLattice::new(g.clone(), &[m(&[vec![-1]])], "sign").unwrap();
    let reg = permutation_lattice(&g, &cat, 0).lattice;
    let both = lattices::direct_sum(&[&sign, &reg]).unwrap();
    let comps = coordinate_components(&both);
    assert_eq!(comps, vec![vec![0], vec![1, 2]]);
    assert!(coordinate_components(&zero_lattice(&g)).is_empty());
}

#[test]
fn verify_intertwiner_checks_shape_determinant_and_action() {
    let g = c2();
    let cat = subgroup_catalog(g.as_ref());
    let reg = permutation_lattice(&g, &cat, 0).lattice;
    let triv2 = trivial_lattice(&g, 2);
    // identity fails: the regular action is not the trivial action
    assert!(!verify_intertwiner(&reg, &triv2, &IntMat::identity(2)));
    // the swap matrix commutes with the regular action
    let swap = m(&[vec![0, 1], vec![1, 0]]);
    assert!(verify_intertwiner(&reg, &reg, &swap));
    // non-square and non-unimodular are rejected
    assert!(!verify_intertwiner(&reg, &reg, &m(&[vec![1, 0]])));
    assert!(!verify_intertwiner(&reg, &reg, &m(&[vec![2, 0], vec![0, 1]])));
}

#[test]
fn verify_certificate_assembles_the_claimed_sides() {
    let g = c2();
    let cat = subgroup_catalog(g.as_ref());
    let reg = permutation_lattice(&g, &cat, 0).lattice;
    let zero = zero_lattice(&g);
    // v = (-1, 0, 1): left side is the input lattice, right side one copy of
    // the regular permutation lattice
    let v = big(&[-1, 0, 1]);
    let swap = m(&[vec![0, 1], vec![1, 0]]);
    assert!(verify_certificate(&g, &cat, &v, &reg, &zero, &swap));
    assert!(verify_certificate(&g, &cat, &v, &reg, &zero, &IntMat::identity(2)));
    let bad = m(&[vec![1, 1], vec![0, 1]]);
    assert!(!verify_certificate(&g, &cat, &v, &reg, &zero, &bad));
}

// ------------------------------------------------------------- row blocks

#[test]
fn row_blocks_group_by_support() {
    let rb = row_blocks(&[IntMat::identity(2)]);
    assert_eq!(rb.row_blocks, vec![vec![0, 1]]);
    assert_eq!(rb.bp_blocks, vec![vec![0]]);

    let e00 = m(&[vec![1, 0], vec![0, 0]]);
    let e11 = m(&[vec![0, 0], vec![0, 1]]);
    let rb = row_blocks(&[e00.clone(), e11.clone()]);
    assert_eq!(rb.row_blocks, vec![vec![0], vec![1]]);
    assert_eq!(rb.bp_blocks, vec![vec![0], vec![1]]);

    let rb = row_blocks(&[]);
    assert!(rb.row_blocks.is_empty() && rb.bp_blocks.is_empty());
}

// ------------------------------------------------------------------ search

#[test]
fn block_search_restricts_and_keeps_primitive_rows() {
    let e00 = m(&[vec![1, 0], vec![0, 0]]);
    let e01 = m(&[vec![0, 1], vec![0, 0]]);
    let found = block_search(
        &[e00.clone(), e01.clone()],
        &[0],
        &BlockStrategy::Exhaustive { max_support: 1, coeffs: vec![1] },
    );
    assert_eq!(found.len(), 2);
    for cand in &found {
        assert_eq!(cand.rows(), 1);
        assert_eq!(cand.cols(), 2);
    }

    // support two adds the sum of the two generators
    let found = block_search(
        &[e00, e01],
        &[0],
        &BlockStrategy::Exhaustive { max_support: 2, coeffs: vec![1] },
    );
    assert_eq!(found.len(), 3);
}

#[test]
fn merge_blocks_stacks_compatible_pieces() {
    let top = vec![m(&[vec![1, 0]])];
    let bottom = vec![m(&[vec![0, 1]])];
    let merged = merge_blocks(&top, &bottom, 2);
    assert_eq!(merged.len(), 1);
    assert!(is_unimodular(&merged[0]));

    let parallel = vec![m(&[vec![2, 0]])];
    assert!(merge_blocks(&top, &parallel, 2).is_empty());
}

#[test]
fn affine_det_probe_modes() {
    let id = IntMat::identity(2);
    let e00 = m(&[vec![1, 0], vec![0, 0]]);
    let e11 = m(&[vec![0, 0], vec![0, 1]]);

    match affine_det_probe(&id, &[IntMat::zero(2, 2)], None, ProbeMode::Linear) {
        ProbeResult::Vector(v) => assert_eq!(v, vec![BigInt::one()]),
        _ => panic!("linear probe returns a vector"),
    }
    match affine_det_probe(
        &id,
        &[e00.clone()],
        Some(&[e11.clone()]),
        ProbeMode::Bilinear,
    ) {
        ProbeResult::Matrix(mm) => assert_eq!(mm.at(0, 0), &BigInt::from(4)),
        _ => panic!("bilinear probe returns a matrix"),
    }
    match affine_det_probe(&id, &[e00], Some(&[e11]), ProbeMode::Quadratic) {
        ProbeResult::Matrix(mm) => assert!(mm.at(0, 0).is_zero()),
        _ => panic!("quadratic probe returns a matrix"),
    }
}

#[test]
fn combo_search_finds_singletons_and_sums() {
    let swap = m(&[vec![0, 1], vec![1, 0]]);
    let w = combo_search(
        &[IntMat::identity(2), swap],
        &[-1, 0, 1],
        7,
        &SearchBudget::default(),
    )
    .expect("identity is in the basis");
    assert!(is_unimodular(&w.p));
    assert_eq!(w.strategy, "singleton");

    let e00 = m(&[vec![1, 0], vec![0, 0]]);
    let e11 = m(&[vec![0, 0], vec![0, 1]]);
    let w = combo_search(&[e00, e11], &[-1, 0, 1], 7, &SearchBudget::default())
        .expect("sum of the two pieces is unimodular");
    assert!(is_unimodular(&w.p));

    assert!(combo_search(&[], &[-1, 0, 1], 7, &SearchBudget::default()).is_none());
}

// ------------------------------------------------------------------- mod p

#[test]
fn modp_obstruction_rank_pins() {
    let e00 = m(&[vec![1, 0], vec![0, 0]]);
    let e11 = m(&[vec![0, 0], vec![0, 1]]);
    assert_eq!(
        modp_obstruction(&[IntMat::identity(2)], 2, 2),
        ModpVerdict::Open { rank: 2 }
    );
    assert_eq!(
        modp_obstruction(&[e00.clone()], 2, 2),
        ModpVerdict::Blocked { rank: 1 }
    );
    // stacking more matrices never lowers the rank
    assert_eq!(
        modp_obstruction(&[e00, e11], 2, 2),
        ModpVerdict::Open { rank: 2 }
    );
    assert_eq!(modp_obstruction(&[], 3, 2), ModpVerdict::Blocked { rank: 0 });
    assert_eq!(modp_obstruction(&[], 3, 0), ModpVerdict::Open { rank: 0 });
}

#[test]
fn prime_divisor_pins() {
    assert_eq!(prime_divisors(1), Vec::<u64>::new());
    assert_eq!(prime_divisors(48), vec![2, 3]);
    assert_eq!(prime_divisors(24), vec![2, 3]);
    assert_eq!(prime_divisors(97), vec![97]);
}

// ------------------------------------------------------------ end to end

#[test]
fn regular_lattice_is_stably_trivial_with_certificate() {
    let g = c2();
    let cat = subgroup_catalog(g.as_ref());
    let reg = permutation_lattice(&g, &cat, 0).lattice;
    let zero = zero_lattice(&g);
    let report =
        stably_equivalent_decision(&cat, &reg, &zero, &DecisionOptions::default());
    let StableDecision::Equivalent(cert) = report.decision else {
        panic!("regular lattice is a permutation lattice");
    };
    assert!(is_unimodular(&cert.p));
    assert!(cert.vector.last().unwrap().is_one());
}

#[test]
fn equal_actions_short_circuit_to_identity() {
    let g = s3();
    let cat = subgroup_catalog(g.as_ref());
    let lat = lattice_of_group(&g);
    let report =
        stably_equivalent_decision(&cat, &lat, &lat, &DecisionOptions::default());
    let StableDecision::Equivalent(cert) = report.decision else {
        panic!("a lattice is stably equivalent to itself");
    };
    assert_eq!(cert.strategy, "identity");
    assert_eq!(cert.p, IntMat::identity(lat.rank()));
}

#[test]
fn conjugate_lattices_get_a_certificate() {
    let g = s3();
    let cat = subgroup_catalog(g.as_ref());
    let std2 = GLattice::new(
        g.clone(),
        &[m(&[vec![0, -1], vec![1, -1]]), m(&[vec![0, 1], vec![1, 0]])],
        "std",
    )
    .unwrap();
    let u = m(&[vec![1, 1], vec![0, 1]]);
    let conj = conjugate(&std2, &u);
    assert!(!conj.same_action(&std2));
    let report =
        stably_equivalent_decision(&cat, &conj, &std2, &DecisionOptions::default());
    let StableDecision::Equivalent(cert) = report.decision else {
        panic!("conjugate lattices are isomorphic");
    };
    assert!(is_unimodular(&cert.p));
}

#[test]
fn twisted_q8c3_lattice_is_blocked_mod_two() {
    let (g, lat, lat_t) = q8c3_pair();
    assert_eq!(g.order(), 24);
    assert!(!lat.same_action(&lat_t));
    let hom = hom_basis(&lat, &lat_t);
    assert_eq!(hom.len(), 2);
    assert_eq!(
        modp_obstruction(&hom, 2, 4),
        ModpVerdict::Blocked { rank: 2 }
    );
    match lattice_iso_search(&lat, &lat_t, &AutOptions::default()) {
        IsoStatus::Refuted { p: 2, rank: 2 } => {}
        other => panic!("expected a mod-2 refutation, got {other:?}"),
    }
}

// --------------------------------------------------------------- screening

#[test]
fn pair_screen_on_order_two_group() {
    let g = c2();
    let cat = subgroup_catalog(g.as_ref());
    let products = goursat_subdirect_products(g.as_ref(), g.as_ref());
    assert_eq!(products.len(), 2, "diagonal and full product");

    // indistinguishable labels keep everything
    let flat = vec![0usize; cat.classes.len()];
    let survivors = wsec_screen(&g, &cat, &flat, &g, &cat, &flat, &products);
    assert_eq!(survivors.len(), 2);

    // order labels kill the full product: it contains a subgroup projecting
    // onto the whole left factor and the trivial right subgroup
    let by_order: Vec<usize> = cat.classes.iter().map(|c| c.order).collect();
    let survivors =
        wsec_screen(&g, &cat, &by_order, &g, &cat, &by_order, &products);
    assert_eq!(survivors.len(), 1);
    assert_eq!(products[survivors[0]].order(), 2, "only the diagonal");

    // a full-group label mismatch kills every product
    let other = vec![by_order[0], by_order[1] + 10];
    let survivors =
        wsec_screen(&g, &cat, &by_order, &g, &cat, &other, &products);
    assert!(survivors.is_empty());
}

// ----------------------------------------------------- automorphism twists

#[test]
fn inner_twists_carry_action_matrix_witnesses() {
    let g = s3();
    let auts = automorphisms(g.as_ref(), 64).unwrap();
    assert_eq!(auts.len(), 6);
    assert_eq!(inner_count(&auts), 6);
    let lat = lattice_of_group(&g);
    let statuses = aut_glnz(&lat, &auts, &AutOptions::default());
    assert!(statuses.iter().all(|s| s.is_member()));
}

#[test]
fn twisting_by_found_members_verifies() {
    let g = s3();
    let auts = automorphisms(g.as_ref(), 64).unwrap();
    let std2 = GLattice::new(
        g.clone(),
        &[m(&[vec![0, -1], vec![1, -1]]), m(&[vec![0, 1], vec![1, 0]])],
        "std",
    )
    .unwrap();
    for (sigma, status) in auts.iter().zip(aut_glnz(&std2, &auts, &AutOptions::default())) {
        let IsoStatus::Member { witness } = status else {
            panic!("every twist of the reflection lattice is realizable");
        };
        assert!(verify_intertwiner(&std2, &twist(&std2, &sigma.perm), &witness));
    }
}

#[test]
fn distinct_class_orders_make_every_twist_label_preserving() {
    let g = i47();
    assert_eq!(g.order(), 24);
    let cat = subgroup_catalog(g.as_ref());
    assert_eq!(cat.classes.len(), 8);
    let mut orders: Vec<usize> = cat.classes.iter().map(|c| c.order).collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![1, 2, 3, 4, 6, 8, 12, 24]);

    let auts = automorphisms(g.as_ref(), 4096).unwrap();
    assert_eq!(auts.len(), 24);
    assert_eq!(inner_count(&auts), 6);

    let labels: Vec<usize> = (0..cat.classes.len()).collect();
    let z = z_membership(&g, &cat, &auts, &labels);
    assert_eq!(z.iter().filter(|&&b| b).count(), 24);
    assert_eq!(small_degree_test(&g, &cat, &auts, &labels), vec![1]);
}
