//! Screening pairs of groups by matching invariant labels across all
//! subdirect products.
//!
//! A subdirect product `S ≤ G × G'` survives when every subgroup `K ≤ S`
//! projects to a pair of subgroups carrying equal labels on both sides.
//! Labels are caller-supplied, one per subgroup class, so any invariant that
//! is constant on conjugacy classes of subgroups can drive the screen.

use matgroups::{
    pair_group_table, project_left, project_right, subgroup_catalog, FinGroup,
    MatGroup, PairGroup, SubdirectProduct, SubgroupCatalog,
};

/// Result of screening one subdirect product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScreenOutcome {
    Survives,
    /// A subgroup of the product whose two projections carry different
    /// labels; the field is the list of element pairs generating it.
    Mismatch { pairs: Vec<(u32, u32)> },
}

fn labels_match<L: PartialEq>(
    g: &MatGroup,
    cat_g: &SubgroupCatalog,
    labels_g: &[L],
    gp: &MatGroup,
    cat_gp: &SubgroupCatalog,
    labels_gp: &[L],
    selected: &[(u32, u32)],
) -> bool {
    let lh = project_left(g, selected);
    let rh = project_right(gp, selected);
    let lc = cat_g
        .class_of(&lh.elems)
        .expect("projection is a subgroup of the left factor");
    let rc = cat_gp
        .class_of(&rh.elems)
        .expect("projection is a subgroup of the right factor");
    labels_g[lc] == labels_gp[rc]
}

/// Screen a single subdirect product against the labelled subgroup catalogs
/// of its two factors.
pub fn screen_product<L: PartialEq>(
    g: &MatGroup,
    cat_g: &SubgroupCatalog,
    labels_g: &[L],
    gp: &MatGroup,
    cat_gp: &SubgroupCatalog,
    labels_gp: &[L],
    product: &SubdirectProduct,
) -> ScreenOutcome {
    assert_eq!(labels_g.len(), cat_g.classes.len(), "one label per class");
    assert_eq!(labels_gp.len(), cat_gp.classes.len(), "one label per class");

    // Cheap first pass: cyclic subgroups, one per element of the product.
    let pg = PairGroup::new(g, gp, product.pairs.clone());
    for i in 0..pg.order() {
        let mut selected = Vec::new();
        let mut x = i;
        loop {
            selected.push(product.pairs[x]);
            if x == pg.id() {
                break;
            }
            x = pg.mul(x, i);
        }
        if !labels_match(g, cat_g, labels_g, gp, cat_gp, labels_gp, &selected) {
            return ScreenOutcome::Mismatch {
                pairs: vec![product.pairs[i]],
            };
        }
    }

    // Full pass: every subgroup class of the product.
    let table = pair_group_table(&pg);
    let classes = subgroup_catalog(&table);
    for class in &classes.classes {
        let selected: Vec<(u32, u32)> = class
            .rep
            .elems
            .iter()
            .map(|i| product.pairs[i])
            .collect();
        if !labels_match(g, cat_g, labels_g, gp, cat_gp, labels_gp, &selected) {
            let gens: Vec<(u32, u32)> = class
                .rep
                .gens
                .iter()
                .map(|&i| product.pairs[i])
                .collect();
            return ScreenOutcome::Mismatch { pairs: gens };
        }
    }
    ScreenOutcome::Survives
}

/// All subdirect products of `G × G'` whose subgroups carry matching labels
/// on both sides, as indices into `products`.
pub fn wsec_screen<L: PartialEq>(
    g: &MatGroup,
    cat_g: &SubgroupCatalog,
    labels_g: &[L],
    gp: &MatGroup,
    cat_gp: &SubgroupCatalog,
    labels_gp: &[L],
    products: &[SubdirectProduct],
) -> Vec<usize> {
    products
        .iter()
        .enumerate()
        .filter(|(_, product)| {
            screen_product(g, cat_g, labels_g, gp, cat_gp, labels_gp, product)
                == ScreenOutcome::Survives
        })
        .map(|(i, _)| i)
        .collect()
}
