//! Adapter handing the resolution construction to the twist-classification
//! machinery, which needs flabby-class representatives but must not depend
//! on this crate.

use equivalence::FlabbyOracle;
use lattices::GLattice;
use matgroups::SubgroupCatalog;

use crate::resolution::{flabby_resolution, FlabbyOptions};

/// [`FlabbyOracle`] backed by [`flabby_resolution`].
pub struct ResolutionOracle<'a> {
    pub catalog: &'a SubgroupCatalog,
    pub opts: FlabbyOptions,
}

impl FlabbyOracle for ResolutionOracle<'_> {
    fn flabby_of(&self, m: &GLattice) -> GLattice {
        flabby_resolution(m, self.catalog, &self.opts).f
    }
}
