//! Graded free modules, presentations, minimal free resolutions, Betti
//! tables, Ext modules and local duality.

pub mod ext;
pub mod free;
pub mod hyper;
pub mod presentation;
pub mod resolution;

pub use ext::{
    deficiency_module, ext_from_resolution, ext_module, ext_modules, graded_dual, hom_into_ring,
    reverse_table, sheaf_cohomology_module, DeficiencyModule,
};
pub use free::{determinant, FreeGradedModule, GradedMap};
pub use presentation::{
    annihilator, cokernel_of_map, fibered_sum, hf_exact, hom_degree, is_homomorphism, kernel_generators,
    ideal_module_generators, kernel_of_free_map, kernel_of_map, presentation_of_ideal,
    prune_unit_entries, prune_units, prune_units_tracked, TrackedPresentation,
    subquotient, ModulePresentation,
};
pub use resolution::{free_resolution, pd_and_depth, BettiTable, FreeResolution};
pub use hyper::{
    dual_generators, dual_over, ext_over, minimal_columns_mod, modulus_columns, rank_over, relations_over,
    resolution_over, syzygies_over,
};
