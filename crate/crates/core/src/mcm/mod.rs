//! Matrix factorizations, ACM module checks, extensions and the Serre
//! correspondence on a hypersurface.

pub mod mf;
pub mod module;
pub mod serre;

pub use mf::{knoerrer_double_cover, knoerrer_xy, mf_complete, mf_verify, MatrixFactorization, MfReport};
pub use module::{acm_module_check, extension_module, AcmOutcome, ExtensionClass, ExtensionOutcome, MCMModuleRecord};
pub use serre::{ext1_cocycles, rank1_acm_to_surface, structure_module, universal_extension_map, serre_sheaf_from_ag, serre_subscheme_from_section, SerreSheaf};
