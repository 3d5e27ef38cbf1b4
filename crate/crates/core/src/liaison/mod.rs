//! Subscheme records, linkage, Rao modules, N-type resolutions and the
//! constructions built from them.

pub mod link;
pub mod ntype;
pub mod rao;
pub mod record;

pub use link::{
    ci_link_in_x, elementary_biliaison, link, random_element, Biliaison, LinkKind,
    LinkageCertificate,
};
pub use rao::{rao_module, rao_shift_equivalent, table_shift, RaoModuleRecord};
pub use record::SubschemeRecord;
pub use ntype::{
    curve_from_rao_module, extract_ideal, link_transform_ntype, n_type_resolution, syzygy_dual,
    CurveFromRao, ExtractedIdeal, LinkTransform, NTypeResolution,
};
