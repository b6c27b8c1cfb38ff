//! Tropical (co)homology of weighted fans.

mod complex;
mod duality;

pub use complex::{
    bm_homology, cohomology_dims, faces, multi_tangent, BMComplex, Coefficients, Face, HomologySummary,
    MultiTangent,
};
pub use duality::{
    check_thm, check_tpd, fundamental_class, ses_dim_check, FundamentalClass, PdEntry, PdReport, SesReport,
    ThmReport,
};
