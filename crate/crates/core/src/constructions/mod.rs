//! Extremal test functions, Kakeya-set predicates, the separating example
//! sets, `mu`-slices and the size bounds derived from the maximal estimates.

mod examples;
mod extremal;
mod kakeya;
mod lower_bounds;
mod pointset;
mod reports;
mod slices;

pub use examples::{
    example_affine_not_refined, example_refined_not_affine, max_vertical_fiber,
    vertical_fiber_sizes,
};
pub use extremal::{
    anisotropic_eta, extremal_function, extremal_set, paraboloid_surface, ExtremalKind,
};
pub use kakeya::{is_affine_kakeya, is_full_refined_kakeya, KakeyaCheck};
pub use lower_bounds::{lower_bound_ratio, ExactCertificate, LowerBound, Target};
pub use pointset::PointSet;
pub use reports::{kakeya_bound_report, moment_report, SizeBoundReport};
pub use slices::{
    chart_of, mu_of, mu_parameter, omega_partition, straighten_line, straighten_point,
    straighten_set, KakeyaReport, SliceChart,
};
