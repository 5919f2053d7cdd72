//! The dg Hom complex between factorizations, Hom in the homotopy
//! category, homotopy solving, Koszul Ext groups and the E₁ page.

mod classes;
mod ext;
mod slice;

pub use classes::{
    cone_exactness_probe, hom_classes, hom_dim, is_contractible, orthogonality_check, periodicity_holds,
    solve_homotopy, Certificate, ConeProbe, HomClasses, HomotopyVerdict, OrthogonalityReport,
};
pub use ext::{
    direct_hom_dims, e1_page, ext_dims, ext_koszul, ss_degeneration_check, ComponentResolutions, DegenerationReport,
    DegenerationRow, E1Table, E1Variant,
};
pub use slice::{default_cap, dg_differential, hom_slice, hom_space, natural_mode, CoordSpace, HomSlice, SliceMode};
