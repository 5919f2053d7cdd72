//! Bounded complexes of free modules, Koszul complexes with contraction
//! homotopies, foldings into factorizations, stabilization and
//! totalization of chains of factorizations.

mod complex;
mod folding;
mod koszul;
mod totalize;

pub use complex::{ChainMap, FreeComplex};
pub use folding::{
    fold, fold_cone, koszul_folding, stabilize, stabilize_sequence, summand, FoldBlocks, FoldLayout, FoldedCone,
    Folding, Side, SummandOrder,
};
pub use koszul::{koszul_complex, koszul_complex_of, koszul_data_of, koszul_homotopy, split_w, subset_basis, KoszulData};
pub use totalize::{totalize, FactChain};
