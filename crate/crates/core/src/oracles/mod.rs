//! Ground truth for testing: exact word-problem deciders and exhaustive
//! enumerators.

pub mod brute;
pub mod wp;

pub use brute::{
    brute_bkp, brute_bsmp, brute_free_distance, brute_free_segment, brute_ikp, brute_kp, brute_ssp,
    BruteReport, Caps, DistanceOptimum, ElementCheck, Outcome, ProductCheck, WordCheck,
};
pub use wp::{
    Abelianization, BaumslagSolitar, Bs12Affine, FreeAbelian, FreeGroup, FreeProductCyclic,
    GroupOracle, Heisenberg, WpOracle,
};
