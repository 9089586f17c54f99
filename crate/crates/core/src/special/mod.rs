//! Solvers outside the hyperbolic setting: ball enumeration for
//! nilpotent groups and power-edge saturation for `BS(n, ±n)`.

pub mod bs;
pub mod nilpotent;

pub use bs::{bs_ssp, BsLabel, BsParams, PowerEdgeGraph};
pub use nilpotent::{build_ball, free_abelian_oracle, heisenberg_oracle, nilpotent_bsmp, nilpotent_ssp, Ball};
