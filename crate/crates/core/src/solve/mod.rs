//! Solvers for free and hyperbolic groups built on the automata layer.

mod hyperbolic;
mod report;

pub use hyperbolic::{
    solve_bkp, solve_bsmp, solve_free_smop, solve_ikp, solve_kop, solve_kop1, solve_kop2, solve_kp,
    solve_ssop, solve_ssop1, solve_ssop2, solve_ssp, KpBoundConfig,
};

pub use report::{Decision, Stats, SolverReport, Witness};
