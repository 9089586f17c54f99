use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::automata::SaturationStats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Unknown => "unknown",
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// One exponent per input word.
    Exponents(Vec<i64>),
    /// Indices of the chosen input words, in product order.
    Factors(Vec<usize>),
}

impl Witness {
    pub fn values(&self) -> Vec<i64> {
        match self {
            Witness::Exponents(v) => v.clone(),
            Witness::Factors(v) => v.iter().map(|&i| i as i64).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub states: u64,
    pub edges: u64,
    /// Folding passes over the largest graph built.
    pub rounds: u32,
    /// Completion rounds after which the deciding ε-edge appeared.
    pub rounds_needed: Option<u32>,
    pub millis: u64,
}

impl Stats {
    pub(crate) fn absorb(&mut self, s: &SaturationStats) {
        self.states = self.states.max(s.states as u64);
        self.edges = self.edges.max(s.edges as u64);
        self.rounds = self.rounds.max(s.fold_passes);
        if let Some(r) = s.found_after {
            self.rounds_needed = Some(self.rounds_needed.map_or(r, |x| x.max(r)));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverReport {
    pub decision: Decision,
    pub witness: Option<Witness>,
    /// The optimized quantity: number (or total weight) of factors, or
    /// the distance `N*` for the distance-minimizing problems.
    pub cost: Option<BigUint>,
    pub stats: Stats,
    /// Exponent bound `M` used for knapsack-type problems.
    pub bound_used: Option<u64>,
    /// The witness was re-checked independently of the solver.
    pub verified: bool,
    /// Why the answer is not definite, or what a "no" is relative to.
    pub note: Option<String>,
}

impl SolverReport {
    pub fn new(decision: Decision) -> Self {
        SolverReport {
            decision,
            witness: None,
            cost: None,
            stats: Stats::default(),
            bound_used: None,
            verified: false,
            note: None,
        }
    }

    pub fn no() -> Self {
        Self::new(Decision::No)
    }

    pub fn unknown(note: impl Into<String>) -> Self {
        SolverReport { note: Some(note.into()), ..Self::new(Decision::Unknown) }
    }

    pub fn yes(witness: Witness, cost: BigUint, verified: bool) -> Self {
        SolverReport {
            witness: Some(witness),
            cost: Some(cost),
            verified,
            ..Self::new(Decision::Yes)
        }
    }

    pub fn exponents(&self) -> Option<&[i64]> {
        match &self.witness {
            Some(Witness::Exponents(v)) => Some(v),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[usize]> {
        match &self.witness {
            Some(Witness::Factors(v)) => Some(v),
            _ => None,
        }
    }

    pub fn cost_u64(&self) -> Option<u64> {
        self.cost.as_ref().and_then(|c| c.to_u64())
    }
}
