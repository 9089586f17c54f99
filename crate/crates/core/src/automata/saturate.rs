//! Relator completion and the completion/folding loop.

use super::fold::fold_in_place;
use super::{EdgeTag, Label, Price, PricedAutomaton};
use crate::error::{Error, Result};
use crate::word::Word;

/// Adds, at every state, a loop spelling each relator through fresh
/// states. Loop edges cost nothing. `relators` should already be
/// symmetrized.
pub fn r_completion(g: &PricedAutomaton, relators: &[Word]) -> Result<PricedAutomaton> {
    let mut h = g.clone();
    complete_in_place(&mut h, relators)?;
    Ok(h)
}

fn complete_in_place(g: &mut PricedAutomaton, relators: &[Word]) -> Result<()> {
    if let Some(i) = relators.iter().position(Word::is_empty) {
        return Err(Error::EmptyRelator(i));
    }
    let width = relators.iter().filter_map(Word::max_generator).max().map_or(0, |m| m + 1);
    g.widen_alphabet(width);
    let original = g.state_count();
    for s in 0..original {
        for r in relators {
            let loop_id = g.register_loop(s, r);
            let n = r.len();
            let mut cur = s;
            for (pos, l) in r.iter().enumerate() {
                let next = if pos + 1 == n { s } else { g.add_state() };
                g.add_edge(
                    cur,
                    Label::letter(l),
                    next,
                    Price::ZERO,
                    EdgeTag::Relator { loop_id, pos: pos as u32 },
                );
                cur = next;
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturationMode {
    /// Exactly `ceil(c0 + c1·log₂ max(l, 2))` completion rounds (capped).
    Fixed,
    /// Keep completing until the ε-edge appears and the required depth is
    /// reached, or a cap is hit.
    Adaptive,
}

#[derive(Clone, Debug)]
pub struct SaturationParams {
    pub c0: f64,
    pub c1: f64,
    pub mode: SaturationMode,
    pub max_rounds: u32,
    /// A completion depth the caller knows to be sufficient for the
    /// presentation at hand.
    pub proven_depth: Option<u32>,
    /// Completion stops before the state count would pass this.
    pub max_states: u32,
    /// Folding adds no edges beyond this many.
    pub max_edges: usize,
    /// Fold after every completion round instead of once at the end.
    pub interleave_fold: bool,
}

impl Default for SaturationParams {
    fn default() -> Self {
        SaturationParams {
            c0: 1.0,
            c1: 2.0,
            mode: SaturationMode::Adaptive,
            max_rounds: 32,
            proven_depth: None,
            max_states: 200_000,
            max_edges: 2_000_000,
            interleave_fold: true,
        }
    }
}

impl SaturationParams {
    pub fn fixed(rounds: u32) -> Self {
        SaturationParams { c0: rounds as f64, c1: 0.0, mode: SaturationMode::Fixed, ..Self::default() }
    }

    /// `ceil(c0 + c1·log₂ max(l, 2))`.
    pub fn depth_for(&self, l: usize) -> u32 {
        let x = (l.max(2) as f64).log2();
        (self.c0 + self.c1 * x).ceil().max(0.0) as u32
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.c0 >= 0.0 && self.c1 >= 0.0 && self.c0.is_finite() && self.c1.is_finite();
        if !ok {
            return Err(Error::Precondition("c0 and c1 must be finite and non-negative".into()));
        }
        if self.mode == SaturationMode::Adaptive && self.max_rounds == 0 {
            return Err(Error::Precondition("adaptive mode needs max_rounds >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SaturationStats {
    /// Completion rounds applied.
    pub completion_rounds: u32,
    /// Folding passes run (one for a free group).
    pub fold_passes: u32,
    /// Completion rounds applied when the ε-edge first appeared.
    pub found_after: Option<u32>,
    /// Completion stopped early, or folding was cut short, because of
    /// the state or edge budget.
    pub budget_hit: bool,
    pub states: u32,
    pub edges: usize,
}

/// Completes and folds `g`. `l` is the total input length driving the
/// fixed depth; `required_depth` is a completion depth known to suffice
/// (a free group needs 0). Adaptive mode stops as soon as that depth is
/// reached, or, without one, once the ε-edge appears.
pub fn saturate(
    g: &PricedAutomaton,
    relators: &[Word],
    params: &SaturationParams,
    l: usize,
    required_depth: Option<u32>,
) -> Result<(PricedAutomaton, SaturationStats)> {
    params.validate()?;
    let mut h = g.clone();
    let mut stats = SaturationStats::default();
    let growth: u64 = 1 + relators.iter().map(|r| r.len() as u64 - 1).sum::<u64>();
    let required = required_depth.or(params.proven_depth);
    let target_rounds = match params.mode {
        SaturationMode::Fixed => params.depth_for(l).min(params.max_rounds),
        SaturationMode::Adaptive => params.max_rounds,
    };
    let fold = |h: &mut PricedAutomaton, stats: &mut SaturationStats| {
        stats.fold_passes += 1;
        if !fold_in_place(h, params.max_edges) {
            stats.budget_hit = true;
        }
    };
    if relators.is_empty() {
        fold(&mut h, &mut stats);
        stats.fold_passes = 1;
        if h.epsilon_answer().is_some() {
            stats.found_after = Some(0);
        }
        stats.states = h.state_count();
        stats.edges = h.edge_count();
        return Ok((h, stats));
    }

    let fold_each = params.interleave_fold;
    let note = |h: &PricedAutomaton, stats: &mut SaturationStats| {
        if stats.found_after.is_none() && h.epsilon_answer().is_some() {
            stats.found_after = Some(stats.completion_rounds);
        }
    };
    if fold_each {
        fold(&mut h, &mut stats);
        note(&h, &mut stats);
    }
    loop {
        let rounds = stats.completion_rounds;
        if rounds >= target_rounds {
            break;
        }
        if params.mode == SaturationMode::Adaptive && fold_each {
            let deep_enough = required.is_some_and(|d| rounds >= d);
            if deep_enough || (required.is_none() && stats.found_after.is_some()) {
                break;
            }
        }
        if stats.budget_hit
            || h.state_count() as u64 * growth > params.max_states as u64
            || h.edge_count() >= params.max_edges
        {
            stats.budget_hit = true;
            break;
        }
        complete_in_place(&mut h, relators)?;
        stats.completion_rounds += 1;
        if fold_each {
            fold(&mut h, &mut stats);
            note(&h, &mut stats);
        }
    }
    if !fold_each {
        fold(&mut h, &mut stats);
        note(&h, &mut stats);
    }
    stats.states = h.state_count();
    stats.edges = h.edge_count();
    Ok((h, stats))
}
