//! Instance graphs for the subset-sum family.

use super::{EdgeTag, Label, Price, PricedAutomaton, StateId};
use crate::word::{Alphabet, Word};

/// How often each input word may be used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    /// Subset-sum blocks: each word at most once.
    Once,
    /// Knapsack blocks: a loop per word, any number of times.
    Unbounded,
}

/// Block `i` offers `w_i` (price 1 on its last edge) once or repeatedly,
/// followed by a free ε-step to the next block. Returns the state after
/// the last block.
fn blocks(g: &mut PricedAutomaton, start: StateId, gens: &[Word], mult: Multiplicity) -> StateId {
    let mut cur = start;
    for (i, w) in gens.iter().enumerate() {
        let next = g.add_state();
        g.add_edge(cur, Label::EPSILON, next, Price::ZERO, EdgeTag::Plain);
        let end = match mult {
            Multiplicity::Once => next,
            Multiplicity::Unbounded => cur,
        };
        g.add_path(cur, w, Some(end), Price::ONE, EdgeTag::Factor(i as u32));
        cur = next;
    }
    cur
}

/// Blocks `k-1, …, 0` offering `w_i⁻¹`, as hung off the target line.
fn inverse_blocks(
    g: &mut PricedAutomaton,
    start: StateId,
    gens: &[Word],
    mult: Multiplicity,
) -> StateId {
    let mut cur = start;
    for (i, w) in gens.iter().enumerate().rev() {
        let next = g.add_state();
        g.add_edge(cur, Label::EPSILON, next, Price::ZERO, EdgeTag::Plain);
        let end = match mult {
            Multiplicity::Once => next,
            Multiplicity::Unbounded => cur,
        };
        // the factor tag sits on the last edge of w_i⁻¹ in path order
        g.add_path(cur, &w.inverse(), Some(end), Price::ONE, EdgeTag::Factor(i as u32));
        cur = next;
    }
    cur
}

fn tail(g: &mut PricedAutomaton, from: StateId, target: &Word) -> StateId {
    if target.is_empty() {
        return from;
    }
    g.add_path(from, &target.inverse(), None, Price::ZERO, EdgeTag::Plain)
}

fn sized(gens: &[Word], target: &Word, alphabet: Option<&Alphabet>) -> u32 {
    let needed = gens
        .iter()
        .chain(std::iter::once(target))
        .filter_map(Word::max_generator)
        .max()
        .map_or(1, |g| g + 1);
    alphabet.map_or(needed, |a| a.size().max(needed))
}

/// The subset-sum graph: an accepted label reads `w_1^{ε_1}…w_k^{ε_k}·w⁻¹`
/// with `ε ∈ {0,1}^k`, priced `Σε_i`.
pub fn build_ssp_graph(gens: &[Word], target: &Word) -> PricedAutomaton {
    build_sum_graph(gens, target, Multiplicity::Once)
}

/// The knapsack graph: as [`build_ssp_graph`] with a loop per word, so
/// any `ε ∈ ℕ^k` is accepted.
pub fn build_knapsack_graph(gens: &[Word], target: &Word) -> PricedAutomaton {
    build_sum_graph(gens, target, Multiplicity::Unbounded)
}

fn build_sum_graph(gens: &[Word], target: &Word, mult: Multiplicity) -> PricedAutomaton {
    let mut g = PricedAutomaton::new(sized(gens, target, None));
    let end = blocks(&mut g, 0, gens, mult);
    let omega = tail(&mut g, end, target);
    g.set_finals(vec![omega]);
    g
}

/// `m` blocks, each a choice of `ε` or one `w_i` (price 1), then `w⁻¹`.
pub fn build_bsmp_graph(gens: &[Word], target: &Word, m: usize) -> PricedAutomaton {
    let mut g = PricedAutomaton::new(sized(gens, target, None));
    let mut cur = 0;
    for _ in 0..m {
        let next = g.add_state();
        g.add_edge(cur, Label::EPSILON, next, Price::ZERO, EdgeTag::Plain);
        for (i, w) in gens.iter().enumerate() {
            g.add_path(cur, w, Some(next), Price::ONE, EdgeTag::Factor(i as u32));
        }
        cur = next;
    }
    let omega = tail(&mut g, cur, target);
    g.set_finals(vec![omega]);
    g
}

/// The factor blocks followed by `radius` layers of `ε` or one free
/// letter, then `w⁻¹`: accepts `w_1^{ε_1}…w_k^{ε_k}·u·w⁻¹` with `|u| ≤ radius`.
pub fn build_kop1_graph(
    gens: &[Word],
    target: &Word,
    radius: usize,
    alphabet: &Alphabet,
    mult: Multiplicity,
) -> PricedAutomaton {
    let mut g = PricedAutomaton::new(sized(gens, target, Some(alphabet)));
    let mut cur = blocks(&mut g, 0, gens, mult);
    for _ in 0..radius {
        let next = g.add_state();
        g.add_edge(cur, Label::EPSILON, next, Price::ZERO, EdgeTag::Plain);
        for l in alphabet.letters() {
            g.add_edge(cur, Label::letter(l), next, Price::ZERO, EdgeTag::BallLetter);
        }
        cur = next;
    }
    let omega = tail(&mut g, cur, target);
    g.set_finals(vec![omega]);
    g
}

/// Hub `α` with a loop spelling each `w_i` (price 1) and a tail `w⁻¹`.
pub fn build_free_smp_graph(gens: &[Word], target: &Word) -> PricedAutomaton {
    let mut g = PricedAutomaton::new(sized(gens, target, None));
    for (i, w) in gens.iter().enumerate() {
        g.add_path(0, w, Some(0), Price::ONE, EdgeTag::Factor(i as u32));
    }
    let omega = tail(&mut g, 0, target);
    g.set_finals(vec![omega]);
    g
}

/// For free groups: the line graph of `reduced(w)`, whose last
/// `radius + 1` vertices each carry blocks reading
/// `w_k^{-ε_k}…w_1^{-ε_1}` into their own final state. Final `j` sits
/// after the prefix of length `first_prefix + j`, which the second
/// component returns.
pub fn build_kop2_graph(
    gens: &[Word],
    target: &Word,
    radius: usize,
    mult: Multiplicity,
) -> (PricedAutomaton, usize) {
    let line = target.free_reduce();
    let mut g = PricedAutomaton::new(sized(gens, target, None));
    let mut vertices = vec![0];
    for l in line.iter() {
        let next = g.add_state();
        g.add_edge(*vertices.last().unwrap(), Label::letter(l), next, Price::ZERO, EdgeTag::Plain);
        vertices.push(next);
    }
    let first_prefix = line.len().saturating_sub(radius);
    let mut finals = Vec::new();
    for &v in &vertices[first_prefix..] {
        let start = g.add_state();
        g.add_edge(v, Label::EPSILON, start, Price::ZERO, EdgeTag::Plain);
        finals.push(inverse_blocks(&mut g, start, gens, mult));
    }
    g.set_finals(finals);
    (g, first_prefix)
}
