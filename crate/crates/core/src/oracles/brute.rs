//! Exhaustive enumerators for the problem definitions, used as ground
//! truth. Every search is bounded by explicit caps and reports when a cap
//! stops it from being conclusive.

use std::collections::HashMap;
use std::hash::Hash;

use super::wp::{GroupOracle, WpOracle};
use crate::solve::Witness;
use crate::word::{push_reduced, Letter, Word};

/// Multiplies products of input words on the right and recognizes the
/// target.
pub trait ProductCheck {
    type State: Clone + Eq + Hash;
    fn start(&self) -> Self::State;
    fn extend(&self, s: &mut Self::State, w: &Word);
    fn hits(&self, s: &Self::State) -> bool;
}

/// Compares canonical group elements.
pub struct ElementCheck<'a, G: GroupOracle> {
    oracle: &'a G,
    target: G::Element,
}

impl<'a, G: GroupOracle> ElementCheck<'a, G> {
    pub fn new(oracle: &'a G, target: &Word) -> Self {
        ElementCheck { oracle, target: oracle.evaluate(target) }
    }
}

impl<G: GroupOracle> ProductCheck for ElementCheck<'_, G> {
    type State = G::Element;
    fn start(&self) -> G::Element {
        self.oracle.identity()
    }
    fn extend(&self, s: &mut G::Element, w: &Word) {
        self.oracle.multiply_word(s, w);
    }
    fn hits(&self, s: &G::Element) -> bool {
        *s == self.target
    }
}

/// Keeps products as freely reduced words and asks a word-problem oracle
/// whether `product · target⁻¹` is trivial.
pub struct WordCheck<'a, O: WpOracle + ?Sized> {
    wp: &'a O,
    target_inverse: Word,
}

impl<'a, O: WpOracle + ?Sized> WordCheck<'a, O> {
    pub fn new(wp: &'a O, target: &Word) -> Self {
        WordCheck { wp, target_inverse: target.inverse() }
    }
}

impl<O: WpOracle + ?Sized> ProductCheck for WordCheck<'_, O> {
    type State = Vec<Letter>;
    fn start(&self) -> Vec<Letter> {
        Vec::new()
    }
    fn extend(&self, s: &mut Vec<Letter>, w: &Word) {
        for l in w.iter() {
            push_reduced(s, l);
        }
    }
    fn hits(&self, s: &Vec<Letter>) -> bool {
        let w = Word::from_letters(s.clone()).concat(&self.target_inverse);
        self.wp.is_trivial(&w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest exponent tried for knapsack-type problems.
    pub max_exp: u64,
    /// Largest product length for length-bounded searches.
    pub max_len: usize,
    /// Largest number of leaves or states a search may visit.
    pub max_nodes: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_exp: 8, max_len: 8, max_nodes: 50_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    /// The whole solution space was searched.
    No,
    /// No solution with exponents up to the cap; larger ones were not tried.
    NoWithinCap,
    /// The search space exceeds `max_nodes`; nothing was decided.
    CapExceeded,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::NoWithinCap => "no_within_cap",
            Outcome::CapExceeded => "cap_exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteReport {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    /// Minimal number of factors (sum of absolute exponents).
    pub cost: Option<u64>,
    pub explored: u64,
}

impl BruteReport {
    pub fn is_yes(&self) -> bool {
        self.outcome == Outcome::Yes
    }

    fn capped() -> Self {
        BruteReport { outcome: Outcome::CapExceeded, witness: None, cost: None, explored: 0 }
    }
}

struct ExponentSearch<'a, C: ProductCheck> {
    check: &'a C,
    gens: &'a [Word],
    inverses: Vec<Word>,
    lo: i64,
    hi: i64,
    current: Vec<i64>,
    best: Option<(u64, Vec<i64>)>,
    explored: u64,
}

impl<C: ProductCheck> ExponentSearch<'_, C> {
    fn run(&mut self, i: usize, state: &C::State, cost: u64) {
        if self.best.as_ref().is_some_and(|(b, _)| cost >= *b) {
            return;
        }
        if i == self.gens.len() {
            self.explored += 1;
            if self.check.hits(state) {
                self.best = Some((cost, self.current.clone()));
            }
            return;
        }
        let mut up = state.clone();
        for e in 0..=self.hi {
            if e > 0 {
                self.check.extend(&mut up, &self.gens[i]);
            }
            self.current[i] = e;
            self.run(i + 1, &up, cost + e as u64);
        }
        let mut down = state.clone();
        for e in 1..=-self.lo {
            self.check.extend(&mut down, &self.inverses[i]);
            self.current[i] = -e;
            self.run(i + 1, &down, cost + e as u64);
        }
        self.current[i] = 0;
    }
}

/// Minimal `Σ|ε_i|` over `ε_i ∈ [lo, hi]`; ties go to the first vector in
/// lexicographic order of `0, 1, …, hi, -1, …, lo`.
fn search_exponents<C: ProductCheck>(
    check: &C,
    gens: &[Word],
    lo: i64,
    hi: i64,
    caps: &Caps,
    exhaustive: bool,
) -> BruteReport {
    let width = (hi - lo + 1) as f64;
    if width.powi(gens.len() as i32) > caps.max_nodes as f64 {
        return BruteReport::capped();
    }
    let mut s = ExponentSearch {
        check,
        gens,
        inverses: gens.iter().map(Word::inverse).collect(),
        lo,
        hi,
        current: vec![0; gens.len()],
        best: None,
        explored: 0,
    };
    s.run(0, &check.start(), 0);
    match s.best {
        Some((cost, v)) => BruteReport {
            outcome: Outcome::Yes,
            witness: Some(Witness::Exponents(v)),
            cost: Some(cost),
            explored: s.explored,
        },
        None => BruteReport {
            outcome: if exhaustive { Outcome::No } else { Outcome::NoWithinCap },
            witness: None,
            cost: None,
            explored: s.explored,
        },
    }
}

/// Subset sum with minimal `Σε_i`.
pub fn brute_ssp<C: ProductCheck>(check: &C, gens: &[Word], caps: &Caps) -> BruteReport {
    search_exponents(check, gens, 0, 1, caps, true)
}

/// Bounded knapsack, `0 ≤ ε_i ≤ m`, minimal `Σε_i`.
pub fn brute_bkp<C: ProductCheck>(check: &C, gens: &[Word], m: u64, caps: &Caps) -> BruteReport {
    search_exponents(check, gens, 0, m as i64, caps, true)
}

/// Knapsack with exponents up to `caps.max_exp`; a negative answer is
/// only relative to the cap.
pub fn brute_kp<C: ProductCheck>(check: &C, gens: &[Word], caps: &Caps) -> BruteReport {
    search_exponents(check, gens, 0, caps.max_exp as i64, caps, false)
}

/// Integer knapsack with `|ε_i| ≤ caps.max_exp`, minimal `Σ|ε_i|`.
pub fn brute_ikp<C: ProductCheck>(check: &C, gens: &[Word], caps: &Caps) -> BruteReport {
    let c = caps.max_exp as i64;
    search_exponents(check, gens, -c, c, caps, false)
}

/// Bounded submonoid membership: shortest product of at most `m` input
/// words equal to the target, by breadth-first search over distinct
/// states.
pub fn brute_bsmp<C: ProductCheck>(check: &C, gens: &[Word], m: usize, caps: &Caps) -> BruteReport {
    let start = check.start();
    let mut nodes: Vec<(C::State, usize, usize)> = vec![(start.clone(), usize::MAX, usize::MAX)];
    let mut seen: HashMap<C::State, ()> = HashMap::new();
    seen.insert(start, ());
    let mut level = 0..1;
    let mut depth = 0;
    loop {
        for idx in level.clone() {
            if check.hits(&nodes[idx].0) {
                let mut factors = Vec::new();
                let mut at = idx;
                while nodes[at].1 != usize::MAX {
                    factors.push(nodes[at].2);
                    at = nodes[at].1;
                }
                factors.reverse();
                return BruteReport {
                    outcome: Outcome::Yes,
                    cost: Some(factors.len() as u64),
                    witness: Some(Witness::Factors(factors)),
                    explored: nodes.len() as u64,
                };
            }
        }
        if depth == m || level.is_empty() {
            return BruteReport {
                outcome: Outcome::No,
                witness: None,
                cost: None,
                explored: nodes.len() as u64,
            };
        }
        let next_start = nodes.len();
        for idx in level.clone() {
            for (gi, w) in gens.iter().enumerate() {
                let mut s = nodes[idx].0.clone();
                check.extend(&mut s, w);
                if seen.insert(s.clone(), ()).is_none() {
                    nodes.push((s, idx, gi));
                    if nodes.len() as u64 > caps.max_nodes {
                        return BruteReport::capped();
                    }
                }
            }
        }
        level = next_start..nodes.len();
        depth += 1;
    }
}

/// Best exponent vector for the free-group distance problems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceOptimum {
    pub distance: usize,
    pub exponents: Vec<i64>,
    pub factor_count: u64,
}

fn free_distance_search(
    gens: &[Word],
    target: &Word,
    max_exp: u64,
    on_segment: bool,
) -> Option<DistanceOptimum> {
    let target = target.free_reduce();
    let mut best: Option<DistanceOptimum> = None;
    let k = gens.len();
    let mut exps = vec![0i64; k];
    let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
    // odometer over [0, max_exp]^k with prefix products kept on a stack
    fn rebuild(stack: &mut Vec<Vec<Letter>>, gens: &[Word], exps: &[i64], from: usize) {
        stack.truncate(from + 1);
        for i in from..gens.len() {
            let mut p = stack[i].clone();
            for _ in 0..exps[i] {
                for l in gens[i].iter() {
                    push_reduced(&mut p, l);
                }
            }
            stack.push(p);
        }
    }
    rebuild(&mut stack, gens, &exps, 0);
    loop {
        let product = &stack[k];
        let candidate = if on_segment {
            let is_prefix = product.len() <= target.len() && target.letters()[..product.len()] == product[..];
            is_prefix.then(|| target.len() - product.len())
        } else {
            let mut d: Vec<Letter> = product.iter().map(|l| l.inverse()).rev().collect();
            for l in target.iter() {
                push_reduced(&mut d, l);
            }
            Some(d.len())
        };
        if let Some(distance) = candidate {
            let count: u64 = exps.iter().map(|&e| e as u64).sum();
            let better = best.as_ref().map_or(true, |b| {
                (distance, count) < (b.distance, b.factor_count)
            });
            if better {
                best = Some(DistanceOptimum { distance, exponents: exps.clone(), factor_count: count });
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if (exps[i] as u64) < max_exp {
                exps[i] += 1;
                for e in &mut exps[i + 1..] {
                    *e = 0;
                }
                rebuild(&mut stack, gens, &exps, i);
                break;
            }
        }
    }
}

/// Free group: minimal distance from `target` to `w_1^{ε_1}…w_k^{ε_k}`
/// over `0 ≤ ε_i ≤ max_exp`, then minimal `Σε_i`.
pub fn brute_free_distance(gens: &[Word], target: &Word, max_exp: u64) -> DistanceOptimum {
    free_distance_search(gens, target, max_exp, false).expect("the zero vector is always a candidate")
}

/// Free group: as [`brute_free_distance`] restricted to products lying on
/// the geodesic from 1 to `target`, i.e. reduced prefixes of it.
pub fn brute_free_segment(gens: &[Word], target: &Word, max_exp: u64) -> DistanceOptimum {
    free_distance_search(gens, target, max_exp, true).expect("the empty prefix is always a candidate")
}
