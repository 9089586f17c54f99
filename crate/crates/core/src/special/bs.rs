//! Subset sum in `BS(n, ±n) = ⟨a, t | t⁻¹ aⁿ t = a^{±n}⟩` by saturating
//! a graph whose edges may carry arbitrary powers of `a`.
//!
//! The instance graph only has forward edges, so every derived edge
//! spans an interval of states. Edges are derived interval by interval,
//! shortest first, with three rules:
//!
//! * `a^s · a^c → a^{s+c}`, where `a⁰` plays the role of ε;
//! * `a⁰ · t^e → t^e` and `t^e · a⁰ → t^e`;
//! * `t^e · a^c · t^{−e} → a^{±c}` when `n | c` (`c = 0` allowed, with an
//!   empty middle).
//!
//! Every sub-interval is complete before it is used, so each edge gets
//! its minimal price.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::oracles::wp::{BaumslagSolitar, WpOracle};
use crate::solve::{SolverReport, Witness};
use crate::word::{Letter, Word};

/// Generator index of `a`.
pub const A: u32 = 0;
/// Generator index of `t`.
pub const T: u32 = 1;

/// `BS(n, sign·n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BsParams {
    pub n: u32,
    pub sign: i8,
}

impl BsParams {
    pub fn new(n: u32, sign: i8) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Precondition("sign must be +1 or -1".into()));
        }
        Ok(BsParams { n, sign })
    }

    pub fn oracle(&self) -> BaumslagSolitar {
        BaumslagSolitar::new(self.n as i64, self.sign as i64 * self.n as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BsLabel {
    /// `a^c`; `a⁰` is the empty word.
    A(i64),
    /// `t` or `t⁻¹`.
    T(i8),
}

impl BsLabel {
    fn of(l: Letter) -> BsLabel {
        match l.generator() {
            A => BsLabel::A(l.sign() as i64),
            _ => BsLabel::T(l.sign()),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Derivation {
    /// An edge of the instance graph; `Some(i)` on the last edge of `w_i`.
    Base(Option<u32>),
    /// Two edges meeting at `mid`.
    Pair { mid: usize, left: BsLabel, right: BsLabel },
    /// `t^e` to `k1`, `a^c` from `k1` to `k2` (nothing when equal), `t^{−e}`.
    Pinch { k1: usize, k2: usize, e: i8, c: i64 },
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    price: u64,
    how: Derivation,
}

/// The saturated instance graph. States are numbered along the chain;
/// the initial state is 0 and the final state is the last one.
#[derive(Clone, Debug)]
pub struct PowerEdgeGraph {
    params: BsParams,
    states: usize,
    /// `edges[i][j - i - 1]` holds the edges from `i` to `j > i`.
    edges: Vec<Vec<HashMap<BsLabel, Entry>>>,
    /// Largest `|c|` allowed: the number of `a`-letters in the instance.
    exponent_cap: i64,
}

impl PowerEdgeGraph {
    /// The subset-sum chain: for each `w_i` an `a⁰` skip edge and a path
    /// spelling `w_i` (price 1 on its last edge), then a path for `w⁻¹`.
    pub fn build(params: BsParams, gens: &[Word], target: &Word) -> Self {
        let mut base: Vec<(usize, BsLabel, usize, u64, Option<u32>)> = Vec::new();
        let mut cur = 0;
        let mut states = 1;
        for (i, w) in gens.iter().enumerate() {
            let next = states + w.len().saturating_sub(1);
            states = next + 1;
            base.push((cur, BsLabel::A(0), next, 0, None));
            let mut at = cur;
            for (p, l) in w.iter().enumerate() {
                let last = p + 1 == w.len();
                let to = if last { next } else { states - w.len() + p };
                let (price, tag) = if last { (1, Some(i as u32)) } else { (0, None) };
                base.push((at, BsLabel::of(l), to, price, tag));
                at = to;
            }
            if w.is_empty() {
                base.push((cur, BsLabel::A(0), next, 1, Some(i as u32)));
            }
            cur = next;
        }
        for l in target.inverse().iter() {
            base.push((cur, BsLabel::of(l), states, 0, None));
            cur = states;
            states += 1;
        }
        let exponent_cap = gens
            .iter()
            .chain(std::iter::once(target))
            .flat_map(|w| w.iter())
            .filter(|l| l.generator() == A)
            .count() as i64;
        let mut g = PowerEdgeGraph {
            params,
            states,
            edges: (0..states).map(|i| vec![HashMap::new(); states - i - 1]).collect(),
            exponent_cap,
        };
        for (s, label, t, price, tag) in base {
            g.offer(s, label, t, price, Derivation::Base(tag));
        }
        g
    }

    fn offer(&mut self, s: usize, label: BsLabel, t: usize, price: u64, how: Derivation) {
        if let BsLabel::A(c) = label {
            assert!(c.abs() <= self.exponent_cap, "a-exponent {c} exceeds the input's a-letter count");
        }
        let slot = &mut self.edges[s][t - s - 1];
        match slot.get(&label) {
            Some(e) if e.price <= price => {}
            _ => {
                slot.insert(label, Entry { price, how });
            }
        }
    }

    fn between(&self, s: usize, t: usize) -> &HashMap<BsLabel, Entry> {
        &self.edges[s][t - s - 1]
    }

    pub fn params(&self) -> BsParams {
        self.params
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn final_state(&self) -> usize {
        self.states - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().map(HashMap::len).sum()
    }

    /// All edges as `(source, label, target, price)`.
    pub fn edges(&self) -> Vec<(usize, BsLabel, usize, u64)> {
        let mut out = Vec::new();
        for (s, row) in self.edges.iter().enumerate() {
            for (d, slot) in row.iter().enumerate() {
                let mut labels: Vec<_> = slot.iter().collect();
                labels.sort_by_key(|(l, _)| **l);
                for (l, e) in labels {
                    out.push((s, *l, s + d + 1, e.price));
                }
            }
        }
        out
    }

    /// Derives all edges, shortest intervals first.
    pub fn saturate(&mut self) {
        let n = self.params.n as i64;
        let sign = self.params.sign as i64;
        for len in 2..self.states {
            for i in 0..self.states - len {
                let j = i + len;
                let mut found: Vec<(BsLabel, u64, Derivation)> = Vec::new();
                for mid in i + 1..j {
                    for (&left, l) in self.between(i, mid) {
                        for (&right, r) in self.between(mid, j) {
                            let label = match (left, right) {
                                (BsLabel::A(s), BsLabel::A(c)) => BsLabel::A(s + c),
                                (BsLabel::A(0), t @ BsLabel::T(_)) | (t @ BsLabel::T(_), BsLabel::A(0)) => t,
                                _ => continue,
                            };
                            found.push((label, l.price + r.price, Derivation::Pair { mid, left, right }));
                        }
                    }
                }
                for k1 in i + 1..j {
                    for e in [1i8, -1] {
                        let Some(first) = self.between(i, k1).get(&BsLabel::T(e)) else { continue };
                        for k2 in k1..j {
                            let Some(last) = self.between(k2, j).get(&BsLabel::T(-e)) else { continue };
                            let middles: Vec<(i64, u64)> = if k1 == k2 {
                                vec![(0, 0)]
                            } else {
                                self.between(k1, k2)
                                    .iter()
                                    .filter_map(|(l, m)| match l {
                                        BsLabel::A(c) if c % n == 0 => Some((*c, m.price)),
                                        _ => None,
                                    })
                                    .collect()
                            };
                            for (c, p) in middles {
                                found.push((
                                    BsLabel::A(sign * c),
                                    first.price + p + last.price,
                                    Derivation::Pinch { k1, k2, e, c },
                                ));
                            }
                        }
                    }
                }
                for (label, price, how) in found {
                    self.offer(i, label, j, price, how);
                }
            }
        }
    }

    /// The `a⁰` edge from the initial to the final state, if any, with
    /// its price.
    pub fn answer(&self) -> Option<u64> {
        if self.states == 1 {
            return Some(0);
        }
        self.between(0, self.final_state()).get(&BsLabel::A(0)).map(|e| e.price)
    }

    /// Replays the derivation of `label` on `s → t` and returns the base
    /// edges it stands for, in path order.
    fn replay(&self, s: usize, label: BsLabel, t: usize, out: &mut Vec<(BsLabel, Option<u32>)>) {
        if s == t {
            debug_assert_eq!(label, BsLabel::A(0));
            return;
        }
        let entry = self.between(s, t)[&label];
        match entry.how {
            Derivation::Base(tag) => out.push((label, tag)),
            Derivation::Pair { mid, left, right } => {
                self.replay(s, left, mid, out);
                self.replay(mid, right, t, out);
            }
            Derivation::Pinch { k1, k2, e, c } => {
                self.replay(s, BsLabel::T(e), k1, out);
                self.replay(k1, BsLabel::A(c), k2, out);
                self.replay(k2, BsLabel::T(-e), t, out);
            }
        }
    }

    /// The factor indices used by the accepting path, in order, and the
    /// word it spells.
    pub fn witness_path(&self) -> Option<(Vec<u32>, Word)> {
        self.answer()?;
        let mut base = Vec::new();
        if self.states > 1 {
            self.replay(0, BsLabel::A(0), self.final_state(), &mut base);
        }
        let mut letters = Vec::new();
        let mut factors = Vec::new();
        for (label, tag) in base {
            match label {
                BsLabel::A(0) => {}
                BsLabel::A(c) => letters.push(Letter::new(A, c.signum() as i8)),
                BsLabel::T(e) => letters.push(Letter::new(T, e)),
            }
            factors.extend(tag);
        }
        Some((factors, Word::from_letters(letters)))
    }
}

fn validate(gens: &[Word], target: &Word) -> Result<()> {
    for w in gens.iter().chain(std::iter::once(target)) {
        if let Some(g) = w.max_generator().filter(|&g| g > T) {
            return Err(Error::LetterOutOfRange { generator: g, size: 2 });
        }
    }
    Ok(())
}

/// Subset sum in `BS(n, ±n)` over the alphabet `{a, t}`; a positive
/// answer carries the fewest factors and is re-checked by Britton
/// reduction.
pub fn bs_ssp(params: BsParams, gens: &[Word], target: &Word) -> Result<SolverReport> {
    let started = Instant::now();
    validate(gens, target)?;
    let mut g = PowerEdgeGraph::build(params, gens, target);
    g.saturate();
    let mut report = match g.answer() {
        None => SolverReport::no(),
        Some(cost) => {
            let (factors, spelled) = g.witness_path().expect("answer has a derivation");
            let mut eps = vec![0i64; gens.len()];
            for &f in &factors {
                eps[f as usize] += 1;
            }
            if factors.windows(2).any(|p| p[0] >= p[1]) {
                return Err(Error::Witness("factors repeat or appear out of order".into()));
            }
            let oracle = params.oracle();
            if !oracle.is_trivial(&spelled) {
                return Err(Error::Witness("replayed path does not spell a trivial word".into()));
            }
            let mut product = Word::empty();
            for (w, &e) in gens.iter().zip(&eps) {
                if e == 1 {
                    product = product.concat(w);
                }
            }
            if !oracle.equal(&product, target) {
                return Err(Error::Witness(format!("{product} is not equal to {target}")));
            }
            SolverReport::yes(Witness::Exponents(eps), BigUint::from(cost), true)
        }
    };
    report.stats.states = g.state_count() as u64;
    report.stats.edges = g.edge_count() as u64;
    report.stats.millis = started.elapsed().as_millis() as u64;
    Ok(report)
}
