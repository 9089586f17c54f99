//! Priced automata over `X ∪ X⁻¹ ∪ {ε}`: construction, relator
//! completion, ε-folding saturation and derivation replay.

mod build;
mod fold;
mod price;
mod saturate;
mod witness;

use std::io::{self, Write};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

pub use build::{
    build_bsmp_graph, build_free_smp_graph, build_knapsack_graph, build_kop1_graph,
    build_kop2_graph, build_ssp_graph, Multiplicity,
};
pub use fold::fold;
pub use price::Price;
pub use saturate::{r_completion, saturate, SaturationMode, SaturationParams, SaturationStats};
pub use witness::{check_certificate, Certificate};

pub type StateId = u32;
pub type EdgeId = u32;

/// An edge label: `ε` or a letter, packed as `0` or `1 + letter code`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Label(u32);

impl Label {
    pub const EPSILON: Label = Label(0);

    pub fn letter(l: Letter) -> Label {
        Label(1 + l.code() as u32)
    }

    pub fn is_epsilon(self) -> bool {
        self.0 == 0
    }

    pub fn as_letter(self) -> Option<Letter> {
        if self.0 == 0 {
            None
        } else {
            Some(Letter::from_code(self.0 as usize - 1))
        }
    }

    /// The inverse letter's label; `ε` is its own inverse.
    pub fn inverse(self) -> Label {
        if self.0 == 0 {
            self
        } else {
            Label(((self.0 - 1) ^ 1) + 1)
        }
    }

    pub fn raw(self) -> u32 {
        self.0
    }

    /// Label of the composite of two consecutive edges, if one of the
    /// four folding rules applies.
    pub fn compose(self, next: Label) -> Option<Label> {
        if self.0 == 0 {
            Some(next)
        } else if next.0 == 0 {
            Some(self)
        } else if next == self.inverse() {
            Some(Label::EPSILON)
        } else {
            None
        }
    }
}

impl From<Letter> for Label {
    fn from(l: Letter) -> Self {
        Label::letter(l)
    }
}

/// What a base edge stands for, used to read witnesses off paths.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeTag {
    Plain,
    /// Last edge of the path spelling input word `i`.
    Factor(u32),
    /// Position `pos` of relator loop `loop_id`.
    Relator { loop_id: u32, pos: u32 },
    /// A single free letter in a ball layer.
    BallLetter,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub source: StateId,
    pub label: Label,
    pub target: StateId,
    /// Minimal price over all known derivations.
    pub price: Price,
    /// Price and tag when the edge is part of the built graph.
    pub base: Option<(Price, EdgeTag)>,
    /// The two edges whose composite realizes `price`, when that beats
    /// the base price.
    pub via: Option<(EdgeId, EdgeId)>,
}

/// A relator loop added by completion: anchored at `anchor`, spelling
/// symmetrized relator `relator`.
#[derive(Clone, Debug)]
pub struct RelatorLoop {
    pub anchor: StateId,
    pub relator: u32,
}

#[derive(Clone, Debug)]
pub struct PricedAutomaton {
    alphabet_size: u32,
    state_count: u32,
    initial: StateId,
    finals: Vec<StateId>,
    edges: Vec<Edge>,
    index: FxHashMap<(StateId, Label, StateId), EdgeId>,
    loops: Vec<RelatorLoop>,
    relators: Vec<Word>,
}

impl PricedAutomaton {
    /// A single-state automaton whose state is both initial and final.
    pub fn new(alphabet_size: u32) -> Self {
        PricedAutomaton {
            alphabet_size,
            state_count: 1,
            initial: 0,
            finals: vec![0],
            edges: Vec::new(),
            index: FxHashMap::default(),
            loops: Vec::new(),
            relators: Vec::new(),
        }
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn state_count(&self) -> u32 {
        self.state_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &[StateId] {
        &self.finals
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id as usize]
    }

    pub fn loops(&self) -> &[RelatorLoop] {
        &self.loops
    }

    /// Symmetrized relators referenced by the relator loops.
    pub fn loop_relators(&self) -> &[Word] {
        &self.relators
    }

    pub(crate) fn widen_alphabet(&mut self, size: u32) {
        self.alphabet_size = self.alphabet_size.max(size);
    }

    pub fn add_state(&mut self) -> StateId {
        self.state_count += 1;
        self.state_count - 1
    }

    pub fn set_initial(&mut self, s: StateId) {
        assert!(s < self.state_count);
        self.initial = s;
    }

    pub fn set_finals(&mut self, finals: Vec<StateId>) {
        assert!(!finals.is_empty() && finals.iter().all(|&f| f < self.state_count));
        self.finals = finals;
    }

    pub fn find(&self, source: StateId, label: Label, target: StateId) -> Option<EdgeId> {
        self.index.get(&(source, label, target)).copied()
    }

    /// Adds a base edge; a parallel base edge with the same label keeps
    /// the smaller price.
    pub fn add_edge(
        &mut self,
        source: StateId,
        label: Label,
        target: StateId,
        price: Price,
        tag: EdgeTag,
    ) -> EdgeId {
        assert!(source < self.state_count && target < self.state_count);
        if let Some(l) = label.as_letter() {
            assert!(l.generator() < self.alphabet_size, "letter outside the alphabet");
        }
        if let Some(id) = self.find(source, label, target) {
            let e = &mut self.edges[id as usize];
            if e.base.as_ref().map_or(true, |(p, _)| price < *p) {
                e.base = Some((price.clone(), tag));
            }
            if price < e.price {
                e.price = price;
                e.via = None;
            }
            return id;
        }
        let id = self.edges.len() as EdgeId;
        self.edges.push(Edge {
            source,
            label,
            target,
            price: price.clone(),
            base: Some((price, tag)),
            via: None,
        });
        self.index.insert((source, label, target), id);
        id
    }

    /// Adds a path spelling `word` from `from` to a fresh or given end
    /// state. The last edge carries `last_price` and `last_tag`; the
    /// others are free and plain. Returns the end state.
    pub fn add_path(
        &mut self,
        from: StateId,
        word: &Word,
        to: Option<StateId>,
        last_price: Price,
        last_tag: EdgeTag,
    ) -> StateId {
        if word.is_empty() {
            let end = to.unwrap_or_else(|| self.add_state());
            self.add_edge(from, Label::EPSILON, end, last_price, last_tag);
            return end;
        }
        let mut cur = from;
        let n = word.len();
        for (i, l) in word.iter().enumerate() {
            let next = if i + 1 == n { to.unwrap_or_else(|| self.add_state()) } else { self.add_state() };
            if i + 1 == n {
                self.add_edge(cur, Label::letter(l), next, last_price.clone(), last_tag);
            } else {
                self.add_edge(cur, Label::letter(l), next, Price::ZERO, EdgeTag::Plain);
            }
            cur = next;
        }
        cur
    }

    pub(crate) fn register_loop(&mut self, anchor: StateId, relator: &Word) -> u32 {
        let r = match self.relators.iter().position(|x| x == relator) {
            Some(i) => i as u32,
            None => {
                self.relators.push(relator.clone());
                (self.relators.len() - 1) as u32
            }
        };
        self.loops.push(RelatorLoop { anchor, relator: r });
        (self.loops.len() - 1) as u32
    }

    /// Drops every edge that is not part of the built graph and resets
    /// prices to base prices.
    pub(crate) fn strip_derived(&mut self) {
        let old = std::mem::take(&mut self.edges);
        self.index.clear();
        for mut e in old {
            if let Some((p, _)) = &e.base {
                e.price = p.clone();
                e.via = None;
                self.index.insert((e.source, e.label, e.target), self.edges.len() as EdgeId);
                self.edges.push(e);
            }
        }
    }

    pub(crate) fn push_derived(
        &mut self,
        source: StateId,
        label: Label,
        target: StateId,
        price: Price,
        via: (EdgeId, EdgeId),
    ) -> EdgeId {
        let id = self.edges.len() as EdgeId;
        self.edges.push(Edge { source, label, target, price, base: None, via: Some(via) });
        self.index.insert((source, label, target), id);
        id
    }

    pub(crate) fn edge_mut(&mut self, id: EdgeId) -> &mut Edge {
        &mut self.edges[id as usize]
    }

    /// The cheapest ε-edge from the initial state to a final state, or a
    /// zero-cost answer when the initial state is itself final.
    pub fn epsilon_answer(&self) -> Option<EpsilonAnswer> {
        if self.finals.contains(&self.initial) {
            return Some(EpsilonAnswer { final_state: self.initial, edge: None, cost: Price::ZERO });
        }
        let mut best: Option<EpsilonAnswer> = None;
        for &f in &self.finals {
            if let Some(id) = self.find(self.initial, Label::EPSILON, f) {
                let cost = self.edge(id).price.clone();
                if best.as_ref().map_or(true, |b| cost < b.cost) {
                    best = Some(EpsilonAnswer { final_state: f, edge: Some(id), cost });
                }
            }
        }
        best
    }

    /// Replays the derivation of `edge` down to built edges, in path
    /// order. Fails if the expansion would exceed `budget` edges.
    pub fn expand(&self, edge: EdgeId, budget: usize) -> Result<Vec<EdgeId>> {
        let mut out = Vec::new();
        let mut stack = vec![edge];
        while let Some(id) = stack.pop() {
            let e = self.edge(id);
            match e.via {
                Some((a, b)) => {
                    stack.push(b);
                    stack.push(a);
                }
                None => {
                    if e.base.is_none() {
                        return Err(Error::Witness(format!("edge {id} has no derivation")));
                    }
                    out.push(id);
                    if out.len() > budget {
                        return Err(Error::Witness(format!(
                            "derivation expands beyond {budget} edges"
                        )));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Writes one edge per line as `source label target price`, preceded
    /// by a header naming the initial and final states. `ε` prints as `1`.
    pub fn dump<W: Write>(&self, out: &mut W, alphabet: Option<&Alphabet>) -> io::Result<()> {
        writeln!(out, "# states {}", self.state_count)?;
        writeln!(out, "# initial {}", self.initial)?;
        let finals: Vec<String> = self.finals.iter().map(|f| f.to_string()).collect();
        writeln!(out, "# finals {}", finals.join(" "))?;
        for e in &self.edges {
            let label = match e.label.as_letter() {
                None => "1".to_string(),
                Some(l) => {
                    let w = Word::from_letters(vec![l]);
                    match alphabet {
                        Some(a) => a.format(&w),
                        None => w.to_string(),
                    }
                }
            };
            writeln!(out, "{} {} {} {}", e.source, label, e.target, e.price)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonAnswer {
    pub final_state: StateId,
    /// `None` when the initial state is final.
    pub edge: Option<EdgeId>,
    pub cost: Price,
}
