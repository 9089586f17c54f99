//! Subset sum and bounded submonoid membership by dynamic programming
//! over canonical elements, for groups given by a [`GroupOracle`].

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigUint;

use crate::error::Result;
use crate::oracles::wp::{FreeAbelian, GroupOracle, Heisenberg};
use crate::reductions::{bsmp_to_ssop, ssop_witness_to_bsmp};
use crate::solve::{SolverReport, Witness};
use crate::word::{Alphabet, Word};

pub fn heisenberg_oracle() -> Heisenberg {
    Heisenberg
}

pub fn free_abelian_oracle(d: u32) -> FreeAbelian {
    assert!(d >= 1, "rank must be positive");
    FreeAbelian { rank: d }
}

/// The ball of radius `radius` in the Cayley graph.
#[derive(Clone, Debug)]
pub struct Ball<E> {
    radius: usize,
    vertices: Vec<E>,
    /// A geodesic word for each vertex.
    words: Vec<Word>,
    index: HashMap<E, usize>,
    /// `neighbors[v][code]`: the vertex reached along the letter with that
    /// code, when it lies in the ball.
    neighbors: Vec<Vec<Option<usize>>>,
}

impl<E: Clone + Eq + std::hash::Hash> Ball<E> {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[E] {
        &self.vertices
    }

    pub fn word(&self, v: usize) -> &Word {
        &self.words[v]
    }

    pub fn find(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    pub fn neighbor(&self, v: usize, letter: crate::word::Letter) -> Option<usize> {
        self.neighbors[v][letter.code()]
    }

    /// Vertices at distance exactly `r` from the identity.
    pub fn sphere(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&v| self.words[v].len() == r)
    }
}

/// Breadth-first ball: layer `r` is everything reached from layer `r − 1`
/// by one letter and not seen before.
pub fn build_ball<G: GroupOracle>(oracle: &G, alphabet: &Alphabet, n: usize) -> Ball<G::Element> {
    let letters: Vec<_> = alphabet.letters().collect();
    let codes = 2 * alphabet.size() as usize;
    let id = oracle.identity();
    let mut ball = Ball {
        radius: n,
        vertices: vec![id.clone()],
        words: vec![Word::empty()],
        index: HashMap::from([(id, 0)]),
        neighbors: vec![vec![None; codes]],
    };
    let mut layer = 0..1;
    for _ in 0..n {
        let start = ball.vertices.len();
        for v in layer.clone() {
            for &l in &letters {
                let mut e = ball.vertices[v].clone();
                oracle.multiply_letter(&mut e, l);
                let u = match ball.index.get(&e) {
                    Some(&u) => u,
                    None => {
                        let u = ball.vertices.len();
                        let mut w = ball.words[v].clone();
                        w.push(l);
                        ball.index.insert(e.clone(), u);
                        ball.vertices.push(e);
                        ball.words.push(w);
                        ball.neighbors.push(vec![None; codes]);
                        u
                    }
                };
                ball.neighbors[v][l.code()] = Some(u);
                ball.neighbors[u][l.inverse().code()] = Some(v);
            }
        }
        layer = start..ball.vertices.len();
    }
    ball
}

/// `P_0 = {1}`, `P_i = P_{i−1} ∪ P_{i−1}·g_i`, keeping for every element
/// the fewest factors that reach it; ties keep `ε_i = 0`. All of `P_k`
/// lies in the ball of radius `Σ|g_i|`, so a target the oracle places
/// outside it is rejected without search.
pub fn nilpotent_ssp<G: GroupOracle>(
    oracle: &G,
    alphabet: &Alphabet,
    gens: &[Word],
    target: &Word,
) -> Result<SolverReport> {
    let started = Instant::now();
    for w in gens.iter().chain(std::iter::once(target)) {
        alphabet.validate(w)?;
    }
    let radius: usize = gens.iter().map(Word::len).sum();
    let goal = oracle.evaluate(target);
    let finish = |mut r: SolverReport, states: usize| {
        r.stats.states = states as u64;
        r.stats.millis = started.elapsed().as_millis() as u64;
        r
    };
    if oracle.length_lower_bound(&goal) > radius {
        let mut r = SolverReport::no();
        r.note = Some(format!("target lies outside the ball of radius {radius}"));
        return Ok(finish(r, 0));
    }
    // layers[i]: element -> (fewest factors, whether g_i was used)
    let mut layers: Vec<HashMap<G::Element, (u64, bool)>> = Vec::with_capacity(gens.len() + 1);
    layers.push(HashMap::from([(oracle.identity(), (0, false))]));
    let mut largest = 1;
    for g in gens {
        let prev = layers.last().unwrap();
        let mut next: HashMap<G::Element, (u64, bool)> =
            prev.iter().map(|(e, &(c, _))| (e.clone(), (c, false))).collect();
        for (e, &(c, _)) in prev {
            let mut f = e.clone();
            oracle.multiply_word(&mut f, g);
            let cand = (c + 1, true);
            next.entry(f).and_modify(|best| if cand.0 < best.0 { *best = cand }).or_insert(cand);
        }
        largest = largest.max(next.len());
        layers.push(next);
    }
    let Some(&(cost, _)) = layers.last().unwrap().get(&goal) else {
        return Ok(finish(SolverReport::no(), largest));
    };
    let mut eps = vec![0i64; gens.len()];
    let mut e = goal.clone();
    for i in (0..gens.len()).rev() {
        let (_, used) = layers[i + 1][&e];
        if used {
            eps[i] = 1;
            let mut f = e.clone();
            oracle.multiply_word(&mut f, &gens[i].inverse());
            e = f;
        }
    }
    let mut product = oracle.identity();
    for (g, &x) in gens.iter().zip(&eps) {
        if x == 1 {
            oracle.multiply_word(&mut product, g);
        }
    }
    let verified = product == goal && eps.iter().sum::<i64>() as u64 == cost;
    assert!(verified, "reconstructed tuple does not reach the target");
    Ok(finish(SolverReport::yes(Witness::Exponents(eps), BigUint::from(cost), verified), largest))
}

/// At most `m` factors in order, as subset sum over `m` repetitions of
/// the whole list; the cost is the fewest factors.
pub fn nilpotent_bsmp<G: GroupOracle>(
    oracle: &G,
    alphabet: &Alphabet,
    gens: &[Word],
    target: &Word,
    m: usize,
) -> Result<SolverReport> {
    // the expanded list admits up to k·m factors, so only an optimum of
    // at most m answers the bounded question
    let expanded = bsmp_to_ssop(gens, m);
    let mut r = nilpotent_ssp(oracle, alphabet, &expanded, target)?;
    if r.cost.as_ref().is_some_and(|c| *c > BigUint::from(m)) {
        let note = format!("fewest factors is {}, above m = {m}", r.cost.as_ref().unwrap());
        return Ok(SolverReport { note: Some(note), stats: r.stats, ..SolverReport::no() });
    }
    if let Some(Witness::Exponents(v)) = &r.witness {
        r.witness = Some(Witness::Factors(ssop_witness_to_bsmp(v, gens.len())));
    }
    Ok(r)
}
