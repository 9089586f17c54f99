//! The subgroup `H` of `F(X) × F(X)` generated by `(r, 1)` for relators
//! `r` and `(x, x⁻¹)` for letters `x`. With `σ` the automorphism
//! inverting every letter, `(u, v) ∈ H` exactly when `u = σ(v)` in
//! `G = ⟨X | R⟩`, so bounded membership in `H` encodes the word problem
//! of `G`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::solve::{Decision, SolverReport, Witness};
use crate::word::{Letter, Word};

/// An element of `F(X) × F(X)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PairWord {
    pub left: Word,
    pub right: Word,
}

impl PairWord {
    pub fn new(left: Word, right: Word) -> Self {
        PairWord { left, right }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// Both components freely reduced.
    pub fn canonical(&self) -> Self {
        PairWord { left: self.left.free_reduce(), right: self.right.free_reduce() }
    }

    pub fn mul(&self, other: &PairWord) -> Self {
        PairWord { left: self.left.concat(&other.left), right: self.right.concat(&other.right) }
    }

    pub fn inverse(&self) -> Self {
        PairWord { left: self.left.inverse(), right: self.right.inverse() }
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_freely_trivial() && self.right.is_freely_trivial()
    }

    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

impl fmt::Display for PairWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

/// Inverts every letter in place: a homomorphism of the free group.
pub fn sigma(w: &Word) -> Word {
    w.iter().map(Letter::inverse).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `(r, 1)` for the symmetrized relator with this index.
    Relator(usize),
    /// `(x, x⁻¹)`.
    Letter(Letter),
}

/// The generating set of `H` for a presentation.
#[derive(Clone, Debug)]
pub struct MikhailovaGens {
    presentation: Presentation,
    generators: Vec<PairWord>,
    kinds: Vec<GeneratorKind>,
    max_relator: usize,
}

/// Relator pairs first, in symmetrized order, then letter pairs for
/// `x_0, x_0⁻¹, x_1, …`. The set is closed under inversion.
pub fn build_generators(pres: &Presentation) -> Result<MikhailovaGens> {
    let mut generators = Vec::new();
    let mut kinds = Vec::new();
    let mut seen = HashSet::new();
    for (i, r) in pres.symmetrized().iter().enumerate() {
        if r.is_empty() {
            return Err(Error::EmptyRelator(i));
        }
        let g = PairWord::new(r.clone(), Word::empty());
        if seen.insert(g.clone()) {
            generators.push(g);
            kinds.push(GeneratorKind::Relator(i));
        }
    }
    for x in pres.alphabet().letters() {
        let g = PairWord::new(Word::from_letters(vec![x]), Word::from_letters(vec![x.inverse()]));
        if seen.insert(g.clone()) {
            generators.push(g);
            kinds.push(GeneratorKind::Letter(x));
        }
    }
    Ok(MikhailovaGens {
        presentation: pres.clone(),
        generators,
        kinds,
        max_relator: pres.max_relator_length(),
    })
}

impl MikhailovaGens {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn generators(&self) -> &[PairWord] {
        &self.generators
    }

    pub fn kind(&self, i: usize) -> GeneratorKind {
        self.kinds[i]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `C`, the longest relator.
    pub fn max_relator_length(&self) -> usize {
        self.max_relator
    }

    /// Index of the generator equal to the inverse of generator `i`.
    pub fn inverse_index(&self, i: usize) -> usize {
        let inv = self.generators[i].inverse();
        self.generators.iter().position(|g| *g == inv).expect("generating set is symmetric")
    }

    fn relator_index(&self, r: &Word) -> Option<usize> {
        self.generators.iter().position(|g| g.right.is_empty() && g.left == *r)
    }

    fn letter_index(&self, x: Letter) -> usize {
        self.kinds.iter().position(|k| *k == GeneratorKind::Letter(x)).expect("every letter has a pair")
    }

    /// The product of signed generators, unreduced.
    pub fn product(&self, factors: &[(usize, i8)]) -> PairWord {
        factors.iter().fold(PairWord::identity(), |acc, &(i, s)| {
            let g = &self.generators[i];
            acc.mul(&if s < 0 { g.inverse() } else { g.clone() })
        })
    }
}

/// `m + 8(C·m + |w|)`: the length of a product for `(w, 1)` when `w` is
/// a product of `m` conjugates of relators of length at most `C`.
pub fn membership_bound(w_len: u64, m: u64, c: u64) -> u64 {
    m + 8 * (c * m + w_len)
}

/// `p(x)` for coefficients given highest degree first.
pub fn eval_poly(coefficients: &[u64], x: u64) -> u64 {
    coefficients.iter().fold(0u64, |acc, &c| acc.saturating_mul(x).saturating_add(c))
}

/// A bounded membership question `target ∈ H` with products of length
/// at most `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgwpInstance {
    pub target: PairWord,
    pub n: u64,
}

/// `((w, 1), n)` with `n = p(|w|) + 8(C·p(|w|) + |w|)`, where `p`
/// bounds the Dehn function of the presentation.
pub fn wp_to_bgwp(pres: &Presentation, dehn_poly: &[u64], w: &Word) -> Result<BgwpInstance> {
    pres.alphabet().validate(w)?;
    let m = eval_poly(dehn_poly, w.len() as u64);
    let n = membership_bound(w.len() as u64, m, pres.max_relator_length() as u64);
    Ok(BgwpInstance { target: PairWord::new(w.clone(), Word::empty()), n })
}

/// `u_1…u_n = w_0 r_1 w_1 … r_m w_m` read off a product of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// `w_0, …, w_m`, from the letter pairs.
    pub segments: Vec<Word>,
    /// `r_1, …, r_m`.
    pub relators: Vec<Word>,
}

impl Decomposition {
    /// `w_0 r_1 w_1 … r_m w_m`, unreduced.
    pub fn left_word(&self) -> Word {
        let mut w = self.segments[0].clone();
        for (r, s) in self.relators.iter().zip(&self.segments[1..]) {
            w = w.concat(r).concat(s);
        }
        w
    }

    /// `∏ (w_0…w_{i−1}) r_i (w_0…w_{i−1})⁻¹`, unreduced.
    pub fn conjugate_product(&self) -> Word {
        let mut prefix = Word::empty();
        let mut out = Word::empty();
        for (i, r) in self.relators.iter().enumerate() {
            prefix = prefix.concat(&self.segments[i]);
            out = out.concat(&prefix).concat(r).concat(&prefix.inverse());
        }
        out
    }

    pub fn segment_product(&self) -> Word {
        self.segments.iter().fold(Word::empty(), |acc, s| acc.concat(s))
    }
}

/// Splits a product with trivial right component into its relator and
/// letter parts, and checks both identities: `w_0 w_1 … w_m = 1` and
/// `left = ∏ (w_0…w_{i−1}) r_i (w_0…w_{i−1})⁻¹` in `F(X)`.
pub fn expand_witness(gens: &MikhailovaGens, factors: &[(usize, i8)]) -> Result<Decomposition> {
    let product = gens.product(factors);
    if !product.right.is_freely_trivial() {
        return Err(Error::Precondition("right component of the product is not trivial".into()));
    }
    let mut segments = vec![Word::empty()];
    let mut relators = Vec::new();
    for &(i, s) in factors {
        let g = &gens.generators()[i];
        let left = if s < 0 { g.left.inverse() } else { g.left.clone() };
        match gens.kind(i) {
            GeneratorKind::Relator(_) => {
                relators.push(left);
                segments.push(Word::empty());
            }
            GeneratorKind::Letter(_) => {
                let last = segments.last_mut().unwrap();
                *last = last.concat(&left);
            }
        }
    }
    let d = Decomposition { segments, relators };
    if !d.segment_product().is_freely_trivial() {
        return Err(Error::Witness("letter segments do not multiply to 1".into()));
    }
    if d.left_word().free_reduce() != product.left.free_reduce()
        || d.conjugate_product().free_reduce() != product.left.free_reduce()
    {
        return Err(Error::Witness("left component is not the product of relator conjugates".into()));
    }
    Ok(d)
}

/// Integer row echelon form of the relator exponent-sum vectors, for
/// testing membership in their span.
#[derive(Clone, Debug)]
struct Lattice {
    rows: Vec<Vec<i64>>,
}

impl Lattice {
    fn new(mut vectors: Vec<Vec<i64>>, dim: usize) -> Self {
        let mut rows = Vec::new();
        for col in 0..dim {
            // Euclid on column `col` across the remaining vectors
            loop {
                vectors.retain(|v| v.iter().any(|&x| x != 0));
                let mut nz: Vec<usize> = (0..vectors.len()).filter(|&i| vectors[i][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&i| vectors[i][col].abs());
                let p = nz[0];
                for &i in &nz[1..] {
                    let q = vectors[i][col] / vectors[p][col];
                    let pivot = vectors[p].clone();
                    for (x, y) in vectors[i].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
            }
            if let Some(i) = vectors.iter().position(|v| v[col] != 0) {
                rows.push(vectors.swap_remove(i));
            }
        }
        Lattice { rows }
    }

    fn contains(&self, v: &[i64]) -> bool {
        let mut v = v.to_vec();
        for row in &self.rows {
            let col = row.iter().position(|&x| x != 0).unwrap();
            if v[col] % row[col] != 0 {
                return false;
            }
            let q = v[col] / row[col];
            for (x, y) in v.iter_mut().zip(row) {
                *x -= q * y;
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// Whether `(u, v)` passes the abelian necessary condition
/// `ab(u) + ab(v) ∈ span ab(R)`.
pub fn abelian_invariant_holds(pres: &Presentation, target: &PairWord) -> bool {
    let rank = pres.alphabet().size() as usize;
    let lattice = Lattice::new(pres.relators().iter().map(|r| r.abelianization(rank)).collect(), rank);
    let v: Vec<i64> = target
        .left
        .abelianization(rank)
        .iter()
        .zip(target.right.abelianization(rank))
        .map(|(a, b)| a + b)
        .collect();
    lattice.contains(&v)
}

/// Search limits for [`bgwp_bruteforce`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BgwpBudget {
    /// Pair products visited by the breadth-first search.
    pub max_pairs: usize,
    /// Words visited by the relator-deletion search.
    pub max_words: usize,
}

impl Default for BgwpBudget {
    fn default() -> Self {
        BgwpBudget { max_pairs: 2_000_000, max_words: 200_000 }
    }
}

/// How a [`bgwp_bruteforce`] answer was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BgwpMethod {
    AbelianInvariant,
    BreadthFirst,
    RelatorDeletion,
    BudgetExhausted,
}

/// Bounded membership of `target` in `H`, products of length at most `n`.
///
/// 1. A failed abelian invariant is a definite no.
/// 2. Breadth-first search over products of generators (the set is
///    symmetric, so no inverses are needed), deduplicated on canonical
///    pairs and cut where the remaining steps cannot close the distance
///    to the target. Exhausting it is a definite no.
/// 3. If that runs out of budget: delete relators from
///    `u·σ(v)⁻¹` breadth-first until it is empty, and turn the deletions
///    into a product of conjugates.
///
/// Anything else is unknown. A yes carries generator indices whose
/// product has been checked against the target.
pub fn bgwp_bruteforce(
    gens: &MikhailovaGens,
    target: &PairWord,
    n: u64,
    budget: &BgwpBudget,
) -> (SolverReport, BgwpMethod) {
    let started = Instant::now();
    let done = |mut r: SolverReport, explored: usize, method| {
        r.stats.states = explored as u64;
        r.stats.millis = started.elapsed().as_millis() as u64;
        (r, method)
    };
    let target = target.canonical();
    if !abelian_invariant_holds(gens.presentation(), &target) {
        let mut r = SolverReport::no();
        r.note = Some("abelian invariant fails".into());
        return done(r, 0, BgwpMethod::AbelianInvariant);
    }
    let (bfs, explored) = breadth_first(gens, &target, n, budget.max_pairs);
    match bfs {
        Some(Some(f)) => return done(yes(gens, &target, f), explored, BgwpMethod::BreadthFirst),
        Some(None) => return done(SolverReport::no(), explored, BgwpMethod::BreadthFirst),
        None => {}
    }
    if let Some(f) = relator_deletion(gens, &target, budget.max_words) {
        if f.len() as u64 <= n {
            return done(yes(gens, &target, f), explored, BgwpMethod::RelatorDeletion);
        }
    }
    let r = SolverReport::unknown(format!("search budget exhausted after {explored} pairs"));
    done(r, explored, BgwpMethod::BudgetExhausted)
}

fn yes(gens: &MikhailovaGens, target: &PairWord, factors: Vec<usize>) -> SolverReport {
    let signed: Vec<(usize, i8)> = factors.iter().map(|&i| (i, 1)).collect();
    let verified = gens.product(&signed).canonical() == *target;
    assert!(verified, "search produced a product different from the target");
    let cost = BigUint::from(factors.len());
    SolverReport::yes(Witness::Factors(factors), cost, verified)
}

/// `Some(Some(factors))` found, `Some(None)` exhausted, `None` over budget.
fn breadth_first(
    gens: &MikhailovaGens,
    target: &PairWord,
    n: u64,
    max_pairs: usize,
) -> (Option<Option<Vec<usize>>>, usize) {
    let c = gens.max_relator_length().max(1);
    let lower_bound = |p: &PairWord| -> usize {
        let dl = p.left.inverse().concat(&target.left).free_reduce().len();
        let dr = p.right.inverse().concat(&target.right).free_reduce().len();
        dr.max(dl.div_ceil(c))
    };
    let start = PairWord::identity();
    if lower_bound(&start) as u64 > n {
        return (Some(None), 1);
    }
    let mut parent: HashMap<PairWord, Option<(usize, usize)>> = HashMap::new();
    let mut nodes = vec![start.clone()];
    parent.insert(start, None);
    let mut queue = VecDeque::from([(0usize, 0u64)]);
    while let Some((id, depth)) = queue.pop_front() {
        if nodes[id] == *target {
            let mut factors = Vec::new();
            let mut cur = id;
            while let Some((prev, g)) = parent[&nodes[cur]] {
                factors.push(g);
                cur = prev;
            }
            factors.reverse();
            return (Some(Some(factors)), nodes.len());
        }
        if depth == n {
            continue;
        }
        for (g, gen) in gens.generators().iter().enumerate() {
            let next = nodes[id].mul(gen).canonical();
            if parent.contains_key(&next) || depth + 1 + lower_bound(&next) as u64 > n {
                continue;
            }
            if nodes.len() >= max_pairs {
                return (None, nodes.len());
            }
            parent.insert(next.clone(), Some((id, g)));
            nodes.push(next);
            queue.push_back((nodes.len() - 1, depth + 1));
        }
    }
    (Some(None), nodes.len())
}

/// Breadth-first over reduced words from `z = u·σ(v)⁻¹`, each step
/// inserting a relator somewhere; reaching ε writes `z` as a product of
/// relator conjugates. Words are kept no longer than `|z| + 2C`.
fn relator_deletion(gens: &MikhailovaGens, target: &PairWord, max_words: usize) -> Option<Vec<usize>> {
    let pres = gens.presentation();
    let c = gens.max_relator_length();
    let z = target.left.concat(&sigma(&target.right).inverse()).free_reduce();
    let cap = z.len() + 2 * c;
    // word -> (previous word, insertion point, relator inserted)
    let mut parent: HashMap<Word, Option<(Word, usize, Word)>> = HashMap::from([(z.clone(), None)]);
    let mut queue = VecDeque::from([z.clone()]);
    let mut found = z.is_empty();
    while let Some(w) = queue.pop_front() {
        if found {
            break;
        }
        for p in 0..=w.len() {
            for r in pres.symmetrized() {
                let (a, b) = w.letters().split_at(p);
                let next: Word = a.iter().chain(r.letters()).chain(b).copied().collect::<Word>().free_reduce();
                if next.len() > cap || parent.contains_key(&next) {
                    continue;
                }
                if parent.len() >= max_words {
                    return None;
                }
                let done = next.is_empty();
                parent.insert(next.clone(), Some((w.clone(), p, r.clone())));
                queue.push_back(next);
                if done {
                    found = true;
                    break;
                }
            }
            if found {
                break;
            }
        }
    }
    if !found {
        return None;
    }
    // z_i = (a r⁻¹ a⁻¹)·z_{i+1} where z_{i+1} came from inserting r after prefix a of z_i
    let mut steps = Vec::new();
    let mut cur = Word::empty();
    while let Some(Some((prev, p, r))) = parent.get(&cur) {
        steps.push((Word::from_letters(prev.letters()[..*p].to_vec()), r.inverse()));
        cur = prev.clone();
    }
    steps.reverse();
    let mut factors = Vec::new();
    for (a, r_inv) in steps {
        factors.extend(a.iter().map(|x| gens.letter_index(x)));
        factors.push(gens.relator_index(&r_inv).expect("relator set is symmetric"));
        factors.extend(a.inverse().iter().map(|x| gens.letter_index(x)));
    }
    // (z, 1)·(σ(v), v) = (u, v)
    factors.extend(sigma(&target.right).iter().map(|x| gens.letter_index(x)));
    Some(factors)
}

/// The decision alone, for callers that do not need the method.
pub fn bgwp_decide(gens: &MikhailovaGens, target: &PairWord, n: u64) -> Decision {
    bgwp_bruteforce(gens, target, n, &BgwpBudget::default()).0.decision
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Presentation {
        Presentation::parse("a,b | abAB").unwrap()
    }

    #[test]
    fn generator_counts() {
        let g = build_generators(&z2()).unwrap();
        assert_eq!(g.len(), 12);
        assert!(g.generators().iter().all(|p| p.right.len() <= 1));
        let free = build_generators(&Presentation::parse("a,b").unwrap()).unwrap();
        assert_eq!(free.len(), 4);
        for i in 0..g.len() {
            assert_eq!(g.inverse_index(g.inverse_index(i)), i);
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(membership_bound(0, 0, 4), 0);
        assert_eq!(membership_bound(2, 1, 4), 49);
        let p = z2();
        let w = p.alphabet().parse("abAB").unwrap();
        assert_eq!(wp_to_bgwp(&p, &[1, 0, 0], &w).unwrap().n, 560);
    }

    #[test]
    fn lattice_membership() {
        let l = Lattice::new(vec![vec![2, 0], vec![0, 3], vec![4, 6]], 2);
        assert!(l.contains(&[4, 3]));
        assert!(!l.contains(&[1, 0]));
        assert!(l.contains(&[0, 0]));
    }

    #[test]
    fn commutator_is_a_member() {
        let p = z2();
        let g = build_generators(&p).unwrap();
        let w = p.alphabet().parse("abAB").unwrap();
        let (r, m) = bgwp_bruteforce(&g, &PairWord::new(w, Word::empty()), 560, &BgwpBudget::default());
        assert_eq!((r.decision, m, r.cost_u64()), (Decision::Yes, BgwpMethod::BreadthFirst, Some(1)));
        let a = p.alphabet().parse("a").unwrap();
        let (r, m) = bgwp_bruteforce(&g, &PairWord::new(a, Word::empty()), 100, &BgwpBudget::default());
        assert_eq!((r.decision, m), (Decision::No, BgwpMethod::AbelianInvariant));
    }

    #[test]
    fn deletion_search_builds_conjugates() {
        let p = z2();
        let g = build_generators(&p).unwrap();
        let w = p.alphabet().parse("aabAAB").unwrap();
        let t = PairWord::new(w, Word::empty());
        let f = relator_deletion(&g, &t, 100_000).unwrap();
        assert_eq!(g.product(&f.iter().map(|&i| (i, 1)).collect::<Vec<_>>()).canonical(), t);
        let signed: Vec<_> = f.iter().map(|&i| (i, 1)).collect();
        expand_witness(&g, &signed).unwrap();
    }

    #[test]
    fn letter_pair_cancellation() {
        let p = z2();
        let g = build_generators(&p).unwrap();
        let x = g.letter_index(Letter::pos(0));
        let d = expand_witness(&g, &[(x, 1), (x, -1)]).unwrap();
        assert!(d.relators.is_empty());
        assert!(d.left_word().is_freely_trivial());
    }
}
