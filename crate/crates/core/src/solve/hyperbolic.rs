//! Subset sum, knapsack and their optimization variants over a finite
//! presentation, decided by completion and folding of instance graphs.

use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::report::{Decision, SolverReport, Stats, Witness};
use crate::automata::{
    build_bsmp_graph, build_free_smp_graph, build_knapsack_graph, build_kop1_graph,
    build_kop2_graph, build_ssp_graph, check_certificate, saturate, Certificate, Multiplicity,
    PricedAutomaton, SaturationParams, SaturationStats,
};
use crate::error::{Error, Result};
use crate::oracles::wp::WpOracle;
use crate::presentation::Presentation;
use crate::word::Word;

/// The exponent bound `M = ⌈p(n)⌉` for knapsack problems, where
/// `n = Σ|w_i| + |w|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KpBoundConfig {
    /// Coefficients of `p`, highest degree first; all non-negative.
    pub coefficients: Vec<BigRational>,
    /// Largest order of a torsion element, for presentations where it is
    /// known. It only matters when choosing `p`.
    pub torsion_cap: u64,
    /// Solve as bounded knapsack with `m = M` copies of every word
    /// instead of looping over each word.
    pub expand: bool,
}

impl Default for KpBoundConfig {
    /// `p(x) = x² + 8x + 8`, `E = 1`.
    fn default() -> Self {
        KpBoundConfig::from_integers(&[1, 8, 8])
    }
}

impl KpBoundConfig {
    pub fn from_integers(coefficients: &[u64]) -> Self {
        KpBoundConfig {
            coefficients: coefficients.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            torsion_cap: 1,
            expand: false,
        }
    }

    pub fn new(coefficients: Vec<BigRational>) -> Result<Self> {
        if coefficients.iter().any(|c| c < &BigRational::zero()) {
            return Err(Error::Precondition("bound polynomial coefficients must be non-negative".into()));
        }
        Ok(KpBoundConfig { coefficients, torsion_cap: 1, expand: false })
    }

    /// `⌈p(n)⌉`, saturating at `u64::MAX`.
    pub fn bound(&self, n: u64) -> u64 {
        let x = BigRational::from_integer(n.into());
        let v = self.coefficients.iter().fold(BigRational::zero(), |acc, c| acc * &x + c);
        v.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
    }
}

fn validate(pres: &Presentation, gens: &[Word], target: &Word) -> Result<()> {
    for w in gens.iter().chain(std::iter::once(target)) {
        pres.alphabet().validate(w)?;
    }
    Ok(())
}

fn input_length(gens: &[Word], target: &Word) -> usize {
    gens.iter().map(Word::len).sum::<usize>() + target.len()
}

/// The result of saturating one instance graph.
enum GraphOutcome {
    Accepted { graph: PricedAutomaton, cert: Certificate, cost: BigUint, complete: bool },
    Rejected,
    Undecided(String),
}

struct Run {
    outcome: GraphOutcome,
    stats: SaturationStats,
}

fn required_depth(pres: &Presentation, params: &SaturationParams) -> Option<u32> {
    pres.known_completion_depth().or(params.proven_depth)
}

fn run_graph(pres: &Presentation, g: &PricedAutomaton, l: usize, params: &SaturationParams) -> Result<Run> {
    let required = required_depth(pres, params);
    let (h, stats) = saturate(g, pres.symmetrized(), params, l, required)?;
    let complete = !stats.budget_hit && required.is_some_and(|d| stats.completion_rounds >= d);
    let outcome = match h.epsilon_answer() {
        Some(ans) => {
            let cert = h.certificate(&ans)?;
            GraphOutcome::Accepted { cost: ans.cost.to_biguint(), graph: h, cert, complete }
        }
        None if complete => GraphOutcome::Rejected,
        None => {
            let why = if stats.budget_hit {
                format!("state budget reached after {} completion rounds", stats.completion_rounds)
            } else {
                format!("no ε-edge after {} completion rounds", stats.completion_rounds)
            };
            GraphOutcome::Undecided(why)
        }
    };
    Ok(Run { outcome, stats })
}

/// Checks a claimed identity `expected =_G 1` read off a certificate:
/// always against the certificate itself, and against an exact oracle
/// when the presentation has one.
fn verify(pres: &Presentation, graph: &PricedAutomaton, cert: &Certificate, expected: &Word) -> Result<bool> {
    check_certificate(graph, cert, pres.symmetrized(), expected)?;
    if let Some(oracle) = pres.word_problem() {
        if !oracle.is_trivial(expected) {
            return Err(Error::Witness(format!("{expected} is not trivial in the group")));
        }
    }
    Ok(true)
}

/// Exponents from factor tags that must appear in non-decreasing (or,
/// for reversed blocks, non-increasing) order.
fn exponents_from(factors: &[u32], k: usize, reversed: bool) -> Result<Vec<i64>> {
    let ordered = factors.windows(2).all(|p| if reversed { p[0] >= p[1] } else { p[0] <= p[1] });
    if !ordered {
        return Err(Error::Witness("factors appear out of block order".into()));
    }
    let mut e = vec![0i64; k];
    for &f in factors {
        e[f as usize] += 1;
    }
    Ok(e)
}

fn power_product(gens: &[Word], exps: &[i64]) -> Word {
    let mut letters = Vec::new();
    for (w, &e) in gens.iter().zip(exps) {
        let base = if e < 0 { w.inverse() } else { w.clone() };
        for _ in 0..e.unsigned_abs() {
            letters.extend(base.iter());
        }
    }
    Word::from_letters(letters)
}

fn finish(mut report: SolverReport, stats: &SaturationStats, started: Instant) -> SolverReport {
    report.stats.absorb(stats);
    report.stats.millis = started.elapsed().as_millis() as u64;
    report
}

fn undecided_note(note: String, complete: bool) -> Option<String> {
    if complete {
        None
    } else {
        Some(format!("cost is the best found; completion depth not proven ({note})"))
    }
}

/// `ε` per word with multiplicity `mult`, minimal `Σε_i`.
fn solve_sum(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    params: &SaturationParams,
    mult: Multiplicity,
) -> Result<SolverReport> {
    let started = Instant::now();
    validate(pres, gens, target)?;
    let g = match mult {
        Multiplicity::Once => build_ssp_graph(gens, target),
        Multiplicity::Unbounded => build_knapsack_graph(gens, target),
    };
    let run = run_graph(pres, &g, input_length(gens, target), params)?;
    let report = match run.outcome {
        GraphOutcome::Accepted { graph, cert, cost, complete } => {
            let exps = exponents_from(&cert.factors, gens.len(), false)?;
            let expected = power_product(gens, &exps).concat(&target.inverse());
            let verified = verify(pres, &graph, &cert, &expected)?;
            let mut r = SolverReport::yes(Witness::Exponents(exps), cost, verified);
            r.note = undecided_note(format!("{} rounds", run.stats.completion_rounds), complete);
            r
        }
        GraphOutcome::Rejected => SolverReport::no(),
        GraphOutcome::Undecided(why) => SolverReport::unknown(why),
    };
    Ok(finish(report, &run.stats, started))
}

/// Subset sum: `ε ∈ {0,1}^k` with `w_1^{ε_1}…w_k^{ε_k} =_G w`. A positive
/// answer carries the solution with minimal `Σε_i` as its cost.
pub fn solve_ssp(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    params: &SaturationParams,
) -> Result<SolverReport> {
    solve_sum(pres, gens, target, params, Multiplicity::Once)
}

/// Subset-sum optimization; the same computation as [`solve_ssp`].
pub fn solve_ssop(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    params: &SaturationParams,
) -> Result<SolverReport> {
    solve_ssp(pres, gens, target, params)
}

/// Bounded knapsack, `0 ≤ ε_i ≤ m`, via subset sum over `m` copies of
/// each word.
pub fn solve_bkp(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    m: usize,
    params: &SaturationParams,
) -> Result<SolverReport> {
    let expanded = crate::reductions::bkp_to_ssp(gens, m);
    let mut r = solve_ssp(pres, &expanded, target, params)?;
    if let Some(Witness::Exponents(v)) = &r.witness {
        r.witness = Some(Witness::Exponents(crate::reductions::ssp_witness_to_bkp(v, gens.len(), m)));
    }
    Ok(r)
}

/// Bounded submonoid membership: a product of at most `m` input words
/// equal to the target, with the fewest factors.
pub fn solve_bsmp(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    m: usize,
    params: &SaturationParams,
) -> Result<SolverReport> {
    let started = Instant::now();
    validate(pres, gens, target)?;
    let g = build_bsmp_graph(gens, target, m);
    let l = m * gens.iter().map(Word::len).max().unwrap_or(0) + target.len();
    let run = run_graph(pres, &g, l, params)?;
    let report = match run.outcome {
        GraphOutcome::Accepted { graph, cert, cost, complete } => {
            let factors: Vec<usize> = cert.factors.iter().map(|&f| f as usize).collect();
            let mut expected = Word::empty();
            for &f in &factors {
                expected = expected.concat(&gens[f]);
            }
            let expected = expected.concat(&target.inverse());
            let verified = verify(pres, &graph, &cert, &expected)?;
            let mut r = SolverReport::yes(Witness::Factors(factors), cost, verified);
            r.note = undecided_note(format!("{} rounds", run.stats.completion_rounds), complete);
            r
        }
        GraphOutcome::Rejected => SolverReport::no(),
        GraphOutcome::Undecided(why) => SolverReport::unknown(why),
    };
    Ok(finish(report, &run.stats, started))
}

/// Knapsack with non-negative exponents, minimizing `Σε_i`.
///
/// The bound `M = p(Σ|w_i| + |w|)` is reported. By default every word
/// gets a loop, which accepts all exponents at once; with
/// `bound.expand` the instance is solved as bounded knapsack with
/// `m = M`, and a negative answer then only excludes solutions with all
/// `ε_i ≤ M`.
pub fn solve_kp(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    bound: &KpBoundConfig,
    params: &SaturationParams,
) -> Result<SolverReport> {
    let m = bound.bound(input_length(gens, target) as u64);
    let mut r = if bound.expand {
        let m_usize = usize::try_from(m).map_err(|_| Error::Precondition("bound too large".into()))?;
        let mut r = solve_bkp(pres, gens, target, m_usize, params)?;
        if r.decision == Decision::No {
            r.note = Some(format!("no solution with all exponents at most {m}"));
        }
        r
    } else {
        solve_sum(pres, gens, target, params, Multiplicity::Unbounded)?
    };
    r.bound_used = Some(m);
    Ok(r)
}

/// Knapsack optimization; the same computation as [`solve_kp`].
pub fn solve_kop(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    bound: &KpBoundConfig,
    params: &SaturationParams,
) -> Result<SolverReport> {
    solve_kp(pres, gens, target, bound, params)
}

/// Integer knapsack: signed exponents, through knapsack over
/// `w_1, w_1⁻¹, …, w_k, w_k⁻¹`.
pub fn solve_ikp(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    bound: &KpBoundConfig,
    params: &SaturationParams,
) -> Result<SolverReport> {
    let doubled = crate::reductions::ikp_to_kp(gens);
    let mut r = solve_kp(pres, &doubled, target, bound, params)?;
    if let Some(Witness::Exponents(v)) = &r.witness {
        r.witness = Some(Witness::Exponents(crate::reductions::kp_witness_to_ikp(v)));
    }
    Ok(r)
}

/// Minimal distance `N*` from `w` to `w_1^{ε_1}…w_k^{ε_k}`, scanning `N`
/// upwards from 0. `cost` is `N*`.
fn solve_distance(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    params: &SaturationParams,
    mult: Multiplicity,
) -> Result<SolverReport> {
    let started = Instant::now();
    validate(pres, gens, target)?;
    let mut stats = Stats::default();
    let mut undecided: Option<String> = None;
    let l = input_length(gens, target);
    for radius in 0..=target.len() {
        let g = build_kop1_graph(gens, target, radius, pres.alphabet(), mult);
        let run = run_graph(pres, &g, l + radius, params)?;
        stats.absorb(&run.stats);
        match run.outcome {
            GraphOutcome::Accepted { graph, cert, complete, .. } => {
                let exps = exponents_from(&cert.factors, gens.len(), false)?;
                let expected = power_product(gens, &exps)
                    .concat(&cert.ball_letters)
                    .concat(&target.inverse());
                let verified = verify(pres, &graph, &cert, &expected)?;
                let mut r = SolverReport::yes(Witness::Exponents(exps), BigUint::from(radius), verified);
                if let Some(why) = undecided.take() {
                    r.note = Some(format!("smaller radii undecided ({why}); distance is an upper bound"));
                } else if !complete {
                    r.note = Some("completion depth not proven".into());
                }
                r.stats = stats;
                r.stats.millis = started.elapsed().as_millis() as u64;
                return Ok(r);
            }
            GraphOutcome::Rejected => {}
            GraphOutcome::Undecided(why) => {
                undecided.get_or_insert(why);
            }
        }
    }
    let mut r = SolverReport::unknown(undecided.unwrap_or_else(|| "radius scan exhausted".into()));
    r.stats = stats;
    r.stats.millis = started.elapsed().as_millis() as u64;
    Ok(r)
}

/// Subset-sum choice closest to the target in the Cayley graph.
pub fn solve_ssop1(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    params: &SaturationParams,
) -> Result<SolverReport> {
    solve_distance(pres, gens, target, params, Multiplicity::Once)
}

/// Knapsack choice closest to the target in the Cayley graph.
pub fn solve_kop1(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    bound: &KpBoundConfig,
    params: &SaturationParams,
) -> Result<SolverReport> {
    let mut r = solve_distance(pres, gens, target, params, Multiplicity::Unbounded)?;
    r.bound_used = Some(bound.bound(input_length(gens, target) as u64));
    Ok(r)
}

fn require_free(pres: &Presentation, what: &str) -> Result<()> {
    if pres.is_free() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} is implemented for free groups only")))
    }
}

/// Free groups: the product closest to `w` among those on the geodesic
/// from 1 to `w`, i.e. equal to a prefix of `reduced(w)`. `cost` is
/// `N* = |reduced(w)| − |prefix|`.
fn solve_segment(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    params: &SaturationParams,
    mult: Multiplicity,
) -> Result<SolverReport> {
    let started = Instant::now();
    require_free(pres, "the on-segment distance problem")?;
    validate(pres, gens, target)?;
    let reduced = target.free_reduce();
    let mut stats = Stats::default();
    let l = input_length(gens, target);
    for radius in 0..=reduced.len() {
        let (g, first_prefix) = build_kop2_graph(gens, target, radius, mult);
        let run = run_graph(pres, &g, l, params)?;
        stats.absorb(&run.stats);
        if let GraphOutcome::Accepted { graph, cert, .. } = run.outcome {
            let j = graph.finals().iter().position(|&f| f == cert.final_state).expect("accepted at a final");
            let prefix = Word::from_letters(reduced.letters()[..first_prefix + j].to_vec());
            let exps = exponents_from(&cert.factors, gens.len(), true)?;
            let mut expected = prefix.clone();
            for &f in &cert.factors {
                expected = expected.concat(&gens[f as usize].inverse());
            }
            let verified = verify(pres, &graph, &cert, &expected)?;
            let product = power_product(gens, &exps).free_reduce();
            if product != prefix {
                return Err(Error::Witness("product is not the claimed prefix".into()));
            }
            let distance = reduced.len() - prefix.len();
            let mut r = SolverReport::yes(Witness::Exponents(exps), BigUint::from(distance), verified);
            r.stats = stats;
            r.stats.millis = started.elapsed().as_millis() as u64;
            return Ok(r);
        }
    }
    // radius |w| admits the empty prefix with the zero vector
    Err(Error::Witness("segment scan found no prefix".into()))
}

/// Free groups: subset-sum product on the segment `[1, w]` closest to `w`.
pub fn solve_ssop2(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    params: &SaturationParams,
) -> Result<SolverReport> {
    solve_segment(pres, gens, target, params, Multiplicity::Once)
}

/// Free groups: knapsack product on the segment `[1, w]` closest to `w`.
pub fn solve_kop2(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    bound: &KpBoundConfig,
    params: &SaturationParams,
) -> Result<SolverReport> {
    let mut r = solve_segment(pres, gens, target, params, Multiplicity::Unbounded)?;
    r.bound_used = Some(bound.bound(input_length(gens, target) as u64));
    Ok(r)
}

/// Free groups: shortest product of input words (any number, any order)
/// equal to `w`. Costs can be exponential in the input size and are
/// exact big integers.
pub fn solve_free_smop(
    pres: &Presentation,
    gens: &[Word],
    target: &Word,
    params: &SaturationParams,
) -> Result<SolverReport> {
    let started = Instant::now();
    require_free(pres, "submonoid membership")?;
    validate(pres, gens, target)?;
    let g = build_free_smp_graph(gens, target);
    let run = run_graph(pres, &g, input_length(gens, target), params)?;
    let report = match run.outcome {
        GraphOutcome::Accepted { graph, cert, cost, .. } => {
            let factors: Vec<usize> = cert.factors.iter().map(|&f| f as usize).collect();
            let mut expected = Word::empty();
            for &f in &factors {
                expected = expected.concat(&gens[f]);
            }
            let expected = expected.concat(&target.inverse());
            let verified = verify(pres, &graph, &cert, &expected)?;
            if BigUint::from(factors.len()) != cost {
                return Err(Error::Witness("factor count differs from the price".into()));
            }
            SolverReport::yes(Witness::Factors(factors), cost, verified)
        }
        GraphOutcome::Rejected => SolverReport::no(),
        GraphOutcome::Undecided(why) => SolverReport::unknown(why),
    };
    Ok(finish(report, &run.stats, started))
}
