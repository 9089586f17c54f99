//! Python bindings. Words are strings in letter syntax (`aB`, upper
//! case for inverses) or token syntax (`g0G1`).

use groupknap::automata::{SaturationMode, SaturationParams};
use groupknap::mikhailova::{bgwp_bruteforce, build_generators, wp_to_bgwp, BgwpBudget};
use groupknap::oracles::{brute_ssp, Caps, ElementCheck, FreeAbelian, GroupOracle, Heisenberg, WpOracle};
use groupknap::reductions::{binary_ssp_to_bs12, to_bits, ZoeInstance};
use groupknap::solve::{self as solvers, KpBoundConfig, SolverReport};
use groupknap::special::{bs_ssp, nilpotent_bsmp, nilpotent_ssp, BsParams};
use groupknap::{Alphabet, Word};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: groupknap::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite presentation `⟨X | R⟩`.
#[pyclass(frozen, name = "Presentation", module = "pygroupknap")]
struct PyPresentation {
    inner: groupknap::Presentation,
}

#[pymethods]
impl PyPresentation {
    /// `"a, b | aa, bbb"`; the part after `|` may be empty.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: groupknap::Presentation::parse(text).map_err(err)? })
    }

    /// The free group on `rank` generators named `a, b, …`.
    #[staticmethod]
    fn free(rank: u32) -> PyResult<Self> {
        let names: Vec<String> = (0..rank).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        if rank == 0 || rank > 26 {
            return Err(PyValueError::new_err("rank must be between 1 and 26"));
        }
        Ok(PyPresentation { inner: groupknap::Presentation::free(Alphabet::with_names(&names).map_err(err)?) })
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.inner.alphabet().size()
    }

    fn relators(&self) -> Vec<String> {
        self.inner.relators().iter().map(|r| self.inner.alphabet().format(r)).collect()
    }

    fn symmetrized(&self) -> Vec<String> {
        self.inner.symmetrized().iter().map(|r| self.inner.alphabet().format(r)).collect()
    }

    /// Total length of the symmetrized relators.
    #[getter]
    fn total_length(&self) -> usize {
        self.inner.total_length()
    }

    #[getter]
    fn max_relator_length(&self) -> usize {
        self.inner.max_relator_length()
    }

    /// Free reduction of a word, formatted back.
    fn reduce(&self, word: &str) -> PyResult<String> {
        let a = self.inner.alphabet();
        Ok(a.format(&a.parse(word).map_err(err)?.free_reduce()))
    }

    /// Word problem, for presentations with a normal-form oracle (free
    /// products of cyclic groups, including free groups).
    fn is_trivial(&self, word: &str) -> PyResult<bool> {
        let w = self.inner.alphabet().parse(word).map_err(err)?;
        match self.inner.word_problem() {
            Some(o) => Ok(o.is_trivial(&w)),
            None => Err(PyValueError::new_err("no word-problem oracle for this presentation")),
        }
    }

    fn __repr__(&self) -> String {
        let a = self.inner.alphabet();
        let gens: Vec<String> = a.letters().filter(|l| l.sign() > 0).map(|l| a.format(&Word::from_letters(vec![l]))).collect();
        format!("Presentation({:?})", format!("{} | {}", gens.join(", "), self.relators().join(", ")))
    }
}

/// The outcome of a solver call.
#[pyclass(frozen, get_all, name = "Report", module = "pygroupknap")]
struct PyReport {
    /// `"yes"`, `"no"` or `"unknown"`.
    decision: String,
    /// Exponent vector, or factor indices for submonoid problems.
    witness: Option<Vec<i64>>,
    cost: Option<BigUint>,
    verified: bool,
    note: Option<String>,
    bound_used: Option<u64>,
    states: u64,
    edges: u64,
    rounds: u32,
    rounds_needed: Option<u32>,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        let witness = match &self.witness {
            Some(w) => format!("{w:?}"),
            None => "None".into(),
        };
        let cost = self.cost.as_ref().map_or("None".into(), |c| c.to_string());
        format!("Report(decision={:?}, witness={witness}, cost={cost})", self.decision)
    }

    fn __bool__(&self) -> bool {
        self.decision == "yes"
    }
}

impl From<SolverReport> for PyReport {
    fn from(r: SolverReport) -> Self {
        PyReport {
            decision: r.decision.as_str().to_string(),
            witness: r.witness.as_ref().map(|w| w.values()),
            cost: r.cost,
            verified: r.verified,
            note: r.note,
            bound_used: r.bound_used,
            states: r.stats.states,
            edges: r.stats.edges,
            rounds: r.stats.rounds,
            rounds_needed: r.stats.rounds_needed,
        }
    }
}

fn parse_all(a: &Alphabet, gens: &[String], target: &str) -> PyResult<(Vec<Word>, Word)> {
    let g = gens.iter().map(|s| a.parse(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    Ok((g, a.parse(target).map_err(err)?))
}

fn params(mode: &str, c0: f64, c1: f64, max_rounds: u32, proven_depth: Option<u32>) -> PyResult<SaturationParams> {
    let mode = match mode {
        "adaptive" => SaturationMode::Adaptive,
        "fixed" => SaturationMode::Fixed,
        _ => return Err(PyValueError::new_err("mode must be 'adaptive' or 'fixed'")),
    };
    let p = SaturationParams { c0, c1, mode, max_rounds, proven_depth, ..SaturationParams::default() };
    p.validate().map_err(err)?;
    Ok(p)
}

fn bound(coefficients: Option<Vec<u64>>) -> KpBoundConfig {
    coefficients.map_or_else(KpBoundConfig::default, |c| KpBoundConfig::from_integers(&c))
}

/// Decides a knapsack-type problem over a free or hyperbolic group.
///
/// `problem` is one of SSP, SSOP, BKP, BSMP, KP, KOP, IKP, SSOP1,
/// KOP1, SSOP2, KOP2, SMOP. `m` is required for BKP and BSMP.
/// `kp_bound` gives the coefficients of the exponent bound polynomial,
/// highest degree first.
#[pyfunction]
#[pyo3(signature = (pres, problem, gens, target, m=None, kp_bound=None, mode="adaptive", c0=1.0, c1=2.0, max_rounds=32, proven_depth=None))]
#[allow(clippy::too_many_arguments)]
fn solve(
    py: Python<'_>,
    pres: &PyPresentation,
    problem: &str,
    gens: Vec<String>,
    target: &str,
    m: Option<usize>,
    kp_bound: Option<Vec<u64>>,
    mode: &str,
    c0: f64,
    c1: f64,
    max_rounds: u32,
    proven_depth: Option<u32>,
) -> PyResult<PyReport> {
    let p = &pres.inner;
    let (g, t) = parse_all(p.alphabet(), &gens, target)?;
    let sp = params(mode, c0, c1, max_rounds, proven_depth)?;
    let b = bound(kp_bound);
    let need_m = || m.ok_or_else(|| PyValueError::new_err(format!("{problem} needs m")));
    let kind = problem.to_ascii_uppercase();
    let r = match kind.as_str() {
        "SSP" | "SSOP" => py.detach(|| solvers::solve_ssp(p, &g, &t, &sp)),
        "BKP" => {
            let m = need_m()?;
            py.detach(|| solvers::solve_bkp(p, &g, &t, m, &sp))
        }
        "BSMP" => {
            let m = need_m()?;
            py.detach(|| solvers::solve_bsmp(p, &g, &t, m, &sp))
        }
        "KP" | "KOP" => py.detach(|| solvers::solve_kp(p, &g, &t, &b, &sp)),
        "IKP" => py.detach(|| solvers::solve_ikp(p, &g, &t, &b, &sp)),
        "SSOP1" => py.detach(|| solvers::solve_ssop1(p, &g, &t, &sp)),
        "KOP1" => py.detach(|| solvers::solve_kop1(p, &g, &t, &b, &sp)),
        "SSOP2" => py.detach(|| solvers::solve_ssop2(p, &g, &t, &sp)),
        "KOP2" => py.detach(|| solvers::solve_kop2(p, &g, &t, &b, &sp)),
        "SMOP" => py.detach(|| solvers::solve_free_smop(p, &g, &t, &sp)),
        _ => return Err(PyValueError::new_err(format!("unknown problem {problem:?}"))),
    };
    Ok(r.map_err(err)?.into())
}

fn nilpotent_alphabet(group: &str) -> PyResult<(Alphabet, u32)> {
    let letters = |n: u32| -> Vec<String> { (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect() };
    if group == "heisenberg" {
        return Ok((Alphabet::with_names(&["x", "y"]).unwrap(), 0));
    }
    let rank: u32 = group
        .strip_prefix('z')
        .and_then(|d| d.parse().ok())
        .filter(|&d| (1..=26).contains(&d))
        .ok_or_else(|| PyValueError::new_err("group must be 'heisenberg' or 'z<d>' with 1 <= d <= 26"))?;
    Ok((Alphabet::with_names(&letters(rank)).unwrap(), rank))
}

/// Subset sum (or bounded submonoid membership when `m` is given) in the
/// Heisenberg group (letters `x, y`) or `ℤ^d` (`group="z<d>"`, letters
/// `a, b, …`).
#[pyfunction]
#[pyo3(signature = (group, gens, target, m=None))]
fn solve_nilpotent(group: &str, gens: Vec<String>, target: &str, m: Option<usize>) -> PyResult<PyReport> {
    let (a, rank) = nilpotent_alphabet(group)?;
    let (g, t) = parse_all(&a, &gens, target)?;
    fn run<G: GroupOracle>(o: &G, a: &Alphabet, g: &[Word], t: &Word, m: Option<usize>) -> groupknap::Result<SolverReport> {
        match m {
            Some(m) => nilpotent_bsmp(o, a, g, t, m),
            None => nilpotent_ssp(o, a, g, t),
        }
    }
    let r = if rank == 0 { run(&Heisenberg, &a, &g, &t, m) } else { run(&FreeAbelian { rank }, &a, &g, &t, m) };
    Ok(r.map_err(err)?.into())
}

/// Subset sum in `BS(n, sign·n) = ⟨a, t | t⁻¹aⁿt = a^{sign·n}⟩`.
#[pyfunction]
fn solve_bs(n: u32, sign: i8, gens: Vec<String>, target: &str) -> PyResult<PyReport> {
    let a = Alphabet::with_names(&["a", "t"]).unwrap();
    let (g, t) = parse_all(&a, &gens, target)?;
    let params = BsParams::new(n, sign).map_err(err)?;
    Ok(bs_ssp(params, &g, &t).map_err(err)?.into())
}

/// Exhaustive subset sum over a presentation with a normal-form oracle.
/// Returns `(outcome, witness, cost)`.
#[pyfunction]
fn brute_force_ssp(pres: &PyPresentation, gens: Vec<String>, target: &str) -> PyResult<(String, Option<Vec<i64>>, Option<u64>)> {
    let p = &pres.inner;
    let (g, t) = parse_all(p.alphabet(), &gens, target)?;
    let o = p.word_problem().ok_or_else(|| PyValueError::new_err("no word-problem oracle for this presentation"))?;
    let r = brute_ssp(&ElementCheck::new(&o, &t), &g, &Caps::default());
    Ok((r.outcome.as_str().to_string(), r.witness.map(|w| w.values()), r.cost))
}

/// `w = 1` in the group iff `(w, 1)` is a product of at most `n`
/// generators of the fibre-product subgroup; returns
/// `(n, decision, factor indices)`.
#[pyfunction]
fn word_problem_via_membership(pres: &PyPresentation, dehn: Vec<u64>, word: &str) -> PyResult<(u64, String, Option<Vec<i64>>)> {
    let p = &pres.inner;
    let w = p.alphabet().parse(word).map_err(err)?;
    let gens = build_generators(p).map_err(err)?;
    let inst = wp_to_bgwp(p, &dehn, &w).map_err(err)?;
    let (r, _) = bgwp_bruteforce(&gens, &inst.target, inst.n, &BgwpBudget::default());
    Ok((inst.n, r.decision.as_str().to_string(), r.witness.map(|w| w.values())))
}

/// Zero-one equation `A·x = 1`: a solution by enumeration, if any.
#[pyfunction]
fn solve_zoe(rows: Vec<Vec<u8>>) -> PyResult<Option<Vec<u32>>> {
    let x = ZoeInstance::new(rows).map_err(err)?.brute_solve();
    Ok(x.map(|x| x.into_iter().map(u32::from).collect()))
}

/// Binary subset sum rewritten as subset sum in `BS(1,2)`; returns the
/// generator words and target in letters `a, t`.
#[pyfunction]
fn binary_ssp_words(numbers: Vec<u64>, target: u64) -> (Vec<String>, String) {
    let a = Alphabet::with_names(&["a", "t"]).unwrap();
    let bits: Vec<Vec<bool>> = numbers.iter().map(|&v| to_bits(v)).collect();
    let (g, t) = binary_ssp_to_bs12(&bits, &to_bits(target));
    (g.iter().map(|w| a.format(w)).collect(), a.format(&t))
}

#[pymodule]
fn pygroupknap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_nilpotent, m)?)?;
    m.add_function(wrap_pyfunction!(solve_bs, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_ssp, m)?)?;
    m.add_function(wrap_pyfunction!(word_problem_via_membership, m)?)?;
    m.add_function(wrap_pyfunction!(solve_zoe, m)?)?;
    m.add_function(wrap_pyfunction!(binary_ssp_words, m)?)?;
    Ok(())
}
