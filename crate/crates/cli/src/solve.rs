//! `groupknap solve`: dispatch by group and problem kind.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use groupknap::automata::{
    build_bsmp_graph, build_free_smp_graph, build_knapsack_graph, build_kop1_graph, build_kop2_graph,
    build_ssp_graph, saturate, Multiplicity, PricedAutomaton, SaturationParams,
};
use groupknap::mikhailova::{bgwp_bruteforce, build_generators, wp_to_bgwp, BgwpBudget, PairWord};
use groupknap::oracles::{FreeAbelian, GroupOracle, Heisenberg};
use groupknap::reductions::{bkp_to_ssp, ikp_to_kp, ssp_witness_to_bkp};
use groupknap::solve::{self, Decision, KpBoundConfig, SolverReport, Witness};
use groupknap::special::{bs_ssp, nilpotent_bsmp, nilpotent_ssp, PowerEdgeGraph};
use groupknap::{Alphabet, Presentation, Word};
use num_bigint::BigUint;

use crate::error::CliError;
use crate::instance::{Group, InstanceFile, Problem, ProblemKind};

pub struct SolveOptions {
    pub params: SaturationParams,
    pub bound: KpBoundConfig,
    pub dump_graph: Option<std::path::PathBuf>,
}

const SUPPORTED: &str = "supported pairs: free/hyperbolic with SSP, SSOP, SSOP1, KOP1, KP, KOP, IKP, BKP, BSMP, WP; \
free with SSOP2, KOP2, SMOP; free_abelian/heisenberg with SSP, SSOP, BKP, BSMP; bs with SSP, SSOP, BKP; \
fxf with BGWP, WP; any group with ZOE, BINSSP";

fn unsupported(g: &Group, k: ProblemKind) -> CliError {
    CliError::unsupported(format!("no solver for {} over group kind {}; {SUPPORTED}", k.name(), g.kind()))
}

fn m_of(p: &Problem) -> Result<usize, CliError> {
    let m = p.m.ok_or_else(|| CliError::input(format!("{} requires key `m`", p.kind.name())))?;
    usize::try_from(m).map_err(|_| CliError::input("m is too large"))
}

pub fn run(inst: &InstanceFile, opts: &SolveOptions) -> Result<SolverReport, CliError> {
    let p = &inst.problem;
    let report = match (&inst.group, p.kind) {
        (_, ProblemKind::Zoe) => zoe(p),
        (_, ProblemKind::BinSsp) => binary_subset_sum(p),
        (Group::Free(pres) | Group::Hyperbolic(pres), _) => hyperbolic(pres, p, opts)?,
        (Group::FreeAbelian(a), _) => nilpotent(&FreeAbelian { rank: a.size() }, a, p, &inst.group)?,
        (Group::Heisenberg(a), _) => nilpotent(&Heisenberg, a, p, &inst.group)?,
        (Group::Bs { params, .. }, ProblemKind::Ssp | ProblemKind::Ssop | ProblemKind::Bkp) => {
            let (gens, m) = match p.kind {
                ProblemKind::Bkp => (bkp_to_ssp(&p.gens, m_of(p)?), Some(m_of(p)?)),
                _ => (p.gens.clone(), None),
            };
            if let Some(path) = &opts.dump_graph {
                let mut g = PowerEdgeGraph::build(*params, &gens, &p.target);
                g.saturate();
                write_file(path, |out| {
                    writeln!(out, "# states {}", g.state_count())?;
                    writeln!(out, "# initial 0")?;
                    writeln!(out, "# finals {}", g.final_state())?;
                    for (s, label, t, price) in g.edges() {
                        let l = match label {
                            groupknap::special::BsLabel::A(0) => "1".to_string(),
                            groupknap::special::BsLabel::A(c) => format!("a^{c}"),
                            groupknap::special::BsLabel::T(1) => "t".to_string(),
                            groupknap::special::BsLabel::T(_) => "T".to_string(),
                        };
                        writeln!(out, "{s} {l} {t} {price}")?;
                    }
                    Ok(())
                })?;
            }
            let mut r = bs_ssp(*params, &gens, &p.target)?;
            if let (Some(m), Some(Witness::Exponents(v))) = (m, &r.witness) {
                r.witness = Some(Witness::Exponents(ssp_witness_to_bkp(v, p.gens.len(), m)));
            }
            r
        }
        (Group::Fxf { presentation, dehn }, ProblemKind::Bgwp | ProblemKind::Wp) => {
            let gens = build_generators(presentation)?;
            let (target, n) = if p.kind == ProblemKind::Wp {
                let dehn = dehn.as_ref().ok_or_else(|| CliError::input("WP over fxf requires `dehn` in [group]"))?;
                let inst = wp_to_bgwp(presentation, dehn, &p.target)?;
                (inst.target, inst.n)
            } else {
                (PairWord::new(p.target.clone(), p.target_right.clone()), p.m.unwrap_or(0))
            };
            let (mut r, method) = bgwp_bruteforce(&gens, &target, n, &BgwpBudget::default());
            r.bound_used = Some(n);
            let how = format!("{method:?}");
            r.note = Some(match r.note.take() {
                Some(n) => format!("{n} ({how})"),
                None => how,
            });
            r
        }
        (g, k) => return Err(unsupported(g, k)),
    };
    Ok(report)
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    f(&mut out).and_then(|_| out.flush()).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

fn dump(pres: &Presentation, g: &PricedAutomaton, l: usize, opts: &SolveOptions) -> Result<(), CliError> {
    let Some(path) = &opts.dump_graph else { return Ok(()) };
    let required = pres.known_completion_depth().or(opts.params.proven_depth);
    let (h, _) = saturate(g, pres.symmetrized(), &opts.params, l, required)?;
    let alphabet = pres.alphabet();
    write_file(path, |out| h.dump(out, Some(alphabet)))
}

fn len_of(p: &Problem) -> usize {
    p.gens.iter().map(Word::len).sum::<usize>() + p.target.len()
}

fn hyperbolic(pres: &Presentation, p: &Problem, opts: &SolveOptions) -> Result<SolverReport, CliError> {
    let params = &opts.params;
    let bound = &opts.bound;
    let (gens, target) = (&p.gens, &p.target);
    let l = len_of(p);
    let free = pres.is_free();
    Ok(match p.kind {
        ProblemKind::Ssp | ProblemKind::Ssop => {
            dump(pres, &build_ssp_graph(gens, target), l, opts)?;
            solve::solve_ssp(pres, gens, target, params)?
        }
        ProblemKind::Wp => {
            dump(pres, &build_ssp_graph(&[], target), l, opts)?;
            solve::solve_ssp(pres, &[], target, params)?
        }
        ProblemKind::Bkp => {
            let m = m_of(p)?;
            dump(pres, &build_ssp_graph(&bkp_to_ssp(gens, m), target), l, opts)?;
            solve::solve_bkp(pres, gens, target, m, params)?
        }
        ProblemKind::Bsmp => {
            let m = m_of(p)?;
            dump(pres, &build_bsmp_graph(gens, target, m), l, opts)?;
            solve::solve_bsmp(pres, gens, target, m, params)?
        }
        ProblemKind::Kp | ProblemKind::Kop => {
            dump(pres, &build_knapsack_graph(gens, target), l, opts)?;
            solve::solve_kp(pres, gens, target, bound, params)?
        }
        ProblemKind::Ikp => {
            dump(pres, &build_knapsack_graph(&ikp_to_kp(gens), target), l, opts)?;
            solve::solve_ikp(pres, gens, target, bound, params)?
        }
        ProblemKind::Smop if free => {
            dump(pres, &build_free_smp_graph(gens, target), l, opts)?;
            solve::solve_free_smop(pres, gens, target, params)?
        }
        ProblemKind::Ssop1 | ProblemKind::Kop1 => {
            let (mult, r) = if p.kind == ProblemKind::Ssop1 {
                (Multiplicity::Once, solve::solve_ssop1(pres, gens, target, params)?)
            } else {
                (Multiplicity::Unbounded, solve::solve_kop1(pres, gens, target, bound, params)?)
            };
            let radius = dump_radius(p, &r, target.len());
            dump(pres, &build_kop1_graph(gens, target, radius, pres.alphabet(), mult), l + radius, opts)?;
            within_radius(r, p.radius)
        }
        ProblemKind::Ssop2 | ProblemKind::Kop2 if free => {
            let (mult, r) = if p.kind == ProblemKind::Ssop2 {
                (Multiplicity::Once, solve::solve_ssop2(pres, gens, target, params)?)
            } else {
                (Multiplicity::Unbounded, solve::solve_kop2(pres, gens, target, bound, params)?)
            };
            let radius = dump_radius(p, &r, target.free_reduce().len());
            dump(pres, &build_kop2_graph(gens, target, radius, mult).0, l, opts)?;
            within_radius(r, p.radius)
        }
        k => return Err(unsupported(&if free { Group::Free(pres.clone()) } else { Group::Hyperbolic(pres.clone()) }, k)),
    })
}

fn dump_radius(p: &Problem, r: &SolverReport, max: usize) -> usize {
    let found = r.cost_u64().map(|c| c as usize).unwrap_or(max);
    p.radius.map(|n| n as usize).unwrap_or(found).min(max)
}

/// With `N` given, the question becomes whether the optimum is at most `N`.
fn within_radius(mut r: SolverReport, radius: Option<u64>) -> SolverReport {
    let Some(n) = radius else { return r };
    if r.decision == Decision::Yes && r.cost_u64().is_some_and(|c| c > n) {
        let best = r.cost_u64().unwrap();
        r = SolverReport {
            note: Some(format!("minimal distance is {best}, above N = {n}")),
            stats: r.stats,
            bound_used: r.bound_used,
            ..SolverReport::new(Decision::No)
        };
    }
    r
}

fn nilpotent<G: GroupOracle>(
    oracle: &G,
    alphabet: &Alphabet,
    p: &Problem,
    group: &Group,
) -> Result<SolverReport, CliError> {
    Ok(match p.kind {
        ProblemKind::Ssp | ProblemKind::Ssop => nilpotent_ssp(oracle, alphabet, &p.gens, &p.target)?,
        ProblemKind::Bsmp => nilpotent_bsmp(oracle, alphabet, &p.gens, &p.target, m_of(p)?)?,
        ProblemKind::Bkp => {
            let m = m_of(p)?;
            let mut r = nilpotent_ssp(oracle, alphabet, &bkp_to_ssp(&p.gens, m), &p.target)?;
            if let Some(Witness::Exponents(v)) = &r.witness {
                r.witness = Some(Witness::Exponents(ssp_witness_to_bkp(v, p.gens.len(), m)));
            }
            r
        }
        k => return Err(unsupported(group, k)),
    })
}

fn zoe(p: &Problem) -> SolverReport {
    let z = p.matrix.as_ref().expect("parser requires a matrix");
    match z.brute_solve() {
        Some(x) => {
            let verified = z.is_solution(&x);
            let cost = BigUint::from(x.iter().map(|&v| v as u64).sum::<u64>());
            SolverReport::yes(Witness::Exponents(x.iter().map(|&v| v as i64).collect()), cost, verified)
        }
        None => SolverReport::no(),
    }
}

/// Exact subset sum over naturals by enumeration of subsets in
/// increasing size.
fn binary_subset_sum(p: &Problem) -> SolverReport {
    let target = p.target_number.unwrap_or(0);
    let k = p.numbers.len();
    assert!(k < 32, "subset sum enumeration limited to fewer than 32 numbers");
    let best = (0u32..1 << k)
        .filter(|bits| {
            (0..k).filter(|&j| (bits >> j) & 1 == 1).map(|j| p.numbers[j] as u128).sum::<u128>() == target as u128
        })
        .min_by_key(|bits| (bits.count_ones(), *bits));
    match best {
        Some(bits) => {
            let x: Vec<i64> = (0..k).map(|j| ((bits >> j) & 1) as i64).collect();
            SolverReport::yes(Witness::Exponents(x), BigUint::from(bits.count_ones()), true)
        }
        None => SolverReport::no(),
    }
}
