//! `groupknap oracle`: exhaustive search with explicit caps.

use groupknap::mikhailova::{bgwp_bruteforce, build_generators, wp_to_bgwp, BgwpBudget, BgwpMethod, PairWord};
use groupknap::oracles::{
    brute_bkp, brute_bsmp, brute_free_distance, brute_free_segment, brute_ikp, brute_kp, brute_ssp,
    Bs12Affine, BruteReport, Caps, ElementCheck, FreeAbelian, FreeGroup, Heisenberg, Outcome, ProductCheck,
    WordCheck,
};
use groupknap::solve::{Decision, Witness};
use groupknap::Word;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::instance::{Group, InstanceFile, Problem, ProblemKind};

pub fn run(inst: &InstanceFile, caps: &Caps) -> Result<(Decision, Value), CliError> {
    let p = &inst.problem;
    let report = match (&inst.group, p.kind) {
        (_, ProblemKind::Zoe) => {
            let z = p.matrix.as_ref().expect("parser requires a matrix");
            let x = z.brute_solve();
            let cost = x.as_ref().map(|x| x.iter().map(|&v| v as u64).sum());
            BruteReport {
                outcome: if x.is_some() { Outcome::Yes } else { Outcome::No },
                witness: x.map(|x| Witness::Exponents(x.into_iter().map(i64::from).collect())),
                cost,
                explored: 1 << z.n(),
            }
        }
        (_, ProblemKind::BinSsp) => subset_sum(p, caps),
        (Group::Fxf { presentation, dehn }, ProblemKind::Bgwp | ProblemKind::Wp) => {
            let gens = build_generators(presentation)?;
            let (target, n) = if p.kind == ProblemKind::Wp {
                let dehn = dehn.as_ref().ok_or_else(|| CliError::input("WP over fxf requires `dehn` in [group]"))?;
                let i = wp_to_bgwp(presentation, dehn, &p.target)?;
                (i.target, i.n)
            } else {
                (PairWord::new(p.target.clone(), p.target_right.clone()), p.m.unwrap_or(0))
            };
            let budget = BgwpBudget { max_pairs: caps.max_nodes.min(usize::MAX as u64) as usize, ..BgwpBudget::default() };
            let (r, method) = bgwp_bruteforce(&gens, &target, n, &budget);
            let outcome = match (r.decision, method) {
                (Decision::Yes, _) => Outcome::Yes,
                (Decision::No, _) => Outcome::No,
                (_, BgwpMethod::BudgetExhausted) | (Decision::Unknown, _) => Outcome::CapExceeded,
            };
            BruteReport { outcome, cost: r.cost_u64(), witness: r.witness, explored: 0 }
        }
        (Group::Free(_), k @ (ProblemKind::Ssop1 | ProblemKind::Kop1 | ProblemKind::Ssop2 | ProblemKind::Kop2)) => {
            distance(p, k, caps)
        }
        (Group::Free(pres), _) => with_check(&FreeGroup { rank: pres.alphabet().size() }, p, caps)?,
        (Group::Hyperbolic(pres), _) => match pres.word_problem() {
            Some(o) => with_check(&o, p, caps)?,
            None => {
                return Err(CliError::unsupported(
                    "no word-problem oracle for this presentation; oracles cover free products of cyclic groups",
                ))
            }
        },
        (Group::FreeAbelian(a), _) => with_check(&FreeAbelian { rank: a.size() }, p, caps)?,
        (Group::Heisenberg(_), _) => with_check(&Heisenberg, p, caps)?,
        (Group::Bs12(_), _) => with_check(&Bs12Affine, p, caps)?,
        (Group::Bs { params, .. }, _) => {
            let o = params.oracle();
            let run = |t: &Word| WordCheck::new(&o, t);
            dispatch(&run(&p.target), p, caps)?
        }
        (g, k) => {
            return Err(CliError::unsupported(format!(
                "no oracle for {} over group kind {}",
                k.name(),
                g.kind()
            )))
        }
    };
    let decision = match report.outcome {
        Outcome::Yes => Decision::Yes,
        Outcome::No => Decision::No,
        _ => Decision::Unknown,
    };
    let value = json!({
        "problem": p.kind.name(),
        "group": inst.group.kind(),
        "outcome": report.outcome.as_str(),
        "decision": decision.as_str(),
        "witness": report.witness.as_ref().map(Witness::values),
        "cost": report.cost.map(|c| c.to_string()),
        "explored": report.explored,
        "caps": {"max_exp": caps.max_exp, "max_len": caps.max_len, "max_nodes": caps.max_nodes},
    });
    Ok((decision, value))
}

fn with_check<G: groupknap::oracles::GroupOracle>(o: &G, p: &Problem, caps: &Caps) -> Result<BruteReport, CliError> {
    dispatch(&ElementCheck::new(o, &p.target), p, caps)
}

fn dispatch<C: ProductCheck>(check: &C, p: &Problem, caps: &Caps) -> Result<BruteReport, CliError> {
    let gens = &p.gens;
    Ok(match p.kind {
        ProblemKind::Ssp | ProblemKind::Ssop => brute_ssp(check, gens, caps),
        ProblemKind::Wp => brute_ssp(check, &[], caps),
        ProblemKind::Bkp => brute_bkp(check, gens, p.m.unwrap_or(0), caps),
        ProblemKind::Kp | ProblemKind::Kop => brute_kp(check, gens, caps),
        ProblemKind::Ikp => brute_ikp(check, gens, caps),
        ProblemKind::Bsmp => {
            let m = p.m.unwrap_or(0) as usize;
            let mut r = brute_bsmp(check, gens, m.min(caps.max_len), caps);
            if m > caps.max_len && r.outcome == Outcome::No {
                r.outcome = Outcome::NoWithinCap;
            }
            r
        }
        k => return Err(CliError::unsupported(format!("no oracle for {} over this group", k.name()))),
    })
}

/// Free-group distance problems; with `N` given, yes iff the minimum is
/// at most `N`.
fn distance(p: &Problem, kind: ProblemKind, caps: &Caps) -> BruteReport {
    let once = matches!(kind, ProblemKind::Ssop1 | ProblemKind::Ssop2);
    let max_exp = if once { 1 } else { caps.max_exp };
    let width = (max_exp + 1) as f64;
    if width.powi(p.gens.len() as i32) > caps.max_nodes as f64 {
        return BruteReport { outcome: Outcome::CapExceeded, witness: None, cost: None, explored: 0 };
    }
    let best = match kind {
        ProblemKind::Ssop1 | ProblemKind::Kop1 => brute_free_distance(&p.gens, &p.target, max_exp),
        _ => brute_free_segment(&p.gens, &p.target, max_exp),
    };
    let within = p.radius.map_or(true, |n| best.distance as u64 <= n);
    let outcome = match (within, once) {
        (true, _) => Outcome::Yes,
        (false, true) => Outcome::No,
        (false, false) => Outcome::NoWithinCap,
    };
    BruteReport {
        outcome,
        witness: within.then(|| Witness::Exponents(best.exponents.clone())),
        cost: within.then_some(best.distance as u64),
        explored: (max_exp + 1).pow(p.gens.len() as u32),
    }
}

fn subset_sum(p: &Problem, caps: &Caps) -> BruteReport {
    let k = p.numbers.len();
    if k >= 64 || (1u64 << k) > caps.max_nodes {
        return BruteReport { outcome: Outcome::CapExceeded, witness: None, cost: None, explored: 0 };
    }
    let target = p.target_number.unwrap_or(0) as u128;
    let best = (0u64..1 << k)
        .filter(|bits| (0..k).filter(|&j| bits >> j & 1 == 1).map(|j| p.numbers[j] as u128).sum::<u128>() == target)
        .min_by_key(|bits| (bits.count_ones(), *bits));
    BruteReport {
        outcome: if best.is_some() { Outcome::Yes } else { Outcome::No },
        witness: best.map(|b| Witness::Exponents((0..k).map(|j| (b >> j & 1) as i64).collect())),
        cost: best.map(|b| b.count_ones() as u64),
        explored: 1 << k,
    }
}
