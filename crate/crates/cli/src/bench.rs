//! `groupknap bench`: seeded random subset-sum instances, one CSV row each.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use groupknap::automata::SaturationParams;
use groupknap::solve::solve_ssp;
use groupknap::{Alphabet, Letter, Presentation, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// The free group of rank 2.
    Free,
    /// `⟨a, b | a², b³⟩`.
    Cyclic,
}

pub struct BenchOptions {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub max_k: usize,
    pub max_len: usize,
    pub jobs: usize,
    pub timing: bool,
    pub params: SaturationParams,
}

struct Row {
    l: usize,
    rounds_needed: u32,
    states: u64,
    edges: u64,
    millis: u64,
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| Letter::new(rng.gen_range(0..2), if rng.gen() { 1 } else { -1 })).collect())
}

/// Instances drawn in order from one seeded stream; half of the targets
/// are products of a random subset, so both answers occur.
fn instances(opts: &BenchOptions) -> Vec<(Vec<Word>, Word)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    (0..opts.count)
        .map(|_| {
            let k = rng.gen_range(1..=opts.max_k.max(1));
            let gens: Vec<Word> = (0..k).map(|_| random_word(&mut rng, opts.max_len)).collect();
            let target = if rng.gen() {
                let mut t = Word::empty();
                for g in &gens {
                    if rng.gen() {
                        t = t.concat(g);
                    }
                }
                t
            } else {
                random_word(&mut rng, opts.max_len)
            };
            (gens, target)
        })
        .collect()
}

fn presentation(suite: Suite) -> Presentation {
    let a = Alphabet::with_names(&["a", "b"]).expect("fixed names");
    match suite {
        Suite::Free => Presentation::free(a),
        Suite::Cyclic => {
            let rels = vec![a.parse("aa").unwrap(), a.parse("bbb").unwrap()];
            Presentation::new(a, rels).expect("valid relators")
        }
    }
}

pub fn run(opts: &BenchOptions) -> Result<String, CliError> {
    opts.params.validate()?;
    let pres = presentation(opts.suite);
    let work = instances(opts);
    let rows: Mutex<Vec<Option<Result<Row, CliError>>>> = Mutex::new((0..work.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..opts.jobs.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((gens, target)) = work.get(i) else { break };
                let started = Instant::now();
                let row = solve_ssp(&pres, gens, target, &opts.params).map_err(CliError::from).map(|r| {
                    let millis = if opts.timing { started.elapsed().as_millis() as u64 } else { 0 };
                    Row {
                        l: gens.iter().map(Word::len).sum::<usize>() + target.len(),
                        // folding passes until the deciding edge appeared
                        rounds_needed: r.stats.rounds_needed.map_or(r.stats.rounds, |c| c + 1),
                        states: r.stats.states,
                        edges: r.stats.edges,
                        millis,
                    }
                });
                rows.lock().unwrap()[i] = Some(row);
            });
        }
    });
    let mut out = String::from("l,rounds_needed,states,edges,millis\n");
    for row in rows.into_inner().unwrap() {
        let r = row.expect("every instance ran")?;
        let _ = writeln!(out, "{},{},{},{},{}", r.l, r.rounds_needed, r.states, r.edges, r.millis);
    }
    Ok(out)
}
