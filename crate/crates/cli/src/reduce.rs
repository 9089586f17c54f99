//! `groupknap reduce`: rewrite an instance into another problem kind.

use groupknap::mikhailova::wp_to_bgwp;
use groupknap::reductions::{binary_ssp_to_bs12, bkp_to_ssp, bsmp_to_ssop, ikp_to_kp, to_bits, zoe_to_ssp};
use groupknap::{Alphabet, Word};

use crate::error::CliError;
use crate::instance::{group_lines, join_nums, render, word_list as words, Group, InstanceFile, ProblemKind};

pub const PAIRS: [(&str, &str); 6] = [
    ("bkp", "ssp"),
    ("bsmp", "ssop"),
    ("ikp", "kp"),
    ("zoe", "ssp-zomega"),
    ("binssp", "bs12"),
    ("wp", "bgwp"),
];

fn expect_kind(inst: &InstanceFile, kind: ProblemKind) -> Result<(), CliError> {
    if inst.problem.kind != kind {
        return Err(CliError::input(format!(
            "--from {} needs a {} instance, found {}",
            kind.name().to_ascii_lowercase(),
            kind.name(),
            inst.problem.kind.name()
        )));
    }
    Ok(())
}

pub fn run(inst: &InstanceFile, from: &str, to: &str) -> Result<String, CliError> {
    let p = &inst.problem;
    let source = format!("{from} -> {to}");
    let alphabet = || inst.group.alphabet().expect("word problems carry a group");
    let m_of = || p.m.map(|m| m as usize).ok_or_else(|| CliError::input("missing m"));
    let text = match (from, to) {
        ("bkp", "ssp") => {
            expect_kind(inst, ProblemKind::Bkp)?;
            let m = m_of()?;
            let a = alphabet();
            render(
                &group_lines(&inst.group),
                &[
                    ("kind", "SSP".into()),
                    ("gens", words(a, &bkp_to_ssp(&p.gens, m))),
                    ("target", a.format(&p.target)),
                ],
                &[
                    ("reduction", source),
                    ("source_k", p.gens.len().to_string()),
                    ("m", m.to_string()),
                    ("witness_map", "eps_i = sum of entries i*m .. i*m+m-1 (0-based blocks of m copies of w_i)".into()),
                ],
            )
        }
        ("bsmp", "ssop") => {
            expect_kind(inst, ProblemKind::Bsmp)?;
            let m = m_of()?;
            let a = alphabet();
            render(
                &group_lines(&inst.group),
                &[
                    ("kind", "SSOP".into()),
                    ("gens", words(a, &bsmp_to_ssop(&p.gens, m))),
                    ("target", a.format(&p.target)),
                ],
                &[
                    ("reduction", source),
                    ("source_k", p.gens.len().to_string()),
                    ("m", m.to_string()),
                    ("witness_map", "chosen entries j, in increasing order, give factors j mod k; yes iff the minimal cost is at most m".into()),
                ],
            )
        }
        ("ikp", "kp") => {
            expect_kind(inst, ProblemKind::Ikp)?;
            let a = alphabet();
            render(
                &group_lines(&inst.group),
                &[
                    ("kind", "KP".into()),
                    ("gens", words(a, &ikp_to_kp(&p.gens))),
                    ("target", a.format(&p.target)),
                ],
                &[
                    ("reduction", source),
                    ("source_k", p.gens.len().to_string()),
                    ("witness_map", "eps_i = x_(2i) - x_(2i+1)".into()),
                ],
            )
        }
        ("zoe", "ssp-zomega") => {
            expect_kind(inst, ProblemKind::Zoe)?;
            let z = p.matrix.as_ref().expect("parser requires a matrix");
            let n = z.n();
            let (gens, target) = zoe_to_ssp(z);
            let a = Alphabet::new(n as u32).map_err(CliError::from)?;
            let as_word = |e: &groupknap::reductions::ZOmegaElement| {
                let mut pairs = Vec::new();
                for (i, c) in e.support() {
                    let sign = if c > 0 { 1 } else { -1 };
                    pairs.extend(std::iter::repeat((i as u32, sign)).take(c.unsigned_abs() as usize));
                }
                Word::from_pairs(&pairs)
            };
            let gen_words: Vec<Word> = gens.iter().map(as_word).collect();
            let codes: Vec<String> = gens.iter().map(|g| g.encode()).collect();
            render(
                &group_lines(&Group::FreeAbelian(a.clone())),
                &[("kind", "SSP".into()), ("gens", words(&a, &gen_words)), ("target", a.format(&as_word(&target)))],
                &[
                    ("reduction", source),
                    ("n", n.to_string()),
                    ("gen_codes", codes.join(", ")),
                    ("target_code", target.encode()),
                    ("witness_map", "x_j = eps_j (generator j is column j of the matrix)".into()),
                ],
            )
        }
        ("binssp", "bs12") => {
            expect_kind(inst, ProblemKind::BinSsp)?;
            let numbers: Vec<Vec<bool>> = p.numbers.iter().map(|&v| to_bits(v)).collect();
            let t = p.target_number.unwrap_or(0);
            let (gens, target) = binary_ssp_to_bs12(&numbers, &to_bits(t));
            let g = Group::Bs12(Alphabet::with_names(&["a", "t"]).expect("fixed names"));
            let a = g.alphabet().unwrap().clone();
            render(
                &group_lines(&g),
                &[("kind", "SSP".into()), ("gens", words(&a, &gens)), ("target", a.format(&target))],
                &[
                    ("reduction", source),
                    ("numbers", join_nums(&p.numbers)),
                    ("target_number", t.to_string()),
                    ("witness_map", "eps_i unchanged; bit n of a number becomes T^n a t^n = a^(2^n)".into()),
                ],
            )
        }
        ("wp", "bgwp") => {
            expect_kind(inst, ProblemKind::Wp)?;
            let Group::Fxf { presentation, dehn } = &inst.group else {
                return Err(CliError::unsupported("wp -> bgwp needs an fxf group"));
            };
            let dehn = dehn.as_ref().ok_or_else(|| CliError::input("wp -> bgwp needs `dehn` in [group]"))?;
            let b = wp_to_bgwp(presentation, dehn, &p.target)?;
            let a = presentation.alphabet();
            render(
                &group_lines(&inst.group),
                &[
                    ("kind", "BGWP".into()),
                    ("target", a.format(&b.target.left)),
                    ("target_right", a.format(&b.target.right)),
                    ("m", b.n.to_string()),
                ],
                &[
                    ("reduction", source),
                    ("witness_map", "w = 1 in G iff (w, 1) is a product of at most m generators of the fibre product".into()),
                ],
            )
        }
        _ => {
            let list: Vec<String> = PAIRS.iter().map(|(f, t)| format!("{f}->{t}")).collect();
            return Err(CliError::unsupported(format!(
                "unsupported reduction {from} -> {to}; supported: {}",
                list.join(", ")
            )));
        }
    };
    Ok(text)
}
