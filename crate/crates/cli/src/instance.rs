//! Instance files: `[group]`, `[problem]` and optional `[meta]` sections
//! of `key = value` lines. `#` starts a comment.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use groupknap::special::BsParams;
use groupknap::{Alphabet, Presentation, Word};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Ssp,
    Ssop,
    Ssop1,
    Ssop2,
    Kp,
    Ikp,
    Bkp,
    Bsmp,
    Kop,
    Kop1,
    Kop2,
    Smop,
    Bgwp,
    Wp,
    Zoe,
    BinSsp,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 16] = [
        ProblemKind::Ssp,
        ProblemKind::Ssop,
        ProblemKind::Ssop1,
        ProblemKind::Ssop2,
        ProblemKind::Kp,
        ProblemKind::Ikp,
        ProblemKind::Bkp,
        ProblemKind::Bsmp,
        ProblemKind::Kop,
        ProblemKind::Kop1,
        ProblemKind::Kop2,
        ProblemKind::Smop,
        ProblemKind::Bgwp,
        ProblemKind::Wp,
        ProblemKind::Zoe,
        ProblemKind::BinSsp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Ssp => "SSP",
            ProblemKind::Ssop => "SSOP",
            ProblemKind::Ssop1 => "SSOP1",
            ProblemKind::Ssop2 => "SSOP2",
            ProblemKind::Kp => "KP",
            ProblemKind::Ikp => "IKP",
            ProblemKind::Bkp => "BKP",
            ProblemKind::Bsmp => "BSMP",
            ProblemKind::Kop => "KOP",
            ProblemKind::Kop1 => "KOP1",
            ProblemKind::Kop2 => "KOP2",
            ProblemKind::Smop => "SMOP",
            ProblemKind::Bgwp => "BGWP",
            ProblemKind::Wp => "WP",
            ProblemKind::Zoe => "ZOE",
            ProblemKind::BinSsp => "BINSSP",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Debug)]
pub enum Group {
    Free(Presentation),
    FreeAbelian(Alphabet),
    Heisenberg(Alphabet),
    Hyperbolic(Presentation),
    Bs { params: BsParams, alphabet: Alphabet },
    /// `BS(1,2) = ⟨a, t | t⁻¹ a t = a²⟩`, reached only through the
    /// binary subset-sum reduction; no polynomial solver applies.
    Bs12(Alphabet),
    Fxf { presentation: Presentation, dehn: Option<Vec<u64>> },
    /// No group section: the problem carries its own data.
    Unspecified,
}

impl Group {
    pub fn kind(&self) -> &'static str {
        match self {
            Group::Free(_) => "free",
            Group::FreeAbelian(_) => "free_abelian",
            Group::Heisenberg(_) => "heisenberg",
            Group::Hyperbolic(_) => "hyperbolic",
            Group::Bs { .. } => "bs",
            Group::Bs12(_) => "bs12",
            Group::Fxf { .. } => "fxf",
            Group::Unspecified => "none",
        }
    }

    pub fn alphabet(&self) -> Option<&Alphabet> {
        match self {
            Group::Free(p) | Group::Hyperbolic(p) => Some(p.alphabet()),
            Group::Fxf { presentation, .. } => Some(presentation.alphabet()),
            Group::FreeAbelian(a) | Group::Heisenberg(a) | Group::Bs12(a) | Group::Bs { alphabet: a, .. } => Some(a),
            Group::Unspecified => None,
        }
    }
}

/// A value with the place it came from, for error messages.
#[derive(Clone, Debug)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub kind: ProblemKind,
    pub gens: Vec<Word>,
    pub target: Word,
    /// Right component of a BGWP target.
    pub target_right: Word,
    pub m: Option<u64>,
    pub radius: Option<u64>,
    pub matrix: Option<groupknap::reductions::ZoeInstance>,
    pub numbers: Vec<u64>,
    pub target_number: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct InstanceFile {
    pub group: Group,
    pub problem: Problem,
}

struct Section {
    entries: Vec<(String, Located)>,
    header_line: usize,
}

impl Section {
    fn get(&self, key: &str) -> Option<&Located> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn require(&self, key: &str, what: &str) -> Result<&Located, CliError> {
        self.get(key).ok_or_else(|| {
            CliError::input(format!("line {}: {what} requires key `{key}`", self.header_line))
        })
    }
}

fn at(v: &Located, offset: usize, message: impl std::fmt::Display) -> CliError {
    CliError::input(format!("line {}, column {}: {message}", v.line, v.column + offset))
}

fn parse_nat(v: &Located) -> Result<u64, CliError> {
    v.text.trim().parse().map_err(|_| at(v, 0, format!("expected a natural number, found {:?}", v.text)))
}

fn parse_list(v: &Located) -> Vec<(String, usize)> {
    if v.text.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in v.text.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        out.push((piece.trim().to_string(), offset + lead));
        offset += piece.len() + 1;
    }
    out
}

fn parse_word(alphabet: &Alphabet, v: &Located, text: &str, offset: usize) -> Result<Word, CliError> {
    alphabet.parse(text).map_err(|e| match e {
        groupknap::Error::Parse { position, message } => at(v, offset + position, message),
        other => at(v, offset, other),
    })
}

fn parse_presentation(v: &Located) -> Result<Presentation, CliError> {
    Presentation::parse(&v.text).map_err(|e| match e {
        groupknap::Error::Parse { position, message } => at(v, position, message),
        other => at(v, 0, other),
    })
}

fn default_names(n: u32) -> Result<Alphabet, CliError> {
    Alphabet::new(n).map_err(|e| CliError::input(e.to_string()))
}

fn named(list: &[&str]) -> Alphabet {
    Alphabet::with_names(list).expect("fixed names are valid")
}

fn free_alphabet(s: &Section) -> Result<Alphabet, CliError> {
    if let Some(v) = s.get("generators") {
        let names: Vec<String> = parse_list(v).into_iter().map(|(n, _)| n).collect();
        return Alphabet::with_names(&names).map_err(|e| at(v, 0, e));
    }
    let v = s.require("rank", "this group kind")?;
    let rank = parse_nat(v)?;
    if rank == 0 || rank > u32::MAX as u64 {
        return Err(at(v, 0, "rank must be positive"));
    }
    default_names(rank as u32)
}

fn parse_coefficients(v: &Located) -> Result<Vec<u64>, CliError> {
    parse_list(v)
        .into_iter()
        .map(|(c, off)| c.parse().map_err(|_| at(v, off, format!("bad coefficient {c:?}"))))
        .collect()
}

fn read_group(s: Option<&Section>) -> Result<Group, CliError> {
    let Some(s) = s else { return Ok(Group::Unspecified) };
    let kind = s.require("kind", "[group]")?;
    Ok(match kind.text.as_str() {
        "free" => Group::Free(Presentation::free(free_alphabet(s)?)),
        "free_abelian" => Group::FreeAbelian(free_alphabet(s)?),
        "heisenberg" => Group::Heisenberg(named(&["x", "y"])),
        "hyperbolic" => Group::Hyperbolic(parse_presentation(s.require("presentation", "hyperbolic")?)?),
        "bs" => {
            let nv = s.require("n", "bs")?;
            let n = parse_nat(nv)?;
            let sign = match s.get("sign").map(|v| (v, v.text.trim())) {
                None | Some((_, "1" | "+1" | "+")) => 1,
                Some((_, "-1" | "-")) => -1,
                Some((v, other)) => return Err(at(v, 0, format!("sign must be +1 or -1, found {other:?}"))),
            };
            let params = BsParams::new(n.try_into().unwrap_or(0), sign).map_err(|e| at(nv, 0, e))?;
            Group::Bs { params, alphabet: named(&["a", "t"]) }
        }
        "bs12" => Group::Bs12(named(&["a", "t"])),
        "fxf" => {
            let presentation = parse_presentation(s.require("presentation", "fxf")?)?;
            let dehn = s.get("dehn").map(parse_coefficients).transpose()?;
            Group::Fxf { presentation, dehn }
        }
        other => {
            return Err(at(
                kind,
                0,
                format!("unknown group kind {other:?}; expected free, free_abelian, heisenberg, hyperbolic, bs, bs12 or fxf"),
            ))
        }
    })
}

fn read_matrix(v: &Located, base: &Path) -> Result<groupknap::reductions::ZoeInstance, CliError> {
    use groupknap::reductions::ZoeInstance;
    let text = v.text.trim();
    let contents = if text.contains(';') || text.chars().all(|c| c == '0' || c == '1' || c == ' ') {
        // inline rows separated by `;`
        let rows: Vec<String> = text
            .split(';')
            .map(|r| {
                let r = r.trim();
                if r.contains(char::is_whitespace) {
                    r.to_string()
                } else {
                    r.chars().map(String::from).collect::<Vec<_>>().join(" ")
                }
            })
            .collect();
        format!("{}\n{}\n", rows.len(), rows.join("\n"))
    } else {
        let path = base.join(text);
        std::fs::read_to_string(&path)
            .map_err(|e| at(v, 0, format!("cannot read matrix file {}: {e}", path.display())))?
    };
    ZoeInstance::parse(&contents).map_err(|e| at(v, 0, e))
}

fn read_problem(s: &Section, group: &Group, base: &Path) -> Result<Problem, CliError> {
    let kind_v = s.require("kind", "[problem]")?;
    let kind = ProblemKind::parse(kind_v.text.trim()).ok_or_else(|| {
        let names: Vec<_> = ProblemKind::ALL.iter().map(|k| k.name()).collect();
        at(kind_v, 0, format!("unknown problem kind {:?}; expected one of {}", kind_v.text, names.join(", ")))
    })?;
    let mut p = Problem {
        kind,
        gens: Vec::new(),
        target: Word::empty(),
        target_right: Word::empty(),
        m: s.get("m").map(parse_nat).transpose()?,
        radius: s.get("N").map(parse_nat).transpose()?,
        matrix: None,
        numbers: Vec::new(),
        target_number: None,
    };
    match kind {
        ProblemKind::Zoe => {
            p.matrix = Some(read_matrix(s.require("matrix", "ZOE")?, base)?);
            return Ok(p);
        }
        ProblemKind::BinSsp => {
            let v = s.require("numbers", "BINSSP")?;
            p.numbers = parse_coefficients(v)?;
            p.target_number = Some(parse_nat(s.require("target", "BINSSP")?)?);
            return Ok(p);
        }
        _ => {}
    }
    let alphabet = group.alphabet().ok_or_else(|| {
        CliError::input(format!("problem {} needs a [group] section", kind.name()))
    })?;
    if let Some(v) = s.get("gens") {
        for (text, off) in parse_list(v) {
            p.gens.push(parse_word(alphabet, v, &text, off)?);
        }
    } else if kind != ProblemKind::Bgwp && kind != ProblemKind::Wp {
        return Err(CliError::input(format!("line {}: {} requires key `gens`", s.header_line, kind.name())));
    }
    let tv = s.require("target", kind.name())?;
    let lead = tv.text.len() - tv.text.trim_start().len();
    p.target = parse_word(alphabet, tv, tv.text.trim(), lead)?;
    if let Some(v) = s.get("target_right") {
        p.target_right = parse_word(alphabet, v, v.text.trim(), 0)?;
    }
    let needs_m = matches!(kind, ProblemKind::Bkp | ProblemKind::Bsmp | ProblemKind::Bgwp);
    if needs_m && p.m.is_none() {
        return Err(CliError::input(format!("line {}: {} requires key `m`", s.header_line, kind.name())));
    }
    Ok(p)
}

pub fn parse(text: &str, base: &Path) -> Result<InstanceFile, CliError> {
    let mut sections: Vec<(String, Section)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(name) = trimmed.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim().to_string();
            if !matches!(name.as_str(), "group" | "problem" | "meta") {
                return Err(CliError::input(format!("line {line}: unknown section [{name}]")));
            }
            if sections.iter().any(|(n, _)| *n == name) {
                return Err(CliError::input(format!("line {line}: section [{name}] repeated")));
            }
            sections.push((name, Section { entries: Vec::new(), header_line: line }));
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            let col = raw.len() - raw.trim_start().len() + 1;
            return Err(CliError::input(format!("line {line}, column {col}: expected `key = value`")));
        };
        let Some((_, section)) = sections.last_mut() else {
            return Err(CliError::input(format!("line {line}, column 1: key outside a section")));
        };
        let key = key.trim().to_string();
        if section.get(&key).is_some() {
            return Err(CliError::input(format!("line {line}: key `{key}` repeated")));
        }
        let column = content.find('=').unwrap() + 2;
        let leading = value.len() - value.trim_start().len();
        section.entries.push((
            key,
            Located { text: value.trim().to_string(), line, column: column + leading.saturating_sub(1) },
        ));
    }
    let find = |n: &str| sections.iter().find(|(name, _)| name == n).map(|(_, s)| s);
    let group = read_group(find("group"))?;
    let problem_section = find("problem").ok_or_else(|| CliError::input("missing [problem] section"))?;
    let problem = read_problem(problem_section, &group, base)?;
    // [meta] is free-form provenance and is not interpreted
    Ok(InstanceFile { group, problem })
}

pub fn load(path: &Path) -> Result<InstanceFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    parse(&text, &base)
}

/// Writes an instance file. `group_lines` and `problem_lines` are
/// `(key, value)` pairs in output order.
pub fn render(group_lines: &[(&str, String)], problem_lines: &[(&str, String)], meta: &[(&str, String)]) -> String {
    let mut s = String::new();
    if !group_lines.is_empty() {
        s.push_str("[group]\n");
        for (k, v) in group_lines {
            let _ = writeln!(s, "{k} = {v}");
        }
        s.push('\n');
    }
    s.push_str("[problem]\n");
    for (k, v) in problem_lines {
        let _ = writeln!(s, "{k} = {v}");
    }
    if !meta.is_empty() {
        s.push_str("\n[meta]\n");
        for (k, v) in meta {
            let _ = writeln!(s, "{k} = {v}");
        }
    }
    s
}

/// The `[group]` lines that reproduce `g`.
pub fn group_lines(g: &Group) -> Vec<(&'static str, String)> {
    let alphabet_lines = |a: &Alphabet| match a.names() {
        Some(names) => ("generators", names.join(", ")),
        None => ("rank", a.size().to_string()),
    };
    match g {
        Group::Free(p) => vec![("kind", "free".into()), alphabet_lines(p.alphabet())],
        Group::FreeAbelian(a) => vec![("kind", "free_abelian".into()), alphabet_lines(a)],
        Group::Heisenberg(_) => vec![("kind", "heisenberg".into())],
        Group::Hyperbolic(p) => vec![("kind", "hyperbolic".into()), ("presentation", presentation_text(p))],
        Group::Bs { params, .. } => vec![
            ("kind", "bs".into()),
            ("n", params.n.to_string()),
            ("sign", if params.sign > 0 { "+1".into() } else { "-1".into() }),
        ],
        Group::Bs12(_) => vec![("kind", "bs12".into())],
        Group::Fxf { presentation, dehn } => {
            let mut v = vec![("kind", "fxf".into()), ("presentation", presentation_text(presentation))];
            if let Some(d) = dehn {
                v.push(("dehn", join_nums(d)));
            }
            v
        }
        Group::Unspecified => Vec::new(),
    }
}

pub fn presentation_text(p: &Presentation) -> String {
    let a = p.alphabet();
    let names = match a.names() {
        Some(n) => n.join(", "),
        None => (0..a.size()).map(|i| a.format(&Word::from_pairs(&[(i, 1)]))).collect::<Vec<_>>().join(", "),
    };
    let rels: Vec<String> = p.relators().iter().map(|r| a.format(r)).collect();
    if rels.is_empty() {
        names
    } else {
        format!("{names} | {}", rels.join(", "))
    }
}

pub fn join_nums(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

pub fn word_list(a: &Alphabet, ws: &[Word]) -> String {
    ws.iter().map(|w| a.format(w)).collect::<Vec<_>>().join(", ")
}
