//! Instance transformations between the problem kinds, and the
//! hardness gadgets for `ℤ^ω` and `BS(1,2)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::solve::Decision;
use crate::word::{Letter, Word};

/// `m` copies of each word, block by block.
pub fn bkp_to_ssp(gens: &[Word], m: usize) -> Vec<Word> {
    gens.iter().flat_map(|w| std::iter::repeat(w.clone()).take(m)).collect()
}

/// Block sums of a subset-sum vector over [`bkp_to_ssp`] output.
pub fn ssp_witness_to_bkp(eps: &[i64], k: usize, m: usize) -> Vec<i64> {
    assert_eq!(eps.len(), k * m, "witness length");
    if m == 0 {
        return vec![0; k];
    }
    eps.chunks(m).map(|c| c.iter().sum()).collect()
}

/// A bounded knapsack vector as a subset-sum vector: each block filled
/// from the left.
pub fn bkp_witness_to_ssp(eps: &[i64], m: usize) -> Vec<i64> {
    eps.iter()
        .flat_map(|&e| (0..m as i64).map(move |j| i64::from(j < e)))
        .collect()
}

/// The full list `w_1, …, w_k` repeated `m` times. Subsets may pick up to
/// `k·m` factors, so the bounded instance is positive iff the optimum over
/// this list is at most `m`.
pub fn bsmp_to_ssop(gens: &[Word], m: usize) -> Vec<Word> {
    (0..m).flat_map(|_| gens.iter().cloned()).collect()
}

/// The chosen factors of a subset-sum vector over [`bsmp_to_ssop`]
/// output, in product order.
pub fn ssop_witness_to_bsmp(eps: &[i64], k: usize) -> Vec<usize> {
    eps.iter()
        .enumerate()
        .filter(|&(_, &e)| e != 0)
        .map(|(j, _)| j % k.max(1))
        .collect()
}

/// `w_1, w_1⁻¹, …, w_k, w_k⁻¹`.
pub fn ikp_to_kp(gens: &[Word]) -> Vec<Word> {
    gens.iter().flat_map(|w| [w.clone(), w.inverse()]).collect()
}

/// `ε_i = ε⁺_i − ε⁻_i` over interleaved pairs.
pub fn kp_witness_to_ikp(eps: &[i64]) -> Vec<i64> {
    eps.chunks(2).map(|p| p[0] - p[1]).collect()
}

/// Signed exponents as a knapsack vector over [`ikp_to_kp`] output.
pub fn ikp_witness_to_kp(eps: &[i64]) -> Vec<i64> {
    eps.iter().flat_map(|&e| [e.max(0), (-e).max(0)]).collect()
}

/// Recovers a subset-sum vector from a decision procedure, deciding
/// `w_1` first. Makes at most `k + 1` calls; `Ok(None)` means the
/// instance is negative, and an undecided call is an error.
pub fn search_from_decision<F>(mut decide: F, gens: &[Word], target: &Word) -> Result<Option<Vec<i64>>>
where
    F: FnMut(&[Word], &Word) -> Result<Decision>,
{
    let mut call = |g: &[Word], w: &Word| -> Result<bool> {
        match decide(g, w)? {
            Decision::Yes => Ok(true),
            Decision::No => Ok(false),
            Decision::Unknown => Err(Error::Precondition("decider returned unknown".into())),
        }
    };
    if !call(gens, target)? {
        return Ok(None);
    }
    let mut eps = Vec::with_capacity(gens.len());
    let mut w = target.clone();
    for i in 0..gens.len() {
        if call(&gens[i + 1..], &w)? {
            eps.push(0);
        } else {
            eps.push(1);
            w = gens[i].inverse().concat(&w).free_reduce();
        }
    }
    Ok(Some(eps))
}

/// A zero-one equation `A·x = 1` with `A` square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZoeInstance {
    n: usize,
    rows: Vec<Vec<u8>>,
}

impl ZoeInstance {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Precondition("matrix must be non-empty".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Precondition(format!("row {} has {} entries, expected {n}", i + 1, r.len())));
            }
            if r.iter().any(|&v| v > 1) {
                return Err(Error::Precondition(format!("row {} has an entry other than 0 or 1", i + 1)));
            }
        }
        Ok(ZoeInstance { n, rows })
    }

    /// `n` on the first line, then `n` rows of space-separated 0/1.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let bad = |m: String| Error::Parse { position: 0, message: m };
        let n: usize = lines
            .next()
            .ok_or_else(|| bad("missing size line".into()))?
            .parse()
            .map_err(|_| bad("size is not a natural number".into()))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| match t {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    _ => Err(bad(format!("entry {t:?} is not 0 or 1"))),
                })
                .collect::<Result<Vec<u8>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(bad(format!("expected {n} rows, found {}", rows.len())));
        }
        Self::new(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.rows[i][j]
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(u8::to_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn is_solution(&self, x: &[u8]) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().zip(x).map(|(&a, &b)| u32::from(a & b)).sum::<u32>() == 1)
    }

    /// All `2^n` vectors, in order of `x` read as a binary number with
    /// `x_1` least significant.
    pub fn brute_solve(&self) -> Option<Vec<u8>> {
        assert!(self.n < 32, "brute force limited to n < 32");
        (0u32..1 << self.n)
            .map(|bits| (0..self.n).map(|j| ((bits >> j) & 1) as u8).collect::<Vec<_>>())
            .find(|x| self.is_solution(x))
    }
}

impl fmt::Display for ZoeInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A finitely supported integer sequence, i.e. an element of `ℤ^ω`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZOmegaElement(BTreeMap<usize, i64>);

impl ZOmegaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut m = BTreeMap::new();
        m.insert(i, 1);
        ZOmegaElement(m)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in pairs {
            e.add_at(i, c);
        }
        e
    }

    pub fn coefficient(&self, i: usize) -> i64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().map(|(&i, &c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_at(&mut self, i: usize, c: i64) {
        let v = self.0.entry(i).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&i);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (i, c) in other.support() {
            r.add_at(i, c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        ZOmegaElement(self.0.iter().map(|(&i, &c)| (i, -c)).collect())
    }

    /// The element as a word over the basis letters `±e_i`, encoded by
    /// [`encode_basis`] and concatenated.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.support() {
            let code = encode_basis(i, c.signum() as i8);
            for _ in 0..c.unsigned_abs() {
                s.push_str(code.as_str());
            }
        }
        s
    }
}

impl fmt::Display for ZOmegaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.support().map(|(i, c)| format!("{c}*e{i}")).collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Column `j` of `A` becomes `Σ_i a_ij e_i`; the target is `e_1 + … + e_n`
/// (indices from 0 here). A subset of columns sums to the target exactly
/// when the corresponding `x` solves `A·x = 1`.
pub fn zoe_to_ssp(z: &ZoeInstance) -> (Vec<ZOmegaElement>, ZOmegaElement) {
    let gens = (0..z.n)
        .map(|j| ZOmegaElement::from_pairs((0..z.n).filter(|&i| z.entry(i, j) == 1).map(|i| (i, 1))))
        .collect();
    let target = ZOmegaElement::from_pairs((0..z.n).map(|i| (i, 1)));
    (gens, target)
}

/// Exhaustive subset sum in `ℤ^ω`; first solution in binary counting
/// order with the first element least significant.
pub fn brute_zomega_ssp(gens: &[ZOmegaElement], target: &ZOmegaElement) -> Option<Vec<u8>> {
    assert!(gens.len() < 32, "brute force limited to fewer than 32 elements");
    (0u32..1 << gens.len()).find_map(|bits| {
        let sum = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| (bits >> j) & 1 == 1)
            .fold(ZOmegaElement::zero(), |acc, g| acc.add(g.1));
        (sum == *target).then(|| (0..gens.len()).map(|j| ((bits >> j) & 1) as u8).collect())
    })
}

/// A codeword of the binary encoding of the basis letters `±e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EncodedLetter(String);

impl EncodedLetter {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn parse(bits: &str) -> Result<Self> {
        decode(bits)?;
        Ok(EncodedLetter(bits.to_string()))
    }
}

impl fmt::Display for EncodedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `e_i ↦ 0101(00)^i 11`, `−e_i ↦ 0100(00)^i 11`.
pub fn encode_basis(i: usize, sign: i8) -> EncodedLetter {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    let head = if sign > 0 { "0101" } else { "0100" };
    EncodedLetter(format!("{head}{}11", "00".repeat(i)))
}

/// Inverse of [`encode_basis`].
pub fn decode(bits: &str) -> Result<(usize, i8)> {
    let bad = || Error::Encoding(format!("{bits:?} is not a basis codeword"));
    let (sign, rest) = if let Some(r) = bits.strip_prefix("0101") {
        (1, r)
    } else if let Some(r) = bits.strip_prefix("0100") {
        (-1, r)
    } else {
        return Err(bad());
    };
    let zeros = rest.strip_suffix("11").ok_or_else(bad)?;
    if zeros.len() % 2 != 0 || zeros.bytes().any(|b| b != b'0') {
        return Err(bad());
    }
    Ok((zeros.len() / 2, sign))
}

/// Splits a concatenation of codewords back into letters.
pub fn decode_stream(bits: &str) -> Result<Vec<(usize, i8)>> {
    let mut out = Vec::new();
    let mut rest = bits;
    while !rest.is_empty() {
        // every codeword ends at its first "11" after the 4-bit head
        let end = rest
            .get(4..)
            .and_then(|tail| tail.find("11"))
            .map(|p| p + 6)
            .ok_or_else(|| Error::Encoding(format!("truncated codeword in {rest:?}")))?;
        out.push(decode(&rest[..end])?);
        rest = &rest[end..];
    }
    Ok(out)
}

/// No codeword is a proper prefix of another.
pub fn is_prefix_free<S: AsRef<str>>(codes: &[S]) -> bool {
    codes.iter().enumerate().all(|(i, a)| {
        codes
            .iter()
            .enumerate()
            .all(|(j, b)| i == j || a.as_ref() == b.as_ref() || !b.as_ref().starts_with(a.as_ref()))
    })
}

/// Generator `a` of `BS(1,2) = ⟨a, t | t⁻¹at = a²⟩`.
pub const BS12_A: u32 = 0;
/// Generator `t` of `BS(1,2)`.
pub const BS12_T: u32 = 1;

/// `t^{−n} a t^n`, which equals `a^{2^n}` in `BS(1,2)`.
pub fn bs12_power_of_two(n: usize) -> Word {
    let mut letters = vec![Letter::neg(BS12_T); n];
    letters.push(Letter::pos(BS12_A));
    letters.extend(std::iter::repeat(Letter::pos(BS12_T)).take(n));
    Word::from_letters(letters)
}

/// A binary number (bits least significant first) as the product of
/// `t^{−n} a t^n` over its set bits.
pub fn bs12_number(bits: &[bool]) -> Word {
    let mut letters = Vec::new();
    for (n, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
        letters.extend(bs12_power_of_two(n).iter());
    }
    Word::from_letters(letters)
}

/// Binary subset sum as subset sum over `BS(1,2)` with generators
/// `a` = 0, `t` = 1. Numbers are bit lists, least significant first.
pub fn binary_ssp_to_bs12(numbers: &[Vec<bool>], target: &[bool]) -> (Vec<Word>, Word) {
    (numbers.iter().map(|b| bs12_number(b)).collect(), bs12_number(target))
}

/// Bits of `v`, least significant first.
pub fn to_bits(v: u64) -> Vec<bool> {
    (0..64 - v.leading_zeros()).map(|i| (v >> i) & 1 == 1).collect()
}
