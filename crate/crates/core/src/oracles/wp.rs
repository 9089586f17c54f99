//! Exact word-problem deciders.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::word::{push_reduced, Letter, Word};

/// Decides whether a word represents the identity.
pub trait WpOracle {
    fn is_trivial(&self, w: &Word) -> bool;

    fn equal(&self, u: &Word, v: &Word) -> bool {
        self.is_trivial(&u.concat(&v.inverse()))
    }
}

/// A group with canonical, hashable element representatives.
pub trait GroupOracle {
    type Element: Clone + Eq + Hash + Debug;

    fn identity(&self) -> Self::Element;

    fn multiply_letter(&self, e: &mut Self::Element, l: Letter);

    fn multiply_word(&self, e: &mut Self::Element, w: &Word) {
        for l in w.iter() {
            self.multiply_letter(e, l);
        }
    }

    fn evaluate(&self, w: &Word) -> Self::Element {
        let mut e = self.identity();
        self.multiply_word(&mut e, w);
        e
    }

    /// A lower bound on the word length of `e`.
    fn length_lower_bound(&self, _e: &Self::Element) -> usize {
        0
    }
}

impl<G: GroupOracle> WpOracle for G {
    fn is_trivial(&self, w: &Word) -> bool {
        self.evaluate(w) == self.identity()
    }

    fn equal(&self, u: &Word, v: &Word) -> bool {
        self.evaluate(u) == self.evaluate(v)
    }
}

/// The free group; elements are freely reduced letter sequences.
#[derive(Clone, Copy, Debug)]
pub struct FreeGroup {
    pub rank: u32,
}

impl GroupOracle for FreeGroup {
    type Element = Vec<Letter>;

    fn identity(&self) -> Vec<Letter> {
        Vec::new()
    }

    fn multiply_letter(&self, e: &mut Vec<Letter>, l: Letter) {
        push_reduced(e, l);
    }

    fn length_lower_bound(&self, e: &Vec<Letter>) -> usize {
        e.len()
    }
}

/// A free product of cyclic groups, one factor per generator; order 0
/// means infinite cyclic. Elements are alternating syllable sequences
/// with exponents reduced into `1..order`.
#[derive(Clone, Debug)]
pub struct FreeProductCyclic {
    orders: Vec<u32>,
}

impl FreeProductCyclic {
    pub fn new(orders: Vec<u32>) -> Self {
        FreeProductCyclic { orders }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    fn normalize(&self, g: u32, e: i64) -> i64 {
        match self.orders[g as usize] {
            0 => e,
            n => e.rem_euclid(n as i64),
        }
    }
}

impl GroupOracle for FreeProductCyclic {
    type Element = Vec<(u32, i64)>;

    fn identity(&self) -> Self::Element {
        Vec::new()
    }

    fn multiply_letter(&self, e: &mut Self::Element, l: Letter) {
        let g = l.generator();
        let s = l.sign() as i64;
        match e.last_mut() {
            Some((h, x)) if *h == g => {
                *x = self.normalize(g, *x + s);
                if *x == 0 {
                    e.pop();
                }
            }
            _ => {
                let x = self.normalize(g, s);
                if x != 0 {
                    e.push((g, x));
                }
            }
        }
    }

    fn length_lower_bound(&self, e: &Self::Element) -> usize {
        e.iter()
            .map(|&(g, x)| match self.orders[g as usize] {
                0 => x.unsigned_abs() as usize,
                n => (x as usize).min(n as usize - x as usize),
            })
            .sum()
    }
}

/// `ℤ^rank`, with generator `i` the `i`-th basis vector.
#[derive(Clone, Copy, Debug)]
pub struct FreeAbelian {
    pub rank: u32,
}

impl GroupOracle for FreeAbelian {
    type Element = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank as usize]
    }

    fn multiply_letter(&self, e: &mut Vec<i64>, l: Letter) {
        e[l.generator() as usize] += l.sign() as i64;
    }

    fn length_lower_bound(&self, e: &Vec<i64>) -> usize {
        e.iter().map(|x| x.unsigned_abs() as usize).sum()
    }
}

/// The discrete Heisenberg group on generators `x` (0) and `y` (1).
/// `(a, b, c)` is the unitriangular matrix with entries `a`, `c` in the
/// first row and `b` in the second, so
/// `(a,b,c)·(a',b',c') = (a+a', b+b', c+c'+a·b')`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Heisenberg;

impl GroupOracle for Heisenberg {
    type Element = (i64, i64, i64);

    fn identity(&self) -> (i64, i64, i64) {
        (0, 0, 0)
    }

    fn multiply_letter(&self, e: &mut (i64, i64, i64), l: Letter) {
        let s = l.sign() as i64;
        match l.generator() {
            0 => e.0 += s,
            1 => {
                e.1 += s;
                e.2 += e.0 * s;
            }
            g => panic!("Heisenberg group has two generators, got index {g}"),
        }
    }

    fn length_lower_bound(&self, e: &(i64, i64, i64)) -> usize {
        (e.0.unsigned_abs() + e.1.unsigned_abs()) as usize
    }
}

/// `BS(1,2)` as affine maps: `(p, q)` stands for `[[2^p, q], [0, 1]]`,
/// with `a = (0, 1)` and `t = (-1, 0)`, so that `t⁻¹·a·t = a²`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bs12Affine;

fn pow2(p: i64) -> BigRational {
    let two = BigInt::from(2);
    let m = num_traits::pow(two, p.unsigned_abs() as usize);
    if p >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

impl GroupOracle for Bs12Affine {
    type Element = (i64, BigRational);

    fn identity(&self) -> Self::Element {
        (0, BigRational::zero())
    }

    fn multiply_letter(&self, e: &mut Self::Element, l: Letter) {
        // (p1, q1)(p2, q2) = (p1 + p2, q1 + 2^p1 q2)
        match (l.generator(), l.sign()) {
            (0, s) => e.1 += pow2(e.0) * BigRational::from_integer(BigInt::from(s)),
            (1, s) => e.0 -= s as i64,
            (g, _) => panic!("BS(1,2) has generators a and t, got index {g}"),
        }
    }
}

/// `BS(m, n) = ⟨a, t | t⁻¹ aᵐ t = aⁿ⟩` decided by Britton reduction;
/// `a` is generator 0 and `t` generator 1.
#[derive(Clone, Debug)]
pub struct BaumslagSolitar {
    m: i64,
    n: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Syllable {
    A(BigInt),
    T(i8),
}

impl BaumslagSolitar {
    pub fn new(m: i64, n: i64) -> Self {
        assert!(m != 0 && n != 0, "BS(m, n) needs non-zero parameters");
        BaumslagSolitar { m, n }
    }

    pub fn params(&self) -> (i64, i64) {
        (self.m, self.n)
    }

    fn push_a(stack: &mut Vec<Syllable>, k: BigInt) {
        if k.is_zero() {
            return;
        }
        if let Some(Syllable::A(x)) = stack.last_mut() {
            *x += k;
            if x.is_zero() {
                stack.pop();
            }
        } else {
            stack.push(Syllable::A(k));
        }
    }

    /// Pushes `t^e`, pinching `t⁻¹ a^{km} t → a^{kn}` and
    /// `t a^{kn} t⁻¹ → a^{km}` whenever the top of the stack allows.
    fn push_t(&self, stack: &mut Vec<Syllable>, e: i8) {
        let len = stack.len();
        match stack.last() {
            Some(Syllable::T(f)) if *f == -e => {
                stack.pop();
                return;
            }
            Some(Syllable::A(k)) if len >= 2 && stack[len - 2] == Syllable::T(-e) => {
                let (from, to) = if e == 1 { (self.m, self.n) } else { (self.n, self.m) };
                let from = BigInt::from(from);
                if k.is_multiple_of(&from) {
                    let image = k / &from * BigInt::from(to);
                    stack.truncate(len - 2);
                    Self::push_a(stack, image);
                    return;
                }
            }
            _ => {}
        }
        stack.push(Syllable::T(e));
    }

    /// Britton-reduced syllables of `w`; empty exactly for the identity.
    fn reduce(&self, w: &Word) -> Vec<Syllable> {
        let mut stack = Vec::new();
        for l in w.iter() {
            match l.generator() {
                0 => Self::push_a(&mut stack, BigInt::from(l.sign())),
                1 => self.push_t(&mut stack, l.sign()),
                g => panic!("BS(m, n) has generators a and t, got index {g}"),
            }
        }
        stack
    }

    /// The `a`-exponent if `w` represents a power of `a`.
    pub fn a_power(&self, w: &Word) -> Option<BigInt> {
        let s = self.reduce(w);
        match s.as_slice() {
            [] => Some(BigInt::zero()),
            [Syllable::A(k)] => Some(k.clone()),
            _ => None,
        }
    }
}

impl WpOracle for BaumslagSolitar {
    fn is_trivial(&self, w: &Word) -> bool {
        self.reduce(w).is_empty()
    }
}

/// Exponent-sum oracle: decides triviality in the abelianization.
#[derive(Clone, Copy, Debug)]
pub struct Abelianization {
    pub rank: u32,
}

impl WpOracle for Abelianization {
    fn is_trivial(&self, w: &Word) -> bool {
        w.abelianization(self.rank as usize).iter().all(|x| *x == 0)
    }
}

/// The exponent `q` when a BS(1,2) element is an integer power of `a`.
pub fn bs12_a_power(e: &(i64, BigRational)) -> Option<BigInt> {
    if e.0 == 0 && e.1.is_integer() {
        Some(e.1.to_integer())
    } else {
        None
    }
}
