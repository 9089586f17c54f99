//! Finite presentations `⟨X | R⟩` and their symmetrized relator sets.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::oracles::wp::FreeProductCyclic;
use crate::word::{Alphabet, Word};

/// A finite presentation. The relators are kept as given; the
/// symmetrized set holds every cyclic shift of every cyclically reduced
/// relator and of its inverse, without duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    symmetrized: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut symmetrized = Vec::new();
        for (i, r) in relators.iter().enumerate() {
            alphabet.validate(r)?;
            let core = r.cyclic_reduce().core;
            if core.is_empty() {
                return Err(Error::EmptyRelator(i));
            }
            for base in [core.clone(), core.inverse()] {
                let letters = base.letters();
                for shift in 0..letters.len() {
                    let rotated: Word =
                        letters[shift..].iter().chain(&letters[..shift]).copied().collect();
                    if seen.insert(rotated.clone()) {
                        symmetrized.push(rotated);
                    }
                }
            }
        }
        Ok(Presentation { alphabet, relators, symmetrized })
    }

    /// The free group on `alphabet`.
    pub fn free(alphabet: Alphabet) -> Self {
        Presentation { alphabet, relators: Vec::new(), symmetrized: Vec::new() }
    }

    /// Parses `"a,b | aa, bbb"`. Generator names come before the bar;
    /// relators after it are comma separated and may be empty.
    pub fn parse(text: &str) -> Result<Self> {
        let (gens, rels) = match text.split_once('|') {
            Some((g, r)) => (g, r),
            None => (text, ""),
        };
        let names: Vec<&str> =
            gens.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let alphabet = Alphabet::with_names(&names)?;
        let offset = text.len() - rels.len();
        let mut relators = Vec::new();
        let mut pos = offset;
        for piece in rels.split(',') {
            if !piece.trim().is_empty() {
                let w = alphabet.parse(piece).map_err(|e| match e {
                    Error::Parse { position, message } => {
                        Error::Parse { position: pos + position, message }
                    }
                    other => other,
                })?;
                relators.push(w);
            }
            pos += piece.len() + 1;
        }
        Presentation::new(alphabet, relators)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn symmetrized(&self) -> &[Word] {
        &self.symmetrized
    }

    /// `‖R‖`, the total length of the symmetrized relators.
    pub fn total_length(&self) -> usize {
        self.symmetrized.iter().map(Word::len).sum()
    }

    /// `C`, the longest relator length (0 for free groups).
    pub fn max_relator_length(&self) -> usize {
        self.symmetrized.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Orders of the cyclic factors if every relator is a power of a
    /// single generator, at most one per generator (0 = infinite cyclic).
    pub fn free_product_cyclic_orders(&self) -> Option<Vec<u32>> {
        let mut orders = vec![0u32; self.alphabet.size() as usize];
        for r in &self.relators {
            let core = r.cyclic_reduce().core;
            let first = core.first()?;
            if core.iter().any(|l| l != first) {
                return None;
            }
            let slot = &mut orders[first.generator() as usize];
            if *slot != 0 {
                return None;
            }
            *slot = core.len() as u32;
        }
        Some(orders)
    }

    /// Number of completion rounds after which saturation is known to be
    /// complete, so that a missing ε-edge proves a negative answer.
    ///
    /// Free groups need none. In a free product of cyclic groups every
    /// reduction to the identity deletes a power `x^n` sitting between two
    /// positions of the original word, so one round of relator loops at
    /// the original states suffices.
    pub fn known_completion_depth(&self) -> Option<u32> {
        if self.is_free() {
            Some(0)
        } else if self.free_product_cyclic_orders().is_some() {
            Some(1)
        } else {
            None
        }
    }

    /// An exact word-problem oracle when the presentation has a shape we
    /// can decide directly.
    pub fn word_problem(&self) -> Option<FreeProductCyclic> {
        self.free_product_cyclic_orders().map(FreeProductCyclic::new)
    }
}
