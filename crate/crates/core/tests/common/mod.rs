#![allow(dead_code)]

use groupknap::{Presentation, Word};

pub fn pres(text: &str) -> Presentation {
    Presentation::parse(text).unwrap()
}

pub fn free(rank: u32) -> Presentation {
    Presentation::free(groupknap::Alphabet::new(rank).unwrap())
}

pub fn words(p: &Presentation, list: &[&str]) -> Vec<Word> {
    list.iter().map(|s| p.alphabet().parse(s).unwrap()).collect()
}

pub fn word(p: &Presentation, s: &str) -> Word {
    p.alphabet().parse(s).unwrap()
}

/// All freely reduced words of length at most `max_len` over `rank`
/// generators, shortest first.
pub fn reduced_words(rank: u32, max_len: usize) -> Vec<Word> {
    let letters: Vec<_> = groupknap::Alphabet::new(rank).unwrap().letters().collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() == Some(l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
