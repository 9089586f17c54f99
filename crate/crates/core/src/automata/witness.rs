//! Reading witnesses off derivations, and checking them without the
//! graph's own reasoning.

use super::{EdgeId, EdgeTag, EpsilonAnswer, PricedAutomaton, StateId};
use crate::error::{Error, Result};
use crate::word::{push_reduced, Letter, Word};

/// Default cap on the number of built edges a derivation may expand to.
pub const EXPANSION_BUDGET: usize = 10_000_000;

/// The built-edge path behind an accepted ε-edge, and what it reads.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub final_state: StateId,
    pub path: Vec<EdgeId>,
    /// Factor tags in path order.
    pub factors: Vec<u32>,
    /// Letters read on ball-layer edges, in order.
    pub ball_letters: Word,
    /// The label with relator-loop excursions removed.
    pub gamma_label: Word,
    /// The complete label, relator excursions included.
    pub full_label: Word,
}

impl PricedAutomaton {
    /// Expands the derivation behind `answer` into a certificate.
    pub fn certificate(&self, answer: &EpsilonAnswer) -> Result<Certificate> {
        let path = match answer.edge {
            Some(e) => self.expand(e, EXPANSION_BUDGET)?,
            None => Vec::new(),
        };
        let mut factors = Vec::new();
        let mut ball = Vec::new();
        let mut gamma = Vec::new();
        let mut full = Vec::new();
        for &id in &path {
            let e = self.edge(id);
            let tag = e.base.as_ref().map(|b| b.1).ok_or_else(|| {
                Error::Witness(format!("edge {id} in an expanded path is not a built edge"))
            })?;
            let letter = e.label.as_letter();
            if let Some(l) = letter {
                full.push(l);
            }
            match tag {
                EdgeTag::Relator { .. } => {}
                EdgeTag::Factor(i) => {
                    factors.push(i);
                    gamma.extend(letter);
                }
                EdgeTag::BallLetter => {
                    ball.extend(letter);
                    gamma.extend(letter);
                }
                EdgeTag::Plain => gamma.extend(letter),
            }
        }
        Ok(Certificate {
            final_state: answer.final_state,
            path,
            factors,
            ball_letters: Word::from_letters(ball),
            gamma_label: Word::from_letters(gamma),
            full_label: Word::from_letters(full),
        })
    }
}

/// Checks that `cert` proves `expected =_G 1` for the group presented by
/// `relators` (symmetrized):
///
/// - the path runs from the initial state to a final state,
/// - every relator-loop excursion spells a member of `relators`,
/// - the full label freely reduces to the empty word,
/// - removing the excursions leaves exactly `expected`.
///
/// Inserting relators does not change the group element, so together
/// these show that `expected` is trivial in the group.
pub fn check_certificate(
    g: &PricedAutomaton,
    cert: &Certificate,
    relators: &[Word],
    expected: &Word,
) -> Result<()> {
    let fail = |m: String| Err(Error::Witness(m));
    if !g.finals().contains(&cert.final_state) {
        return fail("certificate does not end in a final state".into());
    }
    let mut at = g.initial();
    let mut open: Vec<(u32, u32, Vec<Letter>)> = Vec::new();
    let mut gamma = Vec::new();
    let mut reduced = Vec::new();
    for &id in &cert.path {
        let e = g.edge(id);
        if e.source != at {
            return fail(format!("path breaks at edge {id}"));
        }
        at = e.target;
        let Some((_, tag)) = &e.base else {
            return fail(format!("edge {id} is not a built edge"));
        };
        let letter = e.label.as_letter();
        if let Some(l) = letter {
            push_reduced(&mut reduced, l);
        }
        match *tag {
            EdgeTag::Relator { loop_id, pos } => {
                let Some(l) = letter else {
                    return fail("relator loop edge without a letter".into());
                };
                if pos == 0 {
                    open.push((loop_id, 0, Vec::new()));
                }
                let Some(top) = open.last_mut() else {
                    return fail("relator loop entered midway".into());
                };
                if top.0 != loop_id || top.1 != pos {
                    return fail("relator loops interleave".into());
                }
                top.1 += 1;
                top.2.push(l);
                let lp = &g.loops()[loop_id as usize];
                let r = &g.loop_relators()[lp.relator as usize];
                if top.1 as usize == r.len() {
                    let spelled = Word::from_letters(std::mem::take(&mut top.2));
                    if &spelled != r || !relators.contains(&spelled) {
                        return fail(format!("loop spells {spelled}, not a relator"));
                    }
                    open.pop();
                }
            }
            _ => gamma.extend(letter),
        }
    }
    if at != cert.final_state {
        return fail("path does not reach the claimed final state".into());
    }
    if !open.is_empty() {
        return fail("unfinished relator loop".into());
    }
    if !reduced.is_empty() {
        return fail("path label is not freely trivial".into());
    }
    if Word::from_letters(gamma) != *expected {
        return fail("path reads a different product than claimed".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::{build_ssp_graph, saturate, SaturationParams};
    use super::*;
    use crate::presentation::Presentation;

    #[test]
    fn certificate_through_relator_loops() {
        let p = Presentation::parse("a,b | aa, bbb").unwrap();
        let a = p.alphabet();
        let gens = vec![a.parse("a").unwrap(), a.parse("b").unwrap()];
        let target = a.parse("aBB").unwrap();
        let g = build_ssp_graph(&gens, &target);
        let (h, _) = saturate(&g, p.symmetrized(), &SaturationParams::default(), 5, Some(1)).unwrap();
        let ans = h.epsilon_answer().unwrap();
        let cert = h.certificate(&ans).unwrap();
        assert_eq!(cert.factors, vec![0, 1]);
        let expected = a.parse("ab").unwrap().concat(&target.inverse());
        check_certificate(&h, &cert, p.symmetrized(), &expected).unwrap();
        let wrong = a.parse("b").unwrap().concat(&target.inverse());
        assert!(check_certificate(&h, &cert, p.symmetrized(), &wrong).is_err());
        assert!(check_certificate(&h, &cert, &[], &expected).is_err());
    }
}
