mod common;

use common::reduced_words;
use groupknap::oracles::{brute_bsmp, brute_ssp, Caps, ElementCheck, FreeAbelian, GroupOracle, Heisenberg, WordCheck, WpOracle};
use groupknap::solve::Decision;
use groupknap::special::{bs_ssp, build_ball, nilpotent_bsmp, nilpotent_ssp, BsParams};
use groupknap::{Alphabet, Word};
use proptest::prelude::*;

fn xy() -> Alphabet {
    Alphabet::with_names(&["x", "y"]).unwrap()
}

fn ab() -> Alphabet {
    Alphabet::with_names(&["a", "t"]).unwrap()
}

fn ws(a: &Alphabet, list: &[&str]) -> Vec<Word> {
    list.iter().map(|s| a.parse(s).unwrap()).collect()
}

#[test]
fn heisenberg_commutator() {
    let a = xy();
    assert_eq!(Heisenberg.evaluate(&a.parse("xyXY").unwrap()), (0, 0, 1));
    let r = nilpotent_ssp(&Heisenberg, &a, &ws(&a, &["x", "y", "X", "Y"]), &a.parse("xyXY").unwrap()).unwrap();
    assert_eq!(r.exponents(), Some(&[1, 1, 1, 1][..]));
    assert!(r.verified);
}

#[test]
fn z2_examples() {
    let a = xy();
    let z2 = FreeAbelian { rank: 2 };
    assert_eq!(build_ball(&z2, &a, 3).len(), 25);
    let r = nilpotent_ssp(&z2, &a, &ws(&a, &["x", "y"]), &a.parse("xy").unwrap()).unwrap();
    assert_eq!((r.decision, r.cost_u64()), (Decision::Yes, Some(2)));
    // outside the ball of radius Σ|g_i|
    let r = nilpotent_ssp(&z2, &a, &ws(&a, &["x"]), &a.parse("xxy").unwrap()).unwrap();
    assert_eq!(r.decision, Decision::No);
}

#[test]
fn z2_bsmp_examples() {
    let a = xy();
    let z2 = FreeAbelian { rank: 2 };
    let g = ws(&a, &["x"]);
    let r = nilpotent_bsmp(&z2, &a, &g, &a.parse("xxx").unwrap(), 3).unwrap();
    assert_eq!((r.decision, r.cost_u64()), (Decision::Yes, Some(3)));
    assert_eq!(r.factors(), Some(&[0, 0, 0][..]));
    assert_eq!(nilpotent_bsmp(&z2, &a, &g, &a.parse("xxx").unwrap(), 2).unwrap().decision, Decision::No);
    assert!(nilpotent_bsmp(&z2, &a, &g, &Word::empty(), 0).unwrap().decision.is_yes());
}

#[test]
fn baumslag_solitar_examples() {
    let a = ab();
    let g = ws(&a, &["taaT"]);
    let plus = BsParams::new(2, 1).unwrap();
    let minus = BsParams::new(2, -1).unwrap();
    assert!(bs_ssp(plus, &g, &a.parse("aa").unwrap()).unwrap().decision.is_yes());
    assert!(bs_ssp(minus, &g, &a.parse("AA").unwrap()).unwrap().decision.is_yes());
    assert_eq!(bs_ssp(plus, &g, &a.parse("AA").unwrap()).unwrap().decision, Decision::No);
    assert!(bs_ssp(plus, &[], &Word::empty()).unwrap().decision.is_yes());
    assert!(BsParams::new(0, 1).is_err());
    assert!(BsParams::new(1, 0).is_err());
}

fn arb_instance(max_k: usize, max_len: usize) -> impl Strategy<Value = (Vec<Word>, Word)> {
    let words = reduced_words(2, max_len);
    let n = words.len();
    (prop::collection::vec(0..n, 0..=max_k), 0..n, prop::collection::vec(any::<bool>(), max_k), any::<bool>()).prop_map(
        move |(ix, t, pick, subset)| {
            let gens: Vec<Word> = ix.iter().map(|&i| words[i].clone()).collect();
            let target = if subset {
                gens.iter().zip(&pick).filter(|(_, &p)| p).fold(Word::empty(), |acc, (g, _)| acc.concat(g))
            } else {
                words[t].clone()
            };
            (gens, target)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn heisenberg_matches_brute_force((gens, target) in arb_instance(4, 2)) {
        let r = nilpotent_ssp(&Heisenberg, &xy(), &gens, &target).unwrap();
        let b = brute_ssp(&ElementCheck::new(&Heisenberg, &target), &gens, &Caps::default());
        prop_assert_eq!(r.decision.is_yes(), b.is_yes());
        prop_assert_eq!(r.cost_u64(), b.cost);
    }

    #[test]
    fn bsmp_matches_brute_force((gens, target) in arb_instance(3, 2), m in 0usize..4) {
        let z2 = FreeAbelian { rank: 2 };
        let r = nilpotent_bsmp(&z2, &xy(), &gens, &target, m).unwrap();
        let b = brute_bsmp(&ElementCheck::new(&z2, &target), &gens, m, &Caps::default());
        prop_assert_eq!(r.decision.is_yes(), b.is_yes());
        prop_assert_eq!(r.cost_u64(), b.cost);
    }

    #[test]
    fn bs_matches_britton((gens, target) in arb_instance(3, 3), n in 1u32..4, plus in any::<bool>()) {
        let params = BsParams::new(n, if plus { 1 } else { -1 }).unwrap();
        let o = params.oracle();
        let r = bs_ssp(params, &gens, &target).unwrap();
        let b = brute_ssp(&WordCheck::new(&o, &target), &gens, &Caps::default());
        prop_assert_eq!(r.decision.is_yes(), b.is_yes());
        prop_assert_eq!(r.cost_u64(), b.cost);
        if let Some(e) = r.exponents() {
            let product = gens.iter().zip(e).filter(|(_, &x)| x == 1).fold(Word::empty(), |acc, (g, _)| acc.concat(g));
            prop_assert!(o.equal(&product, &target));
        }
    }
}
