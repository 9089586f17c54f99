//! ε-folding saturation with minimal prices.
//!
//! The four rules `x·x⁻¹ → ε`, `x·ε → x`, `ε·x → x`, `ε·ε → ε` add an
//! edge for every composable pair; states are never merged. Prices are
//! settled Knuth-style: a composite costs at least as much as each part,
//! so popping edges in price order finalizes each one at its minimum and
//! the result does not depend on rule order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use super::{EdgeId, Label, Price, PricedAutomaton, StateId};

/// Returns the saturated copy of `g`. Derived edges already present are
/// discarded and recomputed, so `fold(fold(g)) == fold(g)`.
pub fn fold(g: &PricedAutomaton) -> PricedAutomaton {
    let mut h = g.clone();
    fold_in_place(&mut h, usize::MAX);
    h
}

/// Saturates `g` in place. No new edge is added once the graph holds
/// `edge_limit` edges; the return value is false if that cut anything
/// off, in which case prices are upper bounds only.
pub(crate) fn fold_in_place(g: &mut PricedAutomaton, edge_limit: usize) -> bool {
    g.strip_derived();
    let n = g.state_count() as usize;
    let mut done = vec![false; g.edge_count()];
    let mut out_all: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    let mut in_all: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    let mut out_by: FxHashMap<(StateId, Label), Vec<EdgeId>> = FxHashMap::default();
    let mut in_by: FxHashMap<(StateId, Label), Vec<EdgeId>> = FxHashMap::default();
    let mut heap: BinaryHeap<Reverse<(Price, EdgeId)>> =
        g.edges().iter().enumerate().map(|(i, e)| Reverse((e.price.clone(), i as EdgeId))).collect();
    let mut candidates: Vec<(StateId, Label, StateId, EdgeId, EdgeId)> = Vec::new();
    let mut complete = true;

    while let Some(Reverse((price, id))) = heap.pop() {
        if done[id as usize] || price != g.edge(id).price {
            continue;
        }
        done[id as usize] = true;
        let (s, label, t) = {
            let e = g.edge(id);
            (e.source, e.label, e.target)
        };
        out_all[s as usize].push(id);
        in_all[t as usize].push(id);
        out_by.entry((s, label)).or_default().push(id);
        in_by.entry((t, label)).or_default().push(id);

        candidates.clear();
        // `id` first, a finalized edge leaving `t` second
        if label.is_epsilon() {
            for &p in &out_all[t as usize] {
                let e = g.edge(p);
                candidates.push((s, e.label, e.target, id, p));
            }
        } else {
            for (want, result) in [(Label::EPSILON, label), (label.inverse(), Label::EPSILON)] {
                if let Some(list) = out_by.get(&(t, want)) {
                    for &p in list {
                        candidates.push((s, result, g.edge(p).target, id, p));
                    }
                }
            }
        }
        // a finalized edge entering `s` first, `id` second
        if label.is_epsilon() {
            for &p in &in_all[s as usize] {
                let e = g.edge(p);
                candidates.push((e.source, e.label, t, p, id));
            }
        } else {
            for (want, result) in [(Label::EPSILON, label), (label.inverse(), Label::EPSILON)] {
                if let Some(list) = in_by.get(&(s, want)) {
                    for &p in list {
                        candidates.push((g.edge(p).source, result, t, p, id));
                    }
                }
            }
        }

        for &(cs, cl, ct, a, b) in &candidates {
            let cost = &g.edge(a).price + &g.edge(b).price;
            match g.find(cs, cl, ct) {
                Some(existing) => {
                    if !done[existing as usize] && cost < g.edge(existing).price {
                        let e = g.edge_mut(existing);
                        e.price = cost.clone();
                        e.via = Some((a, b));
                        heap.push(Reverse((cost, existing)));
                    }
                }
                None if g.edge_count() >= edge_limit => complete = false,
                None => {
                    let new = g.push_derived(cs, cl, ct, cost.clone(), (a, b));
                    done.push(false);
                    heap.push(Reverse((cost, new)));
                }
            }
        }
    }
    complete
}
