use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::Error;
use crate::geometry::CandidateSet;

use super::{
    pick_tied, precheck, tie_floor, Engine, HvObjective, IgdObjective, Indicator, Objective, Run,
    SelectionResult,
};

/// A candidate in the lazy heap.
///
/// `bound` is the candidate's gain as of the moment the selection had
/// `stamp` members. By submodularity it bounds the current gain from above;
/// when `stamp` equals the current selection size it is exact.
#[derive(Debug, Clone, Copy)]
pub struct TentativeEntry {
    pub idx: usize,
    pub bound: f64,
    pub stamp: usize,
}

impl PartialEq for TentativeEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for TentativeEntry {}

impl PartialOrd for TentativeEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Larger bound first, then lower index, so the heap top is exactly the
// candidate the standard engine would pick if all bounds were fresh.
impl Ord for TentativeEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| other.idx.cmp(&self.idx))
    }
}

/// Lazy greedy inclusion.
///
/// Candidates sit in a max-heap keyed by their last computed gain. Each step
/// pops the top entry; a fresh entry is taken immediately, a stale one is
/// re-evaluated and either taken (if it still beats the next bound) or
/// pushed back. The selected sequence equals [`super::select_standard`].
pub fn select_lazy(
    set: &CandidateSet,
    k: usize,
    indicator: &Indicator<'_>,
) -> Result<SelectionResult, Error> {
    let kind = indicator.kind;
    if let Some(all) = precheck(set, k, Engine::Lazy, kind)? {
        return Ok(all);
    }
    let n = set.len();
    let mut run = Run::new(n);
    match kind.metric() {
        None => {
            let mut obj = HvObjective::new(set)?;
            let heap = (0..n)
                .map(|i| TentativeEntry {
                    idx: i,
                    bound: obj.gain(i),
                    stamp: 0,
                })
                .collect();
            lazy_loop(&mut obj, &mut run, heap, n, k);
            let calls = obj.kernel_calls();
            Ok(run.finish(set, Engine::Lazy, kind, calls))
        }
        Some(metric) => {
            let (mut obj, first, value) = IgdObjective::seed(set, indicator, metric)?;
            run.record(first, f64::INFINITY, value, n);
            let heap = (0..n)
                .filter(|&i| i != first)
                .map(|i| TentativeEntry {
                    idx: i,
                    bound: obj.gain(i),
                    stamp: 1,
                })
                .collect();
            lazy_loop(&mut obj, &mut run, heap, n - 1, k);
            let calls = obj.kernel_calls();
            Ok(run.finish(set, Engine::Lazy, kind, calls))
        }
    }
}

/// `init_evals` is charged to the first step taken inside the loop.
fn lazy_loop<O: Objective>(
    obj: &mut O,
    run: &mut Run,
    mut heap: BinaryHeap<TentativeEntry>,
    init_evals: usize,
    k: usize,
) {
    let mut evals = init_evals;
    let mut tied: Vec<TentativeEntry> = Vec::new();
    let mut cands: Vec<(usize, f64)> = Vec::new();
    while run.len() < k {
        let size = run.len();
        let top = loop {
            let mut top = heap.pop().expect("k < n leaves a candidate");
            if top.stamp == size {
                break top;
            }
            let gain = obj.gain(top.idx);
            evals += 1;
            run.bound_excess(gain - top.bound);
            top.bound = gain;
            top.stamp = size;
            match heap.peek() {
                Some(next) if *next > top => heap.push(top),
                _ => break top,
            }
        };
        // Everything whose bound reaches the tie window gets a fresh gain,
        // then the lowest tied index wins as in the standard engine.
        let mut best = top.bound;
        tied.clear();
        tied.push(top);
        while let Some(next) = heap.peek() {
            if next.bound < tie_floor(best) {
                break;
            }
            let mut e = heap.pop().expect("peeked");
            if e.stamp != size {
                let gain = obj.gain(e.idx);
                evals += 1;
                run.bound_excess(gain - e.bound);
                e.bound = gain;
                e.stamp = size;
            }
            best = best.max(e.bound);
            tied.push(e);
        }
        cands.clear();
        cands.extend(tied.iter().map(|e| (e.idx, e.bound)));
        let (idx, gain) = pick_tied(&cands).expect("top is present");
        heap.extend(tied.iter().copied().filter(|e| e.idx != idx));
        obj.accept(idx, gain);
        run.record(idx, gain, obj.value(), evals);
        evals = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heap_order_prefers_bound_then_low_index() {
        let a = TentativeEntry {
            idx: 3,
            bound: 1.0,
            stamp: 0,
        };
        let b = TentativeEntry {
            idx: 1,
            bound: 1.0,
            stamp: 0,
        };
        let c = TentativeEntry {
            idx: 0,
            bound: 0.5,
            stamp: 0,
        };
        let mut heap: BinaryHeap<_> = [a, b, c].into_iter().collect();
        assert_eq!(heap.pop().unwrap().idx, 1);
        assert_eq!(heap.pop().unwrap().idx, 3);
        assert_eq!(heap.pop().unwrap().idx, 0);
    }
}
