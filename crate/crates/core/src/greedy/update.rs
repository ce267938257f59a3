use alloc::vec::Vec;

use crate::error::Error;
use crate::geometry::{weakly_dominates_unchecked, CandidateSet};
use crate::hypervolume::joint_term;

use super::{
    pick_tied, precheck, Engine, HvObjective, IndicatorKind, Objective, Run, SelectionResult,
};

// Updated contributions drift from fresh ones by rounding. Candidates whose
// updated value is within this window of the maximum are recomputed from
// scratch before the pick, so the choice matches the standard engine.
const REL_WINDOW: f64 = 1e-9;
const ABS_WINDOW: f64 = 1e-12;

/// Hypervolume greedy inclusion with incremental contribution updates.
///
/// All candidates' contributions are kept exact: after each inclusion every
/// remaining contribution loses the volume it shares with the new member
/// outside the previous selection. Returns the same sequence as
/// [`super::select_standard`] with hypervolume.
pub fn select_update(set: &CandidateSet, k: usize) -> Result<SelectionResult, Error> {
    let kind = IndicatorKind::Hypervolume;
    if let Some(all) = precheck(set, k, Engine::Update, kind)? {
        return Ok(all);
    }
    let n = set.len();
    let points = set.points();
    let mut run = Run::new(n);
    let mut obj = HvObjective::new(set)?;

    let mut values: Vec<f64> = (0..n).map(|i| obj.gain(i)).collect();
    // Contributions that are exactly zero stay zero.
    let mut dead: Vec<bool> = values.iter().map(|&v| v == 0.0).collect();
    let scale = values.iter().cloned().fold(0.0, f64::max);
    let mut evals = n;
    let mut refreshed: Vec<usize> = Vec::new();

    while run.len() < k {
        let top = (0..n)
            .filter(|&i| !run.taken[i])
            .map(|i| values[i])
            .fold(f64::NEG_INFINITY, f64::max);
        let floor = top - (REL_WINDOW * top.abs() + ABS_WINDOW * scale);

        refreshed.clear();
        refreshed.extend((0..n).filter(|&i| !run.taken[i] && values[i] >= floor));
        let fresh_needed = run.len() > 0;
        let mut fresh: Vec<(usize, f64)> = Vec::with_capacity(refreshed.len());
        for &i in &refreshed {
            let v = if fresh_needed && !dead[i] {
                evals += 1;
                let v = obj.gain(i);
                values[i] = v;
                v
            } else {
                values[i]
            };
            fresh.push((i, v));
        }
        let (idx, gain) = pick_tied(&fresh).expect("k < n leaves a candidate");
        obj.accept(idx, gain);
        run.record(idx, gain, obj.value(), evals);
        evals = 0;
        if run.len() == k {
            break;
        }

        // `obj.selected` now ends with the new member; the joint term is
        // measured against the selection before it.
        let added = points.point(idx);
        let before = &obj.selected[..obj.selected.len() - added.len()];
        for i in 0..n {
            if run.taken[i] || dead[i] {
                continue;
            }
            let c = points.point(i);
            if weakly_dominates_unchecked(added, c) {
                values[i] = 0.0;
                dead[i] = true;
                continue;
            }
            evals += 1;
            values[i] -= joint_term(&mut obj.ctx, c, added, before);
        }
    }
    let calls = obj.kernel_calls();
    Ok(run.finish(set, Engine::Update, kind, calls))
}
