//! Exact hypervolume and hypervolume contributions.
//!
//! The kernel is WFG: points are sorted by their last objective (worst
//! first), and each point's exclusive volume is its box minus the volume of
//! the later points limited to that box. Because later points are never worse
//! in the last objective, every limit set shares one last coordinate and the
//! recursion drops a dimension at every level. Limit sets are filtered to
//! their non-dominated members before recursing; two objectives are handled
//! by a staircase sweep.
//!
//! Contributions use the limit reduction `HVC(p, S) = HV({p}) - HV(S')`, with
//! `S'` the members of `S` clipped to the box of `p` by a coordinate-wise max.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::mem;

use crate::error::{check_dim, Error};
use crate::geometry::{strictly_below, weakly_dominates_unchecked, PointSet};

/// Reference point plus reusable scratch space for the WFG recursion.
///
/// Not shareable between threads while in use; create one per thread.
#[derive(Debug, Clone)]
pub struct HvContext {
    reference: Vec<f64>,
    scratch: Scratch,
    kernel_calls: u64,
}

#[derive(Debug, Clone, Default)]
struct Scratch {
    // Input of the recursion at each depth.
    levels: Vec<Vec<f64>>,
    sorted: Vec<Vec<f64>>,
    order: Vec<Vec<usize>>,
    pairs: Vec<(f64, f64)>,
}

impl Scratch {
    fn ensure_depth(&mut self, depth: usize) {
        while self.levels.len() <= depth {
            self.levels.push(Vec::new());
            self.sorted.push(Vec::new());
            self.order.push(Vec::new());
        }
    }
}

impl HvContext {
    pub fn new(reference: &[f64]) -> Result<Self, Error> {
        if reference.len() < 2 {
            return Err(Error::DimensionTooSmall(reference.len()));
        }
        if let Some(c) = reference.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { point: 0, coord: c });
        }
        let mut scratch = Scratch::default();
        scratch.ensure_depth(reference.len());
        Ok(HvContext {
            reference: reference.to_vec(),
            scratch,
            kernel_calls: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.reference.len()
    }

    pub fn reference(&self) -> &[f64] {
        &self.reference
    }

    /// Number of WFG recursion frames entered since construction or the last
    /// reset.
    pub fn kernel_calls(&self) -> u64 {
        self.kernel_calls
    }

    pub fn reset_kernel_calls(&mut self) {
        self.kernel_calls = 0;
    }

    /// Hypervolume of a row-major point buffer. Panics if the buffer length
    /// is not a multiple of the dimension.
    pub fn hv_flat(&mut self, flat: &[f64]) -> f64 {
        let m = self.dim();
        assert_eq!(flat.len() % m, 0, "buffer is not a whole number of points");
        let HvContext {
            reference,
            scratch,
            kernel_calls,
        } = self;
        let mut buf = mem::take(&mut scratch.levels[0]);
        buf.clear();
        let mut cnt = 0;
        for p in flat.chunks_exact(m) {
            if strictly_below(p, reference) {
                cnt = push_nondominated(&mut buf, cnt, p);
            }
        }
        scratch.levels[0] = buf;
        wfg(scratch, reference, 0, cnt, m, kernel_calls)
    }

    /// Contribution of `p` to the row-major set `flat`.
    pub fn hvc_flat(&mut self, p: &[f64], flat: &[f64]) -> f64 {
        let m = self.dim();
        debug_assert_eq!(p.len(), m);
        if !strictly_below(p, &self.reference) {
            return 0.0;
        }
        let HvContext {
            reference,
            scratch,
            kernel_calls,
        } = self;
        let mut buf = mem::take(&mut scratch.levels[0]);
        buf.clear();
        let mut cnt = 0;
        let mut limited = [0.0f64; 32];
        let mut heap_limited = Vec::new();
        let l: &mut [f64] = if m <= limited.len() {
            &mut limited[..m]
        } else {
            heap_limited.resize(m, 0.0);
            &mut heap_limited
        };
        for s in flat.chunks_exact(m) {
            if weakly_dominates_unchecked(s, p) {
                scratch.levels[0] = buf;
                return 0.0;
            }
            for ((li, si), pi) in l.iter_mut().zip(s).zip(p) {
                *li = si.max(*pi);
            }
            if strictly_below(l, reference) {
                cnt = push_nondominated(&mut buf, cnt, l);
            }
        }
        scratch.levels[0] = buf;
        let covered = wfg(scratch, reference, 0, cnt, m, kernel_calls);
        (box_volume(p, reference) - covered).max(0.0)
    }
}

/// Coordinate-wise maximum of `s` and `p`.
pub fn limit(s: &[f64], p: &[f64]) -> Result<Vec<f64>, Error> {
    check_dim(s.len(), p.len())?;
    Ok(s.iter().zip(p).map(|(a, b)| a.max(*b)).collect())
}

/// Hypervolume of `set` with respect to the context's reference point.
pub fn hv<'a, I>(set: I, ctx: &mut HvContext) -> Result<f64, Error>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let flat = gather(set, ctx.dim())?;
    Ok(ctx.hv_flat(&flat))
}

/// `HV(set ∪ {p}) - HV(set)`.
pub fn hvc<'a, I>(p: &[f64], set: I, ctx: &mut HvContext) -> Result<f64, Error>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    check_dim(ctx.dim(), p.len())?;
    let flat = gather(set, ctx.dim())?;
    Ok(ctx.hvc_flat(p, &flat))
}

fn gather<'a, I>(set: I, m: usize) -> Result<Vec<f64>, Error>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let mut flat = Vec::new();
    for p in set {
        check_dim(m, p.len())?;
        flat.extend_from_slice(p);
    }
    Ok(flat)
}

/// Amount by which the contribution of `candidate` to `selected` shrinks when
/// `added` joins `selected`: the volume dominated by both points but not by
/// `selected`, i.e. `HVC(worse(candidate, added), selected)`.
pub(crate) fn joint_term(
    ctx: &mut HvContext,
    candidate: &[f64],
    added: &[f64],
    selected: &[f64],
) -> f64 {
    let mut w = [0.0f64; 32];
    let mut heap_w = Vec::new();
    let m = candidate.len();
    let w: &mut [f64] = if m <= w.len() {
        &mut w[..m]
    } else {
        heap_w.resize(m, 0.0);
        &mut heap_w
    };
    for ((wi, c), a) in w.iter_mut().zip(candidate).zip(added) {
        *wi = c.max(*a);
    }
    ctx.hvc_flat(w, selected)
}

/// Brings exact contributions up to date after `added` is included into
/// `selected`.
///
/// `values` maps candidate indices (into `candidates`) to their contribution
/// to `selected` before the inclusion; `selected` must not yet contain
/// `added`. Candidates weakly dominated by `added` drop to zero.
pub fn joint_hvc_update(
    values: &mut BTreeMap<usize, f64>,
    candidates: &PointSet,
    selected: &PointSet,
    added: &[f64],
    ctx: &mut HvContext,
) -> Result<(), Error> {
    check_dim(ctx.dim(), candidates.dim())?;
    check_dim(ctx.dim(), selected.dim())?;
    check_dim(ctx.dim(), added.len())?;
    if let Some((&bad, _)) = values.range(candidates.len()..).next() {
        return Err(Error::UnknownIndex(bad));
    }
    for (&idx, value) in values.iter_mut() {
        let c = candidates.point(idx);
        if weakly_dominates_unchecked(added, c) {
            *value = 0.0;
        } else {
            *value -= joint_term(ctx, c, added, selected.as_flat());
        }
    }
    Ok(())
}

#[inline]
pub(crate) fn box_volume(p: &[f64], r: &[f64]) -> f64 {
    p.iter().zip(r).map(|(a, b)| b - a).product()
}

/// Appends `p` to the first `cnt` points of `buf` unless one of them weakly
/// dominates it, dropping members that `p` weakly dominates. Returns the new
/// count.
fn push_nondominated(buf: &mut Vec<f64>, cnt: usize, p: &[f64]) -> usize {
    let d = p.len();
    debug_assert_eq!(buf.len(), cnt * d);
    if buf
        .chunks_exact(d)
        .any(|q| weakly_dominates_unchecked(q, p))
    {
        return cnt;
    }
    let mut write = 0;
    for read in 0..cnt {
        if !weakly_dominates_unchecked(p, &buf[read * d..(read + 1) * d]) {
            if read != write {
                buf.copy_within(read * d..(read + 1) * d, write * d);
            }
            write += 1;
        }
    }
    buf.truncate(write * d);
    buf.extend_from_slice(p);
    write + 1
}

fn lex_from_last(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Hypervolume of the `n` points of dimension `d` stored in
/// `scratch.levels[depth]`. All points are strictly inside the first `d`
/// coordinates of `reference` and mutually non-dominated.
fn wfg(
    scratch: &mut Scratch,
    reference: &[f64],
    depth: usize,
    n: usize,
    d: usize,
    calls: &mut u64,
) -> f64 {
    *calls += 1;
    let r = &reference[..d];
    let input = mem::take(&mut scratch.levels[depth]);
    let volume = match n {
        0 => 0.0,
        1 => box_volume(&input[..d], r),
        2 => {
            let (a, b) = input.split_at(d);
            let joint: f64 = a
                .iter()
                .zip(b)
                .zip(r)
                .map(|((x, y), ri)| ri - x.max(*y))
                .product();
            box_volume(a, r) + box_volume(b, r) - joint
        }
        _ if d == 2 => staircase(&mut scratch.pairs, &input, r),
        _ => slice(scratch, reference, &input, depth, n, d, calls),
    };
    scratch.levels[depth] = input;
    volume
}

fn staircase(pairs: &mut Vec<(f64, f64)>, input: &[f64], r: &[f64]) -> f64 {
    pairs.clear();
    pairs.extend(input.chunks_exact(2).map(|p| (p[0], p[1])));
    pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut area = 0.0;
    let mut floor = r[1];
    for &(x, y) in pairs.iter() {
        if y < floor {
            area += (r[0] - x) * (floor - y);
            floor = y;
        }
    }
    area
}

fn slice(
    scratch: &mut Scratch,
    reference: &[f64],
    input: &[f64],
    depth: usize,
    n: usize,
    d: usize,
    calls: &mut u64,
) -> f64 {
    scratch.ensure_depth(depth + 1);
    let r = &reference[..d];
    let dd = d - 1;

    let mut order = mem::take(&mut scratch.order[depth]);
    order.clear();
    order.extend(0..n);
    let pt = |i: usize| &input[i * d..(i + 1) * d];
    order.sort_unstable_by(|&a, &b| lex_from_last(pt(b), pt(a)));
    let mut sorted = mem::take(&mut scratch.sorted[depth]);
    sorted.clear();
    for &i in &order {
        sorted.extend_from_slice(pt(i));
    }
    scratch.order[depth] = order;

    let mut total = 0.0;
    for k in 0..n {
        let pk = &sorted[k * d..(k + 1) * d];
        let head = &pk[..dd];
        let mut next = mem::take(&mut scratch.levels[depth + 1]);
        let cnt = limit_set(&mut next, head, &sorted[(k + 1) * d..], d);
        scratch.levels[depth + 1] = next;
        let Some(cnt) = cnt else { continue };
        let covered = if cnt == 0 {
            0.0
        } else {
            wfg(scratch, reference, depth + 1, cnt, dd, calls)
        };
        total += (r[dd] - pk[dd]) * (box_volume(head, &r[..dd]) - covered);
    }
    scratch.sorted[depth] = sorted;
    total
}

/// Writes the non-dominated part of `{limit(q[..dd], head) : q in rest}` into
/// `out`. Returns `None` when some limited point equals `head`, i.e. the
/// exclusive volume of `head` is zero.
fn limit_set(out: &mut Vec<f64>, head: &[f64], rest: &[f64], d: usize) -> Option<usize> {
    let dd = head.len();
    out.clear();
    let mut cnt = 0;
    let mut l = [0.0f64; 32];
    let mut heap_l = Vec::new();
    let l: &mut [f64] = if dd <= l.len() {
        &mut l[..dd]
    } else {
        heap_l.resize(dd, 0.0);
        &mut heap_l
    };
    for q in rest.chunks_exact(d) {
        let q = &q[..dd];
        if weakly_dominates_unchecked(q, head) {
            return None;
        }
        for ((li, qi), hi) in l.iter_mut().zip(q).zip(head) {
            *li = qi.max(*hi);
        }
        cnt = push_nondominated(out, cnt, l);
    }
    Some(cnt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ctx2() -> HvContext {
        HvContext::new(&[1.1, 1.1]).unwrap()
    }

    #[test]
    fn single_box() {
        let v = hv([&[0.5, 0.5][..]], &mut ctx2()).unwrap();
        assert!((v - 0.36).abs() < 1e-15);
    }

    #[test]
    fn empty_set_has_zero_volume() {
        assert_eq!(hv(core::iter::empty(), &mut ctx2()).unwrap(), 0.0);
    }

    #[test]
    fn three_point_front() {
        // Inclusion-exclusion by hand: three boxes minus the two overlaps
        // between neighbours (the outer pair overlaps only inside the inner
        // point's box, so the triple term cancels it).
        let pts: [&[f64]; 3] = [&[0.2, 0.8], &[0.5, 0.5], &[0.8, 0.2]];
        let boxes = 0.9 * 0.3 + 0.6 * 0.6 + 0.3 * 0.9;
        let pair = 0.6 * 0.3 + 0.3 * 0.6 + 0.3 * 0.3;
        let triple = 0.3 * 0.3;
        let expected = boxes - pair + triple;
        let v = hv(pts, &mut ctx2()).unwrap();
        assert!((v - expected).abs() < 1e-12, "{v} vs {expected}");
    }

    #[test]
    fn points_outside_reference_are_clipped() {
        let v = hv([&[0.5, 0.5][..], &[0.0, 2.0][..]], &mut ctx2()).unwrap();
        assert!((v - 0.36).abs() < 1e-15);
    }

    #[test]
    fn hvc_examples() {
        let mut ctx = ctx2();
        let empty: [&[f64]; 0] = [];
        assert!((hvc(&[0.5, 0.5], empty, &mut ctx).unwrap() - 0.36).abs() < 1e-15);
        assert_eq!(hvc(&[0.6, 0.6], [&[0.5, 0.5][..]], &mut ctx).unwrap(), 0.0);

        let set: [&[f64]; 2] = [&[0.2, 0.8], &[0.8, 0.2]];
        let with: [&[f64]; 3] = [&[0.2, 0.8], &[0.8, 0.2], &[0.5, 0.5]];
        let expected = hv(with, &mut ctx).unwrap() - hv(set, &mut ctx).unwrap();
        let got = hvc(&[0.5, 0.5], set, &mut ctx).unwrap();
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 0.09).abs() < 1e-12);
    }

    #[test]
    fn limit_examples() {
        assert_eq!(limit(&[0.2, 0.8], &[0.5, 0.5]).unwrap(), vec![0.5, 0.8]);
        assert_eq!(limit(&[0.5, 0.5], &[0.5, 0.5]).unwrap(), vec![0.5, 0.5]);
        assert_eq!(limit(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), vec![1.0, 1.0]);
        assert!(limit(&[1.0, 0.0], &[0.0, 1.0, 2.0]).is_err());
    }

    #[test]
    fn dimension_errors() {
        let mut ctx = ctx2();
        assert!(hv([&[0.5, 0.5, 0.5][..]], &mut ctx).is_err());
        let empty: [&[f64]; 0] = [];
        assert!(hvc(&[0.5], empty, &mut ctx).is_err());
        assert!(HvContext::new(&[1.0]).is_err());
        assert!(HvContext::new(&[1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn joint_update_matches_fresh_contribution() {
        let mut ctx = ctx2();
        let candidates = PointSet::from_rows(&[vec![0.5, 0.5]]).unwrap();
        let selected = PointSet::from_rows(&[vec![0.2, 0.8]]).unwrap();
        let mut values = BTreeMap::new();
        values.insert(0, ctx.hvc_flat(&[0.5, 0.5], selected.as_flat()));
        joint_hvc_update(&mut values, &candidates, &selected, &[0.8, 0.2], &mut ctx).unwrap();
        let fresh = ctx.hvc_flat(&[0.5, 0.5], &[0.2, 0.8, 0.8, 0.2]);
        assert!((values[&0] - fresh).abs() < 1e-12);
    }

    #[test]
    fn joint_update_disjoint_and_dominating() {
        let mut ctx = HvContext::new(&[1.0, 1.0]).unwrap();
        // The region shared by the candidate (0, 0.5) and the added point
        // (0.5, 0) is already covered by (0.3, 0.3).
        let candidates = PointSet::from_rows(&[vec![0.0, 0.5], vec![0.7, 0.7]]).unwrap();
        let selected = PointSet::from_rows(&[vec![0.3, 0.3]]).unwrap();
        let mut values = BTreeMap::new();
        let before = ctx.hvc_flat(candidates.point(0), selected.as_flat());
        assert!((before - 0.15).abs() < 1e-12);
        values.insert(0, before);
        joint_hvc_update(&mut values, &candidates, &selected, &[0.5, 0.0], &mut ctx).unwrap();
        assert_eq!(values[&0], before);

        values.insert(1, 0.09);
        joint_hvc_update(
            &mut values,
            &candidates,
            &PointSet::empty(2),
            &[0.6, 0.6],
            &mut ctx,
        )
        .unwrap();
        assert_eq!(values[&1], 0.0);
    }

    #[test]
    fn joint_update_rejects_unknown_index() {
        let mut ctx = ctx2();
        let candidates = PointSet::from_rows(&[vec![0.5, 0.5]]).unwrap();
        let mut values = BTreeMap::new();
        values.insert(3, 1.0);
        let err = joint_hvc_update(
            &mut values,
            &candidates,
            &PointSet::empty(2),
            &[0.1, 0.1],
            &mut ctx,
        );
        assert_eq!(err, Err(Error::UnknownIndex(3)));
    }

    #[test]
    fn repeated_calls_are_identical() {
        let mut ctx = HvContext::new(&[1.1, 1.1, 1.1, 1.1]).unwrap();
        let pts = [
            0.1, 0.6, 0.3, 0.9, 0.4, 0.2, 0.8, 0.3, 0.7, 0.5, 0.1, 0.6, 0.3, 0.3, 0.5, 0.5, 0.9,
            0.1, 0.4, 0.2,
        ];
        let a = ctx.hv_flat(&pts);
        let b = ctx.hv_flat(&pts);
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
