mod common;

use std::collections::BTreeMap;

use common::{cloud, front, hv_2d_slabs, hv_inclusion_exclusion, rel_err};
use lazysel_core::{hv, hvc, joint_hvc_update, HvContext, PointSet};
use proptest::prelude::*;

fn refs(pts: &[Vec<f64>]) -> Vec<&[f64]> {
    pts.iter().map(|p| p.as_slice()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_inclusion_exclusion(pts in cloud(2..=4, 0..=8)) {
        let m = pts.first().map_or(3, |p| p.len());
        let r = vec![1.1; m];
        let mut ctx = HvContext::new(&r).unwrap();
        let got = hv(refs(&pts), &mut ctx).unwrap();
        let want = hv_inclusion_exclusion(&pts, &r);
        prop_assert!(rel_err(got, want) < 1e-9, "{} vs {}", got, want);
    }

    #[test]
    fn matches_two_dimensional_slabs(pts in front(2..=2, 1..=200)) {
        let r = [1.1, 1.1];
        let got = hv(refs(&pts), &mut HvContext::new(&r).unwrap()).unwrap();
        prop_assert!(rel_err(got, hv_2d_slabs(&pts, &r)) < 1e-9);
    }

    #[test]
    fn contribution_identity(pts in front(2..=6, 2..=12)) {
        let r = vec![1.1; pts[0].len()];
        let mut ctx = HvContext::new(&r).unwrap();
        let (p, rest) = pts.split_last().unwrap();
        let via_limit = hvc(p, refs(rest), &mut ctx).unwrap();
        let via_two = hv(refs(&pts), &mut ctx).unwrap() - hv(refs(rest), &mut ctx).unwrap();
        prop_assert!((via_limit - via_two).abs() <= 1e-9 * hv(refs(&pts), &mut ctx).unwrap().max(1e-300));
    }

    #[test]
    fn monotone_and_submodular(pts in front(2..=5, 3..=10), split in 0usize..100) {
        let r = vec![1.1; pts[0].len()];
        let mut ctx = HvContext::new(&r).unwrap();
        let (p, rest) = pts.split_last().unwrap();
        let cut = split % rest.len();
        let small = &rest[..cut];
        prop_assert!(hv(refs(small), &mut ctx).unwrap() <= hv(refs(rest), &mut ctx).unwrap() + 1e-12);
        let g_small = hvc(p, refs(small), &mut ctx).unwrap();
        let g_big = hvc(p, refs(rest), &mut ctx).unwrap();
        prop_assert!(g_small >= g_big - 1e-9);
    }

    #[test]
    fn joint_update_equals_fresh(pts in front(2..=5, 3..=14), split in 1usize..100) {
        let m = pts[0].len();
        let r = vec![1.1; m];
        let mut ctx = HvContext::new(&r).unwrap();
        let cut = 1 + split % (pts.len() - 2);
        let (selected_rows, others) = pts.split_at(cut);
        let (added, candidates_rows) = others.split_first().unwrap();
        let selected = PointSet::from_rows(selected_rows).unwrap();
        let candidates = PointSet::from_rows(candidates_rows).unwrap();
        let mut values: BTreeMap<usize, f64> = (0..candidates.len())
            .map(|i| (i, hvc(candidates.point(i), selected.iter(), &mut ctx).unwrap()))
            .collect();
        joint_hvc_update(&mut values, &candidates, &selected, added, &mut ctx).unwrap();
        let mut after = selected.clone();
        after.push(added).unwrap();
        for (&i, &v) in &values {
            let fresh = hvc(candidates.point(i), after.iter(), &mut ctx).unwrap();
            let scale = hvc(candidates.point(i), std::iter::empty(), &mut ctx).unwrap();
            prop_assert!((v - fresh).abs() <= 1e-9 * scale, "{} vs {}", v, fresh);
        }
    }

    #[test]
    fn context_reuse_does_not_leak(a in front(3..=3, 1..=20), b in front(3..=3, 1..=20)) {
        let r = [1.1; 3];
        let mut shared = HvContext::new(&r).unwrap();
        let first = hv(refs(&a), &mut shared).unwrap();
        let _ = hv(refs(&b), &mut shared).unwrap();
        let again = hv(refs(&a), &mut shared).unwrap();
        let fresh = hv(refs(&a), &mut HvContext::new(&r).unwrap()).unwrap();
        prop_assert_eq!(first.to_bits(), again.to_bits());
        prop_assert_eq!(first.to_bits(), fresh.to_bits());
    }
}

#[test]
fn staircase_on_sorted_front() {
    // Sorted 2-D front: the staircase sum can be written down directly.
    let pts = vec![
        vec![0.1, 0.9],
        vec![0.3, 0.6],
        vec![0.6, 0.4],
        vec![0.9, 0.1],
    ];
    let r = [1.0, 1.0];
    let mut want = 0.0;
    let mut prev = r[1];
    for p in &pts {
        want += (r[0] - p[0]) * (prev - p[1]);
        prev = p[1];
    }
    let got = hv(refs(&pts), &mut HvContext::new(&r).unwrap()).unwrap();
    assert!((got - want).abs() < 1e-15);
    assert!((got - 0.41).abs() < 1e-12);
}
