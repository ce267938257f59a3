//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;

pub fn brute_nondominated(points: &[Vec<f64>]) -> Vec<usize> {
    let weak = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x <= y);
    (0..points.len())
        .filter(|&i| {
            !(0..points.len()).any(|j| {
                j != i && weak(&points[j], &points[i]) && (points[j] != points[i] || j < i)
            })
        })
        .collect()
}

/// Inclusion-exclusion over all non-empty subsets.
pub fn hv_inclusion_exclusion(points: &[Vec<f64>], r: &[f64]) -> f64 {
    let n = points.len();
    assert!(n <= 16);
    let mut total = 0.0;
    for mask in 1u32..(1 << n) {
        let mut corner = vec![f64::NEG_INFINITY; r.len()];
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (c, x) in corner.iter_mut().zip(p) {
                    *c = c.max(*x);
                }
            }
        }
        let vol: f64 = corner
            .iter()
            .zip(r)
            .map(|(c, ri)| (ri - c).max(0.0))
            .product();
        if mask.count_ones() % 2 == 1 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    total
}

/// Two objectives: sums vertical slabs between consecutive distinct x values,
/// each as tall as the lowest point to its left.
pub fn hv_2d_slabs(points: &[Vec<f64>], r: &[f64]) -> f64 {
    let mut xs: Vec<f64> = points.iter().map(|p| p[0]).filter(|&x| x < r[0]).collect();
    xs.push(r[0]);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut area = 0.0;
    for w in xs.windows(2) {
        let low = points
            .iter()
            .filter(|p| p[0] <= w[0])
            .map(|p| p[1])
            .fold(f64::INFINITY, f64::min);
        if low < r[1] {
            area += (w[1] - w[0]) * (r[1] - low);
        }
    }
    area
}

pub fn dist(s: &[f64], r: &[f64], plus: bool) -> f64 {
    s.iter()
        .zip(r)
        .map(|(a, b)| {
            let t = if plus { (a - b).max(0.0) } else { a - b };
            t * t
        })
        .sum::<f64>()
        .sqrt()
}

pub fn igd_naive(set: &[Vec<f64>], reference: &[Vec<f64>], plus: bool) -> f64 {
    reference
        .iter()
        .map(|r| {
            set.iter()
                .map(|s| dist(s, r, plus))
                .fold(f64::INFINITY, f64::min)
        })
        .sum::<f64>()
        / reference.len() as f64
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 {
        0.0
    } else {
        d / a.abs().max(b.abs())
    }
}

/// Point clouds in the unit cube.
pub fn cloud(
    m: std::ops::RangeInclusive<usize>,
    n: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (m, n).prop_flat_map(|(m, n)| prop::collection::vec(prop::collection::vec(0.0f64..1.0, m), n))
}

/// Points on a randomly perturbed concave front, which keeps most of them
/// mutually non-dominated.
pub fn front(
    m: std::ops::RangeInclusive<usize>,
    n: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<Vec<f64>>> {
    cloud(m, n).prop_map(|pts| {
        pts.into_iter()
            .map(|p| {
                let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-9);
                p.iter().map(|x| x / norm).collect()
            })
            .collect()
    })
}
