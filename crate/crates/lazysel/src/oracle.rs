//! Slow reference computations that share no code with the library.

/// Hypervolume by inclusion-exclusion over all non-empty subsets.
pub fn hv_inclusion_exclusion(points: &[&[f64]], r: &[f64]) -> f64 {
    let n = points.len();
    assert!(n <= 20, "inclusion-exclusion is exponential");
    let mut total = 0.0;
    let mut corner = vec![0.0; r.len()];
    for mask in 1u32..(1 << n) {
        corner.iter_mut().for_each(|c| *c = f64::NEG_INFINITY);
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (c, x) in corner.iter_mut().zip(p.iter()) {
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

/// Two-objective hypervolume by a sweep over `x`, O(n log n).
pub fn hv_2d_sweep(points: &[&[f64]], r: &[f64]) -> f64 {
    let mut pts: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p[0], p[1]))
        .filter(|&(x, y)| x < r[0] && y < r[1])
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut area = 0.0;
    let mut low = r[1];
    for (i, &(x, y)) in pts.iter().enumerate() {
        low = low.min(y);
        let next = pts.get(i + 1).map_or(r[0], |p| p.0);
        area += (next - x) * (r[1] - low);
    }
    area
}

fn distance(s: &[f64], r: &[f64], plus: bool) -> f64 {
    s.iter()
        .zip(r)
        .map(|(a, b)| {
            let t = if plus { (a - b).max(0.0) } else { a - b };
            t * t
        })
        .sum::<f64>()
        .sqrt()
}

/// IGD (or IGD+ when `plus`) by a double loop.
pub fn igd_naive(set: &[&[f64]], reference: &[&[f64]], plus: bool) -> f64 {
    reference
        .iter()
        .map(|r| {
            set.iter()
                .map(|s| distance(s, r, plus))
                .fold(f64::INFINITY, f64::min)
        })
        .sum::<f64>()
        / reference.len() as f64
}

/// Calls `visit` with every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
