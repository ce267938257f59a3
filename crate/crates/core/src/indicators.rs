//! IGD and IGD+ with an incremental nearest-distance cache.
//!
//! The cache holds, for every reference point, the distance to its nearest
//! selected solution. The improvement from adding one candidate then costs a
//! single pass over the reference set: `(1/|R|) Σ max(0, D_i - D'_i)`.

use alloc::vec::Vec;

use crate::error::{check_dim, Error};
use crate::geometry::PointSet;
use crate::math::sqrt;

/// Distance used between a solution and a reference point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Euclidean,
    /// `sqrt(Σ max(0, s_i - r_i)^2)`: zero when the solution weakly
    /// dominates the reference point.
    IgdPlus,
}

impl Metric {
    /// Squared distance from solution `s` to reference point `r`.
    #[inline]
    pub(crate) fn squared(self, s: &[f64], r: &[f64]) -> f64 {
        match self {
            Metric::Euclidean => s.iter().zip(r).map(|(a, b)| (a - b) * (a - b)).sum(),
            Metric::IgdPlus => s
                .iter()
                .zip(r)
                .map(|(a, b)| {
                    let t = (a - b).max(0.0);
                    t * t
                })
                .sum(),
        }
    }

    /// Squared distance, or any value `>= bound` once the partial sum reaches
    /// `bound`.
    #[inline]
    fn squared_capped(self, s: &[f64], r: &[f64], bound: f64) -> f64 {
        let mut acc = 0.0;
        for (a, b) in s.iter().zip(r) {
            let t = match self {
                Metric::Euclidean => a - b,
                Metric::IgdPlus => (a - b).max(0.0),
            };
            acc += t * t;
            if acc >= bound {
                return acc;
            }
        }
        acc
    }

    pub fn distance(self, s: &[f64], r: &[f64]) -> Result<f64, Error> {
        check_dim(s.len(), r.len())?;
        Ok(sqrt(self.squared(s, r)))
    }
}

pub fn euclid(s: &[f64], r: &[f64]) -> Result<f64, Error> {
    Metric::Euclidean.distance(s, r)
}

pub fn igd_plus_dist(s: &[f64], r: &[f64]) -> Result<f64, Error> {
    Metric::IgdPlus.distance(s, r)
}

/// Mean over `reference` of the distance to the nearest member of `set`.
pub fn igd(set: &PointSet, reference: &PointSet, metric: Metric) -> Result<f64, Error> {
    if set.is_empty() {
        return Err(Error::EmptyInput);
    }
    if reference.is_empty() {
        return Err(Error::EmptyReferenceSet);
    }
    check_dim(reference.dim(), set.dim())?;
    let cache = DistanceCache::from_set(set, reference, metric)?;
    Ok(cache.mean())
}

/// Nearest-solution distance for every reference point.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceCache {
    dist: Vec<f64>,
    // Squared distances exactly as summed, so that `sqrt(sq[i]) == dist[i]`.
    sq: Vec<f64>,
    metric: Metric,
}

impl DistanceCache {
    /// Cache for the one-point set `{first}`.
    pub fn seeded(first: &[f64], reference: &PointSet, metric: Metric) -> Result<Self, Error> {
        if reference.is_empty() {
            return Err(Error::EmptyReferenceSet);
        }
        check_dim(reference.dim(), first.len())?;
        let sq: Vec<f64> = reference.iter().map(|r| metric.squared(first, r)).collect();
        let dist = sq.iter().map(|&s| sqrt(s)).collect();
        Ok(DistanceCache { dist, sq, metric })
    }

    pub fn from_set(set: &PointSet, reference: &PointSet, metric: Metric) -> Result<Self, Error> {
        let mut it = set.iter();
        let first = it.next().ok_or(Error::EmptyInput)?;
        let mut cache = DistanceCache::seeded(first, reference, metric)?;
        for p in it {
            cache.include(p, reference);
        }
        Ok(cache)
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn distances(&self) -> &[f64] {
        &self.dist
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// IGD (or IGD+) of the cached set.
    pub fn mean(&self) -> f64 {
        self.dist.iter().sum::<f64>() / self.dist.len() as f64
    }

    /// `IGD(S) - IGD(S ∪ {a})` without materializing the distances to `a`.
    /// Reads one distance per reference point.
    #[inline]
    pub(crate) fn gain(&self, a: &[f64], reference: &PointSet) -> f64 {
        let mut acc = 0.0;
        for ((r, &d), &bound) in reference.iter().zip(&self.dist).zip(&self.sq) {
            let s = self.metric.squared_capped(a, r, bound);
            // sqrt is monotone, so comparing squares decides the min exactly.
            if s < bound {
                acc += d - sqrt(s);
            }
        }
        acc / self.dist.len() as f64
    }

    pub(crate) fn include(&mut self, a: &[f64], reference: &PointSet) {
        for ((r, d), sq) in reference
            .iter()
            .zip(self.dist.iter_mut())
            .zip(self.sq.iter_mut())
        {
            let s = self.metric.squared(a, r);
            if s < *sq {
                *sq = s;
                *d = sqrt(s);
            }
        }
    }
}

/// Improvement of adding `a` to the cached set, and the distances from every
/// reference point to `a`. The cache is left untouched.
pub fn improvement(
    a: &[f64],
    cache: &DistanceCache,
    reference: &PointSet,
) -> Result<(f64, Vec<f64>), Error> {
    check_dim(reference.dim(), a.len())?;
    if reference.len() != cache.len() {
        return Err(Error::DimensionMismatch {
            expected: cache.len(),
            found: reference.len(),
        });
    }
    let d_prime: Vec<f64> = reference
        .iter()
        .map(|r| sqrt(cache.metric.squared(a, r)))
        .collect();
    let delta = cache
        .dist
        .iter()
        .zip(&d_prime)
        .map(|(d, dp)| if dp < d { d - dp } else { 0.0 })
        .sum::<f64>()
        / cache.len() as f64;
    Ok((delta, d_prime))
}

/// `D = min(D, D')`.
pub fn commit(cache: &mut DistanceCache, d_prime: &[f64]) -> Result<(), Error> {
    if d_prime.len() != cache.len() {
        return Err(Error::DimensionMismatch {
            expected: cache.len(),
            found: d_prime.len(),
        });
    }
    for ((d, sq), &dp) in cache.dist.iter_mut().zip(cache.sq.iter_mut()).zip(d_prime) {
        if dp < *d {
            *d = dp;
            *sq = dp * dp;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn euclid_examples() {
        assert_eq!(euclid(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(euclid(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert!(close(
            euclid(&[0.5, 0.5], &[1.0, 0.0]).unwrap(),
            core::f64::consts::FRAC_1_SQRT_2,
            1e-15
        ));
        assert!(euclid(&[0.5], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn igd_plus_examples() {
        assert!(close(
            igd_plus_dist(&[0.5, 0.5], &[1.0, 0.0]).unwrap(),
            0.5,
            1e-15
        ));
        assert_eq!(igd_plus_dist(&[0.2, 0.3], &[0.5, 0.5]).unwrap(), 0.0);
        let s = [0.6, 0.7];
        let r = [0.5, 0.5];
        assert!(close(igd_plus_dist(&s, &r).unwrap(), 0.05f64.sqrt(), 1e-15));
        assert_eq!(igd_plus_dist(&s, &r).unwrap(), euclid(&s, &r).unwrap());
    }

    #[test]
    fn igd_examples() {
        let r = PointSet::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(igd(&r, &r, Metric::Euclidean).unwrap(), 0.0);
        let s = PointSet::from_rows(&[vec![0.0, 1.0]]).unwrap();
        let v = igd(&s, &r, Metric::Euclidean).unwrap();
        assert!(close(v, core::f64::consts::SQRT_2 / 2.0, 1e-15));
        assert_eq!(
            igd(&PointSet::empty(2), &r, Metric::Euclidean),
            Err(Error::EmptyInput)
        );
        assert_eq!(
            igd(&s, &PointSet::empty(2), Metric::Euclidean),
            Err(Error::EmptyReferenceSet)
        );
    }

    #[test]
    fn improvement_of_member_is_zero() {
        let r = PointSet::from_rows(&[vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]]).unwrap();
        let cache = DistanceCache::seeded(&[0.5, 0.5], &r, Metric::Euclidean).unwrap();
        let (delta, d_prime) = improvement(&[0.5, 0.5], &cache, &r).unwrap();
        assert_eq!(delta, 0.0);
        assert_eq!(d_prime, cache.distances());
    }

    #[test]
    fn improvement_then_commit() {
        let r = PointSet::from_rows(&[vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]]).unwrap();
        let mut cache = DistanceCache::seeded(&[0.0, 1.0], &r, Metric::Euclidean).unwrap();
        let before = cache.mean();
        let (delta, d_prime) = improvement(&[1.0, 0.0], &cache, &r).unwrap();
        assert!(close(delta, 2f64.sqrt() / 3.0, 1e-15));
        assert_eq!(delta, cache.gain(&[1.0, 0.0], &r));
        commit(&mut cache, &d_prime).unwrap();
        assert!(close(cache.mean(), before - delta, 1e-15));
    }

    #[test]
    fn commit_takes_elementwise_min() {
        let r = PointSet::from_rows(&[vec![0.0, 0.0], vec![3.0, 0.0]]).unwrap();
        let mut cache = DistanceCache::seeded(&[1.0, 0.0], &r, Metric::Euclidean).unwrap();
        assert_eq!(cache.distances(), &[1.0, 2.0]);
        commit(&mut cache, &[2.0, 1.0]).unwrap();
        assert_eq!(cache.distances(), &[1.0, 1.0]);
        commit(&mut cache, &[1.0, 1.0]).unwrap();
        assert_eq!(cache.distances(), &[1.0, 1.0]);
        assert!(commit(&mut cache, &[1.0]).is_err());
    }
}
