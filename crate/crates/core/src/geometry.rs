//! Objective-space points, Pareto dominance and candidate-set construction.
//!
//! Everything is minimization. Maximization problems must be negated before
//! they reach this module.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Deref;

use crate::error::{check_dim, Error};

/// One objective vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    /// Validates `m >= 2` and that every coordinate is finite.
    pub fn new(coords: Vec<f64>) -> Result<Self, Error> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        if let Some(c) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { point: 0, coord: c });
        }
        Ok(Point(coords))
    }

    pub fn splat(value: f64, m: usize) -> Result<Self, Error> {
        Point::new(alloc::vec![value; m])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// A dense row-major collection of points sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    coords: Vec<f64>,
    m: usize,
}

impl PointSet {
    pub fn empty(m: usize) -> Self {
        PointSet {
            coords: Vec::new(),
            m,
        }
    }

    /// Builds a set from rows, checking dimension and finiteness.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, Error> {
        let first = rows.first().ok_or(Error::EmptyInput)?;
        let m = first.as_ref().len();
        if m < 2 {
            return Err(Error::DimensionTooSmall(m));
        }
        let mut coords = Vec::with_capacity(rows.len() * m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            check_dim(m, row.len())?;
            if let Some(c) = row.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFinite { point: i, coord: c });
            }
            coords.extend_from_slice(row);
        }
        Ok(PointSet { coords, m })
    }

    pub fn from_flat(coords: Vec<f64>, m: usize) -> Result<Self, Error> {
        if m < 2 {
            return Err(Error::DimensionTooSmall(m));
        }
        if !coords.len().is_multiple_of(m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: coords.len() % m,
            });
        }
        if let Some(at) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                point: at / m,
                coord: at % m,
            });
        }
        Ok(PointSet { coords, m })
    }

    pub fn push(&mut self, p: &[f64]) -> Result<(), Error> {
        check_dim(self.m, p.len())?;
        self.coords.extend_from_slice(p);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.m
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.m..(i + 1) * self.m]
    }

    pub fn iter(&self) -> core::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.m)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    /// The points at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        let mut coords = Vec::with_capacity(indices.len() * self.m);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        PointSet { coords, m: self.m }
    }
}

/// What `sanitize` removed or flagged. Indices refer to the input list.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SanitizeReport {
    pub input_len: usize,
    /// `(removed, kept)` pairs of bit-identical points.
    pub duplicates: Vec<(usize, usize)>,
    pub dominated: Vec<usize>,
    /// Kept points that are not strictly better than the reference point in
    /// every coordinate. Their hypervolume contribution is always zero.
    pub outside_reference: Vec<usize>,
}

/// An indexed, mutually non-dominated candidate set plus its hypervolume
/// reference point.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    points: PointSet,
    ref_point: Point,
    original: Vec<usize>,
    pub provenance: String,
    pub report: SanitizeReport,
}

impl CandidateSet {
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn ref_point(&self) -> &Point {
        &self.ref_point
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        self.points.point(i)
    }

    /// Input-row index of candidate `i`.
    pub fn original_index(&self, i: usize) -> usize {
        self.original[i]
    }

    pub fn original_indices(&self) -> &[usize] {
        &self.original
    }

    pub fn with_provenance(mut self, label: impl Into<String>) -> Self {
        self.provenance = label.into();
        self
    }

    /// Replaces the hypervolume reference point.
    pub fn with_ref_point(mut self, ref_point: &[f64]) -> Result<Self, Error> {
        check_dim(self.dim(), ref_point.len())?;
        let ref_point = Point::new(ref_point.to_vec())?;
        self.report.outside_reference = outside(&self.points, &ref_point, &self.original);
        self.ref_point = ref_point;
        Ok(self)
    }
}

/// `a` Pareto-dominates `b`: no worse everywhere, strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool, Error> {
    check_dim(a.len(), b.len())?;
    Ok(dominates_unchecked(a, b))
}

/// `a` is no worse than `b` in every coordinate.
pub fn weakly_dominates(a: &[f64], b: &[f64]) -> Result<bool, Error> {
    check_dim(a.len(), b.len())?;
    Ok(weakly_dominates_unchecked(a, b))
}

#[inline]
pub(crate) fn weakly_dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[inline]
pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        strict |= x < y;
    }
    strict
}

#[inline]
pub(crate) fn strictly_below(p: &[f64], r: &[f64]) -> bool {
    p.iter().zip(r).all(|(x, y)| x < y)
}

fn bits_equal(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn outside(points: &PointSet, r: &[f64], original: &[usize]) -> Vec<usize> {
    points
        .iter()
        .zip(original)
        .filter(|(p, _)| !strictly_below(p, r))
        .map(|(_, &o)| o)
        .collect()
}

/// Removes duplicates and weakly dominated points.
///
/// Surviving points keep their input order; among bit-identical duplicates
/// the lowest input index survives. Negative zeros are normalized to `+0.0`.
pub fn sanitize<R: AsRef<[f64]>>(points: &[R], ref_point: &[f64]) -> Result<CandidateSet, Error> {
    let mut set = PointSet::from_rows(points)?;
    check_dim(set.dim(), ref_point.len())?;
    let ref_point = Point::new(ref_point.to_vec())?;
    for c in set.coords.iter_mut() {
        if *c == 0.0 {
            *c = 0.0;
        }
    }
    let n = set.len();

    // In lexicographic order a point can only be weakly dominated by points
    // that precede it, so one forward pass over the kept list suffices.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| lex_cmp(set.point(a), set.point(b)).then(a.cmp(&b)));

    let mut report = SanitizeReport {
        input_len: n,
        ..Default::default()
    };
    let mut kept: Vec<usize> = Vec::new();
    'next: for &i in &order {
        let p = set.point(i);
        for &k in kept.iter().rev() {
            let q = set.point(k);
            if weakly_dominates_unchecked(q, p) {
                if bits_equal(q, p) {
                    report.duplicates.push((i, k));
                } else {
                    report.dominated.push(i);
                }
                continue 'next;
            }
        }
        kept.push(i);
    }
    kept.sort_unstable();
    report.duplicates.sort_unstable();
    report.dominated.sort_unstable();

    let points = set.subset(&kept);
    report.outside_reference = outside(&points, &ref_point, &kept);
    Ok(CandidateSet {
        points,
        ref_point,
        original: kept,
        provenance: String::new(),
        report,
    })
}
