//! Synthetic candidate sets sampled from analytic Pareto fronts.
//!
//! A pool of `n_pool` front points is sampled first, then `n_sample` of them
//! are drawn without replacement to form the instance. Everything is driven
//! by one ChaCha8 stream seeded from `seed`, so a spec always produces the
//! same set.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::Error;
use crate::geometry::{sanitize, CandidateSet};
use crate::math::{sin, sqrt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Linear simplex `Σ f_i = 0.5`.
    Dtlz1,
    /// Positive orthant of the unit sphere.
    Dtlz2,
    /// `1 - f` for `f` on the DTLZ2 front.
    InvertedDtlz2,
    /// Disconnected front; `f_m` follows from the first `m - 1` objectives.
    Dtlz7,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Dtlz1,
        Family::Dtlz2,
        Family::InvertedDtlz2,
        Family::Dtlz7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Dtlz1 => "dtlz1",
            Family::Dtlz2 => "dtlz2",
            Family::InvertedDtlz2 => "idtlz2",
            Family::Dtlz7 => "dtlz7",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "dtlz1" => Ok(Family::Dtlz1),
            "dtlz2" => Ok(Family::Dtlz2),
            "idtlz2" | "i-dtlz2" | "inverted-dtlz2" => Ok(Family::InvertedDtlz2),
            "dtlz7" => Ok(Family::Dtlz7),
            _ => Err(Error::InvalidSpec("unknown front family")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrontSpec {
    pub family: Family,
    pub m: usize,
    pub n_pool: usize,
    pub n_sample: usize,
    pub seed: u64,
}

impl FrontSpec {
    /// A spec whose pool is exactly the instance.
    pub fn new(family: Family, m: usize, n: usize, seed: u64) -> Self {
        FrontSpec {
            family,
            m,
            n_pool: n,
            n_sample: n,
            seed,
        }
    }

    pub fn with_pool(mut self, n_pool: usize) -> Self {
        self.n_pool = n_pool;
        self
    }

    fn validate(&self) -> Result<(), Error> {
        if self.m < 2 {
            return Err(Error::DimensionTooSmall(self.m));
        }
        if self.n_sample == 0 {
            return Err(Error::InvalidSpec("n_sample must be positive"));
        }
        if self.n_sample > self.n_pool {
            return Err(Error::InvalidSpec("n_sample exceeds n_pool"));
        }
        Ok(())
    }
}

/// The two intervals of `x` on which `x (1 + sin 3πx) / 2` is at least its
/// value at every smaller `x`. Only there is a DTLZ7 objective vector
/// non-dominated.
pub const DTLZ7_SLABS: [(f64, f64); 2] = [
    (0.0, 0.251_411_836_088_917_1),
    (0.631_626_530_700_061_2, 0.859_400_856_644_723_9),
];

fn dtlz7_coordinate(rng: &mut ChaCha8Rng) -> f64 {
    let (a0, a1) = DTLZ7_SLABS[0];
    let (b0, b1) = DTLZ7_SLABS[1];
    let first = a1 - a0;
    let u = rng.random::<f64>() * (first + (b1 - b0));
    if u < first {
        a0 + u
    } else {
        b0 + (u - first)
    }
}

/// `f_m` on the DTLZ7 front (distance function at its minimum, `1 + g = 2`).
pub fn dtlz7_last(head: &[f64]) -> f64 {
    let m = head.len() + 1;
    let h: f64 = head.iter().map(|&f| f * (1.0 + sin(3.0 * PI * f))).sum();
    2.0 * m as f64 - h
}

fn sample_point(family: Family, m: usize, rng: &mut ChaCha8Rng, out: &mut Vec<f64>) {
    let start = out.len();
    match family {
        Family::Dtlz1 => loop {
            out.truncate(start);
            out.extend((0..m).map(|_| -> f64 { Exp1.sample(&mut *rng) }));
            let total: f64 = out[start..].iter().sum();
            if total > 0.0 {
                out[start..].iter_mut().for_each(|x| *x = 0.5 * *x / total);
                break;
            }
        },
        Family::Dtlz2 | Family::InvertedDtlz2 => {
            loop {
                out.truncate(start);
                out.extend((0..m).map(|_| {
                    let g: f64 = StandardNormal.sample(&mut *rng);
                    g.abs()
                }));
                let norm = sqrt(out[start..].iter().map(|x| x * x).sum());
                if norm > 0.0 {
                    out[start..].iter_mut().for_each(|x| *x /= norm);
                    break;
                }
            }
            if family == Family::InvertedDtlz2 {
                out[start..].iter_mut().for_each(|x| *x = 1.0 - *x);
            }
        }
        Family::Dtlz7 => {
            out.extend((0..m - 1).map(|_| dtlz7_coordinate(rng)));
            let last = dtlz7_last(&out[start..]);
            out.push(last);
        }
    }
}

/// Samples a candidate set from the front described by `spec`.
///
/// The hypervolume reference point is `(1.1, ..., 1.1)`, except for DTLZ7
/// whose last objective exceeds it; there each coordinate is the sample's
/// maximum plus 0.1 and the provenance label says so.
pub fn gen_front(spec: &FrontSpec) -> Result<CandidateSet, Error> {
    spec.validate()?;
    let m = spec.m;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut pool = Vec::with_capacity(spec.n_pool * m);
    for _ in 0..spec.n_pool {
        sample_point(spec.family, m, &mut rng, &mut pool);
    }
    let picks = index::sample(&mut rng, spec.n_pool, spec.n_sample);
    let rows: Vec<&[f64]> = picks.iter().map(|i| &pool[i * m..(i + 1) * m]).collect();

    let (reference, note) = match spec.family {
        Family::Dtlz7 => {
            let mut r = alloc::vec![f64::NEG_INFINITY; m];
            for row in &rows {
                for (ri, x) in r.iter_mut().zip(row.iter()) {
                    *ri = ri.max(*x);
                }
            }
            r.iter_mut().for_each(|x| *x += 0.1);
            (r, " ref=max+0.1")
        }
        _ => (alloc::vec![1.1; m], ""),
    };
    let set = sanitize(&rows, &reference)?;
    let label = format!(
        "{} m={} pool={} n={} seed={}{}",
        spec.family, m, spec.n_pool, spec.n_sample, spec.seed, note
    );
    Ok(set.with_provenance(label))
}
