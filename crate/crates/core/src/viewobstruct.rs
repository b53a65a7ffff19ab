//! View obstruction by cubes centred at half-integer lattice points.
//!
//! A ray `t ↦ t·r` from the origin with rational direction `r` meets the
//! closed cube of side `α` centred at some `(m₁+½, …, m_k+½)` exactly when
//! `α ≥ 1 − 2δ(r)`, where `δ(r)` is the loneliness gap of the coordinate
//! values. Exact answers come from the gap engine; [`ray_cube_first_hit`] is
//! a floating-point tracer kept for rendering and sanity checks.

use itertools::Itertools;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{Rational, SpeedSet};
use crate::error::Error;
use crate::gap::exact_gap;

/// Positive integer direction with coprime coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Direction(Vec<u64>);

impl Direction {
    /// Scales `coords` down by their gcd.
    pub fn new(coords: Vec<u64>) -> Result<Self, Error> {
        if coords.is_empty() {
            return Err(Error::InvalidDirection("no coordinates".into()));
        }
        if coords.contains(&0) {
            return Err(Error::InvalidDirection(format!(
                "{coords:?} has a zero coordinate"
            )));
        }
        let g = coords.iter().fold(0u64, |g, &c| g.gcd(&c));
        Ok(Direction(coords.into_iter().map(|c| c / g).collect()))
    }

    /// Scales positive rational coordinates to the coprime integer tuple
    /// with the same direction.
    pub fn from_rationals(coords: &[Rational]) -> Result<Self, Error> {
        if coords.iter().any(|c| !c.is_positive()) {
            return Err(Error::InvalidDirection(
                "coordinates must be positive".into(),
            ));
        }
        let l = coords
            .iter()
            .fold(num_bigint::BigInt::from(1), |l, c| l.lcm(c.denom()));
        let ints = coords
            .iter()
            .map(|c| {
                let v = c.numer() * (&l / c.denom());
                u64::try_from(v).map_err(|_| Error::InvalidDirection("coordinate too large".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ints)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate values as a speed set, repeated values collapsed.
    pub fn speed_set(&self) -> SpeedSet {
        SpeedSet::from_values_dedup(self.0.clone()).expect("positive coordinates")
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(d)?;
        let dir = Direction::new(v.clone()).map_err(serde::de::Error::custom)?;
        if dir.0 != v {
            return Err(serde::de::Error::custom(
                "direction coordinates must be coprime",
            ));
        }
        Ok(dir)
    }
}

/// Smallest `α` for which some closed `α`-cube centred at a half-integer
/// point meets the ray: `1 − 2δ(r)`.
pub fn min_scale_for_direction(r: &Direction) -> Rational {
    Rational::one() - Rational::from(2) * exact_gap(&r.speed_set()).delta
}

/// A point of the ray inside a scaled cube.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionWitness {
    pub direction: Direction,
    pub scale: Rational,
    /// Time of deepest penetration: minimizes the sup-distance to the
    /// nearest half-integer point (smallest such time).
    pub hit_time: Rational,
    pub cube_center: Vec<Rational>,
    /// `max_i |r_i·t − c_i|`, equal to half the minimal scale.
    pub depth: Rational,
    /// The ray only touches the cube boundary.
    pub grazing: bool,
}

impl ObstructionWitness {
    pub fn verify(&self) -> Result<(), Error> {
        let half_alpha = &self.scale / &Rational::from(2);
        if self.cube_center.len() != self.direction.dim() {
            return Err(Error::Inconsistent("center dimension mismatch".into()));
        }
        let mut depth = Rational::zero();
        for (&r, c) in self.direction.coords().iter().zip(&self.cube_center) {
            let shifted = c - &Rational::half();
            if !shifted.is_integer() || shifted.is_negative() {
                return Err(Error::Inconsistent(format!(
                    "{c} is not a half-integer m + 1/2, m ≥ 0"
                )));
            }
            let off = (Rational::from(r) * &self.hit_time - c).abs();
            if off > half_alpha {
                return Err(Error::Inconsistent(format!(
                    "coordinate offset {off} exceeds α/2"
                )));
            }
            depth = depth.max(off);
        }
        if depth != self.depth || self.grazing != (depth == half_alpha) {
            return Err(Error::Inconsistent("depth or grazing flag mismatch".into()));
        }
        Ok(())
    }
}

/// Witness that the ray meets the `α`-cube family, or `None` when `α` is
/// below the direction's minimal scale.
pub fn obstruction_witness(
    r: &Direction,
    alpha: &Rational,
) -> Result<Option<ObstructionWitness>, Error> {
    if !alpha.is_positive() || alpha >= &Rational::one() {
        return Err(Error::OutOfRange(format!(
            "alpha = {alpha} must lie in (0, 1)"
        )));
    }
    let cert = exact_gap(&r.speed_set());
    let min_scale = Rational::one() - Rational::from(2) * &cert.delta;
    if alpha < &min_scale {
        return Ok(None);
    }
    let t = cert.witness_time;
    let cube_center: Vec<Rational> = r
        .coords()
        .iter()
        .map(|&c| Rational::from_integer((Rational::from(c) * &t).floor()) + Rational::half())
        .collect();
    let depth = r
        .coords()
        .iter()
        .zip(&cube_center)
        .map(|(&c, center)| (Rational::from(c) * &t - center).abs())
        .max()
        .expect("nonempty");
    Ok(Some(ObstructionWitness {
        direction: r.clone(),
        scale: alpha.clone(),
        hit_time: t,
        grazing: depth == alpha / &Rational::from(2),
        cube_center,
        depth,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KPrimeScan {
    pub k: usize,
    pub max_coord: u64,
    pub directions_checked: usize,
    pub observed_sup: Rational,
    pub extremal: Direction,
    /// `(k−1)/k`, never exceeded.
    pub upper_bound: Rational,
    /// `(k−1)/(k+1)`, attained by `(1, 2, …, k)`.
    pub conjectured: Rational,
    pub within_upper: bool,
    pub attains_conjectured: bool,
}

/// Supremum of the minimal scale over every coprime direction with
/// coordinates in `1..=max_coord`. Ties go to the lexicographically
/// smallest direction.
pub fn kprime_scan(k: usize, max_coord: u64) -> Result<KPrimeScan, Error> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("k = {k} must be at least 2")));
    }
    if max_coord < k as u64 {
        return Err(Error::OutOfRange(format!(
            "max_coord {max_coord} < k = {k}"
        )));
    }
    let dirs: Vec<Vec<u64>> = std::iter::repeat_n(1..=max_coord, k)
        .multi_cartesian_product()
        .filter(|c| c.iter().fold(0u64, |g, &x| g.gcd(&x)) == 1)
        .collect();
    let (observed_sup, extremal) = dirs
        .par_iter()
        .map(|c| {
            let d = Direction(c.clone());
            (min_scale_for_direction(&d), d)
        })
        .reduce_with(|a, b| match a.0.cmp(&b.0) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => std::cmp::min_by(a, b, |x, y| x.1.cmp(&y.1)),
        })
        .expect("at least one direction");
    let kk = k as u64;
    let upper_bound = Rational::new(kk - 1, kk);
    let conjectured = Rational::new(kk - 1, kk + 1);
    Ok(KPrimeScan {
        k,
        max_coord,
        directions_checked: dirs.len(),
        within_upper: observed_sup <= upper_bound,
        attains_conjectured: observed_sup == conjectured,
        observed_sup,
        extremal,
        upper_bound,
        conjectured,
    })
}

/// Tolerance of the floating tracer.
pub const TRACE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct FloatHit {
    pub cell: Vec<i64>,
    pub center: Vec<f64>,
    /// Parameter interval during which the ray is inside the cube.
    pub t_entry: f64,
    pub t_exit: f64,
}

/// Walks the ray `t ↦ t·r` through the unit grid up to `t = horizon` and
/// returns the first cell whose centred `α`-cube it meets.
///
/// Approximate: boundary contact is accepted within [`TRACE_TOLERANCE`].
/// Never used to build certificates.
// Negated comparisons also reject NaN.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn ray_cube_first_hit(r: &[f64], alpha: f64, horizon: f64) -> Option<FloatHit> {
    if r.is_empty()
        || r.iter().any(|&x| !(x > 0.0))
        || !(alpha > 0.0 && alpha < 1.0)
        || !(horizon > 0.0)
    {
        return None;
    }
    let half = alpha / 2.0;
    let mut cell = vec![0i64; r.len()];
    let mut next: Vec<f64> = r.iter().map(|&x| 1.0 / x).collect();
    loop {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for (i, &x) in r.iter().enumerate() {
            let c = cell[i] as f64 + 0.5;
            lo = lo.max((c - half) / x);
            hi = hi.min((c + half) / x);
        }
        if lo <= hi + TRACE_TOLERANCE && lo <= horizon {
            return Some(FloatHit {
                center: cell.iter().map(|&m| m as f64 + 0.5).collect(),
                cell,
                t_entry: lo.max(0.0),
                t_exit: hi.max(lo),
            });
        }
        let (axis, &t_next) = next
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty");
        if t_next > horizon {
            return None;
        }
        cell[axis] += 1;
        next[axis] = (cell[axis] + 1) as f64 / r[axis];
    }
}
