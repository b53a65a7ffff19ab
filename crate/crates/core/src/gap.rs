//! Exact computation of the loneliness gap
//! `δ(S) = sup_t min_{s∈S} ‖s·t‖`.
//!
//! The maximum of `f_S(t) = min_s ‖s·t‖` is attained at a time of the form
//! `a/(s_i + s_j)` with `i ≠ j` and `1 ≤ a ≤ s_i + s_j`, so the supremum is a
//! maximum over a finite candidate set. Every candidate is evaluated with
//! integer residues over the common denominator `s_i + s_j`.

use itertools::Itertools;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{torus_norm, torus_norm_numer, Rational, SpeedSet};
use crate::error::Error;

/// Where the maximizing time came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// `witness_time = a / (speeds[i] + speeds[j])`, `i < j`.
    Pair { i: usize, j: usize, a: u64 },
    /// Only one speed: `δ = 1/2` at `t = 1/(2s)`.
    SingleSpeed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCertificate {
    pub speeds: SpeedSet,
    pub delta: Rational,
    pub witness_time: Rational,
    pub witness: Witness,
    pub per_speed_norms: Vec<Rational>,
}

impl GapCertificate {
    /// Checks the certificate's internal invariants without recomputing the
    /// maximum. Does not prove optimality; see [`check_certificate`].
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::Inconsistent(m));
        let k = self.speeds.len();
        if self.per_speed_norms.len() != k {
            return bad("per-speed norm count differs from speed count".into());
        }
        for (s, stored) in self.speeds.iter().zip(&self.per_speed_norms) {
            let n = torus_norm(&(Rational::from(s) * &self.witness_time));
            if &n != stored {
                return bad(format!(
                    "norm for speed {s} is {n}, certificate says {stored}"
                ));
            }
        }
        let min = self
            .per_speed_norms
            .iter()
            .min()
            .cloned()
            .unwrap_or_default();
        if min != self.delta {
            return bad(format!("delta {} differs from min norm {min}", self.delta));
        }
        match &self.witness {
            Witness::Pair { i, j, a } => {
                if i >= j || *j >= k {
                    return bad(format!("bad witness pair ({i}, {j})"));
                }
                let n = self.speeds.as_slice()[*i] + self.speeds.as_slice()[*j];
                if *a < 1 || *a > n {
                    return bad(format!("witness numerator {a} outside 1..={n}"));
                }
                if self.witness_time != Rational::new(*a, n) {
                    return bad("witness time is not a/(s_i+s_j)".into());
                }
            }
            Witness::SingleSpeed => {
                if k != 1 {
                    return bad("single-speed witness on a multi-speed set".into());
                }
            }
        }
        let lower = Rational::new(1, 2 * k as u64);
        if self.delta < lower || self.delta > Rational::half() {
            return bad(format!("delta {} outside [1/(2k), 1/2]", self.delta));
        }
        Ok(())
    }
}

/// `f_S(t) = min_{s∈S} ‖s·t‖` at an arbitrary rational time.
pub fn gap_at(speeds: &SpeedSet, t: &Rational) -> Rational {
    speeds
        .iter()
        .map(|s| torus_norm(&(Rational::from(s) * t)))
        .min()
        .expect("nonempty speed set")
}

/// Numerator of `f_S(a/n)` over the denominator `n`.
#[inline]
fn gap_numer(speeds: &[u64], a: u128, n: u128) -> u128 {
    speeds
        .iter()
        .map(|&s| torus_norm_numer(a * s as u128, n))
        .min()
        .unwrap_or(0)
}

/// Exact `δ(S)` with a maximizing time. On ties the smallest time wins.
pub fn exact_gap(speeds: &SpeedSet) -> GapCertificate {
    let s = speeds.as_slice();
    if s.len() == 1 {
        let t = Rational::new(1, 2 * s[0]);
        return GapCertificate {
            speeds: speeds.clone(),
            delta: Rational::half(),
            witness_time: t,
            witness: Witness::SingleSpeed,
            per_speed_norms: vec![Rational::half()],
        };
    }

    // Best value v/n and its time a/n, compared by cross-multiplication.
    let mut best: Option<(u128, u128, u128, usize, usize)> = None;
    for (i, j) in (0..s.len()).tuple_combinations() {
        let n = (s[i] + s[j]) as u128;
        // f_S(t) = f_S(1 - t), and ties go to the smaller time, so the upper
        // half of the candidates can never be reported.
        for a in 1..=n / 2 {
            let v = gap_numer(s, a, n);
            let better = match best {
                None => true,
                Some((bv, bn, ba, _, _)) => {
                    let lhs = v * bn;
                    let rhs = bv * n;
                    lhs > rhs || (lhs == rhs && a * bn < ba * n)
                }
            };
            if better {
                best = Some((v, n, a, i, j));
            }
        }
    }
    let (v, n, a, i, j) = best.expect("at least one candidate");
    let witness_time = Rational::new(a as u64, n as u64);
    let per_speed_norms: Vec<Rational> = s
        .iter()
        .map(|&sp| Rational::new(torus_norm_numer(a * sp as u128, n) as u64, n as u64))
        .collect();
    GapCertificate {
        speeds: speeds.clone(),
        delta: Rational::new(v as u64, n as u64),
        witness_time,
        witness: Witness::Pair { i, j, a: a as u64 },
        per_speed_norms,
    }
}

/// Recomputes `δ(S)` from scratch and compares it with a stored certificate.
pub fn check_certificate(cert: &GapCertificate) -> Result<(), Error> {
    cert.validate()?;
    let fresh = exact_gap(&cert.speeds);
    if fresh.delta != cert.delta {
        return Err(Error::Inconsistent(format!(
            "certificate claims delta {}, recomputed {}",
            cert.delta, fresh.delta
        )));
    }
    Ok(())
}

/// Default grid resolution `64·s_max·k`, which brackets δ within `1/(128k)`.
pub fn default_resolution(speeds: &SpeedSet) -> u64 {
    speeds.max_speed().saturating_mul(64 * speeds.len() as u64)
}

/// Maximum of `f_S` over the grid `{m/N : 0 ≤ m < N}`.
///
/// Since `f_S` is Lipschitz with constant `s_max`, the result `g` satisfies
/// `g ≤ δ(S) ≤ g + s_max/(2N)`.
pub fn gap_grid_oracle(speeds: &SpeedSet, resolution: u64) -> Result<Rational, Error> {
    let min = 2 * speeds.max_speed();
    if resolution < min {
        return Err(Error::ResolutionTooSmall { resolution, min });
    }
    let n = resolution as u128;
    let s = speeds.as_slice();
    let best = (0..=n / 2).map(|m| gap_numer(s, m, n)).max().unwrap_or(0);
    Ok(Rational::new(best as u64, resolution))
}

/// Outcome of searching for the time a given runner is farthest from all
/// others.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LonelyReport {
    pub all_speeds: Vec<i64>,
    pub focus_index: usize,
    /// `{|s_j - s_focus| : j ≠ focus}`.
    pub differences: SpeedSet,
    pub loneliest_time: Rational,
    pub min_separation: Rational,
    /// `min_separation ≥ 1/n` for `n` runners.
    pub lonely: bool,
}

fn check_runners(speeds: &[i64], focus: usize) -> Result<(), Error> {
    if speeds.len() < 2 {
        return Err(Error::TooFewRunners {
            needed: 2,
            got: speeds.len(),
        });
    }
    if focus >= speeds.len() {
        return Err(Error::FocusOutOfRange {
            focus,
            len: speeds.len(),
        });
    }
    let mut sorted = speeds.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateSpeed(w[0] as i128));
    }
    Ok(())
}

fn difference_set(speeds: &[i64], focus: usize) -> Result<SpeedSet, Error> {
    let f = speeds[focus] as i128;
    let diffs = speeds
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != focus)
        .map(|(_, &s)| {
            let d = (s as i128 - f).unsigned_abs();
            u64::try_from(d).map_err(|_| Error::OutOfRange(format!("speed difference {d}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    SpeedSet::from_values_dedup(diffs)
}

/// Time at which runner `focus` is farthest from every other runner.
pub fn lonely_time(speeds: &[i64], focus: usize) -> Result<LonelyReport, Error> {
    check_runners(speeds, focus)?;
    let differences = difference_set(speeds, focus)?;
    let cert = exact_gap(&differences);
    let n = speeds.len() as u64;
    Ok(LonelyReport {
        all_speeds: speeds.to_vec(),
        focus_index: focus,
        lonely: cert.delta >= Rational::new(1, n),
        differences,
        loneliest_time: cert.witness_time,
        min_separation: cert.delta,
    })
}

/// Every set of `k` distinct speeds in `1..=max_speed` with gcd 1, in
/// lexicographic order.
pub fn coprime_speed_sets(k: usize, max_speed: u64) -> Vec<SpeedSet> {
    (1..=max_speed)
        .combinations(k)
        .filter(|c| c.iter().fold(0u64, |g, &s| g.gcd(&s)) == 1)
        .map(|c| SpeedSet::new(c).expect("combinations are distinct and positive"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrcReport {
    pub k: usize,
    pub max_speed: u64,
    pub checked: usize,
    /// `1/(k+1)`
    pub bound: Rational,
    pub min_delta: Rational,
    /// Sets with `δ = 1/(k+1)` exactly.
    pub tight: Vec<SpeedSet>,
    /// Sets with `δ < 1/(k+1)`; any entry here would refute the conjecture.
    pub counterexamples: Vec<GapCertificate>,
}

/// Exhaustively checks `δ(S) ≥ 1/(k+1)` over all coprime sets of `k`
/// speeds up to `max_speed`. Runs on the current rayon pool.
pub fn verify_lrc(k: usize, max_speed: u64) -> Result<LrcReport, Error> {
    if !(1..=6).contains(&k) {
        return Err(Error::OutOfRange(format!("k = {k} must be in 1..=6")));
    }
    if max_speed < k as u64 {
        return Err(Error::OutOfRange(format!(
            "max_speed {max_speed} < k = {k}"
        )));
    }
    let bound = Rational::new(1, k as u64 + 1);
    let sets = coprime_speed_sets(k, max_speed);
    let certs: Vec<GapCertificate> = sets.par_iter().map(exact_gap).collect();

    let mut tight: Vec<SpeedSet> = certs
        .iter()
        .filter(|c| c.delta == bound)
        .map(|c| c.speeds.clone())
        .collect();
    let mut counterexamples: Vec<GapCertificate> =
        certs.iter().filter(|c| c.delta < bound).cloned().collect();
    tight.sort();
    counterexamples.sort_by(|a, b| a.speeds.cmp(&b.speeds));
    let min_delta = certs
        .iter()
        .map(|c| c.delta.clone())
        .min()
        .unwrap_or_else(Rational::half);

    Ok(LrcReport {
        k,
        max_speed,
        checked: certs.len(),
        bound,
        min_delta,
        tight,
        counterexamples,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaBounds {
    /// `1/(2k)`, a lower bound for every instance.
    pub lower: Rational,
    /// `1/(k+1)`, an upper bound on the infimum over all instances (attained
    /// by `{1, …, k}`), not on this instance.
    pub upper: Rational,
    pub delta: Rational,
    pub holds: bool,
}

pub fn check_kappa_bounds(speeds: &SpeedSet) -> KappaBounds {
    let k = speeds.len() as u64;
    let lower = Rational::new(1, 2 * k);
    let delta = exact_gap(speeds).delta;
    KappaBounds {
        holds: lower <= delta,
        lower,
        upper: Rational::new(1, k + 1),
        delta,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationFloor {
    /// `1/(2(n-1))` for `n` runners.
    pub floor: Rational,
    pub actual: Rational,
    pub holds: bool,
}

/// Guaranteed separation `1/(2(n-1))` for `n` runners, checked against the
/// exact loneliest time of `focus`.
pub fn separation_floor(speeds: &[i64], focus: usize) -> Result<SeparationFloor, Error> {
    let report = lonely_time(speeds, focus)?;
    let floor = Rational::new(1, 2 * (speeds.len() as u64 - 1));
    let actual = report.min_separation;
    Ok(SeparationFloor {
        holds: actual >= floor,
        floor,
        actual,
    })
}
