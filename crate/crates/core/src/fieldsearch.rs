//! Residue-class certificates for gap lower bounds.
//!
//! If some multiplier `x` sends every speed outside the band
//! `B = ±{0, 1, …, m}` modulo a prime `p`, then at time `x/p` every runner
//! is at least `(m+1)/p` from the origin, so `δ(S) ≥ (m+1)/p`. Searching
//! such bands over growing primes also yields large subsets with a
//! guaranteed gap after discarding a few "invisible" runners.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, next_prime_not_dividing, Rational, SpeedSet};
use crate::error::Error;
use crate::gap::exact_gap;

/// `(p, x, m)` with `x·s mod p ∉ ±{0, …, m}` for every speed `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldWitness {
    pub prime: u64,
    pub multiplier: u64,
    pub band: u64,
    /// `x·s_i mod p`, in speed order.
    pub residues: Vec<u64>,
}

impl FieldWitness {
    /// The certified lower bound `(m+1)/p`.
    pub fn bound(&self) -> Rational {
        Rational::new(self.band + 1, self.prime)
    }

    /// Re-checks the residues against `speeds` using only integer arithmetic.
    pub fn verify(&self, speeds: &SpeedSet) -> Result<(), Error> {
        let p = self.prime;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.multiplier == 0 || self.multiplier >= p {
            return Err(Error::Inconsistent(format!(
                "multiplier {} outside 1..{p}",
                self.multiplier
            )));
        }
        if 2 * self.band >= p {
            return Err(Error::BandTooWide { m: self.band, p });
        }
        let expected = residues(speeds, self.multiplier, p);
        if expected != self.residues {
            return Err(Error::Inconsistent(
                "residues do not match x·S mod p".into(),
            ));
        }
        if let Some(r) = expected.iter().find(|&&r| in_band(r, self.band, p)) {
            return Err(Error::Inconsistent(format!(
                "residue {r} lies in the band ±{{0..{}}}",
                self.band
            )));
        }
        Ok(())
    }
}

fn residues(speeds: &SpeedSet, x: u64, modulus: u64) -> Vec<u64> {
    speeds.iter().map(|s| mul_mod(x, s, modulus)).collect()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `r ∈ ±{0, 1, …, m}` modulo `modulus`.
fn in_band(r: u64, m: u64, modulus: u64) -> bool {
    r <= m || r >= modulus - m
}

fn check_prime_for(speeds: &SpeedSet, p: u64) -> Result<(), Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if let Some(s) = speeds.iter().find(|s| s % p == 0) {
        return Err(Error::PrimeDividesSpeed { p, speed: s });
    }
    Ok(())
}

/// First multiplier `x ∈ 1..p` whose residues `x·S mod p` avoid
/// `±{0, 1, …, m}`.
pub fn band_avoidance_search(
    speeds: &SpeedSet,
    p: u64,
    m: u64,
) -> Result<Option<FieldWitness>, Error> {
    check_prime_for(speeds, p)?;
    if 2 * m >= p {
        return Err(Error::BandTooWide { m, p });
    }
    Ok((1..p).find_map(|x| {
        let res = residues(speeds, x, p);
        res.iter()
            .all(|&r| !in_band(r, m, p))
            .then_some(FieldWitness {
                prime: p,
                multiplier: x,
                band: m,
                residues: res,
            })
    }))
}

/// The `k × (p-1)` matrix with entries `j·s_i mod p`, `j = 1..p-1`.
pub fn residue_matrix(speeds: &SpeedSet, p: u64) -> Vec<Vec<u64>> {
    speeds
        .iter()
        .map(|s| (1..p).map(|j| mul_mod(j, s, p)).collect())
        .collect()
}

/// Smallest `x ∈ 1..p` with `|B ∩ x·S| ≤ d`.
///
/// A column always exists when `|B| ≤ p(d+1)/(k+ε)` and `p > k/ε + 1` for
/// some `ε > 0`; outside that regime the scan may come back empty.
pub fn residue_matrix_scan(
    speeds: &SpeedSet,
    p: u64,
    band: &BTreeSet<u64>,
    d: usize,
) -> Result<Option<u64>, Error> {
    check_prime_for(speeds, p)?;
    if let Some(&r) = band.iter().find(|&&r| r == 0 || r >= p) {
        return Err(Error::ResidueOutOfRange { residue: r, p });
    }
    if d > speeds.len() {
        return Err(Error::OutOfRange(format!(
            "d = {d} exceeds |S| = {}",
            speeds.len()
        )));
    }
    Ok((1..p).find(|&x| {
        speeds
            .iter()
            .filter(|&s| band.contains(&mul_mod(x, s, p)))
            .count()
            <= d
    }))
}

/// `±{1, …, m}` as residues modulo `p`.
pub fn symmetric_band(m: u64, p: u64) -> BTreeSet<u64> {
    (1..=m).flat_map(|r| [r, p - r]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetCertificate {
    pub original: SpeedSet,
    pub kept: SpeedSet,
    pub removed: Vec<u64>,
    pub d: usize,
    /// `(d+1)/(2k)` with `k = |original|`.
    pub bound: Rational,
    /// Exact `δ(kept)`.
    pub kept_delta: Rational,
    /// Residue witness for `kept` at the band `m_n` of the successful round.
    pub witness: FieldWitness,
    /// `ε_n = k/2ⁿ` of the successful round.
    pub epsilon: Rational,
    /// `(m_n+1)/p_n`, the bound certified by the residues alone.
    pub field_bound: Rational,
}

impl SubsetCertificate {
    /// Re-derives every claim from `original` using residues and `exact_gap`.
    pub fn verify(&self) -> Result<(), Error> {
        let k = self.original.len();
        let bad = |m: String| Err(Error::Inconsistent(m));
        let mut union: Vec<u64> = self
            .kept
            .iter()
            .chain(self.removed.iter().copied())
            .collect();
        union.sort_unstable();
        if union != self.original.as_slice() {
            return bad("kept ∪ removed differs from the original set".into());
        }
        if self.kept.len() + self.d < k {
            return bad(format!(
                "kept only {} of {k} speeds with d = {}",
                self.kept.len(),
                self.d
            ));
        }
        if self.bound != Rational::new(self.d as u64 + 1, 2 * k as u64) {
            return bad("bound is not (d+1)/(2k)".into());
        }
        self.witness.verify(&self.kept)?;
        let delta = exact_gap(&self.kept).delta;
        if delta != self.kept_delta {
            return bad(format!(
                "kept delta {} recomputes as {delta}",
                self.kept_delta
            ));
        }
        if delta < self.bound {
            return bad(format!("delta(kept) = {delta} < {}", self.bound));
        }
        if delta < self.witness.bound() {
            return bad("field witness bound exceeds the exact gap".into());
        }
        Ok(())
    }
}

/// Finds a subset of at least `k - d` speeds with `δ ≥ (d+1)/(2k)`.
///
/// Round `n` uses `ε_n = k/2ⁿ`, the smallest prime `p_n > 2ⁿ + 1` not
/// dividing any speed, the band `±{1..m_n}` with
/// `m_n = ⌊p_n(d+1)/(2(k+ε_n))⌋`, and keeps the speeds whose residues miss
/// the band. Fails with [`Error::BudgetExhausted`] once `p_n` exceeds
/// `prime_budget`.
pub fn invisible_subset(
    speeds: &SpeedSet,
    d: usize,
    prime_budget: u64,
) -> Result<SubsetCertificate, Error> {
    let k = speeds.len();
    if d >= k {
        return Err(Error::OutOfRange(format!(
            "d = {d} must be below |S| = {k}"
        )));
    }
    let kk = Rational::from(k as u64);
    let target = Rational::new(d as u64 + 1, 2 * k as u64);
    for n in 1u32..64 {
        let two_n = 1u64 << n;
        // p > k/ε_n + 1 = 2ⁿ + 1
        let p = next_prime_not_dividing(two_n + 2, speeds);
        if p > prime_budget {
            break;
        }
        let epsilon = Rational::new(k as u64, two_n);
        let denom = Rational::from(2u64) * (&kk + &epsilon);
        let m_exact = Rational::from(p) * Rational::from(d as u64 + 1) / &denom;
        let m: u64 = m_exact.floor().try_into().expect("m_n < p");
        let band = symmetric_band(m, p);
        let Some(x) = residue_matrix_scan(speeds, p, &band, d)? else {
            continue;
        };
        let (kept, removed): (Vec<u64>, Vec<u64>) = speeds
            .iter()
            .partition(|&s| !band.contains(&mul_mod(x, s, p)));
        let kept = SpeedSet::new(kept)?;
        let field_bound = Rational::new(m + 1, p);
        if field_bound < Rational::from(d as u64 + 1) / &denom {
            return Err(Error::Inconsistent(format!(
                "(m+1)/p = {field_bound} below (d+1)/(2(k+ε))"
            )));
        }
        let kept_delta = exact_gap(&kept).delta;
        if kept_delta < target {
            continue;
        }
        let witness = FieldWitness {
            prime: p,
            multiplier: x,
            band: m,
            residues: residues(&kept, x, p),
        };
        return Ok(SubsetCertificate {
            original: speeds.clone(),
            kept,
            removed,
            d,
            bound: target,
            kept_delta,
            witness,
            epsilon,
            field_bound,
        });
    }
    Err(Error::BudgetExhausted {
        budget: prime_budget,
    })
}

/// `(n, x, m)` with `x·S mod n` avoiding `±{0, …, m}`, `m = ⌈n/(k+1)⌉ - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularWitness {
    pub modulus: u64,
    pub multiplier: u64,
    pub band: u64,
    pub residues: Vec<u64>,
}

impl ModularWitness {
    pub fn verify(&self, speeds: &SpeedSet) -> Result<(), Error> {
        let n = self.modulus;
        let k = speeds.len() as u64;
        if n < 2 {
            return Err(Error::Inconsistent(format!("modulus {n} below 2")));
        }
        if self.band != n.div_ceil(k + 1) - 1 {
            return Err(Error::Inconsistent("band is not ceil(n/(k+1)) - 1".into()));
        }
        let res = residues(speeds, self.multiplier, n);
        if res != self.residues {
            return Err(Error::Inconsistent(
                "residues do not match x·S mod n".into(),
            ));
        }
        if let Some(r) = res.iter().find(|&&r| in_band(r, self.band, n)) {
            return Err(Error::Inconsistent(format!(
                "residue {r} inside ±{{0..{}}}",
                self.band
            )));
        }
        Ok(())
    }
}

/// Modular witness built from the maximizing pair of the exact gap, or
/// `None` when `δ(S) < 1/(k+1)`.
pub fn conj34_witness(speeds: &SpeedSet) -> Result<Option<ModularWitness>, Error> {
    let k = speeds.len() as u64;
    if k < 2 {
        return Err(Error::TooFewRunners {
            needed: 2,
            got: speeds.len(),
        });
    }
    let cert = exact_gap(speeds);
    if cert.delta < Rational::new(1, k + 1) {
        return Ok(None);
    }
    let crate::gap::Witness::Pair { i, j, a } = cert.witness else {
        return Err(Error::Inconsistent(
            "multi-speed certificate without a pair".into(),
        ));
    };
    let n = speeds.as_slice()[i] + speeds.as_slice()[j];
    let w = ModularWitness {
        modulus: n,
        multiplier: a,
        band: n.div_ceil(k + 1) - 1,
        residues: residues(speeds, a, n),
    };
    w.verify(speeds)?;
    Ok(Some(w))
}
