//! Re-verification of emitted documents. Every claim is recomputed with the
//! exact gap engine and integer residue arithmetic; nothing is trusted from
//! the document beyond its inputs.

use serde::de::DeserializeOwned;
use serde_json::Value;

use lrc_core::billiards::{ObstacleBracket, SquarePath, TriangleContactReport};
use lrc_core::fieldsearch::{ModularWitness, SubsetCertificate};
use lrc_core::gap::{
    check_certificate, exact_gap, lonely_time, GapCertificate, KappaBounds, LonelyReport,
    LrcReport, SeparationFloor,
};
use lrc_core::viewobstruct::{Direction, KPrimeScan, ObstructionWitness};
use lrc_core::{Error, QuadExt, Rational, SpeedSet};

use crate::cert::{has_float, CertificateDocument, SCHEMA_VERSION};

fn field<T: DeserializeOwned>(v: &Value, key: &str) -> Result<T, Error> {
    let x = v
        .get(key)
        .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))?;
    serde_json::from_value(x.clone()).map_err(|e| Error::Parse(format!("`{key}`: {e}")))
}

fn whole<T: DeserializeOwned>(v: &Value) -> Result<T, Error> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inconsistent(msg.into()))
    }
}

/// `1 − 2δ` of the coordinate set.
fn scale_from_gap(coords: &[u64]) -> Result<Rational, Error> {
    let delta = exact_gap(&SpeedSet::from_values_dedup(coords.to_vec())?).delta;
    Ok(Rational::one() - Rational::from(2) * delta)
}

/// Re-verifies `doc`; on success returns a short description of what was
/// checked.
pub fn check_document(doc: &CertificateDocument) -> Result<String, Error> {
    ensure(
        doc.version == SCHEMA_VERSION,
        format!("unknown schema `{}`", doc.version),
    )?;
    ensure(
        !has_float(&doc.result),
        "floating-point value in a certificate",
    )?;
    let (inputs, result) = (&doc.inputs, &doc.result);
    match doc.command.as_str() {
        "gap" => {
            let speeds: SpeedSet = field(inputs, "speeds")?;
            let cert: GapCertificate = whole(result)?;
            ensure(
                cert.speeds == speeds,
                "certificate speeds differ from inputs",
            )?;
            check_certificate(&cert)?;
            Ok(format!("delta = {} recomputed", cert.delta))
        }
        "lonely" => {
            let speeds: Vec<i64> = field(inputs, "speeds")?;
            let focus: usize = field(inputs, "focus")?;
            let report: LonelyReport = field(result, "report")?;
            let floor: SeparationFloor = field(result, "floor")?;
            let fresh = lonely_time(&speeds, focus)?;
            ensure(fresh == report, "lonely report differs from recomputation")?;
            let expected = Rational::new(1, 2 * (speeds.len() as u64 - 1));
            ensure(
                floor.floor == expected,
                "separation floor is not 1/(2(n-1))",
            )?;
            ensure(
                floor.actual == fresh.min_separation,
                "floor compares the wrong separation",
            )?;
            ensure(
                floor.holds == (floor.actual >= floor.floor),
                "floor verdict wrong",
            )?;
            Ok(format!(
                "min separation {} recomputed",
                fresh.min_separation
            ))
        }
        "verify" => {
            let k: usize = field(inputs, "k")?;
            let max_speed: u64 = field(inputs, "max_speed")?;
            let report: LrcReport = whole(result)?;
            ensure(
                report.k == k && report.max_speed == max_speed,
                "report parameters differ from inputs",
            )?;
            for c in &report.counterexamples {
                check_certificate(c)?;
            }
            let fresh = lrc_core::gap::verify_lrc(k, max_speed)?;
            ensure(fresh == report, "sweep report differs from recomputation")?;
            Ok(format!("{} speed sets re-swept", fresh.checked))
        }
        "kappa" => {
            let speeds: SpeedSet = field(inputs, "speeds")?;
            let b: KappaBounds = whole(result)?;
            let k = speeds.len() as u64;
            let delta = exact_gap(&speeds).delta;
            ensure(
                b.lower == Rational::new(1, 2 * k) && b.upper == Rational::new(1, k + 1),
                "bounds wrong",
            )?;
            ensure(b.delta == delta, "delta differs from recomputation")?;
            ensure(b.holds == (b.lower <= delta), "verdict wrong")?;
            Ok(format!("delta = {delta} against lower bound {}", b.lower))
        }
        "obstruct" => {
            let dir: Direction = field(result, "direction")?;
            let min_scale: Rational = field(result, "min_scale")?;
            let gap: GapCertificate = field(result, "gap")?;
            check_certificate(&gap)?;
            ensure(
                gap.speeds == dir.speed_set(),
                "gap certificate is for another set",
            )?;
            ensure(
                min_scale == scale_from_gap(dir.coords())?,
                "min_scale is not 1 - 2 delta",
            )?;
            let alpha: Option<Rational> = field(inputs, "alpha")?;
            let witness: Option<ObstructionWitness> = field(result, "witness")?;
            match (alpha, witness) {
                (Some(a), Some(w)) => {
                    ensure(
                        w.direction == dir && w.scale == a,
                        "witness parameters differ",
                    )?;
                    ensure(a >= min_scale, "witness for a scale below the minimum")?;
                    w.verify()?;
                }
                (Some(a), None) => {
                    ensure(a < min_scale, "missing witness although alpha >= min_scale")?
                }
                (None, w) => ensure(w.is_none(), "witness without alpha")?,
            }
            Ok(format!("min scale {min_scale} = 1 - 2 delta"))
        }
        "kscan" => {
            let scan: KPrimeScan = whole(result)?;
            ensure(
                scan.extremal.dim() == scan.k,
                "extremal direction has wrong dimension",
            )?;
            ensure(
                scan.extremal.coords().iter().all(|&c| c <= scan.max_coord),
                "extremal outside the box",
            )?;
            ensure(
                scan.observed_sup == scale_from_gap(scan.extremal.coords())?,
                "sup not attained",
            )?;
            ensure(
                scan.within_upper == (scan.observed_sup <= scan.upper_bound),
                "verdict wrong",
            )?;
            Ok(format!(
                "sup {} attained at {:?} (attainment only)",
                scan.observed_sup,
                scan.extremal.coords()
            ))
        }
        "billiard" => {
            let slope: Rational = field(inputs, "slope")?;
            let min: Rational = field(result, "min_obstacle")?;
            let dir: Direction = field(result, "direction")?;
            let p = u64::try_from(slope.numer()).map_err(|_| Error::Parse("slope".into()))?;
            let q = u64::try_from(slope.denom()).map_err(|_| Error::Parse("slope".into()))?;
            ensure(dir.coords() == [q, p], "direction is not (q, p)")?;
            ensure(
                min == scale_from_gap(&[q, p])?,
                "min obstacle is not 1 - 2 delta",
            )?;
            let path: SquarePath = field(result, "path")?;
            for ((a, b), (ua, ub)) in path.segments.iter().zip(&path.unfolded) {
                for (f, u) in [(a, ua), (b, ub)] {
                    ensure(u.y == &slope * &u.x, "unfolded point off the ray")?;
                    ensure(
                        f == &lrc_core::billiards::fold_ray_point(u)?,
                        "segment is not the fold",
                    )?;
                }
            }
            Ok(format!("min obstacle {min} = 1 - 2 delta"))
        }
        "triangle" => check_triangle(inputs, result),
        "invisible" => {
            let speeds: SpeedSet = field(inputs, "speeds")?;
            let cert: SubsetCertificate = whole(result)?;
            ensure(cert.original == speeds, "certificate is for another set")?;
            cert.verify()?;
            Ok(format!(
                "delta(kept) = {} >= {}",
                cert.kept_delta, cert.bound
            ))
        }
        "conj34" => {
            let speeds: SpeedSet = field(inputs, "speeds")?;
            let gap: GapCertificate = field(result, "gap")?;
            ensure(gap.speeds == speeds, "gap certificate is for another set")?;
            check_certificate(&gap)?;
            let witness: Option<ModularWitness> = field(result, "witness")?;
            let k = speeds.len() as u64;
            match witness {
                Some(w) => {
                    w.verify(&speeds)?;
                    let s = speeds.as_slice();
                    let pair =
                        (0..s.len()).any(|i| (i + 1..s.len()).any(|j| s[i] + s[j] == w.modulus));
                    ensure(pair, "modulus is not a sum of two speeds")?;
                    Ok(format!("residues mod {} avoid the band", w.modulus))
                }
                None => {
                    ensure(
                        gap.delta < Rational::new(1, k + 1),
                        "witness missing although delta >= 1/(k+1)",
                    )?;
                    Ok("no witness; delta below 1/(k+1)".into())
                }
            }
        }
        other => Err(Error::Parse(format!("no checker for command `{other}`"))),
    }
}

/// Re-tests the reported first contact cell with side-of-line signs. Misses
/// are horizon-qualified and cannot be certified.
fn check_triangle(inputs: &Value, result: &Value) -> Result<String, Error> {
    let slope: QuadExt = field(inputs, "slope")?;
    lrc_core::billiards::check_wedge_slope(&slope)?;
    if let Some(b) = result.get("bracket").filter(|b| !b.is_null()) {
        let b: ObstacleBracket = whole(b)?;
        ensure(b.slope == slope, "bracket slope differs")?;
        ensure(
            b.lower <= b.upper && &b.upper - &b.lower <= b.tolerance,
            "bracket wider than tolerance",
        )?;
        return Ok(format!(
            "bracket [{}, {}] well formed (bisection not replayed)",
            b.lower, b.upper
        ));
    }
    let report: TriangleContactReport = field(result, "contact")?;
    ensure(report.slope == slope, "report slope differs")?;
    let Some(hit) = report.first_hit else {
        return Ok(format!(
            "no hit within horizon {} (not certifiable)",
            report.horizon
        ));
    };
    // Lattice direction of the ray and sign of cross(d, P) at H(α)'s vertices.
    let du = &QuadExt::sqrt3() - &slope;
    let dv = slope.scale(&Rational::from(2));
    let signs: Vec<i32> = hit
        .cell
        .index
        .lattice_obstacle(&report.alpha)
        .iter()
        .map(|(u, v)| (&du.scale(v) - &dv.scale(u)).sign())
        .collect();
    let interior = signs.contains(&1) && signs.contains(&-1);
    let grazing = !interior && signs.contains(&0);
    let expected = match hit.contact {
        lrc_core::billiards::Contact::Interior => interior,
        lrc_core::billiards::Contact::Grazing => grazing,
        lrc_core::billiards::Contact::Miss => false,
    };
    ensure(
        expected,
        "reported contact does not match the exact side tests",
    )?;
    Ok(format!(
        "{:?} contact at step {} confirmed",
        hit.contact, hit.cell.step
    ))
}
