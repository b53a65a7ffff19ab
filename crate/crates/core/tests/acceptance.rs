//! Acceptance criteria. Each check prints one PASS/FAIL line; the process exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use lrc_core::arith::{is_prime, next_prime_not_dividing};
use lrc_core::billiards::{
    square_min_obstacle, triangle_obstruction_check, CellIndex, Contact, EdgeFamily, Orientation,
};
use lrc_core::fieldsearch::{band_avoidance_search, conj34_witness, invisible_subset};
use lrc_core::gap::{
    coprime_speed_sets, default_resolution, exact_gap, gap_grid_oracle, verify_lrc,
};
use lrc_core::viewobstruct::{kprime_scan, min_scale_for_direction, Direction};
use lrc_core::{QuadExt, Rational, SpeedSet};
use num_integer::Integer;
use rand::Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn dirichlet_family() -> Outcome {
    for n in 1..=10u64 {
        let d = exact_gap(&SpeedSet::new((1..=n).collect()).unwrap()).delta;
        ensure(d == r(1, n as i64 + 1), format!("delta({{1..{n}}}) = {d}"))?;
    }
    Ok("delta({1..n}) = 1/(n+1) for n = 1..10".into())
}

fn three_runners() -> Outcome {
    let pairs: Vec<(u64, u64)> = (1..=100u64)
        .flat_map(|a| (a + 1..=100).map(move |b| (a, b)))
        .filter(|(a, b)| a.gcd(b) == 1)
        .collect();
    let deltas: Vec<((u64, u64), Rational)> = pairs
        .par_iter()
        .map(|&(a, b)| ((a, b), exact_gap(&set(&[a, b])).delta))
        .collect();
    let third = r(1, 3);
    if let Some((p, d)) = deltas.iter().find(|(_, d)| *d < third) {
        return Err(format!("delta{p:?} = {d} < 1/3"));
    }
    let tight: Vec<(u64, u64)> = deltas
        .iter()
        .filter(|(_, d)| *d == third)
        .map(|(p, _)| *p)
        .collect();
    ensure(tight.contains(&(1, 2)), "(1,2) not tight")?;
    Ok(format!(
        "{} coprime pairs, all >= 1/3; equality at {tight:?}",
        deltas.len()
    ))
}

fn sweep_sets() -> Vec<(usize, SpeedSet)> {
    [(3usize, 30u64), (4, 15)]
        .into_iter()
        .flat_map(|(k, m)| coprime_speed_sets(k, m).into_iter().map(move |s| (k, s)))
        .collect()
}

fn lrc_sweeps() -> Outcome {
    let a = verify_lrc(3, 30).map_err(|e| e.to_string())?;
    let b = verify_lrc(4, 15).map_err(|e| e.to_string())?;
    ensure(
        a.counterexamples.is_empty() && b.counterexamples.is_empty(),
        "counterexample found",
    )?;
    ensure(a.tight.contains(&set(&[1, 2, 3])), "(1,2,3) not tight")?;
    ensure(b.tight.contains(&set(&[1, 2, 3, 4])), "(1,2,3,4) not tight")?;
    Ok(format!(
        "k=3: {} sets, {} tight; k=4: {} sets, {} tight; no counterexamples",
        a.checked,
        a.tight.len(),
        b.checked,
        b.tight.len()
    ))
}

fn bound_sandwich() -> Outcome {
    let sets = sweep_sets();
    let bad: Vec<String> = sets
        .par_iter()
        .filter_map(|(k, s)| {
            let d = exact_gap(s).delta;
            (d < r(1, 2 * *k as i64) || d > r(1, 2)).then(|| format!("{s}: {d}"))
        })
        .collect();
    ensure(bad.is_empty(), format!("outside [1/(2k), 1/2]: {bad:?}"))?;
    Ok(format!("{} sets within [1/(2k), 1/2]", sets.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut g = rng(5);
    for _ in 0..200 {
        let k = g.gen_range(1..=5);
        let s = random_speeds(&mut g, k, 50);
        let n = default_resolution(&s);
        let lo = gap_grid_oracle(&s, n).map_err(|e| e.to_string())?;
        let d = exact_gap(&s).delta;
        let width = r(s.max_speed() as i64, 2 * n as i64);
        ensure(
            lo <= d && d <= &lo + &width,
            format!("{s}: oracle {lo}, exact {d}"),
        )?;
    }
    Ok("200 random sets bracketed by the grid oracle".into())
}

fn view_obstruction() -> Outcome {
    let mut checked = 0usize;
    for k in [2usize, 3] {
        let tuples: Vec<Vec<u64>> =
            itertools::Itertools::multi_cartesian_product(std::iter::repeat_n(1..=20u64, k))
                .collect();
        let bad: Vec<String> = tuples
            .par_iter()
            .filter_map(|v| {
                let scale = min_scale_for_direction(&Direction::new(v.clone()).unwrap());
                let delta = exact_gap(&SpeedSet::from_values_dedup(v.clone()).unwrap()).delta;
                (scale != Rational::one() - Rational::from(2) * delta).then(|| format!("{v:?}"))
            })
            .collect();
        ensure(bad.is_empty(), format!("duality fails at {bad:?}"))?;
        checked += tuples.len();
    }
    let s2 = kprime_scan(2, 20).map_err(|e| e.to_string())?;
    ensure(
        s2.observed_sup == r(1, 3) && s2.extremal.coords() == [1, 2],
        format!(
            "K'_2 scan: {} at {:?}",
            s2.observed_sup,
            s2.extremal.coords()
        ),
    )?;
    let s3 = kprime_scan(3, 10).map_err(|e| e.to_string())?;
    ensure(
        s3.observed_sup == r(1, 2),
        format!("K'_3 scan: {}", s3.observed_sup),
    )?;
    Ok(format!(
        "{checked} directions satisfy scale = 1 - 2 delta; sup 1/3 at (1,2); sup 1/2 at {:?}",
        s3.extremal.coords()
    ))
}

fn square_constant() -> Outcome {
    ensure(
        square_min_obstacle(&r(1, 2)).map_err(|e| e.to_string())? == r(1, 3),
        "slope 1/2",
    )?;
    let contact = lrc_core::billiards::square_obstacle_contact(&r(1, 2), &r(1, 3))
        .map_err(|e| e.to_string())?
        .ok_or("slope 1/2 misses G(1/3)")?;
    ensure(contact.grazing, "slope 1/2 contact is not grazing")?;
    let mut sup = Rational::zero();
    let mut at = Vec::new();
    for p in 1..=20i64 {
        for q in 1..=20i64 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let m = square_min_obstacle(&r(p, q)).map_err(|e| e.to_string())?;
            if m > sup {
                sup = m.clone();
                at.clear();
            }
            if m == sup {
                at.push(format!("{p}/{q}"));
            }
        }
    }
    ensure(sup == r(1, 3), format!("sup = {sup}"))?;
    Ok(format!(
        "slope 1/2 grazes G(1/3); sup over p/q <= 20 is 1/3 at {at:?}"
    ))
}

fn sweep_slopes() -> Vec<QuadExt> {
    let irrational = (1..=250).map(|i| QuadExt::sqrt3_times(r(i, 251)));
    let rational = (1..=250).map(|i| QuadExt::rational(r(i, 145)));
    irrational.chain(rational).collect()
}

fn triangle_constant() -> Outcome {
    let r1 = QuadExt::sqrt3_times(r(1, 5));
    let hit = triangle_obstruction_check(&r1, &r(1, 4), 10_000)
        .map_err(|e| e.to_string())?
        .ok_or("no contact at 1/4")?;
    ensure(
        hit.contact == Contact::Grazing,
        format!("contact at 1/4 is {:?}", hit.contact),
    )?;
    let below = triangle_obstruction_check(&r1, &(r(1, 4) - r(1, 100)), 10_000)
        .map_err(|e| e.to_string())?;
    ensure(below.is_none(), "hit below 1/4 within horizon")?;
    let slopes = sweep_slopes();
    ensure(
        slopes.len() == 500
            && slopes
                .iter()
                .all(|s| s.is_positive() && s < &QuadExt::sqrt3()),
        "bad sweep",
    )?;
    let alpha = r(1, 4) + r(1, 100);
    let misses: Vec<String> = slopes
        .par_iter()
        .filter_map(|s| match triangle_obstruction_check(s, &alpha, 10_000) {
            Ok(Some(_)) => None,
            Ok(None) => Some(format!("{s}: no hit")),
            Err(e) => Some(format!("{s}: {e}")),
        })
        .collect();
    ensure(
        misses.is_empty(),
        format!("{} slopes missed: {misses:?}", misses.len()),
    )?;
    Ok("sqrt3/5 grazes H(1/4), misses H(1/4 - 1/100) within 10^4 cells; 500 slopes hit H(1/4 + 1/100)".into())
}

fn field_witness_soundness() -> Outcome {
    let mut g = rng(9);
    let mut witnesses = 0;
    for _ in 0..100 {
        let k = g.gen_range(1..=6);
        let s = random_speeds(&mut g, k, 40);
        let delta = exact_gap(&s).delta;
        let mut p = next_prime_not_dividing(2 * s.max_speed() + 1, &s);
        for _ in 0..4 {
            ensure(is_prime(p), "non-prime")?;
            // Widest band admitting a witness at this prime.
            for m in (0..(p - 1) / 2).rev() {
                if let Some(w) = band_avoidance_search(&s, p, m).map_err(|e| e.to_string())? {
                    w.verify(&s).map_err(|e| e.to_string())?;
                    ensure(
                        w.bound() <= delta,
                        format!("{s}: (m+1)/p = {} > delta {delta}", w.bound()),
                    )?;
                    witnesses += 1;
                    break;
                }
            }
            p = next_prime_not_dividing(p + 1, &s);
        }
    }
    ensure(
        witnesses >= 300,
        format!("only {witnesses} witnesses produced"),
    )?;
    Ok(format!(
        "{witnesses} field witnesses over 100 sets, all (m+1)/p <= delta"
    ))
}

fn invisible_runner() -> Outcome {
    let mut g = rng(13);
    let mut done = 0;
    for d in [1usize, 2] {
        for i in 0..50 {
            let k = d + 1 + i % (8 - d);
            let s = random_speeds(&mut g, k, 40);
            let cert = invisible_subset(&s, d, 1 << 20).map_err(|e| format!("{s}, d={d}: {e}"))?;
            cert.verify().map_err(|e| format!("{s}: {e}"))?;
            let delta = exact_gap(&cert.kept).delta;
            ensure(
                delta >= r(d as i64 + 1, 2 * k as i64) && cert.kept.len() + d >= k,
                format!("{s}, d={d}: kept {} with delta {delta}", cert.kept),
            )?;
            done += 1;
        }
    }
    Ok(format!(
        "{done} certificates (k <= 8, d in {{1,2}}) re-validated by exact_gap"
    ))
}

fn conj34_witnesses() -> Outcome {
    let sets = sweep_sets();
    let bad: Vec<String> = sets
        .par_iter()
        .filter_map(|(_, s)| {
            let cert = exact_gap(s);
            let lrc_core::gap::Witness::Pair { i, j, .. } = cert.witness else {
                return Some(format!("{s}: no witness pair"));
            };
            match conj34_witness(s) {
                Ok(Some(w))
                    if w.modulus == s.as_slice()[i] + s.as_slice()[j] && w.verify(s).is_ok() =>
                {
                    None
                }
                other => Some(format!("{s}: {other:?}")),
            }
        })
        .collect();
    ensure(bad.is_empty(), format!("{bad:?}"))?;
    Ok(format!(
        "{} sets have a modular witness with n = s_i + s_j",
        sets.len()
    ))
}

fn invariant_suite() -> Outcome {
    const N: usize = 1000;
    let mut g = rng(21);
    let mut run = |name: &str,
                   f: &mut dyn FnMut(&mut rand_chacha::ChaCha8Rng) -> Check|
     -> Result<(), String> {
        for i in 0..N {
            f(&mut g).map_err(|e| format!("{name} #{i}: {e}"))?;
        }
        Ok(())
    };
    run("norm", &mut |g| {
        norm_symmetry(
            &r(g.gen_range(-500..=500), g.gen_range(1..=97)),
            g.gen_range(-50..50),
        )
    })?;
    run("scale", &mut |g| {
        let k = g.gen_range(1..=5);
        gap_scale_invariance(&random_speeds(g, k, 30), g.gen_range(1..=10))
    })?;
    run("subset", &mut |g| {
        let k = g.gen_range(1..=6);
        subset_monotonicity(&random_speeds(g, k, 30), g.gen())
    })?;
    run("fold", &mut |g| {
        square_fold_round_trip(
            &r(g.gen_range(1..=12), g.gen_range(1..=12)),
            &r(g.gen_range(1..=40), g.gen_range(1..=40)),
        )
    })?;
    run("square reflection", &mut |g| {
        square_reflection_law(
            &r(g.gen_range(1..=15), g.gen_range(1..=15)),
            g.gen_range(2..20),
        )
    })?;
    run("triangle reflection", &mut |g| {
        let s = loop {
            let s = if g.gen() {
                QuadExt::rational(r(g.gen_range(1..=60), g.gen_range(1..=60)))
            } else {
                let q = g.gen_range(2..=40);
                QuadExt::sqrt3_times(r(g.gen_range(1..q), q))
            };
            if s < QuadExt::sqrt3() {
                break s;
            }
        };
        triangle_reflection_law(&s, g.gen_range(2..16))
    })?;
    run("square obstacle", &mut |g| {
        square_obstacle_invariance(
            g.gen_range(-30..30),
            g.gen_range(-30..30),
            &r(g.gen_range(1..100), 100),
            g.gen_range(0..4),
        )
    })?;
    run("triangle obstacle", &mut |g| {
        let cell = CellIndex {
            col: g.gen_range(-20..20),
            row: g.gen_range(-20..20),
            orientation: if g.gen() {
                Orientation::Up
            } else {
                Orientation::Down
            },
        };
        let f = [EdgeFamily::U, EdgeFamily::V, EdgeFamily::W][g.gen_range(0..3)];
        triangle_obstacle_invariance(cell, &r(g.gen_range(1..100), 100), f)
    })?;
    run("direction", &mut |g| {
        let len = g.gen_range(1..5);
        let v: Vec<u64> = (0..len).map(|_| g.gen_range(1..25)).collect();
        direction_permutation_projection(&v, g.gen())
    })?;
    Ok(format!(
        "9 invariants x {N} random instances, zero failures"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "Dirichlet family exactness",
            dirichlet_family,
            Duration::from_secs(1),
        ),
        (
            "Three-runner theorem",
            three_runners,
            Duration::from_secs(10),
        ),
        (
            "LRC desk-scale sweeps",
            lrc_sweeps,
            Duration::from_secs(300),
        ),
        ("Bound sandwich", bound_sandwich, Duration::from_secs(300)),
        (
            "Oracle equivalence",
            oracle_equivalence,
            Duration::from_secs(60),
        ),
        (
            "View-obstruction duality",
            view_obstruction,
            Duration::from_secs(60),
        ),
        (
            "Square billiard constant",
            square_constant,
            Duration::from_secs(10),
        ),
        (
            "Triangle constant",
            triangle_constant,
            Duration::from_secs(300),
        ),
        (
            "Field-witness soundness",
            field_witness_soundness,
            Duration::from_secs(60),
        ),
        (
            "Invisible-runner theorem",
            invisible_runner,
            Duration::from_secs(300),
        ),
        (
            "Modular witnesses from the gap pair",
            conj34_witnesses,
            Duration::from_secs(300),
        ),
        ("Invariant suite", invariant_suite, Duration::from_secs(120)),
    ];
    let mut failed = Vec::new();
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > *budget;
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => (
                "FAIL",
                format!("{d} (took {elapsed:.2?}, budget {budget:?})"),
            ),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!(
            "criterion {:>2} [{status}] {name}: {detail} ({elapsed:.2?})",
            i + 1
        );
        if status == "FAIL" {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all 12 criteria pass");
}
