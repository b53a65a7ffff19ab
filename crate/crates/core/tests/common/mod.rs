//! Shared generators, independent oracles and invariant checks for the
//! integration tests.
#![allow(dead_code)]

use lrc_core::arith::torus_norm;
use lrc_core::billiards::{
    fold_ray_point, reflect_point, square_path_segments, triangle_path_segments, CellIndex,
    EdgeFamily, Orientation, Point2, QPoint,
};
use lrc_core::gap::exact_gap;
use lrc_core::viewobstruct::{min_scale_for_direction, Direction};
use lrc_core::{QuadExt, Rational, SpeedSet};
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `k` distinct speeds drawn uniformly from `1..=max`.
pub fn random_speeds(rng: &mut impl Rng, k: usize, max: u64) -> SpeedSet {
    let mut pool: Vec<u64> = (1..=max).collect();
    pool.shuffle(rng);
    SpeedSet::new(pool[..k].to_vec()).unwrap()
}

pub fn set(v: &[u64]) -> SpeedSet {
    SpeedSet::new(v.to_vec()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Exact `δ(S)` by evaluating `f_S` on the lattice `m/L`, where `L` is the
/// lcm of every `2s_i`, `s_i + s_j` and `|s_i − s_j|`. All kinks and
/// crossings of the `‖s·t‖` pieces lie on this lattice and `f_S` is linear
/// between consecutive points, so the maximum over the lattice is exact.
/// Returns `None` when `L` exceeds `cap`.
pub fn breakpoint_lattice_gap(speeds: &[u64], cap: u64) -> Option<Rational> {
    let mut l: u64 = 1;
    let mut push = |d: u64| -> Option<()> {
        if d > 0 {
            l = l.lcm(&d);
        }
        (l <= cap).then_some(())
    };
    for (i, &a) in speeds.iter().enumerate() {
        push(2 * a)?;
        for &b in &speeds[i + 1..] {
            push(a + b)?;
            push(a.abs_diff(b))?;
        }
    }
    let best = (0..=l)
        .map(|m| {
            speeds
                .iter()
                .map(|&s| {
                    let x = (s as u128 * m as u128 % l as u128) as u64;
                    x.min(l - x)
                })
                .min()
                .unwrap()
        })
        .max()
        .unwrap();
    Some(Rational::new(best, l))
}

pub fn norm_symmetry(x: &Rational, n: i64) -> Check {
    let nx = torus_norm(x);
    ensure(torus_norm(&-x.clone()) == nx, || {
        format!("‖-x‖ ≠ ‖x‖ at {x}")
    })?;
    ensure(torus_norm(&(x + &Rational::from(n))) == nx, || {
        format!("‖x+{n}‖ ≠ ‖x‖ at {x}")
    })?;
    ensure(!nx.is_negative() && nx <= Rational::half(), || {
        format!("‖{x}‖ = {nx} out of [0, 1/2]")
    })
}

pub fn gap_scale_invariance(s: &SpeedSet, c: u64) -> Check {
    let a = exact_gap(s).delta;
    let b = exact_gap(&s.scaled(c).unwrap()).delta;
    ensure(a == b, || format!("δ({s}) = {a} but δ({c}·S) = {b}"))
}

pub fn subset_monotonicity(s: &SpeedSet, keep_mask: u32) -> Check {
    let sub: Vec<u64> = s
        .iter()
        .enumerate()
        .filter(|(i, _)| keep_mask >> i & 1 == 1)
        .map(|(_, x)| x)
        .collect();
    if sub.is_empty() {
        return Ok(());
    }
    let sub = set(&sub);
    let (a, b) = (exact_gap(&sub).delta, exact_gap(s).delta);
    ensure(a >= b, || format!("δ({sub}) = {a} < δ({s}) = {b}"))
}

/// Folding a point of the unfolded ray lands on the folded path segment
/// covering it.
pub fn square_fold_round_trip(slope: &Rational, x: &Rational) -> Check {
    let p = Point2::new(x.clone(), slope * x);
    let folded = fold_ray_point(&p).map_err(|e| e.to_string())?;
    let n = usize::try_from(x.floor() + (slope * x).floor()).unwrap() + 2;
    let path = square_path_segments(slope, n).map_err(|e| e.to_string())?;
    let k = path
        .unfolded
        .iter()
        .position(|(a, b)| &a.x <= x && x <= &b.x)
        .ok_or_else(|| format!("{x} not covered by {n} segments"))?;
    let (ua, ub) = &path.unfolded[k];
    let (fa, fb) = &path.segments[k];
    let lambda = (x - &ua.x) / (&ub.x - &ua.x);
    let expect = Point2::new(
        &fa.x + &(&lambda * &(&fb.x - &fa.x)),
        &fa.y + &(&lambda * &(&fb.y - &fa.y)),
    );
    ensure(expect == folded, || {
        format!("slope {slope}, x {x}: fold {folded:?} ≠ segment point {expect:?}")
    })?;
    ensure(ua.y == slope * &ua.x && ub.y == slope * &ub.x, || {
        "unfolded endpoints off the ray".into()
    })
}

/// Consecutive square segments: the velocity component normal to each
/// struck wall flips, the other is kept.
pub fn square_reflection_law(slope: &Rational, n: usize) -> Check {
    let path = square_path_segments(slope, n).map_err(|e| e.to_string())?;
    let on_wall = |v: &Rational| v.is_zero() || *v == Rational::one();
    for w in path.segments.windows(2) {
        let ((a0, a1), (b0, b1)) = (&w[0], &w[1]);
        ensure(a1 == b0, || "segments not contiguous".into())?;
        let (dx, dy) = (&a1.x - &a0.x, &a1.y - &a0.y);
        let (ex, ey) = (&b1.x - &b0.x, &b1.y - &b0.y);
        let fx = if on_wall(&a1.x) {
            -dx.clone()
        } else {
            dx.clone()
        };
        let fy = if on_wall(&a1.y) {
            -dy.clone()
        } else {
            dy.clone()
        };
        // (ex, ey) must be a positive multiple of (fx, fy).
        let parallel = &fx * &ey == &fy * &ex;
        let same_way = (&fx * &ex + &fy * &ey).is_positive();
        ensure(parallel && same_way, || {
            format!("reflection law fails at {a1:?}")
        })?;
    }
    Ok(())
}

fn qdot(a: &QPoint, b: &QPoint) -> QuadExt {
    a.dot(b)
}

/// Triangle segments: the outgoing direction is the mirror image of the
/// incoming one in the struck side, and the unfolding is one straight ray.
pub fn triangle_reflection_law(slope: &QuadExt, n: usize) -> Check {
    let path = triangle_path_segments(slope, n).map_err(|e| e.to_string())?;
    for (a, b) in &path.unfolded {
        for p in [a, b] {
            ensure(p.y == slope * &p.x, || {
                format!("unfolded point {p:?} off the ray")
            })?;
        }
    }
    for (k, w) in path.segments.windows(2).enumerate() {
        let ((a0, a1), (b0, b1)) = (&w[0], &w[1]);
        ensure(a1 == b0, || "segments not contiguous".into())?;
        let d1 = a1.sub(a0);
        let d2 = b1.sub(b0);
        let e = path.struck_sides[k].direction();
        let two = QuadExt::from(2);
        let refl = e
            .scale(&(&(&two * &qdot(&d1, &e)) / &qdot(&e, &e)))
            .sub(&d1);
        let parallel = refl.cross(&d2).is_zero();
        let same_way = qdot(&refl, &d2).is_positive();
        ensure(parallel && same_way, || {
            format!("reflection law fails at strike {}", k + 1)
        })?;
        // Length is preserved by the fold of one unfolded segment.
        let (ua, ub) = &path.unfolded[k];
        let du = ub.sub(ua);
        ensure(qdot(&du, &du) == qdot(&d1, &d1), || {
            "fold changed a segment length".into()
        })?;
    }
    Ok(())
}

/// Square obstacle invariance: mirroring the centred `α`-square of cell
/// `(i, j)` in one of the cell's sides gives the centred `α`-square of the
/// neighbouring cell.
pub fn square_obstacle_invariance(i: i64, j: i64, alpha: &Rational, side: u8) -> Check {
    let h = alpha / &Rational::from(2);
    let corners = |cx: &Rational, cy: &Rational| {
        let mut v: Vec<(Rational, Rational)> = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
            .iter()
            .map(|&(sx, sy)| {
                (
                    cx + &(&h * &Rational::from(sx)),
                    cy + &(&h * &Rational::from(sy)),
                )
            })
            .collect();
        v.sort();
        v
    };
    let (cx, cy) = (
        Rational::from(i) + Rational::half(),
        Rational::from(j) + Rational::half(),
    );
    // side 0..4: x = i, x = i+1, y = j, y = j+1
    let (line, vertical, di, dj) = match side % 4 {
        0 => (Rational::from(i), true, -1, 0),
        1 => (Rational::from(i + 1), true, 1, 0),
        2 => (Rational::from(j), false, 0, -1),
        _ => (Rational::from(j + 1), false, 0, 1),
    };
    let two = Rational::from(2);
    let mut mirrored: Vec<(Rational, Rational)> = corners(&cx, &cy)
        .into_iter()
        .map(|(x, y)| {
            if vertical {
                (&two * &line - x, y)
            } else {
                (x, &two * &line - y)
            }
        })
        .collect();
    mirrored.sort();
    let (nx, ny) = (
        Rational::from(i + di) + Rational::half(),
        Rational::from(j + dj) + Rational::half(),
    );
    ensure(mirrored == corners(&nx, &ny), || {
        format!("cell ({i},{j}) side {side}")
    })
}

fn cartesian(v: [(Rational, Rational); 3]) -> Vec<QPoint> {
    let mut pts: Vec<QPoint> = v
        .iter()
        .map(|(u, w)| QPoint::from_lattice_rational(u, w))
        .collect();
    pts.sort_by(|a, b| a.x.cmp(&b.x).then(a.y.cmp(&b.y)));
    pts
}

/// Neighbour of `cell` across the edge of the given family.
pub fn triangle_neighbour(cell: CellIndex, family: EdgeFamily) -> CellIndex {
    let (i, j) = (cell.col, cell.row);
    let (col, row, orientation) = match (cell.orientation, family) {
        (Orientation::Up, EdgeFamily::V) => (i, j - 1, Orientation::Down),
        (Orientation::Up, EdgeFamily::U) => (i - 1, j, Orientation::Down),
        (Orientation::Up, EdgeFamily::W) => (i, j, Orientation::Down),
        (Orientation::Down, EdgeFamily::U) => (i + 1, j, Orientation::Up),
        (Orientation::Down, EdgeFamily::V) => (i, j + 1, Orientation::Up),
        (Orientation::Down, EdgeFamily::W) => (i, j, Orientation::Up),
    };
    CellIndex {
        col,
        row,
        orientation,
    }
}

/// Triangle obstacle invariance: mirroring `H(α)` of a cell in one of its
/// edges (a Euclidean reflection in Cartesian coordinates) gives `H(α)`
/// of the neighbouring cell.
pub fn triangle_obstacle_invariance(
    cell: CellIndex,
    alpha: &Rational,
    family: EdgeFamily,
) -> Check {
    let verts = cartesian(cell.lattice_vertices());
    let nb = triangle_neighbour(cell, family);
    let shared: Vec<QPoint> = cartesian(nb.lattice_vertices())
        .into_iter()
        .filter(|p| verts.contains(p))
        .collect();
    ensure(shared.len() == 2, || {
        format!("{cell:?} and {nb:?} do not share an edge")
    })?;
    let mut mirrored: Vec<QPoint> = cartesian(cell.lattice_obstacle(alpha))
        .iter()
        .map(|p| reflect_point(p, &shared[0], &shared[1]))
        .collect();
    mirrored.sort_by(|a, b| a.x.cmp(&b.x).then(a.y.cmp(&b.y)));
    ensure(mirrored == cartesian(nb.lattice_obstacle(alpha)), || {
        format!("{cell:?} across {family:?}")
    })
}

/// Minimal scale is invariant under permuting the direction and does not
/// increase when coordinates are dropped.
pub fn direction_permutation_projection(coords: &[u64], perm_seed: u64) -> Check {
    let d = Direction::new(coords.to_vec()).map_err(|e| e.to_string())?;
    let base = min_scale_for_direction(&d);
    let mut p = coords.to_vec();
    p.shuffle(&mut rng(perm_seed));
    let permuted = min_scale_for_direction(&Direction::new(p).unwrap());
    ensure(permuted == base, || {
        format!("permuting {coords:?} changed the scale")
    })?;
    if coords.len() > 1 {
        let proj = min_scale_for_direction(&Direction::new(coords[1..].to_vec()).unwrap());
        ensure(proj <= base, || {
            format!("projection of {coords:?} raised the scale")
        })?;
    }
    Ok(())
}
